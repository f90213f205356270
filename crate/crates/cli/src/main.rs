use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invol_cli::spec::{
    default_roots, AlgebraSpec, Example, FamilySpec, Job, MatrixInput, DEFAULT_SEED,
};
use invol_cli::{run_batch, run_verified, verify_document, CliError, Outcome, REPORT_DIR_ENV};

#[derive(Parser)]
#[command(
    name = "invol",
    version,
    about = "Exact classification of involutions on matrix algebras"
)]
struct Cli {
    /// Print JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,

    /// Also write each JSON report into this directory.
    #[arg(long, global = true, env = REPORT_DIR_ENV)]
    report_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validity, eps, coarse type, type vector and standardness of an involution.
    ClassifyInvolution {
        #[command(flatten)]
        family: FamilyArgs,
        /// Gram matrix `h` of `M -> h M^(lambda tr) h^-1`.
        #[arg(long, conflicts_with = "action")]
        gram: Option<String>,
        /// `n^2 x n^2` matrix `A` with `vec(tau(M)) = A vec(lambda(M))`.
        #[arg(long)]
        action: Option<String>,
    },
    /// Coarse type group of a family.
    TypeGroup {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Diagonalizing congruence of a hermitian form.
    Diagonalize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        gram: String,
    },
    /// Symplectic normal form of an alternating form.
    SymplecticForm {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        gram: String,
    },
    /// Congruence witness `v` with `v^(lambda tr) h v = target`.
    Congruence {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        gram: String,
        #[arg(long)]
        target: String,
    },
    /// `a` with `r = a^-1 lambda(a)` for a norm-one `r`.
    Hilbert90 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        r: String,
    },
    /// Structure of a finite algebra whose fixed ring is a field.
    Structure {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run a named worked example.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random samples per regime.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run a JSON array of jobs concurrently; reports keep input order.
    Batch { file: PathBuf },
    /// Re-check a saved report or batch output.
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Trivial,
    Quadratic,
    Laurent,
    Hyperelliptic,
    Algebra,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "trivial")]
    family: FamilyKind,
    /// `Q` or a prime field such as `F7`.
    #[arg(long, default_value = "Q")]
    base: String,
    /// Quadratic family `k(sqrt d)`.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Quadratic family `k[x]/(x^2 - alpha x + beta)`.
    #[arg(
        long,
        allow_hyphen_values = true,
        requires = "beta",
        conflicts_with = "d"
    )]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<String>,
    /// Hyperelliptic genus; the roots default to `0, 1, ..., 2g`.
    #[arg(long)]
    genus: Option<usize>,
    /// Comma-separated roots of the hyperelliptic polynomial.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "genus")]
    roots: Option<String>,
    /// Use the complete hyperelliptic model.
    #[arg(long)]
    complete: bool,
    /// Algebra constructor as JSON, or `@path` to read it from a file.
    #[arg(long)]
    algebra: Option<String>,
    /// A whole family descriptor as JSON, or `@path`; overrides the other flags.
    #[arg(long)]
    family_json: Option<String>,
}

fn inline_or_file(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn from_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_str(&inline_or_file(s)?).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, CliError> {
        if let Some(j) = &self.family_json {
            return from_json("family descriptor", j);
        }
        let base = self.base.clone();
        Ok(match self.family {
            FamilyKind::Trivial => FamilySpec::Trivial { base },
            FamilyKind::Quadratic => match (&self.d, &self.alpha, &self.beta) {
                (Some(d), None, None) => FamilySpec::Quadratic {
                    base,
                    alpha: "0".into(),
                    beta: format!("-({d})"),
                },
                (None, Some(alpha), Some(beta)) => FamilySpec::Quadratic {
                    base,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                },
                _ => {
                    return Err(CliError::Input(
                        "the quadratic family needs --d or --alpha and --beta".into(),
                    ))
                }
            },
            FamilyKind::Laurent => FamilySpec::Laurent { base },
            FamilyKind::Hyperelliptic => {
                let roots = match (&self.roots, self.genus) {
                    (Some(r), _) => r.split(',').map(|s| s.trim().to_string()).collect(),
                    (None, Some(g)) => default_roots(g),
                    (None, None) => {
                        return Err(CliError::Input(
                            "the hyperelliptic family needs --genus or --roots".into(),
                        ))
                    }
                };
                FamilySpec::Hyperelliptic {
                    base,
                    roots,
                    complete: self.complete,
                }
            }
            FamilyKind::Algebra => {
                let Some(a) = &self.algebra else {
                    return Err(CliError::Input("the algebra family needs --algebra".into()));
                };
                let algebra: AlgebraSpec = from_json("algebra constructor", a)?;
                FamilySpec::Algebra { base, algebra }
            }
        })
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::ClassifyInvolution { .. } => "classify-involution",
        Command::TypeGroup { .. } => "type-group",
        Command::Diagonalize { .. } => "diagonalize",
        Command::SymplecticForm { .. } => "symplectic-form",
        Command::Congruence { .. } => "congruence",
        Command::Hilbert90 { .. } => "hilbert90",
        Command::Structure { .. } => "structure",
        Command::Reproduce { .. } => "reproduce",
        Command::Batch { .. } => "batch",
        Command::Verify { .. } => "verify",
    }
}

fn job(command: &Command) -> Result<Job, CliError> {
    let text = |s: &String| MatrixInput::Text(s.clone());
    Ok(match command {
        Command::ClassifyInvolution {
            family,
            gram,
            action,
        } => Job::ClassifyInvolution {
            family: family.spec()?,
            gram: gram.as_ref().map(text),
            action: action.as_ref().map(text),
        },
        Command::TypeGroup { family } => Job::TypeGroup {
            family: family.spec()?,
        },
        Command::Diagonalize { family, gram } => Job::Diagonalize {
            family: family.spec()?,
            gram: text(gram),
        },
        Command::SymplecticForm { family, gram } => Job::SymplecticForm {
            family: family.spec()?,
            gram: text(gram),
        },
        Command::Congruence {
            family,
            gram,
            target,
        } => Job::Congruence {
            family: family.spec()?,
            gram: text(gram),
            target: text(target),
        },
        Command::Hilbert90 { family, r } => Job::Hilbert90 {
            family: family.spec()?,
            r: r.clone(),
        },
        Command::Structure { family } => Job::Structure {
            family: family.spec()?,
        },
        Command::Reproduce {
            example,
            seed,
            count,
        } => Job::Reproduce {
            example: *example,
            seed: *seed,
            count: *count,
        },
        Command::Batch { .. } | Command::Verify { .. } => {
            return Err(CliError::Input(format!(
                "{} does not describe a single job",
                command_name(command)
            )))
        }
    })
}

fn write_report(dir: &Path, name: &str, json: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, json).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Errors go to stderr, so the text form only carries the report.
fn text_of(outcome: &Outcome) -> String {
    outcome
        .report
        .as_ref()
        .map(|r| r.to_text())
        .unwrap_or_default()
}

fn emit(cli: &Cli, name: &str, json: &serde_json::Value, text: &str) -> Result<(), CliError> {
    let rendered = serde_json::to_string_pretty(json).expect("values serialize");
    if let Some(dir) = &cli.report_dir {
        write_report(dir, name, &rendered)?;
    }
    // a closed pipe (`invol ... | head`) is not an error
    let mut out = io::stdout().lock();
    let _ = if cli.json {
        writeln!(out, "{rendered}")
    } else {
        write!(out, "{text}")
    };
    Ok(())
}

fn main_inner(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Batch { file } => {
            let jobs: Vec<Job> = from_json("batch file", &format!("@{}", file.display()))?;
            let outcomes = run_batch(&jobs);
            let json = serde_json::Value::Array(outcomes.iter().map(Outcome::to_json).collect());
            let text: String = outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let err = o
                        .error
                        .as_ref()
                        .map(|e| format!("error: {e}\n"))
                        .unwrap_or_default();
                    format!("[{i}] {}\n{}{err}", o.command, text_of(o))
                })
                .collect();
            emit(cli, "batch", &json, &text)?;
            Ok(outcomes.iter().map(Outcome::exit_code).max().unwrap_or(0))
        }
        Command::Verify { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let n = verify_document(&text)?;
            let json = serde_json::json!({ "verified": n });
            emit(cli, "verify", &json, &format!("verified: {n}\n"))?;
            Ok(0)
        }
        _ => Err(CliError::Input("not a batch command".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Batch { .. } | Command::Verify { .. } => main_inner(&cli).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_json() }));
            }
            e.exit_code()
        }),
        _ => {
            let outcome = match job(&cli.command) {
                Ok(j) => run_verified(&j),
                Err(e) => Outcome {
                    command: command_name(&cli.command),
                    report: None,
                    error: Some(e),
                },
            };
            if let Some(e) = &outcome.error {
                eprintln!("error: {e}");
            }
            match emit(
                &cli,
                outcome.command,
                &outcome.to_json(),
                &text_of(&outcome),
            ) {
                Ok(()) => outcome.exit_code(),
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
