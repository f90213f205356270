//! Job and family descriptors. The same types are built from command-line
//! flags and read from JSON batch files.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use invol_core::algebra::FiniteAlgebra;
use invol_core::expr::{parse_element, parse_matrix};
use invol_core::involutive::Family;
use invol_core::linalg::Matrix;
use invol_core::{BaseField, Error, ExprRing, Result, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    /// A prime field or `Q` with the identity.
    Trivial { base: String },
    /// `k[x]/(x^2 - alpha x + beta)` with `x -> alpha - x`, written in
    /// `r1 = x - alpha/2`, so `r1^2 = alpha^2/4 - beta`.
    Quadratic {
        base: String,
        alpha: String,
        beta: String,
    },
    /// `k[x, x^-1]` with `x -> x^-1`.
    Laurent { base: String },
    /// `k[x, y]/(y^2 - prod (x - a))` with `y -> -y`.
    Hyperelliptic {
        base: String,
        roots: Vec<String>,
        #[serde(default)]
        complete: bool,
    },
    /// A finite-dimensional algebra with involution.
    Algebra { base: String, algebra: AlgebraSpec },
}

/// Constructor grammar for finite-dimensional algebras.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// The base field.
    Field,
    /// `A x B`, involution factorwise.
    Product(Box<AlgebraSpec>, Box<AlgebraSpec>),
    /// `A x A` with `(a, b) -> (lambda b, lambda a)`.
    Swap(Box<AlgebraSpec>),
    /// `A[t]/(t^2 - s)`; `s` is an expression in the grammar of `A`.
    Ext {
        of: Box<AlgebraSpec>,
        s: String,
        #[serde(default)]
        flip: bool,
    },
    /// `A[t]/(t^2)`.
    Thicken {
        of: Box<AlgebraSpec>,
        #[serde(default)]
        flip: bool,
    },
    /// Raw structure constants: `table[i * dim + j]` holds `e_i e_j` and
    /// column `j` of `involution` holds `lambda(e_j)`.
    Table {
        table: Vec<Vec<String>>,
        unity: Vec<String>,
        #[serde(default)]
        involution: Option<Vec<Vec<String>>>,
    },
}

/// A matrix written either as `"[[a, b], [c, d]]"` or as rows of element
/// strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixInput {
    Text(String),
    Rows(Vec<Vec<String>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Example {
    MixedExample,
    SymplecticModel,
    UnitaryTriviality,
    Hyperelliptic,
    TrivialDichotomy,
}

impl Example {
    pub fn name(self) -> &'static str {
        match self {
            Example::MixedExample => "mixed-example",
            Example::SymplecticModel => "symplectic-model",
            Example::UnitaryTriviality => "unitary-triviality",
            Example::Hyperelliptic => "hyperelliptic",
            Example::TrivialDichotomy => "trivial-dichotomy",
        }
    }
}

pub const DEFAULT_SEED: u64 = 1;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Job {
    ClassifyInvolution {
        family: FamilySpec,
        #[serde(default)]
        gram: Option<MatrixInput>,
        /// `n^2 x n^2` matrix `A` with `vec(tau(M)) = A vec(lambda(M))`,
        /// row-major `vec`.
        #[serde(default)]
        action: Option<MatrixInput>,
    },
    TypeGroup {
        family: FamilySpec,
    },
    Diagonalize {
        family: FamilySpec,
        gram: MatrixInput,
    },
    SymplecticForm {
        family: FamilySpec,
        gram: MatrixInput,
    },
    Congruence {
        family: FamilySpec,
        gram: MatrixInput,
        target: MatrixInput,
    },
    Hilbert90 {
        family: FamilySpec,
        r: String,
    },
    Structure {
        family: FamilySpec,
    },
    Reproduce {
        example: Example,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default)]
        count: Option<usize>,
    },
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::ClassifyInvolution { .. } => "classify-involution",
            Job::TypeGroup { .. } => "type-group",
            Job::Diagonalize { .. } => "diagonalize",
            Job::SymplecticForm { .. } => "symplectic-form",
            Job::Congruence { .. } => "congruence",
            Job::Hilbert90 { .. } => "hilbert90",
            Job::Structure { .. } => "structure",
            Job::Reproduce { .. } => "reproduce",
        }
    }
}

fn field(base: &str) -> Result<BaseField> {
    BaseField::from_name(base)
}

fn scalar(base: &BaseField, s: &str) -> Result<Scalar> {
    parse_element(base, s)
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Trivial { .. } => "trivial",
            FamilySpec::Quadratic { .. } => "quadratic",
            FamilySpec::Laurent { .. } => "laurent",
            FamilySpec::Hyperelliptic { .. } => "hyperelliptic",
            FamilySpec::Algebra { .. } => "algebra",
        }
    }

    pub fn build(&self) -> Result<Family> {
        let family = match self {
            FamilySpec::Trivial { base } => Family::TrivialField(field(base)?),
            FamilySpec::Quadratic { base, alpha, beta } => {
                let b = field(base)?;
                Family::quadratic_etale(b, scalar(&b, alpha)?, scalar(&b, beta)?)?
            }
            FamilySpec::Laurent { base } => Family::LaurentFlip(field(base)?),
            FamilySpec::Hyperelliptic {
                base,
                roots,
                complete,
            } => {
                let b = field(base)?;
                let roots = roots.iter().map(|r| scalar(&b, r)).collect::<Result<_>>()?;
                Family::hyperelliptic(b, roots, *complete)?
            }
            FamilySpec::Algebra { base, algebra } => {
                Family::FiniteAlgebra(algebra.build(field(base)?)?)
            }
        };
        family.check()?;
        Ok(family)
    }

    /// The same descriptor with the base field and scalars in canonical form.
    pub fn canonical(&self) -> Result<FamilySpec> {
        let canon = |base: &str| -> Result<(BaseField, String)> {
            let b = field(base)?;
            Ok((b, b.name()))
        };
        Ok(match self {
            FamilySpec::Trivial { base } => FamilySpec::Trivial {
                base: canon(base)?.1,
            },
            FamilySpec::Quadratic { base, alpha, beta } => {
                let (b, base) = canon(base)?;
                FamilySpec::Quadratic {
                    base,
                    alpha: b.format(&scalar(&b, alpha)?),
                    beta: b.format(&scalar(&b, beta)?),
                }
            }
            FamilySpec::Laurent { base } => FamilySpec::Laurent {
                base: canon(base)?.1,
            },
            FamilySpec::Hyperelliptic {
                base,
                roots,
                complete,
            } => {
                let (b, base) = canon(base)?;
                let roots = roots
                    .iter()
                    .map(|r| Ok(b.format(&scalar(&b, r)?)))
                    .collect::<Result<_>>()?;
                FamilySpec::Hyperelliptic {
                    base,
                    roots,
                    complete: *complete,
                }
            }
            FamilySpec::Algebra { base, algebra } => {
                let (b, base) = canon(base)?;
                FamilySpec::Algebra {
                    base,
                    algebra: algebra.canonical(b)?,
                }
            }
        })
    }
}

impl AlgebraSpec {
    pub fn build(&self, base: BaseField) -> Result<FiniteAlgebra> {
        match self {
            AlgebraSpec::Field => Ok(FiniteAlgebra::field(base)),
            AlgebraSpec::Product(a, b) => FiniteAlgebra::product(a.build(base)?, b.build(base)?),
            AlgebraSpec::Swap(a) => FiniteAlgebra::swap(a.build(base)?),
            AlgebraSpec::Ext { of, s, flip } => {
                let a = of.build(base)?;
                let s = parse_element(&a, s)?;
                FiniteAlgebra::ext(a, s, *flip)
            }
            AlgebraSpec::Thicken { of, flip } => FiniteAlgebra::thicken(of.build(base)?, *flip),
            AlgebraSpec::Table {
                table,
                unity,
                involution,
            } => {
                let row = |r: &Vec<String>| {
                    r.iter()
                        .map(|s| scalar(&base, s))
                        .collect::<Result<Vec<_>>>()
                };
                let table = table.iter().map(row).collect::<Result<Vec<_>>>()?;
                let alg = FiniteAlgebra::new(base, unity.len(), table, row(unity)?)?;
                match involution {
                    Some(m) => {
                        let rows = m.iter().map(row).collect::<Result<Vec<_>>>()?;
                        alg.with_involution(Matrix::from_rows(rows)?)
                    }
                    None => Ok(alg),
                }
            }
        }
    }

    fn canonical(&self, base: BaseField) -> Result<AlgebraSpec> {
        Ok(match self {
            AlgebraSpec::Field => AlgebraSpec::Field,
            AlgebraSpec::Product(a, b) => {
                AlgebraSpec::Product(Box::new(a.canonical(base)?), Box::new(b.canonical(base)?))
            }
            AlgebraSpec::Swap(a) => AlgebraSpec::Swap(Box::new(a.canonical(base)?)),
            AlgebraSpec::Ext { of, s, flip } => {
                let a = of.build(base)?;
                let s = a.format(&parse_element(&a, s)?);
                AlgebraSpec::Ext {
                    of: Box::new(of.canonical(base)?),
                    s,
                    flip: *flip,
                }
            }
            AlgebraSpec::Thicken { of, flip } => AlgebraSpec::Thicken {
                of: Box::new(of.canonical(base)?),
                flip: *flip,
            },
            AlgebraSpec::Table {
                table,
                unity,
                involution,
            } => {
                let row = |r: &Vec<String>| {
                    r.iter()
                        .map(|s| Ok(base.format(&scalar(&base, s)?)))
                        .collect::<Result<Vec<_>>>()
                };
                AlgebraSpec::Table {
                    table: table.iter().map(row).collect::<Result<_>>()?,
                    unity: row(unity)?,
                    involution: involution
                        .as_ref()
                        .map(|m| m.iter().map(row).collect::<Result<_>>())
                        .transpose()?,
                }
            }
        })
    }
}

impl MatrixInput {
    pub fn parse<R: ExprRing>(&self, ring: &R) -> Result<Matrix<R::Elem>> {
        match self {
            MatrixInput::Text(s) => parse_matrix(ring, s),
            MatrixInput::Rows(rows) => {
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, s)| {
                                parse_element(ring, s).map_err(|e| match e {
                                    Error::Parse { pos, msg } => Error::Parse {
                                        pos,
                                        msg: format!("entry ({i}, {j}): {msg}"),
                                    },
                                    e => e,
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(parsed)
            }
        }
    }
}

/// `0, 1, ..., 2g` as default roots of a genus-`g` curve.
pub fn default_roots(genus: usize) -> Vec<String> {
    (0..=2 * genus).map(|i| i.to_string()).collect()
}
