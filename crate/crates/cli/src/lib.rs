//! Command-line front end: job descriptors, report serialization, independent
//! re-verification of reports and named worked examples.

pub mod report;
pub mod reproduce;
pub mod run;
pub mod spec;
pub mod verify;

use rayon::prelude::*;
use serde_json::Value;

pub use report::Report;
pub use run::{run_job, CliError, CliResult};
pub use spec::{FamilySpec, Job};

/// Environment variable naming a directory that receives a copy of every
/// JSON report.
pub const REPORT_DIR_ENV: &str = "INVOL_REPORT_DIR";

/// A job's report, its error, or both (a report whose checks failed).
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub report: Option<Report>,
    pub error: Option<CliError>,
}

impl Outcome {
    /// 0 when every asserted identity verified, 1 when one failed, 2 for
    /// input or domain errors.
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }

    pub fn to_json(&self) -> Value {
        let mut v = match &self.report {
            Some(r) => serde_json::to_value(r).expect("reports serialize"),
            None => serde_json::json!({ "command": self.command }),
        };
        if let Some(e) = &self.error {
            v["error"] = e.to_json();
        }
        v
    }
}

/// Run a job, serialize the report and re-check it from the serialized form.
pub fn run_verified(job: &Job) -> Outcome {
    let command = job.command();
    match run_job(job) {
        Ok(report) => {
            let error = verify::verify_json(&report.to_json()).err();
            Outcome {
                command,
                report: Some(report),
                error,
            }
        }
        Err(e) => Outcome {
            command,
            report: None,
            error: Some(e),
        },
    }
}

/// Run jobs concurrently; outcomes come back in input order.
pub fn run_batch(jobs: &[Job]) -> Vec<Outcome> {
    jobs.par_iter().map(run_verified).collect()
}

/// Re-check a file holding one report or an array of batch outcomes. Error
/// entries count as failures.
pub fn verify_document(text: &str) -> CliResult<usize> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("not JSON: {e}")))?;
    let items = match value {
        Value::Array(items) => items,
        single => vec![single],
    };
    for (i, item) in items.iter().enumerate() {
        if item.get("error").is_some() {
            return Err(CliError::Verify(format!("entry {i} records an error")));
        }
        verify::verify_json(&item.to_string())
            .map_err(|e| CliError::Verify(format!("entry {i}: {e}")))?;
    }
    Ok(items.len())
}
