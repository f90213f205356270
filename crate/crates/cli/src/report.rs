//! Serialized reports. Ring elements are strings in the canonical grammar of
//! their ring, so every report can be parsed back and re-checked.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::spec::{Example, FamilySpec};

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    ClassifyInvolution(ClassifyReport),
    TypeGroup(TypeGroupOut),
    Diagonalize(DiagonalizeReport),
    SymplecticForm(SymplecticReport),
    Congruence(CongruenceReport),
    Hilbert90(Hilbert90Report),
    Structure(StructureReport),
    Reproduce(ReproduceReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeSign {
    pub point: String,
    /// `+1` orthogonal, `-1` symplectic, `null` when not evaluated.
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub family: String,
    pub ring: FamilySpec,
    pub n: usize,
    /// `gram` or `linear-action`.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Rows>,
    pub gram: Rows,
    pub eps: String,
    pub class: String,
    /// `a` with `eps = a^-1 lambda(a)` when the class is trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert90: Option<String>,
    /// Sign vector over the ramification points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<String>,
    pub type_vector: Vec<TypeSign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric_dim: Option<usize>,
    pub standard: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeGroupOut {
    pub family: String,
    pub ring: FamilySpec,
    pub structure: String,
    pub order: u64,
    pub representatives: Vec<String>,
    pub ramification_points: Vec<String>,
    pub standard: Vec<String>,
    pub standard_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalizeReport {
    pub family: String,
    pub ring: FamilySpec,
    pub gram: Rows,
    pub eps: String,
    pub v: Rows,
    pub diagonal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticReport {
    pub family: String,
    pub ring: FamilySpec,
    pub gram: Rows,
    pub v: Rows,
    pub normal_form: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub family: String,
    pub ring: FamilySpec,
    pub gram: Rows,
    pub target: Rows,
    pub eps: String,
    /// Squares of all tower generators, each in the grammar of its stage.
    pub tower: Vec<String>,
    /// `lambda(r_j) = sign_j r_j`.
    pub signs: Vec<i8>,
    /// How many of the generators were adjoined by the witness.
    pub adjoined: usize,
    pub v: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hilbert90Report {
    pub family: String,
    pub ring: FamilySpec,
    pub r: String,
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    pub r: String,
    pub t: String,
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub family: String,
    pub ring: FamilySpec,
    pub dim: usize,
    /// `quadratic-etale-over-fixed` or `local-not-etale`.
    pub verdict: String,
    pub maximal_ideals: usize,
    pub ideal_permutation: Vec<usize>,
    pub residue_involution_trivial: bool,
    pub fixed_basis: Vec<String>,
    pub radical: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproduceReport {
    pub example: Example,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn command(&self) -> &'static str {
        match self {
            Report::ClassifyInvolution(_) => "classify-involution",
            Report::TypeGroup(_) => "type-group",
            Report::Diagonalize(_) => "diagonalize",
            Report::SymplecticForm(_) => "symplectic-form",
            Report::Congruence(_) => "congruence",
            Report::Hilbert90(_) => "hilbert90",
            Report::Structure(_) => "structure",
            Report::Reproduce(_) => "reproduce",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Plain `key: value` lines for terminal output.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let Value::Object(map) = value else {
            unreachable!("reports are objects")
        };
        let mut out = String::new();
        for (k, v) in &map {
            if k == "ring" {
                continue;
            }
            if k == "checks" {
                for c in v.as_array().into_iter().flatten() {
                    let pass = if c["pass"].as_bool() == Some(true) {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    out.push_str(&format!(
                        "{pass} {}: {}\n",
                        c["name"].as_str().unwrap_or(""),
                        c["detail"].as_str().unwrap_or("")
                    ));
                }
                continue;
            }
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
        out
    }
}
