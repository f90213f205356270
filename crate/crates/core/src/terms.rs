use num_bigint::Sign;

use crate::scalar::{scalar_sign, Scalar};

/// Joins `(coefficient, monomial)` pairs in the canonical grammar: `c*m`,
/// unit coefficients elided, signs folded into the separators.
pub(crate) fn format_terms(terms: Vec<(Scalar, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, m)) in terms.into_iter().enumerate() {
        let negative = scalar_sign(&c) == Sign::Minus;
        let mag = c.to_string().trim_start_matches('-').to_string();
        let body = if m.is_empty() {
            mag
        } else if mag == "1" {
            m
        } else {
            format!("{mag}*{m}")
        };
        match (k, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}
