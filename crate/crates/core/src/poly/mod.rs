//! Polynomials over a finite field: sparse multivariate, dense univariate,
//! the expression parser and surface specifications.

mod multi;
mod parse;
mod surface;
mod uni;

use thiserror::Error;

use crate::field::{FieldElement, FiniteField};

pub use multi::{MultiPoly, Specialized};
pub use parse::{parse_poly, MAX_PAREN_EXPONENT};
pub use surface::{SpecError, SurfaceKind, SurfaceSpec, P_VARS, Q_VARS};
pub use uni::{
    count_roots_gcd, field_poly, gcd_uni, reduce_mod_field_relation, resultant, roots_in_field,
    sylvester_matrix, UniPoly, FIELD_POLY_MAX_Q,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dense polynomial of degree {degree} exceeds cap {cap}")]
    SizeCapExceeded { degree: u64, cap: u64 },
    #[error("resultant needs two polynomials of positive degree")]
    DegenerateDegree,
    #[error("polynomial involves variables other than `{0}`")]
    NotUnivariate(char),
}

/// Renders a coefficient so that the output re-parses: bare residue for prime
/// fields, `t`-polynomial with explicit `*` otherwise.
pub(crate) fn format_coeff(field: &FiniteField, c: FieldElement) -> String {
    if field.r() == 1 {
        return c.index().to_string();
    }
    let digits = field.coeffs(c);
    let mut parts = Vec::new();
    for (k, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        parts.push(match (d, k) {
            (_, 0) => d.to_string(),
            (1, _) => power,
            _ => format!("{d}*{power}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub(crate) fn format_term(
    field: &FiniteField,
    c: FieldElement,
    vars: &[char],
    exps: &[u32],
) -> String {
    let mut factors: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    let coeff = format_coeff(field, c);
    if factors.is_empty() {
        return coeff;
    }
    if c != FieldElement::ONE {
        let wrapped = if coeff.contains('+') {
            format!("({coeff})")
        } else {
            coeff
        };
        factors.insert(0, wrapped);
    }
    factors.join("*")
}

pub(crate) fn join_terms(terms: impl Iterator<Item = String>) -> String {
    let parts: Vec<String> = terms.collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
