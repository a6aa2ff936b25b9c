//! Left circulant matrices and König–Rados root counting.

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElement, FiniteField};
use crate::linalg::{self, Matrix};
use crate::poly::{reduce_mod_field_relation, UniPoly};

/// Default largest field order for circulant rank computations.
pub const DEFAULT_CIRCULANT_MAX_Q: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CirculantError {
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("degree {degree} too high for q = {q}")]
    DegreeTooHigh { degree: usize, q: u32 },
    #[error("König–Rados counting needs q > 2")]
    FieldTooSmall,
}

/// `M[i][j] = coeffs[(i + j) mod (q - 1)]`.
pub fn build_left_circulant(
    field: &FiniteField,
    coeffs: &[FieldElement],
) -> Result<Matrix, CirculantError> {
    let n = field.q() as usize - 1;
    if coeffs.len() != n {
        return Err(CirculantError::WrongLength {
            expected: n,
            got: coeffs.len(),
        });
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| coeffs[(i + j) % n]).collect())
        .collect())
}

pub fn rank_over_field(field: &FiniteField, matrix: Matrix) -> usize {
    linalg::rank(field, matrix)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantSummary {
    #[serde(skip)]
    pub first_row: Vec<FieldElement>,
    pub rank: usize,
    /// 1 when the constant coefficient vanishes.
    pub delta: u8,
}

impl CirculantSummary {
    /// Pads `f` to `q - 1` coefficients and takes the circulant rank.
    pub fn of(field: &FiniteField, f: &UniPoly) -> Result<Self, CirculantError> {
        let q = field.q();
        if q <= 2 {
            return Err(CirculantError::FieldTooSmall);
        }
        let n = q as usize - 1;
        if f.degree().is_some_and(|d| d >= n) {
            return Err(CirculantError::DegreeTooHigh {
                degree: f.degree().unwrap_or(0),
                q,
            });
        }
        let first_row: Vec<FieldElement> = (0..n).map(|i| f.coeff(i)).collect();
        let m = build_left_circulant(field, &first_row)?;
        let rank = rank_over_field(field, m);
        let delta = u8::from(f.coeff(0).is_zero());
        Ok(CirculantSummary {
            first_row,
            rank,
            delta,
        })
    }

    /// `q - 1 - ρ`: the number of nonzero roots.
    pub fn nonzero_roots(&self) -> usize {
        self.first_row.len() - self.rank
    }

    /// `q - 1 - ρ + δ`: all roots of a polynomial of degree at most `q - 2`.
    pub fn all_roots(&self) -> usize {
        self.nonzero_roots() + self.delta as usize
    }
}

/// Number of nonzero roots as `(q - 1) - rank`.
///
/// Degree `q - 1` is accepted by folding the top coefficient into the constant
/// term, which leaves values on `F_q^×` unchanged.
pub fn konig_rados_nonzero_roots(
    field: &FiniteField,
    f: &UniPoly,
) -> Result<usize, CirculantError> {
    let q = field.q();
    if q <= 2 {
        return Err(CirculantError::FieldTooSmall);
    }
    let n = q as usize - 1;
    let folded = match f.degree() {
        Some(d) if d > n => return Err(CirculantError::DegreeTooHigh { degree: d, q }),
        Some(d) if d == n => fold_top(field, f),
        _ => f.clone(),
    };
    Ok(CirculantSummary::of(field, &folded)?.nonzero_roots())
}

/// `S(Z) = (a_0 + a_{q-1}) + a_1 Z + … + a_{q-2} Z^{q-2}` from a polynomial of
/// degree at most `q - 1`.
fn fold_top(field: &FiniteField, f: &UniPoly) -> UniPoly {
    let n = field.q() as usize - 1;
    let mut c: Vec<FieldElement> = (0..n).map(|i| f.coeff(i)).collect();
    c[0] = field.add(c[0], f.coeff(n));
    UniPoly::new(f.var(), c)
}

/// All roots in `F_q`: reduce modulo `Z^q - Z`, fold `a_{q-1}` into the
/// constant term and add `δ = [R(0) = 0]`. The zero polynomial has `q` roots.
pub fn kr_count_all_roots(field: &FiniteField, p: &UniPoly) -> Result<usize, CirculantError> {
    let q = field.q();
    if q <= 2 {
        return Err(CirculantError::FieldTooSmall);
    }
    let r = reduce_mod_field_relation(field, p);
    if r.is_zero() {
        return Ok(q as usize);
    }
    let delta = usize::from(r.coeff(0).is_zero());
    let s = fold_top(field, &r);
    Ok(CirculantSummary::of(field, &s)?.nonzero_roots() + delta)
}
