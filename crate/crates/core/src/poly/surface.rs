use serde::Serialize;
use thiserror::Error;

use crate::field::FiniteField;

use super::multi::MultiPoly;
use super::parse::parse_poly;
use super::PolyError;

pub const P_VARS: [char; 2] = ['X', 'Z'];
pub const Q_VARS: [char; 3] = ['X', 'Y', 'Z'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Single,
    Double,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] PolyError),
    #[error("exponent of X must be at least 1")]
    ZeroExponent,
    #[error("{poly} must be monic in {var}")]
    NotMonic { poly: char, var: char },
    #[error("{poly} has degree {degree} in {var}, at least 2 required")]
    DegreeTooLow { poly: char, var: char, degree: u32 },
}

/// `X^d Y = P(X,Z)` (single) or `X^{d1} Y = P(X,Z), X^{d2} T = Q(X,Y,Z)` (double).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    kind: SurfaceKind,
    d1: u32,
    d2: Option<u32>,
    p: MultiPoly,
    q: Option<MultiPoly>,
}

impl SurfaceSpec {
    pub fn single(field: &FiniteField, d: u32, p: MultiPoly) -> Result<Self, SpecError> {
        if d == 0 {
            return Err(SpecError::ZeroExponent);
        }
        let p = p.with_vars(&P_VARS)?;
        check_monic(field, &p, 'P', 'Z')?;
        Ok(SurfaceSpec {
            kind: SurfaceKind::Single,
            d1: d,
            d2: None,
            p,
            q: None,
        })
    }

    pub fn double(
        field: &FiniteField,
        d1: u32,
        d2: u32,
        p: MultiPoly,
        q: MultiPoly,
    ) -> Result<Self, SpecError> {
        if d1 == 0 || d2 == 0 {
            return Err(SpecError::ZeroExponent);
        }
        let p = p.with_vars(&P_VARS)?;
        let q = q.with_vars(&Q_VARS)?;
        check_monic(field, &p, 'P', 'Z')?;
        check_monic(field, &q, 'Q', 'Y')?;
        Ok(SurfaceSpec {
            kind: SurfaceKind::Double,
            d1,
            d2: Some(d2),
            p,
            q: Some(q),
        })
    }

    pub fn parse_single(field: &FiniteField, d: u32, p: &str) -> Result<Self, SpecError> {
        Self::single(field, d, parse_poly(p, field, &P_VARS)?)
    }

    pub fn parse_double(
        field: &FiniteField,
        d1: u32,
        d2: u32,
        p: &str,
        q: &str,
    ) -> Result<Self, SpecError> {
        Self::double(
            field,
            d1,
            d2,
            parse_poly(p, field, &P_VARS)?,
            parse_poly(q, field, &Q_VARS)?,
        )
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn d1(&self) -> u32 {
        self.d1
    }

    pub fn d2(&self) -> Option<u32> {
        self.d2
    }

    /// `P(X,Z)`.
    pub fn p(&self) -> &MultiPoly {
        &self.p
    }

    /// `Q(X,Y,Z)` for double surfaces.
    pub fn q(&self) -> Option<&MultiPoly> {
        self.q.as_ref()
    }

    /// `P(0,Z)` over the single variable `Z`.
    pub fn p0(&self, field: &FiniteField) -> MultiPoly {
        self.p.substitute(field, &[('X', field.zero())])
    }

    /// `Q(0,Y,Z)` over `(Y,Z)`.
    pub fn q0(&self, field: &FiniteField) -> Option<MultiPoly> {
        self.q
            .as_ref()
            .map(|q| q.substitute(field, &[('X', field.zero())]))
    }
}

fn check_monic(field: &FiniteField, f: &MultiPoly, poly: char, var: char) -> Result<(), SpecError> {
    let degree = f.degree_in(var).unwrap_or(0);
    if !f.is_monic_in(field, var) {
        return Err(SpecError::NotMonic { poly, var });
    }
    if degree < 2 {
        return Err(SpecError::DegreeTooLow { poly, var, degree });
    }
    Ok(())
}
