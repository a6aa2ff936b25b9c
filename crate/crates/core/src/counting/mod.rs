//! Point counts on single and double Danielewski surfaces.
//!
//! Both totals reduce to a count of solutions at `X = 0`: `N_0`, the roots of
//! `P(0,Z)`, or `N_0'`, the pairs `(β, γ)` with `P(0,γ) = Q(0,β,γ) = 0`.

mod closed_form;
mod n0prime;
mod polygonal;
mod single;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{compute_bounds, BoundRecord};
use crate::characters::CharError;
use crate::circulant::{CirculantError, DEFAULT_CIRCULANT_MAX_Q};
use crate::field::{FieldElement, FiniteField};
use crate::poly::{
    count_roots_gcd, roots_in_field, MultiPoly, PolyError, SpecError, SurfaceKind, SurfaceSpec,
    UniPoly,
};

pub(crate) use closed_form::binomial_y;
pub use closed_form::{
    closed_form_dispatch, closed_form_matches, permutation_row, ClosedFamily, ClosedFormResult,
};
pub use n0prime::{
    n0prime_additive_master, n0prime_double_char, n0prime_konig_rados, n0prime_multchar_binomial,
    n0prime_oracle, n0prime_resultant, n0prime_rootwise,
};
pub use polygonal::{
    polygonal_number, polygonal_row, row_gonality, verify_polygonal_family, PolygonalCheck,
};
pub use single::{n0_charsum, n0_gcd, n0_konig_rados, n0_oracle, single_closed_forms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Circulant(#[from] CirculantError),
    #[error(transparent)]
    Character(#[from] CharError),
    #[error("method `{method}` does not apply: {reason}")]
    NotApplicable {
        method: &'static str,
        reason: String,
    },
    #[error("method `{method}` is capped at q <= {cap}, got q = {q}")]
    CapExceeded {
        method: &'static str,
        q: u32,
        cap: u32,
    },
    #[error("method `{method}` produced a non-integer character sum")]
    NonIntegerResult { method: &'static str },
    #[error("method `{method}` is internally inconsistent: {detail}")]
    Inconsistent {
        method: &'static str,
        detail: String,
    },
    #[error("expected a {expected:?} surface")]
    WrongKind { expected: SurfaceKind },
    #[error("polygonal row must be 1..=4, got {0}")]
    BadRow(u8),
}

impl CountError {
    /// Skip signals: the method is reported as not applicable.
    pub fn is_skip(&self) -> bool {
        matches!(
            self,
            CountError::NotApplicable { .. }
                | CountError::CapExceeded { .. }
                | CountError::Circulant(CirculantError::FieldTooSmall)
                | CountError::Character(CharError::EvenCharacteristic)
        )
    }
}

/// Per-method field-size caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Brute-force oracle and additive character sums, `O(q^2)` per root.
    pub oracle_max_q: u32,
    /// Per-root Sylvester determinants of size about `q`.
    pub resultant_max_q: u32,
    /// Circulant ranks, `O(q^3)`.
    pub circulant_max_q: u32,
    /// Double additive character expansion.
    pub double_char_max_q: u32,
    /// Full enumeration of surface points.
    pub enumeration_max_q: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            oracle_max_q: 4096,
            resultant_max_q: 256,
            circulant_max_q: DEFAULT_CIRCULANT_MAX_Q,
            double_char_max_q: 64,
            enumeration_max_q: 16,
        }
    }
}

pub(crate) fn check_cap(method: &'static str, q: u32, cap: u32) -> Result<(), CountError> {
    if q > cap {
        Err(CountError::CapExceeded { method, q, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Oracle,
    Gcd,
    Resultant,
    Charsum,
    DoubleChar,
    Kr,
    MultChar,
    Closed,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Oracle,
        Method::Gcd,
        Method::Resultant,
        Method::Charsum,
        Method::DoubleChar,
        Method::Kr,
        Method::MultChar,
        Method::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Gcd => "gcd",
            Method::Resultant => "resultant",
            Method::Charsum => "charsum",
            Method::DoubleChar => "doublechar",
            Method::Kr => "kr",
            Method::MultChar => "multchar",
            Method::Closed => "closed",
        }
    }

    /// Methods meaningful for single surfaces.
    pub fn applies_to_single(self) -> bool {
        matches!(
            self,
            Method::Oracle | Method::Gcd | Method::Charsum | Method::Kr | Method::Closed
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// The system at `X = 0`: `P(0,Z)` over `Z` and `Q(0,Y,Z)` over `(Y,Z)`.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    field: FiniteField,
    p0: MultiPoly,
    q0: MultiPoly,
    p0_dense: UniPoly,
    roots: Vec<FieldElement>,
}

/// Dense form in `v`, folding exponents modulo the field relation when the
/// literal degree is beyond the dense cap.
pub(crate) fn dense(field: &FiniteField, f: &MultiPoly, v: char) -> Result<UniPoly, PolyError> {
    match f.to_uni(field, v) {
        Err(PolyError::SizeCapExceeded { .. }) => f.to_uni_reduced(field, v),
        other => other,
    }
}

impl ReducedSystem {
    /// `p0` may only involve `Z`; `q0` only `Y` and `Z`.
    pub fn new(field: &FiniteField, p0: &MultiPoly, q0: &MultiPoly) -> Result<Self, CountError> {
        let p0 = p0.with_vars(&['Z'])?;
        let q0 = q0.with_vars(&['Y', 'Z'])?;
        let p0_dense = dense(field, &p0, 'Z')?;
        let roots = roots_in_field(field, &p0_dense);
        Ok(ReducedSystem {
            field: field.clone(),
            p0,
            q0,
            p0_dense,
            roots,
        })
    }

    /// Sets `X = 0` in `P(X,Z)` and `Q(X,Y,Z)`.
    pub fn from_pq(field: &FiniteField, p: &MultiPoly, q: &MultiPoly) -> Result<Self, CountError> {
        let x0 = [('X', field.zero())];
        Self::new(field, &p.substitute(field, &x0), &q.substitute(field, &x0))
    }

    pub fn from_spec(field: &FiniteField, spec: &SurfaceSpec) -> Result<Self, CountError> {
        let q = spec.q().ok_or(CountError::WrongKind {
            expected: SurfaceKind::Double,
        })?;
        Self::from_pq(field, spec.p(), q)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn p0(&self) -> &MultiPoly {
        &self.p0
    }

    pub fn q0(&self) -> &MultiPoly {
        &self.q0
    }

    pub fn p0_dense(&self) -> &UniPoly {
        &self.p0_dense
    }

    /// Roots of `P(0,Z)` in enumeration order.
    pub fn roots(&self) -> &[FieldElement] {
        &self.roots
    }

    pub fn r(&self) -> u64 {
        self.roots.len() as u64
    }

    /// `Q(0,Y,γ)` as a dense polynomial in `Y`.
    pub fn q_at(&self, gamma: FieldElement) -> Result<UniPoly, PolyError> {
        dense(
            &self.field,
            &self.q0.substitute(&self.field, &[('Z', gamma)]),
            'Y',
        )
    }

    pub fn q_value(&self, beta: FieldElement, gamma: FieldElement) -> FieldElement {
        self.q0.eval(&self.field, &[beta, gamma])
    }

    /// Roots of `P(0,Z)`, cross-checked against `deg gcd(P(0,Z), Z^q - Z)`.
    pub(crate) fn checked_roots(
        &self,
        method: &'static str,
    ) -> Result<&[FieldElement], CountError> {
        let g = count_roots_gcd(&self.field, &self.p0_dense);
        if g != self.roots.len() {
            return Err(CountError::Inconsistent {
                method,
                detail: format!("gcd degree {g} but {} roots found", self.roots.len()),
            });
        }
        Ok(&self.roots)
    }
}

/// Per-method values of `N_0` or `N_0'` with the assembled point count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub kind: SurfaceKind,
    /// `None` marks a method that was selected but does not apply.
    pub method_results: BTreeMap<String, Option<u64>>,
    pub closed_form: Option<ClosedFormResult>,
    pub closed_form_matches: Vec<ClosedFormResult>,
    pub total_points: u64,
    pub s1_count: u64,
    pub s2_count: u64,
    pub bounds: Option<BoundRecord>,
    /// Point count by direct enumeration, when within the cap.
    pub enumerated_total: Option<u64>,
    pub agreement: bool,
}

impl CountReport {
    /// The agreed value of `N_0` or `N_0'`, preferring the oracle.
    pub fn n0(&self) -> Option<u64> {
        self.method_results
            .get("oracle")
            .copied()
            .flatten()
            .or_else(|| self.method_results.values().flatten().next().copied())
    }
}

fn record(
    results: &mut BTreeMap<String, Option<u64>>,
    method: Method,
    value: Result<u64, CountError>,
) -> Result<(), CountError> {
    match value {
        Ok(v) => {
            results.insert(method.name().to_string(), Some(v));
            Ok(())
        }
        Err(e) if e.is_skip() => {
            results.insert(method.name().to_string(), None);
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn assemble(
    q: u64,
    kind: SurfaceKind,
    method_results: BTreeMap<String, Option<u64>>,
    matches: Vec<ClosedFormResult>,
    bounds: Option<BoundRecord>,
    enumerated_total: Option<u64>,
) -> Result<CountReport, CountError> {
    let mut values: Vec<u64> = method_results.values().flatten().copied().collect();
    values.extend(matches.iter().map(|m| m.value));
    let n = method_results
        .get("oracle")
        .copied()
        .flatten()
        .or_else(|| values.first().copied())
        .ok_or(CountError::NotApplicable {
            method: "all",
            reason: "no selected method applies".to_string(),
        })?;
    let total_points = q * (q - 1 + n);
    let mut agreement = values.iter().all(|&v| v == n);
    if let Some(e) = enumerated_total {
        agreement &= e == total_points;
    }
    if let Some(b) = &bounds {
        agreement &= b.contains(n);
    }
    Ok(CountReport {
        q,
        kind,
        method_results,
        closed_form: matches.first().cloned(),
        closed_form_matches: matches,
        total_points,
        s1_count: q * n,
        s2_count: q * q - q,
        bounds,
        enumerated_total,
        agreement,
    })
}

/// `N_0` by every selected method and `q(q - 1 + N_0)`.
pub fn count_single_surface(
    spec: &SurfaceSpec,
    field: &FiniteField,
    methods: &[Method],
    caps: &Caps,
) -> Result<CountReport, CountError> {
    if spec.kind() != SurfaceKind::Single {
        return Err(CountError::WrongKind {
            expected: SurfaceKind::Single,
        });
    }
    let p0 = spec.p0(field);
    let p0_dense = dense(field, &p0, 'Z')?;
    let q = field.q();
    let mut results = BTreeMap::new();
    let mut matches = Vec::new();
    for &m in methods.iter().filter(|m| m.applies_to_single()) {
        let value = match m {
            Method::Oracle => {
                check_cap("oracle", q, caps.oracle_max_q).map(|_| n0_oracle(field, &p0_dense))
            }
            Method::Gcd => Ok(n0_gcd(field, &p0_dense)),
            Method::Charsum => check_cap("charsum", q, caps.oracle_max_q)
                .and_then(|_| n0_charsum(field, &p0_dense)),
            Method::Kr => check_cap("kr", q, caps.circulant_max_q)
                .and_then(|_| n0_konig_rados(field, &p0_dense)),
            Method::Closed => {
                matches = single_closed_forms(field, &p0);
                continue;
            }
            _ => continue,
        };
        record(&mut results, m, value)?;
    }
    let enumerated = (q <= caps.enumeration_max_q).then(|| enumerate_single(field, spec));
    assemble(
        q as u64,
        SurfaceKind::Single,
        results,
        matches,
        None,
        enumerated,
    )
}

/// `N_0'` by every selected method, the closed-form dispatcher and the bounds;
/// the total is `q(q - 1 + N_0')`.
pub fn count_double_surface(
    spec: &SurfaceSpec,
    field: &FiniteField,
    methods: &[Method],
    caps: &Caps,
) -> Result<CountReport, CountError> {
    let sys = ReducedSystem::from_spec(field, spec)?;
    let q = field.q();
    let mut results = BTreeMap::new();
    let mut matches = Vec::new();
    for &m in methods {
        let value = match m {
            Method::Oracle => {
                check_cap("oracle", q, caps.oracle_max_q).map(|_| n0prime_oracle(&sys))
            }
            Method::Gcd => n0prime_rootwise(&sys),
            Method::Resultant => check_cap("resultant", q, caps.resultant_max_q)
                .and_then(|_| n0prime_resultant(&sys)),
            Method::Charsum => check_cap("charsum", q, caps.oracle_max_q)
                .and_then(|_| n0prime_additive_master(&sys)),
            Method::DoubleChar => check_cap("doublechar", q, caps.double_char_max_q)
                .and_then(|_| n0prime_double_char(&sys)),
            Method::Kr => {
                check_cap("kr", q, caps.circulant_max_q).and_then(|_| n0prime_konig_rados(&sys))
            }
            Method::MultChar => n0prime_multchar_binomial(&sys),
            Method::Closed => {
                matches = closed_form_matches(&sys, caps);
                continue;
            }
        };
        record(&mut results, m, value)?;
    }
    let enumerated = (q <= caps.enumeration_max_q).then(|| enumerate_double(field, spec).total());
    let bounds = Some(compute_bounds(&sys));
    assemble(
        q as u64,
        SurfaceKind::Double,
        results,
        matches,
        bounds,
        enumerated,
    )
}

/// Brute-force count of `X^d Y = P(X,Z)` over `F_q^3`.
pub fn enumerate_single(field: &FiniteField, spec: &SurfaceSpec) -> u64 {
    let d = spec.d1() as u64;
    let mut count = 0;
    for x in field.elements() {
        let xd = field.pow(x, d);
        for z in field.elements() {
            let pz = spec.p().eval(field, &[x, z]);
            count += field.elements().filter(|&y| field.mul(xd, y) == pz).count() as u64;
        }
    }
    count
}

/// Points of a double surface split by the `X = 0` slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumeratedCount {
    pub x_zero: u64,
    pub x_nonzero: u64,
}

impl EnumeratedCount {
    pub fn total(&self) -> u64 {
        self.x_zero + self.x_nonzero
    }
}

/// Brute-force count of the double surface over `F_q^4`. Panics on a
/// single-surface spec.
pub fn enumerate_double(field: &FiniteField, spec: &SurfaceSpec) -> EnumeratedCount {
    let qpoly = spec.q().expect("double surface");
    let (d1, d2) = (spec.d1() as u64, spec.d2().expect("double surface") as u64);
    let mut out = EnumeratedCount {
        x_zero: 0,
        x_nonzero: 0,
    };
    for x in field.elements() {
        let (x1, x2) = (field.pow(x, d1), field.pow(x, d2));
        let mut n = 0u64;
        for y in field.elements() {
            for z in field.elements() {
                if field.mul(x1, y) != spec.p().eval(field, &[x, z]) {
                    continue;
                }
                let qv = qpoly.eval(field, &[x, y, z]);
                n += field.elements().filter(|&t| field.mul(x2, t) == qv).count() as u64;
            }
        }
        if x.is_zero() {
            out.x_zero += n;
        } else {
            out.x_nonzero += n;
        }
    }
    out
}
