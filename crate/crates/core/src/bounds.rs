//! Upper bounds and intervals for `N_0'`.
//!
//! Irrational radii are never formed: the Weil interval is tested as
//! `(N - r)^2 <= r^2 (d-1)^2 q` and the characteristic-2 interval as
//! `|N - r| 2^{t-1} <= r (2^n - 1)`.

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd};
use crate::counting::{binomial_y, ReducedSystem};
use crate::field::FieldElement;
use crate::poly::count_roots_gcd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("P(0,Z) is the zero polynomial")]
    ZeroPolynomial,
    #[error("Q(0,Y,Z) is not monic in Y")]
    NotMonic,
    #[error("the instance is outside the family of this bound: {0}")]
    FamilyMismatch(&'static str),
    #[error("this bound needs characteristic 2")]
    OddCharacteristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub low: u64,
    pub high: u64,
}

impl Interval {
    pub fn contains(&self, n: u64) -> bool {
        self.low <= n && n <= self.high
    }

    /// `[c - radius, c + radius]` clipped at zero.
    fn around(c: u64, radius: u64) -> Self {
        Interval {
            low: c.saturating_sub(radius),
            high: c + radius,
        }
    }
}

/// `|N - r| <= r (d-1) sqrt(q)` for `Q(0,Y,Z) = Y^m + b(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeilBound {
    pub r: u64,
    pub d: u64,
    pub q: u64,
    /// Integer points of the real interval.
    pub interval: Interval,
}

impl WeilBound {
    pub fn contains(&self, n: u64) -> bool {
        let dev = n.abs_diff(self.r) as u128;
        let rd = (self.r * (self.d - 1)) as u128;
        dev * dev <= rd * rd * self.q as u128
    }
}

/// `|N - r| <= r 2^{1-t} (2^n - 1)` for `q = 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Char2Bound {
    pub r: u64,
    pub n: u32,
    pub t: u32,
    pub c: u32,
    pub interval: Interval,
}

impl Char2Bound {
    pub fn contains(&self, n: u64) -> bool {
        let lhs = (n.abs_diff(self.r) as u128) << (self.t - 1);
        lhs <= self.r as u128 * ((1u128 << self.n) - 1)
    }
}

/// `n0 <= N <= dr - (d-1) n0 <= dr` for `Q(0,Y,Z) = Y^m - f(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DrBound {
    pub m: u32,
    pub d: u64,
    pub r: u64,
    pub n0: u64,
    pub upper: u64,
    pub dr: u64,
    /// Every root `γ` has `f(γ)` a nonzero `m`-th power, forcing `N = dr`.
    pub sharp: bool,
}

impl DrBound {
    pub fn contains(&self, n: u64) -> bool {
        self.n0 <= n && n <= self.upper && self.upper <= self.dr && (!self.sharp || n == self.dr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub mn_upper: Option<u64>,
    pub rho_upper: u64,
    pub weil: Option<WeilBound>,
    pub char2: Option<Char2Bound>,
    pub dr: Option<DrBound>,
    pub sharp: bool,
}

impl BoundRecord {
    /// Whether `n` satisfies every populated bound.
    pub fn contains(&self, n: u64) -> bool {
        self.mn_upper.is_none_or(|u| n <= u)
            && n <= self.rho_upper
            && self.weil.is_none_or(|w| w.contains(n))
            && self.char2.is_none_or(|c| c.contains(n))
            && self.dr.is_none_or(|d| d.contains(n))
    }
}

/// Every applicable bound; inapplicable ones are left empty.
pub fn compute_bounds(sys: &ReducedSystem) -> BoundRecord {
    let dr = bound_dr(sys).ok();
    BoundRecord {
        mn_upper: bound_mn(sys).ok(),
        rho_upper: bound_rho(sys),
        weil: bound_weil_binomial(sys).ok(),
        char2: bound_char2(sys).ok(),
        sharp: dr.is_some_and(|d| d.sharp),
        dr,
    }
}

/// `deg P(0,Z) · deg_Y Q(0,Y,Z)`.
pub fn bound_mn(sys: &ReducedSystem) -> Result<u64, BoundError> {
    let m = sys.p0().degree_in('Z').ok_or(BoundError::ZeroPolynomial)?;
    let f = sys.field();
    if !sys.q0().is_monic_in(f, 'Y') {
        return Err(BoundError::NotMonic);
    }
    let n = sys.q0().degree_in('Y').ok_or(BoundError::NotMonic)?;
    Ok(m as u64 * n as u64)
}

/// `ρ_P · max_γ ρ_Q(γ)`; a vanishing `Q(0,Y,γ)` has `ρ_Q(γ) = q`.
pub fn bound_rho(sys: &ReducedSystem) -> u64 {
    let f = sys.field();
    let rho_p = count_roots_gcd(f, sys.p0_dense()) as u64;
    let rho_q = sys
        .roots()
        .iter()
        .map(|&g| {
            sys.q_at(g)
                .map_or(f.q() as usize, |u| count_roots_gcd(f, &u)) as u64
        })
        .max()
        .unwrap_or(0);
    rho_p * rho_q
}

pub fn bound_weil_binomial(sys: &ReducedSystem) -> Result<WeilBound, BoundError> {
    let (m, _) = binomial_y(sys).ok_or(BoundError::FamilyMismatch("Q(0,Y,Z) is not Y^m + b(Z)"))?;
    let q = sys.field().q() as u64;
    let d = gcd(m as u64, q - 1);
    let r = sys.r();
    let rd = (r * (d - 1)) as u128;
    let radius = (rd * rd * q as u128).sqrt() as u64;
    Ok(WeilBound {
        r,
        d,
        q,
        interval: Interval::around(r, radius),
    })
}

/// `q = 2^n` and `Q(0,Y,Z) = Y^c + Σ b_i Y^{a_i (2^t - 1)}` with `a_i > 0`,
/// `t | n` and `gcd(c, 2^n - 1) = 1`. The largest admissible `t` is used.
pub fn bound_char2(sys: &ReducedSystem) -> Result<Char2Bound, BoundError> {
    let f = sys.field();
    if f.p() != 2 {
        return Err(BoundError::OddCharacteristic);
    }
    let mismatch =
        BoundError::FamilyMismatch("Q(0,Y,Z) is not of the form Y^c + Σ b_i Y^(a_i(2^t-1))");
    if sys.q0().involves('Z') {
        return Err(mismatch);
    }
    let n = f.r();
    let q1 = f.q() as u64 - 1;
    let terms: Vec<(u32, FieldElement)> = sys.q0().terms().map(|(e, c)| (e[0], c)).collect();
    if terms.is_empty() || terms.iter().any(|&(e, _)| e == 0) {
        return Err(mismatch);
    }
    let mut best: Option<(u32, u32)> = None;
    for &(c, coeff) in &terms {
        if coeff != FieldElement::ONE || gcd(c as u64, q1) != 1 {
            continue;
        }
        for t in divisors(n as u64).into_iter().map(|t| t as u32) {
            let step = (1u64 << t) - 1;
            let ok = terms
                .iter()
                .all(|&(e, _)| e == c || (e as u64).is_multiple_of(step));
            if ok && best.is_none_or(|(bt, _)| t > bt) {
                best = Some((t, c));
            }
        }
    }
    let (t, c) = best.ok_or(mismatch)?;
    let r = sys.r();
    let radius = ((r as u128 * q1 as u128) >> (t - 1)) as u64;
    Ok(Char2Bound {
        r,
        n,
        t,
        c,
        interval: Interval::around(r, radius),
    })
}

pub fn bound_dr(sys: &ReducedSystem) -> Result<DrBound, BoundError> {
    let (m, fz) =
        binomial_y(sys).ok_or(BoundError::FamilyMismatch("Q(0,Y,Z) is not Y^m - f(Z)"))?;
    let field = sys.field();
    let d = gcd(m as u64, field.q() as u64 - 1);
    let r = sys.r();
    let mut n0 = 0;
    let mut sharp = true;
    for &g in sys.roots() {
        let v = fz.eval(field, &[g]);
        if v.is_zero() {
            n0 += 1;
            sharp = false;
        } else if !field.is_kth_power(v, m as u64) {
            sharp = false;
        }
    }
    Ok(DrBound {
        m,
        d,
        r,
        n0,
        upper: d * r - (d - 1) * n0,
        dr: d * r,
        sharp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::n0prime_oracle;
    use crate::field::FiniteField;
    use crate::poly::parse_poly;

    fn sys(p: u64, r: u32, p0: &str, q0: &str) -> ReducedSystem {
        let f = FiniteField::new(p, r).unwrap();
        let pp = parse_poly(p0, &f, &['Z']).unwrap();
        let qq = parse_poly(q0, &f, &['Y', 'Z']).unwrap();
        ReducedSystem::new(&f, &pp, &qq).unwrap()
    }

    #[test]
    fn sharpness_example() {
        let s = sys(17, 1, "Z^8 - 1", "Y^6 - Z");
        assert_eq!(bound_mn(&s), Ok(48));
        assert_eq!(bound_rho(&s), 16);
        let dr = bound_dr(&s).unwrap();
        assert_eq!(
            (dr.n0, dr.upper, dr.dr, dr.d, dr.r, dr.sharp),
            (0, 16, 16, 2, 8, true)
        );
        let w = bound_weil_binomial(&s).unwrap();
        assert!(w.contains(16));
        assert_eq!(
            w.interval,
            Interval {
                low: 0,
                high: 8 + 32
            }
        );
        assert_eq!(bound_char2(&s), Err(BoundError::OddCharacteristic));
        let rec = compute_bounds(&s);
        assert!(rec.sharp && rec.contains(16) && !rec.contains(15));
    }

    #[test]
    fn degenerate_cases() {
        let s = sys(5, 1, "Z^2 + 2", "Y^2 + Z");
        assert_eq!(bound_rho(&s), 0);
        let s = sys(5, 1, "Z^5 - Z", "Y^3");
        let dr = bound_dr(&s).unwrap();
        assert_eq!((dr.n0, dr.upper), (5, 5));
        let s = sys(7, 1, "Z^2 - 1", "Y^5 + Z");
        let w = bound_weil_binomial(&s).unwrap();
        assert_eq!(w.interval, Interval { low: 2, high: 2 });
        assert_eq!(n0prime_oracle(&s), 2);
        let s = sys(5, 1, "Z", "2*Y^2");
        assert_eq!(bound_mn(&s), Err(BoundError::NotMonic));
        assert!(matches!(bound_dr(&s), Err(BoundError::FamilyMismatch(_))));
    }

    #[test]
    fn char2_examples() {
        let s = sys(2, 2, "Z^4 - Z", "Y + t*Y^3");
        let b = bound_char2(&s).unwrap();
        assert_eq!((b.t, b.c), (2, 1));
        assert_eq!(
            b.interval,
            Interval {
                low: 0,
                high: 4 + 6
            }
        );
        assert!(b.contains(n0prime_oracle(&s)));
        let s = sys(2, 1, "Z^2 + Z", "Y^2 + Y");
        let b = bound_char2(&s).unwrap();
        assert_eq!(b.t, 1);
        assert!(b.contains(n0prime_oracle(&s)));
        let s = sys(2, 2, "Z", "Y^2 + Z");
        assert!(matches!(
            bound_char2(&s),
            Err(BoundError::FamilyMismatch(_))
        ));
    }
}
