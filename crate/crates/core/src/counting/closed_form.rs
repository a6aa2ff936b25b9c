//! Closed forms for structured families of reduced systems.
//!
//! Arms are tried in a fixed order: (a) homogeneous pair, (b) homogeneous
//! `Q(0,Y,Z)`, (c) `Y^m - f(Z)`, (d) `a(Z)Y^m - b(Z)Y^n`, (e) permutation
//! polynomials and shifted powers, (f) monic quadratics over a prime field,
//! (g) two univariate polynomials of degree `q - 2`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{gcd, prime_power};
use crate::characters::quadratic_character;
use crate::circulant::CirculantSummary;
use crate::field::{FieldElement, FiniteField};
use crate::poly::{roots_in_field, MultiPoly, UniPoly};

use super::{Caps, ReducedSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClosedFamily {
    #[serde(rename = "homogeneous")]
    Homogeneous,
    #[serde(rename = "homogeneous-ratio")]
    HomogeneousRatio,
    #[serde(rename = "monomial-Y")]
    MonomialY,
    #[serde(rename = "binomial-Y")]
    BinomialY,
    #[serde(rename = "binomial-two-term")]
    BinomialTwoTerm,
    #[serde(rename = "permutation")]
    Permutation,
    #[serde(rename = "shifted-power")]
    ShiftedPower,
    #[serde(rename = "quadratic-Y")]
    QuadraticY,
    #[serde(rename = "degree-q-2-product")]
    DegreeQMinus2Product,
    #[serde(rename = "polygonal-row")]
    PolygonalRow,
}

impl ClosedFamily {
    pub fn name(self) -> &'static str {
        match self {
            ClosedFamily::Homogeneous => "homogeneous",
            ClosedFamily::HomogeneousRatio => "homogeneous-ratio",
            ClosedFamily::MonomialY => "monomial-Y",
            ClosedFamily::BinomialY => "binomial-Y",
            ClosedFamily::BinomialTwoTerm => "binomial-two-term",
            ClosedFamily::Permutation => "permutation",
            ClosedFamily::ShiftedPower => "shifted-power",
            ClosedFamily::QuadraticY => "quadratic-Y",
            ClosedFamily::DegreeQMinus2Product => "degree-q-2-product",
            ClosedFamily::PolygonalRow => "polygonal-row",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    pub family: ClosedFamily,
    pub value: u64,
    pub parameters: BTreeMap<String, i64>,
}

impl ClosedFormResult {
    pub(crate) fn new(family: ClosedFamily, value: u64, params: &[(&str, i64)]) -> Self {
        ClosedFormResult {
            family,
            value,
            parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// First matching arm.
pub fn closed_form_dispatch(sys: &ReducedSystem, caps: &Caps) -> Option<ClosedFormResult> {
    closed_form_matches(sys, caps).into_iter().next()
}

/// Every matching arm in dispatch order.
pub fn closed_form_matches(sys: &ReducedSystem, caps: &Caps) -> Vec<ClosedFormResult> {
    let ctx = Ctx::new(sys);
    let mut out = Vec::new();
    out.extend(arm_homogeneous_pair(&ctx));
    out.extend(arm_homogeneous_q(&ctx, caps));
    out.extend(arm_binomial_y(&ctx));
    out.extend(arm_two_term(&ctx));
    out.extend(arm_permutation(&ctx));
    out.extend(arm_quadratic(&ctx));
    out.extend(arm_degree_q_minus_2(&ctx, caps));
    out
}

struct Ctx<'a> {
    sys: &'a ReducedSystem,
    f: &'a FiniteField,
    q: u64,
    r: u64,
    delta: u64,
    /// Coefficients of `Q(0,Y,Z)` by power of `Y`, as polynomials in `Z`.
    ycoeffs: BTreeMap<u32, MultiPoly>,
}

impl<'a> Ctx<'a> {
    fn new(sys: &'a ReducedSystem) -> Self {
        let f = sys.field();
        let delta = u64::from(sys.roots().first().is_some_and(|g| g.is_zero()));
        Ctx {
            sys,
            f,
            q: f.q() as u64,
            r: sys.r(),
            delta,
            ycoeffs: sys.q0().coefficients_in(f, 'Y'),
        }
    }

    fn r1(&self) -> u64 {
        self.r - self.delta
    }

    fn top(&self) -> Option<(u32, &MultiPoly)> {
        self.ycoeffs.last_key_value().map(|(&k, c)| (k, c))
    }

    fn is_one(c: &MultiPoly) -> bool {
        c.as_constant() == Some(FieldElement::ONE)
    }

    fn ez(&self, c: &MultiPoly, gamma: FieldElement) -> FieldElement {
        c.eval(self.f, &[gamma])
    }
}

/// `x^{(q-1)/d} = 1`.
fn is_dth_residue(f: &FiniteField, x: FieldElement, d: u64) -> bool {
    f.pow(x, (f.q() as u64 - 1) / d) == f.one()
}

/// `Q(0,Y,Z) = Y^m - b(Z)` with `m >= 1`; returns `m` and `b` over `Z`.
pub(crate) fn binomial_y(sys: &ReducedSystem) -> Option<(u32, MultiPoly)> {
    let f = sys.field();
    let coeffs = sys.q0().coefficients_in(f, 'Y');
    let (&m, lead) = coeffs.last_key_value()?;
    if m == 0 || lead.as_constant() != Some(FieldElement::ONE) {
        return None;
    }
    if coeffs.keys().any(|&k| k != m && k != 0) {
        return None;
    }
    let b = coeffs
        .get(&0)
        .map(|c| c.neg(f))
        .unwrap_or_else(|| MultiPoly::zero(&['Z']));
    Some((m, b))
}

/// (a) `P(0,Z) = aZ^{h1}` and `Q(0,Y,Z)` homogeneous of degree `h2`, both
/// at least 2, with a `Y^{h2}` term: only `(0, 0)` solves the system.
fn arm_homogeneous_pair(c: &Ctx) -> Option<ClosedFormResult> {
    let p0 = c.sys.p0();
    if p0.num_terms() != 1 {
        return None;
    }
    let h1 = p0.total_degree()?;
    let q0 = c.sys.q0();
    let h2 = q0.total_degree()?;
    if h1 < 2 || h2 < 2 || !q0.is_homogeneous() || !c.ycoeffs.contains_key(&h2) {
        return None;
    }
    Some(ClosedFormResult::new(
        ClosedFamily::Homogeneous,
        1,
        &[("h1", h1 as i64), ("h2", h2 as i64)],
    ))
}

/// (b) `Q(0,Y,Z)` homogeneous of degree `h >= 1` with a `Y^h` term:
/// `r1 r2 + δ`, where `r2` counts roots of `Q(0,W,1)`. In degree `q - 2` the
/// root count of `Q(0,W,1)` also comes from its circulant rank.
fn arm_homogeneous_q(c: &Ctx, caps: &Caps) -> Vec<ClosedFormResult> {
    let q0 = c.sys.q0();
    let Some(h) = q0.total_degree() else {
        return Vec::new();
    };
    if h == 0 || !q0.is_homogeneous() || !c.ycoeffs.contains_key(&h) {
        return Vec::new();
    }
    let w = q0
        .substitute(c.f, &[('Z', c.f.one())])
        .to_uni(c.f, 'Y')
        .expect("degree at most h");
    let r2 = roots_in_field(c.f, &w).len() as u64;
    let mut out = vec![ClosedFormResult::new(
        ClosedFamily::HomogeneousRatio,
        c.r1() * r2 + c.delta,
        &[
            ("h", h as i64),
            ("r1", c.r1() as i64),
            ("r2", r2 as i64),
            ("delta", c.delta as i64),
        ],
    )];
    if c.q > 2 && h as u64 == c.q - 2 && c.q <= caps.circulant_max_q as u64 {
        if let Ok(s) = CirculantSummary::of(c.f, &w) {
            let roots_w = s.all_roots() as u64;
            out.push(ClosedFormResult::new(
                ClosedFamily::HomogeneousRatio,
                c.r1() * roots_w + c.delta,
                &[
                    ("h", h as i64),
                    ("r1", c.r1() as i64),
                    ("rho_q", s.rank as i64),
                    ("delta_q", s.delta as i64),
                    ("delta", c.delta as i64),
                ],
            ));
        }
    }
    out
}

/// (c) `Q(0,Y,Z) = Y^m - f(Z)` with `m >= 2`: `n0 + d n1`, `d = gcd(m, q-1)`.
/// For `f = aZ^m` the three-way split `r`, `δ`, `dr + (1-d)δ` is used.
fn arm_binomial_y(c: &Ctx) -> Option<ClosedFormResult> {
    let (m, f) = binomial_y(c.sys)?;
    if m < 2 {
        return None;
    }
    let d = gcd(m as u64, c.q - 1);
    let monomial = match f.num_terms() {
        0 => Some(FieldElement::ZERO),
        1 => {
            let (e, a) = f.terms().next()?;
            (e[0] == m).then_some(a)
        }
        _ => None,
    };
    if let Some(a) = monomial {
        let (value, case) = if a.is_zero() {
            (c.r, 0)
        } else if !is_dth_residue(c.f, a, d) {
            (c.delta, 1)
        } else {
            (d * c.r - (d - 1) * c.delta, 2)
        };
        return Some(ClosedFormResult::new(
            ClosedFamily::MonomialY,
            value,
            &[
                ("m", m as i64),
                ("d", d as i64),
                ("r", c.r as i64),
                ("delta", c.delta as i64),
                ("case", case),
            ],
        ));
    }
    let (mut n0, mut n1) = (0u64, 0u64);
    for &g in c.sys.roots() {
        let v = c.ez(&f, g);
        if v.is_zero() {
            n0 += 1;
        } else if is_dth_residue(c.f, v, d) {
            n1 += 1;
        }
    }
    Some(ClosedFormResult::new(
        ClosedFamily::BinomialY,
        n0 + d * n1,
        &[
            ("m", m as i64),
            ("d", d as i64),
            ("n0", n0 as i64),
            ("n1", n1 as i64),
        ],
    ))
}

/// (d) `Q(0,Y,Z) = a(Z)Y^m - b(Z)Y^n` with `0 <= n < m <= q-1`.
fn arm_two_term(c: &Ctx) -> Option<ClosedFormResult> {
    let keys: Vec<u32> = c.ycoeffs.keys().copied().collect();
    let (m, n) = match keys.as_slice() {
        [m] if *m >= 1 => (*m, 0),
        [n, m] => (*m, *n),
        _ => return None,
    };
    if m as u64 > c.q - 1 {
        return None;
    }
    let zero = MultiPoly::zero(&['Z']);
    let a = &c.ycoeffs[&m];
    let b = c
        .ycoeffs
        .get(&n)
        .filter(|_| n != m)
        .map_or(zero, |x| x.neg(c.f));
    let d = gcd(if n > 0 { (m - n) as u64 } else { m as u64 }, c.q - 1);
    let (mut n0, mut n0p, mut n1) = (0u64, 0u64, 0u64);
    for &g in c.sys.roots() {
        let (av, bv) = (c.ez(a, g), c.ez(&b, g));
        match (av.is_zero(), bv.is_zero()) {
            (true, true) => n0 += 1,
            (false, true) => n0p += 1,
            (false, false) => {
                let ratio = c.f.div(bv, av).expect("a(γ) nonzero");
                if is_dth_residue(c.f, ratio, d) {
                    n1 += 1;
                }
            }
            (true, false) => {}
        }
    }
    let value = if n > 0 {
        c.r + (c.q - 1) * n0 + d * n1
    } else {
        c.q * n0 + n0p + d * n1
    };
    Some(ClosedFormResult::new(
        ClosedFamily::BinomialTwoTerm,
        value,
        &[
            ("m", m as i64),
            ("n", n as i64),
            ("d", d as i64),
            ("n0", n0 as i64),
            ("n0_prime", n0p as i64),
            ("n1", n1 as i64),
        ],
    ))
}

/// Row of the permutation-polynomial table that `f` satisfies, if any:
/// 1. `Y^i + b`, `i >= 2`, `gcd(i, q-1) = 1`;
/// 2. `Y^3 + aY^2 + bY + c`, `p != 3`, `a^2 = 3b`, `q ≡ 2 (mod 3)`;
/// 3. `Y^3 + bY + c`, `p = 3`, `η(-b) != 1`;
/// 4. `Y^i + b`, `i > 1` not a power of `p`, `q >= (i^2 - 4i + 6)^2`, `gcd(i, q-1) = 1`;
/// 5. `Y^{p^s} - aY^{p^r}`, `s > r >= 0`, `a` not a `(p^{s-r} - 1)`-th power.
pub fn permutation_row(field: &FiniteField, f: &UniPoly) -> Option<u8> {
    if !f.is_monic() {
        return None;
    }
    let deg = f.degree()?;
    let q = field.q() as u64;
    let p = field.p() as u64;
    let support: Vec<usize> = (0..=deg).filter(|&i| !f.coeff(i).is_zero()).collect();
    let only_top_and_const = support.iter().all(|&i| i == deg || i == 0);
    let coprime = gcd(deg as u64, q - 1) == 1;
    if deg >= 2 && only_top_and_const && coprime {
        return Some(1);
    }
    if deg == 3 && p != 3 && q % 3 == 2 {
        let (a, b) = (f.coeff(2), f.coeff(1));
        if field.mul(a, a) == field.mul(field.from_int(3), b) {
            return Some(2);
        }
    }
    if deg == 3 && p == 3 && f.coeff(2).is_zero() {
        let eta = quadratic_character(field, field.neg(f.coeff(1))).ok()?;
        if eta != 1 {
            return Some(3);
        }
    }
    if deg > 1
        && only_top_and_const
        && coprime
        && prime_power(deg as u64).is_none_or(|(b, _)| b != p)
    {
        let i = deg as u64;
        if q >= (i * i + 6 - 4 * i).pow(2) {
            return Some(4);
        }
    }
    if support.len() == 2 {
        let (lo, hi) = (support[0] as u64, support[1] as u64);
        let s = exact_log(hi, p)?;
        let r = exact_log(lo, p)?;
        let a = field.neg(f.coeff(lo as usize));
        // a is a (p^{s-r} - 1)-th power iff it is a gcd(p^{s-r} - 1, q - 1)-th power.
        let k = (modpow(p, s - r, q - 1) + q - 2) % (q - 1);
        if !field.is_kth_power(a, gcd(k, q - 1)) {
            return Some(5);
        }
    }
    None
}

fn exact_log(x: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut v = 1u64;
    while v < x {
        v = v.checked_mul(p)?;
        k += 1;
    }
    (v == x).then_some(k)
}

fn modpow(mut b: u64, mut e: u32, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// (e) `Q(0,Y,Z) = f(Y)` in the permutation table, `Y^m + b(Z)` or
/// `(Y + b(Z))^m` with `gcd(m, q-1) = 1`: every root contributes one `β`.
fn arm_permutation(c: &Ctx) -> Option<ClosedFormResult> {
    let q0 = c.sys.q0();
    if !q0.involves('Z') {
        let f = q0.to_uni(c.f, 'Y').ok()?;
        if let Some(row) = permutation_row(c.f, &f) {
            return Some(ClosedFormResult::new(
                ClosedFamily::Permutation,
                c.r,
                &[("row", row as i64), ("r", c.r as i64)],
            ));
        }
    }
    let (m, lead) = c.top()?;
    if m == 0 || !Ctx::is_one(lead) || gcd(m as u64, c.q - 1) != 1 {
        return None;
    }
    let form = if binomial_y(c.sys).is_some() {
        1
    } else if shifted_base(c, m).is_some() {
        2
    } else {
        return None;
    };
    Some(ClosedFormResult::new(
        ClosedFamily::ShiftedPower,
        c.r,
        &[("m", m as i64), ("form", form), ("r", c.r as i64)],
    ))
}

/// Recovers `b(Z)` with `Q(0,Y,Z) = (Y + b(Z))^m` and verifies the expansion.
///
/// With `m = p^k m'`, `p ∤ m'`, the coefficient of `Y^{p^k (m'-1)}` is
/// `m' b^{p^k}`; `b` follows by a `p^k`-th root of each term.
fn shifted_base(c: &Ctx, m: u32) -> Option<MultiPoly> {
    let f = c.f;
    let p = f.p();
    let (mut pk, mut mp) = (1u32, m);
    while mp % p == 0 {
        mp /= p;
        pk *= p;
    }
    let coeff = c
        .ycoeffs
        .get(&(pk * (mp - 1)))
        .cloned()
        .unwrap_or_else(|| MultiPoly::zero(&['Z']));
    let bpk = if mp == 1 {
        coeff
    } else {
        coeff.scale(f, f.inv(f.from_int(mp as i64))?)
    };
    let mut terms = Vec::new();
    for (e, a) in bpk.terms() {
        if e[0] % pk != 0 {
            return None;
        }
        terms.push((vec![e[0] / pk], frobenius_root(f, a, pk)));
    }
    let b = MultiPoly::from_terms(f, &['Z'], terms)
        .with_vars(&['Y', 'Z'])
        .ok()?;
    let y = MultiPoly::variable(&['Y', 'Z'], 'Y')?;
    (y.add(f, &b).pow(f, m) == *c.sys.q0()).then_some(b)
}

/// The unique `x` with `x^{pk} = a`, `pk` a power of the characteristic.
fn frobenius_root(f: &FiniteField, a: FieldElement, pk: u32) -> FieldElement {
    let (p, r) = (f.p(), f.r());
    let mut x = a;
    let mut k = pk;
    while k > 1 {
        // x ↦ x^{q/p} inverts x ↦ x^p.
        x = f.pow(x, (p as u64).pow(r - 1));
        k /= p;
    }
    x
}

/// (f) `q = p` odd and `Q(0,Y,Z) = Y^2 + b(Z)Y + c(Z)`: `r + η(-1) Σ_γ η(D(γ))`
/// with `D = c - b^2/4`. A perfect square `(Y + b(Z)/2)^2` gives `r` for any
/// odd `q`.
fn arm_quadratic(c: &Ctx) -> Option<ClosedFormResult> {
    let f = c.f;
    if f.p() == 2 {
        return None;
    }
    let (m, lead) = c.top()?;
    if m != 2 || !Ctx::is_one(lead) {
        return None;
    }
    let zero = MultiPoly::zero(&['Z']);
    let b = c.ycoeffs.get(&1).unwrap_or(&zero);
    let cc = c.ycoeffs.get(&0).unwrap_or(&zero);
    let four = f.from_int(4);
    let disc = b.mul(f, b).sub(f, &cc.scale(f, four));
    if disc.is_zero() {
        return Some(ClosedFormResult::new(
            ClosedFamily::QuadraticY,
            c.r,
            &[("perfect_square", 1), ("r", c.r as i64)],
        ));
    }
    if f.r() != 1 {
        return None;
    }
    let inv4 = f.inv(four)?;
    let eta_m1 = quadratic_character(f, f.neg(f.one())).ok()? as i64;
    let mut eta_sum = 0i64;
    for &g in c.sys.roots() {
        let (bv, cv) = (c.ez(b, g), c.ez(cc, g));
        let d = f.sub(cv, f.mul(f.mul(bv, bv), inv4));
        eta_sum += quadratic_character(f, d).ok()? as i64;
    }
    let value = c.r as i64 + eta_m1 * eta_sum;
    Some(ClosedFormResult::new(
        ClosedFamily::QuadraticY,
        u64::try_from(value).ok()?,
        &[
            ("perfect_square", 0),
            ("r", c.r as i64),
            ("eta_minus_one", eta_m1),
            ("eta_sum", eta_sum),
        ],
    ))
}

/// (g) `P(0,Z)` of degree `q - 2` and `Q(0,Y,Z) = f(Y)` of degree `q - 2`:
/// `(q-1-ρ_P+δ_P)(q-1-ρ_Q+δ_Q)`.
fn arm_degree_q_minus_2(c: &Ctx, caps: &Caps) -> Option<ClosedFormResult> {
    if c.q <= 2 || c.q > caps.circulant_max_q as u64 {
        return None;
    }
    let target = c.q as usize - 2;
    let q0 = c.sys.q0();
    if q0.involves('Z') || c.sys.p0_dense().degree() != Some(target) {
        return None;
    }
    let qy = q0.to_uni(c.f, 'Y').ok()?;
    if qy.degree() != Some(target) {
        return None;
    }
    let sp = CirculantSummary::of(c.f, c.sys.p0_dense()).ok()?;
    let sq = CirculantSummary::of(c.f, &qy).ok()?;
    Some(ClosedFormResult::new(
        ClosedFamily::DegreeQMinus2Product,
        (sp.all_roots() * sq.all_roots()) as u64,
        &[
            ("rho_p", sp.rank as i64),
            ("delta_p", sp.delta as i64),
            ("rho_q", sq.rank as i64),
            ("delta_q", sq.delta as i64),
        ],
    ))
}
