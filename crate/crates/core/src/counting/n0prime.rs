//! `N_0'` by every route: brute force, rootwise gcd, resultants, additive and
//! double additive character sums, König–Rados ranks and multiplicative
//! characters for `Y^m - b(Z)`.

use num_bigint::BigInt;

use crate::arith::gcd;
use crate::characters::{char_sum_over_set, AdditiveChar, Character, CyclotomicInt};
use crate::circulant::CirculantSummary;
use crate::field::FieldElement;
use crate::poly::{
    count_roots_gcd, field_poly, reduce_mod_field_relation, resultant, roots_in_field, UniPoly,
};

use super::{CountError, ReducedSystem};

/// Exhaustive double loop over `(β, γ) ∈ F_q^2`.
pub fn n0prime_oracle(sys: &ReducedSystem) -> u64 {
    let f = sys.field();
    let mut n = 0;
    for gamma in f.elements() {
        if !sys.p0().eval(f, &[gamma]).is_zero() {
            continue;
        }
        n += f
            .elements()
            .filter(|&beta| sys.q_value(beta, gamma).is_zero())
            .count() as u64;
    }
    n
}

/// `Σ_γ deg gcd(Q(0,Y,γ), Y^q - Y)` over the roots of `P(0,Z)`.
pub fn n0prime_rootwise(sys: &ReducedSystem) -> Result<u64, CountError> {
    let f = sys.field();
    let mut n = 0;
    for &gamma in sys.checked_roots("gcd")? {
        n += count_roots_gcd(f, &sys.q_at(gamma)?) as u64;
    }
    Ok(n)
}

/// Keeps the roots `γ` where `Res_Y(Q(0,Y,γ), Y^q - Y)` vanishes and sums the
/// sizes of their fibres. A vanishing `Q(0,Y,γ)` contributes all of `F_q`, a
/// nonzero constant nothing.
pub fn n0prime_resultant(sys: &ReducedSystem) -> Result<u64, CountError> {
    let f = sys.field();
    if sys.q0().degree_in('Y').unwrap_or(0) == 0 {
        return Err(crate::poly::PolyError::DegenerateDegree.into());
    }
    let fp = field_poly(f, 'Y')?;
    let mut n = 0;
    for &gamma in sys.roots() {
        let g = sys.q_at(gamma)?;
        match g.degree() {
            None => n += f.q() as u64,
            Some(0) => {}
            Some(_) => {
                if resultant(f, &g, &fp)?.is_zero() {
                    n += roots_in_field(f, &g).len() as u64;
                }
            }
        }
    }
    Ok(n)
}

/// `r + (1/q) Σ_γ Σ_{s≠0} Σ_β χ_1(s Q(0,β,γ))`, exact in `Z[ζ_p]`.
pub fn n0prime_additive_master(sys: &ReducedSystem) -> Result<u64, CountError> {
    const METHOD: &str = "charsum";
    let f = sys.field();
    let q = f.q() as u64;
    let chi = AdditiveChar::canonical(f);
    let mut values = Vec::new();
    for &gamma in sys.roots() {
        let g = sys.q_at(gamma)?;
        let qv: Vec<FieldElement> = f.elements().map(|beta| g.eval(f, beta)).collect();
        for s in f.nonzero_elements() {
            values.extend(qv.iter().map(|&v| f.mul(s, v)));
        }
    }
    let sum = char_sum_over_set(&chi, values);
    let scaled = CyclotomicInt::from_int(chi.conductor(), sys.r() * q).add(&sum);
    exact_quotient(&scaled, q, METHOD)
}

/// `q^2 N_0' = q^2 + q ΣS_P + ΣS_Q + ΣS_{P,Q}` over nontrivial additive
/// character pairs, with `S_P(χ) = Σ_γ χ(P(0,γ))`,
/// `S_Q(φ) = Σ_{β,γ} φ(Q(0,β,γ))` and `S_{P,Q}(χ,φ) = Σ_{β,γ} χ(P(0,γ)) φ(Q(0,β,γ))`.
pub fn n0prime_double_char(sys: &ReducedSystem) -> Result<u64, CountError> {
    const METHOD: &str = "doublechar";
    let f = sys.field();
    let q = f.q() as u64;
    let p = f.p() as usize;
    let pv: Vec<FieldElement> = f.elements().map(|g| sys.p0_dense().eval(f, g)).collect();

    // Per γ: A_γ[k] = #{a ≠ 0 : Tr(a P(γ)) = k}, B_γ[k] = #{(b ≠ 0, β) : Tr(b Q(β,γ)) = k}.
    let mut sum_p = vec![0i64; p];
    let mut sum_q = vec![0i64; p];
    let mut sum_pq = vec![0i64; p];
    for (gi, gamma) in f.elements().enumerate() {
        let mut a_g = vec![0i64; p];
        for a in f.nonzero_elements() {
            a_g[f.trace(f.mul(a, pv[gi])) as usize] += 1;
        }
        let g = sys.q_at(gamma)?;
        let mut b_g = vec![0i64; p];
        for beta in f.elements() {
            let v = g.eval(f, beta);
            for b in f.nonzero_elements() {
                b_g[f.trace(f.mul(b, v)) as usize] += 1;
            }
        }
        for k in 0..p {
            sum_p[k] += a_g[k];
            sum_q[k] += b_g[k];
            for l in 0..p {
                sum_pq[(k + l) % p] += a_g[k] * b_g[l];
            }
        }
    }
    let n = p as u64;
    let sp = CyclotomicInt::from_buckets(n, &sum_p);
    let sq = CyclotomicInt::from_buckets(n, &sum_q);
    let spq = CyclotomicInt::from_buckets(n, &sum_pq);
    let total = CyclotomicInt::from_int(n, q * q)
        .add(&sp.scale(&BigInt::from(q)))
        .add(&sq)
        .add(&spq);
    exact_quotient(&total, q * q, METHOD)
}

fn exact_quotient(x: &CyclotomicInt, d: u64, method: &'static str) -> Result<u64, CountError> {
    let v = x
        .to_integer()
        .ok_or(CountError::NonIntegerResult { method })?;
    let d = BigInt::from(d);
    if &v % &d != BigInt::from(0) {
        return Err(CountError::NonIntegerResult { method });
    }
    u64::try_from(v / d).map_err(|_| CountError::NonIntegerResult { method })
}

/// `r(q-1) - Σ_j ρ_{γ_j} + t`, where `ρ_γ` is the circulant rank of
/// `Q(0,Y,γ) mod (Y^q - Y)` with `Y` divided out when its constant term
/// vanishes (`t` counts those roots) and the top coefficient folded into the
/// constant term otherwise.
pub fn n0prime_konig_rados(sys: &ReducedSystem) -> Result<u64, CountError> {
    let f = sys.field();
    if f.q() <= 2 {
        return Err(crate::circulant::CirculantError::FieldTooSmall.into());
    }
    let q1 = f.q() as u64 - 1;
    let mut rank_sum = 0u64;
    let mut t = 0u64;
    for &gamma in sys.roots() {
        let r = reduce_mod_field_relation(f, &sys.q_at(gamma)?);
        let s = if r.coeff(0).is_zero() {
            t += 1;
            r.shift_down().expect("constant term vanishes")
        } else {
            let mut c: Vec<FieldElement> = (0..q1 as usize).map(|i| r.coeff(i)).collect();
            c[0] = f.add(c[0], r.coeff(q1 as usize));
            UniPoly::new(r.var(), c)
        };
        rank_sum += CirculantSummary::of(f, &s)?.rank as u64;
    }
    Ok(sys.r() * q1 - rank_sum + t)
}

/// For `Q(0,Y,Z) = Y^m - b(Z)`: `r + Σ_{ψ^d = ψ_0, ψ ≠ ψ_0} Σ_γ ψ(b(γ))` with
/// `d = gcd(m, q-1)`, evaluated in `Z[ζ_d]`.
pub fn n0prime_multchar_binomial(sys: &ReducedSystem) -> Result<u64, CountError> {
    const METHOD: &str = "multchar";
    let f = sys.field();
    let (m, b) = super::closed_form::binomial_y(sys).ok_or(CountError::NotApplicable {
        method: METHOD,
        reason: "Q(0,Y,Z) is not of the form Y^m - b(Z)".to_string(),
    })?;
    let q1 = f.q() as u64 - 1;
    let d = gcd(m as u64, q1);
    // ψ_{i(q-1)/d}(g^k) = ζ_d^{ik} for i = 1..d-1.
    let mut buckets = vec![0i64; d as usize];
    for &gamma in sys.roots() {
        let v = b.eval(f, &[gamma]);
        if v.is_zero() {
            continue;
        }
        let k = f.discrete_log(v).expect("nonzero") as u64;
        for i in 1..d {
            buckets[(i * k % d) as usize] += 1;
        }
    }
    let sum = CyclotomicInt::from_buckets(d, &buckets).add(&CyclotomicInt::from_int(d, sys.r()));
    exact_quotient(&sum, 1, METHOD)
}
