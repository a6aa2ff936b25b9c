//! Oracles for the integration tests, written against the raw term lists so
//! they share no counting code with the library.

#![allow(dead_code)]

use dancount::field::{FieldElement, FiniteField};
use dancount::poly::{MultiPoly, SurfaceSpec};

/// Evaluates a sparse polynomial at a named point; unnamed variables are 0.
pub fn eval_at(f: &FiniteField, poly: &MultiPoly, point: &[(char, FieldElement)]) -> FieldElement {
    let mut acc = f.zero();
    for (exps, c) in poly.terms() {
        let mut term = c;
        for (v, &e) in poly.vars().iter().zip(exps) {
            let x = point
                .iter()
                .find(|(w, _)| w == v)
                .map_or(f.zero(), |&(_, x)| x);
            for _ in 0..e {
                term = f.mul(term, x);
            }
        }
        acc = f.add(acc, term);
    }
    acc
}

/// `#{(β, γ) : P(0,γ) = Q(0,β,γ) = 0}` by a double loop.
pub fn brute_n0prime(f: &FiniteField, spec: &SurfaceSpec) -> u64 {
    let q = spec.q().expect("double surface");
    let mut n = 0;
    for g in f.elements() {
        if !eval_at(f, spec.p(), &[('Z', g)]).is_zero() {
            continue;
        }
        for b in f.elements() {
            if eval_at(f, q, &[('Y', b), ('Z', g)]).is_zero() {
                n += 1;
            }
        }
    }
    n
}

/// Roots of `P(0,Z)` by scanning.
pub fn brute_roots(f: &FiniteField, p: &MultiPoly) -> Vec<FieldElement> {
    f.elements()
        .filter(|&g| eval_at(f, p, &[('Z', g)]).is_zero())
        .collect()
}

/// Points of `X^d Y = P(X,Z)` over `F_q^3`.
pub fn brute_single_points(f: &FiniteField, spec: &SurfaceSpec) -> u64 {
    let d = spec.d1();
    let mut n = 0;
    for x in f.elements() {
        let xd = (0..d).fold(f.one(), |a, _| f.mul(a, x));
        for z in f.elements() {
            let pz = eval_at(f, spec.p(), &[('X', x), ('Z', z)]);
            for y in f.elements() {
                if f.mul(xd, y) == pz {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Prime powers in `lo..=hi`.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&q| {
            let mut p = 2;
            while q % p != 0 {
                p += 1;
            }
            let mut m = q;
            while m % p == 0 {
                m /= p;
            }
            m == 1
        })
        .collect()
}

pub fn field(q: u64) -> FiniteField {
    FiniteField::from_order(q, 1 << 20).expect("prime power")
}
