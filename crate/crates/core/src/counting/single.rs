//! `N_0`, the number of roots of `P(0,Z)` in `F_q`.

use crate::arith::gcd;
use crate::characters::{char_sum_over_set, quadratic_character, AdditiveChar};
use crate::circulant::{kr_count_all_roots, CirculantSummary};
use crate::field::FiniteField;
use crate::poly::{count_roots_gcd, roots_in_field, MultiPoly, UniPoly};

use super::closed_form::{ClosedFamily, ClosedFormResult};
use super::CountError;

/// Exhaustive root scan.
pub fn n0_oracle(field: &FiniteField, p: &UniPoly) -> u64 {
    roots_in_field(field, p).len() as u64
}

/// `deg gcd(P, Z^q - Z)`.
pub fn n0_gcd(field: &FiniteField, p: &UniPoly) -> u64 {
    count_roots_gcd(field, p) as u64
}

/// `(1/q) Σ_a Σ_γ χ_1(a P(γ))`, exact in `Z[ζ_p]`.
pub fn n0_charsum(field: &FiniteField, p: &UniPoly) -> Result<u64, CountError> {
    const METHOD: &str = "charsum";
    let chi = AdditiveChar::canonical(field);
    let values: Vec<_> = field.elements().map(|g| p.eval(field, g)).collect();
    let sum = char_sum_over_set(
        &chi,
        field
            .elements()
            .flat_map(|a| values.iter().map(move |&v| field.mul(a, v))),
    );
    let total = sum
        .to_integer()
        .ok_or(CountError::NonIntegerResult { method: METHOD })?;
    let q = num_bigint::BigInt::from(field.q());
    if &total % &q != num_bigint::BigInt::from(0) {
        return Err(CountError::NonIntegerResult { method: METHOD });
    }
    u64::try_from(total / q).map_err(|_| CountError::NonIntegerResult { method: METHOD })
}

/// `q - 1 - ρ + δ` after reduction modulo `Z^q - Z`; for `deg P <= q - 2` the
/// unreduced circulant form is checked against it.
pub fn n0_konig_rados(field: &FiniteField, p: &UniPoly) -> Result<u64, CountError> {
    let n = kr_count_all_roots(field, p)? as u64;
    if p.degree().is_some_and(|d| d + 2 <= field.q() as usize) {
        let direct = CirculantSummary::of(field, p)?.all_roots() as u64;
        if direct != n {
            return Err(CountError::Inconsistent {
                method: "kr",
                detail: format!("reduced form gives {n}, circulant of P gives {direct}"),
            });
        }
    }
    Ok(n)
}

/// Closed forms for `P(Z)`: a monomial, a two-term binomial `aZ^m - bZ^n`
/// with `m <= q - 1`, and a quadratic over a prime field.
pub fn single_closed_forms(field: &FiniteField, p0: &MultiPoly) -> Vec<ClosedFormResult> {
    let mut out = Vec::new();
    let Ok(p) = p0.with_vars(&['Z']) else {
        return out;
    };
    let q = field.q() as u64;
    let terms: Vec<(u32, _)> = p.terms().map(|(e, c)| (e[0], c)).collect();

    if let [(s, _)] = terms.as_slice() {
        if *s >= 2 {
            out.push(ClosedFormResult::new(
                ClosedFamily::Homogeneous,
                1,
                &[("s", *s as i64)],
            ));
        }
    }

    let two_term = match terms.as_slice() {
        [(n, c), (m, a)] => Some((*m, *a, *n, field.neg(*c))),
        [(m, a)] if *m >= 1 => Some((*m, *a, 0, field.zero())),
        _ => None,
    };
    if let Some((m, a, n, b)) = two_term.filter(|t| (t.0 as u64) < q) {
        let d = gcd(if n > 0 { (m - n) as u64 } else { m as u64 }, q - 1);
        let solvable = !a.is_zero()
            && !b.is_zero()
            && field.pow(field.div(b, a).expect("a nonzero"), (q - 1) / d) == field.one();
        let value = match (n > 0, solvable) {
            (true, true) => 1 + d,
            (true, false) => 1,
            (false, true) => d,
            (false, false) => u64::from(b.is_zero()),
        };
        out.push(ClosedFormResult::new(
            ClosedFamily::BinomialTwoTerm,
            value,
            &[("m", m as i64), ("n", n as i64), ("d", d as i64)],
        ));
    }

    if field.r() == 1 && field.p() != 2 && p.degree_in('Z') == Some(2) {
        let c = |k: u32| {
            p.terms()
                .find(|(e, _)| e[0] == k)
                .map_or(field.zero(), |(_, c)| c)
        };
        let (a, b, c0) = (c(2), c(1), c(0));
        let disc = field.sub(
            field.mul(b, b),
            field.mul(field.from_int(4), field.mul(a, c0)),
        );
        let eta = quadratic_character(field, disc).expect("odd characteristic") as i64;
        out.push(ClosedFormResult::new(
            ClosedFamily::QuadraticY,
            (1 + eta) as u64,
            &[("eta_discriminant", eta)],
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn uni(f: &FiniteField, s: &str) -> UniPoly {
        parse_poly(s, f, &['Z']).unwrap().to_uni(f, 'Z').unwrap()
    }

    #[test]
    fn all_routes_agree_on_examples() {
        for (p, r, text, n) in [
            (7, 1, "Z^2", 1),
            (3, 1, "Z^2 + 1", 0),
            (5, 1, "Z^2 + 1", 2),
            (17, 1, "Z^8 - 1", 8),
            (2, 2, "Z^4 - Z", 4),
            (3, 2, "Z^3 - t", 1),
        ] {
            let f = FiniteField::new(p, r).unwrap();
            let u = uni(&f, text);
            assert_eq!(n0_oracle(&f, &u), n, "{text}");
            assert_eq!(n0_gcd(&f, &u), n);
            assert_eq!(n0_charsum(&f, &u), Ok(n));
            assert_eq!(n0_konig_rados(&f, &u), Ok(n));
        }
    }

    #[test]
    fn closed_forms_match_scan() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = FiniteField::new(p, 1).unwrap();
            for text in [
                "Z^2",
                "Z^3 - 2",
                "Z^4 - 3*Z",
                "Z^2 + 2*Z + 4",
                "Z^3 - Z",
                "Z^2 + 1",
                "Z^6 - 4*Z^2",
            ] {
                let mp = parse_poly(text, &f, &['Z']).unwrap();
                let u = mp.to_uni(&f, 'Z').unwrap();
                let forms = single_closed_forms(&f, &mp);
                for cf in forms {
                    assert_eq!(cf.value, n0_oracle(&f, &u), "{text} over F{p}: {cf:?}");
                }
            }
        }
    }
}
