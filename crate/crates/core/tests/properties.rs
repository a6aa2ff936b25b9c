mod common;

use common::{brute_n0prime, brute_roots, brute_single_points, eval_at, field};
use dancount::bounds::compute_bounds;
use dancount::circulant::{build_left_circulant, kr_count_all_roots, rank_over_field};
use dancount::counting::{
    count_single_surface, enumerate_double, n0prime_additive_master, n0prime_double_char,
    n0prime_konig_rados, n0prime_oracle, n0prime_resultant, n0prime_rootwise, Caps, Method,
    ReducedSystem,
};
use dancount::field::{FieldElement, FiniteField};
use dancount::poly::{
    field_poly, gcd_uni, reduce_mod_field_relation, resultant, roots_in_field, MultiPoly, UniPoly,
};
use dancount::random::InstanceGenerator;
use proptest::prelude::*;

const SMALL: [u64; 11] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 32];
const METHOD_QS: [u64; 8] = [3, 4, 5, 7, 8, 9, 11, 13];

fn uni(f: &FiniteField, raw: &[u32]) -> UniPoly {
    UniPoly::new(
        'Z',
        raw.iter().map(|&c| f.element(c % f.q()).unwrap()).collect(),
    )
}

fn uni_eval(f: &FiniteField, u: &UniPoly, x: FieldElement) -> FieldElement {
    u.coeffs()
        .iter()
        .rev()
        .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
}

fn as_multi(f: &FiniteField, u: &UniPoly) -> MultiPoly {
    let terms = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| (vec![i as u32], c));
    MultiPoly::from_terms(f, &['Z'], terms)
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_count_is_gcd_degree(qi in 0usize..SMALL.len(), raw in coeffs(40)) {
        let f = field(SMALL[qi]);
        let p = uni(&f, &raw);
        prop_assume!(!p.is_zero());
        let g = gcd_uni(&f, &p, &field_poly(&f, 'Z').unwrap());
        let brute = brute_roots(&f, &as_multi(&f, &p)).len();
        prop_assert_eq!(roots_in_field(&f, &p).len(), brute);
        prop_assert_eq!(g.degree().unwrap_or(0), brute);
    }

    #[test]
    fn reduction_agrees_pointwise(qi in 0usize..SMALL.len(), raw in coeffs(80)) {
        let f = field(SMALL[qi]);
        let p = uni(&f, &raw);
        let r = reduce_mod_field_relation(&f, &p);
        prop_assert!(r.degree().is_none_or(|d| d < f.q() as usize));
        for x in f.elements() {
            prop_assert_eq!(uni_eval(&f, &p, x), uni_eval(&f, &r, x));
        }
    }

    #[test]
    fn resultant_with_field_polynomial(qi in 0usize..9, raw in coeffs(8)) {
        let f = field(SMALL[qi]);
        let monic = raw.iter().map(|&c| f.element(c % f.q()).unwrap()).chain([f.one()]);
        let p = UniPoly::new('Z', monic.collect());
        let res = resultant(&f, &p, &field_poly(&f, 'Z').unwrap()).unwrap();
        let product = f.elements().fold(f.one(), |acc, b| f.mul(acc, uni_eval(&f, &p, b)));
        let l = p.degree().unwrap() as u64;
        let sign = if (l * f.q() as u64) % 2 == 1 { f.neg(f.one()) } else { f.one() };
        prop_assert_eq!(res, f.mul(sign, product));
        let has_root = f.elements().any(|b| uni_eval(&f, &p, b).is_zero());
        prop_assert_eq!(res.is_zero(), has_root);
    }

    #[test]
    fn konig_rados_counts_roots(q in 3u64..=32, raw in coeffs(60)) {
        prop_assume!(common::prime_powers(q, q).len() == 1);
        let f = field(q);
        let p = uni(&f, &raw);
        prop_assume!(!p.is_zero());
        let brute = brute_roots(&f, &as_multi(&f, &p)).len();
        prop_assert_eq!(kr_count_all_roots(&f, &p).unwrap(), brute);
    }

    #[test]
    fn circulant_rank_is_rotation_invariant(qi in 1usize..9, raw in coeffs(31), k in 0usize..31) {
        let f = field(SMALL[qi]);
        let n = f.q() as usize - 1;
        let row: Vec<FieldElement> = (0..n).map(|i| f.element(raw[i % raw.len()] % f.q()).unwrap()).collect();
        let mut rotated = row.clone();
        rotated.rotate_left(k % n);
        let a = rank_over_field(&f, build_left_circulant(&f, &row).unwrap());
        let b = rank_over_field(&f, build_left_circulant(&f, &rotated).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn methods_match_brute_force(qi in 0usize..METHOD_QS.len(), seed in any::<u64>()) {
        let f = field(METHOD_QS[qi]);
        let spec = InstanceGenerator::new(&f, seed).double();
        let sys = ReducedSystem::from_spec(&f, &spec).unwrap();
        let n = brute_n0prime(&f, &spec);
        prop_assert_eq!(n0prime_oracle(&sys), n);
        prop_assert_eq!(n0prime_rootwise(&sys).unwrap(), n);
        prop_assert_eq!(n0prime_resultant(&sys).unwrap(), n);
        prop_assert_eq!(n0prime_additive_master(&sys).unwrap(), n);
        prop_assert_eq!(n0prime_konig_rados(&sys).unwrap(), n);
        match n0prime_double_char(&sys) {
            Ok(v) => prop_assert_eq!(v, n),
            Err(e) => prop_assert!(e.is_skip(), "{e}"),
        }
    }

    #[test]
    fn bounds_contain_the_count(qi in 0usize..METHOD_QS.len(), seed in any::<u64>()) {
        let f = field(METHOD_QS[qi]);
        let spec = InstanceGenerator::new(&f, seed).double();
        let sys = ReducedSystem::from_spec(&f, &spec).unwrap();
        let n = brute_n0prime(&f, &spec);
        let b = compute_bounds(&sys);
        prop_assert!(b.contains(n), "{b:?} vs {n}");
        if let Some(dr) = b.dr.filter(|d| d.sharp) {
            prop_assert_eq!(n, dr.d * dr.r);
        }
    }

    #[test]
    fn decomposition_identity(qi in 0usize..6, seed in any::<u64>()) {
        let f = field([2, 3, 4, 5, 7, 9][qi]);
        let spec = InstanceGenerator::new(&f, seed).double();
        let q = f.q() as u64;
        let n = brute_n0prime(&f, &spec);
        let e = enumerate_double(&f, &spec);
        prop_assert_eq!(e.x_zero, q * n);
        prop_assert_eq!(e.x_nonzero, q * q - q);
    }

    #[test]
    fn single_surface_identity(qi in 0usize..7, seed in any::<u64>()) {
        let f = field([2, 3, 4, 5, 7, 8, 9][qi]);
        let spec = InstanceGenerator::new(&f, seed).single();
        let report = count_single_surface(&spec, &f, &Method::ALL, &Caps::default()).unwrap();
        let n = brute_roots(&f, &spec.p0(&f)).len() as u64;
        let q = f.q() as u64;
        prop_assert!(report.agreement);
        prop_assert_eq!(report.total_points, q * (q - 1 + n));
        prop_assert_eq!(brute_single_points(&f, &spec), report.total_points);
    }
}

#[test]
fn eval_oracle_sanity() {
    let f = field(7);
    let p = dancount::poly::parse_poly("Y^2 - Z + 3", &f, &['Y', 'Z']).unwrap();
    let v = eval_at(&f, &p, &[('Y', f.from_int(2)), ('Z', f.from_int(1))]);
    assert_eq!(v, f.from_int(6));
}
