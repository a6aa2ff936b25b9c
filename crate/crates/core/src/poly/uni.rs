use std::fmt;

use crate::field::{FieldElement, FiniteField};
use crate::linalg;

use super::PolyError;

/// Largest field order for which `U^q - U` is materialized densely.
pub const FIELD_POLY_MAX_Q: u32 = 1 << 16;

/// Dense univariate polynomial over a finite field.
///
/// `coeffs[i]` is the coefficient of `var^i`. Canonical: empty for the zero
/// polynomial, otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: char,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(var: char, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: char) -> Self {
        UniPoly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(var: char, c: FieldElement) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(var: char, c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(var, coeffs)
    }

    /// `var - a`.
    pub fn linear(field: &FiniteField, var: char, a: FieldElement) -> Self {
        Self::new(var, vec![field.neg(a), field.one()])
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `var^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElement::ONE)
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &FiniteField, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                field.add(field.mul(acc, x), c)
            })
    }

    pub fn add(&self, field: &FiniteField, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn neg(&self, field: &FiniteField) -> UniPoly {
        UniPoly::new(
            self.var,
            self.coeffs.iter().map(|&c| field.neg(c)).collect(),
        )
    }

    pub fn sub(&self, field: &FiniteField, other: &UniPoly) -> UniPoly {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &FiniteField, c: FieldElement) -> UniPoly {
        UniPoly::new(
            self.var,
            self.coeffs.iter().map(|&a| field.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, field: &FiniteField, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::new(self.var, out)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, field: &FiniteField, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dd = divisor.degree()?;
        let lead_inv = field.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::zero(self.var), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = field.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = field.sub(rem[idx], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        Some((UniPoly::new(self.var, quot), UniPoly::new(self.var, rem)))
    }

    pub fn rem(&self, field: &FiniteField, divisor: &UniPoly) -> Option<UniPoly> {
        self.div_rem(field, divisor).map(|(_, r)| r)
    }

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self, field: &FiniteField) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(field, field.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, field: &FiniteField, mut e: u64, modulus: &UniPoly) -> Option<UniPoly> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = UniPoly::constant(self.var, field.one()).rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus)?;
            }
            base = base.mul(field, &base).rem(field, modulus)?;
            e >>= 1;
        }
        Some(acc)
    }

    /// Divides by `var` when the constant term vanishes.
    pub fn shift_down(&self) -> Option<UniPoly> {
        if self.coeff(0).is_zero() {
            Some(UniPoly::new(
                self.var,
                self.coeffs.iter().skip(1).copied().collect(),
            ))
        } else {
            None
        }
    }

    /// Renders in the input grammar, highest power first.
    pub fn format(&self, field: &FiniteField) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let exps = [i as u32];
                super::format_term(field, c, &[self.var], &exps)
            });
        super::join_terms(terms)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.coeffs.iter().map(|c| c.index().to_string()).collect();
        write!(f, "{}[{}]", self.var, idx.join(","))
    }
}

/// Monic gcd by Euclid's algorithm: `gcd(0, b) = monic(b)`, `gcd(0, 0) = 0`.
pub fn gcd_uni(field: &FiniteField, a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(field, &b).expect("divisor is nonzero");
        a = b;
        b = r;
    }
    a.monic(field)
}

/// `U^q - U` in the given variable.
pub fn field_poly(field: &FiniteField, var: char) -> Result<UniPoly, PolyError> {
    let q = field.q();
    if q > FIELD_POLY_MAX_Q {
        return Err(PolyError::SizeCapExceeded {
            degree: q as u64,
            cap: FIELD_POLY_MAX_Q as u64,
        });
    }
    let mut coeffs = vec![FieldElement::ZERO; q as usize + 1];
    coeffs[q as usize] = field.one();
    coeffs[1] = field.sub(coeffs[1], field.one());
    Ok(UniPoly::new(var, coeffs))
}

/// Number of distinct roots in `F_q`, computed as `deg gcd(f, U^q - U)` with
/// `U^q` reduced modulo `f` first. The zero polynomial has `q` roots.
pub fn count_roots_gcd(field: &FiniteField, f: &UniPoly) -> usize {
    let Some(deg) = f.degree() else {
        return field.q() as usize;
    };
    if deg == 0 {
        return 0;
    }
    let u = UniPoly::monomial(f.var(), field.one(), 1);
    let uq = u.pow_mod(field, field.q() as u64, f).expect("f is nonzero");
    let g = gcd_uni(field, f, &uq.sub(field, &u));
    g.degree().expect("gcd with nonzero f is nonzero")
}

/// The representative of `f` modulo `U^q - U` of degree at most `q - 1`,
/// obtained by folding `U^{q+k}` onto `U^{1+k}`.
pub fn reduce_mod_field_relation(field: &FiniteField, f: &UniPoly) -> UniPoly {
    let q = field.q() as usize;
    if f.coeffs.len() <= q {
        return f.clone();
    }
    let mut coeffs = f.coeffs.clone();
    for k in (q..coeffs.len()).rev() {
        let c = coeffs[k];
        if c.is_zero() {
            continue;
        }
        coeffs[k] = FieldElement::ZERO;
        let target = k - (q - 1);
        coeffs[target] = field.add(coeffs[target], c);
    }
    coeffs.truncate(q);
    UniPoly::new(f.var, coeffs)
}

/// Exhaustive root scan; the zero polynomial vanishes on all of `F_q`.
pub fn roots_in_field(field: &FiniteField, f: &UniPoly) -> Vec<FieldElement> {
    field
        .elements()
        .filter(|&x| f.eval(field, x).is_zero())
        .collect()
}

/// Resultant as the determinant of the `(l+m) x (l+m)` Sylvester matrix.
pub fn resultant(field: &FiniteField, a: &UniPoly, b: &UniPoly) -> Result<FieldElement, PolyError> {
    match (a.degree(), b.degree()) {
        (Some(l), Some(m)) if l > 0 && m > 0 => {
            Ok(linalg::determinant(field, sylvester_matrix(a, b)))
        }
        _ => Err(PolyError::DegenerateDegree),
    }
}

/// Sylvester matrix of `a` (degree l) and `b` (degree m): `m` shifted rows of
/// `a`'s coefficients followed by `l` shifted rows of `b`'s, highest power first.
pub fn sylvester_matrix(a: &UniPoly, b: &UniPoly) -> Vec<Vec<FieldElement>> {
    let l = a.degree().unwrap_or(0);
    let m = b.degree().unwrap_or(0);
    let n = l + m;
    let mut rows = Vec::with_capacity(n);
    for (poly, count, deg) in [(a, m, l), (b, l, m)] {
        for shift in 0..count {
            let mut row = vec![FieldElement::ZERO; n];
            for i in 0..=deg {
                row[shift + i] = poly.coeff(deg - i);
            }
            rows.push(row);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    fn up(field: &FiniteField, c: &[i64]) -> UniPoly {
        UniPoly::new('Z', c.iter().map(|&x| field.from_int(x)).collect())
    }

    #[test]
    fn canonical_trimming() {
        let f5 = f(5);
        let a = up(&f5, &[1, 0, 5, 0]);
        assert_eq!(a.degree(), Some(0));
        assert!(up(&f5, &[0, 0]).is_zero());
    }

    #[test]
    fn gcd_examples() {
        let f5 = f(5);
        let a = up(&f5, &[1, 0, 1]);
        let g = gcd_uni(&f5, &a, &field_poly(&f5, 'Z').unwrap());
        assert_eq!(g, a);
        // Root scan oracle for the same fact.
        let roots: Vec<u32> = roots_in_field(&f5, &a).iter().map(|r| r.index()).collect();
        assert_eq!(roots, vec![2, 3]);

        let f3 = f(3);
        let a = up(&f3, &[1, 0, 1]);
        assert!(roots_in_field(&f3, &a).is_empty());
        let g = gcd_uni(&f3, &a, &field_poly(&f3, 'Z').unwrap());
        assert_eq!(g, up(&f3, &[1]));

        let b = up(&f5, &[2, 4]);
        assert_eq!(gcd_uni(&f5, &b, &UniPoly::zero('Z')), b.monic(&f5));
        assert_eq!(gcd_uni(&f5, &UniPoly::zero('Z'), &b), b.monic(&f5));
        assert!(gcd_uni(&f5, &UniPoly::zero('Z'), &UniPoly::zero('Z')).is_zero());
    }

    #[test]
    fn field_poly_examples() {
        let f2 = f(2);
        assert_eq!(field_poly(&f2, 'Z').unwrap(), up(&f2, &[0, 1, 1]));
        let f5 = f(5);
        assert_eq!(
            field_poly(&f5, 'Y').unwrap().coeffs(),
            up(&f5, &[0, 4, 0, 0, 0, 1]).coeffs()
        );
        let f4 = FiniteField::new(2, 2).unwrap();
        let fp = field_poly(&f4, 'Z').unwrap();
        assert_eq!(fp.degree(), Some(4));
        assert_eq!(fp.coeff(1), f4.neg(f4.one()));
    }

    #[test]
    fn resultant_examples() {
        let f5 = f(5);
        let a = UniPoly::new('Y', up(&f5, &[1, 0, 1]).coeffs().to_vec());
        let fp = field_poly(&f5, 'Y').unwrap();
        assert_eq!(resultant(&f5, &a, &fp).unwrap(), f5.zero());

        let f2 = f(2);
        let a = up(&f2, &[1, 1, 1]);
        let b = up(&f2, &[0, 1, 1]);
        assert_eq!(resultant(&f2, &a, &b).unwrap(), f2.one());

        // Linear case against the 2x2 Sylvester determinant ad - bc.
        let f7 = f(7);
        let (ca, cb, cc, cd) = (3, 5, 2, 6);
        let a = up(&f7, &[cb, ca]);
        let b = up(&f7, &[cd, cc]);
        assert_eq!(
            resultant(&f7, &a, &b).unwrap(),
            f7.from_int(ca * cd - cb * cc)
        );

        assert_eq!(
            resultant(&f7, &up(&f7, &[3]), &b),
            Err(PolyError::DegenerateDegree)
        );
    }

    #[test]
    fn reduction_examples() {
        let f5 = f(5);
        let z8 = up(&f5, &[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let r = reduce_mod_field_relation(&f5, &z8);
        assert_eq!(r, up(&f5, &[-1, 0, 0, 0, 1]));
        for x in f5.elements() {
            assert_eq!(r.eval(&f5, x), z8.eval(&f5, x));
        }
        let low = up(&f5, &[1, 2, 3]);
        assert_eq!(reduce_mod_field_relation(&f5, &low), low);
        let zq = up(&f5, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(reduce_mod_field_relation(&f5, &zq), up(&f5, &[0, 1]));
    }

    #[test]
    fn root_scan_examples() {
        let f17 = f(17);
        let z8 = up(&f17, &[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let roots: Vec<u32> = roots_in_field(&f17, &z8)
            .iter()
            .map(|r| r.index())
            .collect();
        assert_eq!(roots, vec![1, 2, 4, 8, 9, 13, 15, 16]);
        let f7 = f(7);
        assert_eq!(roots_in_field(&f7, &up(&f7, &[0, 1])), vec![f7.zero()]);
        let f2 = f(2);
        assert!(roots_in_field(&f2, &up(&f2, &[1, 1, 1])).is_empty());
        assert_eq!(roots_in_field(&f2, &UniPoly::zero('Z')).len(), 2);
    }

    #[test]
    fn count_roots_gcd_matches_scan_for_all_cubics_f4() {
        let f4 = FiniteField::new(2, 2).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                for c in f4.elements() {
                    let p = UniPoly::new('Z', vec![a, b, c, f4.one()]);
                    assert_eq!(count_roots_gcd(&f4, &p), roots_in_field(&f4, &p).len());
                }
            }
        }
    }
}
