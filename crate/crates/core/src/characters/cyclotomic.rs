use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, gcd, totient};

/// Largest conductor for which cyclotomic polynomials are built.
pub const MAX_CONDUCTOR: u64 = 1 << 20;

type PolyCache = RwLock<HashMap<u64, Arc<Vec<i64>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
///
/// Built by exact division of `x^n - 1` by `Φ_d` for every proper divisor `d`.
/// Results are memoized.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "conductor {n} out of range"
    );
    if let Some(p) = cache().read().expect("cache lock").get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div(&num, &cyclotomic_poly(d));
    }
    let poly = Arc::new(num);
    cache()
        .write()
        .expect("cache lock")
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

/// Quotient of integer polynomials; the divisor is monic and divides exactly.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dd] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k - dd + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    quot
}

/// Element of `Z[ζ_n]` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(n: u64) -> Self {
        CyclotomicInt {
            n,
            coeffs: vec![BigInt::zero(); totient(n) as usize],
        }
    }

    pub fn from_int(n: u64, k: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = k.into();
        out
    }

    pub fn one(n: u64) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u64, k: u64) -> Self {
        let mut buckets = vec![0i64; n as usize];
        buckets[(k % n) as usize] = 1;
        Self::from_buckets(n, &buckets)
    }

    /// `Σ counts[k] ζ_n^k` for a length-`n` count vector.
    pub fn from_buckets(n: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, n, "bucket vector length");
        Self::reduce(n, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces a coefficient vector of arbitrary length modulo `Φ_n`.
    fn reduce(n: u64, mut v: Vec<BigInt>) -> Self {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        for k in (deg..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            for (i, &a) in phi[..deg].iter().enumerate() {
                if a != 0 {
                    v[k - deg + i] -= &c * a;
                }
            }
        }
        v.resize(deg, BigInt::zero());
        CyclotomicInt { n, coeffs: v }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_rational_integer()
            .then(|| self.coeffs.first().cloned().unwrap_or_default())
    }

    /// Re-expresses in `Z[ζ_m]` via `ζ_n = ζ_m^{m/n}`; requires `n | m`.
    pub fn embed(&self, m: u64) -> Self {
        assert_eq!(m % self.n, 0, "conductor {} does not divide {m}", self.n);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Self::reduce(m, v)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n / gcd(self.n, other.n) * other.n;
        (self.embed(m), other.embed(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        if a.coeffs.is_empty() {
            return a;
        }
        let mut v = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Self::reduce(a.n, v)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division by a rational integer, if every coefficient is divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() || self.coeffs.iter().any(|c| !(c % k).is_zero()) {
            return None;
        }
        Some(CyclotomicInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        })
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut v = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        Self::reduce(self.n, v)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => format!("z{}^{k}", self.n),
                _ => format!("{mag}*z{}^{k}", self.n),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_poly(105).contains(&-2));
        for n in 1..60u64 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, totient(n));
        }
    }

    #[test]
    fn roots_of_unity_arithmetic() {
        let z = CyclotomicInt::zeta_pow(5, 1);
        let mut acc = CyclotomicInt::one(5);
        for _ in 0..5 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, CyclotomicInt::one(5));
        let sum = (0..5).fold(CyclotomicInt::zero(5), |s, k| {
            s.add(&CyclotomicInt::zeta_pow(5, k))
        });
        assert!(sum.is_zero());
        assert_eq!(
            CyclotomicInt::zeta_pow(2, 1).to_integer(),
            Some(BigInt::from(-1))
        );
        assert_eq!(z.mul(&z.conj()), CyclotomicInt::one(5));
    }

    #[test]
    fn embedding_preserves_values() {
        let z3 = CyclotomicInt::zeta_pow(3, 1);
        let z12 = CyclotomicInt::zeta_pow(12, 4);
        assert_eq!(z3.embed(12), z12);
        let mixed = z3.add(&CyclotomicInt::zeta_pow(4, 1));
        assert_eq!(mixed.conductor(), 12);
        assert_eq!(mixed, z12.add(&CyclotomicInt::zeta_pow(12, 3)));
        assert_eq!(
            CyclotomicInt::from_int(1, 7).embed(10).to_integer(),
            Some(BigInt::from(7))
        );
    }
}
