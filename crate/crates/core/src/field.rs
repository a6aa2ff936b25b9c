//! Finite fields `F_{p^r}` with exact arithmetic.
//!
//! An element is stored as its coefficient vector in the power basis of the
//! modulus root `t`, packed as a base-`p` integer (coefficient of `t^i` is the
//! `i`-th digit). The packing is canonical, so the packed index doubles as the
//! position in the canonical enumeration order (base-`p` counter, zero first).
//!
//! Multiplication goes through exponent/logarithm tables built once against
//! the canonical generator; addition works digit-wise (or through a small
//! addition table for tiny fields).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Default cap on the field order accepted by [`FiniteField::new`].
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX_Q: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the size cap {cap}")]
    SizeCapExceeded { p: u64, r: u32, cap: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroHasNoLog,
    #[error("modulus is not monic irreducible of degree {0} over the prime field")]
    InvalidModulus(u32),
    #[error("invalid coefficient vector for F_{p}^{r}")]
    BadCoefficients { p: u32, r: u32 },
}

/// An element of a [`FiniteField`]; see the module docs for the encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in the canonical enumeration order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[k] = g^k` for `k` in `0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// The finite field `F_q`, `q = p^r`. Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.0.p)
            .field("r", &self.0.r)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// Builds `F_{p^r}` under the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        Self::with_cap(p, r, DEFAULT_MAX_Q)
    }

    /// Builds `F_{p^r}`, rejecting orders above `cap`. The modulus is the
    /// lexicographically smallest monic irreducible polynomial of degree `r`
    /// (coefficient vectors compared from the constant term upward).
    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self, FieldError> {
        let p32 = check_order(p, r, cap)?;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p32, r)
        };
        Ok(Self::build(p32, r, modulus))
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn from_order(q: u64, cap: u64) -> Result<Self, FieldError> {
        let (p, r) = arith::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::with_cap(p, r, cap)
    }

    /// Builds `F_{p^r}` from an explicit monic modulus (little-endian residues,
    /// length `r + 1`).
    pub fn with_modulus(p: u64, modulus: &[u32], cap: u64) -> Result<Self, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::InvalidModulus(0));
        }
        let r = (modulus.len() - 1) as u32;
        let p32 = check_order(p, r, cap)?;
        if r == 1 {
            // Any monic linear modulus gives the prime field; normalize to X.
            if modulus[1] != 1 || modulus[0] >= p32 {
                return Err(FieldError::InvalidModulus(1));
            }
            return Ok(Self::build(p32, 1, vec![0, 1]));
        }
        let valid = modulus[r as usize] == 1
            && modulus.iter().all(|&c| c < p32)
            && fp_poly::is_irreducible(modulus, p32);
        if !valid {
            return Err(FieldError::InvalidModulus(r));
        }
        Ok(Self::build(p32, r, modulus.to_vec()))
    }

    fn build(p: u32, r: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(r);
        let slow = SlowArith {
            p,
            r,
            modulus: &modulus,
        };

        let generator = (1..q)
            .find(|&a| slow.has_full_order(a, q))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for k in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = k;
            cur = slow.mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        let neg: Vec<u32> = (0..q).map(|a| slow.neg(a)).collect();
        let add = (q <= ADD_TABLE_MAX_Q).then(|| {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(slow.add(a, b));
                }
            }
            table
        });

        // Tr(a) = a + a^p + ... + a^{p^{r-1}}, read off as the constant digit.
        let trace = (0..q)
            .map(|a| {
                if a == 0 {
                    return 0;
                }
                let la = log[a as usize] as u64;
                let mut acc = 0u32;
                let mut e = 1u64;
                for _ in 0..r {
                    let term = exp[((la * e) % (q as u64 - 1)) as usize];
                    acc = slow.add(acc, term);
                    e *= p as u64;
                }
                debug_assert!(acc < p, "trace must land in the prime field");
                acc
            })
            .collect();

        FiniteField(Arc::new(Tables {
            p,
            r,
            q,
            modulus,
            generator,
            exp,
            log,
            trace,
            neg,
            add,
        }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn r(&self) -> u32 {
        self.0.r
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, little-endian; `[0, 1]` (the polynomial X) when `r = 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The modulus root `t` (only meaningful for `r > 1`).
    pub fn t(&self) -> Option<FieldElement> {
        (self.0.r > 1).then_some(FieldElement(self.0.p))
    }

    /// Element at position `index` of the canonical order.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.0.q).then_some(FieldElement(index))
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Same as [`from_int`](Self::from_int) for unsigned, possibly huge, literals.
    pub fn from_u128(&self, n: u128) -> FieldElement {
        FieldElement((n % self.0.p as u128) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let (p, r) = (self.0.p, self.0.r);
        if coeffs.len() != r as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::BadCoefficients { p, r });
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        Ok(FieldElement(idx))
    }

    /// Coefficient vector (length `r`, little-endian in `t`).
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.0.p, self.0.r)
    }

    /// All `q` elements in canonical order: base-`p` counter, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.0.q).map(FieldElement)
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.0.generator)
    }

    /// `g^k` for the canonical generator.
    pub fn generator_pow(&self, k: u64) -> FieldElement {
        FieldElement(self.0.exp[(k % (self.0.q as u64 - 1)) as usize])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &self.0;
        if let Some(table) = &t.add {
            return FieldElement(table[(a.0 * t.q + b.0) as usize]);
        }
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if t.r == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        FieldElement(digit_add(a.0, b.0, t.p))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.0;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        let m = t.q - 1;
        FieldElement(t.exp[(if s >= m { s - m } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.0;
        let m = t.q - 1;
        Some(FieldElement(
            t.exp[((m - t.log[a.0 as usize]) % m) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.0;
        let m = (t.q - 1) as u64;
        let l = t.log[a.0 as usize] as u64;
        FieldElement(t.exp[((l * (e % m)) % m) as usize])
    }

    /// Multiplies by an integer through the prime subfield.
    pub fn scale(&self, n: i64, a: FieldElement) -> FieldElement {
        self.mul(self.from_int(n), a)
    }

    /// Absolute trace `Tr(a) = a + a^p + ... + a^{p^{r-1}}`, as a residue in `[0, p)`.
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.0.trace[a.0 as usize]
    }

    /// `k` in `[0, q-1)` with `g^k = a`.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u32, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroHasNoLog);
        }
        Ok(self.0.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Option<u64> {
        let l = self.discrete_log(a).ok()? as u64;
        let m = (self.0.q - 1) as u64;
        Some(m / arith::gcd(l, m))
    }

    /// Whether `a` is a `k`-th power of some element (zero counts as `0^k`).
    pub fn is_kth_power(&self, a: FieldElement, k: u64) -> bool {
        if a.0 == 0 {
            return true;
        }
        let m = (self.0.q - 1) as u64;
        let d = arith::gcd(k, m);
        self.pow(a, m / d) == FieldElement::ONE
    }

    /// Renders an element: a plain residue when `r = 1`, otherwise a
    /// polynomial in `t` such as `2t+1`.
    pub fn format(&self, a: FieldElement) -> String {
        if self.0.r == 1 {
            return a.0.to_string();
        }
        if a.0 == 0 {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs(a).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

fn check_order(p: u64, r: u32, cap: u64) -> Result<u32, FieldError> {
    if r == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if !arith::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let q = (p as u128).checked_pow(r);
    match q {
        Some(q) if q <= cap as u128 && q <= u32::MAX as u128 => Ok(p as u32),
        _ => Err(FieldError::SizeCapExceeded { p, r, cap }),
    }
}

fn digits(mut idx: u32, p: u32, r: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn digit_add(mut a: u32, mut b: u32, p: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 || b > 0 {
        let s = (a % p + b % p) % p;
        out += s * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

/// Table-free arithmetic used while the tables are being built.
struct SlowArith<'a> {
    p: u32,
    r: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        digit_add(a, b, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        let p = self.p;
        let d: Vec<u32> = digits(a, p, self.r)
            .into_iter()
            .map(|c| (p - c) % p)
            .collect();
        d.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let r = self.r as usize;
        let da = digits(a, self.p, self.r);
        let db = digits(b, self.p, self.r);
        let mut prod = vec![0u64; 2 * r];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce with the monic modulus from the top down.
        for k in (r..2 * r).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..r].iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[k - r + i] = (prod[k - r + i] + p - sub) % p;
            }
        }
        prod[..r]
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn has_full_order(&self, a: u32, q: u32) -> bool {
        let m = (q - 1) as u64;
        arith::prime_factors(m)
            .into_iter()
            .all(|l| self.pow(a, m / l) != 1)
    }
}

fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = p.pow(r);
    for k in 0..count {
        // The constant term is the most significant digit of the lex order.
        let mut low = Vec::with_capacity(r as usize);
        let mut rest = k;
        let mut place = count / p;
        for _ in 0..r {
            low.push(rest / place);
            rest %= place;
            place = (place / p).max(1);
        }
        let mut f = low;
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Dense polynomials over the prime field, used only for modulus selection.
mod fp_poly {
    fn trim(mut f: Vec<u32>) -> Vec<u32> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] as u64 * lead_inv % p as u64;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * mi as u64 % p as u64;
                a[shift + i] = ((a[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, m, p)
    }

    fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Monic `f` of degree `r >= 1` is irreducible iff it shares no factor
    /// with `X^{p^k} - X` for any `k <= r/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let r = f.len() - 1;
        if r <= 1 {
            return r == 1;
        }
        let x = vec![0u32, 1];
        let mut frob = x.clone();
        for _ in 1..=r / 2 {
            frob = powmod(&frob, p as u64, &f, p);
            let mut diff = frob.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: brute-force root and factor search for monic
    /// quadratics and cubics over small primes.
    fn has_root_mod_p(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            f.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                == 0
        })
    }

    #[test]
    fn construct_prime_field() {
        let f = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn construct_f4_forces_x2_x_1() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn construct_f9_lex_smallest_modulus() {
        // Oracle: walk monic quadratics over F_3 in lex order of (c0, c1) and
        // keep the first one without a root.
        let mut expected = None;
        'outer: for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                if !has_root_mod_p(&[c0, c1, 1], 3) {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(Some(f.modulus().to_vec()), expected);
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construct_errors() {
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert!(matches!(
            FiniteField::with_cap(2, 11, 1024),
            Err(FieldError::SizeCapExceeded { .. })
        ));
        assert_eq!(
            FiniteField::from_order(12, DEFAULT_MAX_Q).unwrap_err(),
            FieldError::NotPrimePower(12)
        );
        assert_eq!(FiniteField::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
    }

    #[test]
    fn explicit_modulus_validation() {
        assert!(FiniteField::with_modulus(3, &[2, 1, 1], DEFAULT_MAX_Q).is_ok());
        // X^2 + 2 = (X+1)(X+2) over F_3.
        assert_eq!(
            FiniteField::with_modulus(3, &[2, 0, 1], DEFAULT_MAX_Q).unwrap_err(),
            FieldError::InvalidModulus(2)
        );
    }

    #[test]
    fn enumeration_order() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let v: Vec<u32> = f5.elements().map(|a| a.index()).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4]);

        let f4 = FiniteField::new(2, 2).unwrap();
        let v: Vec<Vec<u32>> = f4.elements().map(|a| f4.coeffs(a)).collect();
        assert_eq!(v, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);

        let f9 = FiniteField::new(3, 2).unwrap();
        let all: Vec<FieldElement> = f9.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        assert_eq!(f9.coeffs(all[8]), vec![2, 2]);
        assert_eq!(f9.format(all[8]), "2t+2");
    }

    #[test]
    fn generators() {
        // Oracle: plain modular exponentiation.
        fn order_mod(a: u64, p: u64) -> u64 {
            let mut x = a % p;
            let mut k = 1;
            while x != 1 {
                x = x * a % p;
                k += 1;
            }
            k
        }
        assert_eq!(order_mod(2, 5), 4);
        assert_eq!(order_mod(2, 7), 3);
        assert_eq!(order_mod(3, 7), 6);
        assert_eq!(FiniteField::new(5, 1).unwrap().generator().index(), 2);
        assert_eq!(FiniteField::new(7, 1).unwrap().generator().index(), 3);
        assert_eq!(FiniteField::new(2, 1).unwrap().generator().index(), 1);
    }

    #[test]
    fn traces() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.trace(f5.from_int(3)), 3);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.trace(f4.t().unwrap()), 1);
        for f in [f4, f5, FiniteField::new(3, 3).unwrap()] {
            assert_eq!(f.trace(f.zero()), 0);
        }
    }

    #[test]
    fn discrete_logs() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.discrete_log(f5.from_int(1)), Ok(0));
        assert_eq!(f5.discrete_log(f5.from_int(3)), Ok(3));
        assert_eq!(f5.discrete_log(f5.zero()), Err(FieldError::ZeroHasNoLog));
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.discrete_log(f7.from_int(2)), Ok(2));
    }

    #[test]
    fn fermat_and_log_roundtrip_exhaustive() {
        for (p, r) in [
            (2, 1),
            (2, 5),
            (2, 10),
            (3, 4),
            (5, 3),
            (7, 2),
            (31, 2),
            (1021, 1),
        ] {
            let f = FiniteField::new(p, r).unwrap();
            let q = f.q() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a, "a^q = a in F_{p}^{r}");
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q - 1), f.one());
                    let k = f.discrete_log(a).unwrap();
                    assert_eq!(f.generator_pow(k as u64), a);
                }
            }
            for k in 0..q - 1 {
                assert_eq!(f.discrete_log(f.generator_pow(k)).unwrap() as u64, k);
            }
        }
    }

    #[test]
    fn trace_fibers_are_balanced() {
        for (p, r) in [(2, 1), (2, 4), (3, 3), (5, 2), (7, 1), (2, 10)] {
            let f = FiniteField::new(p, r).unwrap();
            let mut fiber = vec![0u64; p as usize];
            for a in f.elements() {
                fiber[f.trace(a) as usize] += 1;
            }
            let expected = p.pow(r - 1);
            assert!(fiber.iter().all(|&c| c == expected), "{p}^{r}: {fiber:?}");
        }
    }

    #[test]
    fn field_axioms_spot_check_against_slow_path() {
        let f = FiniteField::new(3, 3).unwrap();
        let slow = SlowArith {
            p: 3,
            r: 3,
            modulus: f.modulus(),
        };
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b).index(), slow.mul(a.index(), b.index()));
                assert_eq!(f.add(a, b).index(), slow.add(a.index(), b.index()));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
            if let Some(ai) = f.inv(a) {
                assert_eq!(f.mul(a, ai), f.one());
            }
        }
    }

    #[test]
    fn kth_powers() {
        let f = FiniteField::new(17, 1).unwrap();
        let sixth: std::collections::BTreeSet<u32> =
            f.nonzero_elements().map(|a| f.pow(a, 6).index()).collect();
        for a in f.nonzero_elements() {
            assert_eq!(f.is_kth_power(a, 6), sixth.contains(&a.index()));
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<FiniteField> {
        [(2, 3), (3, 2), (5, 2), (2, 6), (13, 1), (3, 4)]
            .iter()
            .map(|&(p, r)| FiniteField::new(p, r).unwrap())
            .collect()
    }

    proptest! {
        #[test]
        fn trace_is_prime_field_linear(fi in 0usize..6, a in 0u32..4096, b in 0u32..4096, c in 0i64..13) {
            let f = &fields()[fi];
            let a = f.element(a % f.q()).unwrap();
            let b = f.element(b % f.q()).unwrap();
            let p = f.p();
            prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
            let ca = f.scale(c, a);
            prop_assert_eq!(f.trace(ca) as i64, (c * f.trace(a) as i64).rem_euclid(p as i64));
        }

        #[test]
        fn distributive(fi in 0usize..6, a in 0u32..4096, b in 0u32..4096, c in 0u32..4096) {
            let f = &fields()[fi];
            let q = f.q();
            let (a, b, c) = (FieldElement(a % q), FieldElement(b % q), FieldElement(c % q));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}
