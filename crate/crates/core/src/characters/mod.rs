//! Additive, multiplicative and quadratic characters of a finite field with
//! exact values in cyclotomic integer rings, and Gauss sums.

mod cyclotomic;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_poly, CyclotomicInt, MAX_CONDUCTOR};

use crate::arith::gcd;
use crate::field::{FieldElement, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("the quadratic character needs odd characteristic")]
    EvenCharacteristic,
}

/// A character whose values are roots of unity of a fixed order, or zero.
pub trait Character {
    /// Order of the root of unity the values are expressed in.
    fn conductor(&self) -> u64;

    /// `Some(k)` when the value at `a` is `ζ^k`, `None` when it is zero.
    fn exponent(&self, a: FieldElement) -> Option<u64>;

    fn value(&self, a: FieldElement) -> CyclotomicInt {
        match self.exponent(a) {
            Some(k) => CyclotomicInt::zeta_pow(self.conductor(), k),
            None => CyclotomicInt::zero(self.conductor()),
        }
    }
}

/// `χ_b(a) = ζ_p^{Tr(b a)}`; `b = 0` is the trivial character.
#[derive(Clone, Debug)]
pub struct AdditiveChar {
    field: FiniteField,
    b: FieldElement,
}

impl AdditiveChar {
    pub fn new(field: &FiniteField, b: FieldElement) -> Self {
        AdditiveChar {
            field: field.clone(),
            b,
        }
    }

    /// The canonical character `χ_1`.
    pub fn canonical(field: &FiniteField) -> Self {
        Self::new(field, field.one())
    }

    pub fn twist(&self) -> FieldElement {
        self.b
    }

    pub fn is_trivial(&self) -> bool {
        self.b.is_zero()
    }
}

impl Character for AdditiveChar {
    fn conductor(&self) -> u64 {
        self.field.p() as u64
    }

    fn exponent(&self, a: FieldElement) -> Option<u64> {
        Some(self.field.trace(self.field.mul(self.b, a)) as u64)
    }
}

/// `ψ_j(g^k) = ζ_{q-1}^{jk}` for the canonical generator `g`; at zero the
/// trivial character is 1 and every other character is 0.
#[derive(Clone, Debug)]
pub struct MultChar {
    field: FiniteField,
    j: u64,
}

impl MultChar {
    pub fn new(field: &FiniteField, j: u64) -> Self {
        let m = field.q() as u64 - 1;
        MultChar {
            field: field.clone(),
            j: j % m,
        }
    }

    /// The quadratic character; `None` in characteristic 2.
    pub fn quadratic(field: &FiniteField) -> Option<Self> {
        (field.p() != 2).then(|| Self::new(field, (field.q() as u64 - 1) / 2))
    }

    pub fn index(&self) -> u64 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    pub fn order(&self) -> u64 {
        let m = self.field.q() as u64 - 1;
        m / gcd(self.j, m)
    }

    /// `ψ̄ = ψ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let m = self.field.q() as u64 - 1;
        Self::new(&self.field, m - self.j)
    }

    /// Every character whose order divides `d`, trivial one first.
    pub fn all_with_order_dividing(field: &FiniteField, d: u64) -> Vec<MultChar> {
        let m = field.q() as u64 - 1;
        let d = gcd(d, m);
        (0..d).map(|i| Self::new(field, i * (m / d))).collect()
    }
}

impl Character for MultChar {
    fn conductor(&self) -> u64 {
        self.field.q() as u64 - 1
    }

    fn exponent(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return self.is_trivial().then_some(0);
        }
        let k = self.field.discrete_log(a).expect("nonzero element") as u64;
        Some(self.j * k % self.conductor())
    }
}

pub fn additive_value(chi: &AdditiveChar, a: FieldElement) -> CyclotomicInt {
    chi.value(a)
}

pub fn mult_value(psi: &MultChar, a: FieldElement) -> CyclotomicInt {
    psi.value(a)
}

/// `η(a) ∈ {-1, 0, 1}` via Euler's criterion.
pub fn quadratic_character(field: &FiniteField, a: FieldElement) -> Result<i8, CharError> {
    if field.p() == 2 {
        return Err(CharError::EvenCharacteristic);
    }
    if a.is_zero() {
        return Ok(0);
    }
    let e = field.pow(a, (field.q() as u64 - 1) / 2);
    Ok(if e == field.one() { 1 } else { -1 })
}

/// Exact sum of character values over a multiset.
pub fn char_sum_over_set<C: Character + ?Sized>(
    chi: &C,
    values: impl IntoIterator<Item = FieldElement>,
) -> CyclotomicInt {
    let n = chi.conductor();
    let mut buckets = vec![0i64; n as usize];
    for a in values {
        if let Some(k) = chi.exponent(a) {
            buckets[k as usize] += 1;
        }
    }
    CyclotomicInt::from_buckets(n, &buckets)
}

/// `G(ψ, χ) = Σ_a ψ(a) χ(a)` in `Z[ζ_{p(q-1)}]`.
pub fn gauss_sum(psi: &MultChar, chi: &AdditiveChar) -> CyclotomicInt {
    let (m, p) = (psi.conductor(), chi.conductor());
    let n = m * p;
    let mut buckets = vec![0i64; n as usize];
    for a in psi.field.elements() {
        if let (Some(e), Some(f)) = (psi.exponent(a), chi.exponent(a)) {
            buckets[((e * p + f * m) % n) as usize] += 1;
        }
    }
    CyclotomicInt::from_buckets(n, &buckets)
}
