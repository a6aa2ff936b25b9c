use std::collections::BTreeMap;

use crate::field::{FieldElement, FiniteField};

use super::uni::UniPoly;
use super::PolyError;

/// Sparse polynomial over an ordered list of single-letter variables.
///
/// The zero polynomial has no terms; no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<char>,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

/// Result of substituting values for some variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    Multi(MultiPoly),
    Uni(UniPoly),
    Const(FieldElement),
}

impl MultiPoly {
    pub fn zero(vars: &[char]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &FiniteField, vars: &[char], c: FieldElement) -> Self {
        Self::from_terms(field, vars, [(vec![0; vars.len()], c)])
    }

    /// The polynomial `v`, if `v` is one of `vars`.
    pub fn variable(vars: &[char], v: char) -> Option<Self> {
        let i = vars.iter().position(|&w| w == v)?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, FieldElement::ONE);
        Some(MultiPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    /// Sums the given terms, merging equal exponent vectors and dropping zeros.
    pub fn from_terms(
        field: &FiniteField,
        vars: &[char],
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Self {
        let mut out = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length");
            out.add_term(field, exps, c);
        }
        out
    }

    fn add_term(&mut self, field: &FiniteField, exps: Vec<u32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn index_of(&self, v: char) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    /// Constant value, if the polynomial involves no variable.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::ZERO),
            1 => {
                let (e, &c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then_some(c)
            }
            _ => None,
        }
    }

    pub fn involves(&self, v: char) -> bool {
        self.index_of(v)
            .is_some_and(|i| self.terms.keys().any(|e| e[i] > 0))
    }

    /// Highest power of `v`; `None` for the zero polynomial or an unknown variable.
    pub fn degree_in(&self, v: char) -> Option<u32> {
        let i = self.index_of(v)?;
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Nonzero with every term of the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => false,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Coefficients with respect to `v`, as polynomials in the remaining variables.
    pub fn coefficients_in(&self, field: &FiniteField, v: char) -> BTreeMap<u32, MultiPoly> {
        let Some(i) = self.index_of(v) else {
            return BTreeMap::from([(0, self.clone())]);
        };
        let rest: Vec<char> = self.vars.iter().copied().filter(|&w| w != v).collect();
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut rest_exps = e.clone();
            let k = rest_exps.remove(i);
            out.entry(k)
                .or_insert_with(|| MultiPoly::zero(&rest))
                .add_term(field, rest_exps, c);
        }
        out
    }

    /// Coefficient of the highest power of `v` must be the constant 1.
    pub fn is_monic_in(&self, field: &FiniteField, v: char) -> bool {
        self.coefficients_in(field, v)
            .last_key_value()
            .is_some_and(|(_, c)| c.as_constant() == Some(FieldElement::ONE))
    }

    pub fn add(&self, field: &FiniteField, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(field, e.clone(), c);
        }
        out
    }

    pub fn neg(&self, field: &FiniteField) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, field: &FiniteField, other: &MultiPoly) -> MultiPoly {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &FiniteField, c: FieldElement) -> MultiPoly {
        MultiPoly::from_terms(
            field,
            &self.vars,
            self.terms
                .iter()
                .map(|(e, &a)| (e.clone(), field.mul(a, c))),
        )
    }

    pub fn mul(&self, field: &FiniteField, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(field, e, field.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, field: &FiniteField, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(field, &self.vars, field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// Value at a full point, given in variable order.
    pub fn eval(&self, field: &FiniteField, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        self.terms.iter().fold(FieldElement::ZERO, |acc, (e, &c)| {
            let term = e
                .iter()
                .zip(point)
                .fold(c, |t, (&k, &x)| field.mul(t, field.pow(x, k as u64)));
            field.add(acc, term)
        })
    }

    /// Substitutes the bound variables and drops them from the variable list.
    /// Bindings for variables not in the list are ignored.
    pub fn substitute(&self, field: &FiniteField, bindings: &[(char, FieldElement)]) -> MultiPoly {
        let bound: Vec<Option<FieldElement>> = self
            .vars
            .iter()
            .map(|v| bindings.iter().find(|(w, _)| w == v).map(|&(_, x)| x))
            .collect();
        let rest: Vec<char> = self
            .vars
            .iter()
            .zip(&bound)
            .filter(|(_, b)| b.is_none())
            .map(|(&v, _)| v)
            .collect();
        let terms = self.terms.iter().map(|(e, &c)| {
            let mut coeff = c;
            let mut rest_exps = Vec::with_capacity(rest.len());
            for (&k, b) in e.iter().zip(&bound) {
                match b {
                    Some(x) => coeff = field.mul(coeff, field.pow(*x, k as u64)),
                    None => rest_exps.push(k),
                }
            }
            (rest_exps, coeff)
        });
        MultiPoly::from_terms(field, &rest, terms)
    }

    /// Substitutes and classifies by the number of remaining variables.
    pub fn specialize(
        &self,
        field: &FiniteField,
        bindings: &[(char, FieldElement)],
    ) -> Result<Specialized, PolyError> {
        let sub = self.substitute(field, bindings);
        Ok(match sub.vars.len() {
            0 => Specialized::Const(sub.as_constant().unwrap_or(FieldElement::ZERO)),
            1 => Specialized::Uni(sub.to_uni(field, sub.vars[0])?),
            _ => Specialized::Multi(sub),
        })
    }

    /// Dense form in `v`; every other variable must be absent. Degree is capped
    /// at `4q`.
    pub fn to_uni(&self, field: &FiniteField, v: char) -> Result<UniPoly, PolyError> {
        self.check_only(v)?;
        let cap = 4 * field.q() as u64;
        let deg = self.degree_in(v).unwrap_or(0) as u64;
        if deg > cap {
            return Err(PolyError::SizeCapExceeded { degree: deg, cap });
        }
        Ok(self.dense(field, v, |k| k))
    }

    /// Dense form in `v` after folding every exponent `e >= q` onto
    /// `((e - 1) mod (q - 1)) + 1`; agrees with the polynomial on all of `F_q`.
    pub fn to_uni_reduced(&self, field: &FiniteField, v: char) -> Result<UniPoly, PolyError> {
        self.check_only(v)?;
        let q = field.q();
        Ok(self.dense(field, v, |k| if k >= q { (k - 1) % (q - 1) + 1 } else { k }))
    }

    fn check_only(&self, v: char) -> Result<(), PolyError> {
        if self.vars.iter().any(|&w| w != v && self.involves(w)) {
            return Err(PolyError::NotUnivariate(v));
        }
        Ok(())
    }

    fn dense(&self, field: &FiniteField, v: char, fold: impl Fn(u32) -> u32) -> UniPoly {
        let i = self.index_of(v);
        let exp = |e: &Vec<u32>| i.map_or(0, |i| fold(e[i])) as usize;
        let len = self.terms.keys().map(|e| exp(e) + 1).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; len];
        for (e, &c) in &self.terms {
            let k = exp(e);
            coeffs[k] = field.add(coeffs[k], c);
        }
        UniPoly::new(v, coeffs)
    }

    /// Re-expresses over a different variable list containing every variable
    /// this polynomial involves.
    pub fn with_vars(&self, vars: &[char]) -> Result<MultiPoly, PolyError> {
        for (i, v) in self.vars.iter().enumerate() {
            if !vars.contains(v) && self.terms.keys().any(|e| e[i] > 0) {
                return Err(PolyError::UnknownVariable(v.to_string()));
            }
        }
        let map: Vec<Option<usize>> = vars.iter().map(|v| self.index_of(*v)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (map.iter().map(|m| m.map_or(0, |i| e[i])).collect(), c))
            .collect();
        Ok(MultiPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    /// Deterministic rendering in the input grammar: terms by descending total
    /// degree, then descending exponent vector.
    pub fn format(&self, field: &FiniteField) -> String {
        let mut terms: Vec<(&Vec<u32>, &FieldElement)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        super::join_terms(
            terms
                .into_iter()
                .map(|(e, &c)| super::format_term(field, c, &self.vars, e)),
        )
    }
}
