//! Seeded random surfaces for property tests and sweeps.
//!
//! `P(0,Z)` has degree 2 to 6 and `Q` has `Y`-degree 2 to 6 unless a family
//! fixes them. Every generated spec is monic in the required variable and
//! carries a few `X`-divisible padding terms that vanish at `X = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd;
use crate::characters::quadratic_character;
use crate::field::{FieldElement, FiniteField};
use crate::poly::{MultiPoly, SurfaceSpec, UniPoly, P_VARS, Q_VARS};

/// Shapes of `Q(0,Y,Z)` (and `P(0,Z)` where the family constrains it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    General,
    HomogeneousPair,
    HomogeneousQ,
    MonomialY,
    BinomialY,
    TwoTerm,
    Permutation,
    ShiftedPower,
    Quadratic,
    DegreeQMinus2,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::General,
        Family::HomogeneousPair,
        Family::HomogeneousQ,
        Family::MonomialY,
        Family::BinomialY,
        Family::TwoTerm,
        Family::Permutation,
        Family::ShiftedPower,
        Family::Quadratic,
        Family::DegreeQMinus2,
    ];
}

fn mono(field: &FiniteField, vars: &[char], exps: &[(char, u32)], c: FieldElement) -> MultiPoly {
    let e = vars
        .iter()
        .map(|v| exps.iter().find(|(w, _)| w == v).map_or(0, |&(_, k)| k))
        .collect();
    MultiPoly::from_terms(field, vars, [(e, c)])
}

pub struct InstanceGenerator {
    field: FiniteField,
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(field: &FiniteField, seed: u64) -> Self {
        InstanceGenerator {
            field: field.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn element(&mut self) -> FieldElement {
        let i = self.rng.gen_range(0..self.field.q());
        self.field.element(i).expect("index below q")
    }

    pub fn nonzero(&mut self) -> FieldElement {
        let i = self.rng.gen_range(1..self.field.q());
        self.field.element(i).expect("index below q")
    }

    fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_range(0..den) < num
    }

    /// Uniform coefficients up to degree `max_degree`.
    pub fn uni(&mut self, var: char, max_degree: usize) -> UniPoly {
        let coeffs = (0..=max_degree).map(|_| self.element()).collect();
        UniPoly::new(var, coeffs)
    }

    /// Random polynomial in `Z` of degree at most `max_degree`, over `vars`.
    fn z_poly(&mut self, vars: &[char], max_degree: u32) -> MultiPoly {
        let zi = vars.iter().position(|&v| v == 'Z').expect("Z in vars");
        let terms: Vec<_> = (0..=max_degree)
            .map(|k| {
                let mut e = vec![0; vars.len()];
                e[zi] = k;
                (e, self.element())
            })
            .collect();
        MultiPoly::from_terms(&self.field, vars, terms)
    }

    fn monomial(&self, vars: &[char], exps: &[(char, u32)], c: FieldElement) -> MultiPoly {
        mono(&self.field, vars, exps, c)
    }

    fn var(&self, vars: &[char], v: char) -> MultiPoly {
        MultiPoly::variable(vars, v).expect("declared variable")
    }

    /// Monic `P(0,Z)` of the given degree, sometimes with several forced roots.
    pub fn p0_of_degree(&mut self, degree: u32) -> MultiPoly {
        let f = self.field.clone();
        let vars = ['Z'];
        let z = self.var(&vars, 'Z');
        let forced = if self.chance(1, 2) {
            self.rng.gen_range(0..=degree)
        } else {
            0
        };
        let mut p = MultiPoly::constant(&f, &vars, f.one());
        for _ in 0..forced {
            let a = self.element();
            p = p.mul(&f, &z.sub(&f, &MultiPoly::constant(&f, &vars, a)));
        }
        let rest = degree - forced;
        if rest > 0 {
            let tail = self.z_poly(&vars, rest - 1);
            let lead = self.monomial(&vars, &[('Z', rest)], f.one());
            p = p.mul(&f, &lead.add(&f, &tail));
        }
        p
    }

    pub fn p0(&mut self) -> MultiPoly {
        let d = self.rng.gen_range(2..=6);
        self.p0_of_degree(d)
    }

    /// Monic `Q(0,Y,Z)` of `Y`-degree `n` with sparse coefficients in `Z`,
    /// sometimes with linear factors `Y - u(Z)`.
    fn q0_general(&mut self, n: u32) -> MultiPoly {
        let f = self.field.clone();
        let vars = ['Y', 'Z'];
        let y = self.var(&vars, 'Y');
        let forced = if self.chance(1, 2) {
            self.rng.gen_range(0..=n)
        } else {
            0
        };
        let mut q = MultiPoly::constant(&f, &vars, f.one());
        for _ in 0..forced {
            let u = self.z_poly(&vars, 1);
            q = q.mul(&f, &y.sub(&f, &u));
        }
        let rest = n - forced;
        if rest > 0 {
            let mut g = self.monomial(&vars, &[('Y', rest)], f.one());
            for i in 0..rest {
                if self.chance(1, 2) {
                    let c = self.z_poly(&vars, 2);
                    g = g.add(&f, &c.mul(&f, &self.monomial(&vars, &[('Y', i)], f.one())));
                }
            }
            q = q.mul(&f, &g);
        }
        q
    }

    /// `Y`-homogeneous form of degree `h` in `(Y, Z)` with `Y^h` coefficient 1.
    fn q0_homogeneous(&mut self, h: u32) -> MultiPoly {
        let f = self.field.clone();
        let vars = ['Y', 'Z'];
        let mut q = self.monomial(&vars, &[('Y', h)], f.one());
        for i in 0..h {
            let c = self.element();
            q = q.add(&f, &self.monomial(&vars, &[('Y', i), ('Z', h - i)], c));
        }
        q
    }

    /// A general single surface `X^d Y = P(X,Z)`.
    pub fn single(&mut self) -> SurfaceSpec {
        let p0 = self.p0();
        let d = self.rng.gen_range(1..=3);
        let p = self.pad_p(&p0);
        SurfaceSpec::single(&self.field, d, p).expect("monic of degree >= 2")
    }

    /// A general double surface.
    pub fn double(&mut self) -> SurfaceSpec {
        self.family(Family::General)
            .expect("general family always applies")
    }

    /// A double surface from `family`, or `None` when the family is empty
    /// over this field.
    pub fn family(&mut self, family: Family) -> Option<SurfaceSpec> {
        let f = self.field.clone();
        let q = f.q() as u64;
        let vars = ['Y', 'Z'];
        let y_pow = |g: &Self, k: u32| g.monomial(&vars, &[('Y', k)], f.one());
        let (p0, q0) = match family {
            Family::General => {
                let n = self.rng.gen_range(2..=6);
                (self.p0(), self.q0_general(n))
            }
            Family::HomogeneousPair => {
                let h1 = self.rng.gen_range(2..=6);
                let h2 = self.rng.gen_range(2..=6);
                let p0 = self.monomial(&['Z'], &[('Z', h1)], f.one());
                (p0, self.q0_homogeneous(h2))
            }
            Family::HomogeneousQ => {
                let h = self.rng.gen_range(2..=6);
                (self.p0(), self.q0_homogeneous(h))
            }
            Family::MonomialY => {
                let m = self.rng.gen_range(2..=6);
                let a = if self.chance(1, 4) {
                    f.zero()
                } else {
                    self.nonzero()
                };
                let q0 = y_pow(self, m).sub(&f, &self.monomial(&vars, &[('Z', m)], a));
                (self.p0(), q0)
            }
            Family::BinomialY => {
                let m = self.rng.gen_range(2..=6);
                let fz = self.z_poly(&vars, 4);
                (self.p0(), y_pow(self, m).sub(&f, &fz))
            }
            Family::TwoTerm => {
                let top = (q - 1).min(6) as u32;
                if top < 2 {
                    return None;
                }
                let m = self.rng.gen_range(2..=top);
                let n = self.rng.gen_range(0..m);
                let b = self.z_poly(&vars, 3);
                let q0 = y_pow(self, m).sub(&f, &b.mul(&f, &y_pow(self, n)));
                (self.p0(), q0)
            }
            Family::Permutation => {
                let q0 = self.permutation_q0()?;
                (self.p0(), q0)
            }
            Family::ShiftedPower => {
                let ms: Vec<u32> = (2..=6).filter(|&m| gcd(m as u64, q - 1) == 1).collect();
                if ms.is_empty() {
                    return None;
                }
                let m = ms[self.rng.gen_range(0..ms.len())];
                let b = self.z_poly(&vars, 2);
                let q0 = if self.chance(1, 2) {
                    self.var(&vars, 'Y').add(&f, &b).pow(&f, m)
                } else {
                    y_pow(self, m).add(&f, &b)
                };
                (self.p0(), q0)
            }
            Family::Quadratic => {
                if f.p() == 2 {
                    return None;
                }
                let b = self.z_poly(&vars, 2);
                let c = if self.chance(1, 4) {
                    // (Y + b/2)^2
                    let half = f.inv(f.from_int(2)).expect("odd characteristic");
                    let h = b.scale(&f, half);
                    h.mul(&f, &h)
                } else {
                    self.z_poly(&vars, 2)
                };
                let y = self.var(&vars, 'Y');
                let q0 = y_pow(self, 2).add(&f, &b.mul(&f, &y)).add(&f, &c);
                (self.p0(), q0)
            }
            Family::DegreeQMinus2 => {
                if q < 4 {
                    return None;
                }
                let n = q as u32 - 2;
                let p0 = self.p0_of_degree(n);
                let u = self.uni('Y', n as usize - 1);
                let mut q0 = y_pow(self, n);
                for (i, &c) in u.coeffs().iter().enumerate() {
                    q0 = q0.add(&f, &self.monomial(&vars, &[('Y', i as u32)], c));
                }
                (p0, q0)
            }
        };
        let p = self.pad_p(&p0);
        let qq = self.pad_q(&q0);
        let d1 = self.rng.gen_range(1..=3);
        let d2 = self.rng.gen_range(1..=3);
        Some(SurfaceSpec::double(&f, d1, d2, p, qq).expect("monic of degree >= 2"))
    }

    /// `f(Y)` from one of the permutation rows that exists over this field:
    /// `Y^i + b`, the characteristic-3 cubic, or `Y^{p^k} - aY`.
    fn permutation_q0(&mut self) -> Option<MultiPoly> {
        let f = self.field.clone();
        let q = f.q() as u64;
        let p = f.p() as u64;
        let vars = ['Y', 'Z'];
        let one = f.one();
        let powers: Vec<u32> = (2..=7).filter(|&i| gcd(i as u64, q - 1) == 1).collect();
        let mut linearized: Vec<(u32, FieldElement)> = Vec::new();
        for k in 1..=2u32 {
            let e = p.pow(k);
            if e > 9 {
                break;
            }
            let g = gcd((e - 1) % (q - 1), q - 1);
            linearized.extend(
                f.nonzero_elements()
                    .filter(|&a| !f.is_kth_power(a, g))
                    .map(|a| (e as u32, a)),
            );
        }
        let mut rows: Vec<u8> = Vec::new();
        if !powers.is_empty() {
            rows.push(1);
        }
        if p == 3 {
            rows.push(3);
        }
        if !linearized.is_empty() {
            rows.push(5);
        }
        if rows.is_empty() {
            return None;
        }
        let y = |k: u32, c: FieldElement| mono(&f, &vars, &[('Y', k)], c);
        Some(match rows[self.rng.gen_range(0..rows.len())] {
            1 => {
                let i = powers[self.rng.gen_range(0..powers.len())];
                y(i, one).add(&f, &y(0, self.element()))
            }
            3 => {
                let mut b = self.element();
                while quadratic_character(&f, f.neg(b)).ok()? == 1 {
                    b = self.element();
                }
                y(3, one).add(&f, &y(1, b)).add(&f, &y(0, self.element()))
            }
            _ => {
                let (e, a) = linearized[self.rng.gen_range(0..linearized.len())];
                y(e, one).sub(&f, &y(1, a))
            }
        })
    }

    /// Adds up to two terms `c X^a Z^b` with `b < deg_Z P(0,Z)`.
    fn pad_p(&mut self, p0: &MultiPoly) -> MultiPoly {
        let f = self.field.clone();
        let deg = p0.degree_in('Z').unwrap_or(0);
        let mut p = p0.with_vars(&P_VARS).expect("P(0,Z) only uses Z");
        for _ in 0..self.rng.gen_range(0..=2) {
            let a = self.rng.gen_range(1..=2);
            let b = self.rng.gen_range(0..deg.max(1));
            let c = self.element();
            p = p.add(&f, &self.monomial(&P_VARS, &[('X', a), ('Z', b)], c));
        }
        p
    }

    /// Adds up to two terms `c X^a Y^i Z^j` with `i < deg_Y Q(0,Y,Z)`.
    fn pad_q(&mut self, q0: &MultiPoly) -> MultiPoly {
        let f = self.field.clone();
        let deg = q0.degree_in('Y').unwrap_or(0);
        let mut q = q0.with_vars(&Q_VARS).expect("Q(0,Y,Z) only uses Y and Z");
        for _ in 0..self.rng.gen_range(0..=2) {
            let a = self.rng.gen_range(1..=2);
            let i = self.rng.gen_range(0..deg.max(1));
            let j = self.rng.gen_range(0..=2);
            let c = self.element();
            q = q.add(
                &f,
                &self.monomial(&Q_VARS, &[('X', a), ('Y', i), ('Z', j)], c),
            );
        }
        q
    }
}
