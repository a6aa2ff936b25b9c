//! Dense Gaussian elimination over a finite field.

use crate::field::{FieldElement, FiniteField};

pub type Matrix = Vec<Vec<FieldElement>>;

/// Reduces `m` to row-echelon form in place, taking as pivot the first row
/// with a nonzero entry in each column. Returns the pivot count and whether an
/// odd number of row swaps occurred.
fn echelon(field: &FiniteField, m: &mut Matrix) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut odd_swaps = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            m.swap(pivot, rank);
            odd_swaps = !odd_swaps;
        }
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = field.mul(row[col], inv);
            if factor.is_zero() {
                continue;
            }
            for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rank += 1;
    }
    (rank, odd_swaps)
}

pub fn rank(field: &FiniteField, mut m: Matrix) -> usize {
    echelon(field, &mut m).0
}

/// Determinant of a square matrix; the empty matrix has determinant one.
pub fn determinant(field: &FiniteField, mut m: Matrix) -> FieldElement {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    let (rank, odd) = echelon(field, &mut m);
    if rank < n {
        return field.zero();
    }
    let prod = (0..n).fold(field.one(), |acc, i| field.mul(acc, m[i][i]));
    if odd {
        field.neg(prod)
    } else {
        prod
    }
}
