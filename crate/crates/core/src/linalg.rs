//! Dense exact linear algebra over a [`Field`].

use alloc::vec::Vec;

use crate::ring::{Field, Ring};

/// Why a linear system has no unique solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    /// Fewer independent equations than unknowns.
    Underdetermined,
    /// The equations contradict each other.
    Inconsistent,
}

/// Solves `A x = b` for a possibly overdetermined but consistent system
/// with a unique solution. `rows[r]` has one entry per unknown.
pub fn solve<F: Field>(rows: &[Vec<F>], rhs: &[F], ncols: usize) -> Result<Vec<F>, SolveFailure> {
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.resize(ncols, F::zero());
            v.push(b.clone());
            v
        })
        .collect();
    let nrows = m.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(ncols);
    for col in 0..ncols {
        let Some(p) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            return Err(SolveFailure::Underdetermined);
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].inv().expect("nonzero pivot");
        for c in col..=ncols {
            m[pivot_row][c] = m[pivot_row][c].mul(&inv);
        }
        for r in 0..nrows {
            if r == pivot_row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=ncols {
                let t = factor.mul(&m[pivot_row][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[ncols].is_zero()) {
        return Err(SolveFailure::Inconsistent);
    }
    Ok(pivots.iter().map(|&r| m[r][ncols].clone()).collect())
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].inv()?;
        for c in 0..2 * n {
            m[col][c] = m[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..2 * n {
                let t = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = R::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity<R: Ring>(n: usize) -> Vec<Vec<R>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
        .collect()
}
