use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{identity, matmul};
use crate::scalar::{GaussRat, QScalar};

/// One nonzero entry `R̂^{kl}_{mn}`.
pub type REntry = ((u8, u8), (u8, u8), QScalar);

/// Vector representation `R̂` of the universal R-matrix together with its
/// inverse, as `n² × n²` tables indexed by generator position. Row `(k,l)`,
/// column `(m,n)` holds `R̂^{kl}_{mn}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    rhat: Vec<Vec<QScalar>>,
    rhat_inv: Vec<Vec<QScalar>>,
    eigenvalues: Vec<QScalar>,
}

fn table(n: usize, entries: &[REntry]) -> Result<Vec<Vec<QScalar>>> {
    let mut m = alloc::vec![alloc::vec![QScalar::zero(); n * n]; n * n];
    for ((k, l), (a, b), v) in entries {
        let idx = [*k, *l, *a, *b];
        if idx.iter().any(|&i| i as usize >= n) {
            return Err(Error::Dimension(alloc::format!(
                "entry index {:?} outside dimension {}",
                idx, n
            )));
        }
        m[*k as usize * n + *l as usize][*a as usize * n + *b as usize] = v.clone();
    }
    Ok(m)
}

impl RMatrix {
    /// Builds from sparse entry lists. `eigenvalues` lists the distinct
    /// eigenvalues for the minimal-polynomial check (may be empty).
    pub fn new(n: usize, rhat: &[REntry], rhat_inv: &[REntry], eigenvalues: Vec<QScalar>) -> Result<Self> {
        Ok(RMatrix {
            n,
            rhat: table(n, rhat)?,
            rhat_inv: table(n, rhat_inv)?,
            eigenvalues,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rhat(&self, k: u8, l: u8, m: u8, n: u8) -> &QScalar {
        &self.rhat[k as usize * self.n + l as usize][m as usize * self.n + n as usize]
    }

    pub fn rhat_inv(&self, k: u8, l: u8, m: u8, n: u8) -> &QScalar {
        &self.rhat_inv[k as usize * self.n + l as usize][m as usize * self.n + n as usize]
    }

    pub fn matrix(&self) -> &[Vec<QScalar>] {
        &self.rhat
    }

    pub fn inverse_matrix(&self) -> &[Vec<QScalar>] {
        &self.rhat_inv
    }

    pub fn eigenvalues(&self) -> &[QScalar] {
        &self.eigenvalues
    }

    fn sparse(&self, m: &[Vec<QScalar>]) -> Vec<REntry> {
        let n = self.n;
        let mut out = Vec::new();
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((
                        ((r / n) as u8, (r % n) as u8),
                        ((c / n) as u8, (c % n) as u8),
                        v.clone(),
                    ));
                }
            }
        }
        out
    }

    pub fn entries(&self) -> Vec<REntry> {
        self.sparse(&self.rhat)
    }

    pub fn inverse_entries(&self) -> Vec<REntry> {
        self.sparse(&self.rhat_inv)
    }
}

/// Outcome of the structural checks on an R-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixReport {
    pub braid: bool,
    pub inverse: bool,
    pub flip_limit: bool,
    /// `Π (R̂ − λ_i) = 0` over the stored eigenvalues, if any are stored.
    pub minimal_polynomial: Option<bool>,
}

impl RMatrixReport {
    pub fn all_pass(&self) -> bool {
        self.braid && self.inverse && self.flip_limit && self.minimal_polynomial.unwrap_or(true)
    }
}

fn embed(m: &[Vec<QScalar>], n: usize, first: bool) -> Vec<Vec<QScalar>> {
    let d = n * n * n;
    let mut out = alloc::vec![alloc::vec![QScalar::zero(); d]; d];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let row = (a * n + b) * n + c;
                if first {
                    for a2 in 0..n {
                        for b2 in 0..n {
                            let v = &m[a * n + b][a2 * n + b2];
                            if !v.is_zero() {
                                out[row][(a2 * n + b2) * n + c] = v.clone();
                            }
                        }
                    }
                } else {
                    for b2 in 0..n {
                        for c2 in 0..n {
                            let v = &m[b * n + c][b2 * n + c2];
                            if !v.is_zero() {
                                out[row][(a * n + b2) * n + c2] = v.clone();
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Braid relation, inverse pair, `q → 1` flip limit and (when eigenvalues
/// are stored) the minimal polynomial, all checked exactly.
pub fn rmatrix_checks(r: &RMatrix) -> Result<RMatrixReport> {
    let n = r.n;
    let d = n * n;
    let square = |m: &[Vec<QScalar>]| m.len() == d && m.iter().all(|row| row.len() == d);
    if !square(&r.rhat) || !square(&r.rhat_inv) {
        return Err(Error::Dimension(alloc::format!("expected {}x{} tables", d, d)));
    }
    let r12 = embed(&r.rhat, n, true);
    let r23 = embed(&r.rhat, n, false);
    let lhs = matmul(&matmul(&r12, &r23), &r12);
    let rhs = matmul(&matmul(&r23, &r12), &r23);
    let braid = lhs == rhs;

    let id: Vec<Vec<QScalar>> = identity(d);
    let inverse = matmul(&r.rhat, &r.rhat_inv) == id && matmul(&r.rhat_inv, &r.rhat) == id;

    let mut flip_limit = true;
    for k in 0..n {
        for l in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let want = if k == b && l == a {
                        GaussRat::from_int(1)
                    } else {
                        GaussRat::default()
                    };
                    if r.rhat[k * n + l][a * n + b].at_one() != want {
                        flip_limit = false;
                    }
                }
            }
        }
    }

    let minimal_polynomial = if r.eigenvalues.is_empty() {
        None
    } else {
        let mut acc: Vec<Vec<QScalar>> = identity(d);
        for ev in &r.eigenvalues {
            let mut shifted = r.rhat.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = &row[i] - ev;
            }
            acc = matmul(&acc, &shifted);
        }
        Some(acc.iter().all(|row| row.iter().all(|v| v.is_zero())))
    };

    Ok(RMatrixReport {
        braid,
        inverse,
        flip_limit,
        minimal_polynomial,
    })
}
