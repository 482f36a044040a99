//! Momentum eigenfunctions as truncated bivariate series.

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{self, SolveFailure};
use crate::ncalg::{multidegree, word_text, CommPoly, Multidegree, NCPoly, Orderer, RewriteSystem, SpaceSpec, Word};
use crate::phasespace::{momentum_system, DerivKind, Ordering, PhaseAlgebra, Side};
use crate::ring::Ring;
use crate::scalar::{GaussRat, QFraction, QScalar};

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 8;

/// `Σ c · X^w ⊗ P^v` with `|w| = |v| ≤ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    xsys: Arc<RewriteSystem>,
    psys: Arc<RewriteSystem>,
    max_degree: usize,
    terms: BTreeMap<(Word, Word), QFraction>,
}

impl BiSeries {
    pub fn new(xsys: Arc<RewriteSystem>, psys: Arc<RewriteSystem>, max_degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Word::new(), Word::new()), QFraction::one());
        BiSeries {
            xsys,
            psys,
            max_degree,
            terms,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), QFraction> {
        &self.terms
    }

    pub fn coeff(&self, x: &[u8], p: &[u8]) -> QFraction {
        self.terms
            .get(&(x.to_vec(), p.to_vec()))
            .cloned()
            .unwrap_or_else(QFraction::zero)
    }

    /// Overwrites one coefficient; a zero value removes the term.
    pub fn set(&mut self, x: Word, p: Word, c: QFraction) {
        if c.is_zero() {
            self.terms.remove(&(x, p));
        } else {
            self.terms.insert((x, p), c);
        }
    }

    pub fn x_system(&self) -> &Arc<RewriteSystem> {
        &self.xsys
    }

    pub fn p_system(&self) -> &Arc<RewriteSystem> {
        &self.psys
    }

    /// Every term has equal coordinate and momentum degree.
    pub fn is_degree_paired(&self) -> bool {
        self.terms.keys().all(|(x, p)| x.len() == p.len())
    }

    /// Coefficients at `q = 1` keyed by the two multidegrees, or `None` if
    /// some coefficient has a pole there.
    pub fn at_one(&self) -> Option<BTreeMap<(Multidegree, Multidegree), GaussRat>> {
        let nx = self.xsys.ngens();
        let np = self.psys.ngens();
        let mut out: BTreeMap<(Multidegree, Multidegree), GaussRat> = BTreeMap::new();
        for ((x, p), c) in &self.terms {
            let v = c.at_one()?;
            let key = (multidegree(nx, x), multidegree(np, p));
            let e = out.entry(key).or_default();
            *e = &*e + &v;
        }
        out.retain(|_, v| !v.is_zero());
        Some(out)
    }

    fn sorted_terms(&self) -> Vec<(&(Word, Word), &QFraction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0 .0.len(), &a.0 .0, &a.0 .1).cmp(&(b.0 .0.len(), &b.0 .0, &b.0 .1)));
        v
    }
}

fn word_or_one(sys: &RewriteSystem, w: &[u8]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        word_text(sys, w)
    }
}

/// One line per term: `(x-word | p-word) : coefficient`.
impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((x, p), c) in self.sorted_terms() {
            writeln!(
                f,
                "({} | {}) : {}",
                word_or_one(&self.xsys, x),
                word_or_one(&self.psys, p),
                c
            )?;
        }
        Ok(())
    }
}

/// All normal words of length `d`, in lexicographic order.
pub fn normal_words(sys: &RewriteSystem, d: usize) -> Vec<Word> {
    let n = sys.ngens() as u8;
    let mut out = alloc::vec![Word::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &out {
            for g in 0..n {
                if let Some(&last) = w.last() {
                    if sys.rule(last, g).is_some() {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn order_for(side: Side) -> Ordering {
    match side {
        Side::Left => Ordering::XP,
        Side::Right => Ordering::PX,
    }
}

/// `i∂^j ▷ f` or `f ◁ i∂^j`.
fn i_derivative(alg: &PhaseAlgebra, space: &SpaceSpec, j: u8, f: &NCPoly, ord: &mut Orderer<'_>) -> NCPoly {
    alg.derivative_with(space, j, f, ord).scale(&QScalar::i())
}

fn p_product(side: Side, psys: &RewriteSystem, v: &[u8], j: u8) -> Result<BTreeMap<Word, QScalar>> {
    let mut w = v.to_vec();
    match side {
        Side::Left => w.push(j),
        Side::Right => w.insert(0, j),
    }
    psys.normal_order(&[(w, QScalar::one())])
}

/// Solves `i∂^j ▷ u = u ⊛ p^j` (left side) or `u ◁ i∂^j = p^j ⊛ u`
/// (right side) degree by degree with `u = 1 + …`.
pub fn solve(space: &SpaceSpec, kind: DerivKind, n: usize) -> Result<BiSeries> {
    let alg = PhaseAlgebra::new(space, kind.calculus, order_for(kind.side))?;
    let psys = momentum_system(space)?;
    let xsys = space.algebra.clone();
    let dim = space.ngens() as u8;
    let mut series = BiSeries::new(xsys.clone(), psys.clone(), n);
    let mut ord = Orderer::new(alg.system());
    let mut prev = normal_words(&xsys, 0);
    for d in 1..=n {
        let words = normal_words(&xsys, d);
        let row_of: BTreeMap<&Word, usize> = prev.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let nrow = prev.len();

        // derivative images of every degree-d word, as matrix columns
        let mut a: Vec<Vec<QFraction>> = alloc::vec![alloc::vec![QFraction::zero(); words.len()]; dim as usize * nrow];
        for (c, w) in words.iter().enumerate() {
            let xw = NCPoly::from_word(&xsys, w, QScalar::one())?;
            for j in 0..dim {
                let img = i_derivative(&alg, space, j, &xw, &mut ord);
                for (w2, v) in img.terms() {
                    let r = *row_of.get(w2).ok_or_else(|| Error::Invalid("derivative changed degree".to_string()))?;
                    a[j as usize * nrow + r][c] = QFraction::from_scalar(v.clone());
                }
            }
        }

        // momentum products of the degree d-1 part
        let mut rhs_by_v: BTreeMap<Word, Vec<QFraction>> = BTreeMap::new();
        for j in 0..dim {
            for vp in &prev {
                let prod = p_product(kind.side, &psys, vp, j)?;
                for (r, wp) in prev.iter().enumerate() {
                    let c = series.coeff(wp, vp);
                    if c.is_zero() {
                        continue;
                    }
                    for (v, k) in &prod {
                        let rhs = rhs_by_v
                            .entry(v.clone())
                            .or_insert_with(|| alloc::vec![QFraction::zero(); dim as usize * nrow]);
                        let slot = &mut rhs[j as usize * nrow + r];
                        *slot = slot.add(&c.scale(k));
                    }
                }
            }
        }

        for v in &words {
            let rhs = rhs_by_v
                .remove(v)
                .unwrap_or_else(|| alloc::vec![QFraction::zero(); dim as usize * nrow]);
            let sol = linalg::solve(&a, &rhs, words.len()).map_err(|e| Error::Singular {
                degree: d,
                space: space.name().to_string(),
                kind: alloc::format!(
                    "{}{}",
                    kind,
                    match e {
                        SolveFailure::Underdetermined => ", underdetermined",
                        SolveFailure::Inconsistent => ", inconsistent",
                    }
                ),
            })?;
            for (w, c) in words.iter().zip(sol) {
                series.set(w.clone(), v.clone(), c);
            }
        }
        prev = words;
    }
    Ok(series)
}

/// Left eigenfunction `i∂^j ▷ u = u ⊛ p^j`.
pub fn solve_qexp(space: &SpaceSpec, calculus: crate::phasespace::Calculus, n: usize) -> Result<BiSeries> {
    solve(space, DerivKind::new(calculus, Side::Left), n)
}

/// Right eigenfunction `u ◁ i∂^j = p^j ⊛ u`.
pub fn solve_qexp_dual(space: &SpaceSpec, calculus: crate::phasespace::Calculus, n: usize) -> Result<BiSeries> {
    solve(space, DerivKind::new(calculus, Side::Right), n)
}

/// Nonzero components of `LHS − RHS` of the eigenvalue equation, through
/// coordinate degree `N − 1`, keyed by `(j, x-word, p-word)`. Each term is
/// pushed through a freshly built derivative action and momentum product.
pub fn residual(space: &SpaceSpec, kind: DerivKind, u: &BiSeries) -> Result<BTreeMap<(u8, Word, Word), QFraction>> {
    let n = u.max_degree;
    let psys = u.psys.clone();
    let mut out: BTreeMap<(u8, Word, Word), QFraction> = BTreeMap::new();
    let mut acc = |key: (u8, Word, Word), c: QFraction| {
        let e = out.entry(key).or_insert_with(QFraction::zero);
        *e = e.add(&c);
    };
    for j in 0..space.ngens() as u8 {
        for ((x, p), c) in &u.terms {
            if !x.is_empty() && x.len() <= n {
                let xw = NCPoly::from_word(&space.algebra, x, QScalar::one())?;
                let img = crate::phasespace::derivative_action(space, kind, j, &xw)?.scale(&QScalar::i());
                for (w2, k) in img.terms() {
                    acc((j, w2.clone(), p.clone()), c.scale(k));
                }
            }
            if x.len() < n {
                let pv = NCPoly::from_word(&psys, p, QScalar::one())?;
                let pj: NCPoly = NCPoly::generator(&psys, j);
                let prod = match kind.side {
                    Side::Left => pv.ncmul(&pj)?,
                    Side::Right => pj.ncmul(&pv)?,
                };
                for (v2, k) in prod.terms() {
                    acc((j, x.clone(), v2.clone()), -c.scale(k));
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `exp(−i Σ x^l g_{lm} p^m)` at `q = 1` through total degree `n` in each
/// grading, keyed by the coordinate and momentum multidegrees.
pub fn classical_exponential(space: &SpaceSpec, n: usize) -> BTreeMap<(Multidegree, Multidegree), GaussRat> {
    let dim = space.ngens();
    let mut l: CommPoly<QScalar> = CommPoly::zero(2 * dim);
    for a in 0..dim {
        for b in 0..dim {
            let g = space.metric_inverse[a][b].at_one();
            if g.is_zero() {
                continue;
            }
            let mut e = alloc::vec![0u32; 2 * dim];
            e[a] += 1;
            e[dim + b] += 1;
            l.add_term(e, QScalar::constant(g));
        }
    }
    let minus_i = -QScalar::i();
    let mut power = CommPoly::constant(2 * dim, QScalar::one());
    let mut out = BTreeMap::new();
    let mut factorial = BigInt::from(1);
    for d in 0..=n {
        if d > 0 {
            power = power.mul(&l).scale(&minus_i);
            factorial *= d;
        }
        for (e, c) in power.terms() {
            let v = c.at_one().scale(&BigRational::new(1.into(), factorial.clone()));
            out.insert((e[..dim].to_vec(), e[dim..].to_vec()), v);
        }
    }
    out
}
