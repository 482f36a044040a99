use core::fmt;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::comm::{star_product, CommPoly};
use super::poly::NCPoly;
use super::rewrite::{Orderer, RewriteSystem, Rule, Word};
use crate::error::{Error, Result};
use crate::linalg::inverse;
use crate::phasespace::RMatrix;
use crate::ring::{Coeff, Ring};
use crate::scalar::{QFraction, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceKind {
    QuantumPlane,
    Euclid3,
    Euclid4,
    Minkowski,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 4] = [
        SpaceKind::QuantumPlane,
        SpaceKind::Euclid3,
        SpaceKind::Euclid4,
        SpaceKind::Minkowski,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::QuantumPlane => "quantum_plane",
            SpaceKind::Euclid3 => "euclid3",
            SpaceKind::Euclid4 => "euclid4",
            SpaceKind::Minkowski => "minkowski",
        }
    }

    pub fn from_name(s: &str) -> Option<SpaceKind> {
        SpaceKind::ALL.iter().copied().find(|k| k.name() == s)
    }

    pub fn dim(self) -> usize {
        match self {
            SpaceKind::QuantumPlane => 2,
            SpaceKind::Euclid3 => 3,
            SpaceKind::Euclid4 | SpaceKind::Minkowski => 4,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Image of each generator under a linear map, as `(generator, coefficient)`
/// lists.
pub type LinearImages<C> = Vec<Vec<(u8, C)>>;

/// Self-conjugate coordinates `Y^i = Σ_j c_{ij} X^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCoords {
    pub labels: Vec<String>,
    pub to_x: LinearImages<QFraction>,
}

/// Everything that defines one quantum space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub algebra: Arc<RewriteSystem>,
    /// `g^{ij}` by generator position.
    pub metric: Vec<Vec<QScalar>>,
    /// `g_{ij}`, the matrix inverse of `metric`.
    pub metric_inverse: Vec<Vec<QScalar>>,
    /// Metric entering the inhomogeneous term of the hatted calculus.
    pub metric_hat: Vec<Vec<QScalar>>,
    pub conjugation: LinearImages<QScalar>,
    pub kappa_bosonic: QScalar,
    pub kappa_grassmann: QScalar,
    /// Names of the lattice coordinates in quasipoint order.
    pub lattice_labels: Vec<String>,
    /// Generator sampled by each lattice coordinate, where there is one.
    pub lattice_generators: Vec<Option<u8>>,
    pub lattice_steps: Vec<i32>,
    pub lattice_prefactor: QScalar,
    pub real_coords: Option<RealCoords>,
    pub rmatrix: Option<RMatrix>,
    pub k_const: Option<QScalar>,
}

impl SpaceSpec {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn ngens(&self) -> usize {
        self.algebra.ngens()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn gen_index(&self, label: &str) -> Result<u8> {
        self.algebra
            .index_of(label)
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))
    }

    /// Checks table shapes against the generator count.
    pub fn validate(&self) -> Result<()> {
        let n = self.ngens();
        let sq = |m: &Vec<Vec<QScalar>>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !sq(&self.metric) || !sq(&self.metric_inverse) || !sq(&self.metric_hat) {
            return Err(Error::Dimension("metric tables must be n x n".to_string()));
        }
        if self.conjugation.len() != n {
            return Err(Error::Dimension("conjugation needs one image per generator".to_string()));
        }
        if self.conjugation.iter().flatten().any(|(g, _)| *g as usize >= n) {
            return Err(Error::Dimension("conjugation image names an unknown generator".to_string()));
        }
        let m = self.lattice_labels.len();
        if self.lattice_steps.len() != m || self.lattice_generators.len() != m {
            return Err(Error::Dimension("lattice tables disagree in length".to_string()));
        }
        if let Some(r) = &self.rmatrix {
            if r.dim() != n {
                return Err(Error::Dimension("R-matrix dimension".to_string()));
            }
        }
        if let Some(rc) = &self.real_coords {
            if rc.labels.len() != n || rc.to_x.len() != n {
                return Err(Error::Dimension("real coordinates need one per generator".to_string()));
            }
        }
        Ok(())
    }

    pub fn generator<C: Coeff>(&self, g: u8) -> NCPoly<C> {
        NCPoly::generator(&self.algebra, g)
    }

    pub fn poly<C: Coeff>(&self, raw: &[(Word, C)]) -> Result<NCPoly<C>> {
        NCPoly::from_raw(&self.algebra, raw)
    }

    /// Each defining relation as the raw difference `lhs − rhs`.
    pub fn relation_differences(&self) -> Vec<Vec<(Word, QScalar)>> {
        self.algebra
            .rules()
            .iter()
            .map(|Rule { lhs, rhs }| {
                let mut v = alloc::vec![(lhs.to_vec(), QScalar::one())];
                v.extend(rhs.iter().map(|(w, c)| (w.clone(), -c)));
                v
            })
            .collect()
    }

    fn conj_images<C: Coeff>(&self) -> Vec<NCPoly<C>> {
        self.conjugation
            .iter()
            .map(|img| {
                let raw: Vec<(Word, C)> = img
                    .iter()
                    .map(|(g, c)| (alloc::vec![*g], C::from(c.clone())))
                    .collect();
                NCPoly::from_raw(&self.algebra, &raw).expect("validated conjugation table")
            })
            .collect()
    }

    /// Conjugation of a raw (not necessarily normal) word sum: antilinear
    /// and antimultiplicative, result normal-ordered.
    pub fn conjugate_raw<C: Coeff>(&self, raw: &[(Word, C)]) -> Result<NCPoly<C>> {
        let images = self.conj_images::<C>();
        let mut ord = Orderer::new(&self.algebra);
        let mut acc = NCPoly::zero(&self.algebra);
        for (w, c) in raw {
            let mut p = NCPoly::constant(&self.algebra, c.conj());
            for &g in w.iter().rev() {
                let img = images
                    .get(g as usize)
                    .ok_or_else(|| Error::UnknownSymbol(alloc::format!("generator #{}", g)))?;
                p = p.ncmul_with(img, &mut ord);
            }
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }

    pub fn conjugate<C: Coeff>(&self, f: &NCPoly<C>) -> Result<NCPoly<C>> {
        if !super::poly::same_system(f.system(), &self.algebra) {
            return Err(Error::SpaceMismatch);
        }
        let raw: Vec<(Word, C)> = f.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        self.conjugate_raw(&raw)
    }

    pub fn star_product<C: Coeff>(&self, f: &CommPoly<C>, g: &CommPoly<C>) -> Result<CommPoly<C>> {
        star_product(&self.algebra, f, g)
    }

    fn real(&self) -> Result<&RealCoords> {
        self.real_coords
            .as_ref()
            .ok_or_else(|| Error::UnsupportedSpace(self.name().to_string()))
    }

    /// The free algebra on the self-conjugate generators.
    pub fn real_system(&self) -> Result<Arc<RewriteSystem>> {
        Ok(Arc::new(RewriteSystem::free(self.real()?.labels.clone())))
    }

    /// `Y^i` written in the original generators.
    pub fn real_generator(&self, i: u8) -> Result<NCPoly<QFraction>> {
        let rc = self.real()?;
        let raw: Vec<(Word, QFraction)> = rc.to_x[i as usize]
            .iter()
            .map(|(g, c)| (alloc::vec![*g], c.clone()))
            .collect();
        NCPoly::from_raw(&self.algebra, &raw)
    }

    /// Matrix expressing each `X^j` in the `Y^i`: `X^j = Σ_i m[j][i] Y^i`.
    pub fn x_in_real(&self) -> Result<Vec<Vec<QFraction>>> {
        let rc = self.real()?;
        let n = self.ngens();
        let mut m = alloc::vec![alloc::vec![QFraction::zero(); n]; n];
        for (i, img) in rc.to_x.iter().enumerate() {
            for (g, c) in img {
                m[i][*g as usize] = m[i][*g as usize].add(c);
            }
        }
        // rows give Y in X; the inverse gives X in Y
        inverse(&m).ok_or_else(|| Error::Invalid("real coordinates are not independent".to_string()))
    }

    /// Rewrites an element in the self-conjugate generators. The result
    /// lives in the free algebra on `Y^i`: each `X^j` is replaced by its
    /// linear expression in the `Y`, without reordering.
    pub fn to_real_coords(&self, f: &NCPoly<QFraction>) -> Result<NCPoly<QFraction>> {
        let inv = self.x_in_real()?;
        let ysys = self.real_system()?;
        let n = self.ngens();
        let mut out: Vec<(Word, QFraction)> = Vec::new();
        for (w, c) in f.terms() {
            let mut partial: Vec<(Word, QFraction)> = alloc::vec![(Word::new(), c.clone())];
            for &g in w {
                let mut next = Vec::new();
                for (pw, pc) in &partial {
                    for i in 0..n {
                        let d = &inv[g as usize][i];
                        if d.is_zero() {
                            continue;
                        }
                        let mut nw = pw.clone();
                        nw.push(i as u8);
                        next.push((nw, pc.mul(d)));
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        NCPoly::from_raw(&ysys, &out)
    }

    /// Inverse of [`to_real_coords`](Self::to_real_coords): substitutes the
    /// `Y^i` and normal-orders in the original generators.
    pub fn from_real_coords(&self, f: &NCPoly<QFraction>) -> Result<NCPoly<QFraction>> {
        let n = self.ngens();
        if f.system().ngens() != n {
            return Err(Error::SpaceMismatch);
        }
        let ys: Vec<NCPoly<QFraction>> = (0..n as u8)
            .map(|i| self.real_generator(i))
            .collect::<Result<_>>()?;
        let mut ord = Orderer::new(&self.algebra);
        let mut acc = NCPoly::zero(&self.algebra);
        for (w, c) in f.terms() {
            let mut p = NCPoly::constant(&self.algebra, c.clone());
            for &g in w {
                p = p.ncmul_with(&ys[g as usize], &mut ord);
            }
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }
}
