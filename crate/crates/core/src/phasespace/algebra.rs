use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::{NCPoly, Orderer, RewriteSystem, Rule, SpaceSpec, Word};
use crate::ring::Coeff;
use crate::scalar::QScalar;

/// Which line of the momentum–position Leibniz rule is used: the unhatted
/// calculus carries `k·R̂⁻¹` and `g`, the hatted one `k⁻¹·R̂` and `ḡ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Calculus {
    Unhatted,
    Hatted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One of the four derivative actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivKind {
    pub calculus: Calculus,
    pub side: Side,
}

impl DerivKind {
    pub const ALL: [DerivKind; 4] = [
        DerivKind::new(Calculus::Unhatted, Side::Left),
        DerivKind::new(Calculus::Unhatted, Side::Right),
        DerivKind::new(Calculus::Hatted, Side::Left),
        DerivKind::new(Calculus::Hatted, Side::Right),
    ];

    pub const fn new(calculus: Calculus, side: Side) -> Self {
        DerivKind { calculus, side }
    }
}

impl fmt::Display for DerivKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.calculus {
            Calculus::Unhatted => "unhatted",
            Calculus::Hatted => "hatted",
        };
        let s = match self.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        write!(f, "{} {}", c, s)
    }
}

/// Normal-form convention of the phase-space algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordering {
    /// Coordinates left of momenta.
    XP,
    /// Momenta left of coordinates.
    PX,
}

/// Coordinates and momenta of one space with the cross rules of one
/// calculus.
#[derive(Clone, Debug)]
pub struct PhaseAlgebra {
    n: usize,
    calculus: Calculus,
    order: Ordering,
    space: String,
    system: Arc<RewriteSystem>,
}

fn momentum_label(x: &str) -> String {
    match x.strip_prefix('X') {
        Some(rest) => alloc::format!("P{}", rest),
        None => alloc::format!("P{}", x),
    }
}

impl PhaseAlgebra {
    pub fn new(space: &SpaceSpec, calculus: Calculus, order: Ordering) -> Result<Self> {
        let rm = space
            .rmatrix
            .as_ref()
            .ok_or_else(|| Error::MissingRMatrix(space.name().to_string()))?;
        let k = space
            .k_const
            .as_ref()
            .ok_or_else(|| Error::MissingRMatrix(space.name().to_string()))?;
        let k_inv = k
            .inv_monomial()
            .ok_or_else(|| Error::Invalid("k must be a nonzero monomial".to_string()))?;
        let n = space.ngens();
        let (xo, po) = match order {
            Ordering::XP => (0usize, n),
            Ordering::PX => (n, 0usize),
        };
        let xl = |i: usize| (xo + i) as u8;
        let pl = |i: usize| (po + i) as u8;

        let mut labels = alloc::vec![String::new(); 2 * n];
        for (i, l) in space.labels().iter().enumerate() {
            labels[xo + i] = l.clone();
            labels[po + i] = momentum_label(l);
        }

        let mut rules = Vec::new();
        for r in space.algebra.rules() {
            let shift = |w: &Word, f: &dyn Fn(usize) -> u8| -> Word { w.iter().map(|&g| f(g as usize)).collect() };
            rules.push(Rule {
                lhs: [xl(r.lhs[0] as usize), xl(r.lhs[1] as usize)],
                rhs: r.rhs.iter().map(|(w, c)| (shift(w, &xl), c.clone())).collect(),
            });
            rules.push(Rule {
                lhs: [pl(r.lhs[0] as usize), pl(r.lhs[1] as usize)],
                rhs: r.rhs.iter().map(|(w, c)| (shift(w, &pl), c.clone())).collect(),
            });
        }

        let metric = match calculus {
            Calculus::Unhatted => &space.metric,
            Calculus::Hatted => &space.metric_hat,
        };
        let i = QScalar::i();
        for a in 0..n {
            for b in 0..n {
                let mut rhs: Vec<(Word, QScalar)> = Vec::new();
                for c in 0..n {
                    for d in 0..n {
                        let (a8, b8, c8, d8) = (a as u8, b as u8, c as u8, d as u8);
                        let coeff = match (order, calculus) {
                            (Ordering::XP, Calculus::Unhatted) => k * rm.rhat_inv(a8, b8, c8, d8),
                            (Ordering::XP, Calculus::Hatted) => &k_inv * rm.rhat(a8, b8, c8, d8),
                            (Ordering::PX, Calculus::Unhatted) => &k_inv * rm.rhat(a8, b8, c8, d8),
                            (Ordering::PX, Calculus::Hatted) => k * rm.rhat_inv(a8, b8, c8, d8),
                        };
                        if coeff.is_zero() {
                            continue;
                        }
                        match order {
                            // P^a X^b → coeff · X^c P^d
                            Ordering::XP => rhs.push((alloc::vec![xl(c), pl(d)], coeff)),
                            // X^a P^b → coeff · (P^c X^d − i·g^{cd})
                            Ordering::PX => {
                                if !metric[c][d].is_zero() {
                                    rhs.push((Word::new(), -&(&(&coeff * &i) * &metric[c][d])));
                                }
                                rhs.push((alloc::vec![pl(c), xl(d)], coeff));
                            }
                        }
                    }
                }
                let lhs = match order {
                    Ordering::XP => {
                        if !metric[a][b].is_zero() {
                            rhs.push((Word::new(), &i * &metric[a][b]));
                        }
                        [pl(a), xl(b)]
                    }
                    Ordering::PX => [xl(a), pl(b)],
                };
                let mut merged: BTreeMap<Word, QScalar> = BTreeMap::new();
                for (w, c) in rhs {
                    let e = merged.entry(w).or_insert_with(QScalar::zero);
                    *e += &c;
                }
                rules.push(Rule {
                    lhs,
                    rhs: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
                });
            }
        }
        let system = RewriteSystem::new(labels, rules, true)?;
        Ok(PhaseAlgebra {
            n,
            calculus,
            order,
            space: space.name().to_string(),
            system: Arc::new(system),
        })
    }

    pub fn system(&self) -> &Arc<RewriteSystem> {
        &self.system
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    pub fn ordering(&self) -> Ordering {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Phase-algebra index of coordinate `i`.
    pub fn x(&self, i: u8) -> u8 {
        match self.order {
            Ordering::XP => i,
            Ordering::PX => i + self.n as u8,
        }
    }

    /// Phase-algebra index of momentum `i`.
    pub fn p(&self, i: u8) -> u8 {
        match self.order {
            Ordering::XP => i + self.n as u8,
            Ordering::PX => i,
        }
    }

    pub fn is_momentum(&self, g: u8) -> bool {
        match self.order {
            Ordering::XP => g as usize >= self.n,
            Ordering::PX => (g as usize) < self.n,
        }
    }

    /// Position of a phase-algebra generator within its own family.
    pub fn base_index(&self, g: u8) -> u8 {
        (g as usize % self.n) as u8
    }

    /// Normal form of a raw word sum over coordinates and momenta.
    pub fn normal_order<C: Coeff>(&self, raw: &[(Word, C)]) -> Result<NCPoly<C>> {
        NCPoly::from_raw(&self.system, raw)
    }

    /// Carries a coordinate-algebra element into the phase algebra.
    pub fn embed_x<C: Coeff>(&self, f: &NCPoly<C>) -> NCPoly<C> {
        let terms: Vec<(Word, C)> = f
            .terms()
            .iter()
            .map(|(w, c)| (w.iter().map(|&g| self.x(g)).collect::<Word>(), c.clone()))
            .collect();
        NCPoly::from_raw(&self.system, &terms).expect("embedded words are valid")
    }

    /// Part of `f` free of momenta, carried back to the coordinate algebra.
    pub fn coordinate_part<C: Coeff>(&self, space: &SpaceSpec, f: &NCPoly<C>) -> NCPoly<C> {
        let raw: Vec<(Word, C)> = f
            .terms()
            .iter()
            .filter(|(w, _)| w.iter().all(|&g| !self.is_momentum(g)))
            .map(|(w, c)| (w.iter().map(|&g| self.base_index(g)).collect(), c.clone()))
            .collect();
        NCPoly::from_raw(&space.algebra, &raw).expect("coordinate words are valid")
    }

    /// `P^k·f` (left, needs XP ordering) or `f·P^k` (right, needs PX
    /// ordering), reduced to its momentum-free remainder.
    fn remainder<C: Coeff>(&self, space: &SpaceSpec, k: u8, f: &NCPoly<C>, ord: &mut Orderer<'_>) -> NCPoly<C> {
        let pk: NCPoly<C> = NCPoly::generator(&self.system, self.p(k));
        let fx = self.embed_x(f);
        let prod = match self.order {
            Ordering::XP => pk.ncmul_with(&fx, ord),
            Ordering::PX => fx.ncmul_with(&pk, ord),
        };
        self.coordinate_part(space, &prod)
    }

    /// Derivative action along this algebra's natural side: left actions
    /// in XP ordering, right actions in PX ordering. With `∂ = −i·P`, the
    /// left action is `−i` times the remainder of `P^k·f`; the right action
    /// is `+i` times the remainder of `f·P^k`, which makes it agree with the
    /// ordinary derivative at `q = 1`.
    pub fn derivative<C: Coeff>(&self, space: &SpaceSpec, k: u8, f: &NCPoly<C>) -> NCPoly<C> {
        let mut ord = Orderer::new(&self.system);
        self.derivative_with(space, k, f, &mut ord)
    }

    pub fn derivative_with<C: Coeff>(
        &self,
        space: &SpaceSpec,
        k: u8,
        f: &NCPoly<C>,
        ord: &mut Orderer<'_>,
    ) -> NCPoly<C> {
        let rem = self.remainder(space, k, f, ord);
        let factor = match self.order {
            Ordering::XP => -QScalar::i(),
            Ordering::PX => QScalar::i(),
        };
        rem.scale(&C::from(factor))
    }

    pub fn space_name(&self) -> &str {
        &self.space
    }
}

/// Normal form of a mixed coordinate/momentum word sum in XP ordering.
pub fn phase_normal_order<C: Coeff>(
    space: &SpaceSpec,
    calculus: Calculus,
    raw: &[(Word, C)],
) -> Result<NCPoly<C>> {
    PhaseAlgebra::new(space, calculus, Ordering::XP)?.normal_order(raw)
}

/// `∂^k ▷ f` or `f ◁ ∂^k` for the given calculus.
pub fn derivative_action<C: Coeff>(space: &SpaceSpec, kind: DerivKind, k: u8, f: &NCPoly<C>) -> Result<NCPoly<C>> {
    let order = match kind.side {
        Side::Left => Ordering::XP,
        Side::Right => Ordering::PX,
    };
    let alg = PhaseAlgebra::new(space, kind.calculus, order)?;
    Ok(alg.derivative(space, k, f))
}

/// Copy of the coordinate algebra on the momentum symbols.
pub fn momentum_system(space: &SpaceSpec) -> Result<Arc<RewriteSystem>> {
    let labels = space.labels().iter().map(|l| momentum_label(l)).collect();
    Ok(Arc::new(RewriteSystem::new(labels, space.algebra.rules().to_vec(), true)?))
}
