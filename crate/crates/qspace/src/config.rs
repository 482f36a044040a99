//! TOML form of a space definition.
//!
//! Scalars are written in their text form and words as lists of generator
//! labels, so a file reads like the tables it came from:
//!
//! ```toml
//! kind = "quantum_plane"
//! labels = ["X2", "X1"]
//!
//! [[rules]]
//! lhs = ["X1", "X2"]
//! rhs = [{ word = ["X2", "X1"], coeff = "q" }]
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use qspace_core::ncalg::{RealCoords, RewriteSystem, Rule};
use qspace_core::phasespace::{REntry, RMatrix};
use qspace_core::{preset, QFraction, QScalar, SpaceKind, SpaceSpec};

/// Directory searched for `<space>.toml` overrides.
pub const CONFIG_DIR_ENV: &str = "QSPACE_CONFIG_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermConfig {
    pub word: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleConfig {
    pub lhs: [String; 2],
    pub rhs: Vec<TermConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageConfig {
    pub generator: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealCoordsConfig {
    pub labels: Vec<String>,
    pub to_x: Vec<Vec<ImageConfig>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct REntryConfig {
    /// Generator labels `k, l, m, n` of the entry `R̂^{kl}_{mn}`.
    pub index: [String; 4],
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RMatrixConfig {
    pub rhat: Vec<REntryConfig>,
    pub rhat_inv: Vec<REntryConfig>,
    #[serde(default)]
    pub eigenvalues: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceConfig {
    pub kind: String,
    pub labels: Vec<String>,
    pub kappa_bosonic: String,
    pub kappa_grassmann: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_const: Option<String>,
    pub lattice_labels: Vec<String>,
    /// Generator label per lattice coordinate, `""` where there is none.
    pub lattice_generators: Vec<String>,
    pub lattice_steps: Vec<i32>,
    pub lattice_prefactor: String,
    pub metric: Vec<Vec<String>>,
    pub metric_inverse: Vec<Vec<String>>,
    pub metric_hat: Vec<Vec<String>>,
    pub rules: Vec<RuleConfig>,
    pub conjugation: Vec<Vec<ImageConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_coords: Option<RealCoordsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<RMatrixConfig>,
}

fn matrix_text(m: &[Vec<QScalar>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn scalar(s: &str) -> anyhow::Result<QScalar> {
    s.parse::<QScalar>().map_err(|e| anyhow!("scalar `{}`: {}", s, e))
}

fn fraction(s: &str) -> anyhow::Result<QFraction> {
    s.parse::<QFraction>().map_err(|e| anyhow!("fraction `{}`: {}", s, e))
}

fn matrix(m: &[Vec<String>]) -> anyhow::Result<Vec<Vec<QScalar>>> {
    m.iter().map(|r| r.iter().map(|c| scalar(c)).collect()).collect()
}

impl SpaceConfig {
    pub fn from_spec(s: &SpaceSpec) -> Self {
        let l = |g: u8| s.labels()[g as usize].clone();
        let word = |w: &[u8]| w.iter().map(|&g| l(g)).collect::<Vec<_>>();
        let entries = |es: Vec<REntry>| {
            es.into_iter()
                .map(|((k, ll), (m, n), v)| REntryConfig {
                    index: [l(k), l(ll), l(m), l(n)],
                    value: v.to_string(),
                })
                .collect()
        };
        SpaceConfig {
            kind: s.name().to_string(),
            labels: s.labels().to_vec(),
            kappa_bosonic: s.kappa_bosonic.to_string(),
            kappa_grassmann: s.kappa_grassmann.to_string(),
            k_const: s.k_const.as_ref().map(|k| k.to_string()),
            lattice_labels: s.lattice_labels.clone(),
            lattice_generators: s
                .lattice_generators
                .iter()
                .map(|g| g.map(l).unwrap_or_default())
                .collect(),
            lattice_steps: s.lattice_steps.clone(),
            lattice_prefactor: s.lattice_prefactor.to_string(),
            metric: matrix_text(&s.metric),
            metric_inverse: matrix_text(&s.metric_inverse),
            metric_hat: matrix_text(&s.metric_hat),
            rules: s
                .algebra
                .rules()
                .iter()
                .map(|r| RuleConfig {
                    lhs: [l(r.lhs[0]), l(r.lhs[1])],
                    rhs: r
                        .rhs
                        .iter()
                        .map(|(w, c)| TermConfig {
                            word: word(w),
                            coeff: c.to_string(),
                        })
                        .collect(),
                })
                .collect(),
            conjugation: s
                .conjugation
                .iter()
                .map(|img| {
                    img.iter()
                        .map(|(g, c)| ImageConfig {
                            generator: l(*g),
                            coeff: c.to_string(),
                        })
                        .collect()
                })
                .collect(),
            real_coords: s.real_coords.as_ref().map(|rc| RealCoordsConfig {
                labels: rc.labels.clone(),
                to_x: rc
                    .to_x
                    .iter()
                    .map(|img| {
                        img.iter()
                            .map(|(g, c)| ImageConfig {
                                generator: l(*g),
                                coeff: c.to_string(),
                            })
                            .collect()
                    })
                    .collect(),
            }),
            rmatrix: s.rmatrix.as_ref().map(|r| RMatrixConfig {
                rhat: entries(r.entries()),
                rhat_inv: entries(r.inverse_entries()),
                eigenvalues: r.eigenvalues().iter().map(|e| e.to_string()).collect(),
            }),
        }
    }

    pub fn to_spec(&self) -> anyhow::Result<SpaceSpec> {
        let kind = SpaceKind::from_name(&self.kind).ok_or_else(|| anyhow!("unknown space kind `{}`", self.kind))?;
        let labels = self.labels.clone();
        let gen = |t: &str| -> anyhow::Result<u8> {
            labels
                .iter()
                .position(|l| l == t)
                .map(|i| i as u8)
                .ok_or_else(|| anyhow!("unknown generator `{}`", t))
        };
        let word = |w: &[String]| w.iter().map(|t| gen(t)).collect::<anyhow::Result<Vec<u8>>>();
        let images = |imgs: &[Vec<ImageConfig>]| -> anyhow::Result<Vec<Vec<(u8, QScalar)>>> {
            imgs.iter()
                .map(|img| img.iter().map(|i| Ok((gen(&i.generator)?, scalar(&i.coeff)?))).collect())
                .collect()
        };
        let mut rules = Vec::new();
        for r in &self.rules {
            rules.push(Rule {
                lhs: [gen(&r.lhs[0])?, gen(&r.lhs[1])?],
                rhs: r
                    .rhs
                    .iter()
                    .map(|t| Ok((word(&t.word)?, scalar(&t.coeff)?)))
                    .collect::<anyhow::Result<_>>()?,
            });
        }
        let algebra = Arc::new(RewriteSystem::new(labels.clone(), rules, true)?);
        let real_coords = match &self.real_coords {
            None => None,
            Some(rc) => Some(RealCoords {
                labels: rc.labels.clone(),
                to_x: rc
                    .to_x
                    .iter()
                    .map(|img| img.iter().map(|i| Ok((gen(&i.generator)?, fraction(&i.coeff)?))).collect())
                    .collect::<anyhow::Result<_>>()?,
            }),
        };
        let rmatrix = match &self.rmatrix {
            None => None,
            Some(r) => {
                let entries = |es: &[REntryConfig]| -> anyhow::Result<Vec<REntry>> {
                    es.iter()
                        .map(|e| {
                            let i = e.index.iter().map(|t| gen(t)).collect::<anyhow::Result<Vec<u8>>>()?;
                            Ok(((i[0], i[1]), (i[2], i[3]), scalar(&e.value)?))
                        })
                        .collect()
                };
                let eig = r.eigenvalues.iter().map(|e| scalar(e)).collect::<anyhow::Result<_>>()?;
                Some(RMatrix::new(labels.len(), &entries(&r.rhat)?, &entries(&r.rhat_inv)?, eig)?)
            }
        };
        let lattice_generators = self
            .lattice_generators
            .iter()
            .map(|g| if g.is_empty() { Ok(None) } else { gen(g).map(Some) })
            .collect::<anyhow::Result<_>>()?;
        let spec = SpaceSpec {
            kind,
            algebra,
            metric: matrix(&self.metric)?,
            metric_inverse: matrix(&self.metric_inverse)?,
            metric_hat: matrix(&self.metric_hat)?,
            conjugation: images(&self.conjugation)?,
            kappa_bosonic: scalar(&self.kappa_bosonic)?,
            kappa_grassmann: scalar(&self.kappa_grassmann)?,
            lattice_labels: self.lattice_labels.clone(),
            lattice_generators,
            lattice_steps: self.lattice_steps.clone(),
            lattice_prefactor: scalar(&self.lattice_prefactor)?,
            real_coords,
            rmatrix,
            k_const: self.k_const.as_deref().map(scalar).transpose()?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn to_toml(spec: &SpaceSpec) -> anyhow::Result<String> {
    Ok(toml::to_string(&SpaceConfig::from_spec(spec))?)
}

pub fn from_toml(text: &str) -> anyhow::Result<SpaceSpec> {
    let cfg: SpaceConfig = toml::from_str(text)?;
    cfg.to_spec()
}

fn override_path(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CONFIG_DIR_ENV)?;
    let p = Path::new(&dir).join(format!("{}.toml", name));
    p.is_file().then_some(p)
}

/// The space named `name`, read from the override directory when it holds
/// `<name>.toml` and taken from the presets otherwise.
pub fn load_space(name: &str) -> anyhow::Result<SpaceSpec> {
    let kind = SpaceKind::from_name(name).ok_or_else(|| {
        let known: Vec<_> = SpaceKind::ALL.iter().map(|k| k.name()).collect();
        anyhow!("unknown space `{}` (expected one of {})", name, known.join(", "))
    })?;
    match override_path(name) {
        None => Ok(preset(kind)),
        Some(p) => {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            let spec = from_toml(&text).with_context(|| format!("parsing {}", p.display()))?;
            if spec.kind != kind {
                bail!("{} declares kind `{}`", p.display(), spec.kind);
            }
            Ok(spec)
        }
    }
}
