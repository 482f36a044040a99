//! Lattice spec files and CSV samples.
//!
//! A spec file is TOML:
//!
//! ```toml
//! space = "euclid3"
//! q = 1.5
//! vmin = -4          # or one value per coordinate
//! vmax = 2
//! branch = "riemann" # or "verbatim"
//! sampling = "generators"
//! alpha = ["1", "1", "1"]
//! ```
//!
//! Sample files have the header `s_1,..,s_n,v_1,..,v_n,re,im`, one row per
//! quasipoint.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use qspace_core::lattice::{LatticeFunction, LatticeSpec, NegBranch, Quasipoint, Sampling, Window};
use qspace_core::QScalar;

use crate::config::load_space;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Range {
    Uniform(i32),
    PerCoordinate(Vec<i32>),
}

impl Range {
    fn expand(&self, n: usize) -> anyhow::Result<Vec<i32>> {
        match self {
            Range::Uniform(v) => Ok(vec![*v; n]),
            Range::PerCoordinate(v) if v.len() == n => Ok(v.clone()),
            Range::PerCoordinate(v) => bail!("expected {} exponent bounds, got {}", n, v.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub space: String,
    pub q: f64,
    pub vmin: Range,
    pub vmax: Range,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    /// Sign sectors kept; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sectors: Option<Vec<Vec<i8>>>,
}

impl LatticeConfig {
    pub fn to_spec(&self) -> anyhow::Result<LatticeSpec> {
        let space = load_space(&self.space)?;
        let n = space.lattice_steps.len();
        let mut spec = LatticeSpec::new(space, self.q, 0, 0)?;
        let mut window = Window::symmetric(n, 0, 0);
        window.vmin = self.vmin.expand(n)?;
        window.vmax = self.vmax.expand(n)?;
        if let Some(s) = &self.sectors {
            window.sectors = s.clone();
        }
        spec = spec.with_window(window)?;
        if let Some(b) = &self.branch {
            spec = spec.with_branch(NegBranch::from_name(b).ok_or_else(|| anyhow!("unknown branch `{}`", b))?);
        }
        if let Some(s) = &self.sampling {
            spec = spec.with_sampling(Sampling::from_name(s).ok_or_else(|| anyhow!("unknown sampling `{}`", s))?)?;
        }
        if let Some(a) = &self.alpha {
            let alpha = a
                .iter()
                .map(|t| t.parse::<QScalar>().map_err(|e| anyhow!("alpha `{}`: {}", t, e)))
                .collect::<anyhow::Result<Vec<_>>>()?;
            spec = spec.with_alpha(alpha)?;
        }
        Ok(spec)
    }
}

pub fn read_spec(path: &Path) -> anyhow::Result<LatticeSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg: LatticeConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    cfg.to_spec()
}

pub fn header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=n).map(|j| format!("s_{}", j)).collect();
    h.extend((1..=n).map(|j| format!("v_{}", j)));
    h.push("re".into());
    h.push("im".into());
    h
}

pub fn read_samples<R: Read>(spec: Arc<LatticeSpec>, input: R) -> anyhow::Result<LatticeFunction<Complex64>> {
    let n = spec.dim();
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let expected = header(n);
    let got: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
    if got != expected {
        bail!("expected CSV header `{}`, got `{}`", expected.join(","), got.join(","));
    }
    let mut f = LatticeFunction::zero(spec.clone());
    let mut seen = BTreeSet::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = row + 2;
        let num = |i: usize| -> anyhow::Result<f64> {
            rec[i]
                .parse::<f64>()
                .with_context(|| format!("line {}: column {} is not a number", line, expected[i]))
        };
        let int = |i: usize| -> anyhow::Result<i32> {
            rec[i]
                .parse::<i32>()
                .with_context(|| format!("line {}: column {} is not an integer", line, expected[i]))
        };
        let mut signs = Vec::with_capacity(n);
        for j in 0..n {
            match int(j)? {
                1 => signs.push(1),
                -1 => signs.push(-1),
                s => bail!("line {}: sign {} is not +1 or -1", line, s),
            }
        }
        let exps = (0..n).map(|j| int(n + j)).collect::<anyhow::Result<Vec<_>>>()?;
        let p = Quasipoint::new(signs, exps);
        if !seen.insert(p.clone()) {
            bail!("line {}: quasipoint {} listed twice", line, p);
        }
        let v = Complex64::new(num(2 * n)?, num(2 * n + 1)?);
        f.set(p.clone(), v)
            .map_err(|e| anyhow!("line {}: {} {}", line, p, e))?;
    }
    Ok(f)
}

/// Writes every sample in ascending quasipoint order. Values are printed in
/// shortest round-trip form.
pub fn write_samples<W: Write>(f: &LatticeFunction<Complex64>, out: W) -> anyhow::Result<()> {
    let n = f.spec().dim();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(n))?;
    for (p, v) in f.samples() {
        let mut rec: Vec<String> = p.signs.iter().map(|s| s.to_string()).collect();
        rec.extend(p.exps.iter().map(|e| e.to_string()));
        rec.push(format!("{:?}", v.re));
        rec.push(format!("{:?}", v.im));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
