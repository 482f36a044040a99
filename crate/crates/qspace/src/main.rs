use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use qspace::config::{load_space, to_toml};
use qspace::csvio::{read_samples, read_spec};
use qspace::expr::{self, Evaluator};
use qspace::suites::run_suite;
use qspace_core::grassmann::{GrassmannSpace, Variant};
use qspace_core::lattice::{combined_integral, integrate};
use qspace_core::ncalg::dequantize;
use qspace_core::phasespace::{Calculus, DerivKind, Side};
use qspace_core::qexp::solve;

#[derive(Parser)]
#[command(name = "qspace", version, about = "Exact computations on q-deformed quantum spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    L,
    R,
    Hl,
    Hr,
}

impl Kind {
    fn deriv(self) -> DerivKind {
        match self {
            Kind::L => DerivKind::new(Calculus::Unhatted, Side::Left),
            Kind::R => DerivKind::new(Calculus::Unhatted, Side::Right),
            Kind::Hl => DerivKind::new(Calculus::Hatted, Side::Left),
            Kind::Hr => DerivKind::new(Calculus::Hatted, Side::Right),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal-order an expression.
    NormalOrder {
        #[arg(long)]
        space: String,
        expr: String,
    },
    /// Star product of two commutative functions.
    Star {
        #[arg(long)]
        space: String,
        f: String,
        g: String,
    },
    /// Momentum eigenfunction through the given degree.
    Qexp {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Derivative the eigenvalue equation uses.
        #[arg(long, value_enum, default_value = "l")]
        kind: Kind,
    },
    /// Sesquilinear forms of the antisymmetrized sector.
    Grassmann {
        #[command(subcommand)]
        cmd: GrassmannCmd,
    },
    /// Integrate CSV samples over a lattice.
    Integrate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Report the combined integral 1 or 2 instead.
        #[arg(long)]
        combined: Option<u8>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1.3)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a space definition as TOML.
    ExportConfig {
        #[arg(long)]
        space: String,
    },
}

#[derive(Subcommand)]
enum GrassmannCmd {
    /// Print one form table.
    Form {
        #[arg(long)]
        space: String,
        /// L, Lbar, R or Rbar.
        #[arg(long)]
        variant: String,
        #[arg(long)]
        primed: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::NormalOrder { space, expr: src } => {
            let s = load_space(&space)?;
            println!("{}", expr::normal_order(&src, &s)?);
        }
        Cmd::Star { space, f, g } => {
            let s = load_space(&space)?;
            let mut parts = Vec::new();
            for src in [&f, &g] {
                let e = expr::parse(src, &s)?;
                let v = Evaluator::new(&s, &e)?.eval(&e)?;
                if v.system() != &s.algebra {
                    bail!("`{}` is not a coordinate function", src);
                }
                parts.push(dequantize(&v));
            }
            let prod = s.star_product(&parts[0], &parts[1])?;
            println!("{}", prod.display_with(s.labels()));
        }
        Cmd::Qexp { space, degree, kind } => {
            let s = load_space(&space)?;
            print!("{}", solve(&s, kind.deriv(), degree)?);
        }
        Cmd::Grassmann {
            cmd: GrassmannCmd::Form { space, variant, primed },
        } => {
            let s = load_space(&space)?;
            let v = Variant::from_name(&variant).ok_or_else(|| anyhow!("unknown variant `{}`", variant))?;
            let g = GrassmannSpace::preset(s.kind);
            let name = |c: char, mask: u32| match g.subset_name(mask).as_str() {
                "'" => format!("{}'", c),
                s => format!("{}_{{{}}}", c, s),
            };
            for t in g.table(v, primed) {
                println!("{}: {} {}", t.coeff, name('f', t.f), name('g', t.g));
            }
        }
        Cmd::Integrate { spec, input, combined } => {
            let spec = Arc::new(read_spec(&spec)?);
            let file = File::open(&input).with_context(|| format!("opening {}", input.display()))?;
            let f = read_samples(spec.clone(), BufReader::new(file))?;
            let v = match combined {
                Some(which) => combined_integral(&f, which)?,
                None => integrate(&f),
            };
            println!("space: {}", spec.space.name());
            println!("window: {}", spec.window);
            println!("branch: {}", spec.branch.name());
            println!("re: {:?}", v.re);
            println!("im: {:?}", v.im);
        }
        Cmd::Verify { suite, q, seed, json } => {
            let report = run_suite(&suite, q, seed)?;
            print!("{}", report.summary());
            if let Some(path) = json {
                std::fs::write(&path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            return Ok(report.passed());
        }
        Cmd::ExportConfig { space } => {
            print!("{}", to_toml(&load_space(&space)?)?);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
