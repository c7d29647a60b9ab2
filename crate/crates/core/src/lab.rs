//! Runs a named convergence sweep from a [`SweepConfig`].
//!
//! Inputs not named in the configuration are drawn from the configuration
//! seed, so a configuration fully determines the sweep.

use crate::channel::{random_channel, KrausChannel};
use crate::convergence::{
    compressed_ladder, continuity_on_energy_ball, coordinate_ladder, sweep_example2, sweep_lemma1,
    sweep_lemma3, sweep_lemma4, sweep_lemma8, sweep_theorem1_proof, GibbsFamily, Sweep, SweepRecord,
};
use crate::io::{read_channel, read_hermitian, read_positive, read_state, SweepConfig};
use crate::operator::{DensityOperator, PositiveOperator};
use crate::random;
use crate::suites::{item_seed, lemma7_triple, LEMMA7_GRID};
use crate::{convergence, Error, Result};

pub const SWEEPS: &[&str] = &[
    "lemma1",
    "lemma3",
    "lemma4",
    "lemma7",
    "lemma8",
    "theorem1-proof",
    "example2",
    "energy-ball",
];

const DEFAULT_DIM: usize = 4;
const DEFAULT_KRAUS: usize = 3;
const DEFAULT_OSCILLATOR: usize = 16;
const DEFAULT_LEMMA7_COUNT: usize = 500;

/// Independent sub-seeds for the channel, state and the two operators.
fn sub_seed(cfg: &SweepConfig, slot: u64) -> u64 {
    item_seed(cfg.seed, slot as usize)
}

fn dim_in(cfg: &SweepConfig) -> usize {
    cfg.random.dim_in.unwrap_or(DEFAULT_DIM)
}

fn channel(cfg: &SweepConfig, dim: Option<usize>) -> Result<KrausChannel> {
    if let Some(p) = &cfg.channel {
        return read_channel(p);
    }
    let d = dim.unwrap_or_else(|| dim_in(cfg));
    let dout = cfg.random.dim_out.unwrap_or(d);
    let nk = cfg.random.n_kraus.unwrap_or(DEFAULT_KRAUS.max(d.div_ceil(dout)));
    random_channel(d, dout, nk, sub_seed(cfg, 0))
}

fn state(cfg: &SweepConfig, d: usize) -> Result<DensityOperator> {
    match &cfg.state {
        Some(p) => read_state(p),
        None => Ok(random::density(d, cfg.random.rank.unwrap_or(d).min(d), sub_seed(cfg, 1))),
    }
}

fn positive(cfg: &SweepConfig, path: &Option<std::path::PathBuf>, d: usize, slot: u64, full: bool) -> Result<PositiveOperator> {
    match path {
        Some(p) => read_positive(p),
        None => {
            let rank = if full { d } else { cfg.random.rank.unwrap_or(d).min(d) };
            Ok(random::density(d, rank, sub_seed(cfg, slot)).positive().clone())
        }
    }
}

fn ranks(cfg: &SweepConfig, d: usize) -> Vec<usize> {
    cfg.ranks.clone().unwrap_or_else(|| (1..=d).collect())
}

fn lemma7_sweep(cfg: &SweepConfig) -> Result<Sweep> {
    let grid = cfg.lambdas.clone().unwrap_or_else(|| LEMMA7_GRID.to_vec());
    if grid.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::Config("lambdas must lie in [0, 1]".into()));
    }
    let count = cfg.count.unwrap_or(DEFAULT_LEMMA7_COUNT);
    let worst: Vec<Option<f64>> = {
        use rayon::prelude::*;
        (0..count)
            .into_par_iter()
            .map(|k| {
                let mut rng = random::rng(item_seed(cfg.seed, k));
                let (rho, sigma, c_op) = lemma7_triple(&mut rng)?;
                convergence::check_lemma7(&rho, &sigma, &c_op, &grid)
            })
            .collect::<Result<_>>()?
    };
    let mut sweep = Sweep::default();
    for (k, w) in worst.into_iter().enumerate() {
        let n = k + 1;
        match w {
            Some(v) => {
                let row = sweep.push(SweepRecord::new(n, "max_violation", v, 0.0));
                if v > convergence::TERMINAL_TOL {
                    let r = sweep.records[row].csv_row();
                    sweep.violations.push(format!("almost-convexity violated: {r}"));
                }
            }
            None => sweep.notes.push(format!("triple {n}: C does not dominate the supports, skipped")),
        }
    }
    Ok(sweep)
}

/// Runs `name` with the inputs of `cfg`.
pub fn run_sweep(name: &str, cfg: &SweepConfig) -> Result<Sweep> {
    if let Some(declared) = &cfg.lemma {
        if declared != name {
            return Err(Error::Config(format!(
                "configuration is for \"{declared}\", not \"{name}\""
            )));
        }
    }
    match name {
        "lemma1" => {
            let a = positive(cfg, &cfg.a, dim_in(cfg), 2, false)?;
            let b = positive(cfg, &cfg.b, a.dim(), 3, true)?;
            sweep_lemma1(&a, &b, &coordinate_ladder(a.dim(), &ranks(cfg, a.dim())))
        }
        "lemma3" | "lemma4" | "theorem1-proof" | "example2" => {
            let phi = channel(cfg, None)?;
            let rho = state(cfg, phi.dim_in())?;
            match name {
                "lemma3" => sweep_lemma3(&phi, &rho),
                "lemma4" => sweep_lemma4(&phi, &rho),
                "theorem1-proof" => sweep_theorem1_proof(&phi, &rho),
                _ => sweep_example2(&phi, &rho),
            }
        }
        "lemma7" => lemma7_sweep(cfg),
        "lemma8" => {
            let a0 = match &cfg.a {
                Some(p) => read_positive(p)?,
                None => state(cfg, dim_in(cfg))?.positive().clone(),
            };
            let b = positive(cfg, &cfg.b, a0.dim(), 3, true)?;
            let ladder = compressed_ladder(&a0, &ranks(cfg, a0.dim()))?;
            sweep_lemma8(&a0, &b, &ladder)
        }
        "energy-ball" => {
            let family = match &cfg.hamiltonian {
                Some(p) => GibbsFamily::new(read_hermitian(p)?)?,
                None => GibbsFamily::oscillator(cfg.random.dim_in.unwrap_or(DEFAULT_OSCILLATOR)),
            };
            let phi = channel(cfg, Some(family.hamiltonian().dim()))?;
            let betas = cfg
                .betas
                .clone()
                .unwrap_or_else(|| (0..=5).map(|k| 1.0 - 0.1 * k as f64).collect());
            continuity_on_energy_ball(&phi, &family, &betas)
        }
        other => Err(Error::Config(format!(
            "unknown sweep \"{other}\"; available: {}",
            SWEEPS.join(", ")
        ))),
    }
}
