//! Seeded property suites over random corpora.
//!
//! Item `k` of a suite run with seed `s` draws everything from
//! `ChaCha8(item_seed(s, k))`, and items are evaluated in parallel but
//! reduced in index order, so reports are identical across runs and thread
//! counts.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{compose, mixture, random_channel, tensor_channel, KrausChannel};
use crate::convergence::check_lemma7;
use crate::entropy::{binary_entropy, entropy_h, relative_entropy};
use crate::io::format_sig;
use crate::information::{
    coherent_information, mutual_information, mutual_information_triple, posterior_entropy_bound,
};
use crate::operator::{c, BipartiteState, CMat, DensityOperator, PositiveOperator};
use crate::random::{self, density_with, haar_isometry_with};
use crate::reversibility::{
    alignment_decoder, random_decoder_probe, reversibility_gap, verify_reversibility_conditions_with,
    CONDITION_TOL,
};
use crate::{Error, Result};

pub const SUITES: &[&str] = &[
    "theorem1",
    "corollary1",
    "definitions",
    "prop1",
    "prop3",
    "lemma7",
    "monotonicity",
    "entropy",
    "reversibility",
];

/// Input dimensions of the channel/state corpus.
pub const CORPUS_DIMS: &[usize] = &[2, 3, 4, 6];

/// Seed of item `k` in a run with seed `seed` (SplitMix64 of the pair).
pub fn item_seed(seed: u64, k: usize) -> u64 {
    let mut z = seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckKind {
    /// `worst` is the largest `|residual|`; passes when `worst ≤ tol`.
    Equality,
    /// `worst` is the smallest slack `rhs − lhs`; passes when `worst ≥ −tol`.
    Inequality,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub tol: f64,
    pub worst: f64,
    pub evaluated: usize,
    pub violations: usize,
    /// Item seeds of the first violators.
    pub violators: Vec<u64>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// One row per check; violator seeds are `;`-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,kind,tol,worst,evaluated,violations,violators\n");
        for c in &self.checks {
            let seeds: Vec<String> = c.violators.iter().map(u64::to_string).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.suite,
                csv_field(&c.name),
                match c.kind {
                    CheckKind::Equality => "equality",
                    CheckKind::Inequality => "inequality",
                },
                format_sig(c.tol),
                format_sig(c.worst),
                c.evaluated,
                c.violations,
                seeds.join(";")
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Accumulates observations of one named check.
struct Check {
    name: &'static str,
    kind: CheckKind,
    tol: f64,
    worst: f64,
    evaluated: usize,
    violations: usize,
    violators: Vec<u64>,
}

impl Check {
    fn new(name: &'static str, kind: CheckKind, tol: f64) -> Self {
        let worst = match kind {
            CheckKind::Equality => 0.0,
            CheckKind::Inequality => f64::INFINITY,
        };
        Self {
            name,
            kind,
            tol,
            worst,
            evaluated: 0,
            violations: 0,
            violators: Vec::new(),
        }
    }

    fn observe(&mut self, value: f64, seed: u64) {
        self.evaluated += 1;
        let bad = match self.kind {
            CheckKind::Equality => {
                let r = value.abs();
                if !(r <= self.worst) {
                    self.worst = r;
                }
                !(r <= self.tol)
            }
            CheckKind::Inequality => {
                if !(value >= self.worst) {
                    self.worst = value;
                }
                !(value >= -self.tol)
            }
        };
        if bad {
            self.violations += 1;
            if self.violators.len() < 10 {
                self.violators.push(seed);
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            kind: self.kind,
            tol: self.tol,
            worst: if self.evaluated == 0 { 0.0 } else { self.worst },
            evaluated: self.evaluated,
            violations: self.violations,
            violators: self.violators,
        }
    }
}

/// One item's observations: `(check index, value)` pairs.
type Obs = Vec<(usize, f64)>;

fn run_items<F>(seed: u64, count: usize, mut checks: Vec<Check>, item: F) -> Result<Vec<CheckResult>>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<Obs> + Sync,
{
    let results: Vec<(u64, Obs)> = (0..count)
        .into_par_iter()
        .map(|k| {
            let s = item_seed(seed, k);
            let mut rng = random::rng(s);
            item(&mut rng).map(|obs| (s, obs))
        })
        .collect::<Result<_>>()?;
    for (s, obs) in results {
        for (i, v) in obs {
            checks[i].observe(v, s);
        }
    }
    Ok(checks.into_iter().map(Check::finish).collect())
}

/// Random channel with input dimension `d` and random output dimension,
/// Kraus count and state rank.
pub fn random_pair<R: Rng>(rng: &mut R, d: usize) -> Result<(KrausChannel, DensityOperator)> {
    let dout = rng.random_range(1..=d + 1);
    let min_kraus = d.div_ceil(dout);
    let nk = rng.random_range(min_kraus..=min_kraus + d + 1);
    let phi = random_channel(d, dout, nk, rng.random())?;
    let rank = rng.random_range(1..=d);
    Ok((phi, density_with(rng, d, rank)))
}

/// Corpus item `k`: dimension `CORPUS_DIMS[k % 4]`.
fn corpus_item<R: Rng>(rng: &mut R, k: usize) -> Result<(KrausChannel, DensityOperator)> {
    random_pair(rng, CORPUS_DIMS[k % CORPUS_DIMS.len()])
}

fn run_corpus<F>(seed: u64, count: usize, checks: Vec<Check>, f: F) -> Result<Vec<CheckResult>>
where
    F: Fn(&KrausChannel, &DensityOperator) -> Result<Obs> + Sync,
{
    // `count` pairs per dimension.
    let total = count * CORPUS_DIMS.len();
    let results: Vec<(u64, Obs)> = (0..total)
        .into_par_iter()
        .map(|k| {
            let s = item_seed(seed, k);
            let mut rng = random::rng(s);
            let (phi, rho) = corpus_item(&mut rng, k)?;
            f(&phi, &rho).map(|o| (s, o))
        })
        .collect::<Result<_>>()?;
    let mut checks = checks;
    for (s, obs) in results {
        for (i, v) in obs {
            checks[i].observe(v, s);
        }
    }
    Ok(checks.into_iter().map(Check::finish).collect())
}

pub fn random_positive<R: Rng>(rng: &mut R, d: usize, rank: usize) -> Result<PositiveOperator> {
    let scale = rng.random_range(0.2..2.0);
    density_with(rng, d, rank).positive().scale(scale)
}

fn any_rank_density<R: Rng>(rng: &mut R, d: usize) -> DensityOperator {
    let rank = rng.random_range(1..=d);
    density_with(rng, d, rank)
}

fn any_rank_positive<R: Rng>(rng: &mut R, d: usize) -> Result<PositiveOperator> {
    let rank = rng.random_range(1..=d);
    random_positive(rng, d, rank)
}

fn theorem1(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    run_corpus(
        seed,
        count,
        vec![
            Check::new("I(rho,Phi)+I(rho,Phi~)-2H(rho)", CheckKind::Equality, tol),
            Check::new("I(rho,Phi) >= 0", CheckKind::Inequality, 1e-10),
        ],
        |phi, rho| {
            let i = mutual_information(phi, rho)?;
            let ic = mutual_information(&phi.complement(), rho)?;
            let h = entropy_h(rho.positive());
            Ok(vec![(0, i + ic - 2.0 * h), (1, i)])
        },
    )
}

fn corollary1(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    run_corpus(
        seed,
        count,
        vec![
            Check::new("Ic(rho,Phi)+Ic(rho,Phi~)", CheckKind::Equality, tol),
            Check::new("H(rho) - |Ic(rho,Phi)|", CheckKind::Inequality, 1e-9),
        ],
        |phi, rho| {
            let a = coherent_information(phi, rho)?;
            let b = coherent_information(&phi.complement(), rho)?;
            let h = entropy_h(rho.positive());
            Ok(vec![(0, a + b), (1, h - a.abs())])
        },
    )
}

fn definitions(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    run_corpus(
        seed,
        count,
        vec![Check::new("relative-entropy form - entropy triple", CheckKind::Equality, tol)],
        |phi, rho| Ok(vec![(0, mutual_information(phi, rho)? - mutual_information_triple(phi, rho)?)]),
    )
}

fn prop1(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![
        Check::new("concavity in rho", CheckKind::Inequality, tol),
        Check::new("convexity in Phi", CheckKind::Inequality, tol),
        Check::new("chain rule I(rho,Psi.Phi) <= I(rho,Phi)", CheckKind::Inequality, tol),
        Check::new("chain rule I(rho,Psi.Phi) <= I(Phi(rho),Psi)", CheckKind::Inequality, tol),
        Check::new("subadditivity", CheckKind::Inequality, tol),
        Check::new("nonnegativity", CheckKind::Inequality, 1e-10),
    ];
    run_items(seed, count, checks, |rng| {
        let d = rng.random_range(2..=4);
        let mut obs = Vec::new();

        let (phi, r1) = random_pair(rng, d)?;
        let r2 = any_rank_density(rng, d);
        let (i1, i2) = (mutual_information(&phi, &r1)?, mutual_information(&phi, &r2)?);
        obs.push((5, i1));
        for lambda in [0.25, 0.5, 0.75] {
            let mix = r1.mix(&r2, lambda)?;
            let lhs = mutual_information(&phi, &mix)?;
            obs.push((0, lhs - (lambda * i1 + (1.0 - lambda) * i2)));
        }

        let dout = phi.dim_out();
        let psi_nk = rng.random_range(d.div_ceil(dout)..=d + 2);
        let phi2 = random_channel(d, dout, psi_nk, rng.random())?;
        let j2 = mutual_information(&phi2, &r1)?;
        for lambda in [0.25, 0.5, 0.75] {
            let mixed = mixture(lambda, &phi, &phi2)?;
            let lhs = mutual_information(&mixed, &r1)?;
            obs.push((1, lambda * i1 + (1.0 - lambda) * j2 - lhs));
        }

        let d2 = rng.random_range(1..=d + 1);
        let psi = random_channel(dout, d2, rng.random_range(dout.div_ceil(d2)..=dout + 2), rng.random())?;
        let composed = compose(&psi, &phi)?;
        let ic = mutual_information(&composed, &r1)?;
        obs.push((2, i1 - ic));
        obs.push((3, mutual_information(&psi, &phi.apply(&r1)?)? - ic));

        let (da, dc) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let omega = any_rank_density(rng, da * dc);
        let omega = BipartiteState::new(omega, vec![da, dc])?;
        let fa = random_channel(da, rng.random_range(1..=3), 3 * da, rng.random())?;
        let fc = random_channel(dc, rng.random_range(1..=3), 3 * dc, rng.random())?;
        let joint = mutual_information(&tensor_channel(&fa, &fc), &omega)?;
        let sum = mutual_information(&fa, &omega.marginal(0)?)? + mutual_information(&fc, &omega.marginal(1)?)?;
        obs.push((4, sum - joint));
        Ok(obs)
    })
}

/// `{√p_k U_k}` with `U_k` embedding `ℂ^d` unitarily into the `k`-th of
/// `m` orthogonal blocks of `ℂ^{m·d}`.
pub fn orthogonal_range_channel<R: Rng>(rng: &mut R, d: usize, m: usize) -> Result<KrausChannel> {
    let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
    let z: f64 = raw.iter().sum();
    let kraus = raw
        .iter()
        .enumerate()
        .map(|(k, &w)| {
            let u = haar_isometry_with(rng, d, d);
            let mut op = CMat::zeros(m * d, d);
            op.view_mut((k * d, 0), (d, d)).copy_from(&(u * c((w / z).sqrt())));
            op
        })
        .collect();
    KrausChannel::new(d, m * d, kraus)
}

fn prop3(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![
        Check::new("posterior bound - Ic", CheckKind::Inequality, 1e-9),
        Check::new("H(rho) - posterior bound", CheckKind::Inequality, 1e-9),
        Check::new("orthogonal ranges: bound - Ic", CheckKind::Equality, tol),
    ];
    let total = count * CORPUS_DIMS.len();
    run_items(seed, total, checks, |rng| {
        let d = CORPUS_DIMS[rng.random_range(0..CORPUS_DIMS.len())];
        let (phi, rho) = random_pair(rng, d)?;
        let bound = posterior_entropy_bound(&phi, &rho)?;
        let ic = coherent_information(&phi, &rho)?;
        let h = entropy_h(rho.positive());
        let m = rng.random_range(2..=3);
        let orth = orthogonal_range_channel(rng, d, m)?;
        let eq = posterior_entropy_bound(&orth, &rho)? - coherent_information(&orth, &rho)?;
        Ok(vec![(0, bound - ic), (1, h - bound), (2, eq)])
    })
}

/// `(ρ, σ, C)` with dimension in 2..=5, arbitrary ranks and full-rank `C`.
pub fn lemma7_triple<R: Rng>(rng: &mut R) -> Result<(DensityOperator, DensityOperator, PositiveOperator)> {
    let d = rng.random_range(2..=5);
    let rho = any_rank_density(rng, d);
    let sigma = any_rank_density(rng, d);
    Ok((rho, sigma, random_positive(rng, d, d)?))
}

pub const LEMMA7_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn lemma7(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![Check::new("lhs - rhs (almost convexity)", CheckKind::Inequality, tol)];
    run_items(seed, count, checks, |rng| {
        let (rho, sigma, c_op) = lemma7_triple(rng)?;
        Ok(match check_lemma7(&rho, &sigma, &c_op, &LEMMA7_GRID)? {
            Some(v) => vec![(0, -v)],
            None => Vec::new(),
        })
    })
}

fn monotonicity(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![Check::new("H(A||B) - H(Phi(A)||Phi(B))", CheckKind::Inequality, tol)];
    run_items(seed, count, checks, |rng| {
        let d = rng.random_range(2..=5);
        let (phi, _) = random_pair(rng, d)?;
        let a = any_rank_positive(rng, d)?;
        let b = random_positive(rng, d, d)?;
        let before = relative_entropy(&a, &b)?;
        let after = relative_entropy(&phi.apply_positive(&a)?, &phi.apply_positive(&b)?)?;
        Ok(vec![(0, before.value - after.value)])
    })
}

fn entropy_suite(seed: u64, count: usize, tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![
        Check::new("H(B) - H(A) - H(B-A)", CheckKind::Inequality, tol),
        Check::new("H(A) + H(B-A) + TrB h2(TrA/TrB) - H(B)", CheckKind::Inequality, tol),
        Check::new("concavity of H", CheckKind::Inequality, tol),
        Check::new("joint convexity of relative entropy", CheckKind::Inequality, tol),
        Check::new("homogeneity of H", CheckKind::Equality, tol),
    ];
    run_items(seed, count, checks, |rng| {
        let d = rng.random_range(2..=6);
        let a = any_rank_positive(rng, d)?;
        let extra = any_rank_positive(rng, d)?;
        let b = a.add(&extra)?;
        let (ha, hb, hx) = (entropy_h(&a), entropy_h(&b), entropy_h(&extra));
        let ratio = (a.trace() / b.trace()).clamp(0.0, 1.0);
        let mut obs = vec![
            (0, hb - ha - hx),
            (1, ha + hx + b.trace() * binary_entropy(ratio)? - hb),
        ];
        let half = a.scale(0.5)?.add(&extra.scale(0.5)?)?;
        obs.push((2, entropy_h(&half) - 0.5 * (ha + hx)));

        let lambda = rng.random_range(0.05..0.95);
        let a2 = any_rank_positive(rng, d)?;
        let b1 = random_positive(rng, d, d)?;
        let b2 = random_positive(rng, d, d)?;
        let mix = |x: &PositiveOperator, y: &PositiveOperator| -> Result<PositiveOperator> {
            x.scale(lambda)?.add(&y.scale(1.0 - lambda)?)
        };
        let lhs = relative_entropy(&mix(&a, &a2)?, &mix(&b1, &b2)?)?.value;
        let rhs = lambda * relative_entropy(&a, &b1)?.value + (1.0 - lambda) * relative_entropy(&a2, &b2)?.value;
        obs.push((3, rhs - lhs));

        for s in [0.0, 0.3, 1.0, 2.5] {
            obs.push((4, entropy_h(&a.scale(s)?) - s * ha));
        }
        Ok(obs)
    })
}

/// Reversible pairs: a random isometric embedding, or a dephasing-free code
/// (encoder followed by noise acting on a flag register only).
fn reversible_pair<R: Rng>(rng: &mut R, d: usize) -> Result<(KrausChannel, DensityOperator)> {
    let flags = rng.random_range(1..=3);
    // Encoder ℂ^d → ℂ^d ⊗ ℂ^flags, |ψ⟩ ↦ U|ψ⟩ ⊗ |f⟩, then a random unitary on the flag.
    let u = haar_isometry_with(rng, d, d);
    let f = random::unit_vector_with(rng, flags);
    let enc = CMat::from_fn(d * flags, d, |row, col| u[(row / flags, col)] * f[row % flags]);
    let nk = rng.random_range(1..=3);
    let flag_noise = random_channel(flags, flags, nk, rng.random())?;
    let kraus: Vec<CMat> = flag_noise
        .kraus()
        .iter()
        .map(|k| crate::operator::kron(&CMat::identity(d, d), k) * &enc)
        .collect();
    let phi = KrausChannel::new(d, d * flags, kraus)?;
    let rho = any_rank_density(rng, d);
    Ok((phi, rho))
}

fn reversibility(seed: u64, count: usize, _tol: f64) -> Result<Vec<CheckResult>> {
    let checks = vec![
        Check::new("reversible: gap", CheckKind::Equality, 1e-10),
        Check::new("reversible: eobr of constructed decoder", CheckKind::Equality, CONDITION_TOL),
        Check::new("conditions A1 A3 eobr agree", CheckKind::Equality, 0.5),
        Check::new("irreversible: min eobr over probes - 1e-4", CheckKind::Inequality, 0.0),
        Check::new("gap - (H(rho) - Ic)", CheckKind::Equality, 1e-8),
    ];
    run_items(seed, count, checks, |rng| {
        let d = rng.random_range(2..=4);
        let mut obs = Vec::new();
        let (phi, rho) = reversible_pair(rng, d)?;
        let gap = reversibility_gap(&phi, &rho)?;
        obs.push((0, gap));
        let dec = alignment_decoder(&phi, &rho)?;
        let res = verify_reversibility_conditions_with(&phi, &dec, &rho, 8, rng.random())?;
        obs.push((1, res.eobr));
        obs.push((2, if res.agree(CONDITION_TOL) { 0.0 } else { 1.0 }));

        let (phi, rho) = random_pair(rng, d)?;
        let gap = reversibility_gap(&phi, &rho)?;
        let ic = coherent_information(&phi, &rho)?;
        obs.push((4, gap - (entropy_h(rho.positive()) - ic)));
        if gap >= 1e-3 {
            let mut worst = f64::INFINITY;
            let mut candidates = vec![alignment_decoder(&phi, &rho)?];
            let min_kraus = phi.dim_out().div_ceil(d);
            for k in min_kraus..min_kraus + 3 {
                candidates.push(random_decoder_probe(rng, phi.dim_out(), d, k)?);
            }
            for cand in &candidates {
                let res = verify_reversibility_conditions_with(&phi, cand, &rho, 8, rng.random())?;
                obs.push((2, if res.agree(CONDITION_TOL) { 0.0 } else { 1.0 }));
                worst = worst.min(res.eobr);
            }
            obs.push((3, worst - 1e-4));
        }
        Ok(obs)
    })
}

/// Default tolerance of each suite's headline check.
pub fn default_tol(suite: &str) -> f64 {
    match suite {
        "prop3" | "definitions" | "theorem1" | "corollary1" | "prop1" => 1e-8,
        _ => 1e-9,
    }
}

/// Default item count of a suite (per input dimension for the corpus suites).
pub fn default_count(suite: &str) -> usize {
    match suite {
        "prop1" | "entropy" => 200,
        "reversibility" => 100,
        _ => 500,
    }
}

/// Runs a named suite. For the corpus suites `count` is per input dimension.
pub fn run_suite(name: &str, seed: u64, count: usize, tol: Option<f64>) -> Result<SuiteReport> {
    let tol = tol.unwrap_or_else(|| default_tol(name));
    let checks = match name {
        "theorem1" => theorem1(seed, count, tol)?,
        "corollary1" => corollary1(seed, count, tol)?,
        "definitions" => definitions(seed, count, tol)?,
        "prop1" => prop1(seed, count, tol)?,
        "prop3" => prop3(seed, count, tol)?,
        "lemma7" => lemma7(seed, count, tol)?,
        "monotonicity" => monotonicity(seed, count, tol)?,
        "entropy" => entropy_suite(seed, count, tol)?,
        "reversibility" => reversibility(seed, count, tol)?,
        other => {
            return Err(Error::Config(format!(
                "unknown suite \"{other}\"; available: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        count,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|k| item_seed(7, k)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(item_seed(1, 0), item_seed(2, 0));
    }

    #[test]
    fn small_runs_of_every_suite_pass() {
        for name in SUITES {
            let r = run_suite(name, 3, 6, None).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.checks);
            assert!(r.checks.iter().any(|c| c.evaluated > 0));
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("theorem1", 11, 5, None).unwrap();
        let b = run_suite("theorem1", 11, 5, None).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_csv().lines().count(), 1 + a.checks.len());
    }

    #[test]
    fn unknown_suite_lists_choices() {
        match run_suite("nosuch", 0, 1, None) {
            Err(Error::Config(msg)) => assert!(msg.contains("theorem1") && msg.contains("lemma7")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orthogonal_range_channel_is_a_channel() {
        let mut rng = random::rng(1);
        let phi = orthogonal_range_channel(&mut rng, 3, 2).unwrap();
        assert!(phi.completeness_residual() < 1e-12);
    }

    #[test]
    fn csv_quotes_names_with_commas() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
        let csv = run_suite("theorem1", 0, 1, None).unwrap().to_csv();
        assert!(csv.contains("\"I(rho,Phi)+I(rho,Phi~)-2H(rho)\""));
    }

    #[test]
    fn violations_are_counted() {
        let mut check = Check::new("x", CheckKind::Inequality, 1e-9);
        check.observe(0.5, 1);
        check.observe(-1.0, 2);
        let r = check.finish();
        assert_eq!((r.violations, r.violators.clone(), r.worst), (1, vec![2], -1.0));
        assert!(!r.passed());
    }
}
