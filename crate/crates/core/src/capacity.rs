//! Maximization of the mutual information `I(ρ, Φ)` over input states, with
//! and without a mean-energy constraint, and a heuristic maximization of the
//! coherent information.
//!
//! The mutual information is concave in `ρ`, so Frank–Wolfe applies: the
//! linear oracle is the top eigenvector of the gradient and
//! `λ_max(G) − Tr(Gρ)` bounds the distance to the optimum. Iterates are kept
//! in the interior by mixing each vertex with a small multiple of a
//! full-rank feasible state.
//!
//! The coherent information is not concave; [`maximize_coherent_info`] runs
//! projected gradient ascent from several starting points and reports the
//! best local maximum with `certified = false`.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::KrausChannel;
use crate::entropy::eta_unchecked;
use crate::information::mutual_information;
use crate::operator::{c, same_dim, CMat, CVec, DensityOperator, HermitianOperator, Spectrum};
use crate::random;
use crate::{Error, Result};

/// Eigenvalues below this fraction of the largest are treated as kernel when
/// taking logarithms inside the optimizer.
const LOG_SUPPORT_REL: f64 = 1e-14;
/// Relative tolerance for degenerate top eigenvalues in the linear oracle.
const DEGENERACY_TOL: f64 = 1e-12;
/// `h` within this distance of the ground energy pins the state to the ground space.
const GROUND_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct OptimizerConfig {
    pub max_iters: usize,
    pub gap_tol: f64,
    pub floor: f64,
    pub seed: u64,
    pub multistarts: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            gap_tol: 1e-6,
            floor: 1e-9,
            seed: 0,
            multistarts: 8,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gap_tol > 0.0) {
            return Err(Error::Config(format!("gap_tol must be positive, got {}", self.gap_tol)));
        }
        if !(self.floor > 0.0 && self.floor <= 1e-6) {
            return Err(Error::Config(format!("floor must lie in (0, 1e-6], got {}", self.floor)));
        }
        if self.multistarts == 0 {
            return Err(Error::Config("multistarts must be at least 1".into()));
        }
        Ok(())
    }
}

/// One row of the iterate trace.
#[derive(Clone, Debug, Serialize)]
pub struct IterateRecord {
    pub iteration: usize,
    pub objective: f64,
    pub duality_gap: f64,
    pub constraint_slack: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct CapacityResult {
    pub value: f64,
    pub argmax: DensityOperator,
    /// Frank–Wolfe gap at the returned point. An upper bound on the
    /// suboptimality in the concave modes; a stationarity measure only in
    /// the coherent mode.
    pub duality_gap: f64,
    pub iterations: usize,
    /// `h − Tr(H·argmax)` in the constrained mode.
    pub constraint_slack: Option<f64>,
    /// `false` for the non-concave coherent-information search.
    pub certified: bool,
    pub trace: Vec<IterateRecord>,
}

/// Objective `H(ρ) + H(Φ(ρ)) − H(Φ̃(ρ))` (or without `H(ρ)` for the coherent
/// information) with its gradient.
struct Objective {
    phi: KrausChannel,
    comp: KrausChannel,
    with_input: bool,
}

fn eig(m: &CMat) -> Spectrum {
    HermitianOperator::from_hermitian_part(m.clone()).eig()
}

fn entropy_of(s: &Spectrum) -> f64 {
    s.values.iter().map(|&v| eta_unchecked(v)).sum()
}

fn log_of(s: &Spectrum) -> CMat {
    let t = LOG_SUPPORT_REL * s.max_value();
    s.compose_with(|v| if v > t { v.ln() } else { 0.0 })
}

impl Objective {
    fn new(phi: &KrausChannel, with_input: bool) -> Result<Self> {
        let phi = phi.minimal_kraus()?;
        let comp = phi.complement();
        Ok(Self {
            phi,
            comp,
            with_input,
        })
    }

    fn spectra(&self, rho: &CMat) -> (Spectrum, Spectrum, Spectrum) {
        let out = self.phi.apply_matrix(rho).expect("dimension checked");
        let env = self.comp.apply_matrix(rho).expect("dimension checked");
        (eig(rho), eig(&out), eig(&env))
    }

    fn value(&self, rho: &CMat) -> f64 {
        let (a, b, e) = self.spectra(rho);
        let input = if self.with_input { entropy_of(&a) } else { 0.0 };
        input + entropy_of(&b) - entropy_of(&e)
    }

    fn gradient(&self, rho: &CMat) -> CMat {
        let (a, b, e) = self.spectra(rho);
        let mut g = self.comp.adjoint_apply(&log_of(&e)).expect("dimension checked")
            - self.phi.adjoint_apply(&log_of(&b)).expect("dimension checked");
        if self.with_input {
            g -= log_of(&a);
        }
        (&g + g.adjoint()) * c(0.5)
    }

    fn derivative(&self, rho: &CMat, dir: &CMat) -> f64 {
        inner(&self.gradient(rho), dir)
    }
}

fn inner(g: &CMat, x: &CMat) -> f64 {
    // Re Tr(G X) for Hermitian G.
    g.iter().zip(x.transpose().iter()).map(|(a, b)| (a * b).re).sum()
}

fn check_floor(what: &'static str, s: &Spectrum, reachable: usize, floor: f64) -> Result<()> {
    // The reachable support is the support of the image of the identity.
    let min = if reachable == 0 { 0.0 } else { s.values[reachable - 1] };
    if min < floor {
        return Err(Error::BelowFloor { what, min, floor });
    }
    Ok(())
}

/// Gradient `G = −log ρ − Φ*(log Φ(ρ)) + Φ̃*(log Φ̃(ρ))` of `I(·, Φ)` at an
/// interior point.
///
/// `Φ(ρ)` and `Φ̃(ρ)` are tested on the subspaces reachable from full-rank
/// inputs (the supports of `Φ(I)` and `Φ̃(I)` for a minimal Kraus set);
/// eigenvalues there must be at least `floor`.
pub fn mutual_info_gradient(phi: &KrausChannel, rho: &DensityOperator, floor: f64) -> Result<HermitianOperator> {
    same_dim(phi.dim_in(), rho.dim())?;
    let obj = Objective::new(phi, true)?;
    let d = rho.dim();
    let id = CMat::identity(d, d);
    let reach_b = eig(&obj.phi.apply_matrix(&id)?).rank();
    let reach_e = eig(&obj.comp.apply_matrix(&id)?).rank();
    let (a, b, e) = obj.spectra(rho.matrix());
    check_floor("the input state", &a, d, floor)?;
    check_floor("the channel output", &b, reach_b, floor)?;
    check_floor("the environment output", &e, reach_e, floor)?;
    Ok(HermitianOperator::from_hermitian_part(obj.gradient(rho.matrix())))
}

fn outer(v: &CVec) -> CMat {
    v * v.adjoint()
}

/// Top eigenvector of `g`; among a degenerate top eigenspace, the one of
/// lowest energy under `h_op` when given.
fn top_vector(g: &CMat, h_op: Option<&CMat>) -> (f64, CVec) {
    let s = eig(g);
    let top = s.values[0];
    let tol = DEGENERACY_TOL * top.abs().max(1.0);
    let k = s.values.iter().take_while(|&&v| v >= top - tol).count();
    let v = match h_op {
        Some(h) if k > 1 => {
            let basis = s.vectors.columns(0, k).into_owned();
            let restricted = basis.adjoint() * h * &basis;
            let rs = eig(&restricted);
            &basis * rs.vector(k - 1)
        }
        _ => s.vector(0),
    };
    (top, v)
}

fn energy(h: &CMat, v: &CVec) -> f64 {
    (v.adjoint() * h * v)[(0, 0)].re
}

/// Maximizer of `Tr(Gσ)` over states with `Tr(Hσ) ≤ h`, and the dual bound
/// `min_μ λ_max(G − μH) + μh` evaluated along the bisection.
fn constrained_oracle(g: &CMat, h_op: &CMat, h: f64) -> (CMat, f64) {
    let (top, v0) = top_vector(g, Some(h_op));
    let e0 = energy(h_op, &v0);
    if e0 <= h {
        return (outer(&v0), top);
    }
    let mut dual = f64::INFINITY;
    let mut eval = |mu: f64| {
        let (t, v) = top_vector(&(g - h_op * c(mu)), Some(h_op));
        dual = dual.min(t + mu * h);
        let e = energy(h_op, &v);
        (v, e)
    };
    let scale = g.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let (mut lo, mut hi) = (0.0, scale);
    let (mut v_lo, mut e_lo) = (v0, e0);
    let (mut v_hi, mut e_hi) = eval(hi);
    let mut doublings = 0;
    while e_hi > h && doublings < 200 {
        lo = hi;
        v_lo = v_hi;
        e_lo = e_hi;
        hi *= 2.0;
        (v_hi, e_hi) = eval(hi);
        doublings += 1;
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (v, e) = eval(mid);
        if e > h {
            lo = mid;
            v_lo = v;
            e_lo = e;
        } else {
            hi = mid;
            v_hi = v;
            e_hi = e;
        }
    }
    let sigma = if e_lo - e_hi > 0.0 {
        let t = ((h - e_hi) / (e_lo - e_hi)).clamp(0.0, 1.0);
        outer(&v_lo) * c(t) + outer(&v_hi) * c(1.0 - t)
    } else {
        outer(&v_hi)
    };
    (sigma, dual)
}

struct FrankWolfe<'a> {
    obj: &'a Objective,
    cfg: &'a OptimizerConfig,
    /// Full-rank feasible state mixed into each vertex.
    interior: CMat,
    constraint: Option<(&'a CMat, f64)>,
}

impl FrankWolfe<'_> {
    fn slack(&self, rho: &CMat) -> Option<f64> {
        self.constraint.map(|(h_op, h)| h - inner(h_op, rho))
    }

    fn line_search(&self, rho: &CMat, dir: &CMat) -> f64 {
        let at = |gamma: f64| rho + dir * c(gamma);
        if self.obj.derivative(&at(1.0), dir) >= 0.0 {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            if hi - lo < 1e-13 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.obj.derivative(&at(mid), dir) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn run(&self) -> (CMat, f64, f64, usize, Vec<IterateRecord>) {
        let floor = self.cfg.floor;
        let mut rho = self.interior.clone();
        let mut f = self.obj.value(&rho);
        let mut trace = Vec::new();
        let mut gap = f64::INFINITY;
        let mut iterations = 0;
        for k in 0..=self.cfg.max_iters {
            let g = self.obj.gradient(&rho);
            let current = inner(&g, &rho);
            let (vertex, bound) = match self.constraint {
                None => {
                    let (top, v) = top_vector(&g, None);
                    (outer(&v), top)
                }
                Some((h_op, h)) => constrained_oracle(&g, h_op, h),
            };
            gap = (bound - current).max(0.0);
            trace.push(IterateRecord {
                iteration: k,
                objective: f,
                duality_gap: gap,
                constraint_slack: self.slack(&rho),
            });
            iterations = k;
            if gap <= self.cfg.gap_tol || k == self.cfg.max_iters {
                break;
            }
            let sigma = vertex * c(1.0 - floor) + &self.interior * c(floor);
            let dir = sigma - &rho;
            let gamma = self.line_search(&rho, &dir);
            let next = &rho + dir * c(gamma);
            let f_next = self.obj.value(&next);
            if f_next < f {
                // No ascent at machine precision.
                break;
            }
            rho = next;
            f = f_next;
        }
        (rho, f, gap, iterations, trace)
    }
}

fn finish(
    phi: &KrausChannel,
    rho: CMat,
    gap: f64,
    iterations: usize,
    slack: Option<f64>,
    certified: bool,
    trace: Vec<IterateRecord>,
) -> Result<CapacityResult> {
    let t = rho.trace().re;
    let argmax = DensityOperator::from_psd(rho / c(t))?;
    let value = mutual_information(phi, &argmax)?;
    Ok(CapacityResult {
        value,
        argmax,
        duality_gap: gap,
        iterations,
        constraint_slack: slack,
        certified,
        trace,
    })
}

/// `max_ρ I(ρ, Φ)`, the entanglement-assisted classical capacity.
pub fn maximize_mutual_info(phi: &KrausChannel, cfg: &OptimizerConfig) -> Result<CapacityResult> {
    cfg.validate()?;
    let obj = Objective::new(phi, true)?;
    let d = phi.dim_in();
    let fw = FrankWolfe {
        obj: &obj,
        cfg,
        interior: CMat::identity(d, d) / c(d as f64),
        constraint: None,
    };
    let (rho, _, gap, iterations, trace) = fw.run();
    finish(phi, rho, gap, iterations, None, true, trace)
}

/// `max I(ρ, Φ)` over states with `Tr(Hρ) ≤ h`.
pub fn maximize_mutual_info_constrained(
    phi: &KrausChannel,
    h_op: &HermitianOperator,
    h: f64,
    cfg: &OptimizerConfig,
) -> Result<CapacityResult> {
    cfg.validate()?;
    same_dim(phi.dim_in(), h_op.dim())?;
    let d = phi.dim_in();
    let spec = h_op.eig();
    let ground = spec.values[d - 1];
    if h < ground - GROUND_TOL {
        return Err(Error::Infeasible { h, ground });
    }
    if h <= ground + GROUND_TOL {
        return ground_space_optimum(phi, h_op, &spec, h, cfg);
    }

    // Interior point: (1 − ε)|g⟩⟨g| + ε I/d at energy min(h, Tr H / d).
    let mean = h_op.trace() / d as f64;
    let eps = if h >= mean { 1.0 } else { (h - ground) / (mean - ground) };
    let g = spec.vector(d - 1);
    let interior = outer(&g) * c(1.0 - eps) + CMat::identity(d, d) * c(eps / d as f64);

    let obj = Objective::new(phi, true)?;
    let fw = FrankWolfe {
        obj: &obj,
        cfg,
        interior,
        constraint: Some((h_op.matrix(), h)),
    };
    let (rho, _, gap, iterations, trace) = fw.run();
    let slack = h - inner(h_op.matrix(), &rho) / rho.trace().re;
    finish(phi, rho, gap, iterations, Some(slack), true, trace)
}

/// At `h` equal to the ground energy the feasible set is the set of states
/// on the ground space; optimize the restricted channel there.
fn ground_space_optimum(
    phi: &KrausChannel,
    h_op: &HermitianOperator,
    spec: &Spectrum,
    h: f64,
    cfg: &OptimizerConfig,
) -> Result<CapacityResult> {
    let d = spec.dim();
    let ground = spec.values[d - 1];
    let tol = GROUND_TOL.max(DEGENERACY_TOL * ground.abs());
    let g = spec.values.iter().filter(|&&v| v <= ground + tol).count();
    let basis = spec.vectors.columns(d - g, g).into_owned();
    let restricted = KrausChannel::new(
        g,
        phi.dim_out(),
        phi.kraus().iter().map(|k| k * &basis).collect(),
    )?;
    let sub = maximize_mutual_info(&restricted, cfg)?;
    let rho = &basis * sub.argmax.matrix() * basis.adjoint();
    let slack = h - inner(h_op.matrix(), &rho);
    finish(phi, rho, sub.duality_gap, sub.iterations, Some(slack), true, sub.trace)
}

/// Euclidean projection of eigenvalues onto `{x ≥ floor, Σx = 1}`.
fn project_simplex(values: &[f64], floor: f64) -> Vec<f64> {
    let n = values.len();
    let budget = 1.0 - floor * n as f64;
    let mut sorted: Vec<f64> = values.iter().map(|v| v - floor).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cum += u;
        let t = (cum - budget) / (i + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    values.iter().map(|v| (v - floor - theta).max(0.0) + floor).collect()
}

fn project_states(m: &CMat, floor: f64) -> CMat {
    let s = eig(m);
    let projected = Spectrum {
        values: project_simplex(&s.values, floor),
        vectors: s.vectors,
    };
    projected.reconstruct()
}

struct AscentOutcome {
    rho: CMat,
    value: f64,
    gap: f64,
    iterations: usize,
    trace: Vec<IterateRecord>,
}

fn projected_ascent(obj: &Objective, start: CMat, cfg: &OptimizerConfig) -> AscentOutcome {
    let mut rho = project_states(&start, cfg.floor);
    let mut f = obj.value(&rho);
    let mut step = 1.0;
    let mut trace = Vec::new();
    let mut gap = f64::INFINITY;
    let mut iterations = 0;
    for k in 0..=cfg.max_iters {
        let g = obj.gradient(&rho);
        let (top, _) = top_vector(&g, None);
        gap = (top - inner(&g, &rho)).max(0.0);
        trace.push(IterateRecord {
            iteration: k,
            objective: f,
            duality_gap: gap,
            constraint_slack: None,
        });
        iterations = k;
        if gap <= cfg.gap_tol || k == cfg.max_iters {
            break;
        }
        let mut accepted = None;
        for _ in 0..60 {
            let cand = project_states(&(&rho + &g * c(step)), cfg.floor);
            let fc = obj.value(&cand);
            if fc >= f + 1e-4 * inner(&g, &(&cand - &rho)) && fc >= f {
                accepted = Some((cand, fc));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((cand, fc)) => {
                let stalled = fc - f <= 1e-15 * f.abs().max(1.0);
                rho = cand;
                f = fc;
                step = (step * 2.0).min(1e6);
                if stalled {
                    break;
                }
            }
            None => break,
        }
    }
    AscentOutcome {
        rho,
        value: f,
        gap,
        iterations,
        trace,
    }
}

/// One-shot `max_ρ I_c(ρ, Φ)` by multistart projected gradient ascent.
///
/// Starts from `I/d` and `multistarts − 1` random full-rank states seeded
/// from `cfg.seed`. The result is a local maximum; `certified` is `false`.
pub fn maximize_coherent_info(phi: &KrausChannel, cfg: &OptimizerConfig) -> Result<CapacityResult> {
    cfg.validate()?;
    let obj = Objective::new(phi, false)?;
    let d = phi.dim_in();
    let starts: Vec<CMat> = (0..cfg.multistarts)
        .map(|k| {
            if k == 0 {
                CMat::identity(d, d) / c(d as f64)
            } else {
                random::density(d, d, cfg.seed.wrapping_add(k as u64)).matrix().clone()
            }
        })
        .collect();
    let outcomes: Vec<AscentOutcome> = starts
        .into_par_iter()
        .map(|s| projected_ascent(&obj, s, cfg))
        .collect();
    let best = outcomes
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one start");
    let t = best.rho.trace().re;
    let argmax = DensityOperator::from_psd(best.rho / c(t))?;
    let value = obj.value(argmax.matrix());
    Ok(CapacityResult {
        value,
        argmax,
        duality_gap: best.gap,
        iterations: best.iterations,
        constraint_slack: None,
        certified: false,
        trace: best.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::random_channel;
    use crate::entropy::binary_entropy;
    use crate::information::coherent_information;

    const LN2: f64 = std::f64::consts::LN_2;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig::default()
    }

    fn traceless(d: usize, seed: u64) -> CMat {
        let g = random::ginibre(&mut random::rng(seed), d, d);
        let h = (&g + g.adjoint()) * c(0.5);
        let t = h.trace() / c(d as f64);
        h - CMat::identity(d, d) * t
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        let bad = OptimizerConfig { floor: 1e-3, ..cfg() };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
        let bad = OptimizerConfig { gap_tol: 0.0, ..cfg() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn gradient_is_stationary_at_symmetric_maximizers() {
        let half = DensityOperator::maximally_mixed(2);
        for phi in [KrausChannel::identity(2), KrausChannel::depolarizing(2, 0.4).unwrap()] {
            let g = mutual_info_gradient(&phi, &half, 1e-9).unwrap();
            for seed in 0..5 {
                assert!(inner(g.matrix(), &traceless(2, seed)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for seed in 0..8 {
            let phi = random_channel(2, 2, 2 + seed as usize % 3, seed).unwrap();
            let rho = random::density(2, 2, seed + 30);
            let g = mutual_info_gradient(&phi, &rho, 1e-9).unwrap();
            let obj = Objective::new(&phi, true).unwrap();
            let delta = traceless(2, seed + 60);
            let h = 1e-5;
            let fd = (obj.value(&(rho.matrix() + &delta * c(h))) - obj.value(&(rho.matrix() - &delta * c(h))))
                / (2.0 * h);
            assert!((fd - inner(g.matrix(), &delta)).abs() < 1e-5, "seed {seed}");
        }
    }

    #[test]
    fn gradient_rejects_boundary_points() {
        let phi = KrausChannel::dephasing(0.2).unwrap();
        let err = mutual_info_gradient(&phi, &DensityOperator::basis(2, 0), 1e-9);
        assert!(matches!(err, Err(Error::BelowFloor { .. })));
    }

    #[test]
    fn identity_channel_capacity() {
        let r = maximize_mutual_info(&KrausChannel::identity(2), &cfg()).unwrap();
        assert!((r.value - 2.0 * LN2).abs() < 1e-6);
        assert!(r.duality_gap <= 1e-6);
        assert!((r.argmax.matrix()[(0, 0)].re - 0.5).abs() < 1e-6);
    }

    #[test]
    fn constant_channel_capacity_is_zero() {
        let phi = KrausChannel::constant(&random::unit_vector(2, 1), 3).unwrap();
        let r = maximize_mutual_info(&phi, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-9 && r.duality_gap <= 1e-6);
    }

    #[test]
    fn ascent_is_monotone_and_certificate_is_sound() {
        let phi = random_channel(3, 3, 2, 4).unwrap();
        let r = maximize_mutual_info(&phi, &cfg()).unwrap();
        assert!(r.duality_gap <= 1e-6, "gap {}", r.duality_gap);
        for w in r.trace.windows(2) {
            assert!(w[1].objective >= w[0].objective - 1e-12);
        }
        assert!((r.value - mutual_information(&phi, &r.argmax).unwrap()).abs() <= 1e-10);
        for seed in 0..20 {
            let probe = random::density(3, 1 + seed as usize % 3, seed);
            let v = mutual_information(&phi, &probe).unwrap();
            assert!(r.value >= v - r.duality_gap - 1e-8);
        }
    }

    #[test]
    fn constrained_matches_gibbs_oracle() {
        let h_op = HermitianOperator::from_diagonal(&[0.0, 1.0, 2.0]);
        let r = maximize_mutual_info_constrained(&KrausChannel::identity(3), &h_op, 0.5, &cfg()).unwrap();
        // Gibbs weights e^{-βk}/Z with mean energy 0.5, by bisection on β.
        let mean = |b: f64| {
            let w: Vec<f64> = (0..3).map(|k| (-b * k as f64).exp()).collect();
            let z: f64 = w.iter().sum();
            (w.iter().enumerate().map(|(k, x)| k as f64 * x).sum::<f64>() / z, w, z)
        };
        let (mut lo, mut hi) = (0.0, 50.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mean(mid).0 > 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (_, w, z) = mean(lo);
        let s: f64 = w.iter().map(|x| eta_unchecked(x / z)).sum();
        assert!((r.value - 2.0 * s).abs() < 1e-5, "{} vs {}", r.value, 2.0 * s);
        assert!(r.constraint_slack.unwrap() >= -1e-9);
    }

    #[test]
    fn constrained_edge_cases() {
        let h_op = HermitianOperator::from_diagonal(&[0.0, 1.0, 2.0]);
        let phi = random_channel(3, 2, 3, 8).unwrap();
        let free = maximize_mutual_info(&phi, &cfg()).unwrap();
        let loose = maximize_mutual_info_constrained(&phi, &h_op, 2.0, &cfg()).unwrap();
        assert!((free.value - loose.value).abs() < 1e-6);

        let ground = maximize_mutual_info_constrained(&phi, &h_op, 0.0, &cfg()).unwrap();
        let g = DensityOperator::basis(3, 0);
        assert!((ground.value - mutual_information(&phi, &g).unwrap()).abs() < 1e-10);
        assert!((ground.argmax.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);

        assert!(matches!(
            maximize_mutual_info_constrained(&phi, &h_op, -0.5, &cfg()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn coherent_info_examples() {
        let r = maximize_coherent_info(&KrausChannel::identity(3), &cfg()).unwrap();
        assert!((r.value - 3f64.ln()).abs() < 1e-6);
        assert!(!r.certified);

        let r = maximize_coherent_info(&KrausChannel::erasure(0.25).unwrap(), &cfg()).unwrap();
        assert!((r.value - 0.346574).abs() < 1e-5);

        let p = 0.2;
        let r = maximize_coherent_info(&KrausChannel::dephasing(p).unwrap(), &cfg()).unwrap();
        assert!((r.value - (LN2 - binary_entropy(p).unwrap())).abs() < 1e-5);
    }

    #[test]
    fn coherent_info_dominates_probes() {
        let phi = KrausChannel::amplitude_damping(0.3).unwrap();
        let r = maximize_coherent_info(&phi, &cfg()).unwrap();
        for seed in 0..30 {
            let probe = random::density(2, 2, seed);
            assert!(r.value >= coherent_information(&phi, &probe).unwrap() - 1e-9);
        }
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&[0.9, 0.5, -0.2], 0.0);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((p[0] - 0.7).abs() < 1e-12 && (p[1] - 0.3).abs() < 1e-12 && p[2] == 0.0);
        let p = project_simplex(&[2.0, 0.0], 1e-3);
        assert!((p[1] - 1e-3).abs() < 1e-15);
    }
}
