//! Truncation sweeps: sequences of finite-rank approximations whose
//! information quantities converge to those of the untruncated objects.
//!
//! Every sweep returns a [`Sweep`] whose records are ordered by truncation
//! index and whose `violations` list every asserted corridor that failed.
//! Observations that are reported but not asserted go to `notes`.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{coordinate_projector, kraus_truncate, truncation_channel, KrausChannel};
use crate::entropy::{binary_entropy, entropy_h, relative_entropy};
use crate::information::{coherent_information, mutual_information};
use crate::io::format_sig;
use crate::operator::{
    c, max_norm, purify_minimal, same_dim, trace_norm_hermitian, trace_out, CMat, CVec,
    DensityOperator, HermitianOperator, PositiveOperator, Spectrum,
};
use crate::{Error, Result};

/// Tolerance for monotonicity of a projector-ladder sweep.
pub const MONOTONE_TOL: f64 = 1e-10;
/// Tolerance for terminal values and proof inequalities.
pub const TERMINAL_TOL: f64 = 1e-9;
/// Tolerance for the exact decomposition in the truncation sweep.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Operator-order slack when checking `A_n ≤ A₀`.
pub const ORDER_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub quantity: String,
    pub value: f64,
    pub target: f64,
    pub deviation: f64,
}

impl SweepRecord {
    pub fn new(n: usize, quantity: &str, value: f64, target: f64) -> Self {
        let deviation = if value == target { 0.0 } else { (value - target).abs() };
        Self {
            n,
            quantity: quantity.to_string(),
            value,
            target,
            deviation,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.quantity,
            format_sig(self.value),
            format_sig(self.target),
            format_sig(self.deviation)
        )
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Sweep {
    pub records: Vec<SweepRecord>,
    /// Failed corridors, each naming the offending row.
    pub violations: Vec<String>,
    /// Reported observations that are not asserted.
    pub notes: Vec<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, r: SweepRecord) -> usize {
        self.records.push(r);
        self.records.len() - 1
    }

    fn require(&mut self, ok: bool, row: usize, what: &str) {
        if !ok {
            let r = &self.records[row];
            self.violations.push(format!("{what}: {}", r.csv_row()));
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,quantity,value,target,deviation")?;
        for r in &self.records {
            writeln!(w, "{}", r.csv_row())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }
}

/// `P_1 ≤ P_2 ≤ …`, with `P_k` onto the first `ranks[k]` coordinates.
pub fn coordinate_ladder(d: usize, ranks: &[usize]) -> Vec<HermitianOperator> {
    ranks.iter().map(|&k| coordinate_projector(d, k)).collect()
}

fn validate_ladder(ladder: &[HermitianOperator], d: usize) -> Result<()> {
    let last = ladder
        .last()
        .ok_or_else(|| Error::InvalidLadder("empty ladder".into()))?;
    for (n, p) in ladder.iter().enumerate() {
        same_dim(d, p.dim())?;
        let m = p.matrix();
        if max_norm(&(m * m - m)) > 1e-9 {
            return Err(Error::InvalidLadder(format!("step {} is not a projector", n + 1)));
        }
        if n > 0 {
            let prev = ladder[n - 1].matrix();
            if max_norm(&(m * prev - prev)) > 1e-9 {
                return Err(Error::InvalidLadder(format!(
                    "step {} does not dominate step {}",
                    n + 1,
                    n
                )));
            }
        }
    }
    if max_norm(&(last.matrix() - CMat::identity(d, d))) > 1e-9 {
        return Err(Error::InvalidLadder("terminal projector is not the identity".into()));
    }
    Ok(())
}

/// `H(P_nAP_n)` and `H(P_nAP_n ‖ P_nBP_n)` along a projector ladder ending at `I`.
pub fn sweep_lemma1(a: &PositiveOperator, b: &PositiveOperator, ladder: &[HermitianOperator]) -> Result<Sweep> {
    same_dim(a.dim(), b.dim())?;
    validate_ladder(ladder, a.dim())?;
    let h_target = entropy_h(a);
    let r_target = relative_entropy(a, b)?.value;
    let points: Vec<(f64, f64)> = ladder
        .par_iter()
        .map(|p| {
            let pa = a.sandwich(p)?;
            let pb = b.sandwich(p)?;
            Ok((entropy_h(&pa), relative_entropy(&pa, &pb)?.value))
        })
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    let last = points.len();
    for (i, &(h, r)) in points.iter().enumerate() {
        let n = i + 1;
        let rh = sweep.push(SweepRecord::new(n, "H(PnAPn)", h, h_target));
        let rr = sweep.push(SweepRecord::new(n, "H(PnAPn||PnBPn)", r, r_target));
        if i > 0 {
            let (ph, pr) = points[i - 1];
            sweep.require(h >= ph - MONOTONE_TOL, rh, "entropy decreased");
            sweep.require(r >= pr - MONOTONE_TOL || (pr.is_infinite() && r.is_infinite()), rr, "relative entropy decreased");
        }
        if n == last {
            sweep.require(sweep.records[rh].deviation <= TERMINAL_TOL, rh, "terminal entropy");
            let ok = sweep.records[rr].deviation <= TERMINAL_TOL || (r.is_infinite() && r_target.is_infinite());
            sweep.require(ok, rr, "terminal relative entropy");
        }
    }
    Ok(sweep)
}

/// `ρ_n = (1/μ_n) Σ_{i≤n} λ_i |e_i⟩⟨e_i|` for `n = 1..=rank ρ`, with `μ_n`.
pub fn spectral_truncations(rho: &DensityOperator) -> Result<Vec<(DensityOperator, f64)>> {
    let s = rho.spectrum();
    let r = s.rank().max(1);
    (1..=r)
        .map(|n| {
            let mu: f64 = s.values[..n].iter().sum();
            let mut values = vec![0.0; s.dim()];
            for (i, v) in values.iter_mut().enumerate().take(n) {
                *v = s.values[i] / mu;
            }
            let m = Spectrum {
                values,
                vectors: s.vectors.clone(),
            }
            .reconstruct();
            Ok((DensityOperator::from_psd(m)?, mu))
        })
        .collect()
}

/// `I(ρ_n, Φ)` along the spectral truncations of `ρ₀` and the bound
/// `H(Φ(ρ_n) ‖ Φ(ρ₀)) ≤ −ln μ_n`.
pub fn sweep_lemma3(phi: &KrausChannel, rho0: &DensityOperator) -> Result<Sweep> {
    same_dim(phi.dim_in(), rho0.dim())?;
    let target = mutual_information(phi, rho0)?;
    let out0 = phi.apply_positive(rho0.positive())?;
    let steps = spectral_truncations(rho0)?;
    let points: Vec<(f64, f64, f64)> = steps
        .par_iter()
        .map(|(rho_n, mu)| {
            let i = mutual_information(phi, rho_n)?;
            let rel = relative_entropy(&phi.apply_positive(rho_n.positive())?, &out0)?.value;
            Ok((i, rel, -mu.ln()))
        })
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    let last = points.len();
    for (k, &(i, rel, bound)) in points.iter().enumerate() {
        let n = k + 1;
        let ri = sweep.push(SweepRecord::new(n, "I(rho_n)", i, target));
        let rb = sweep.push(SweepRecord::new(n, "H(Phi(rho_n)||Phi(rho_0))", rel, bound));
        sweep.require(rel <= bound + TERMINAL_TOL, rb, "bound -ln mu_n exceeded");
        if n == last {
            sweep.require(sweep.records[ri].deviation <= TERMINAL_TOL, ri, "terminal deviation");
        }
    }
    Ok(sweep)
}

/// `(Σ_k (K_k ⊗ I_R) |v⟩⟨v| (K_k ⊗ I_R)*)` on `out ⊗ R`.
fn extend(kraus: &[CMat], dim_out: usize, v: &CVec, r: usize) -> CMat {
    let d = v.len() / r;
    let m = CMat::from_fn(d, r, |a, i| v[a * r + i]);
    let mut cols = CMat::zeros(dim_out * r, kraus.len());
    for (k, op) in kraus.iter().enumerate() {
        let img = op * &m;
        for b in 0..dim_out {
            for i in 0..r {
                cols[(b * r + i, k)] = img[(b, i)];
            }
        }
    }
    &cols * cols.adjoint()
}

/// Values at truncation index `n` of the decomposition sequences.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Terms {
    pub x: f64,
    pub y: f64,
    pub c: f64,
    pub d: f64,
    /// `H(Φ_n(ρ) ‖ Φ(ρ))`.
    pub rel: f64,
    /// `1 − Tr Φ_n(ρ)`.
    pub deficit: f64,
}

impl Theorem1Terms {
    /// `X_n + Y_n − [H(Φ_n(ρ)‖Φ(ρ)) + C_n + D_n]`.
    pub fn identity_residual(&self) -> f64 {
        self.x + self.y - (self.rel + self.c + self.d)
    }
}

/// `X_n`, `Y_n`, `C_n`, `D_n` for the first-`n`-Kraus operation `Φ_n` and
/// its complementary operation `Π̃_n`.
pub fn theorem1_terms(phi: &KrausChannel, rho: &DensityOperator, n: usize) -> Result<Theorem1Terms> {
    same_dim(phi.dim_in(), rho.dim())?;
    let (op, _) = kraus_truncate(phi, n)?;
    let (v, r) = purify_minimal(rho);
    let s = rho.spectrum();
    let rho_r = PositiveOperator::from_diagonal(&s.values[..r])?;
    let dout = phi.dim_out();

    let out_full = phi.apply_positive(rho.positive())?;
    let joint_b = PositiveOperator::from_psd(extend(op.kraus(), dout, &v, r))?;
    let x = relative_entropy(&joint_b, &out_full.tensor(&rho_r))?.value;

    let comp = op.complement();
    let joint_e = extend(comp.kraus(), n, &v, r);
    let env = PositiveOperator::from_psd(comp.apply_matrix(rho.matrix())?)?;
    let y = relative_entropy(&PositiveOperator::from_psd(joint_e.clone())?, &env.tensor(&rho_r))?.value;

    let mut c_n = 0.0;
    for i in 0..r {
        let e = s.vector(i);
        let img = op.apply_matrix(&(&e * e.adjoint()))?;
        let lam = s.values[i];
        c_n += -lam * lam.ln() * img.trace().re;
    }
    let marg = trace_out(&joint_e, &[n, r], 0)?;
    let d_n: f64 = -(0..r).map(|i| marg[(i, i)].re * s.values[i].ln()).sum::<f64>();

    let out_n = op.apply_positive(rho.positive())?;
    let rel = relative_entropy(&out_n, &out_full)?.value;
    Ok(Theorem1Terms {
        x,
        y,
        c: c_n,
        d: d_n,
        rel,
        deficit: 1.0 - out_n.trace(),
    })
}

/// The decomposition sequences for `n = 1..=n_kraus`.
pub fn sweep_theorem1_proof(phi: &KrausChannel, rho: &DensityOperator) -> Result<Sweep> {
    let h = entropy_h(rho.positive());
    let x_lim = mutual_information(phi, rho)?;
    let y_lim = mutual_information(&phi.complement(), rho)?;
    let count = phi.n_kraus();
    let terms: Vec<Theorem1Terms> = (1..=count)
        .into_par_iter()
        .map(|n| theorem1_terms(phi, rho, n))
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    for (k, t) in terms.iter().enumerate() {
        let n = k + 1;
        sweep.push(SweepRecord::new(n, "X_n", t.x, x_lim));
        sweep.push(SweepRecord::new(n, "Y_n", t.y, y_lim));
        let rc = sweep.push(SweepRecord::new(n, "C_n", t.c, h));
        let rd = sweep.push(SweepRecord::new(n, "D_n", t.d, h));
        let rr = sweep.push(SweepRecord::new(n, "H(Phi_n(rho)||Phi(rho))", t.rel, 0.0));
        let rs = sweep.push(SweepRecord::new(n, "X_n+Y_n", t.x + t.y, 2.0 * h));
        let ri = sweep.push(SweepRecord::new(n, "identity_residual", t.identity_residual(), 0.0));
        sweep.push(SweepRecord::new(n, "R_n", t.deficit, 0.0));
        sweep.require(t.identity_residual().abs() <= IDENTITY_TOL, ri, "decomposition identity");
        if n == count {
            for row in [rc, rd, rr, rs] {
                let ok = sweep.records[row].deviation <= IDENTITY_TOL;
                sweep.require(ok, row, "terminal limit");
            }
        }
    }
    Ok(sweep)
}

/// `√A₀ P_n √A₀` along a coordinate ladder: a nondecreasing sequence below `A₀`.
pub fn compressed_ladder(a0: &PositiveOperator, ranks: &[usize]) -> Result<Vec<PositiveOperator>> {
    let root = a0.sqrt();
    let d = a0.dim();
    ranks
        .iter()
        .map(|&k| {
            let p = coordinate_projector(d, k);
            PositiveOperator::from_psd(root.matrix() * p.matrix() * root.matrix())
        })
        .collect()
}

/// Upper bound `H(A₀‖B) + Tr B·(1 − λ) + λ ln λ + h₂(λ)` for `λ = Tr A_n`.
pub fn lemma8_upper_bound(h0: f64, trace_b: f64, lambda: f64) -> Result<f64> {
    let lambda_ln = if lambda > 0.0 { lambda * lambda.ln() } else { 0.0 };
    Ok(h0 + trace_b * (1.0 - lambda) + lambda_ln + binary_entropy(lambda)?)
}

/// `H(A_n‖B)` for a ladder `A_n ≤ A₀` of a state `A₀`, inside the corridor
/// `[0, upper bound]`.
pub fn sweep_lemma8(a0: &PositiveOperator, b: &PositiveOperator, ladder: &[PositiveOperator]) -> Result<Sweep> {
    same_dim(a0.dim(), b.dim())?;
    if (a0.trace() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidTrace(a0.trace()));
    }
    if ladder.is_empty() {
        return Err(Error::InvalidLadder("empty ladder".into()));
    }
    for (n, an) in ladder.iter().enumerate() {
        same_dim(a0.dim(), an.dim())?;
        let gap = HermitianOperator::from_hermitian_part(a0.matrix() - an.matrix()).eig();
        let min = gap.values.last().copied().unwrap_or(0.0);
        if min < -ORDER_TOL {
            return Err(Error::InvalidLadder(format!(
                "step {} is not below A0 (eigenvalue {min:e})",
                n + 1
            )));
        }
    }
    let h0 = relative_entropy(a0, b)?.value;
    let tb = b.trace();
    let mut sweep = Sweep::default();
    let last = ladder.len();
    for (k, an) in ladder.iter().enumerate() {
        let n = k + 1;
        let v = relative_entropy(an, b)?.value;
        let lambda = an.trace().clamp(0.0, 1.0);
        let bound = lemma8_upper_bound(h0, tb, lambda)?;
        let rv = sweep.push(SweepRecord::new(n, "H(A_n||B)", v, h0));
        let rb = sweep.push(SweepRecord::new(n, "upper_bound", bound, v));
        sweep.push(SweepRecord::new(n, "Tr A_n", lambda, 1.0));
        sweep.require(v >= -TERMINAL_TOL, rv, "below corridor floor");
        sweep.require(v <= bound + TERMINAL_TOL, rb, "above proof upper bound");
        if n == last {
            sweep.require(sweep.records[rv].deviation <= TERMINAL_TOL, rv, "terminal deviation");
        }
    }
    Ok(sweep)
}

/// `max_λ [λH(ρ‖C) + (1−λ)H(σ‖C) − h₂(λ) − H(λρ + (1−λ)σ ‖ C)]` over the
/// grid. Returns `None` if `C` does not dominate both supports.
pub fn check_lemma7(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    c_op: &PositiveOperator,
    grid: &[f64],
) -> Result<Option<f64>> {
    same_dim(rho.dim(), sigma.dim())?;
    same_dim(rho.dim(), c_op.dim())?;
    let hr = relative_entropy(rho.positive(), c_op)?;
    let hs = relative_entropy(sigma.positive(), c_op)?;
    if !hr.is_finite() || !hs.is_finite() {
        return Ok(None);
    }
    let mut worst = f64::NEG_INFINITY;
    for &lambda in grid {
        let mix = rho.mix(sigma, lambda)?;
        let lhs = relative_entropy(mix.positive(), c_op)?.value;
        let rhs = lambda * hr.value + (1.0 - lambda) * hs.value - binary_entropy(lambda)?;
        worst = worst.max(rhs - lhs);
    }
    Ok(Some(worst))
}

/// Completion channels `Φ_n` of the first `n` Kraus operators:
/// `‖Φ_n(ρ) − Φ(ρ)‖₁`, `I(ρ, Φ_n)` and `I_c(ρ, Φ_n)`.
pub fn sweep_example2(phi: &KrausChannel, rho: &DensityOperator) -> Result<Sweep> {
    same_dim(phi.dim_in(), rho.dim())?;
    let out = phi.apply_matrix(rho.matrix())?;
    let i_lim = mutual_information(phi, rho)?;
    let ic_lim = coherent_information(phi, rho)?;
    let count = phi.n_kraus();
    let points: Vec<(f64, f64, f64)> = (1..=count)
        .into_par_iter()
        .map(|n| {
            let (_, phi_n) = kraus_truncate(phi, n)?;
            let dist = trace_norm_hermitian(&(phi_n.apply_matrix(rho.matrix())? - &out));
            Ok((dist, mutual_information(&phi_n, rho)?, coherent_information(&phi_n, rho)?))
        })
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    for (k, &(dist, i, ic)) in points.iter().enumerate() {
        let n = k + 1;
        let rows = [
            sweep.push(SweepRecord::new(n, "trace_distance", dist, 0.0)),
            sweep.push(SweepRecord::new(n, "I(rho,Phi_n)", i, i_lim)),
            sweep.push(SweepRecord::new(n, "Ic(rho,Phi_n)", ic, ic_lim)),
        ];
        if n == count {
            for row in rows {
                let ok = sweep.records[row].deviation <= IDENTITY_TOL;
                sweep.require(ok, row, "terminal deviation");
            }
        }
        if k > 0 && dist > points[k - 1].0 + MONOTONE_TOL {
            sweep.notes.push(format!("trace distance increased at n = {n}"));
        }
    }
    Ok(sweep)
}

/// `I(ρ_n, Π_n∘Φ)` with `Π_n` the truncation channel onto the first `n`
/// output coordinates and `ρ_n` the spectral truncations of `ρ₀`.
pub fn sweep_lemma4(phi: &KrausChannel, rho0: &DensityOperator) -> Result<Sweep> {
    same_dim(phi.dim_in(), rho0.dim())?;
    let target = mutual_information(phi, rho0)?;
    let states = spectral_truncations(rho0)?;
    let dout = phi.dim_out();
    let steps = dout.max(states.len());
    let mut psi = CVec::zeros(dout);
    psi[0] = c(1.0);
    let values: Vec<f64> = (1..=steps)
        .into_par_iter()
        .map(|n| {
            let pi = truncation_channel(&coordinate_projector(dout, n.min(dout)), &psi)?;
            let (rho_n, _) = &states[n.min(states.len()) - 1];
            mutual_information(&phi.then(&pi)?, rho_n)
        })
        .collect::<Result<_>>()?;
    let mut sweep = Sweep::default();
    for (k, &v) in values.iter().enumerate() {
        let row = sweep.push(SweepRecord::new(k + 1, "I(rho_n,Pi_n.Phi)", v, target));
        if k + 1 == steps {
            let ok = sweep.records[row].deviation <= IDENTITY_TOL;
            sweep.require(ok, row, "terminal deviation");
        }
    }
    Ok(sweep)
}

/// Gibbs states `e^{−βH} / Tr e^{−βH}` of a Hamiltonian with nonnegative spectrum.
#[derive(Clone, Debug)]
pub struct GibbsFamily {
    h_op: HermitianOperator,
}

impl GibbsFamily {
    pub fn new(h_op: HermitianOperator) -> Result<Self> {
        let min = h_op.eig().values.last().copied().unwrap_or(0.0);
        if min < -1e-12 {
            return Err(Error::Domain(format!("Hamiltonian has negative eigenvalue {min}")));
        }
        Ok(Self { h_op })
    }

    /// `diag(0, 1, …, d−1)`.
    pub fn oscillator(d: usize) -> Self {
        let levels: Vec<f64> = (0..d).map(|k| k as f64).collect();
        Self {
            h_op: HermitianOperator::from_diagonal(&levels),
        }
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.h_op
    }

    pub fn state(&self, beta: f64) -> Result<DensityOperator> {
        if !(beta > 0.0) {
            return Err(Error::Domain(format!("inverse temperature must be positive, got {beta}")));
        }
        let s = self.h_op.eig();
        let e0 = s.values.last().copied().unwrap_or(0.0);
        let w: Vec<f64> = s.values.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
        let z: f64 = w.iter().sum();
        let m = Spectrum {
            values: w.iter().map(|x| x / z).collect(),
            vectors: s.vectors,
        }
        .reconstruct();
        DensityOperator::from_psd(m)
    }

    pub fn mean_energy(&self, beta: f64) -> Result<f64> {
        let rho = self.state(beta)?;
        Ok((self.h_op.matrix() * rho.matrix()).trace().re)
    }
}

/// `H(ρ_β)`, `I(ρ_β, Φ)` and `I_c(ρ_β, Φ)` along a decreasing `β` ladder,
/// with the empirical corridor constant
/// `L = max |ΔI| / (|ΔH| + ‖Δρ‖₁ ln d)` reported as a record.
pub fn continuity_on_energy_ball(phi: &KrausChannel, family: &GibbsFamily, betas: &[f64]) -> Result<Sweep> {
    same_dim(phi.dim_in(), family.h_op.dim())?;
    if betas.is_empty() || betas.iter().any(|&b| !(b > 0.0)) {
        return Err(Error::InvalidLadder("inverse temperatures must be positive".into()));
    }
    if betas.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidLadder("inverse temperatures must be nonincreasing".into()));
    }
    let d = phi.dim_in() as f64;
    let points: Vec<(DensityOperator, f64, f64, f64)> = betas
        .par_iter()
        .map(|&b| {
            let rho = family.state(b)?;
            let h = entropy_h(rho.positive());
            let i = mutual_information(phi, &rho)?;
            let ic = coherent_information(phi, &rho)?;
            Ok((rho, h, i, ic))
        })
        .collect::<Result<_>>()?;
    let (rho0, h0, i0, ic0) = points.last().expect("nonempty").clone();
    let mut sweep = Sweep::default();
    let mut corridor: f64 = 0.0;
    for (k, (rho, h, i, ic)) in points.iter().enumerate() {
        let n = k + 1;
        let dist = trace_norm_hermitian(&(rho.matrix() - rho0.matrix()));
        sweep.push(SweepRecord::new(n, "H(rho_beta)", *h, h0));
        sweep.push(SweepRecord::new(n, "I(rho_beta)", *i, i0));
        sweep.push(SweepRecord::new(n, "Ic(rho_beta)", *ic, ic0));
        sweep.push(SweepRecord::new(n, "trace_distance", dist, 0.0));
        let denom = (h - h0).abs() + dist * d.ln();
        if denom > 1e-12 {
            corridor = corridor.max((i - i0).abs() / denom);
        }
    }
    sweep.push(SweepRecord::new(points.len(), "corridor_L", corridor, 0.0));
    sweep.notes.push(format!("empirical corridor constant L = {}", format_sig(corridor)));
    Ok(sweep)
}
