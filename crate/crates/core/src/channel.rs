//! Kraus channels and the constructions built on them: Stinespring dilation,
//! complementary channel, composition, tensor product, truncation channels,
//! Kraus truncation with completion, and seeded Haar-random channels.
//!
//! The environment of a channel with `k` Kraus operators is `ℂ^k` with the
//! computational basis `{|h_i⟩}`; the dilation is `V|φ⟩ = Σ V_i|φ⟩ ⊗ |h_i⟩`
//! and the complement is `Φ̃(ρ) = Σ_ij Tr(V_i ρ V_j*) |h_i⟩⟨h_j|`.

use crate::operator::{
    c, max_norm, same_dim, trace_out, CMat, CVec, DensityOperator, HermitianOperator,
    PositiveOperator, Spectrum, ONE, POSITIVITY_FLOOR, ZERO,
};
use crate::random;
use crate::{Error, Result};

/// Maximum completeness residual `‖Σ V_i*V_i − I‖_max` of a channel.
pub const COMPLETENESS_TOL: f64 = 1e-9;

fn check_shapes(kraus: &[CMat], dim_out: usize, dim_in: usize) -> Result<()> {
    if kraus.is_empty() {
        return Err(Error::EmptyKraus);
    }
    for (index, k) in kraus.iter().enumerate() {
        if k.nrows() != dim_out || k.ncols() != dim_in {
            return Err(Error::KrausShape {
                index,
                rows: k.nrows(),
                cols: k.ncols(),
                dim_out,
                dim_in,
            });
        }
    }
    Ok(())
}

fn gram(kraus: &[CMat], dim_in: usize) -> CMat {
    kraus
        .iter()
        .fold(CMat::zeros(dim_in, dim_in), |acc, k| acc + k.adjoint() * k)
}

fn apply_kraus(kraus: &[CMat], m: &CMat, dim_out: usize) -> CMat {
    kraus
        .iter()
        .fold(CMat::zeros(dim_out, dim_out), |acc, k| acc + k * m * k.adjoint())
}

/// Kraus operators `W_b` of the complementary map: `(W_b)_{i,a} = (V_i)_{b,a}`.
fn complement_kraus(kraus: &[CMat], dim_out: usize, dim_in: usize) -> Vec<CMat> {
    let n = kraus.len();
    (0..dim_out)
        .map(|b| CMat::from_fn(n, dim_in, |i, a| kraus[i][(b, a)]))
        .collect()
}

/// Quantum channel `Φ(ρ) = Σ V_i ρ V_i*` with `Σ V_i*V_i = I`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMat>,
}

impl KrausChannel {
    /// Validates shapes and completeness; dimensions are taken from the first operator.
    pub fn validate(kraus: Vec<CMat>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (dim_out, dim_in) = (first.nrows(), first.ncols());
        Self::new(dim_in, dim_out, kraus)
    }

    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<CMat>) -> Result<Self> {
        check_shapes(&kraus, dim_out, dim_in)?;
        let residual = max_norm(&(gram(&kraus, dim_in) - CMat::identity(dim_in, dim_in)));
        if residual > COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving(residual));
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::unitary(CMat::identity(d, d)).expect("identity is unitary")
    }

    /// Single-Kraus channel; `u` must be an isometry.
    pub fn unitary(u: CMat) -> Result<Self> {
        Self::validate(vec![u])
    }

    /// Qubit dephasing `{√(1−p) I, √p Z}`.
    pub fn dephasing(p: f64) -> Result<Self> {
        check_probability(p)?;
        let i = CMat::identity(2, 2) * c((1.0 - p).sqrt());
        let z = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]) * c(p.sqrt());
        Self::validate(vec![i, z])
    }

    /// Depolarizing channel `ρ ↦ (1−p)ρ + p·Tr(ρ)·I/d`, realized by
    /// `{√(1−p) I} ∪ {√(p/d) |i⟩⟨j|}`.
    pub fn depolarizing(d: usize, p: f64) -> Result<Self> {
        check_probability(p)?;
        let mut kraus = vec![CMat::identity(d, d) * c((1.0 - p).sqrt())];
        let w = c((p / d as f64).sqrt());
        for i in 0..d {
            for j in 0..d {
                let mut k = CMat::zeros(d, d);
                k[(i, j)] = w;
                kraus.push(k);
            }
        }
        Self::validate(kraus)
    }

    /// Qubit erasure into a three-dimensional output; `|2⟩` flags the erasure.
    pub fn erasure(p: f64) -> Result<Self> {
        check_probability(p)?;
        let mut keep = CMat::zeros(3, 2);
        keep[(0, 0)] = c((1.0 - p).sqrt());
        keep[(1, 1)] = c((1.0 - p).sqrt());
        let mut e0 = CMat::zeros(3, 2);
        e0[(2, 0)] = c(p.sqrt());
        let mut e1 = CMat::zeros(3, 2);
        e1[(2, 1)] = c(p.sqrt());
        Self::validate(vec![keep, e0, e1])
    }

    /// Qubit amplitude damping with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        check_probability(gamma)?;
        let k0 = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, c((1.0 - gamma).sqrt())]);
        let k1 = CMat::from_row_slice(2, 2, &[ZERO, c(gamma.sqrt()), ZERO, ZERO]);
        Self::validate(vec![k0, k1])
    }

    /// Replacement channel `ρ ↦ |ψ⟩⟨ψ|` with Kraus set `{|ψ⟩⟨i|}`.
    pub fn constant(psi: &CVec, dim_in: usize) -> Result<Self> {
        let n = psi.norm();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnitVector(n));
        }
        let kraus = (0..dim_in)
            .map(|i| {
                let mut k = CMat::zeros(psi.len(), dim_in);
                k.set_column(i, psi);
                k
            })
            .collect();
        Self::new(dim_in, psi.len(), kraus)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    /// Number of Kraus operators, which is the environment dimension.
    pub fn n_kraus(&self) -> usize {
        self.kraus.len()
    }

    pub fn completeness_residual(&self) -> f64 {
        max_norm(&(gram(&self.kraus, self.dim_in) - CMat::identity(self.dim_in, self.dim_in)))
    }

    /// Linear action on an arbitrary `dim_in × dim_in` matrix.
    pub fn apply_matrix(&self, m: &CMat) -> Result<CMat> {
        same_dim(self.dim_in, m.nrows())?;
        same_dim(self.dim_in, m.ncols())?;
        Ok(apply_kraus(&self.kraus, m, self.dim_out))
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        DensityOperator::from_psd(self.apply_matrix(rho.matrix())?)
    }

    pub fn apply_positive(&self, a: &PositiveOperator) -> Result<PositiveOperator> {
        PositiveOperator::from_psd(self.apply_matrix(a.matrix())?)
    }

    /// Heisenberg-picture adjoint `Σ V_i* X V_i`.
    pub fn adjoint_apply(&self, x: &CMat) -> Result<CMat> {
        same_dim(self.dim_out, x.nrows())?;
        Ok(self
            .kraus
            .iter()
            .fold(CMat::zeros(self.dim_in, self.dim_in), |acc, k| {
                acc + k.adjoint() * x * k
            }))
    }

    pub fn dilate(&self) -> StinespringDilation {
        let n = self.kraus.len();
        let mut v = CMat::zeros(self.dim_out * n, self.dim_in);
        for (i, k) in self.kraus.iter().enumerate() {
            for b in 0..self.dim_out {
                for a in 0..self.dim_in {
                    v[(b * n + i, a)] = k[(b, a)];
                }
            }
        }
        StinespringDilation {
            isometry: v,
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            dim_env: n,
        }
    }

    /// Complementary channel into the `n_kraus`-dimensional environment.
    pub fn complement(&self) -> KrausChannel {
        KrausChannel {
            dim_in: self.dim_in,
            dim_out: self.kraus.len(),
            kraus: complement_kraus(&self.kraus, self.dim_out, self.dim_in),
        }
    }

    /// `Φ̃(ρ)` from the Gram values `Tr V_i ρ V_j*` directly.
    pub fn complement_gram(&self, rho: &CMat) -> Result<CMat> {
        same_dim(self.dim_in, rho.nrows())?;
        let n = self.kraus.len();
        let images: Vec<CMat> = self.kraus.iter().map(|k| k * rho).collect();
        Ok(CMat::from_fn(n, n, |i, j| {
            // Tr(V_i ρ V_j*) = Σ_{b,a} (V_i ρ)_{b,a} conj(V_j)_{b,a}
            images[i]
                .iter()
                .zip(self.kraus[j].iter())
                .map(|(x, y)| x * y.conj())
                .sum()
        }))
    }

    /// `Ψ ∘ Φ` with Kraus set `{W_j V_i}`; `self` is applied first.
    pub fn then(&self, psi: &KrausChannel) -> Result<KrausChannel> {
        compose(psi, self)
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`.
    pub fn choi(&self) -> CMat {
        let (din, dout) = (self.dim_in, self.dim_out);
        let mut j = CMat::zeros(din * dout, din * dout);
        for a in 0..din {
            for b in 0..din {
                let mut unit = CMat::zeros(din, din);
                unit[(a, b)] = ONE;
                let img = apply_kraus(&self.kraus, &unit, dout);
                for x in 0..dout {
                    for y in 0..dout {
                        j[(a * dout + x, b * dout + y)] = img[(x, y)];
                    }
                }
            }
        }
        j
    }

    /// Equivalent channel with the minimal number of Kraus operators, from
    /// the eigendecomposition of the Choi matrix. Never applied implicitly.
    pub fn minimal_kraus(&self) -> Result<KrausChannel> {
        let (din, dout) = (self.dim_in, self.dim_out);
        let spec = HermitianOperator::from_hermitian_part(self.choi()).eig();
        let t = spec.support_threshold();
        let kraus: Vec<CMat> = spec
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > t)
            .map(|(col, &v)| {
                let s = c(v.sqrt());
                CMat::from_fn(dout, din, |b, a| spec.vectors[(a * dout + b, col)] * s)
            })
            .collect();
        KrausChannel::new(din, dout, kraus)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Isometry `V: ℋ_A → ℋ_B ⊗ ℋ_E` with row index `b·dim_env + i`.
#[derive(Clone, Debug)]
pub struct StinespringDilation {
    pub isometry: CMat,
    pub dim_in: usize,
    pub dim_out: usize,
    pub dim_env: usize,
}

impl StinespringDilation {
    pub fn isometry_residual(&self) -> f64 {
        max_norm(&(self.isometry.adjoint() * &self.isometry - CMat::identity(self.dim_in, self.dim_in)))
    }

    /// `V ρ V*` on `ℋ_B ⊗ ℋ_E`.
    pub fn joint(&self, rho: &CMat) -> Result<CMat> {
        same_dim(self.dim_in, rho.nrows())?;
        Ok(&self.isometry * rho * self.isometry.adjoint())
    }

    /// `Tr_E V ρ V*`.
    pub fn output(&self, rho: &CMat) -> Result<CMat> {
        trace_out(&self.joint(rho)?, &[self.dim_out, self.dim_env], 1)
    }

    /// `Tr_B V ρ V*`.
    pub fn environment(&self, rho: &CMat) -> Result<CMat> {
        trace_out(&self.joint(rho)?, &[self.dim_out, self.dim_env], 0)
    }
}

/// Trace non-increasing map `Σ V_i ρ V_i*` with `Σ V_i*V_i ≤ I`.
#[derive(Clone, Debug)]
pub struct QuantumOperation {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMat>,
}

impl QuantumOperation {
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<CMat>) -> Result<Self> {
        check_shapes(&kraus, dim_out, dim_in)?;
        let defect = CMat::identity(dim_in, dim_in) - gram(&kraus, dim_in);
        let min = HermitianOperator::from_hermitian_part(defect)
            .eig()
            .values
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -POSITIVITY_FLOOR {
            return Err(Error::NotTraceNonIncreasing(min));
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn apply_matrix(&self, m: &CMat) -> Result<CMat> {
        same_dim(self.dim_in, m.nrows())?;
        Ok(apply_kraus(&self.kraus, m, self.dim_out))
    }

    pub fn apply_positive(&self, a: &PositiveOperator) -> Result<PositiveOperator> {
        PositiveOperator::from_psd(self.apply_matrix(a.matrix())?)
    }

    /// `I − Σ V_i*V_i`.
    pub fn defect(&self) -> CMat {
        CMat::identity(self.dim_in, self.dim_in) - gram(&self.kraus, self.dim_in)
    }

    /// Complementary operation `ρ ↦ [Tr V_i ρ V_j*]_{i,j}` into `ℂ^n`.
    pub fn complement(&self) -> QuantumOperation {
        QuantumOperation {
            dim_in: self.dim_in,
            dim_out: self.kraus.len(),
            kraus: complement_kraus(&self.kraus, self.dim_out, self.dim_in),
        }
    }
}

/// `Ψ ∘ Φ`: apply `phi` first, then `psi`.
pub fn compose(psi: &KrausChannel, phi: &KrausChannel) -> Result<KrausChannel> {
    same_dim(psi.dim_in, phi.dim_out)?;
    let mut kraus = Vec::with_capacity(psi.kraus.len() * phi.kraus.len());
    for w in &psi.kraus {
        for v in &phi.kraus {
            kraus.push(w * v);
        }
    }
    Ok(KrausChannel {
        dim_in: phi.dim_in,
        dim_out: psi.dim_out,
        kraus,
    })
}

/// `Φ ⊗ Ψ` with Kraus set `{V_i ⊗ W_j}`.
pub fn tensor_channel(phi: &KrausChannel, psi: &KrausChannel) -> KrausChannel {
    let mut kraus = Vec::with_capacity(phi.kraus.len() * psi.kraus.len());
    for v in &phi.kraus {
        for w in &psi.kraus {
            kraus.push(v.kronecker(w));
        }
    }
    KrausChannel {
        dim_in: phi.dim_in * psi.dim_in,
        dim_out: phi.dim_out * psi.dim_out,
        kraus,
    }
}

/// `λΦ₁ + (1−λ)Φ₂` realized by the Kraus union `{√λ V_i} ∪ {√(1−λ) W_j}`.
pub fn mixture(lambda: f64, phi1: &KrausChannel, phi2: &KrausChannel) -> Result<KrausChannel> {
    check_probability(lambda)?;
    same_dim(phi1.dim_in, phi2.dim_in)?;
    same_dim(phi1.dim_out, phi2.dim_out)?;
    let (a, b) = (c(lambda.sqrt()), c((1.0 - lambda).sqrt()));
    let kraus = phi1
        .kraus
        .iter()
        .map(|k| k * a)
        .chain(phi2.kraus.iter().map(|k| k * b))
        .collect();
    Ok(KrausChannel {
        dim_in: phi1.dim_in,
        dim_out: phi1.dim_out,
        kraus,
    })
}

/// `Π(ρ) = PρP + Tr((I−P)ρ)|ψ⟩⟨ψ|`, with Kraus set `{P} ∪ {|ψ⟩⟨f_k|}`
/// for an orthonormal basis `{f_k}` of `ker P`.
pub fn truncation_channel(p: &HermitianOperator, psi: &CVec) -> Result<KrausChannel> {
    let d = p.dim();
    same_dim(d, psi.len())?;
    let pm = p.matrix();
    let resid = max_norm(&(pm * pm - pm));
    if resid > 1e-9 {
        return Err(Error::NotProjector(resid));
    }
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnitVector(n));
    }
    let spec = p.eig();
    let mut kraus = vec![pm.clone()];
    for (k, &v) in spec.values.iter().enumerate() {
        if v < 0.5 {
            kraus.push(psi * spec.vector(k).adjoint());
        }
    }
    KrausChannel::new(d, d, kraus)
}

/// Coordinate projector onto the first `k` basis vectors of `ℂ^d`.
pub fn coordinate_projector(d: usize, k: usize) -> HermitianOperator {
    let diag: Vec<f64> = (0..d).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
    HermitianOperator::from_diagonal(&diag)
}

/// First `n` Kraus operators as a trace non-increasing operation, and the
/// channel completing it with `W_n = √(I − Σ_{i≤n} V_i*V_i)`.
///
/// When `dim_out ≥ dim_in`, `W_n` is embedded into the output through the
/// first `dim_in` basis vectors; otherwise the completion uses the Kraus
/// operators `|0⟩⟨k|W_n`, which send the missing weight to `|0⟩`.
pub fn kraus_truncate(phi: &KrausChannel, n: usize) -> Result<(QuantumOperation, KrausChannel)> {
    let count = phi.kraus.len();
    if n == 0 || n > count {
        return Err(Error::OutOfRange { index: n, max: count });
    }
    let head: Vec<CMat> = phi.kraus[..n].to_vec();
    let op = QuantumOperation::new(phi.dim_in, phi.dim_out, head.clone())?;
    let w = sqrt_psd(&op.defect())?;
    let (din, dout) = (phi.dim_in, phi.dim_out);
    let mut kraus = head;
    if dout >= din {
        let mut embedded = CMat::zeros(dout, din);
        embedded.view_mut((0, 0), (din, din)).copy_from(&w);
        kraus.push(embedded);
    } else {
        for k in 0..din {
            let mut row = CMat::zeros(dout, din);
            for a in 0..din {
                row[(0, a)] = w[(k, a)];
            }
            kraus.push(row);
        }
    }
    let completion = KrausChannel::new(din, dout, kraus)?;
    Ok((op, completion))
}

/// Eigenvalues of a completeness defect at or below this are rounding noise.
const DEFECT_NOISE: f64 = 1e-14;

/// Hermitian square root with eigenvalues clamped at zero; eigenvalues
/// below `−POSITIVITY_FLOOR` are an error.
pub fn sqrt_psd(m: &CMat) -> Result<CMat> {
    let spec: Spectrum = HermitianOperator::from_hermitian_part(m.clone()).eig();
    let min = spec.values.last().copied().unwrap_or(0.0);
    if min < -POSITIVITY_FLOOR {
        return Err(Error::NotPositive(min));
    }
    Ok(spec.compose_with(|v| if v > DEFECT_NOISE { v.sqrt() } else { 0.0 }))
}

/// Haar-random channel: a Haar isometry `ℂ^{dim_in} → ℂ^{n_kraus·dim_out}`
/// sliced into `n_kraus` consecutive `dim_out × dim_in` blocks.
pub fn random_channel(dim_in: usize, dim_out: usize, n_kraus: usize, seed: u64) -> Result<KrausChannel> {
    if dim_in == 0 || dim_out == 0 || n_kraus == 0 || n_kraus * dim_out < dim_in {
        return Err(Error::InfeasibleDimensions(format!(
            "{n_kraus} Kraus operators of shape {dim_out}x{dim_in} cannot form an isometry"
        )));
    }
    let v = random::haar_isometry_with(&mut random::rng(seed), n_kraus * dim_out, dim_in);
    let kraus = (0..n_kraus)
        .map(|i| v.rows(i * dim_out, dim_out).into_owned())
        .collect();
    KrausChannel::new(dim_in, dim_out, kraus)
}
