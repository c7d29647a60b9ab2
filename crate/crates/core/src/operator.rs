//! Dense complex operators: Hermitian spectral calculus, tensor products,
//! partial traces, purification, support projectors and the Bures distance.
//!
//! Positive operators carry their (clamped) spectral decomposition, computed
//! once at construction, so entropies and logarithms never re-diagonalize.

use std::ops::Deref;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Relative tolerance of the Hermiticity check, scaled by `max(1, ‖M‖_max)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues in `[-POSITIVITY_FLOOR, 0)` are clamped to zero.
pub const POSITIVITY_FLOOR: f64 = 1e-10;
/// Eigenvalues at or below `SUPPORT_REL_TOL · λ_max` are outside the support.
pub const SUPPORT_REL_TOL: f64 = 1e-10;
/// Allowed deviation of a density operator's trace from one.
pub const TRACE_TOL: f64 = 1e-10;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest absolute entry.
pub fn max_norm(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    let mut out = CVec::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Trace out factor `factor` of a matrix on `⊗ dims`.
///
/// The result acts on the remaining factors in their original order.
pub fn trace_out(m: &CMat, dims: &[usize], factor: usize) -> Result<CMat> {
    if factor >= dims.len() {
        return Err(Error::FactorOutOfRange {
            index: factor,
            count: dims.len(),
        });
    }
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::BadFactorDims {
            dims: dims.to_vec(),
            dim: m.nrows(),
        });
    }
    let left: usize = dims[..factor].iter().product();
    let mid = dims[factor];
    let right: usize = dims[factor + 1..].iter().product();
    let n = left * right;
    let mut out = CMat::zeros(n, n);
    for l in 0..left {
        for r in 0..right {
            let row = l * right + r;
            for l2 in 0..left {
                for r2 in 0..right {
                    let col = l2 * right + r2;
                    let mut acc = ZERO;
                    for k in 0..mid {
                        acc += m[((l * mid + k) * right + r, (l2 * mid + k) * right + r2)];
                    }
                    out[(row, col)] = acc;
                }
            }
        }
    }
    Ok(out)
}

/// Trace norm of a Hermitian matrix: sum of absolute eigenvalues.
pub fn trace_norm_hermitian(m: &CMat) -> f64 {
    let h = HermitianOperator::from_hermitian_part(m.clone());
    h.eig().values.iter().map(|v| v.abs()).sum()
}

/// Trace norm of an arbitrary square matrix: sum of singular values.
pub fn trace_norm(m: &CMat) -> f64 {
    m.clone().singular_values().iter().sum()
}

/// Spectral decomposition with eigenvalues sorted in descending order and
/// eigenvectors stored as the corresponding columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> CVec {
        self.vectors.column(i).into_owned()
    }

    /// `Σ f(λ_i) |e_i⟩⟨e_i|`.
    pub fn compose_with(&self, f: impl Fn(f64) -> f64) -> CMat {
        let d = self.dim();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = c(f(v));
            for i in 0..d {
                scaled[(i, j)] *= fv;
            }
        }
        &scaled * self.vectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMat {
        self.compose_with(|v| v)
    }

    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Threshold below which an eigenvalue counts as zero.
    pub fn support_threshold(&self) -> f64 {
        SUPPORT_REL_TOL * self.max_value().max(0.0)
    }

    /// Number of eigenvalues strictly above the support threshold.
    pub fn rank(&self) -> usize {
        let t = self.support_threshold();
        self.values.iter().filter(|&&v| v > t).count()
    }
}

/// Complex square matrix equal to its conjugate transpose.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    m: CMat,
}

impl HermitianOperator {
    /// Validates Hermiticity within `HERMITIAN_TOL · max(1, ‖M‖_max)` and
    /// stores the exactly Hermitian part.
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let tol = HERMITIAN_TOL * max_norm(&m).max(1.0);
        let n = m.nrows();
        let mut worst = (0, 0, 0.0);
        for i in 0..n {
            for j in i..n {
                let dev = (m[(i, j)] - m[(j, i)].conj()).norm();
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        if worst.2 > tol {
            return Err(Error::NotHermitian {
                row: worst.0,
                col: worst.1,
                deviation: worst.2,
            });
        }
        Ok(Self::from_hermitian_part(m))
    }

    /// `(M + M*)/2`, for matrices that are Hermitian up to rounding by construction.
    pub(crate) fn from_hermitian_part(m: CMat) -> Self {
        let h = (&m + m.adjoint()) * c(0.5);
        Self { m: h }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            m: CMat::identity(d, d),
        }
    }

    pub fn zeros(d: usize) -> Self {
        Self {
            m: CMat::zeros(d, d),
        }
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        let d = values.len();
        let mut m = CMat::zeros(d, d);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = c(v);
        }
        Self { m }
    }

    /// `|v⟩⟨v|` (not normalized).
    pub fn outer(v: &CVec) -> Self {
        Self::from_hermitian_part(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn eig(&self) -> Spectrum {
        eig_hermitian(self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { m: &self.m * c(s) }
    }

    /// `P M P` for a Hermitian `P`.
    pub fn sandwich(&self, p: &HermitianOperator) -> Self {
        Self::from_hermitian_part(&p.m * &self.m * &p.m)
    }
}

/// Eigendecomposition of a Hermitian operator, eigenvalues descending.
pub fn eig_hermitian(m: &HermitianOperator) -> Spectrum {
    let d = m.dim();
    if d == 0 {
        return Spectrum {
            values: Vec::new(),
            vectors: CMat::zeros(0, 0),
        };
    }
    let (values, vectors) = robust_eigen(&m.m);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let sorted = order.iter().map(|&i| values[i]).collect();
    let mut columns = CMat::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        columns.set_column(dst, &vectors.column(src));
    }
    Spectrum {
        values: sorted,
        vectors: columns,
    }
}

fn finite_eigen(m: &CMat) -> Option<(Vec<f64>, CMat)> {
    let eig = m.clone().symmetric_eigen();
    let ok = eig.eigenvalues.iter().all(|v| v.is_finite())
        && eig.eigenvectors.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    ok.then(|| (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// `symmetric_eigen` can return NaN on large, highly structured inputs
/// (rank-one projectors with many exact zeros). Retry with a diagonal shift,
/// then in a fixed pseudo-random basis.
fn robust_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    if let Some(r) = finite_eigen(m) {
        return r;
    }
    let d = m.nrows();
    let shift = max_norm(m).max(1.0);
    if let Some((values, vectors)) = finite_eigen(&(m + CMat::identity(d, d) * c(shift))) {
        return (values.iter().map(|v| v - shift).collect(), vectors);
    }
    for seed in 0..4u64 {
        let u = crate::random::haar_unitary(d, 0x5eed + seed);
        let rotated = u.adjoint() * m * &u;
        let rotated = (&rotated + rotated.adjoint()) * c(0.5);
        if let Some((values, vectors)) = finite_eigen(&rotated) {
            return (values, u * vectors);
        }
    }
    panic!("Hermitian eigendecomposition failed to produce finite values for a {d}x{d} matrix");
}

/// Value a spectral function takes on the kernel of its argument.
#[derive(Clone, Copy, Debug)]
pub enum ZeroExtension {
    /// `f(0)` is the given value.
    Value(f64),
    /// `f` is restricted to the support; the kernel contributes nothing.
    Kernel,
}

/// Positive semidefinite operator with its clamped spectral decomposition.
#[derive(Clone, Debug)]
pub struct PositiveOperator {
    op: HermitianOperator,
    spectrum: Spectrum,
    trace: f64,
    /// Eigenvalues at or below this value lie outside the support.
    threshold: f64,
}

impl PositiveOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let mut spectrum = op.eig();
        let min = spectrum.values.last().copied().unwrap_or(0.0);
        if min < -POSITIVITY_FLOOR {
            return Err(Error::NotPositive(min));
        }
        for v in spectrum.values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let trace = spectrum.values.iter().sum();
        let threshold = spectrum.support_threshold();
        Ok(Self {
            op,
            spectrum,
            trace,
            threshold,
        })
    }

    pub fn from_matrix(m: CMat) -> Result<Self> {
        Self::new(HermitianOperator::new(m)?)
    }

    /// For matrices positive by construction (channel outputs, partial traces).
    pub(crate) fn from_psd(m: CMat) -> Result<Self> {
        Self::new(HermitianOperator::from_hermitian_part(m))
    }

    /// Builds the operator from an explicit spectral decomposition.
    pub(crate) fn from_spectrum(spectrum: Spectrum) -> Self {
        let op = HermitianOperator::from_hermitian_part(spectrum.reconstruct());
        let trace = spectrum.values.iter().sum();
        let threshold = spectrum.support_threshold();
        Self {
            op,
            spectrum,
            trace,
            threshold,
        }
    }

    pub fn zeros(d: usize) -> Self {
        Self::from_spectrum(Spectrum {
            values: vec![0.0; d],
            vectors: CMat::identity(d, d),
        })
    }

    pub fn from_diagonal(values: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &CMat {
        self.op.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.values
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn rank(&self) -> usize {
        self.spectrum.values.iter().filter(|&&v| v > self.threshold).count()
    }

    /// Eigenvalues at or below this value count as zero.
    pub fn support_threshold(&self) -> f64 {
        self.threshold
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if s < 0.0 {
            return Err(Error::Domain(format!("negative scale factor {s}")));
        }
        let mut spectrum = self.spectrum.clone();
        for v in spectrum.values.iter_mut() {
            *v *= s;
        }
        Ok(Self {
            op: self.op.scale(s),
            spectrum,
            trace: self.trace * s,
            threshold: self.threshold * s,
        })
    }

    /// Tensor product, with the spectrum assembled from the factors' spectra.
    ///
    /// The support is exactly the product of the factor supports: kernel
    /// eigenvalues of either factor become zero, and every positive product
    /// counts as support however small.
    pub fn tensor(&self, other: &PositiveOperator) -> PositiveOperator {
        let (a, b) = (&self.spectrum, &other.spectrum);
        let (ta, tb) = (self.threshold, other.threshold);
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.dim() * b.dim());
        for (i, &x) in a.values.iter().enumerate() {
            for (j, &y) in b.values.iter().enumerate() {
                let v = if x > ta && y > tb { x * y } else { 0.0 };
                pairs.push((v, i, j));
            }
        }
        pairs.sort_by(|p, q| q.0.total_cmp(&p.0));
        let d = a.dim() * b.dim();
        let mut vectors = CMat::zeros(d, d);
        for (col, &(_, i, j)) in pairs.iter().enumerate() {
            vectors.set_column(col, &kron_vec(&a.vector(i), &b.vector(j)));
        }
        PositiveOperator {
            op: HermitianOperator::from_hermitian_part(kron(self.matrix(), other.matrix())),
            spectrum: Spectrum {
                values: pairs.iter().map(|p| p.0).collect(),
                vectors,
            },
            trace: self.trace * other.trace,
            threshold: 0.0,
        }
    }

    /// `P A P` for an orthogonal projector (or any Hermitian) `P`.
    pub fn sandwich(&self, p: &HermitianOperator) -> Result<Self> {
        Self::new(self.op.sandwich(p))
    }

    pub fn add(&self, other: &PositiveOperator) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Self::from_psd(self.matrix() + other.matrix())
    }

    /// `Σ f(λ_i) |e_i⟩⟨e_i|` over the clamped spectrum.
    pub fn apply_spectral(
        &self,
        f: impl Fn(f64) -> f64,
        zero: ZeroExtension,
    ) -> Result<HermitianOperator> {
        apply_spectral(self, f, zero)
    }

    /// Support-restricted natural logarithm.
    pub fn log(&self) -> HermitianOperator {
        let t = self.threshold;
        HermitianOperator::from_hermitian_part(
            self.spectrum
                .compose_with(|v| if v > t { v.ln() } else { 0.0 }),
        )
    }

    pub fn sqrt(&self) -> HermitianOperator {
        HermitianOperator::from_hermitian_part(self.spectrum.compose_with(f64::sqrt))
    }

    pub fn support_projector(&self) -> HermitianOperator {
        support_projector(self)
    }
}

impl From<DensityOperator> for PositiveOperator {
    fn from(d: DensityOperator) -> Self {
        d.op
    }
}

/// `Σ f(λ_i)|e_i⟩⟨e_i|`, with `zero` deciding the value on the kernel.
///
/// Fails if `f` is not finite at an eigenvalue in the support.
pub fn apply_spectral(
    a: &PositiveOperator,
    f: impl Fn(f64) -> f64,
    zero: ZeroExtension,
) -> Result<HermitianOperator> {
    let t = a.threshold;
    let mut mapped = Vec::with_capacity(a.dim());
    for &v in &a.spectrum.values {
        let fv = if v > t {
            let fv = f(v);
            if !fv.is_finite() {
                return Err(Error::Domain(format!(
                    "spectral function undefined at eigenvalue {v:e}"
                )));
            }
            fv
        } else {
            match zero {
                ZeroExtension::Value(z) => z,
                ZeroExtension::Kernel => 0.0,
            }
        };
        mapped.push(fv);
    }
    let mapped = Spectrum {
        values: mapped,
        vectors: a.spectrum.vectors.clone(),
    };
    Ok(HermitianOperator::from_hermitian_part(mapped.reconstruct()))
}

/// Positive operator with unit trace.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    op: PositiveOperator,
}

impl DensityOperator {
    pub fn new(op: PositiveOperator) -> Result<Self> {
        if (op.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(op.trace()));
        }
        Ok(Self { op })
    }

    pub fn from_matrix(m: CMat) -> Result<Self> {
        Self::new(PositiveOperator::from_matrix(m)?)
    }

    pub(crate) fn from_psd(m: CMat) -> Result<Self> {
        Self::new(PositiveOperator::from_psd(m)?)
    }

    /// `A / Tr A`.
    pub fn normalize(a: &PositiveOperator) -> Result<Self> {
        let t = a.trace();
        if t <= 0.0 {
            return Err(Error::Domain("cannot normalize a zero operator".into()));
        }
        Self::new(a.scale(1.0 / t)?)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            op: PositiveOperator::from_spectrum(Spectrum {
                values: vec![1.0 / d as f64; d],
                vectors: CMat::identity(d, d),
            }),
        }
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn pure(psi: &CVec) -> Result<Self> {
        let n = psi.norm();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnitVector(n));
        }
        Self::from_psd(psi * psi.adjoint())
    }

    /// `|k⟩⟨k|` in dimension `d`.
    pub fn basis(d: usize, k: usize) -> Self {
        let mut v = CVec::zeros(d);
        v[k] = ONE;
        Self::pure(&v).expect("basis vectors are unit vectors")
    }

    pub fn from_diagonal(values: &[f64]) -> Result<Self> {
        Self::new(PositiveOperator::from_diagonal(values)?)
    }

    /// `λ ρ + (1-λ) σ`.
    pub fn mix(&self, other: &DensityOperator, lambda: f64) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(format!("mixing weight {lambda} outside [0, 1]")));
        }
        Self::from_psd(self.matrix() * c(lambda) + other.matrix() * c(1.0 - lambda))
    }

    pub fn positive(&self) -> &PositiveOperator {
        &self.op
    }

    pub fn purity(&self) -> f64 {
        self.eigenvalues().iter().map(|v| v * v).sum()
    }
}

impl Deref for DensityOperator {
    type Target = PositiveOperator;

    fn deref(&self) -> &PositiveOperator {
        &self.op
    }
}

/// Density operator on a tensor product with declared factor dimensions.
#[derive(Clone, Debug)]
pub struct BipartiteState {
    state: DensityOperator,
    dims: Vec<usize>,
}

impl BipartiteState {
    pub fn new(state: DensityOperator, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().product::<usize>() != state.dim() {
            return Err(Error::BadFactorDims {
                dims,
                dim: state.dim(),
            });
        }
        Ok(Self { state, dims })
    }

    /// Product state `ρ ⊗ σ`.
    pub fn product(a: &DensityOperator, b: &DensityOperator) -> Self {
        Self {
            state: DensityOperator {
                op: a.positive().tensor(b.positive()),
            },
            dims: vec![a.dim(), b.dim()],
        }
    }

    /// Pure state `|ψ⟩⟨ψ|` on the given factors.
    pub fn pure(psi: &CVec, dims: Vec<usize>) -> Result<Self> {
        Self::new(DensityOperator::pure(psi)?, dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn state(&self) -> &DensityOperator {
        &self.state
    }

    pub fn partial_trace(&self, factor: usize) -> Result<DensityOperator> {
        partial_trace(self, factor)
    }

    /// Reduced state on a single factor.
    pub fn marginal(&self, keep: usize) -> Result<DensityOperator> {
        if keep >= self.dims.len() {
            return Err(Error::FactorOutOfRange {
                index: keep,
                count: self.dims.len(),
            });
        }
        let mut m = self.state.matrix().clone();
        let mut dims = self.dims.clone();
        // Trace out from the back so earlier indices stay valid.
        for f in (0..self.dims.len()).rev() {
            if f != keep {
                m = trace_out(&m, &dims, f)?;
                dims.remove(f);
            }
        }
        DensityOperator::from_psd(m)
    }
}

impl Deref for BipartiteState {
    type Target = DensityOperator;

    fn deref(&self) -> &DensityOperator {
        &self.state
    }
}

/// Hermitian tensor product.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator::from_hermitian_part(kron(a.matrix(), b.matrix()))
}

/// Trace out factor `factor` of a multipartite state.
pub fn partial_trace(w: &BipartiteState, factor: usize) -> Result<DensityOperator> {
    let m = trace_out(w.state.matrix(), &w.dims, factor)?;
    DensityOperator::from_psd(m)
}

/// Purification `Σ √λ_i |e_i⟩⊗|e_i⟩` on `ℋ_A ⊗ ℋ_R` with `dim R = dim A`.
pub fn purify(rho: &DensityOperator) -> CVec {
    let s = rho.spectrum();
    let d = s.dim();
    let mut out = CVec::zeros(d * d);
    for (i, &l) in s.values.iter().enumerate() {
        if l <= 0.0 {
            continue;
        }
        let e = s.vector(i);
        out += kron_vec(&e, &e) * c(l.sqrt());
    }
    out
}

/// Purification `Σ √λ_i |e_i⟩⊗|i⟩` with the reference cut down to `rank ρ`.
///
/// Returns the vector together with the reference dimension; the reference
/// marginal is `diag(λ_1, …, λ_r)`.
pub fn purify_minimal(rho: &DensityOperator) -> (CVec, usize) {
    let s = rho.spectrum();
    let d = s.dim();
    let r = s.rank().max(1);
    let mut out = CVec::zeros(d * r);
    for i in 0..r {
        let amp = s.values[i].max(0.0).sqrt();
        for a in 0..d {
            out[a * r + i] = s.vectors[(a, i)] * c(amp);
        }
    }
    (out, r)
}

/// Orthogonal projector onto the span of eigenvectors with `λ > 1e-10·λ_max`.
pub fn support_projector(a: &PositiveOperator) -> HermitianOperator {
    let s = &a.spectrum;
    let t = a.threshold;
    HermitianOperator::from_hermitian_part(s.compose_with(|v| if v > t { 1.0 } else { 0.0 }))
}

/// Uhlmann root fidelity `Tr |√ρ √σ|`.
pub fn root_fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    same_dim(rho.dim(), sigma.dim())?;
    let sr = rho.sqrt();
    let inner = HermitianOperator::from_hermitian_part(sr.matrix() * sigma.matrix() * sr.matrix());
    Ok(inner.eig().values.iter().map(|v| v.max(0.0).sqrt()).sum())
}

/// Bures distance `√(2 − 2√F)`.
pub fn bures_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let f = root_fidelity(rho, sigma)?.min(1.0);
    Ok((2.0 - 2.0 * f).max(0.0).sqrt())
}

/// `‖ρ − σ‖₁` for Hermitian operators of equal dimension.
pub fn trace_norm_distance(a: &CMat, b: &CMat) -> Result<f64> {
    same_dim(a.nrows(), b.nrows())?;
    Ok(trace_norm_hermitian(&(a - b)))
}

pub(crate) fn same_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn assert_close(a: &CMat, b: &CMat, tol: f64) {
        let d = max_norm(&(a - b));
        assert!(d <= tol, "matrices differ by {d:e}");
    }

    #[test]
    fn eig_of_diagonal_and_pauli_x() {
        let s = eig_hermitian(&HermitianOperator::from_diagonal(&[0.0, 1.0]));
        assert_eq!(s.values, vec![1.0, 0.0]);

        let x = CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let s = eig_hermitian(&HermitianOperator::new(x.clone()).unwrap());
        assert!((s.values[0] - 1.0).abs() < 1e-14);
        assert!((s.values[1] + 1.0).abs() < 1e-14);
        assert_close(&s.reconstruct(), &x, 1e-12);

        let s = eig_hermitian(&HermitianOperator::identity(3));
        assert!(s.values.iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert_close(&(s.vectors.adjoint() * &s.vectors), &CMat::identity(3, 3), 1e-12);
    }

    #[test]
    fn non_hermitian_entry_is_named() {
        let m = CMat::from_row_slice(2, 2, &[ONE, c(2.0), ZERO, ONE]);
        match HermitianOperator::new(m) {
            Err(Error::NotHermitian { row, col, .. }) => assert_eq!((row, col), (0, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn random_spectra_reconstruct() {
        for seed in 0..20 {
            let d = 2 + (seed as usize % 7);
            let rho = random::density(d, d, seed);
            let s = rho.spectrum();
            assert_close(&s.reconstruct(), rho.matrix(), 1e-10);
            assert_close(&(s.vectors.adjoint() * &s.vectors), &CMat::identity(d, d), 1e-10);
            assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn slightly_negative_eigenvalues_are_clamped() {
        let a = PositiveOperator::from_diagonal(&[1.0, -5e-11]).unwrap();
        assert_eq!(a.eigenvalues(), &[1.0, 0.0]);
        assert_eq!(a.trace(), 1.0);
        assert!(matches!(
            PositiveOperator::from_diagonal(&[1.0, -1e-6]),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn apply_spectral_examples() {
        let half = PositiveOperator::from_diagonal(&[0.5, 0.5]).unwrap();
        let eta = |x: f64| -x * x.ln();
        let out = half.apply_spectral(eta, ZeroExtension::Value(0.0)).unwrap();
        let expect = 0.5 * 2f64.ln();
        assert!((out.matrix()[(0, 0)].re - expect).abs() < 1e-12);
        assert!((out.matrix()[(1, 1)].re - expect).abs() < 1e-12);

        let pure = DensityOperator::basis(3, 1);
        let out = pure.apply_spectral(eta, ZeroExtension::Value(0.0)).unwrap();
        assert!(max_norm(out.matrix()) < 1e-12);

        let p = PositiveOperator::from_diagonal(&[1.0, 0.0]).unwrap();
        let out = p.apply_spectral(f64::ln, ZeroExtension::Kernel).unwrap();
        assert!(max_norm(out.matrix()) < 1e-12);

        let err = p.apply_spectral(|x| 1.0 / (x - 1.0), ZeroExtension::Kernel);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn tensor_examples() {
        let t = tensor(&HermitianOperator::identity(2), &HermitianOperator::identity(3));
        assert_close(t.matrix(), &CMat::identity(6, 6), 0.0);

        let a = HermitianOperator::from_diagonal(&[1.0, 0.0]);
        let b = HermitianOperator::from_diagonal(&[0.5, 0.5]);
        let t = tensor(&a, &b);
        assert_close(
            t.matrix(),
            HermitianOperator::from_diagonal(&[0.5, 0.5, 0.0, 0.0]).matrix(),
            0.0,
        );

        let rho = random::density(3, 3, 4);
        let sigma = random::density(2, 2, 5);
        let t = tensor(rho.hermitian(), sigma.hermitian());
        let back = trace_out(t.matrix(), &[3, 2], 1).unwrap();
        assert_close(&back, rho.matrix(), 1e-12);
    }

    #[test]
    fn spectral_tensor_matches_dense() {
        let a = random::density(3, 2, 1);
        let b = random::density(2, 2, 2);
        let t = a.positive().tensor(b.positive());
        assert_close(&t.spectrum().reconstruct(), t.matrix(), 1e-12);
        let dense = PositiveOperator::from_psd(t.matrix().clone()).unwrap();
        for (x, y) in t.eigenvalues().iter().zip(dense.eigenvalues()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_examples() {
        let rho = random::density(2, 2, 7);
        let sigma = random::density(3, 3, 8);
        let w = BipartiteState::product(&rho, &sigma);
        assert_close(w.partial_trace(1).unwrap().matrix(), rho.matrix(), 1e-12);
        assert_close(w.partial_trace(0).unwrap().matrix(), sigma.matrix(), 1e-12);

        let s = 1.0 / 2f64.sqrt();
        let bell = CVec::from_vec(vec![c(s), ZERO, ZERO, c(s)]);
        let w = BipartiteState::pure(&bell, vec![2, 2]).unwrap();
        let half = DensityOperator::maximally_mixed(2);
        assert_close(w.partial_trace(0).unwrap().matrix(), half.matrix(), 1e-12);
        assert_close(w.partial_trace(1).unwrap().matrix(), half.matrix(), 1e-12);

        let w = BipartiteState::product(&DensityOperator::basis(2, 0), &DensityOperator::basis(2, 0));
        assert_close(
            w.partial_trace(1).unwrap().matrix(),
            DensityOperator::basis(2, 0).matrix(),
            0.0,
        );

        assert!(matches!(
            w.partial_trace(2),
            Err(Error::FactorOutOfRange { index: 2, count: 2 })
        ));
    }

    #[test]
    fn three_factor_marginals() {
        let a = random::density(2, 2, 1);
        let b = random::density(3, 3, 2);
        let cc = random::density(2, 2, 3);
        let ab = BipartiteState::product(&a, &b);
        let abc = BipartiteState::new(
            BipartiteState::product(ab.state(), &cc).state().clone(),
            vec![2, 3, 2],
        )
        .unwrap();
        assert_close(abc.marginal(0).unwrap().matrix(), a.matrix(), 1e-12);
        assert_close(abc.marginal(1).unwrap().matrix(), b.matrix(), 1e-12);
        assert_close(abc.marginal(2).unwrap().matrix(), cc.matrix(), 1e-12);
    }

    #[test]
    fn purify_examples() {
        let v = purify(&DensityOperator::basis(2, 0));
        assert!((v[0].norm() - 1.0).abs() < 1e-12);
        assert!(v.iter().skip(1).all(|z| z.norm() < 1e-12));

        // The eigenbasis of I/2 is solver-dependent: check it is a maximally
        // entangled unit vector rather than comparing amplitudes.
        let v = purify(&DensityOperator::maximally_mixed(2));
        assert!((v.norm() - 1.0).abs() < 1e-12);
        let w = BipartiteState::pure(&v, vec![2, 2]).unwrap();
        let half = DensityOperator::maximally_mixed(2);
        assert_close(w.partial_trace(1).unwrap().matrix(), half.matrix(), 1e-12);
        assert_close(w.partial_trace(0).unwrap().matrix(), half.matrix(), 1e-12);
    }

    #[test]
    fn purify_round_trip_random() {
        for seed in 0..30 {
            let d = 2 + (seed as usize % 7);
            let rank = 1 + (seed as usize % d);
            let rho = random::density(d, rank, seed);
            let w = BipartiteState::pure(&purify(&rho), vec![d, d]).unwrap();
            assert_close(w.partial_trace(1).unwrap().matrix(), rho.matrix(), 1e-10);
            assert_close(w.partial_trace(0).unwrap().matrix(), rho.matrix(), 1e-10);

            let (v, r) = purify_minimal(&rho);
            assert_eq!(r, rank);
            let w = BipartiteState::pure(&v, vec![d, r]).unwrap();
            assert_close(w.partial_trace(1).unwrap().matrix(), rho.matrix(), 1e-10);
        }
    }

    #[test]
    fn support_projector_examples() {
        let p = support_projector(&PositiveOperator::from_diagonal(&[1.0, 0.0]).unwrap());
        assert_close(p.matrix(), HermitianOperator::from_diagonal(&[1.0, 0.0]).matrix(), 1e-12);

        let rho = random::density(4, 4, 3);
        assert_close(support_projector(&rho).matrix(), &CMat::identity(4, 4), 1e-10);

        let p = support_projector(&PositiveOperator::from_diagonal(&[0.7, 0.3, 1e-15]).unwrap());
        assert_close(
            p.matrix(),
            HermitianOperator::from_diagonal(&[1.0, 1.0, 0.0]).matrix(),
            1e-12,
        );
    }

    #[test]
    fn bures_examples() {
        let rho = random::density(3, 3, 11);
        assert!(bures_distance(&rho, &rho).unwrap() < 1e-6);

        let b = bures_distance(&DensityOperator::basis(2, 0), &DensityOperator::basis(2, 1)).unwrap();
        assert!((b - 2f64.sqrt()).abs() < 1e-12);

        assert!(matches!(
            bures_distance(&rho, &DensityOperator::maximally_mixed(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigen_survives_structured_rank_one_projectors() {
        // Σ √λ_k |kk⟩ with geometric weights on 16 ⊗ 16.
        let d = 16;
        let w: Vec<f64> = (0..d).map(|k| (-0.9 * k as f64).exp()).collect();
        let z: f64 = w.iter().sum();
        let mut v = CVec::zeros(d * d);
        for k in 0..d {
            v[k * d + k] = c((w[k] / z).sqrt());
        }
        let m = &v * v.adjoint();
        let s = HermitianOperator::new(m.clone()).unwrap().eig();
        assert!(s.values.iter().all(|x| x.is_finite()));
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert_close(&s.reconstruct(), &m, 1e-12);
    }
}
