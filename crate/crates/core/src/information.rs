//! Quantum mutual information and coherent information of a channel at a
//! state, ensemble χ-quantities, and the posterior-entropy bound.
//!
//! [`mutual_information`] is the reference implementation: the relative
//! entropy between `(Φ ⊗ Id_R)(|φ_ρ⟩⟨φ_ρ|)` and `Φ(ρ) ⊗ ρ`, with the reference
//! cut down to `rank ρ`. [`mutual_information_triple`] is the entropy-triple
//! form `H(ρ) + H(Φ(ρ)) − H(Φ̃(ρ))` kept as an independent cross-check.

use serde::Serialize;

use crate::channel::KrausChannel;
use crate::entropy::{entropy_h, relative_entropy};
use crate::operator::{
    c, max_norm, purify_minimal, same_dim, CMat, CVec, DensityOperator, PositiveOperator, Spectrum,
};
use crate::{Error, Result};

/// Reference-marginal and joint operators of `(Φ ⊗ Id_R)(|φ_ρ⟩⟨φ_ρ|)`.
struct ChannelStatePair {
    joint: PositiveOperator,
    output: PositiveOperator,
    reference: PositiveOperator,
}

fn output_reference_pair(phi: &KrausChannel, rho: &DensityOperator) -> Result<ChannelStatePair> {
    same_dim(phi.dim_in(), rho.dim())?;
    let (v, r) = purify_minimal(rho);
    let d = rho.dim();
    let dout = phi.dim_out();
    // v[a·r + i] = M[a, i]; (V_k ⊗ I_R) v = vec(V_k M).
    let m = CMat::from_fn(d, r, |a, i| v[a * r + i]);
    let mut columns = CMat::zeros(dout * r, phi.n_kraus());
    for (k, kraus) in phi.kraus().iter().enumerate() {
        let img = kraus * &m;
        for b in 0..dout {
            for i in 0..r {
                columns[(b * r + i, k)] = img[(b, i)];
            }
        }
    }
    let joint = PositiveOperator::from_psd(&columns * columns.adjoint())?;
    let output = phi.apply_positive(rho.positive())?;
    let reference = PositiveOperator::from_spectrum(Spectrum {
        values: rho.eigenvalues()[..r].to_vec(),
        vectors: CMat::identity(r, r),
    });
    Ok(ChannelStatePair {
        joint,
        output,
        reference,
    })
}

/// `I(ρ, Φ) = H((Φ ⊗ Id_R)(|φ_ρ⟩⟨φ_ρ|) ‖ Φ(ρ) ⊗ ρ)`.
pub fn mutual_information(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    let pair = output_reference_pair(phi, rho)?;
    let product = pair.output.tensor(&pair.reference);
    let value = relative_entropy(&pair.joint, &product)?;
    Ok(value.value)
}

/// `H(ρ) + H(Φ(ρ)) − H(Φ̃(ρ))`.
pub fn mutual_information_triple(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    let (hb, he) = output_entropies(phi, rho)?;
    Ok(entropy_h(rho.positive()) + hb - he)
}

/// `(H(Φ(ρ)), H(Φ̃(ρ)))`.
pub fn output_entropies(phi: &KrausChannel, rho: &DensityOperator) -> Result<(f64, f64)> {
    same_dim(phi.dim_in(), rho.dim())?;
    let out = PositiveOperator::from_psd(phi.apply_matrix(rho.matrix())?)?;
    let env = PositiveOperator::from_psd(phi.complement_gram(rho.matrix())?)?;
    Ok((entropy_h(&out), entropy_h(&env)))
}

/// `I_c(ρ, Φ) = I(ρ, Φ) − H(ρ)`.
pub fn coherent_information(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    Ok(mutual_information(phi, rho)? - entropy_h(rho.positive()))
}

/// `I_c(ρ, Φ) = H(Φ(ρ)) − H(Φ̃(ρ))`.
pub fn coherent_information_entropic(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    let (hb, he) = output_entropies(phi, rho)?;
    Ok(hb - he)
}

/// Finite ensemble `{π_i, ρ_i}` of states.
#[derive(Clone, Debug)]
pub struct Ensemble {
    weights: Vec<f64>,
    states: Vec<DensityOperator>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, states: Vec<DensityOperator>) -> Result<Self> {
        if weights.is_empty() || weights.len() != states.len() {
            return Err(Error::InvalidEnsemble(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(Error::InvalidEnsemble("negative weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        let d = states[0].dim();
        for s in &states {
            same_dim(d, s.dim())?;
        }
        Ok(Self { weights, states })
    }

    /// Eigen-decomposition ensemble `{λ_i, |e_i⟩⟨e_i|}` over the support.
    pub fn spectral(rho: &DensityOperator) -> Result<Self> {
        let s = rho.spectrum();
        let r = s.rank().max(1);
        let total: f64 = s.values[..r].iter().sum();
        let weights = s.values[..r].iter().map(|v| v / total).collect();
        let states = (0..r)
            .map(|i| DensityOperator::pure(&s.vector(i)))
            .collect::<Result<_>>()?;
        Self::new(weights, states)
    }

    /// Pure-state decomposition `|ψ_k⟩ ∝ Σ_i u_{ki} √λ_i |e_i⟩` of `ρ` for an
    /// isometry `u` with `rank ρ` columns.
    pub fn rotated(rho: &DensityOperator, u: &CMat) -> Result<Self> {
        let s = rho.spectrum();
        let r = s.rank().max(1);
        same_dim(r, u.ncols())?;
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for k in 0..u.nrows() {
            let mut psi = CVec::zeros(rho.dim());
            for i in 0..r {
                psi += s.vector(i) * (u[(k, i)] * c(s.values[i].sqrt()));
            }
            let w = psi.norm_squared();
            if w > 1e-14 {
                weights.push(w);
                states.push(DensityOperator::pure(&(psi / c(w.sqrt())))?);
            }
        }
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= total;
        }
        Self::new(weights, states)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[DensityOperator] {
        &self.states
    }

    pub fn average(&self) -> Result<DensityOperator> {
        let d = self.states[0].dim();
        let m = self
            .weights
            .iter()
            .zip(&self.states)
            .fold(CMat::zeros(d, d), |acc, (&w, s)| acc + s.matrix() * c(w));
        DensityOperator::from_psd(m)
    }
}

/// `Σ π_i H(Φ(ρ_i) ‖ Φ(ρ̄))` for one decomposition of `ρ̄`.
pub fn chi_ensemble(phi: &KrausChannel, ensemble: &Ensemble) -> Result<f64> {
    same_dim(phi.dim_in(), ensemble.states[0].dim())?;
    let avg = phi.apply_positive(ensemble.average()?.positive())?;
    let mut total = 0.0;
    for (&w, s) in ensemble.weights.iter().zip(&ensemble.states) {
        if w == 0.0 {
            continue;
        }
        let out = phi.apply_positive(s.positive())?;
        total += w * relative_entropy(&out, &avg)?.value;
    }
    Ok(total)
}

/// `χ_Φ − χ_Φ̃` on a pure-state ensemble averaging to `ρ`.
pub fn coherent_via_chi(phi: &KrausChannel, rho: &DensityOperator, ensemble: &Ensemble) -> Result<f64> {
    for (index, s) in ensemble.states.iter().enumerate() {
        let purity = s.purity();
        if (purity - 1.0).abs() > 1e-10 {
            return Err(Error::NotPure { index, purity });
        }
    }
    same_dim(rho.dim(), ensemble.states[0].dim())?;
    let dev = max_norm(&(ensemble.average()?.matrix() - rho.matrix()));
    if dev > 1e-10 {
        return Err(Error::EnsembleMismatch(dev));
    }
    Ok(chi_ensemble(phi, ensemble)? - chi_ensemble(&phi.complement(), ensemble)?)
}

/// Mean entropy of the posterior states, `Σ_i H(V_i ρ V_i*)`, with the
/// entropy of non-normalized operators.
pub fn posterior_entropy_bound(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    same_dim(phi.dim_in(), rho.dim())?;
    let mut total = 0.0;
    for k in phi.kraus() {
        let post = PositiveOperator::from_psd(k * rho.matrix() * k.adjoint())?;
        total += entropy_h(&post);
    }
    Ok(total)
}

/// All information quantities of `(Φ, ρ)` and the complementary pair.
#[derive(Clone, Debug, Serialize)]
pub struct InfoReport {
    pub mutual: f64,
    pub coherent: f64,
    pub entropy_input: f64,
    pub entropy_output: f64,
    pub entropy_env: f64,
    pub mutual_complement: f64,
    pub coherent_complement: f64,
    /// `I(ρ,Φ) + I(ρ,Φ̃) − 2H(ρ)`.
    pub theorem1_residual: f64,
    /// `I_c(ρ,Φ) + I_c(ρ,Φ̃)`.
    pub corollary1_residual: f64,
}

pub fn info_report(phi: &KrausChannel, rho: &DensityOperator) -> Result<InfoReport> {
    let comp = phi.complement();
    let mutual = mutual_information(phi, rho)?;
    let mutual_complement = mutual_information(&comp, rho)?;
    let entropy_input = entropy_h(rho.positive());
    let (entropy_output, entropy_env) = output_entropies(phi, rho)?;
    let coherent = mutual - entropy_input;
    let coherent_complement = mutual_complement - entropy_input;
    Ok(InfoReport {
        mutual,
        coherent,
        entropy_input,
        entropy_output,
        entropy_env,
        mutual_complement,
        coherent_complement,
        theorem1_residual: mutual + mutual_complement - 2.0 * entropy_input,
        corollary1_residual: coherent + coherent_complement,
    })
}
