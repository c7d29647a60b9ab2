//! Perfect reversibility of a channel on a state.
//!
//! `Φ` is perfectly reversible on `ρ` when some channel `𝒟` satisfies
//! `𝒟∘Φ = Id` on `supp ρ`, which holds exactly when `I(ρ, Φ̃) = 0`, that is
//! when the reference–environment marginal of the purified output is a
//! product. The decoder is read off from the isometry that carries one
//! purification of `ρ_R ⊗ ρ_E` to the other.

use rand::Rng;
use serde::Serialize;

use crate::channel::KrausChannel;
use crate::information::mutual_information;
use crate::operator::{
    c, kron, purify_minimal, same_dim, trace_norm, trace_norm_hermitian, trace_out, BipartiteState,
    CMat, CVec, DensityOperator, HermitianOperator,
};
use crate::random;
use crate::{Error, Result};

/// Gap threshold below which a channel is declared perfectly reversible.
pub const TAU_REV: f64 = 1e-9;
/// Trace-norm defect below which a bipartite state is declared a product.
pub const PRODUCT_TOL: f64 = 1e-8;
/// Agreement tolerance of the equivalent reversibility conditions.
pub const CONDITION_TOL: f64 = 1e-7;

const SINGULAR_CUTOFF: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct ReversibilityVerdict {
    pub reversible: bool,
    /// `I(ρ, Φ̃) = H(ρ) − I_c(ρ, Φ)`.
    pub gap: f64,
    pub witness: Option<KrausChannel>,
}

/// `I(ρ, Φ̃) = H(ρ_RE ‖ ρ_R ⊗ ρ_E)`.
pub fn reversibility_gap(phi: &KrausChannel, rho: &DensityOperator) -> Result<f64> {
    mutual_information(&phi.complement(), rho)
}

/// Trace-norm product defect `‖ω − ω_1 ⊗ ω_2‖₁` and the verdict
/// `defect ≤ PRODUCT_TOL`.
pub fn is_product(omega: &BipartiteState) -> Result<(bool, f64)> {
    if omega.dims().len() != 2 {
        return Err(Error::BadFactorDims {
            dims: omega.dims().to_vec(),
            dim: omega.dim(),
        });
    }
    let a = omega.marginal(0)?;
    let b = omega.marginal(1)?;
    let prod = kron(a.matrix(), b.matrix());
    let defect = trace_norm_hermitian(&(omega.matrix() - prod));
    Ok((defect <= PRODUCT_TOL, defect))
}

pub fn reversibility_verdict(phi: &KrausChannel, rho: &DensityOperator) -> Result<ReversibilityVerdict> {
    let gap = reversibility_gap(phi, rho)?;
    let reversible = gap <= TAU_REV;
    let witness = if reversible {
        Some(alignment_decoder(phi, rho)?)
    } else {
        None
    };
    Ok(ReversibilityVerdict {
        reversible,
        gap,
        witness,
    })
}

/// Decoder for a channel that is perfectly reversible on `ρ`.
pub fn build_decoder(phi: &KrausChannel, rho: &DensityOperator) -> Result<KrausChannel> {
    let gap = reversibility_gap(phi, rho)?;
    if gap > TAU_REV {
        return Err(Error::NotReversible { gap, tol: TAU_REV });
    }
    alignment_decoder(phi, rho)
}

/// The purification-alignment decoder without the gap precondition.
///
/// With `|φ_AR⟩` the minimal purification of `ρ`, `|φ_BRE⟩ = (V ⊗ I_R)|φ_AR⟩`
/// and `|φ_EE'⟩` the minimal purification of `Φ̃(ρ)`, the partial isometry
/// `W: B → A ⊗ E'` is the polar part aligning `|φ_BRE⟩` with
/// `|φ_AR⟩ ⊗ |φ_EE'⟩` over the common `RE` factor. The decoder is
/// `σ ↦ Tr_E' WσW*`, completed on `ker W` by sending it to `|0⟩⟨0|`.
pub fn alignment_decoder(phi: &KrausChannel, rho: &DensityOperator) -> Result<KrausChannel> {
    same_dim(phi.dim_in(), rho.dim())?;
    let d = phi.dim_in();
    let dout = phi.dim_out();
    let n = phi.n_kraus();
    let (v_ar, r) = purify_minimal(rho);
    let rho_e = DensityOperator::from_psd(phi.complement_gram(rho.matrix())?)?;
    let (v_ee, r_e) = purify_minimal(&rho_e);

    // M1[(i, k), b] = ⟨i, k, b|φ_BRE⟩ with ⟨b, k| V |a⟩ = V_k[b, a].
    let mut m1 = CMat::zeros(r * n, dout);
    for i in 0..r {
        for (k, vk) in phi.kraus().iter().enumerate() {
            for b in 0..dout {
                let mut s = c(0.0);
                for a in 0..d {
                    s += vk[(b, a)] * v_ar[a * r + i];
                }
                m1[(i * n + k, b)] = s;
            }
        }
    }
    // M2[(i, k), (a, e')] = ⟨a, i|φ_AR⟩ ⟨k, e'|φ_EE'⟩.
    let mut m2 = CMat::zeros(r * n, d * r_e);
    for i in 0..r {
        for k in 0..n {
            for a in 0..d {
                for e in 0..r_e {
                    m2[(i * n + k, a * r_e + e)] = v_ar[a * r + i] * v_ee[k * r_e + e];
                }
            }
        }
    }

    let svd = (m1.adjoint() * &m2).svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V*");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&j| svd.singular_values[j] > SINGULAR_CUTOFF * smax.max(1e-300))
        .collect();
    // X = Σ u_j v_j*, W = Xᵀ: (d·r_e) × dout.
    let mut x = CMat::zeros(dout, d * r_e);
    for &j in &keep {
        x += u.column(j) * v_t.row(j);
    }
    let w = x.transpose();

    let mut kraus = Vec::with_capacity(r_e + dout);
    for e in 0..r_e {
        kraus.push(CMat::from_fn(d, dout, |a, b| w[(a * r_e + e, b)]));
    }
    let defect = HermitianOperator::from_hermitian_part(CMat::identity(dout, dout) - w.adjoint() * &w);
    let spec = defect.eig();
    for j in 0..dout {
        if spec.values[j] > 0.5 {
            let q = spec.vector(j);
            let mut k = CMat::zeros(d, dout);
            k.row_mut(0).copy_from(&q.adjoint());
            kraus.push(k);
        }
    }
    KrausChannel::new(dout, d, kraus)
}

/// Residuals of the equivalent conditions for `T = 𝒟∘Φ` to act as the
/// identity on `supp ρ`.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionResiduals {
    /// `max ‖T(|ψ⟩⟨ψ|) − |ψ⟩⟨ψ|‖₁` over sampled unit vectors `ψ ∈ supp ρ`.
    pub a1: f64,
    /// `max ‖T(|e_i⟩⟨e_j|) − |e_i⟩⟨e_j|‖₁` over eigenvectors of `ρ`.
    pub a3: f64,
    /// `‖(T ⊗ Id_R)(ρ_AR) − ρ_AR‖₁`.
    pub eobr: f64,
}

impl ConditionResiduals {
    pub fn verdicts(&self, tol: f64) -> [bool; 3] {
        [self.a1 <= tol, self.a3 <= tol, self.eobr <= tol]
    }

    pub fn all_pass(&self, tol: f64) -> bool {
        self.verdicts(tol).iter().all(|&v| v)
    }

    pub fn agree(&self, tol: f64) -> bool {
        let v = self.verdicts(tol);
        v.iter().all(|&x| x == v[0])
    }
}

pub fn verify_reversibility_conditions(
    phi: &KrausChannel,
    decoder: &KrausChannel,
    rho: &DensityOperator,
) -> Result<ConditionResiduals> {
    verify_reversibility_conditions_with(phi, decoder, rho, 16, 0)
}

pub fn verify_reversibility_conditions_with(
    phi: &KrausChannel,
    decoder: &KrausChannel,
    rho: &DensityOperator,
    samples: usize,
    seed: u64,
) -> Result<ConditionResiduals> {
    same_dim(phi.dim_in(), rho.dim())?;
    same_dim(phi.dim_out(), decoder.dim_in())?;
    same_dim(phi.dim_in(), decoder.dim_out())?;
    let t = phi.then(decoder)?;
    let d = rho.dim();
    let spec = rho.spectrum();
    let r = spec.rank().max(1);

    let mut rng = random::rng(seed);
    let mut a1: f64 = 0.0;
    for _ in 0..samples {
        let coeffs = random::unit_vector_with(&mut rng, r);
        let mut psi = CVec::zeros(d);
        for i in 0..r {
            psi += spec.vector(i) * coeffs[i];
        }
        let p = &psi * psi.adjoint();
        a1 = a1.max(trace_norm_hermitian(&(t.apply_matrix(&p)? - p)));
    }

    let mut a3: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            let unit = spec.vector(i) * spec.vector(j).adjoint();
            a3 = a3.max(trace_norm(&(t.apply_matrix(&unit)? - unit)));
        }
    }

    let (v, rr) = purify_minimal(rho);
    let omega = &v * v.adjoint();
    let mut out = CMat::zeros(d * rr, d * rr);
    let id_r = CMat::identity(rr, rr);
    for k in t.kraus() {
        let kk = kron(k, &id_r);
        out += &kk * &omega * kk.adjoint();
    }
    let eobr = trace_norm_hermitian(&(out - omega));
    Ok(ConditionResiduals { a1, a3, eobr })
}

/// Random channels `B → A` used to probe that no decoder works when the gap
/// is positive.
pub fn random_decoder_probe<R: Rng>(rng: &mut R, dim_in: usize, dim_out: usize, n_kraus: usize) -> Result<KrausChannel> {
    let v = random::haar_isometry_with(rng, dim_out * n_kraus, dim_in);
    let kraus = (0..n_kraus)
        .map(|k| v.rows(k * dim_out, dim_out).into_owned())
        .collect();
    KrausChannel::new(dim_in, dim_out, kraus)
}

/// Reduced state `ρ_RE` and its marginals, for inspection.
pub fn reference_environment_state(phi: &KrausChannel, rho: &DensityOperator) -> Result<BipartiteState> {
    same_dim(phi.dim_in(), rho.dim())?;
    let (v, r) = purify_minimal(rho);
    let dil = phi.dilate();
    let psi = kron(&dil.isometry, &CMat::identity(r, r)) * v;
    let joint = &psi * psi.adjoint();
    let re = trace_out(&joint, &[phi.dim_out(), phi.n_kraus(), r], 0)?;
    // Reorder E ⊗ R into R ⊗ E.
    let n = phi.n_kraus();
    let swapped = CMat::from_fn(r * n, r * n, |row, col| {
        let (i, k) = (row / n, row % n);
        let (j, l) = (col / n, col % n);
        re[(k * r + i, l * r + j)]
    });
    BipartiteState::new(DensityOperator::from_psd(swapped)?, vec![r, n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::random_channel;
    use crate::entropy::{binary_entropy, entropy_h};
    use crate::information::coherent_information;
    use crate::operator::max_norm;

    #[test]
    fn gap_examples() {
        for seed in 0..5 {
            let u = random::haar_unitary(3, seed);
            let rho = random::density(3, 3, seed + 10);
            let g = reversibility_gap(&KrausChannel::unitary(u).unwrap(), &rho).unwrap();
            assert!(g.abs() <= 1e-10);
        }
        let half = DensityOperator::maximally_mixed(2);
        let g = reversibility_gap(&KrausChannel::dephasing(0.25).unwrap(), &half).unwrap();
        assert!((g - binary_entropy(0.25).unwrap()).abs() < 1e-10);
        assert!((g - 0.562335).abs() < 1e-6);

        let cst = KrausChannel::constant(&random::unit_vector(2, 4), 2).unwrap();
        assert!((reversibility_gap(&cst, &half).unwrap() - 1.386294).abs() < 1e-6);
    }

    #[test]
    fn gap_equals_entropy_minus_coherent() {
        for seed in 0..10 {
            let phi = random_channel(3, 4, 2, seed).unwrap();
            let rho = random::density(3, 2, seed + 5);
            let g = reversibility_gap(&phi, &rho).unwrap();
            let alt = entropy_h(rho.positive()) - coherent_information(&phi, &rho).unwrap();
            assert!((g - alt).abs() <= 1e-8);
            assert!(g >= -1e-9);
        }
    }

    #[test]
    fn product_examples() {
        let a = random::density(2, 2, 1);
        let b = random::density(3, 2, 2);
        let (ok, defect) = is_product(&BipartiteState::product(&a, &b)).unwrap();
        assert!(ok && defect <= 1e-12);

        let s = 0.5f64.sqrt();
        let bell = CVec::from_vec(vec![c(s), c(0.0), c(0.0), c(s)]);
        let (ok, defect) = is_product(&BipartiteState::pure(&bell, vec![2, 2]).unwrap()).unwrap();
        assert!(!ok && defect > 0.5);
        assert!((defect - 1.5).abs() < 1e-12);

        let cc = DensityOperator::from_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        let (ok, defect) = is_product(&BipartiteState::new(cc, vec![2, 2]).unwrap()).unwrap();
        assert!(!ok);
        // Trace norm; the trace distance is half of this.
        assert!((defect - 1.0).abs() < 1e-12);

        let tri = BipartiteState::new(DensityOperator::maximally_mixed(8), vec![2, 2, 2]).unwrap();
        assert!(is_product(&tri).is_err());
    }

    #[test]
    fn unitary_decoder_is_inverse() {
        let u = random::haar_unitary(3, 7);
        let phi = KrausChannel::unitary(u.clone()).unwrap();
        let rho = random::density(3, 3, 8);
        let dec = build_decoder(&phi, &rho).unwrap();
        let inverse = KrausChannel::unitary(u.adjoint()).unwrap();
        assert!(max_norm(&(dec.choi() - inverse.choi())) <= 1e-10);
        let res = verify_reversibility_conditions(&phi, &dec, &rho).unwrap();
        assert!(res.a1 <= 1e-10 && res.a3 <= 1e-10 && res.eobr <= 1e-10);
    }

    #[test]
    fn isometric_embedding_decoder_recovers_everything() {
        let v = random::haar_isometry_with(&mut random::rng(3), 5, 2);
        let phi = KrausChannel::new(2, 5, vec![v]).unwrap();
        let dec = build_decoder(&phi, &random::density(2, 2, 4)).unwrap();
        for seed in 0..5 {
            let sigma = random::density(2, 2, seed + 50);
            let back = dec.apply(&phi.apply(&sigma).unwrap()).unwrap();
            assert!(max_norm(&(back.matrix() - sigma.matrix())) <= 1e-10);
        }
    }

    #[test]
    fn dephasing_is_not_reversible() {
        let rho = random::density(2, 2, 1);
        let err = build_decoder(&KrausChannel::dephasing(0.25).unwrap(), &rho);
        match err {
            Err(Error::NotReversible { gap, .. }) => assert!(gap > 0.1),
            other => panic!("unexpected {other:?}"),
        }
        let v = reversibility_verdict(&KrausChannel::dephasing(0.25).unwrap(), &rho).unwrap();
        assert!(!v.reversible && v.witness.is_none());
    }

    #[test]
    fn dephasing_identity_decoder_residuals() {
        let p = 0.25;
        let half = DensityOperator::maximally_mixed(2);
        let res = verify_reversibility_conditions(
            &KrausChannel::dephasing(p).unwrap(),
            &KrausChannel::identity(2),
            &half,
        )
        .unwrap();
        assert!((res.a3 - 2.0 * p).abs() < 1e-12);
        assert!((res.eobr - 2.0 * p).abs() < 1e-12);
        assert!(res.a1 > 0.0);
        assert!(res.agree(CONDITION_TOL));
    }

    /// Channel that is reversible on a subspace: encode a qubit into a
    /// 2-dimensional code space of a 4-dimensional output, then dephase in a
    /// basis that only acts on the flag qubit.
    fn flagged_code(p: f64) -> KrausChannel {
        // |0⟩ ↦ |0⟩|+⟩, |1⟩ ↦ |1⟩|+⟩; noise: Z on the second qubit.
        let s = 0.5f64.sqrt();
        let plus = CVec::from_vec(vec![c(s), c(s)]);
        let enc = CMat::from_fn(4, 2, |row, col| {
            let (a, f) = (row / 2, row % 2);
            if a == col {
                plus[f]
            } else {
                c(0.0)
            }
        });
        let z = CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), c(-1.0)]));
        let zf = kron(&CMat::identity(2, 2), &z);
        KrausChannel::new(2, 4, vec![&enc * c((1.0 - p).sqrt()), zf * &enc * c(p.sqrt())]).unwrap()
    }

    #[test]
    fn correctable_code_has_zero_gap_and_decoder() {
        let phi = flagged_code(0.3);
        for seed in 0..5 {
            let rho = random::density(2, 1 + seed as usize % 2, seed);
            let gap = reversibility_gap(&phi, &rho).unwrap();
            assert!(gap <= 1e-10, "{gap:e}");
            let dec = build_decoder(&phi, &rho).unwrap();
            let res = verify_reversibility_conditions(&phi, &dec, &rho).unwrap();
            assert!(res.eobr <= 1e-7 && res.all_pass(CONDITION_TOL), "{res:?}");
        }
    }

    #[test]
    fn decoder_on_low_rank_state_only_needs_support() {
        // Amplitude damping restricted to |0⟩ is trivially reversible.
        let phi = KrausChannel::amplitude_damping(0.4).unwrap();
        let rho = DensityOperator::basis(2, 0);
        assert!(reversibility_gap(&phi, &rho).unwrap() <= 1e-12);
        let dec = build_decoder(&phi, &rho).unwrap();
        let res = verify_reversibility_conditions(&phi, &dec, &rho).unwrap();
        assert!(res.all_pass(1e-10));
    }

    #[test]
    fn positive_gap_defeats_random_decoders() {
        let phi = KrausChannel::dephasing(0.1).unwrap();
        let rho = random::density(2, 2, 3);
        assert!(reversibility_gap(&phi, &rho).unwrap() >= 1e-3);
        let mut rng = random::rng(11);
        let mut candidates = vec![alignment_decoder(&phi, &rho).unwrap(), KrausChannel::identity(2)];
        for k in 1..=4 {
            candidates.push(random_decoder_probe(&mut rng, 2, 2, k).unwrap());
        }
        for dec in &candidates {
            let res = verify_reversibility_conditions(&phi, dec, &rho).unwrap();
            assert!(res.eobr >= 1e-4);
            assert!(res.agree(CONDITION_TOL));
        }
    }

    #[test]
    fn reference_environment_state_matches_gap() {
        let phi = random_channel(2, 3, 3, 5).unwrap();
        let rho = random::density(2, 2, 6);
        let re = reference_environment_state(&phi, &rho).unwrap();
        let (_, defect) = is_product(&re).unwrap();
        assert!(defect > 1e-3);
        let rho_e = phi.complement().apply(&rho).unwrap();
        assert!(max_norm(&(re.marginal(1).unwrap().matrix() - rho_e.matrix())) < 1e-12);
    }
}
