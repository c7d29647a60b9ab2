//! Seeded random states, vectors and Haar isometries.
//!
//! Every generator takes an explicit `u64` seed and uses ChaCha8, so corpora
//! are reproducible across platforms and thread schedules.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::operator::{c, CMat, CVec, DensityOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Uniformly random unit vector.
pub fn unit_vector_with<R: Rng>(rng: &mut R, d: usize) -> CVec {
    let v = CVec::from_fn(d, |_, _| complex_gaussian(rng));
    let n = v.norm();
    v / c(n)
}

pub fn unit_vector(d: usize, seed: u64) -> CVec {
    unit_vector_with(&mut rng(seed), d)
}

/// Haar-distributed isometry `rows × cols` (`rows ≥ cols`): QR of a complex
/// Gaussian matrix with the phases of `R`'s diagonal absorbed into `Q`.
pub fn haar_isometry_with<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rng, rows, cols);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..cols {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        for i in 0..rows {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn haar_unitary(d: usize, seed: u64) -> CMat {
    haar_isometry_with(&mut rng(seed), d, d)
}

/// Random density operator of the given rank: `G G* / Tr(G G*)` with `G` a
/// `d × rank` complex Gaussian matrix (Hilbert–Schmidt measure at full rank).
pub fn density_with<R: Rng>(rng: &mut R, d: usize, rank: usize) -> DensityOperator {
    let g = ginibre(rng, d, rank.clamp(1, d));
    let m = &g * g.adjoint();
    let t = m.trace().re;
    DensityOperator::from_psd(m / c(t)).expect("Gram matrices are valid states")
}

pub fn density(d: usize, rank: usize, seed: u64) -> DensityOperator {
    density_with(&mut rng(seed), d, rank)
}

pub fn pure_state_with<R: Rng>(rng: &mut R, d: usize) -> DensityOperator {
    DensityOperator::pure(&unit_vector_with(rng, d)).expect("unit vector")
}
