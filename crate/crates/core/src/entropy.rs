//! Entropy of positive trace-class operators and the relative entropy with
//! the `+Tr B − Tr A` correction for non-normalized arguments.
//!
//! Natural logarithms throughout.

use crate::operator::{same_dim, PositiveOperator};
use crate::{Error, Result};

/// Relative mass of `A` outside `supp B` tolerated before declaring `+∞`.
pub const SUPPORT_MASS_TOL: f64 = 1e-9;
/// Negative rounding of a relative entropy down to this value is clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-10;

/// `η(x) = −x ln x`, `η(0) = 0`.
pub fn eta(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::Domain(format!("eta is undefined at {x}")));
    }
    Ok(eta_unchecked(x))
}

#[inline]
pub(crate) fn eta_unchecked(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// `h₂(x) = η(x) + η(1 − x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy is undefined at {x}")));
    }
    Ok(eta_unchecked(x) + eta_unchecked(1.0 - x))
}

/// `S(A) = Tr η(A)`.
pub fn entropy_s(a: &PositiveOperator) -> f64 {
    a.eigenvalues().iter().map(|&v| eta_unchecked(v)).sum()
}

/// `H(A) = Tr η(A) − η(Tr A)`; equals `S(A)` on states and is
/// homogeneous of degree one.
pub fn entropy_h(a: &PositiveOperator) -> f64 {
    (entropy_s(a) - eta_unchecked(a.trace())).max(0.0)
}

/// The other form of the same quantity, `Tr A · S(A / Tr A)`.
pub fn entropy_h_normalized_form(a: &PositiveOperator) -> f64 {
    let t = a.trace();
    if t <= 0.0 {
        return 0.0;
    }
    t * a.eigenvalues().iter().map(|&v| eta_unchecked(v / t)).sum::<f64>()
}

/// Value of `H(A‖B)`: finite, or `+∞` when `A` has weight outside `supp B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelEntropyValue {
    pub value: f64,
    pub support_violation: bool,
}

impl RelEntropyValue {
    pub fn infinite() -> Self {
        Self {
            value: f64::INFINITY,
            support_violation: true,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    pub fn finite(&self) -> Option<f64> {
        self.is_finite().then_some(self.value)
    }
}

/// `H(A‖B) = Tr A ln A − Tr A ln B + Tr B − Tr A`, evaluated in the two
/// eigenbases: `Σ λ_i ln λ_i − Σ_ij |⟨a_i|b_j⟩|² λ_i ln μ_j + Tr B − Tr A`.
///
/// Eigenvalues `μ_j` at or below `B`'s support threshold (`1e-10·μ_max`
/// unless `B` was built as an exact tensor product) are outside its support. If the
/// mass of `A` on that kernel exceeds `SUPPORT_MASS_TOL · Tr A` the result is
/// `+∞`; otherwise those cross terms are dropped.
pub fn relative_entropy(a: &PositiveOperator, b: &PositiveOperator) -> Result<RelEntropyValue> {
    same_dim(a.dim(), b.dim())?;
    let sa = a.spectrum();
    let sb = b.spectrum();
    let threshold = b.support_threshold();

    // Only eigenvectors of A with weight contribute.
    let active: Vec<usize> = (0..sa.dim()).filter(|&i| sa.values[i] > 0.0).collect();
    let mut outside_mass = 0.0;
    let mut cross = 0.0;
    if !active.is_empty() {
        // overlaps[(k, j)] = ⟨a_{active[k]}|b_j⟩
        let mut a_cols = crate::operator::CMat::zeros(sa.dim(), active.len());
        for (k, &i) in active.iter().enumerate() {
            a_cols.set_column(k, &sa.vectors.column(i));
        }
        let overlaps = a_cols.adjoint() * &sb.vectors;
        for (k, &i) in active.iter().enumerate() {
            let lambda = sa.values[i];
            for (j, &mu) in sb.values.iter().enumerate() {
                let w = overlaps[(k, j)].norm_sqr() * lambda;
                if mu > threshold {
                    cross += w * mu.ln();
                } else {
                    outside_mass += w;
                }
            }
        }
    }
    if outside_mass > SUPPORT_MASS_TOL * a.trace() {
        return Ok(RelEntropyValue::infinite());
    }
    let self_term: f64 = sa
        .values
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum();
    let mut value = self_term - cross + b.trace() - a.trace();
    if value < 0.0 && value >= -NEGATIVE_CLAMP {
        value = 0.0;
    }
    Ok(RelEntropyValue {
        value,
        support_violation: false,
    })
}
