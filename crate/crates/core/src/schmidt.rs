//! Schmidt modes built algebraically from the factorizing operators.
//!
//! With `[A, B†]` real, `ψ_A + ψ_B` and `ψ_B − ψ_A` are eigenvectors of the
//! reduced density matrix, so the modes follow without an eigensolver:
//! `a₊† ∝ A† + B†`, `a₋† ∝ B† − A†`.

use num_complex::Complex64;
use serde::Serialize;

use crate::density::{eigen_oracle, ReducedDensityMatrix};
use crate::factorization::{factorize, FactorizationResult};
use crate::measures::schmidt_eigenvalues;
use crate::state::{BiphotonWaveFunction, JonesVector, QutritState};
use crate::{c64, EPS_NORM};

/// Below this `‖ψ_B − ψ_A‖` the difference no longer resolves a direction
/// to 1e-10 and `mode_minus` is taken as the orthogonal complement of `mode_plus`.
const MIN_MODE_DIFFERENCE: f64 = 1e-6;

/// `Ψ = √λ₊ φ₊⊗φ₊ + e^{2iφ} √λ₋ φ₋⊗φ₋` up to a global phase.
///
/// Phase conventions: `mode_plus` has its first nonzero component real and
/// positive; `mode_minus` is in phase with `(−φ₊,v*, φ₊,h*)`. With these, an
/// SU(2) transformation taking `φ₊ → H` takes `φ₋ → V` and leaves the state
/// as `√λ₊|2_H⟩ + e^{2iφ}√λ₋|2_V⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtDecomposition {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub mode_plus: JonesVector,
    pub mode_minus: JonesVector,
    /// Relative phase in `[0, π)`.
    pub phi: f64,
    /// `λ₊ = λ₋`: any orthonormal pair is a valid Schmidt basis; the pair
    /// returned comes from the factorization.
    pub basis_free: bool,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> BiphotonWaveFunction {
        let w_plus = c64(self.lambda_plus.sqrt(), 0.0);
        let w_minus = Complex64::from_polar(self.lambda_minus.sqrt(), 2.0 * self.phi);
        BiphotonWaveFunction::from_mode_pairs(&[
            (w_plus, self.mode_plus),
            (w_minus, self.mode_minus),
        ])
    }

    pub fn reconstruction_residual(&self, q: &QutritState) -> f64 {
        let rebuilt = self.reconstruct();
        let norm_err = (rebuilt.norm() - 1.0).abs();
        q.wave_function().distance_up_to_phase(&rebuilt).max(norm_err)
    }

    /// `|⟨φ₊|φ₋⟩|`; zero for commuting Schmidt-mode operators.
    pub fn mode_overlap(&self) -> f64 {
        self.mode_plus.overlap(&self.mode_minus)
    }

    /// Smallest overlap modulus between the algebraic modes and the
    /// eigenvectors of the reduced density matrix. `None` when the
    /// eigenvalues are degenerate.
    pub fn oracle_agreement(&self, q: &QutritState) -> Option<f64> {
        if self.basis_free {
            return None;
        }
        let eig = eigen_oracle(&ReducedDensityMatrix::from_qutrit(q)).ok()?;
        if eig.degenerate {
            return None;
        }
        Some(
            self.mode_plus
                .overlap(&eig.vectors[0])
                .min(self.mode_minus.overlap(&eig.vectors[1])),
        )
    }
}

/// `Σ_ij m_i* Ψ_ij m_j*`, the coefficient of `m⊗m` in a Takagi expansion.
fn takagi_coefficient(psi: &BiphotonWaveFunction, m: &JonesVector) -> Complex64 {
    let m = m.as_array();
    let mut acc = c64(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += m[i].conj() * psi.psi[i][j] * m[j].conj();
        }
    }
    acc
}

pub fn schmidt_decomposition(q: &QutritState) -> SchmidtDecomposition {
    let f = factorize(q);
    schmidt_from_factorization(q, &f)
}

pub fn schmidt_from_factorization(q: &QutritState, f: &FactorizationResult) -> SchmidtDecomposition {
    let (lambda_plus, lambda_minus) = schmidt_eigenvalues(q);
    let (a, b) = (f.mode_a, f.mode_b);

    // ‖ψ_A + ψ_B‖² = 2(1 + [A,B†]) ≥ 2, never singular.
    let mode_plus = JonesVector::normalized(a.h + b.h, a.v + b.v)
        .expect("sum of modes with nonnegative overlap is nonzero")
        .canonical_phase();
    let partner = mode_plus.orthogonal_partner();

    let diff = [b.h - a.h, b.v - a.v];
    let diff_norm = (diff[0].norm_sqr() + diff[1].norm_sqr()).sqrt();
    let mode_minus = if diff_norm > MIN_MODE_DIFFERENCE {
        let d = JonesVector {
            h: diff[0] / diff_norm,
            v: diff[1] / diff_norm,
        };
        let ov = d.inner(&partner);
        d.scale(ov / ov.norm())
    } else {
        partner
    };

    let psi = q.wave_function();
    let c_plus = takagi_coefficient(&psi, &mode_plus);
    let c_minus = takagi_coefficient(&psi, &mode_minus);
    let phi = if c_minus.norm() <= 1e-14 * c_plus.norm() {
        0.0
    } else {
        let ratio = c_minus / c_plus;
        let half = 0.5 * ratio.im.atan2(ratio.re);
        let reduced = half.rem_euclid(std::f64::consts::PI);
        if reduced >= std::f64::consts::PI { 0.0 } else { reduced }
    };

    SchmidtDecomposition {
        lambda_plus,
        lambda_minus,
        mode_plus,
        mode_minus,
        phi,
        basis_free: (lambda_plus - lambda_minus).abs() <= EPS_NORM,
    }
}
