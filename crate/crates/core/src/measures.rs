//! Entanglement and polarization measures of a pure qutrit.

use crate::density::ReducedDensityMatrix;
use crate::poincare::StokesVector;
use crate::state::QutritState;

/// Wootters concurrence `|2 c1 c3 − c2²|`.
pub fn concurrence(q: &QutritState) -> f64 {
    let [c1, c2, c3] = q.amplitudes();
    (c1 * c3 * 2.0 - c2 * c2).norm().min(1.0)
}

/// `P = |S| = √(1 − C²)`, evaluated as the Stokes-vector norm: near `C = 1`
/// the square root of `1 − C²` would turn rounding in `C` into errors of
/// order `√ε` in `P` and `λ±`.
pub fn degree_of_polarization(q: &QutritState) -> f64 {
    stokes_vector(q).norm().min(1.0)
}

pub fn reduced_density(q: &QutritState) -> ReducedDensityMatrix {
    ReducedDensityMatrix::from_qutrit(q)
}

/// Schmidt weights `λ± = (1 ± P)/2`, largest first.
pub fn schmidt_eigenvalues(q: &QutritState) -> (f64, f64) {
    let p = degree_of_polarization(q);
    ((1.0 + p) / 2.0, (1.0 - p) / 2.0)
}

/// Schmidt number `K = 1/Σλ²` and reduced-state entropy in bits.
pub fn schmidt_k_and_entropy(q: &QutritState) -> (f64, f64) {
    let (lp, lm) = schmidt_eigenvalues(q);
    k_and_entropy(lp, lm)
}

pub fn k_and_entropy(lambda_plus: f64, lambda_minus: f64) -> (f64, f64) {
    let k = 1.0 / (lambda_plus * lambda_plus + lambda_minus * lambda_minus);
    let h = |l: f64| if l > 0.0 { -l * l.log2() } else { 0.0 };
    (k, h(lambda_plus) + h(lambda_minus))
}

/// `C = √(2(1 − 1/K))`.
pub fn concurrence_from_k(k: f64) -> f64 {
    (2.0 * (1.0 - 1.0 / k)).max(0.0).sqrt()
}

/// Biphoton Stokes vector `Tr(ρ_r σ)`.
pub fn stokes_vector(q: &QutritState) -> StokesVector {
    ReducedDensityMatrix::from_qutrit(q).stokes()
}
