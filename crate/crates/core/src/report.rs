//! Everything computable from a single state, gathered for JSON output.

use serde::Serialize;

use crate::factorization::{factorize, FactorizationResult};
use crate::measures::{concurrence, degree_of_polarization, k_and_entropy, stokes_vector};
use crate::poincare::{bisector_check, stokes_of_jones, QutritGeometry, StokesVector};
use crate::schmidt::{schmidt_from_factorization, SchmidtDecomposition};
use crate::state::QutritState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// Schmidt route: `Ψ` rebuilt from `λ±`, modes and `φ`.
    pub schmidt_reconstruction: f64,
    /// Factorization route: `Ψ` rebuilt from `N`, `ψ_A`, `ψ_B`.
    pub factorization_reconstruction: f64,
    /// `|C² + P² − 1|`.
    pub concurrence_polarization: f64,
    /// `|C − (1 − k²)/(1 + k²)|` with `k = [A, B†]`.
    pub commutator_concurrence: f64,
    /// `|k − cos(θ_AB/2)|`.
    pub commutator_angle: f64,
    /// `‖S_biph − (λ₊S₊ + λ₋S₋)‖`.
    pub stokes_composition: f64,
    /// Smallest overlap deficit `1 − |⟨mode|eigenvector⟩|`; absent when degenerate.
    pub eigen_oracle: Option<f64>,
}

impl Residuals {
    /// Largest reconstruction residual.
    pub fn max_reconstruction(&self) -> f64 {
        self.schmidt_reconstruction.max(self.factorization_reconstruction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtSummary {
    pub decomposition: SchmidtDecomposition,
    pub stokes_plus: StokesVector,
    pub stokes_minus: StokesVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorizationSummary {
    pub factorization: FactorizationResult,
    pub stokes_a: StokesVector,
    pub stokes_b: StokesVector,
    pub theta_ab: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub state: QutritState,
    pub concurrence: f64,
    pub polarization: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub entropy: f64,
    pub stokes_biphoton: StokesVector,
    pub factorization: FactorizationSummary,
    pub schmidt: SchmidtSummary,
    pub bisector_degenerate: bool,
    pub residuals: Residuals,
}

impl AnalysisReport {
    pub fn new(q: &QutritState) -> Self {
        let f = factorize(q);
        let s = schmidt_from_factorization(q, &f);
        let g = QutritGeometry::of(q);
        let c = concurrence(q);
        let p = degree_of_polarization(q);
        let (k, entropy) = k_and_entropy(s.lambda_plus, s.lambda_minus);
        let theta_ab = g.theta_ab();
        let s_biph = stokes_vector(q);
        let composed = g.s_plus * s.lambda_plus + g.s_minus * s.lambda_minus;

        let residuals = Residuals {
            schmidt_reconstruction: s.reconstruction_residual(q),
            factorization_reconstruction: f.reconstruction_residual(q),
            concurrence_polarization: (c * c + p * p - 1.0).abs(),
            commutator_concurrence: (c - crate::factorization::concurrence_from_commutator(&f)).abs(),
            commutator_angle: (f.commutator - (theta_ab / 2.0).cos()).abs(),
            stokes_composition: (s_biph - composed).norm(),
            eigen_oracle: s.oracle_agreement(q).map(|o| 1.0 - o),
        };

        AnalysisReport {
            state: *q,
            concurrence: c,
            polarization: p,
            lambda_plus: s.lambda_plus,
            lambda_minus: s.lambda_minus,
            k,
            entropy,
            stokes_biphoton: s_biph,
            factorization: FactorizationSummary {
                factorization: f,
                stokes_a: g.s_a,
                stokes_b: g.s_b,
                theta_ab,
            },
            schmidt: SchmidtSummary {
                decomposition: s,
                stokes_plus: stokes_of_jones(&s.mode_plus).expect("unit mode"),
                stokes_minus: stokes_of_jones(&s.mode_minus).expect("unit mode"),
            },
            bisector_degenerate: bisector_check(q).degenerate,
            residuals,
        }
    }

    /// Both reconstruction routes within `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.residuals.max_reconstruction() < tol
    }
}
