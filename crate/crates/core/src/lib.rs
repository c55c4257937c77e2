//! Polarization biphoton qutrits: Schmidt decomposition, entanglement and
//! polarization measures, factorization of the two-photon creation operator,
//! Poincaré-sphere geometry and a simulator for the coincidence-counting
//! measurement of the Schmidt parameters.
//!
//! A qutrit `c1|2_H⟩ + c2|1_H,1_V⟩ + c3|2_V⟩` is held as a [`QutritState`]
//! with a fixed global-phase convention. Everything downstream is a pure
//! function of that value.
//!
//! Stokes components follow the polarization-matrix numbering
//! `ρ = ½[[1+S3, S1−iS2], [S1+iS2, 1−S3]]`: `S3` is the H/V axis, `S1` the
//! ±45° axis and `S2` the circular axis.

pub mod cli;
pub mod density;
mod error;
pub mod expsim;
pub mod factorization;
pub mod measures;
pub mod poincare;
pub mod report;
pub mod schmidt;
pub mod state;

pub use density::{eigen_oracle, HermitianEigen, ReducedDensityMatrix};
pub use error::{Error, Result};
pub use factorization::{concurrence_from_commutator, factorize, FactorizationResult, Root};
pub use measures::{
    concurrence, degree_of_polarization, reduced_density, schmidt_eigenvalues,
    schmidt_k_and_entropy, stokes_vector,
};
pub use poincare::{SphereFrame, StokesVector};
pub use schmidt::{schmidt_decomposition, SchmidtDecomposition};
pub use state::{make_qutrit, wave_function, BiphotonWaveFunction, JonesVector, QutritState};

pub use num_complex::Complex64;

use serde::{Deserialize, Serialize};

/// Normalization / Hermiticity tolerance.
pub const EPS_NORM: f64 = 1e-12;
/// Reconstruction tolerance.
pub const EPS_REC: f64 = 1e-10;
/// Tolerance for geometric predicates on the Poincaré sphere.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub norm: f64,
    pub rec: f64,
    pub geom: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm: EPS_NORM,
            rec: EPS_REC,
            geom: EPS_GEOM,
        }
    }
}

/// Shorthand for `Complex64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
