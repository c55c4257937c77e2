//! Phase delay between the H and V pairs, and the postselected two-qubit state.

use num_complex::Complex64;
use serde::Serialize;

use crate::state::{complex_serde, QutritState};
use crate::{c64, Error, Result, EPS_REC};

/// Two tilted birefringent plates with horizontal optic axes. `length_l` is
/// in units of the reduced wavelength `λ/2π`, so `Δn·l` is already a phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePlate {
    pub delta_n: f64,
    pub length_l: f64,
    pub tilt_delta: f64,
}

impl PhasePlate {
    pub fn new(delta_n: f64, length_l: f64, tilt_delta: f64) -> Result<Self> {
        if !(delta_n.is_finite() && length_l.is_finite() && tilt_delta.is_finite()) {
            return Err(Error::NonFinite);
        }
        if tilt_delta.abs() >= std::f64::consts::PI {
            return Err(Error::InvalidParameter(format!("tilt {tilt_delta} outside (-π, π)")));
        }
        Ok(PhasePlate { delta_n, length_l, tilt_delta })
    }
}

/// `Δφ = 2Δn·l / cos(δ/2)`.
pub fn phase_plate_delay(p: &PhasePlate) -> f64 {
    2.0 * p.delta_n * p.length_l / (p.tilt_delta / 2.0).cos()
}

/// `φ → φ + Δφ`: the `|2_V⟩` amplitude picks up `e^{2iΔφ}`.
pub fn apply_phase_shift(q: &QutritState, delta_phi: f64) -> Result<QutritState> {
    let [c1, c2, c3] = q.amplitudes();
    QutritState::new(c1, c2, c3 * Complex64::from_polar(1.0, 2.0 * delta_phi))
}

/// `a|1_H1, 1_H2⟩ + b|1_V1, 1_V2⟩`, normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitState {
    #[serde(with = "complex_serde")]
    pub a: Complex64,
    #[serde(with = "complex_serde")]
    pub b: Complex64,
}

impl TwoQubitState {
    /// Amplitudes over `HH, HV, VH, VV`.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        let z = c64(0.0, 0.0);
        [self.a, z, z, self.b]
    }

    /// `2|αδ − βγ|` over the four amplitudes.
    pub fn concurrence(&self) -> f64 {
        let [al, be, ga, de] = self.amplitudes();
        (2.0 * (al * de - be * ga).norm()).min(1.0)
    }

    pub fn is_maximally_entangled(&self, tol: f64) -> bool {
        (self.concurrence() - 1.0).abs() <= tol
    }
}

/// The state left when one photon leaves each port of the non-polarizing
/// splitter: `√λ₊|1_H1,1_H2⟩ + e^{2iφ}√λ₋|1_V1,1_V2⟩`.
pub fn postselect_split(q_aligned: &QutritState) -> Result<TwoQubitState> {
    let c2_abs = q_aligned.c2().norm();
    if c2_abs > EPS_REC {
        return Err(Error::NotAligned { c2_abs });
    }
    let (a, b) = (q_aligned.c1(), q_aligned.c3());
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    Ok(TwoQubitState { a: a / n, b: b / n })
}
