//! Jones calculus for the quarter/half-wave plates in front of the PBS.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::schmidt::schmidt_decomposition;
use crate::state::{JonesVector, QutritState};
use crate::{c64, Error, Result, EPS_NORM};

pub type JonesMatrix = [[Complex64; 2]; 2];

pub const IDENTITY: JonesMatrix = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlateKind {
    Quarter,
    Half,
}

impl PlateKind {
    pub fn retardance(self) -> f64 {
        match self {
            PlateKind::Quarter => PI / 2.0,
            PlateKind::Half => PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveplateSetting {
    pub kind: PlateKind,
    /// Fast-axis angle from H, in `[0, π)`.
    pub axis_angle: f64,
}

impl WaveplateSetting {
    /// Reduces `axis_angle` into `[0, π)`.
    pub fn new(kind: PlateKind, axis_angle: f64) -> Result<Self> {
        if !axis_angle.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut a = axis_angle.rem_euclid(PI);
        if a >= PI {
            a = 0.0;
        }
        Ok(WaveplateSetting { kind, axis_angle: a })
    }
}

/// Linear retarder with fast axis at `θ` and retardance `Γ`:
/// `R(θ) diag(1, e^{iΓ}) R(−θ)`.
pub fn retarder(axis_angle: f64, retardance: f64) -> JonesMatrix {
    let (s, c) = axis_angle.sin_cos();
    let xi = Complex64::from_polar(1.0, retardance);
    let one = c64(1.0, 0.0);
    let off = (one - xi) * (s * c);
    [[one * (c * c) + xi * (s * s), off], [off, one * (s * s) + xi * (c * c)]]
}

pub fn jones_of_waveplate(w: &WaveplateSetting) -> JonesMatrix {
    retarder(w.axis_angle, w.kind.retardance())
}

pub fn mat_mul(a: &JonesMatrix, b: &JonesMatrix) -> JonesMatrix {
    let mut m = [[c64(0.0, 0.0); 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn apply(u: &JonesMatrix, j: &JonesVector) -> JonesVector {
    JonesVector {
        h: u[0][0] * j.h + u[0][1] * j.v,
        v: u[1][0] * j.h + u[1][1] * j.v,
    }
}

/// `max |(U†U − I)_ij|`.
pub fn unitarity_deviation(u: &JonesMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let e = u[0][i].conj() * u[0][j] + u[1][i].conj() * u[1][j];
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((e - target).norm());
        }
    }
    dev
}

/// Applies the same single-photon unitary to both photons: `Ψ → U Ψ Uᵀ`.
pub fn transform_qutrit(q: &QutritState, u: &JonesMatrix) -> Result<QutritState> {
    transform_qutrit_with_tol(q, u, EPS_NORM)
}

pub fn transform_qutrit_with_tol(q: &QutritState, u: &JonesMatrix, tol: f64) -> Result<QutritState> {
    let deviation = unitarity_deviation(u);
    if !deviation.is_finite() || deviation > tol {
        return Err(Error::NotUnitary { deviation });
    }
    let psi = q.wave_function().psi;
    let mut out = [[c64(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            for k in 0..2 {
                for l in 0..2 {
                    *e += u[i][k] * psi[k][l] * u[j][l];
                }
            }
        }
    }
    let w = crate::state::BiphotonWaveFunction { psi: out };
    QutritState::from_wave_function(&w)
}

/// Quarter-wave then half-wave plate taking the leading Schmidt mode to H.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlignmentPlates {
    pub quarter: WaveplateSetting,
    pub half: WaveplateSetting,
    /// `λ₊ = λ₋`; the plates align the factorization-derived Schmidt pair.
    pub degenerate: bool,
}

impl AlignmentPlates {
    /// Composite `U = U_half · U_quarter` (the quarter-wave plate comes first).
    pub fn unitary(&self) -> JonesMatrix {
        mat_mul(&jones_of_waveplate(&self.half), &jones_of_waveplate(&self.quarter))
    }
}

/// Plates mapping `mode` to H up to a phase. The quarter-wave plate sits on
/// the major axis of the polarization ellipse, which linearizes it; the
/// half-wave plate then rotates that linear state onto H.
pub fn plates_for_mode(mode: &JonesVector) -> AlignmentPlates {
    let hv = mode.h.conj() * mode.v;
    let azimuth = 0.5 * (2.0 * hv.re).atan2(mode.h.norm_sqr() - mode.v.norm_sqr());
    let quarter = WaveplateSetting::new(PlateKind::Quarter, azimuth).expect("finite");
    let lin = apply(&jones_of_waveplate(&quarter), mode);
    let lead = if lin.h.norm() >= lin.v.norm() { lin.h } else { lin.v };
    let unphase = lead.conj() / lead.norm();
    let beta = (lin.v * unphase).re.atan2((lin.h * unphase).re);
    let half = WaveplateSetting::new(PlateKind::Half, beta / 2.0).expect("finite");
    AlignmentPlates {
        quarter,
        half,
        degenerate: false,
    }
}

pub fn schmidt_aligning_plates(q: &QutritState) -> AlignmentPlates {
    let s = schmidt_decomposition(q);
    AlignmentPlates {
        degenerate: s.basis_free,
        ..plates_for_mode(&s.mode_plus)
    }
}
