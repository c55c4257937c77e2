//! One-photon reduced density matrix and a closed-form 2×2 Hermitian
//! eigendecomposition used as the independent check on the algebraic
//! Schmidt construction.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::poincare::StokesVector;
use crate::state::{JonesVector, QutritState};
use crate::{c64, Error, Result, EPS_NORM};

/// `ρ_r = Tr_{σ₂} |Ψ⟩⟨Ψ|`, a 2×2 Hermitian matrix with unit trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix {
    pub rho: [[Complex64; 2]; 2],
}

impl ReducedDensityMatrix {
    /// Validating constructor (Hermitian, unit trace, positive semidefinite).
    pub fn new(rho: [[Complex64; 2]; 2]) -> Result<Self> {
        let m = ReducedDensityMatrix { rho };
        let dev = m.hermiticity_deviation();
        if !dev.is_finite() || dev > EPS_NORM {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = m.trace();
        if (tr - 1.0).abs() > EPS_NORM {
            return Err(Error::InvalidParameter(format!("trace {tr} is not 1")));
        }
        let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
        if det < -EPS_NORM {
            return Err(Error::InvalidParameter(format!(
                "negative eigenvalue (det = {det:e})"
            )));
        }
        Ok(m)
    }

    /// Entries written out in terms of the amplitudes:
    /// diagonal `|c1|² + |c2|²/2`, `|c3|² + |c2|²/2`; off-diagonal
    /// `(c1 c2* + c2 c3*)/√2`.
    pub fn from_qutrit(q: &QutritState) -> Self {
        let [c1, c2, c3] = q.amplitudes();
        let half_c2 = c2.norm_sqr() / 2.0;
        let off = (c1 * c2.conj() + c2 * c3.conj()) * FRAC_1_SQRT_2;
        ReducedDensityMatrix {
            rho: [
                [c64(c1.norm_sqr() + half_c2, 0.0), off],
                [off.conj(), c64(c3.norm_sqr() + half_c2, 0.0)],
            ],
        }
    }

    /// `½(I + S·σ)` in the polarization-matrix numbering.
    pub fn from_stokes(s: &StokesVector) -> Self {
        ReducedDensityMatrix {
            rho: [
                [c64((1.0 + s.s3) / 2.0, 0.0), c64(s.s1 / 2.0, -s.s2 / 2.0)],
                [c64(s.s1 / 2.0, s.s2 / 2.0), c64((1.0 - s.s3) / 2.0, 0.0)],
            ],
        }
    }

    /// Rank-one `|j⟩⟨j|`.
    pub fn from_jones(j: &JonesVector) -> Self {
        let a = j.as_array();
        let mut rho = [[c64(0.0, 0.0); 2]; 2];
        for (r, row) in rho.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = a[r] * a[c].conj();
            }
        }
        ReducedDensityMatrix { rho }
    }

    pub fn trace(&self) -> f64 {
        (self.rho[0][0] + self.rho[1][1]).re
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let r = &self.rho;
        [
            r[0][0].im.abs(),
            r[1][1].im.abs(),
            (r[0][1] - r[1][0].conj()).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// `S = Tr(ρ σ)` with `S1 ↔ σx`, `S2 ↔ σy`, `S3 ↔ σz`.
    pub fn stokes(&self) -> StokesVector {
        let r = &self.rho;
        StokesVector {
            s1: 2.0 * r[1][0].re,
            s2: 2.0 * r[1][0].im,
            s3: (r[0][0] - r[1][1]).re,
        }
    }

    pub fn apply(&self, v: &JonesVector) -> [Complex64; 2] {
        let r = &self.rho;
        [
            r[0][0] * v.h + r[0][1] * v.v,
            r[1][0] * v.h + r[1][1] * v.v,
        ]
    }
}

/// Eigenpairs of a 2×2 Hermitian matrix, largest eigenvalue first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermitianEigen {
    pub values: [f64; 2],
    pub vectors: [JonesVector; 2],
    /// Eigenvalues coincide within tolerance; any orthonormal basis is valid
    /// and `vectors` is the computational basis.
    pub degenerate: bool,
}

/// Closed-form eigendecomposition from trace and determinant.
pub fn eigen_oracle(rho: &ReducedDensityMatrix) -> Result<HermitianEigen> {
    eigen_oracle_with_tol(rho, EPS_NORM)
}

pub fn eigen_oracle_with_tol(rho: &ReducedDensityMatrix, tol: f64) -> Result<HermitianEigen> {
    let dev = rho.hermiticity_deviation();
    if !dev.is_finite() || dev > tol {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let a = rho.rho[0][0].re;
    let d = rho.rho[1][1].re;
    let b = rho.rho[0][1];
    let mean = (a + d) / 2.0;
    let half_diff = (a - d) / 2.0;
    let radius = half_diff.hypot(b.norm());
    let values = [mean + radius, mean - radius];

    if radius <= tol {
        return Ok(HermitianEigen {
            values,
            vectors: [JonesVector::H, JonesVector::V],
            degenerate: true,
        });
    }

    // (ρ − λ₋)·e is in the range of the λ₊ projector for any e; use the
    // column with the larger norm.
    let lm = values[1];
    let col0 = [c64(a - lm, 0.0), b.conj()];
    let col1 = [b, c64(d - lm, 0.0)];
    let norm0 = col0[0].norm_sqr() + col0[1].norm_sqr();
    let norm1 = col1[0].norm_sqr() + col1[1].norm_sqr();
    let col = if norm0 >= norm1 { col0 } else { col1 };
    let plus = JonesVector::normalized(col[0], col[1])?.canonical_phase();
    let minus = plus.orthogonal_partner();
    Ok(HermitianEigen {
        values,
        vectors: [plus, minus],
        degenerate: false,
    })
}
