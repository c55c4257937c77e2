//! Factorization `|Ψ⟩ = N A†B†|0⟩` of the two-photon creation operator.
//!
//! `Q̂ = c1/√2 a_H†² + c2 a_H†a_V† + c3/√2 a_V†²` factors like the quadratic
//! `Q(x) = c1/√2 x² + c2 x + c3/√2`; each root `x` gives a single-photon mode
//! `(1, −x)/√(1+|x|²)`. A root at infinity (when `c1 = 0`) gives pure V.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::state::{BiphotonWaveFunction, JonesVector, QutritState};
use crate::{c64, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Root {
    Finite(Complex64),
    AtInfinity,
}

impl Root {
    /// Homogeneous root `num/den`; `den == 0` is the point at infinity.
    fn from_ratio(num: Complex64, den: Complex64) -> Root {
        if den == c64(0.0, 0.0) {
            Root::AtInfinity
        } else {
            Root::Finite(num / den)
        }
    }

    /// `(1, −x)/√(1+|x|²)`, or `(0, 1)` at infinity.
    pub fn mode(&self) -> JonesVector {
        match *self {
            Root::AtInfinity => JonesVector::V,
            Root::Finite(x) => {
                let r = x.norm();
                if r <= 1.0 {
                    let n = (1.0 + r * r).sqrt();
                    JonesVector {
                        h: c64(1.0 / n, 0.0),
                        v: -x / n,
                    }
                } else {
                    let inv = 1.0 / r;
                    let n = (1.0 + inv * inv).sqrt();
                    JonesVector {
                        h: c64(inv / n, 0.0),
                        v: -(x / r) / n,
                    }
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Root::Finite(_))
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Root::AtInfinity => s.serialize_str("infinity"),
            Root::Finite(x) => {
                let mut st = s.serialize_struct("Complex", 2)?;
                st.serialize_field("re", &x.re)?;
                st.serialize_field("im", &x.im)?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorizationResult {
    pub x_a: Root,
    pub x_b: Root,
    /// Phase split `A† → e^{iφ₀}A†`, `B† → e^{−iφ₀}B†` that makes `[A, B†]`
    /// real and nonnegative.
    pub phi0: f64,
    pub mode_a: JonesVector,
    pub mode_b: JonesVector,
    /// `[A, B†] = ⟨ψ_A|ψ_B⟩`, real in `[0, 1]`.
    pub commutator: f64,
    /// `N = 1/√(1 + [A, B†]²)`.
    pub norm_n: f64,
}

impl FactorizationResult {
    /// `N·(ψ_A⊗ψ_B + ψ_B⊗ψ_A)/√2`.
    pub fn reconstruct(&self) -> BiphotonWaveFunction {
        BiphotonWaveFunction::symmetrized_product(&self.mode_a, &self.mode_b)
            .scale(c64(self.norm_n, 0.0))
    }

    /// Distance (up to global phase) between the rebuilt and original wave functions.
    pub fn reconstruction_residual(&self, q: &QutritState) -> f64 {
        let rebuilt = self.reconstruct();
        let norm_err = (rebuilt.norm() - 1.0).abs();
        q.wave_function().distance_up_to_phase(&rebuilt).max(norm_err)
    }
}

/// Roots of `Q(x)`, labelled so that `x_A` takes the `+` branch of the
/// principal square root. Each root is evaluated from whichever of the two
/// algebraically equivalent forms
/// `(−c2 ± s)/(√2 c1)` and `√2 c3/(−c2 ∓ s)` is better conditioned.
pub fn roots(q: &QutritState) -> (Root, Root) {
    let [c1, c2, c3] = q.amplitudes();
    let s = (c2 * c2 - c1 * c3 * 2.0).sqrt();
    let pick = |sign: f64| {
        let (n1, d1) = (-c2 + s * sign, c1 * SQRT_2);
        let (n2, d2) = (c3 * SQRT_2, -c2 - s * sign);
        if n1.norm_sqr() + d1.norm_sqr() >= n2.norm_sqr() + d2.norm_sqr() {
            Root::from_ratio(n1, d1)
        } else {
            Root::from_ratio(n2, d2)
        }
    };
    (pick(1.0), pick(-1.0))
}

pub fn factorize(q: &QutritState) -> FactorizationResult {
    let (x_a, x_b) = roots(q);
    let a = x_a.mode();
    let b = x_b.mode();
    let overlap = a.inner(&b);
    let phi0 = if overlap == c64(0.0, 0.0) {
        0.0
    } else {
        0.5 * overlap.im.atan2(overlap.re)
    };
    let phase = Complex64::from_polar(1.0, phi0);
    let mode_a = a.scale(phase);
    let mode_b = b.scale(phase.conj());
    let commutator = overlap.norm().min(1.0);
    FactorizationResult {
        x_a,
        x_b,
        phi0,
        mode_a,
        mode_b,
        commutator,
        norm_n: 1.0 / (1.0 + commutator * commutator).sqrt(),
    }
}

/// `C = (1 − k²)/(1 + k²)` with `k = [A, B†]`.
pub fn concurrence_from_commutator(f: &FactorizationResult) -> f64 {
    concurrence_from_commutator_value(f.commutator)
}

pub fn concurrence_from_commutator_value(k: f64) -> f64 {
    let k2 = k * k;
    (1.0 - k2) / (1.0 + k2)
}

/// Checks the fields of a factorization against each other.
pub fn validate(f: &FactorizationResult, tol: f64) -> Result<()> {
    let k = f.mode_a.inner(&f.mode_b);
    if (k.re - f.commutator).abs() > tol || k.im.abs() > tol {
        return Err(crate::Error::InvalidParameter(format!(
            "commutator {} does not match mode overlap {k}",
            f.commutator
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{concurrence, make_qutrit};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    const Z: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn hv_pair_factorizes_into_h_and_v() {
        let f = factorize(&make_qutrit(Z, ONE, Z).unwrap());
        assert_eq!(f.x_a, Root::Finite(Z));
        assert_eq!(f.x_b, Root::AtInfinity);
        assert_eq!(f.mode_a, JonesVector::H);
        assert_eq!(f.mode_b, JonesVector::V);
        assert_eq!(f.commutator, 0.0);
        assert_eq!(f.norm_n, 1.0);
        assert_eq!(f.phi0, 0.0);
    }

    #[test]
    fn hh_pair_has_double_root() {
        let f = factorize(&make_qutrit(ONE, Z, Z).unwrap());
        assert_eq!(f.x_a, Root::Finite(Z));
        assert_eq!(f.x_b, Root::Finite(Z));
        assert_eq!(f.mode_a, JonesVector::H);
        assert_eq!(f.mode_b, JonesVector::H);
        assert_eq!(f.commutator, 1.0);
        assert_abs_diff_eq!(f.norm_n, FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn vv_pair_has_both_roots_at_infinity() {
        let q = make_qutrit(Z, Z, ONE).unwrap();
        let f = factorize(&q);
        assert_eq!(f.x_a, Root::AtInfinity);
        assert_eq!(f.x_b, Root::AtInfinity);
        assert_eq!(f.mode_a, JonesVector::V);
        assert_eq!(f.commutator, 1.0);
        assert!(f.reconstruction_residual(&q) < 1e-15);
    }

    #[test]
    fn linear_case_when_c1_vanishes() {
        let q = make_qutrit(Z, c64(0.6, 0.0), c64(0.0, 0.8)).unwrap();
        let f = factorize(&q);
        let [_, c2, c3] = q.amplitudes();
        let expected = -c3 / (c2 * SQRT_2);
        let finite: Vec<_> = [f.x_a, f.x_b]
            .into_iter()
            .filter_map(|r| match r {
                Root::Finite(x) => Some(x),
                Root::AtInfinity => None,
            })
            .collect();
        assert_eq!(finite.len(), 1);
        assert_abs_diff_eq!((finite[0] - expected).norm(), 0.0, epsilon = 1e-15);
        assert!(f.reconstruction_residual(&q) < 1e-14);
    }

    #[test]
    fn alpha_family_commutator_and_norm() {
        let q = QutritState::alpha_family(PI / 3.0).unwrap();
        let f = factorize(&q);
        assert_abs_diff_eq!(f.commutator, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(f.norm_n, 1.0 / 1.25f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(concurrence_from_commutator(&f), 0.6, epsilon = 1e-15);
        // A† = a_H†, B† = cos α a_H† + sin α a_V†
        assert_abs_diff_eq!(f.mode_a.overlap(&JonesVector::H), 1.0, epsilon = 1e-15);
        let b = JonesVector::new(c64(0.5, 0.0), c64(3f64.sqrt() / 2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(f.mode_b.overlap(&b), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn commutator_formula_values() {
        assert_eq!(concurrence_from_commutator_value(0.0), 1.0);
        assert_eq!(concurrence_from_commutator_value(1.0), 0.0);
        assert_abs_diff_eq!(concurrence_from_commutator_value(0.5), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn general_state_matches_closed_forms() {
        let q = make_qutrit(c64(0.4, 0.0), c64(-0.3, 0.5), c64(0.2, -0.6)).unwrap();
        let f = factorize(&q);
        validate(&f, 1e-12).unwrap();
        let (Root::Finite(xa), Root::Finite(xb)) = (f.x_a, f.x_b) else {
            panic!("expected finite roots");
        };
        let [c1, c2, c3] = q.amplitudes();
        for x in [xa, xb] {
            let qx = c1 / SQRT_2 * x * x + c2 * x + c3 / SQRT_2;
            assert!(qx.norm() < 1e-14);
        }
        // commutator from the roots directly
        let k = (ONE + xa.conj() * xb).norm()
            / ((1.0 + xa.norm_sqr()) * (1.0 + xb.norm_sqr())).sqrt();
        assert_abs_diff_eq!(f.commutator, k, epsilon = 1e-15);
        // phase from the half-angle arctangent, up to the branch of tan⁻¹
        let (ra, pa) = xa.to_polar();
        let (rb, pb) = xb.to_polar();
        let t = (ra * rb * (pb - pa).sin()) / (1.0 + ra * rb * (pb - pa).cos());
        let phi0_atan = 0.5 * t.atan();
        let diff = (f.phi0 - phi0_atan).rem_euclid(PI / 2.0);
        assert!(diff < 1e-14 || (PI / 2.0 - diff) < 1e-14);
        assert!(f.reconstruction_residual(&q) < 1e-14);
        assert_abs_diff_eq!(concurrence_from_commutator(&f), concurrence(&q), epsilon = 1e-14);
    }

    #[test]
    fn root_json() {
        assert_eq!(serde_json::to_string(&Root::AtInfinity).unwrap(), "\"infinity\"");
        assert_eq!(
            serde_json::to_string(&Root::Finite(c64(1.0, -2.0))).unwrap(),
            r#"{"re":1.0,"im":-2.0}"#
        );
    }

    #[test]
    fn large_root_mode_is_unit() {
        let m = Root::Finite(c64(3e200, -4e200)).mode();
        assert_abs_diff_eq!(m.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.overlap(&JonesVector::V), 1.0, epsilon = 1e-15);
    }
}
