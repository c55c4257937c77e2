//! Stokes vectors on the Poincaré sphere: the factorizing modes ψ_A, ψ_B,
//! the Schmidt modes φ±, and the biphoton vector, plus the rotation that
//! takes the Schmidt axis to the H/V axis.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::density::ReducedDensityMatrix;
use crate::factorization::factorize;
use crate::measures::{degree_of_polarization, stokes_vector};
use crate::schmidt::schmidt_from_factorization;
use crate::state::{JonesVector, QutritState};
use crate::{Error, Result, EPS_GEOM, EPS_NORM};

/// Stokes vector `(S1, S2, S3)`: `S3` is the H/V axis, `S1` the ±45° axis,
/// `S2` the circular axis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct StokesVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub const ZERO: StokesVector = StokesVector { s1: 0.0, s2: 0.0, s3: 0.0 };
    pub const H: StokesVector = StokesVector { s1: 0.0, s2: 0.0, s3: 1.0 };

    pub fn new(s1: f64, s2: f64, s3: f64) -> Self {
        StokesVector { s1, s2, s3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        StokesVector::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }

    pub fn dot(&self, o: &StokesVector) -> f64 {
        self.s1 * o.s1 + self.s2 * o.s2 + self.s3 * o.s3
    }

    pub fn cross(&self, o: &StokesVector) -> StokesVector {
        StokesVector::new(
            self.s2 * o.s3 - self.s3 * o.s2,
            self.s3 * o.s1 - self.s1 * o.s3,
            self.s1 * o.s2 - self.s2 * o.s1,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn unit(&self) -> Option<StokesVector> {
        let n = self.norm();
        (n > 0.0).then(|| *self * (1.0 / n))
    }

    /// Polar angle from the `S3` (H) axis.
    pub fn theta(&self) -> f64 {
        let n = self.norm();
        if n == 0.0 {
            0.0
        } else {
            (self.s3 / n).clamp(-1.0, 1.0).acos()
        }
    }

    /// Azimuth in the `S1`–`S2` plane, measured from the `S1` (45°) axis.
    pub fn azimuth(&self) -> f64 {
        self.s2.atan2(self.s1)
    }
}

impl Add for StokesVector {
    type Output = StokesVector;
    fn add(self, o: StokesVector) -> StokesVector {
        StokesVector::new(self.s1 + o.s1, self.s2 + o.s2, self.s3 + o.s3)
    }
}

impl Sub for StokesVector {
    type Output = StokesVector;
    fn sub(self, o: StokesVector) -> StokesVector {
        StokesVector::new(self.s1 - o.s1, self.s2 - o.s2, self.s3 - o.s3)
    }
}

impl Mul<f64> for StokesVector {
    type Output = StokesVector;
    fn mul(self, k: f64) -> StokesVector {
        StokesVector::new(self.s1 * k, self.s2 * k, self.s3 * k)
    }
}

impl Neg for StokesVector {
    type Output = StokesVector;
    fn neg(self) -> StokesVector {
        self * -1.0
    }
}

/// Stokes vector of a pure single-photon state. For `j ∝ (1, −x)` this is
/// `((−2Re x), (−2Im x), 1−|x|²)/(1+|x|²)`; `(1, −i)/√2` maps to `(0, −1, 0)`.
pub fn stokes_of_jones(j: &JonesVector) -> Result<StokesVector> {
    let norm_sq = j.norm_sqr();
    if !norm_sq.is_finite() {
        return Err(Error::NonFinite);
    }
    if (norm_sq - 1.0).abs() > EPS_NORM {
        return Err(Error::NotNormalized { norm_sq });
    }
    let hv = j.h.conj() * j.v;
    Ok(StokesVector::new(
        2.0 * hv.re,
        2.0 * hv.im,
        j.h.norm_sqr() - j.v.norm_sqr(),
    ))
}

/// Angle in `[0, π]` between two nonzero vectors.
pub fn angle_between(a: &StokesVector, b: &StokesVector) -> Result<f64> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(a.cross(b).norm().atan2(a.dot(b)))
}

fn check_angle(theta: f64) -> Result<()> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::OutOfRange(theta));
    }
    Ok(())
}

/// `C = (1 − cos θ_AB)/(3 + cos θ_AB)`.
pub fn concurrence_from_angle(theta_ab: f64) -> Result<f64> {
    check_angle(theta_ab)?;
    let c = theta_ab.cos();
    Ok((1.0 - c) / (3.0 + c))
}

/// `P = 4|cos(θ_AB/2)|/(3 + cos θ_AB)`.
pub fn polarization_from_angle(theta_ab: f64) -> Result<f64> {
    check_angle(theta_ab)?;
    Ok(4.0 * (theta_ab / 2.0).cos().abs() / (3.0 + theta_ab.cos()))
}

/// `S_biph = λ₊S₊ + λ₋S₋` for antipodal unit `S±`.
pub fn biphoton_stokes_composition(
    lambda_plus: f64,
    lambda_minus: f64,
    s_plus: &StokesVector,
    s_minus: &StokesVector,
) -> Result<StokesVector> {
    if (lambda_plus + lambda_minus - 1.0).abs() > EPS_NORM {
        return Err(Error::InvalidParameter(format!(
            "weights sum to {}",
            lambda_plus + lambda_minus
        )));
    }
    let dot = s_plus.dot(s_minus);
    if dot > -1.0 + EPS_GEOM {
        return Err(Error::NotAntipodal { dot });
    }
    Ok(*s_plus * lambda_plus + *s_minus * lambda_minus)
}

/// All Stokes vectors attached to one qutrit, in the lab frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QutritGeometry {
    pub s_a: StokesVector,
    pub s_b: StokesVector,
    pub s_plus: StokesVector,
    pub s_minus: StokesVector,
    pub s_biph: StokesVector,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub commutator: f64,
    pub basis_free: bool,
}

impl QutritGeometry {
    pub fn of(q: &QutritState) -> QutritGeometry {
        let f = factorize(q);
        let s = schmidt_from_factorization(q, &f);
        let st = |j: &JonesVector| stokes_of_jones(j).expect("modes are unit vectors");
        QutritGeometry {
            s_a: st(&f.mode_a),
            s_b: st(&f.mode_b),
            s_plus: st(&s.mode_plus),
            s_minus: st(&s.mode_minus),
            s_biph: stokes_vector(q),
            lambda_plus: s.lambda_plus,
            lambda_minus: s.lambda_minus,
            commutator: f.commutator,
            basis_free: s.basis_free,
        }
    }

    /// `θ_AB`; the factorizing modes are unit vectors so this never fails.
    pub fn theta_ab(&self) -> f64 {
        angle_between(&self.s_a, &self.s_b).expect("unit vectors")
    }

    pub fn rotated(&self, frame: &SphereFrame) -> QutritGeometry {
        QutritGeometry {
            s_a: frame.apply(&self.s_a),
            s_b: frame.apply(&self.s_b),
            s_plus: frame.apply(&self.s_plus),
            s_minus: frame.apply(&self.s_minus),
            s_biph: frame.apply(&self.s_biph),
            ..*self
        }
    }
}

/// Outcome of checking that `S_biph` lies along the bisector of `S_A`, `S_B`
/// with length `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisectorReport {
    pub theta_ab: f64,
    /// `P < ε_geom`: the biphoton vector vanishes and has no direction.
    pub degenerate: bool,
    /// `‖Ŝ_biph − (S_A+S_B)/|S_A+S_B|‖`.
    pub direction_residual: Option<f64>,
    /// `‖S_biph − k(S_A+S_B)‖` with `k = 2/(3 + cos θ_AB) = P/|S_A+S_B|`.
    pub scale_residual: Option<f64>,
    pub scale: f64,
}

pub fn bisector_check(q: &QutritState) -> BisectorReport {
    let g = QutritGeometry::of(q);
    let theta_ab = g.theta_ab();
    let scale = 2.0 / (3.0 + theta_ab.cos());
    let p = degree_of_polarization(q);
    let sum = g.s_a + g.s_b;
    if p < EPS_GEOM || sum.norm() < EPS_GEOM {
        return BisectorReport {
            theta_ab,
            degenerate: true,
            direction_residual: None,
            scale_residual: None,
            scale,
        };
    }
    let dir_biph = g.s_biph.unit().expect("P > 0");
    let dir_sum = sum.unit().expect("nonzero");
    BisectorReport {
        theta_ab,
        degenerate: false,
        direction_residual: Some((dir_biph - dir_sum).norm()),
        scale_residual: Some((g.s_biph - sum * scale).norm()),
        scale,
    }
}

/// Proper rotation of the Poincaré sphere, acting on Stokes vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereFrame {
    pub rotation: [[f64; 3]; 3],
}

impl SphereFrame {
    pub const IDENTITY: SphereFrame = SphereFrame {
        rotation: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Validating constructor: `R Rᵀ = I` and `det R = 1` within `ε_norm`.
    pub fn new(rotation: [[f64; 3]; 3]) -> Result<Self> {
        let f = SphereFrame { rotation };
        let dev = f.orthogonality_deviation();
        if dev > EPS_NORM || (f.determinant() - 1.0).abs() > EPS_NORM {
            return Err(Error::InvalidParameter(format!(
                "not a proper rotation (orthogonality deviation {dev:e})"
            )));
        }
        Ok(f)
    }

    /// Rotation whose rows are the given right-handed orthonormal axes.
    fn from_rows(e1: StokesVector, e2: StokesVector, e3: StokesVector) -> Self {
        SphereFrame {
            rotation: [e1.to_array(), e2.to_array(), e3.to_array()],
        }
    }

    pub fn apply(&self, s: &StokesVector) -> StokesVector {
        let v = s.to_array();
        let r = &self.rotation;
        StokesVector::from_array([0, 1, 2].map(|i| (0..3).map(|j| r[i][j] * v[j]).sum()))
    }

    pub fn compose(&self, other: &SphereFrame) -> SphereFrame {
        let (a, b) = (&self.rotation, &other.rotation);
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        SphereFrame { rotation: m }
    }

    pub fn transpose(&self) -> SphereFrame {
        let r = &self.rotation;
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = r[j][i];
            }
        }
        SphereFrame { rotation: m }
    }

    pub fn orthogonality_deviation(&self) -> f64 {
        let p = self.compose(&self.transpose()).rotation;
        let mut dev: f64 = 0.0;
        for (i, row) in p.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((e - target).abs());
            }
        }
        dev
    }

    pub fn determinant(&self) -> f64 {
        let r = &self.rotation;
        StokesVector::from_array(r[0])
            .dot(&StokesVector::from_array(r[1]).cross(&StokesVector::from_array(r[2])))
    }

    /// Rotation by `angle` about the unit `axis` (Rodrigues).
    pub fn about_axis(axis: &StokesVector, angle: f64) -> Result<SphereFrame> {
        let k = axis.unit().ok_or(Error::ZeroVector)?.to_array();
        let (s, c) = angle.sin_cos();
        let mut m = [[0.0; 3]; 3];
        let cross = [[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let id = if i == j { 1.0 } else { 0.0 };
                *e = c * id + s * cross[i][j] + (1.0 - c) * k[i] * k[j];
            }
        }
        Ok(SphereFrame { rotation: m })
    }
}

/// Unit vector perpendicular to `e3`, from projecting `S2` (or `S1` when
/// `e3` is close to `S2`).
fn canonical_perpendicular(e3: &StokesVector) -> StokesVector {
    let candidates = [StokesVector::new(0.0, 1.0, 0.0), StokesVector::new(1.0, 0.0, 0.0)];
    for c in candidates {
        let u = c - *e3 * e3.dot(&c);
        if u.norm() > 0.5 {
            return u.unit().expect("nonzero");
        }
    }
    unreachable!("S1 and S2 cannot both be near-parallel to a unit vector")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtFrame {
    pub frame: SphereFrame,
    /// `λ₊ = λ₋`: the Schmidt axis is not unique and the frame is the one
    /// built from the factorization-derived modes.
    pub degenerate: bool,
}

/// Rotation taking `S₊` to `(0, 0, 1)` with the image of `S_A` in the
/// `S1 = 0`, `S2 > 0` half-plane.
pub fn schmidt_frame(q: &QutritState) -> SchmidtFrame {
    let g = QutritGeometry::of(q);
    let e3 = g.s_plus.unit().expect("Schmidt modes are pure");
    let u = g.s_a - e3 * e3.dot(&g.s_a);
    let e2 = if u.norm() > EPS_GEOM {
        u.unit().expect("nonzero")
    } else {
        canonical_perpendicular(&e3)
    };
    let e1 = e2.cross(&e3);
    SchmidtFrame {
        frame: SphereFrame::from_rows(e1, e2, e3),
        degenerate: g.basis_free,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameKind {
    Lab,
    Schmidt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedVector {
    pub name: &'static str,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub weight: f64,
}

/// Named Stokes vectors for external plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereScene {
    pub frame: FrameKind,
    pub degenerate_frame: bool,
    pub vectors: Vec<NamedVector>,
}

impl SphereScene {
    pub fn build(q: &QutritState, kind: FrameKind) -> SphereScene {
        let lab = QutritGeometry::of(q);
        let (g, degenerate_frame) = match kind {
            FrameKind::Lab => (lab, lab.basis_free),
            FrameKind::Schmidt => {
                let sf = schmidt_frame(q);
                (lab.rotated(&sf.frame), sf.degenerate)
            }
        };
        let nv = |name, s: StokesVector, weight| NamedVector {
            name,
            s1: s.s1,
            s2: s.s2,
            s3: s.s3,
            weight,
        };
        SphereScene {
            frame: kind,
            degenerate_frame,
            vectors: vec![
                nv("S_A", g.s_a, 1.0),
                nv("S_B", g.s_b, 1.0),
                nv("S_plus", g.s_plus, g.lambda_plus),
                nv("S_minus", g.s_minus, g.lambda_minus),
                nv("S_biph", g.s_biph, 1.0),
            ],
        }
    }

    pub fn get(&self, name: &str) -> Option<StokesVector> {
        self.vectors
            .iter()
            .find(|v| v.name == name)
            .map(|v| StokesVector::new(v.s1, v.s2, v.s3))
    }

    /// `name,s1,s2,s3,weight` with 17 significant digits; `-0` is written as `0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,s1,s2,s3,weight\n");
        for v in &self.vectors {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{:.16e}",
                v.name,
                v.s1 + 0.0,
                v.s2 + 0.0,
                v.s3 + 0.0,
                v.weight + 0.0
            );
        }
        out
    }
}

/// Stokes vector of the reduced state; equal to [`stokes_vector`].
pub fn biphoton_stokes(q: &QutritState) -> StokesVector {
    ReducedDensityMatrix::from_qutrit(q).stokes()
}
