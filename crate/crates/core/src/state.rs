//! Qutrit amplitudes, single-photon Jones vectors and the symmetric two-photon
//! wave function Ψ(σ₁, σ₂).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{c64, Error, Result, EPS_NORM};

/// Canonical JSON form of a complex number: `{"re": .., "im": ..}`.
pub mod complex_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let v = ReIm::deserialize(d)?;
        Ok(Complex64::new(v.re, v.im))
    }

    pub mod pair {
        use super::ReIm;
        use num_complex::Complex64;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(z: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
            [ReIm { re: z[0].re, im: z[0].im }, ReIm { re: z[1].re, im: z[1].im }].serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Complex64; 2], D::Error> {
            let [a, b] = <[ReIm; 2]>::deserialize(d)?;
            Ok([Complex64::new(a.re, a.im), Complex64::new(b.re, b.im)])
        }
    }
}

/// Rescale so the largest modulus is 1, then normalize. Avoids overflow for
/// very large or very small inputs.
fn normalize_slice(c: &mut [Complex64]) -> Result<()> {
    if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm_sq: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() <= 8.0 * f64::EPSILON {
        return Ok(());
    }
    let max = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::AllZero);
    }
    for z in c.iter_mut() {
        *z /= max;
    }
    let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in c.iter_mut() {
        *z /= norm;
    }
    Ok(())
}

/// Rotate the global phase so the first nonzero entry is real and positive.
fn fix_global_phase(c: &mut [Complex64]) {
    let Some(k) = c.iter().position(|z| *z != Complex64::new(0.0, 0.0)) else {
        return;
    };
    let first = c[k];
    if first.im == 0.0 && first.re > 0.0 {
        return;
    }
    let modulus = first.norm();
    let u = first.conj() / modulus;
    for z in c.iter_mut().skip(k + 1) {
        *z *= u;
    }
    c[k] = Complex64::new(modulus, 0.0);
}

/// Pure biphoton qutrit `c1|2_H⟩ + c2|1_H,1_V⟩ + c3|2_V⟩`.
///
/// Always unit norm, with the first nonzero amplitude real and positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQutrit", into = "RawQutrit")]
pub struct QutritState {
    c: [Complex64; 3],
}

#[derive(Serialize, Deserialize)]
struct RawQutrit {
    #[serde(with = "complex_serde")]
    c1: Complex64,
    #[serde(with = "complex_serde")]
    c2: Complex64,
    #[serde(with = "complex_serde")]
    c3: Complex64,
}

impl TryFrom<RawQutrit> for QutritState {
    type Error = Error;
    fn try_from(r: RawQutrit) -> Result<Self> {
        QutritState::new(r.c1, r.c2, r.c3)
    }
}

impl From<QutritState> for RawQutrit {
    fn from(q: QutritState) -> Self {
        RawQutrit {
            c1: q.c[0],
            c2: q.c[1],
            c3: q.c[2],
        }
    }
}

impl QutritState {
    /// Normalizes the amplitudes and applies the global-phase convention.
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64) -> Result<Self> {
        let mut c = [c1, c2, c3];
        normalize_slice(&mut c)?;
        fix_global_phase(&mut c);
        Ok(QutritState { c })
    }

    /// The family `N a_H†(cos α a_H† + sin α a_V†)|0⟩`, which is already in
    /// factorized form with `[A, B†] = cos α`.
    pub fn alpha_family(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite);
        }
        let (s, c) = alpha.sin_cos();
        let n = (1.0 + c * c).sqrt();
        QutritState::new(
            c64(std::f64::consts::SQRT_2 * c / n, 0.0),
            c64(s / n, 0.0),
            c64(0.0, 0.0),
        )
    }

    /// Haar-random state: independent complex Gaussian amplitudes, normalized.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        use rand_distr::StandardNormal;
        loop {
            let mut z = || c64(rng.sample(StandardNormal), rng.sample(StandardNormal));
            if let Ok(q) = QutritState::new(z(), z(), z()) {
                return q;
            }
        }
    }

    pub fn c1(&self) -> Complex64 {
        self.c[0]
    }

    pub fn c2(&self) -> Complex64 {
        self.c[1]
    }

    pub fn c3(&self) -> Complex64 {
        self.c[2]
    }

    pub fn amplitudes(&self) -> [Complex64; 3] {
        self.c
    }

    pub fn wave_function(&self) -> BiphotonWaveFunction {
        let off = self.c[1] * FRAC_1_SQRT_2;
        BiphotonWaveFunction {
            psi: [[self.c[0], off], [off, self.c[2]]],
        }
    }

    /// Inverse of [`QutritState::wave_function`]; the input is symmetrized first.
    pub fn from_wave_function(w: &BiphotonWaveFunction) -> Result<Self> {
        let off = (w.psi[0][1] + w.psi[1][0]) * FRAC_1_SQRT_2;
        QutritState::new(w.psi[0][0], off, w.psi[1][1])
    }
}

/// `make_qutrit(c1, c2, c3)`: normalized state in canonical phase.
pub fn make_qutrit(c1: Complex64, c2: Complex64, c3: Complex64) -> Result<QutritState> {
    QutritState::new(c1, c2, c3)
}

pub fn wave_function(q: &QutritState) -> BiphotonWaveFunction {
    q.wave_function()
}

/// Single-photon polarization amplitudes `(h, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JonesVector {
    #[serde(with = "complex_serde")]
    pub h: Complex64,
    #[serde(with = "complex_serde")]
    pub v: Complex64,
}

impl JonesVector {
    pub const H: JonesVector = JonesVector {
        h: Complex64::new(1.0, 0.0),
        v: Complex64::new(0.0, 0.0),
    };
    pub const V: JonesVector = JonesVector {
        h: Complex64::new(0.0, 0.0),
        v: Complex64::new(1.0, 0.0),
    };

    /// Checked constructor: the input must already be unit norm.
    pub fn new(h: Complex64, v: Complex64) -> Result<Self> {
        let j = JonesVector { h, v };
        let norm_sq = j.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if (norm_sq - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(j)
    }

    pub fn normalized(h: Complex64, v: Complex64) -> Result<Self> {
        let mut c = [h, v];
        normalize_slice(&mut c)?;
        Ok(JonesVector { h: c[0], v: c[1] })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &JonesVector) -> Complex64 {
        self.h.conj() * other.h + self.v.conj() * other.v
    }

    pub fn scale(&self, z: Complex64) -> JonesVector {
        JonesVector {
            h: self.h * z,
            v: self.v * z,
        }
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.h, self.v]
    }

    /// Same ray with the first nonzero component real and positive.
    pub fn canonical_phase(&self) -> JonesVector {
        let mut c = [self.h, self.v];
        fix_global_phase(&mut c);
        JonesVector { h: c[0], v: c[1] }
    }

    /// The orthogonal vector `(−v*, h*)`, i.e. the second column of the
    /// SU(2) matrix whose first column is `self`.
    pub fn orthogonal_partner(&self) -> JonesVector {
        JonesVector {
            h: -self.v.conj(),
            v: self.h.conj(),
        }
    }

    /// `|⟨self|other⟩|`, which is 1 for the same ray.
    pub fn overlap(&self, other: &JonesVector) -> f64 {
        self.inner(other).norm()
    }
}

/// Symmetric two-photon polarization wave function, indices 0 = H, 1 = V.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiphotonWaveFunction {
    pub psi: [[Complex64; 2]; 2],
}

impl BiphotonWaveFunction {
    pub fn get(&self, s1: usize, s2: usize) -> Complex64 {
        self.psi[s1][s2]
    }

    /// `(a⊗b + b⊗a)/√2`, the wave function of `A†B†|0⟩`. Unnormalized: its
    /// norm is `√(1 + |⟨a|b⟩|²)`.
    pub fn symmetrized_product(a: &JonesVector, b: &JonesVector) -> Self {
        let (a, b) = (a.as_array(), b.as_array());
        let mut psi = [[c64(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                psi[i][j] = (a[i] * b[j] + b[i] * a[j]) * FRAC_1_SQRT_2;
            }
        }
        BiphotonWaveFunction { psi }
    }

    /// `Σ w_k m_k⊗m_k`.
    pub fn from_mode_pairs(terms: &[(Complex64, JonesVector)]) -> Self {
        let mut psi = [[c64(0.0, 0.0); 2]; 2];
        for (w, m) in terms {
            let m = m.as_array();
            for i in 0..2 {
                for j in 0..2 {
                    psi[i][j] += w * m[i] * m[j];
                }
            }
        }
        BiphotonWaveFunction { psi }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut psi = self.psi;
        psi.iter_mut().flatten().for_each(|e| *e *= z);
        BiphotonWaveFunction { psi }
    }

    pub fn norm(&self) -> f64 {
        self.psi.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        self.scale(c64(1.0 / self.norm(), 0.0))
    }

    /// Frobenius inner product `⟨self, other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.psi
            .iter()
            .flatten()
            .zip(other.psi.iter().flatten())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `min_γ ‖self − e^{iγ}·other‖` after normalizing both.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let a = self.normalized();
        let b = other.normalized();
        let ov = b.inner(&a);
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            c64(1.0, 0.0)
        };
        let b = b.scale(phase);
        a.psi
            .iter()
            .flatten()
            .zip(b.psi.iter().flatten())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        self.psi[0][1] == self.psi[1][0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const Z: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn make_qutrit_examples() {
        let q = make_qutrit(Z, c64(1.0, 0.0), Z).unwrap();
        assert_eq!(q.amplitudes(), [Z, c64(1.0, 0.0), Z]);

        let q = make_qutrit(c64(0.0, 2.0), Z, Z).unwrap();
        assert_eq!(q.c1(), c64(1.0, 0.0));
        assert_eq!(q.c2(), Z);

        let q = make_qutrit(c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0)).unwrap();
        for z in q.amplitudes() {
            assert_abs_diff_eq!(z.re, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn c2_takes_phase_when_c1_vanishes() {
        let q = make_qutrit(Z, c64(0.0, -3.0), c64(4.0, 0.0)).unwrap();
        assert_eq!(q.c2().im, 0.0);
        assert!(q.c2().re > 0.0);
        // c3 carries the relative phase: 4 · conj(−3i)/3 = 4i
        assert_abs_diff_eq!(q.c3().im, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn rejects_null_and_nonfinite() {
        assert_eq!(make_qutrit(Z, Z, Z), Err(Error::AllZero));
        assert_eq!(make_qutrit(c64(f64::NAN, 0.0), Z, Z), Err(Error::NonFinite));
        assert_eq!(make_qutrit(Z, c64(0.0, f64::INFINITY), Z), Err(Error::NonFinite));
    }

    #[test]
    fn huge_and_tiny_inputs_normalize() {
        let q = make_qutrit(c64(1e300, 0.0), c64(1e300, 0.0), Z).unwrap();
        assert_abs_diff_eq!(q.c1().re, FRAC_1_SQRT_2, epsilon = 1e-15);
        let q = make_qutrit(c64(0.0, 1e-310), Z, Z).unwrap();
        assert_eq!(q.c1(), c64(1.0, 0.0));
    }

    #[test]
    fn basis_wave_functions() {
        let one = c64(1.0, 0.0);
        let hh = make_qutrit(one, Z, Z).unwrap().wave_function();
        assert_eq!(hh.psi, [[one, Z], [Z, Z]]);

        let hv = make_qutrit(Z, one, Z).unwrap().wave_function();
        assert_abs_diff_eq!(hv.get(0, 1).re, FRAC_1_SQRT_2, epsilon = 1e-16);
        assert_abs_diff_eq!(hv.get(1, 0).re, FRAC_1_SQRT_2, epsilon = 1e-16);
        assert_eq!(hv.get(0, 0), Z);
        assert_eq!(hv.get(1, 1), Z);

        let vv = make_qutrit(Z, Z, one).unwrap().wave_function();
        assert_eq!(vv.psi, [[Z, Z], [Z, one]]);
    }

    #[test]
    fn wave_function_round_trip() {
        let q = make_qutrit(c64(0.3, 0.1), c64(-0.2, 0.7), c64(0.5, -0.4)).unwrap();
        let w = q.wave_function();
        assert!(w.is_symmetric());
        assert_abs_diff_eq!(w.norm(), 1.0, epsilon = 1e-15);
        let back = QutritState::from_wave_function(&w).unwrap();
        for (a, b) in q.amplitudes().iter().zip(back.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn symmetrized_product_norm() {
        let a = JonesVector::H;
        let b = JonesVector::normalized(c64(1.0, 0.0), c64(1.0, 0.0)).unwrap();
        let w = BiphotonWaveFunction::symmetrized_product(&a, &b);
        let k = a.inner(&b).norm();
        assert_abs_diff_eq!(w.norm(), (1.0 + k * k).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn jones_checked_constructor() {
        assert!(JonesVector::new(c64(1.0, 0.0), c64(1.0, 0.0)).is_err());
        let j = JonesVector::new(c64(0.6, 0.0), c64(0.0, 0.8)).unwrap();
        let p = j.orthogonal_partner();
        assert_abs_diff_eq!(j.inner(&p).norm(), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn json_shape() {
        let q = make_qutrit(c64(1.0, 0.0), Z, Z).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(
            s,
            r#"{"c1":{"re":1.0,"im":0.0},"c2":{"re":0.0,"im":0.0},"c3":{"re":0.0,"im":0.0}}"#
        );
        let back: QutritState = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let bad = r#"{"c1":{"re":0,"im":0},"c2":{"re":0,"im":0},"c3":{"re":0,"im":0}}"#;
        assert!(serde_json::from_str::<QutritState>(bad).is_err());
    }
}
