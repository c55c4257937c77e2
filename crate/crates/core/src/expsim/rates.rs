//! Coincidence rates behind the PBS, their Poisson sampling, and the
//! estimator of `λ±` and `cos 2φ`.
//!
//! The beamsplitter-plus-two-detector arrangement in each PBS port is
//! collapsed into per-port coincidence probabilities: a pair reaching a port
//! is split onto the two detectors with probability 1/2, which is the `N/2`
//! in `R₀ = η₁η₂λ₊N/2`.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::state::QutritState;
use crate::{Error, Result, EPS_REC};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorModel {
    pub eta1: f64,
    pub eta2: f64,
    /// Expected background coincidences per input pair, added to every channel.
    pub dark_rate: f64,
}

impl DetectorModel {
    pub fn new(eta1: f64, eta2: f64, dark_rate: f64) -> Result<Self> {
        for (name, eta) in [("eta1", eta1), ("eta2", eta2)] {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::InvalidParameter(format!("{name} = {eta} not in [0, 1]")));
            }
        }
        if !(dark_rate >= 0.0 && dark_rate.is_finite()) {
            return Err(Error::InvalidParameter(format!("dark rate {dark_rate}")));
        }
        Ok(DetectorModel { eta1, eta2, dark_rate })
    }

    pub fn ideal() -> Self {
        DetectorModel { eta1: 1.0, eta2: 1.0, dark_rate: 0.0 }
    }
}

/// Coincidences with the PBS at 0°, 90° and 45°, from `n_pairs` input pairs.
/// `T = f64` for expectations, `T = u64` for counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoincidenceRecord<T> {
    pub r0: T,
    pub r90: T,
    pub r45: T,
    pub n_pairs: u64,
}

impl CoincidenceRecord<u64> {
    pub fn to_real(&self) -> CoincidenceRecord<f64> {
        CoincidenceRecord {
            r0: self.r0 as f64,
            r90: self.r90 as f64,
            r45: self.r45 as f64,
            n_pairs: self.n_pairs,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.r0 <= self.n_pairs && self.r90 <= self.n_pairs && self.r45 <= self.n_pairs
    }
}

impl CoincidenceRecord<f64> {
    pub fn is_consistent(&self) -> bool {
        let n = self.n_pairs as f64;
        [self.r0, self.r90, self.r45]
            .iter()
            .all(|&r| (0.0..=n).contains(&r))
    }
}

/// Schmidt weights and phase read off an aligned state `c1|2_H⟩ + c3|2_V⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlignedParameters {
    pub lambda_h: f64,
    pub lambda_v: f64,
    /// `φ` in `c3/c1 ∝ e^{2iφ}`, in `[0, π)`.
    pub phi: f64,
}

impl AlignedParameters {
    pub fn of(q: &QutritState) -> Result<Self> {
        let c2_abs = q.c2().norm();
        if c2_abs > EPS_REC {
            return Err(Error::NotAligned { c2_abs });
        }
        let rel = q.c3() * q.c1().conj();
        let phi = if rel == Complex64::new(0.0, 0.0) {
            0.0
        } else {
            (0.5 * rel.im.atan2(rel.re)).rem_euclid(std::f64::consts::PI)
        };
        let (lh, lv) = (q.c1().norm_sqr(), q.c3().norm_sqr());
        let total = lh + lv;
        Ok(AlignedParameters {
            lambda_h: lh / total,
            lambda_v: lv / total,
            phi,
        })
    }
}

/// `R₀ = η₁η₂λ₊N/2`, `R₉₀ = η₁η₂λ₋N/2`, `R₄₅ = η₁η₂(1 + 2√(λ₊λ₋) cos 2φ)N/4`,
/// each plus `dark_rate·N`.
pub fn expected_rates(
    q_aligned: &QutritState,
    det: &DetectorModel,
    n_pairs: u64,
) -> Result<CoincidenceRecord<f64>> {
    let p = AlignedParameters::of(q_aligned)?;
    Ok(rates_from_parameters(p.lambda_h, p.lambda_v, p.phi, det, n_pairs))
}

pub fn rates_from_parameters(
    lambda_plus: f64,
    lambda_minus: f64,
    phi: f64,
    det: &DetectorModel,
    n_pairs: u64,
) -> CoincidenceRecord<f64> {
    let n = n_pairs as f64;
    let eff = det.eta1 * det.eta2;
    let bg = det.dark_rate * n;
    let interference = 2.0 * (lambda_plus * lambda_minus).sqrt() * (2.0 * phi).cos();
    CoincidenceRecord {
        r0: eff * lambda_plus * n / 2.0 + bg,
        r90: eff * lambda_minus * n / 2.0 + bg,
        r45: eff * (1.0 + interference) * n / 4.0 + bg,
        n_pairs,
    }
}

/// Expected coincidences between detectors in different PBS ports: the
/// residual `|1_H,1_V⟩` weight plus dark counts. Zero for a perfectly aligned
/// state without background.
pub fn cross_coincidences(q: &QutritState, det: &DetectorModel, n_pairs: u64) -> f64 {
    let n = n_pairs as f64;
    det.eta1 * det.eta2 * q.c2().norm_sqr() * n / 2.0 + det.dark_rate * n
}

fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    if mean == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean)
        .map_err(|e| Error::InvalidParameter(format!("Poisson mean {mean}: {e}")))?;
    Ok(dist.sample(rng) as u64)
}

/// Independent Poisson draws per channel from the given generator.
pub fn sample_counts_with<R: Rng + ?Sized>(
    expected: &CoincidenceRecord<f64>,
    rng: &mut R,
) -> Result<CoincidenceRecord<u64>> {
    Ok(CoincidenceRecord {
        r0: poisson(expected.r0, rng)?,
        r90: poisson(expected.r90, rng)?,
        r45: poisson(expected.r45, rng)?,
        n_pairs: expected.n_pairs,
    })
}

/// As [`sample_counts_with`], from a fresh ChaCha8 generator seeded with `seed`.
pub fn sample_counts(expected: &CoincidenceRecord<f64>, seed: u64) -> Result<CoincidenceRecord<u64>> {
    sample_counts_with(expected, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterEstimate {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Clamped to `[−1, 1]`; `None` when the phase is undefined.
    pub cos_2phi: Option<f64>,
    /// Unclamped value of `(2R₄₅ − R₀ − R₉₀)/(2√(R₀R₉₀))`.
    pub cos_2phi_raw: Option<f64>,
    pub cos_2phi_clamped: bool,
    /// `R₀·R₉₀ = 0`: the state looks disentangled and φ has no meaning.
    pub phase_undefined: bool,
}

/// `λ₊ = R₀/(R₀+R₉₀)`, `λ₋ = R₉₀/(R₀+R₉₀)`,
/// `cos 2φ = (2R₄₅ − R₀ − R₉₀)/(2√(R₀R₉₀))`.
pub fn estimate_parameters(rec: &CoincidenceRecord<f64>) -> Result<ParameterEstimate> {
    let total = rec.r0 + rec.r90;
    if total.is_nan() || total <= 0.0 {
        return Err(Error::NoCounts);
    }
    let lambda_plus = rec.r0 / total;
    let lambda_minus = rec.r90 / total;
    let prod = rec.r0 * rec.r90;
    if prod <= 0.0 {
        return Ok(ParameterEstimate {
            lambda_plus,
            lambda_minus,
            cos_2phi: None,
            cos_2phi_raw: None,
            cos_2phi_clamped: false,
            phase_undefined: true,
        });
    }
    let raw = (2.0 * rec.r45 - rec.r0 - rec.r90) / (2.0 * prod.sqrt());
    let clamped = raw.clamp(-1.0, 1.0);
    Ok(ParameterEstimate {
        lambda_plus,
        lambda_minus,
        cos_2phi: Some(clamped),
        cos_2phi_raw: Some(raw),
        cos_2phi_clamped: clamped != raw,
        phase_undefined: false,
    })
}

/// Binomial standard error of `λ₊` given `total = R₀ + R₉₀` coincidences.
pub fn lambda_standard_error(lambda_plus: f64, total: f64) -> f64 {
    (lambda_plus * (1.0 - lambda_plus) / total).sqrt()
}

/// Expected rates for `φ_k = kπ/steps`, `k = 0..steps`, at fixed `λ±`.
pub fn phi_sweep(
    lambda_plus: f64,
    lambda_minus: f64,
    det: &DetectorModel,
    n_pairs: u64,
    steps: usize,
) -> Vec<(f64, CoincidenceRecord<f64>)> {
    let steps = steps.max(1);
    (0..steps)
        .map(|k| {
            let phi = std::f64::consts::PI * k as f64 / steps as f64;
            (phi, rates_from_parameters(lambda_plus, lambda_minus, phi, det, n_pairs))
        })
        .collect()
}

/// Michelson visibility `(max − min)/(max + min)` of a sampled curve.
pub fn visibility(values: impl IntoIterator<Item = f64>) -> f64 {
    let (lo, hi) = values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi + lo == 0.0 {
        0.0
    } else {
        (hi - lo) / (hi + lo)
    }
}
