//! Simulation of the Schmidt-mode measurement: plates align the Schmidt
//! modes to H/V, a PBS at 0°, 90° or 45° splits the pair, and coincidence
//! counts are turned back into `λ±` and `cos 2φ`.

pub mod phase;
pub mod rates;
pub mod waveplate;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::state::QutritState;
use crate::Result;

pub use phase::{apply_phase_shift, phase_plate_delay, postselect_split, PhasePlate, TwoQubitState};
pub use rates::{
    cross_coincidences, estimate_parameters, expected_rates, phi_sweep, rates_from_parameters,
    sample_counts, sample_counts_with, visibility, AlignedParameters, CoincidenceRecord,
    DetectorModel, ParameterEstimate,
};
pub use waveplate::{
    jones_of_waveplate, schmidt_aligning_plates, transform_qutrit, AlignmentPlates, JonesMatrix,
    PlateKind, WaveplateSetting,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub detector: DetectorModel,
    pub n_pairs: u64,
    pub seed: u64,
    /// Skip sampling and feed expected rates to the estimator.
    pub exact: bool,
    /// Number of φ points in `[0, π)` for the R₄₅ sweep; 0 disables it.
    pub phi_sweep_steps: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            detector: DetectorModel::ideal(),
            n_pairs: 1_000_000,
            seed: 0,
            exact: false,
            phi_sweep_steps: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub phi: f64,
    pub r0: f64,
    pub r90: f64,
    pub r45: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiSweep {
    pub points: Vec<SweepPoint>,
    /// `(max − min)/(max + min)` of R₄₅ over the sweep.
    pub visibility: f64,
}

impl PhiSweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phi,r0,r90,r45\n");
        for p in &self.points {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", p.phi, p.r0, p.r90, p.r45);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub state: QutritState,
    pub seed: u64,
    pub n_pairs: u64,
    pub exact: bool,
    pub detector: DetectorModel,
    pub plates: AlignmentPlates,
    pub aligned_state: QutritState,
    pub truth: AlignedParameters,
    pub expected: CoincidenceRecord<f64>,
    pub counts: Option<CoincidenceRecord<u64>>,
    /// Expected coincidences between different PBS ports.
    pub cross_coincidences: f64,
    pub estimate: ParameterEstimate,
    /// `λ₊` standard error from the sampled totals; absent for exact runs.
    pub lambda_plus_stderr: Option<f64>,
    pub phi_sweep: Option<PhiSweep>,
}

/// Runs the full chain for one state with a single generator seeded from
/// `cfg.seed`.
pub fn simulate(q: &QutritState, cfg: &SimulationConfig) -> Result<SimulationReport> {
    let plates = schmidt_aligning_plates(q);
    let aligned_state = transform_qutrit(q, &plates.unitary())?;
    let truth = AlignedParameters::of(&aligned_state)?;
    let expected = rates_from_parameters(truth.lambda_h, truth.lambda_v, truth.phi, &cfg.detector, cfg.n_pairs);

    let (counts, estimate, stderr) = if cfg.exact {
        (None, estimate_parameters(&expected)?, None)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let counts = sample_counts_with(&expected, &mut rng)?;
        let real = counts.to_real();
        let est = estimate_parameters(&real)?;
        let se = rates::lambda_standard_error(est.lambda_plus, real.r0 + real.r90);
        (Some(counts), est, Some(se))
    };

    let phi_sweep = (cfg.phi_sweep_steps > 0).then(|| {
        let points: Vec<SweepPoint> = rates::phi_sweep(
            truth.lambda_h,
            truth.lambda_v,
            &cfg.detector,
            cfg.n_pairs,
            cfg.phi_sweep_steps,
        )
        .into_iter()
        .map(|(phi, r)| SweepPoint { phi, r0: r.r0, r90: r.r90, r45: r.r45 })
        .collect();
        let visibility = visibility(points.iter().map(|p| p.r45));
        PhiSweep { points, visibility }
    });

    Ok(SimulationReport {
        state: *q,
        seed: cfg.seed,
        n_pairs: cfg.n_pairs,
        exact: cfg.exact,
        detector: cfg.detector,
        plates,
        aligned_state,
        truth,
        expected,
        counts,
        cross_coincidences: cross_coincidences(&aligned_state, &cfg.detector, cfg.n_pairs),
        estimate,
        lambda_plus_stderr: stderr,
        phi_sweep,
    })
}
