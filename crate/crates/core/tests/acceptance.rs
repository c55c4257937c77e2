//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Expected values are computed here from closed forms and independent
//! routes, not read back from the library.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use biqutrit::expsim::{
    apply_phase_shift, estimate_parameters, expected_rates, postselect_split, sample_counts_with,
    schmidt_aligning_plates, transform_qutrit, visibility, AlignedParameters, DetectorModel,
};
use biqutrit::poincare::{
    angle_between, biphoton_stokes_composition, bisector_check, concurrence_from_angle,
    QutritGeometry,
};
use biqutrit::{
    c64, concurrence, concurrence_from_commutator, degree_of_polarization, factorize, make_qutrit,
    schmidt_decomposition, schmidt_eigenvalues, stokes_vector, JonesVector, QutritState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N_RANDOM: usize = 10_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: u32, title: &str, elapsed: Duration, o: &Outcome) -> bool {
    println!(
        "criterion {id:>2} [{}] {title}: {} ({:.3} s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64()
    );
    o.pass
}

fn random_states(seed: u64, n: usize) -> Vec<QutritState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| QutritState::random(&mut rng)).collect()
}

fn aligned(q: &QutritState) -> QutritState {
    transform_qutrit(q, &schmidt_aligning_plates(q).unitary()).expect("plates are unitary")
}

fn c1_identity() -> Outcome {
    let states = random_states(1, N_RANDOM);
    let start = Instant::now();
    let worst = states
        .iter()
        .map(|q| {
            let (c, p) = (concurrence(q), degree_of_polarization(q));
            (c * c + p * p - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let t = start.elapsed();
    Outcome {
        pass: worst <= 1e-12 && t < Duration::from_secs(1),
        detail: format!("max |C²+P²−1| = {worst:.2e} over {N_RANDOM} states, {:.3} s", t.as_secs_f64()),
    }
}

fn c2_alpha_family() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0] {
        let q = QutritState::alpha_family(alpha).unwrap();
        let (s, c) = alpha.sin_cos();
        let c_exp = s * s / (1.0 + c * c);
        let p_exp = 2.0 * c / (1.0 + c * c);
        let lp_exp = 0.5 * (1.0 + c).powi(2) / (1.0 + c * c);
        let lm_exp = 0.5 * (1.0 - c).powi(2) / (1.0 + c * c);
        let (sh, ch) = (alpha / 2.0).sin_cos();
        let plus = JonesVector::new(c64(ch, 0.0), c64(sh, 0.0)).unwrap();
        let minus = JonesVector::new(c64(0.0, -sh), c64(0.0, ch)).unwrap();

        let d = schmidt_decomposition(&q);
        let errs = [
            (concurrence(&q) - c_exp).abs(),
            (degree_of_polarization(&q) - p_exp).abs(),
            (d.lambda_plus - lp_exp).abs(),
            (d.lambda_minus - lm_exp).abs(),
            1.0 - d.mode_plus.overlap(&plus),
            1.0 - d.mode_minus.overlap(&minus),
        ];
        worst = errs.iter().copied().fold(worst, f64::max);
    }
    let q = QutritState::alpha_family(PI / 3.0).unwrap();
    let (lp, lm) = schmidt_eigenvalues(&q);
    let third = [
        (concurrence(&q) - 0.6).abs(),
        (degree_of_polarization(&q) - 0.8).abs(),
        (lp - 0.9).abs(),
        (lm - 0.1).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Outcome {
        pass: worst <= 1e-12 && third <= 1e-12,
        detail: format!("max deviation {worst:.2e}; α=π/3 vs (3/5, 4/5, 9/10, 1/10): {third:.2e}"),
    }
}

fn c3_dual_route() -> Outcome {
    let states = random_states(3, N_RANDOM);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for q in &states {
        if let Some(o) = schmidt_decomposition(q).oracle_agreement(q) {
            worst = worst.max(1.0 - o);
            checked += 1;
        }
    }
    Outcome {
        pass: worst < 1e-10 && checked == N_RANDOM,
        detail: format!("min overlap 1 − {worst:.2e} over {checked} non-degenerate states"),
    }
}

fn c4_reconstruction() -> Outcome {
    let states = random_states(4, N_RANDOM);
    let (mut ws, mut wf): (f64, f64) = (0.0, 0.0);
    for q in &states {
        let f = factorize(q);
        ws = ws.max(schmidt_decomposition(q).reconstruction_residual(q));
        wf = wf.max(f.reconstruction_residual(q));
    }
    Outcome {
        pass: ws <= 1e-10 && wf <= 1e-10,
        detail: format!("max residual Schmidt {ws:.2e}, factorization {wf:.2e}"),
    }
}

fn c5_commutator_chain() -> Outcome {
    let states = random_states(5, N_RANDOM);
    let mut worst: f64 = 0.0;
    for q in &states {
        let c = concurrence(q);
        let f = factorize(q);
        let g = QutritGeometry::of(q);
        let theta = angle_between(&g.s_a, &g.s_b).unwrap();
        let k_closed = ((1.0 - c) / (1.0 + c)).sqrt();
        worst = [
            (f.commutator - k_closed).abs(),
            (f.commutator - (theta / 2.0).cos()).abs(),
            (concurrence_from_commutator(&f) - c).abs(),
            (concurrence_from_angle(theta).unwrap() - c).abs(),
        ]
        .into_iter()
        .fold(worst, f64::max);
    }
    Outcome {
        pass: worst <= 1e-9,
        detail: format!("max deviation along k = √((1−C)/(1+C)) = cos(θ/2) chain {worst:.2e}"),
    }
}

fn c6_stokes_composition() -> Outcome {
    let states = random_states(6, N_RANDOM);
    let (mut comp, mut bis, mut norm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut used = 0;
    for q in &states {
        let p = degree_of_polarization(q);
        let c = concurrence(q);
        let s = stokes_vector(q);
        norm = norm.max((s.norm() - (1.0 - c * c).sqrt()).abs());
        if p <= 1e-6 {
            continue;
        }
        used += 1;
        let g = QutritGeometry::of(q);
        let composed =
            biphoton_stokes_composition(g.lambda_plus, g.lambda_minus, &g.s_plus, &g.s_minus).unwrap();
        comp = comp.max((s - composed).norm());
        let b = bisector_check(q);
        bis = bis
            .max(b.direction_residual.unwrap_or(f64::INFINITY))
            .max(b.scale_residual.unwrap_or(f64::INFINITY));
    }
    Outcome {
        pass: comp <= 1e-9 && bis <= 1e-9 && norm <= 1e-10,
        detail: format!(
            "composition {comp:.2e}, bisector {bis:.2e} ({used} states with P > 1e-6), | |S| − P | {norm:.2e}"
        ),
    }
}

fn c7_noiseless_estimator() -> Outcome {
    let states: Vec<QutritState> = random_states(7, 1000)
        .into_iter()
        .filter(|q| concurrence(q) > 1e-3)
        .collect();
    let start = Instant::now();
    let (mut wl, mut wc, mut wt): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for q in &states {
        let a = aligned(q);
        let truth = AlignedParameters::of(&a).unwrap();
        let (lp, _) = schmidt_eigenvalues(q);
        wt = wt.max((truth.lambda_h - lp).abs());
        for eta1 in [0.1, 0.6, 1.0] {
            for eta2 in [0.1, 0.6, 1.0] {
                for n in [1_000u64, 1_000_000] {
                    let det = DetectorModel::new(eta1, eta2, 0.0).unwrap();
                    let e = estimate_parameters(&expected_rates(&a, &det, n).unwrap()).unwrap();
                    wl = wl
                        .max((e.lambda_plus - truth.lambda_h).abs())
                        .max((e.lambda_minus - truth.lambda_v).abs());
                    let cos = e.cos_2phi.unwrap_or(f64::INFINITY);
                    wc = wc.max((cos - (2.0 * truth.phi).cos()).abs());
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: wl <= 4.0 * f64::EPSILON && wc <= 1e-10 && t < Duration::from_secs(1),
        detail: format!(
            "{} states × 18 settings: λ± error {wl:.2e}, cos 2φ error {wc:.2e}, aligned λ₊ vs eigenvalue {wt:.2e}, {:.3} s",
            states.len(),
            t.as_secs_f64()
        ),
    }
}

fn c8_poisson_estimator() -> Outcome {
    let states = random_states(8, 10);
    let det = DetectorModel::new(0.6, 0.6, 0.0).unwrap();
    let n = 1_000_000;
    let start = Instant::now();
    let (mut inside, mut total) = (0, 0);
    for (i, q) in states.iter().enumerate() {
        let a = aligned(q);
        let truth = AlignedParameters::of(&a).unwrap();
        let expected = expected_rates(&a, &det, n).unwrap();
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * i as u64 + trial);
            let counts = sample_counts_with(&expected, &mut rng).unwrap().to_real();
            let e = estimate_parameters(&counts).unwrap();
            let m = counts.r0 + counts.r90;
            let se = (truth.lambda_h * truth.lambda_v / m).sqrt();
            total += 1;
            if (e.lambda_plus - truth.lambda_h).abs() <= 5.0 * se {
                inside += 1;
            }
        }
    }
    let t = start.elapsed();
    let frac = inside as f64 / total as f64;
    Outcome {
        pass: frac >= 0.99 && t < Duration::from_secs(30),
        detail: format!("{inside}/{total} trials within 5σ ({:.1}%), {:.3} s", 100.0 * frac, t.as_secs_f64()),
    }
}

fn c9_visibility() -> Outcome {
    let cases = [
        ("C=0", make_qutrit(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)).unwrap()),
        ("C=3/5", QutritState::alpha_family(PI / 3.0).unwrap()),
        ("C=1", make_qutrit(c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap()),
    ];
    let det = DetectorModel::ideal();
    let steps = 720;
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, q) in cases {
        let a = aligned(&q);
        let r45: Vec<f64> = (0..steps)
            .map(|k| {
                let shifted = apply_phase_shift(&a, PI * k as f64 / steps as f64).unwrap();
                expected_rates(&shifted, &det, 1_000_000).unwrap().r45
            })
            .collect();
        let v = visibility(r45);
        let c = concurrence(&q);
        let claimed = c / (1.0 + c);
        let ok = (v - claimed).abs() <= 1e-10;
        pass &= ok;
        parts.push(format!("{label}: V = {v:.12}, C/(1+C) = {claimed:.12}{}", if ok { "" } else { " ✗" }));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn c10_postselection() -> Outcome {
    let states = random_states(10, N_RANDOM);
    let mut worst: f64 = 0.0;
    for q in &states {
        let s = postselect_split(&aligned(q)).unwrap();
        worst = worst.max((s.concurrence() - concurrence(q)).abs());
    }
    let degenerate = [
        make_qutrit(c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap(),
        make_qutrit(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0)).unwrap(),
        make_qutrit(c64(0.3, 0.4), c64(0.0, 0.0), c64(-0.4, 0.3)).unwrap(),
    ];
    let max_ent = degenerate.iter().all(|q| {
        let (lp, lm) = schmidt_eigenvalues(q);
        (lp - lm).abs() < 1e-12
            && postselect_split(&aligned(q)).unwrap().is_maximally_entangled(1e-10)
    });
    Outcome {
        pass: worst <= 1e-10 && max_ent,
        detail: format!(
            "max |C_out − C_in| = {worst:.2e}; λ₊=λ₋ → maximally entangled: {max_ent}"
        ),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "C² + P² = 1", c1_identity),
        (2, "α-family golden values", c2_alpha_family),
        (3, "algebraic Schmidt modes vs eigendecomposition", c3_dual_route),
        (4, "Schmidt and factorization reconstructions", c4_reconstruction),
        (5, "commutator / concurrence / Stokes angle chain", c5_commutator_chain),
        (6, "Stokes composition and bisector", c6_stokes_composition),
        (7, "noiseless estimator round trip", c7_noiseless_estimator),
        (8, "estimator under Poisson noise", c8_poisson_estimator),
        (9, "R45 visibility equals C/(1+C)", c9_visibility),
        (10, "postselected two-qubit concurrence", c10_postselection),
    ];
    let mut failed = Vec::new();
    for (id, title, f) in criteria {
        let start = Instant::now();
        let o = f();
        if !report(id, title, start.elapsed(), &o) {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
