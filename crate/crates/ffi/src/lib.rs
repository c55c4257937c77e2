//! C ABI over `biqutrit`.
//!
//! States live behind an opaque `BqState` handle created by `bq_state_new`
//! or `bq_state_alpha` and released with `bq_state_free`. Every other call
//! returns a `BqStatus` and writes its results through out-pointers. Complex
//! numbers are passed as interleaved `re, im` doubles.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use biqutrit::expsim::{simulate, DetectorModel, SimulationConfig};
use biqutrit::factorization::Root;
use biqutrit::report::AnalysisReport;
use biqutrit::{
    c64, concurrence, degree_of_polarization, factorize, schmidt_decomposition,
    schmidt_k_and_entropy, stokes_vector, Error, JonesVector, QutritState,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BqStatus {
    Ok = 0,
    NullPointer = 1,
    AllZero = 2,
    NonFinite = 3,
    InvalidParameter = 4,
    NotAligned = 5,
    NoCounts = 6,
    Internal = 7,
    Panic = 8,
}

impl From<Error> for BqStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::AllZero => BqStatus::AllZero,
            Error::NonFinite => BqStatus::NonFinite,
            Error::InvalidParameter(_) | Error::OutOfRange(_) => BqStatus::InvalidParameter,
            Error::NotAligned { .. } => BqStatus::NotAligned,
            Error::NoCounts => BqStatus::NoCounts,
            _ => BqStatus::Internal,
        }
    }
}

/// Opaque handle to a normalized qutrit.
pub struct BqState {
    inner: QutritState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqSchmidt {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `h.re, h.im, v.re, v.im`.
    pub mode_plus: [f64; 4],
    pub mode_minus: [f64; 4],
    pub phi: f64,
    /// Nonzero when `λ₊ = λ₋`.
    pub basis_free: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqFactorization {
    /// Root `x_A` as `re, im`; unused when `x_a_at_infinity` is set.
    pub x_a: [f64; 2],
    pub x_b: [f64; 2],
    pub x_a_at_infinity: i32,
    pub x_b_at_infinity: i32,
    pub phi0: f64,
    pub mode_a: [f64; 4],
    pub mode_b: [f64; 4],
    pub commutator: f64,
    pub norm_n: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BqSimulation {
    pub expected_r0: f64,
    pub expected_r90: f64,
    pub expected_r45: f64,
    /// Sampled counts; zero when `exact` is set.
    pub r0: u64,
    pub r90: u64,
    pub r45: u64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// NaN when the phase is undefined.
    pub cos_2phi: f64,
    pub cos_2phi_clamped: i32,
    pub phase_undefined: i32,
}

fn guard(f: impl FnOnce() -> BqStatus) -> BqStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BqStatus::Panic)
}

fn jones(j: &JonesVector) -> [f64; 4] {
    [j.h.re, j.h.im, j.v.re, j.v.im]
}

fn root(r: &Root) -> ([f64; 2], i32) {
    match r {
        Root::Finite(x) => ([x.re, x.im], 0),
        Root::AtInfinity => ([0.0, 0.0], 1),
    }
}

/// Reads a state handle, rejecting null.
unsafe fn state_ref<'a>(s: *const BqState) -> Option<&'a QutritState> {
    s.as_ref().map(|s| &s.inner)
}

/// Creates a state from six doubles `c1.re, c1.im, c2.re, c2.im, c3.re, c3.im`.
///
/// # Safety
/// `amps` must point to 6 readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bq_state_new(amps: *const f64, out: *mut *mut BqState) -> BqStatus {
    guard(|| {
        if amps.is_null() || out.is_null() {
            return BqStatus::NullPointer;
        }
        let a = std::slice::from_raw_parts(amps, 6);
        match QutritState::new(c64(a[0], a[1]), c64(a[2], a[3]), c64(a[4], a[5])) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(BqState { inner: q }));
                BqStatus::Ok
            }
            Err(e) => e.into(),
        }
    })
}

/// Creates the state `N a_H†(cos α a_H† + sin α a_V†)|0⟩`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bq_state_alpha(alpha: f64, out: *mut *mut BqState) -> BqStatus {
    guard(|| {
        if out.is_null() {
            return BqStatus::NullPointer;
        }
        match QutritState::alpha_family(alpha) {
            Ok(q) => {
                *out = Box::into_raw(Box::new(BqState { inner: q }));
                BqStatus::Ok
            }
            Err(e) => e.into(),
        }
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `s` must come from `bq_state_new`/`bq_state_alpha` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bq_state_free(s: *mut BqState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Normalized amplitudes in canonical phase, six doubles.
///
/// # Safety
/// `s` must be a live handle, `out` must hold 6 doubles.
#[no_mangle]
pub unsafe extern "C" fn bq_state_amplitudes(s: *const BqState, out: *mut f64) -> BqStatus {
    guard(|| {
        let (Some(q), false) = (state_ref(s), out.is_null()) else {
            return BqStatus::NullPointer;
        };
        let o = std::slice::from_raw_parts_mut(out, 6);
        for (k, z) in q.amplitudes().iter().enumerate() {
            o[2 * k] = z.re;
            o[2 * k + 1] = z.im;
        }
        BqStatus::Ok
    })
}

/// Concurrence, degree of polarization, Schmidt number K and entropy (bits).
/// Any out-pointer may be null.
///
/// # Safety
/// `s` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bq_measures(
    s: *const BqState,
    concurrence_out: *mut f64,
    polarization_out: *mut f64,
    k_out: *mut f64,
    entropy_out: *mut f64,
) -> BqStatus {
    guard(|| {
        let Some(q) = state_ref(s) else {
            return BqStatus::NullPointer;
        };
        let (k, e) = schmidt_k_and_entropy(q);
        for (p, v) in [
            (concurrence_out, concurrence(q)),
            (polarization_out, degree_of_polarization(q)),
            (k_out, k),
            (entropy_out, e),
        ] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        BqStatus::Ok
    })
}

/// Stokes vector `S1, S2, S3` of the reduced single-photon state.
///
/// # Safety
/// `s` must be a live handle, `out` must hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn bq_stokes(s: *const BqState, out: *mut f64) -> BqStatus {
    guard(|| {
        let (Some(q), false) = (state_ref(s), out.is_null()) else {
            return BqStatus::NullPointer;
        };
        let v = stokes_vector(q).to_array();
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&v);
        BqStatus::Ok
    })
}

/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_schmidt(s: *const BqState, out: *mut BqSchmidt) -> BqStatus {
    guard(|| {
        let (Some(q), Some(out)) = (state_ref(s), out.as_mut()) else {
            return BqStatus::NullPointer;
        };
        let d = schmidt_decomposition(q);
        *out = BqSchmidt {
            lambda_plus: d.lambda_plus,
            lambda_minus: d.lambda_minus,
            mode_plus: jones(&d.mode_plus),
            mode_minus: jones(&d.mode_minus),
            phi: d.phi,
            basis_free: d.basis_free as i32,
        };
        BqStatus::Ok
    })
}

/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_factorize(s: *const BqState, out: *mut BqFactorization) -> BqStatus {
    guard(|| {
        let (Some(q), Some(out)) = (state_ref(s), out.as_mut()) else {
            return BqStatus::NullPointer;
        };
        let f = factorize(q);
        let (x_a, x_a_at_infinity) = root(&f.x_a);
        let (x_b, x_b_at_infinity) = root(&f.x_b);
        *out = BqFactorization {
            x_a,
            x_b,
            x_a_at_infinity,
            x_b_at_infinity,
            phi0: f.phi0,
            mode_a: jones(&f.mode_a),
            mode_b: jones(&f.mode_b),
            commutator: f.commutator,
            norm_n: f.norm_n,
        };
        BqStatus::Ok
    })
}

/// Aligns the Schmidt modes, computes expected coincidences for `n_pairs`
/// pairs, samples them (unless `exact` is nonzero) and runs the estimator.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_simulate(
    s: *const BqState,
    eta1: f64,
    eta2: f64,
    dark_rate: f64,
    n_pairs: u64,
    seed: u64,
    exact: i32,
    out: *mut BqSimulation,
) -> BqStatus {
    guard(|| {
        let (Some(q), Some(out)) = (state_ref(s), out.as_mut()) else {
            return BqStatus::NullPointer;
        };
        let detector = match DetectorModel::new(eta1, eta2, dark_rate) {
            Ok(d) => d,
            Err(e) => return e.into(),
        };
        let cfg = SimulationConfig {
            detector,
            n_pairs,
            seed,
            exact: exact != 0,
            phi_sweep_steps: 0,
        };
        let r = match simulate(q, &cfg) {
            Ok(r) => r,
            Err(e) => return e.into(),
        };
        let (r0, r90, r45) = r.counts.map_or((0, 0, 0), |c| (c.r0, c.r90, c.r45));
        *out = BqSimulation {
            expected_r0: r.expected.r0,
            expected_r90: r.expected.r90,
            expected_r45: r.expected.r45,
            r0,
            r90,
            r45,
            lambda_plus: r.estimate.lambda_plus,
            lambda_minus: r.estimate.lambda_minus,
            cos_2phi: r.estimate.cos_2phi.unwrap_or(f64::NAN),
            cos_2phi_clamped: r.estimate.cos_2phi_clamped as i32,
            phase_undefined: r.estimate.phase_undefined as i32,
        };
        BqStatus::Ok
    })
}

/// Full analysis report as a NUL-terminated JSON string. Release it with
/// `bq_string_free`.
///
/// # Safety
/// `s` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bq_analysis_json(s: *const BqState, out: *mut *mut c_char) -> BqStatus {
    guard(|| {
        let (Some(q), false) = (state_ref(s), out.is_null()) else {
            return BqStatus::NullPointer;
        };
        let json = match serde_json::to_string(&AnalysisReport::new(q)) {
            Ok(j) => j,
            Err(_) => return BqStatus::Internal,
        };
        match CString::new(json) {
            Ok(c) => {
                *out = c.into_raw();
                BqStatus::Ok
            }
            Err(_) => BqStatus::Internal,
        }
    })
}

/// # Safety
/// `p` must come from `bq_analysis_json` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bq_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bq_status_message(status: BqStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BqStatus::Ok => b"ok\0",
        BqStatus::NullPointer => b"null pointer argument\0",
        BqStatus::AllZero => b"all amplitudes are zero\0",
        BqStatus::NonFinite => b"non-finite input\0",
        BqStatus::InvalidParameter => b"invalid parameter\0",
        BqStatus::NotAligned => b"state is not Schmidt-aligned\0",
        BqStatus::NoCounts => b"no coincidences in the 0 and 90 degree channels\0",
        BqStatus::Internal => b"internal error\0",
        BqStatus::Panic => b"panic inside the library\0",
    };
    s.as_ptr().cast()
}
