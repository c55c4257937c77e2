use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library. Degenerate configurations that still have a
/// well-defined answer are reported through flags on the result types, not here.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all amplitudes are zero")]
    AllZero,
    #[error("non-finite amplitude in input")]
    NonFinite,
    #[error("vector is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("zero-length Stokes vector")]
    ZeroVector,
    #[error("angle {0} outside [0, π]")]
    OutOfRange(f64),
    #[error("Stokes vectors are not antipodal (dot product {dot})")]
    NotAntipodal { dot: f64 },
    #[error("state is not in the Schmidt-aligned form (|c2| = {c2_abs:e})")]
    NotAligned { c2_abs: f64 },
    #[error("no coincidences recorded in the 0° and 90° channels")]
    NoCounts,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
