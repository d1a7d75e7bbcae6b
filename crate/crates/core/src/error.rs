use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation error: cutoff {cutoff} leaves tail {tail:e} above tolerance {tail_tol:e} (need cutoff >= {required})")]
    Truncation {
        cutoff: usize,
        tail: f64,
        tail_tol: f64,
        required: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("divergent sensitivity at phi = {phi}: |d<Pi>/dphi| = {slope:e}")]
    DivergentSensitivity { phi: f64, slope: f64 },

    #[error("infeasible energy: mean photon number {nbar} is below the minimum {min} for n = {n}")]
    InfeasibleEnergy { nbar: f64, n: u32, min: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("no signal: every grid point of the phase scan is divergent")]
    NoSignal,

    #[error("parity expectation has imaginary residue {imag:e} (real part {real})")]
    ComplexResidue { real: f64, imag: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
