//! Analytic parity signals, phase sensitivity and energy bookkeeping.
//!
//! All phases are shifted phases (see [`crate::scheme`]).
//!
//! ```
//! use twinfock::closed_form::{parity, tmsv_sensitivity, sensitivity, DEFAULT_DERIVATIVE_STEP};
//! use twinfock::SchemeParams;
//!
//! let p = SchemeParams::ideal(0, 0.7, 0.3).unwrap();
//! let numeric = sensitivity(&p, DEFAULT_DERIVATIVE_STEP).unwrap();
//! let exact = tmsv_sensitivity(0.7, 0.3).unwrap();
//! assert!((numeric - exact).abs() / exact < 1e-8);
//! assert!(parity(&p).unwrap() < 1.0);
//! ```

mod coefficients;
mod energy;
mod sensitivity;

pub use coefficients::{ExponentCoefficients, ExternalCoefficients, IdealCoefficients, InternalCoefficients};
pub use energy::{hl, mean_total_photons, r_for_energy, sql};
pub use sensitivity::{
    optimal_sensitivity_over_phi, sensitivity, tmsv_sensitivity, DEFAULT_DERIVATIVE_STEP, DEFAULT_PHI_INTERVAL,
    MIN_SLOPE,
};

use crate::error::{Error, Result};
use crate::scheme::{Scenario, SchemeParams};
use crate::series::dn_of_exp;

/// Largest imaginary part tolerated in an evaluated parity.
pub const IMAGINARY_TOL: f64 = 1e-10;

/// `⟨Π_b⟩` for any scenario.
pub fn parity(p: &SchemeParams) -> Result<f64> {
    let coeffs = ExponentCoefficients::for_params(p)?;
    let value = dn_of_exp(&coeffs.exponent(), p.n as usize)? * coeffs.prefactor();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Domain(format!("parity is not finite at {p:?}")));
    }
    if value.im.abs() > IMAGINARY_TOL {
        return Err(Error::ComplexResidue { real: value.re, imag: value.im });
    }
    Ok(value.re)
}

fn require(p: &SchemeParams, expected: &str) -> Result<()> {
    if p.scenario.name() != expected {
        return Err(Error::Precondition(format!("expected the {expected} scenario, got {}", p.scenario)));
    }
    Ok(())
}

/// Lossless parity signal.
pub fn parity_ideal(p: &SchemeParams) -> Result<f64> {
    require(p, "ideal")?;
    parity(p)
}

/// Parity with photon loss in front of the detector.
pub fn parity_external(p: &SchemeParams) -> Result<f64> {
    require(p, "external")?;
    parity(p)
}

/// Parity with photon loss inside the interferometer.
pub fn parity_internal(p: &SchemeParams) -> Result<f64> {
    require(p, "internal")?;
    parity(p)
}

/// Convenience wrapper building the params on the fly.
pub fn parity_at(n: u32, r: f64, phi: f64, scenario: Scenario) -> Result<f64> {
    parity(&SchemeParams::new(n, r, phi, scenario)?)
}
