use super::coefficients::IdealCoefficients;
use super::parity;
use crate::error::{domain, Error, Result};
use crate::numerics::{minimize_bracketed, richardson_derivative};
use crate::scheme::SchemeParams;

/// Default step for the numerical phase derivative of the signal.
pub const DEFAULT_DERIVATIVE_STEP: f64 = 1e-5;

/// Slopes below this are treated as stationary points of the signal.
pub const MIN_SLOPE: f64 = 1e-12;

/// Default phase window searched by [`optimal_sensitivity_over_phi`].
pub const DEFAULT_PHI_INTERVAL: (f64, f64) = (1e-4, 1.5);

const COARSE_GRID: usize = 64;
const PHI_TOL: f64 = 1e-6;

/// Error-propagation sensitivity `√(1 − ⟨Π⟩²) / |∂⟨Π⟩/∂φ|`.
pub fn sensitivity(p: &SchemeParams, derivative_step: f64) -> Result<f64> {
    let signal = parity(p)?;
    let slope = richardson_derivative(|phi| parity(&p.with_phi(phi)), p.phi, derivative_step)?;
    if !(slope.abs() >= MIN_SLOPE) {
        return Err(Error::DivergentSensitivity { phi: p.phi, slope: slope.abs() });
    }
    Ok((1.0 - signal * signal).max(0.0).sqrt() / slope.abs())
}

/// Exact lossless sensitivity of the two-mode squeezed vacuum,
/// `ω₀ cosh²r / (2 tanh r cos φ)`.
pub fn tmsv_sensitivity(r: f64, phi: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("squeezing parameter must be positive and finite, got {r}"));
    }
    let c = phi.cos();
    if c.abs() < MIN_SLOPE {
        return Err(Error::DivergentSensitivity { phi, slope: 0.0 });
    }
    let omega0 = IdealCoefficients::new(r, phi).omega0;
    Ok(omega0 * r.cosh().powi(2) / (2.0 * r.tanh() * c.abs()))
}

/// Minimises the sensitivity over `phi` in `interval`, returning `(φ*, Δφ*)`.
///
/// A 64-point scan picks the basin, golden section narrows it to 1e-6.
/// The `phi` stored in `p` is ignored.
pub fn optimal_sensitivity_over_phi(
    p: &SchemeParams,
    interval: (f64, f64),
    derivative_step: f64,
) -> Result<(f64, f64)> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return domain(format!("invalid phase interval ({lo}, {hi})"));
    }
    minimize_bracketed(|phi| sensitivity(&p.with_phi(phi), derivative_step), lo, hi, COARSE_GRID, PHI_TOL)
}
