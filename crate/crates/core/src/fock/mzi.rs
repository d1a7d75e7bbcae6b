//! Brute-force Mach-Zehnder interferometer on the truncated Fock space.
//!
//! BS1 = `exp(−iπJ₁/2)`, phase shifter = `exp(−iθJ₃)`, BS2 = `exp(+iπJ₁/2)`,
//! parity read out on mode `b`. Loss is a Kraus channel on mode `b`, placed
//! after BS2 (external) or between the phase shifter and BS2 (internal).

use std::f64::consts::FRAC_PI_2;

use super::blocks::{apply_phase_shift, Generator, ModeOperatorBlocks};
use super::density::TwoModeDensity;
use super::laguerre::interferometer_input;
use super::loss::LossChannel;
use super::state::{parity_expectation, Mode, TwoModeState};
use crate::error::{Error, Result};
use crate::scheme::{physical_phase, Scenario, SchemeParams};

/// Precomputed beam-splitter blocks for one per-mode cutoff.
///
/// Only sectors `N <= cutoff` are built; inputs must not occupy higher
/// sectors (see [`interferometer_input`]).
#[derive(Debug, Clone)]
pub struct Interferometer {
    cutoff: usize,
    splitter: ModeOperatorBlocks,
}

impl Interferometer {
    pub fn new(cutoff: usize) -> Self {
        Interferometer {
            cutoff,
            splitter: ModeOperatorBlocks::exp_generator_up_to(Generator::J1, FRAC_PI_2, cutoff, cutoff),
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The first beam splitter `exp(−iπJ₁/2)`.
    pub fn first_splitter(&self) -> &ModeOperatorBlocks {
        &self.splitter
    }

    /// `BS1 |input⟩`, the probe state entering the phase shifter.
    pub fn probe(&self, input: &TwoModeState) -> Result<TwoModeState> {
        self.splitter.apply(input)
    }

    /// Applies BS2 = BS1†.
    pub fn recombine(&self, state: &TwoModeState) -> Result<TwoModeState> {
        self.splitter.apply_adjoint(state)
    }

    /// Lossless output `BS2 · U(θ) · BS1 |input⟩` at physical phase `theta`.
    pub fn output(&self, input: &TwoModeState, theta: f64) -> Result<TwoModeState> {
        let inside = apply_phase_shift(&self.probe(input)?, theta);
        self.recombine(&inside)
    }

    /// Parity of mode `b` at the output, with `phi` in the shifted convention.
    pub fn parity(&self, input: &TwoModeState, phi: f64, scenario: Scenario) -> Result<f64> {
        scenario.validate()?;
        let theta = physical_phase(phi);
        match scenario {
            Scenario::Ideal => Ok(parity_expectation(&self.output(input, theta)?, Mode::B)),
            Scenario::External { t1 } => {
                let out = self.output(input, theta)?;
                let rho = LossChannel::new(Mode::B, t1)?.apply(&TwoModeDensity::from(out));
                Ok(parity_expectation(&rho, Mode::B))
            }
            Scenario::Internal { t2 } => {
                let inside = apply_phase_shift(&self.probe(input)?, theta);
                let rho = LossChannel::new(Mode::B, t2)?.apply(&TwoModeDensity::from(inside));
                let out = rho.transformed_adjoint(&self.splitter)?;
                Ok(parity_expectation(&out, Mode::B))
            }
        }
    }
}

/// Oracle parity for `params`, with a cutoff chosen from `tail_tol`.
pub fn oracle_parity(params: &SchemeParams, tail_tol: f64) -> Result<f64> {
    params.validate()?;
    let input = interferometer_input(params.n, params.r, tail_tol)?;
    Interferometer::new(input.cutoff()).parity(&input, params.phi, params.scenario)
}

/// Evaluates several phases/scenarios for one `(n, r)` while reusing the
/// beam-splitter blocks.
pub fn oracle_parities(
    n: u32,
    r: f64,
    points: &[(f64, Scenario)],
    tail_tol: f64,
) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let input = interferometer_input(n, r, tail_tol)?;
    let mzi = Interferometer::new(input.cutoff());
    points
        .iter()
        .map(|&(phi, scenario)| {
            SchemeParams::new(n, r, phi, scenario)?;
            mzi.parity(&input, phi, scenario)
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Dimension(msg) => Error::Dimension(format!("oracle: {msg}")),
            other => other,
        })
}

/// Spectral-norm distance between `exp(iπJ₁/2) exp(−iθJ₃) exp(−iπJ₁/2)` and
/// `exp(−iθJ₂)` over the complete sectors `N <= cutoff`.
pub fn interferometer_identity_error(cutoff: usize, theta: f64) -> Result<f64> {
    let bs1 = ModeOperatorBlocks::exp_generator_up_to(Generator::J1, FRAC_PI_2, cutoff, cutoff);
    let shift = ModeOperatorBlocks::exp_generator_up_to(Generator::J3, theta, cutoff, cutoff);
    let lhs = bs1.adjoint().compose(&shift)?.compose(&bs1)?;
    let rhs = ModeOperatorBlocks::exp_generator_up_to(Generator::J2, theta, cutoff, cutoff);
    lhs.operator_norm_distance(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::laguerre::DEFAULT_TAIL_TOL;

    fn tmsv_parity(r: f64, phi: f64) -> f64 {
        let t2 = r.tanh().powi(2);
        let omega = 1.0 - 2.0 * t2 * (2.0 * phi).cos() + t2 * t2;
        1.0 / r.cosh().powi(2) / omega.sqrt()
    }

    #[test]
    fn vacuum_passes_unchanged() {
        let mzi = Interferometer::new(4);
        let out = mzi.output(&TwoModeState::vacuum(4), 0.3).unwrap();
        assert!((out.amplitude(0, 0).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tmsv_parity_signal() {
        let p = oracle_parity(&SchemeParams::ideal(0, 0.7, 0.3).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        assert!((p - tmsv_parity(0.7, 0.3)).abs() < 1e-11, "{p}");
    }

    #[test]
    fn parity_peaks_at_zero_shifted_phase() {
        let p = oracle_parity(&SchemeParams::ideal(1, 0.5, 0.0).unwrap(), DEFAULT_TAIL_TOL).unwrap();
        assert!((p - 1.0).abs() < 1e-11);
    }

    #[test]
    fn norm_is_preserved_through_the_interferometer() {
        let input = interferometer_input(2, 0.8, DEFAULT_TAIL_TOL).unwrap();
        let out = Interferometer::new(input.cutoff()).output(&input, 1.1).unwrap();
        assert!((out.norm_sqr() - input.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn losses_stay_within_parity_bounds() {
        let pts = [
            (0.2, Scenario::External { t1: 0.8 }),
            (0.2, Scenario::Internal { t2: 0.8 }),
            (0.9, Scenario::Internal { t2: 0.3 }),
        ];
        for p in oracle_parities(2, 0.6, &pts, DEFAULT_TAIL_TOL).unwrap() {
            assert!(p.abs() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn mzi_collapses_to_j2_rotation() {
        for theta in [0.1, 0.7, 2.3] {
            assert!(interferometer_identity_error(8, theta).unwrap() < 1e-13);
        }
    }

    #[test]
    fn rejects_invalid_loss() {
        let input = interferometer_input(0, 0.5, DEFAULT_TAIL_TOL).unwrap();
        let mzi = Interferometer::new(input.cutoff());
        assert!(mzi.parity(&input, 0.1, Scenario::External { t1: 0.0 }).is_err());
    }
}
