//! Interferometer configuration shared by the analytic and brute-force paths.
//!
//! Every public phase in this crate is the *shifted* phase: the physical
//! phase-shifter angle minus π/2. In this convention the ideal parity signal
//! peaks at `phi = 0`, which is where the lossless sensitivity is optimal.
//! Use [`physical_phase`] when driving the Fock-space simulation directly.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{domain, Result};

/// Converts a shifted phase to the angle applied by the phase shifter `exp(-i φ J₃)`.
pub fn physical_phase(phi: f64) -> f64 {
    phi + FRAC_PI_2
}

/// Where photon loss acts, if anywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// Lossless interferometer.
    Ideal,
    /// Loss on output mode `b` after the second beam splitter, just before
    /// the parity detector. `t1` is the transmissivity.
    External { t1: f64 },
    /// Loss on mode `b` between the phase shifter and the second beam
    /// splitter. `t2` is the transmissivity.
    Internal { t2: f64 },
}

impl Scenario {
    /// Transmissivity of the loss element (1 for the ideal case).
    pub fn transmissivity(&self) -> f64 {
        match *self {
            Scenario::Ideal => 1.0,
            Scenario::External { t1 } => t1,
            Scenario::Internal { t2 } => t2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.transmissivity();
        if !(t > 0.0 && t <= 1.0) {
            return domain(format!("transmissivity must lie in (0, 1], got {t}"));
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Ideal => "ideal",
            Scenario::External { .. } => "external",
            Scenario::Internal { .. } => "internal",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scenario::Ideal => write!(f, "ideal"),
            Scenario::External { t1 } => write!(f, "external(T1={t1})"),
            Scenario::Internal { t2 } => write!(f, "internal(T2={t2})"),
        }
    }
}

/// Input state, phase and loss model for one parity evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    /// Excitation order of the twin-Fock seed `|n, n⟩`.
    pub n: u32,
    /// Two-mode squeezing parameter.
    pub r: f64,
    /// Shifted phase (see module docs).
    pub phi: f64,
    pub scenario: Scenario,
}

impl SchemeParams {
    pub fn new(n: u32, r: f64, phi: f64, scenario: Scenario) -> Result<Self> {
        let p = SchemeParams { n, r, phi, scenario };
        p.validate()?;
        Ok(p)
    }

    pub fn ideal(n: u32, r: f64, phi: f64) -> Result<Self> {
        Self::new(n, r, phi, Scenario::Ideal)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return domain(format!("squeezing parameter must be positive and finite, got {}", self.r));
        }
        if !self.phi.is_finite() {
            return domain("phase must be finite");
        }
        self.scenario.validate()
    }

    /// Same configuration at a different phase.
    pub fn with_phi(&self, phi: f64) -> Self {
        SchemeParams { phi, ..*self }
    }
}
