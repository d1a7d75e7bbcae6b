//! Pure photon loss on one mode, as a Kraus sum.
//!
//! A beam splitter of transmissivity `T` mixing the mode with vacuum and
//! tracing out the environment gives
//! `K_l = √((1−T)^l / l!) · T^{n̂/2} · â^l`, `l = 0, 1, …`,
//! so `K_l|m⟩ = √(C(m,l) (1−T)^l T^{m−l}) |m−l⟩`.

use super::density::TwoModeDensity;
use super::state::{Mode, TwoModeState};
use crate::error::{Error, Result};

/// Kraus branches lighter than this are discarded.
pub const BRANCH_WEIGHT_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel {
    pub mode: Mode,
    pub transmissivity: f64,
}

impl LossChannel {
    pub fn new(mode: Mode, transmissivity: f64) -> Result<Self> {
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::Domain(format!(
                "transmissivity must lie in (0, 1], got {transmissivity}"
            )));
        }
        Ok(LossChannel { mode, transmissivity })
    }

    /// `amp[m][l]` = amplitude factor of `K_l` on `|m⟩`.
    fn kraus_factors(&self, cutoff: usize) -> Vec<Vec<f64>> {
        let t = self.transmissivity;
        let ln_t = t.ln();
        let ln_loss = (1.0 - t).ln();
        let mut ln_fact = vec![0.0; cutoff + 1];
        for i in 1..=cutoff {
            ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
        }
        (0..=cutoff)
            .map(|m| {
                (0..=m)
                    .map(|l| {
                        let ln_binom = ln_fact[m] - ln_fact[l] - ln_fact[m - l];
                        let mut ln_p = ln_binom + (m - l) as f64 * ln_t;
                        if l > 0 {
                            ln_p += l as f64 * ln_loss;
                        }
                        (0.5 * ln_p).exp()
                    })
                    .collect()
            })
            .collect()
    }

    /// `K_l |state⟩`.
    fn branch(&self, state: &TwoModeState, lost: usize, factors: &[Vec<f64>]) -> TwoModeState {
        let cutoff = state.cutoff();
        let mut out = TwoModeState::zeros(cutoff);
        for k in 0..=cutoff {
            for m in lost..=cutoff {
                let (src, dst) = match self.mode {
                    Mode::B => ((k, m), (k, m - lost)),
                    Mode::A => ((m, k), (m - lost, k)),
                };
                let a = state.amplitude(src.0, src.1);
                if a.re != 0.0 || a.im != 0.0 {
                    out.set_amplitude(dst.0, dst.1, a * factors[m][lost]);
                }
            }
        }
        out
    }

    pub fn apply(&self, input: &TwoModeDensity) -> TwoModeDensity {
        if self.transmissivity == 1.0 {
            return input.clone();
        }
        let cutoff = input.cutoff();
        let factors = self.kraus_factors(cutoff);
        let mut branches = Vec::new();
        for b in input.branches() {
            for lost in 0..=cutoff {
                let out = self.branch(b, lost, &factors);
                if out.norm_sqr() > BRANCH_WEIGHT_FLOOR {
                    branches.push(out);
                }
            }
        }
        TwoModeDensity::from_branches(cutoff, branches).expect("branches share the input cutoff")
    }
}

/// `Σ_l K_l ρ K_l†` on `mode` with the given transmissivity.
pub fn apply_loss_channel(
    input: impl Into<TwoModeDensity>,
    mode: Mode,
    transmissivity: f64,
) -> Result<TwoModeDensity> {
    Ok(LossChannel::new(mode, transmissivity)?.apply(&input.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::state::{parity_expectation, photon_moments};
    use num_complex::Complex64;

    #[test]
    fn lossless_is_identity() {
        let mut s = TwoModeState::zeros(3);
        s.set_amplitude(1, 2, Complex64::new(0.6, 0.0));
        s.set_amplitude(0, 3, Complex64::new(0.0, 0.8));
        let out = apply_loss_channel(&s, Mode::B, 1.0).unwrap();
        assert_eq!(out.branches().len(), 1);
        assert_eq!(out.to_matrix(), TwoModeDensity::from(&s).to_matrix());
    }

    #[test]
    fn single_photon_attenuation() {
        let s = TwoModeState::fock(0, 1, 2).unwrap();
        let rho = apply_loss_channel(s, Mode::B, 0.95).unwrap().to_matrix();
        let i01 = 1;
        for i in 0..rho.nrows() {
            for j in 0..rho.ncols() {
                let expected = match (i, j) {
                    (0, 0) => 0.05,
                    (a, b) if a == i01 && b == i01 => 0.95,
                    _ => 0.0,
                };
                assert!((rho[(i, j)] - Complex64::new(expected, 0.0)).norm() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn trace_and_mean_photon_scaling() {
        // <n_b> scales by T under pure loss; mode a is untouched
        let mut s = TwoModeState::zeros(6);
        s.set_amplitude(2, 5, Complex64::new(0.5f64.sqrt(), 0.0));
        s.set_amplitude(1, 3, Complex64::new(0.0, 0.5f64.sqrt()));
        let t = 0.73;
        let out = apply_loss_channel(&s, Mode::B, t).unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-13);
        let m = photon_moments(&out);
        assert!((m.mean_b - t * 4.0).abs() < 1e-13);
        assert!((m.mean_a - 1.5).abs() < 1e-13);
    }

    #[test]
    fn loss_on_mode_a_mirrors_mode_b() {
        let s = TwoModeState::fock(3, 1, 4).unwrap();
        let a = apply_loss_channel(&s, Mode::A, 0.6).unwrap();
        let m = photon_moments(&a);
        assert!((m.mean_a - 1.8).abs() < 1e-13);
        assert!((m.mean_b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parity_of_attenuated_fock_state() {
        // binomial thinning of |m>: <(-1)^n> = (1 - 2T)^m
        let t: f64 = 0.8;
        let s = TwoModeState::fock(0, 3, 3).unwrap();
        let out = apply_loss_channel(&s, Mode::B, t).unwrap();
        let p = parity_expectation(&out, Mode::B);
        assert!((p - (1.0 - 2.0 * t).powi(3)).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_transmissivity() {
        let s = TwoModeState::vacuum(1);
        assert!(apply_loss_channel(&s, Mode::B, 0.0).is_err());
        assert!(apply_loss_channel(&s, Mode::B, -0.1).is_err());
        assert!(apply_loss_channel(&s, Mode::B, 1.5).is_err());
    }
}
