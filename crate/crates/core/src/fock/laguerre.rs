//! The two-mode squeezed twin-Fock input `S(r)|n,n⟩`.
//!
//! Writing the squeezed twin-Fock state as a Laguerre polynomial in `a†b†`
//! acting on the two-mode squeezed vacuum gives
//!
//! ```text
//! S(r)|n,n⟩ = (−tanh r)ⁿ Lₙ(u a†b†) sech r Σⱼ tanhʲ r |j,j⟩,   u = 2 / sinh 2r,
//! Lₙ(z) = Σₖ C(n,k) (−z)ᵏ / k!,
//! ```
//!
//! so the state lives on the diagonal `|m,m⟩` with amplitude
//!
//! ```text
//! c_m = (−tanh r)ⁿ sech r Σ_{k ≤ min(n,m)} C(n,k) (−u)ᵏ/k! · m!/(m−k)! · tanh^{m−k} r.
//! ```
//!
//! Each `c_m` is exact, so the truncation tail can be summed directly.

use num_complex::Complex64;

use super::state::TwoModeState;
use crate::error::{Error, Result};

/// Default bound on the discarded squared norm.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Below this squeezing the Laguerre form is numerically singular
/// (`u = 2/sinh 2r` diverges) and `|n,n⟩` is returned instead.
pub const SMALL_SQUEEZING: f64 = 1e-8;

fn check_squeezing(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("squeezing parameter must be positive and finite, got {r}")));
    }
    Ok(())
}

/// Exact amplitude `⟨m,m|S(r)|n,n⟩`.
pub fn laguerre_amplitude(n: u32, r: f64, m: usize) -> f64 {
    let n = n as usize;
    if r < SMALL_SQUEEZING {
        return if m == n { 1.0 } else { 0.0 };
    }
    let t = r.tanh();
    let u = 2.0 / (2.0 * r).sinh();
    let mut sum = 0.0;
    // running C(n,k) (−u)^k / k! · m!/(m−k)!
    let mut coeff = 1.0;
    for k in 0..=n.min(m) {
        if k > 0 {
            let kf = k as f64;
            coeff *= -u * (n + 1 - k) as f64 / kf / kf * (m + 1 - k) as f64;
        }
        sum += coeff * t.powi((m - k) as i32);
    }
    (-t).powi(n as i32) * sum / r.cosh()
}

/// Squared norm discarded by keeping only `m <= cutoff`.
pub fn truncation_tail(n: u32, r: f64, cutoff: usize) -> f64 {
    if r < SMALL_SQUEEZING {
        return if (n as usize) > cutoff { 1.0 } else { 0.0 };
    }
    let mut tail = 0.0;
    let mut prev = f64::INFINITY;
    let mut negligible_run = 0;
    let mut m = cutoff + 1;
    loop {
        let p = laguerre_amplitude(n, r, m).powi(2);
        tail += p;
        // past the occupation peak the terms decay geometrically; a run of
        // small terms guards against stopping at an isolated node of c_m
        if m > n as usize + 2 && p <= prev && (p == 0.0 || p < 1e-18 * tail) {
            negligible_run += 1;
            if negligible_run >= 8 {
                break;
            }
        } else {
            negligible_run = 0;
        }
        if m > cutoff + 10_000_000 {
            break;
        }
        prev = p;
        m += 1;
    }
    tail
}

/// Smallest diagonal cutoff `M >= n` with truncation tail below `tail_tol`.
pub fn default_cutoff(n: u32, r: f64, tail_tol: f64) -> Result<usize> {
    check_squeezing(r)?;
    if !(tail_tol > 0.0) {
        return Err(Error::Domain(format!("tail tolerance must be positive, got {tail_tol}")));
    }
    if r < SMALL_SQUEEZING {
        return Ok(n as usize);
    }
    let mut cut = n as usize;
    while truncation_tail(n, r, cut) >= tail_tol {
        cut += 1;
    }
    Ok(cut)
}

/// `S(r)|n,n⟩` on per-mode cutoff `cutoff`, renormalised within the truncation.
pub fn build_laguerre_state(n: u32, r: f64, cutoff: usize) -> Result<TwoModeState> {
    build_laguerre_state_with_tol(n, r, cutoff, DEFAULT_TAIL_TOL)
}

pub fn build_laguerre_state_with_tol(n: u32, r: f64, cutoff: usize, tail_tol: f64) -> Result<TwoModeState> {
    check_squeezing(r)?;
    if cutoff < n as usize {
        return Err(Error::Truncation {
            cutoff,
            tail: 1.0,
            tail_tol,
            required: n as usize,
        });
    }
    let tail = truncation_tail(n, r, cutoff);
    if tail >= tail_tol {
        return Err(Error::Truncation {
            cutoff,
            tail,
            tail_tol,
            required: default_cutoff(n, r, tail_tol)?,
        });
    }
    let mut state = TwoModeState::zeros(cutoff);
    for m in 0..=cutoff {
        state.set_amplitude(m, m, Complex64::new(laguerre_amplitude(n, r, m), 0.0));
    }
    Ok(state.normalized())
}

/// Input state sized for an interferometer: diagonal truncation `M` from
/// [`default_cutoff`], embedded at per-mode cutoff `2M` so that every
/// occupied total-photon-number sector is complete.
pub fn interferometer_input(n: u32, r: f64, tail_tol: f64) -> Result<TwoModeState> {
    let diag = default_cutoff(n, r, tail_tol)?;
    build_laguerre_state_with_tol(n, r, diag, tail_tol)?.embed(2 * diag)
}
