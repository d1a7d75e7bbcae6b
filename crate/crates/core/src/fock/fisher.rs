//! Quantum Fisher information evaluated directly on truncated states.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::blocks::{apply_phase_shift, Generator, ModeOperatorBlocks};
use super::density::{TwoModeDensity, NEGATIVITY_TOL};
use super::laguerre::build_laguerre_state_with_tol;
use super::loss::LossChannel;
use super::state::{FockPopulations, Mode, TwoModeState};
use crate::error::{Error, Result};

/// Eigenvalue-pair floor in the mixed-state QFI sum.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

/// Default finite-difference step for [`mixed_state_qfi`].
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// `4 Var(J₃)` on `exp(−iπJ₁/2)|input⟩`.
///
/// This is the pure-state QFI for the phase generated by `J₃` inside the
/// interferometer. The input is embedded so that every occupied sector is
/// complete before the beam splitter acts.
pub fn pure_state_qfi(input: &TwoModeState) -> Result<f64> {
    let Some(top) = input.max_total() else {
        return Err(Error::InvalidDensity("zero state".into()));
    };
    let state = if top > input.cutoff() { input.embed(top)? } else { input.clone() };
    let bs1 = ModeOperatorBlocks::exp_generator_up_to(Generator::J1, FRAC_PI_2, state.cutoff(), top);
    let probe = bs1.apply(&state)?;
    Ok(4.0 * j3_variance(&probe))
}

fn j3_variance<S: FockPopulations + ?Sized>(state: &S) -> f64 {
    let side = state.cutoff() + 1;
    let (mut norm, mut mean, mut sq) = (0.0, 0.0, 0.0);
    for (i, p) in state.populations().into_iter().enumerate() {
        let j3 = ((i / side) as f64 - (i % side) as f64) / 2.0;
        norm += p;
        mean += p * j3;
        sq += p * j3 * j3;
    }
    sq / norm - (mean / norm).powi(2)
}

/// Exact QFI of a one-parameter family of mixed states at `phi`.
///
/// `∂ρ/∂φ` comes from a Richardson-extrapolated central difference with
/// step `fd_step`. With `ρ = Σᵢ λᵢ|i⟩⟨i|` the result is
/// `Σ 2|⟨i|∂ρ|j⟩|²/(λᵢ+λⱼ)` over pairs with `λᵢ + λⱼ > 1e-12`.
///
/// The eigenpairs are taken from the Gram matrix of the density's branches,
/// so only the support of `ρ` is diagonalised; pairs with one member in the
/// kernel are summed through the projector onto the support. `∂ρ` is still
/// formed densely, so keep the total dimension in the low hundreds.
pub fn mixed_state_qfi<F>(rho_of_phi: F, phi: f64, fd_step: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<TwoModeDensity>,
{
    if !(fd_step > 0.0 && fd_step.is_finite()) {
        return Err(Error::Domain(format!("finite-difference step must be positive, got {fd_step}")));
    }
    let dense = |x: f64| rho_of_phi(x).map(|r| r.to_matrix());
    let central = |h: f64| -> Result<DMatrix<Complex64>> {
        Ok((dense(phi + h)? - dense(phi - h)?) / Complex64::new(2.0 * h, 0.0))
    };
    let coarse = central(fd_step)?;
    let fine = central(fd_step / 2.0)?;
    let drho = (fine * Complex64::new(4.0, 0.0) - coarse) / Complex64::new(3.0, 0.0);

    let (lambda, basis) = support_eigenpairs(&rho_of_phi(phi)?)?;
    let d_basis = &drho * &basis;
    let projected = basis.adjoint() * &d_basis;
    let outside = &d_basis - &basis * &projected;
    let mut f = 0.0;
    for i in 0..lambda.len() {
        for j in 0..lambda.len() {
            f += 2.0 * projected[(i, j)].norm_sqr() / (lambda[i] + lambda[j]);
        }
        f += 4.0 * outside.column(i).norm_squared() / lambda[i];
    }
    Ok(f)
}

/// Eigenvalues above half the floor and their orthonormal eigenvectors, as
/// columns, from the Gram matrix `V†V` of the branches `V`.
fn support_eigenpairs(rho: &TwoModeDensity) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let branches = rho.branches();
    let v = DMatrix::from_fn(rho.dim(), branches.len(), |i, b| branches[b].amplitudes()[i]);
    let eig = SymmetricEigen::new(v.adjoint() * &v);
    if let Some(&bad) = eig.eigenvalues.iter().find(|&&l| !(l >= -NEGATIVITY_TOL)) {
        return Err(Error::InvalidDensity(format!("eigenvalue {bad:e} of the density")));
    }
    let keep: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&k| eig.eigenvalues[k] > EIGENVALUE_FLOOR / 2.0).collect();
    let lambda: Vec<f64> = keep.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut basis = DMatrix::zeros(rho.dim(), keep.len());
    for (c, &k) in keep.iter().enumerate() {
        let u = &v * eig.eigenvectors.column(k) / Complex64::new(lambda[c].sqrt(), 0.0);
        basis.set_column(c, &u);
    }
    Ok((lambda, basis))
}

/// `φ ↦ L_η U(φ) |probe⟩⟨probe| U(φ)† L_η†`: phase shift followed by loss of
/// transmissivity `eta` on mode `b` (the two commute).
pub fn lossy_phase_family(
    probe: TwoModeState,
    eta: f64,
) -> Result<impl Fn(f64) -> Result<TwoModeDensity>> {
    let channel = LossChannel::new(Mode::B, eta)?;
    Ok(move |phi: f64| Ok(channel.apply(&TwoModeDensity::from(apply_phase_shift(&probe, phi)))))
}

/// Exact QFI of `S(r)|n,n⟩` sent through the first beam splitter and then
/// a loss of transmissivity `eta` on mode `b`, on per-mode cutoff `cutoff`.
///
/// The diagonal state is truncated at `cutoff / 2` and renormalised, so the
/// result is only as accurate as that truncation; it is meant for small
/// instances where the dense density matrix is affordable.
pub fn truncated_lossy_qfi(n: u32, r: f64, eta: f64, cutoff: usize) -> Result<f64> {
    let diag = cutoff / 2;
    let seed = build_laguerre_state_with_tol(n, r, diag, 1.0)?.embed(cutoff)?;
    let probe = ModeOperatorBlocks::exp_generator(Generator::J1, FRAC_PI_2, cutoff).apply(&seed)?;
    mixed_state_qfi(lossy_phase_family(probe, eta)?, 0.0, DEFAULT_FD_STEP)
}
