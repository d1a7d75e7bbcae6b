//! Photon-number-conserving two-mode unitaries in block-diagonal form.
//!
//! `J₁ = ½(a†b + ab†)`, `J₂ = (a†b − ab†)/2i` and `J₃ = ½(a†a − b†b)` all
//! commute with the total photon number `N = k + l`, so `exp(−iθJ)` splits
//! into one dense `(N+1)×(N+1)` unitary per sector. On the square truncation
//! sectors with `N > cutoff` are cut short; there the generator is
//! compressed to the surviving basis states, which keeps every block unitary
//! but is exact only for sectors `N <= cutoff`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::TwoModeState;
use crate::error::{Error, Result};

/// SU(2) generators of the two-mode Schwinger representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    J1,
    J2,
    J3,
}

/// First and last `k` (photons in mode `a`) of sector `total` under `cutoff`.
pub fn sector_range(cutoff: usize, total: usize) -> (usize, usize) {
    (total.saturating_sub(cutoff), total.min(cutoff))
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn j1_real_block(cutoff: usize, total: usize) -> DMatrix<f64> {
    let (lo, hi) = sector_range(cutoff, total);
    let size = hi - lo + 1;
    let mut m = DMatrix::zeros(size, size);
    for j in 0..size.saturating_sub(1) {
        let k = (lo + j) as f64;
        let v = 0.5 * ((k + 1.0) * (total as f64 - k)).sqrt();
        m[(j + 1, j)] = v;
        m[(j, j + 1)] = v;
    }
    m
}

/// `(−i)^k` for the diagonal similarity taking `J₁` to `J₂`.
fn j2_phase(k: usize) -> Complex64 {
    match k % 4 {
        0 => c(1.0),
        1 => Complex64::new(0.0, -1.0),
        2 => c(-1.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Dense Hermitian matrix of `generator` restricted to sector `total`,
/// basis ordered by increasing `k`.
pub fn generator_block(generator: Generator, cutoff: usize, total: usize) -> DMatrix<Complex64> {
    let (lo, hi) = sector_range(cutoff, total);
    let size = hi - lo + 1;
    match generator {
        Generator::J1 => j1_real_block(cutoff, total).map(c),
        Generator::J2 => {
            let j1 = j1_real_block(cutoff, total);
            DMatrix::from_fn(size, size, |i, j| {
                j2_phase(lo + i) * j1[(i, j)] * j2_phase(lo + j).conj()
            })
        }
        Generator::J3 => DMatrix::from_fn(size, size, |i, j| {
            if i == j {
                c((2.0 * (lo + i) as f64 - total as f64) / 2.0)
            } else {
                c(0.0)
            }
        }),
    }
}

fn exp_block(generator: Generator, angle: f64, cutoff: usize, total: usize) -> DMatrix<Complex64> {
    let (lo, hi) = sector_range(cutoff, total);
    let size = hi - lo + 1;
    match generator {
        Generator::J3 => DMatrix::from_fn(size, size, |i, j| {
            if i == j {
                let m = (2.0 * (lo + i) as f64 - total as f64) / 2.0;
                Complex64::from_polar(1.0, -angle * m)
            } else {
                c(0.0)
            }
        }),
        Generator::J1 | Generator::J2 => {
            let eig = SymmetricEigen::new(j1_real_block(cutoff, total));
            let phases: Vec<Complex64> = eig
                .eigenvalues
                .iter()
                .map(|&lambda| Complex64::from_polar(1.0, -angle * lambda))
                .collect();
            let v = &eig.eigenvectors;
            let mut out = DMatrix::from_fn(size, size, |i, j| {
                let mut acc = c(0.0);
                for (m, ph) in phases.iter().enumerate() {
                    acc += ph * (v[(i, m)] * v[(j, m)]);
                }
                acc
            });
            if generator == Generator::J2 {
                for i in 0..size {
                    for j in 0..size {
                        out[(i, j)] *= j2_phase(lo + i) * j2_phase(lo + j).conj();
                    }
                }
            }
            out
        }
    }
}

/// Block-diagonal unitary, one block per total photon number `0..=max_sector`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperatorBlocks {
    cutoff: usize,
    blocks: Vec<DMatrix<Complex64>>,
}

impl ModeOperatorBlocks {
    /// `exp(−i·angle·generator)` on every sector of the square truncation.
    pub fn exp_generator(generator: Generator, angle: f64, cutoff: usize) -> Self {
        Self::exp_generator_up_to(generator, angle, cutoff, 2 * cutoff)
    }

    /// As [`exp_generator`](Self::exp_generator), but only sectors `0..=max_sector`.
    /// Applying the result to a state with amplitude above `max_sector` fails.
    pub fn exp_generator_up_to(generator: Generator, angle: f64, cutoff: usize, max_sector: usize) -> Self {
        let max_sector = max_sector.min(2 * cutoff);
        let blocks = (0..=max_sector)
            .map(|total| exp_block(generator, angle, cutoff, total))
            .collect();
        ModeOperatorBlocks { cutoff, blocks }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn max_sector(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, total: usize) -> Option<&DMatrix<Complex64>> {
        self.blocks.get(total)
    }

    pub fn adjoint(&self) -> Self {
        ModeOperatorBlocks {
            cutoff: self.cutoff,
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// Operator product `self · rhs`, over the sectors both cover.
    pub fn compose(&self, rhs: &ModeOperatorBlocks) -> Result<Self> {
        if self.cutoff != rhs.cutoff {
            return Err(Error::Dimension(format!("cutoff {} vs {}", self.cutoff, rhs.cutoff)));
        }
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect();
        Ok(ModeOperatorBlocks { cutoff: self.cutoff, blocks })
    }

    /// Largest entry of `U†U − I` over all blocks.
    pub fn max_unitarity_error(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let g = b.adjoint() * b;
                let n = g.nrows();
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| (g[(i, j)] - if i == j { c(1.0) } else { c(0.0) }).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Spectral-norm distance `max_N ‖U_N − V_N‖₂`.
    pub fn operator_norm_distance(&self, other: &ModeOperatorBlocks) -> Result<f64> {
        if self.cutoff != other.cutoff || self.blocks.len() != other.blocks.len() {
            return Err(Error::Dimension("operators cover different sectors".into()));
        }
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                (a - b)
                    .singular_values()
                    .iter()
                    .copied()
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max))
    }

    pub fn apply(&self, state: &TwoModeState) -> Result<TwoModeState> {
        self.apply_with(state, false)
    }

    /// Applies `U†` without materialising it.
    pub fn apply_adjoint(&self, state: &TwoModeState) -> Result<TwoModeState> {
        self.apply_with(state, true)
    }

    fn apply_with(&self, state: &TwoModeState, adjoint: bool) -> Result<TwoModeState> {
        if state.cutoff() != self.cutoff {
            return Err(Error::Dimension(format!(
                "state cutoff {} vs operator cutoff {}",
                state.cutoff(),
                self.cutoff
            )));
        }
        let cutoff = self.cutoff;
        let side = cutoff + 1;
        let amps = state.amplitudes();
        let mut out = TwoModeState::zeros(cutoff);
        let out_amps = out.amplitudes_mut();
        let mut gathered = Vec::with_capacity(side);
        for total in 0..=2 * cutoff {
            let (lo, hi) = sector_range(cutoff, total);
            gathered.clear();
            gathered.extend((lo..=hi).map(|k| amps[k * side + (total - k)]));
            if gathered.iter().all(|a| a.re == 0.0 && a.im == 0.0) {
                continue;
            }
            let block = self.blocks.get(total).ok_or_else(|| {
                Error::Dimension(format!(
                    "state occupies sector {total} beyond operator coverage {}",
                    self.max_sector()
                ))
            })?;
            for (i, k) in (lo..=hi).enumerate() {
                let mut acc = c(0.0);
                if adjoint {
                    for (j, a) in gathered.iter().enumerate() {
                        acc += block[(j, i)].conj() * a;
                    }
                } else {
                    for (j, a) in gathered.iter().enumerate() {
                        acc += block[(i, j)] * a;
                    }
                }
                out_amps[k * side + (total - k)] = acc;
            }
        }
        Ok(out)
    }
}

/// `exp(−iθJ₃)`: multiplies `|k,l⟩` by `exp(−iθ(k − l)/2)`.
pub fn apply_phase_shift(state: &TwoModeState, angle: f64) -> TwoModeState {
    let mut out = state.clone();
    let side = state.cutoff() + 1;
    for (i, a) in out.amplitudes_mut().iter_mut().enumerate() {
        let (k, l) = ((i / side) as f64, (i % side) as f64);
        *a *= Complex64::from_polar(1.0, -angle * (k - l) / 2.0);
    }
    out
}

/// `exp(−i·angle·generator)|state⟩`, block by block.
pub fn apply_number_conserving_unitary(
    state: &TwoModeState,
    generator: Generator,
    angle: f64,
) -> Result<TwoModeState> {
    if !angle.is_finite() {
        return Err(Error::Domain("rotation angle must be finite".into()));
    }
    if generator == Generator::J3 {
        return Ok(apply_phase_shift(state, angle));
    }
    let Some(top) = state.max_total() else {
        return Ok(state.clone());
    };
    ModeOperatorBlocks::exp_generator_up_to(generator, angle, state.cutoff(), top).apply(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn dense_exp(g: &DMatrix<Complex64>, angle: f64) -> DMatrix<Complex64> {
        (g * Complex64::new(0.0, -angle)).exp()
    }

    #[test]
    fn vacuum_is_invariant() {
        let s = TwoModeState::vacuum(3);
        let out = apply_number_conserving_unitary(&s, Generator::J1, FRAC_PI_2).unwrap();
        assert!((out.amplitude(0, 0) - c(1.0)).norm() < 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn j3_eigenstate_picks_up_half_phase() {
        let phi = 0.83;
        let s = TwoModeState::fock(1, 0, 2).unwrap();
        let out = apply_number_conserving_unitary(&s, Generator::J3, phi).unwrap();
        let expected = Complex64::from_polar(1.0, -phi / 2.0);
        assert!((out.amplitude(1, 0) - expected).norm() < 1e-15);
    }

    #[test]
    fn twin_photon_through_balanced_splitter() {
        // |1,1> on the N=2 block, compared with a dense Padé exponential
        let s = TwoModeState::fock(1, 1, 2).unwrap();
        let out = apply_number_conserving_unitary(&s, Generator::J1, FRAC_PI_2).unwrap();
        let u = dense_exp(&generator_block(Generator::J1, 2, 2), FRAC_PI_2);
        for (j, k) in (0..=2).enumerate() {
            assert!((out.amplitude(k, 2 - k) - u[(j, 1)]).norm() < 1e-13);
        }
        // Hong-Ou-Mandel: no coincidence at the output
        assert!(out.amplitude(1, 1).norm() < 1e-15);
        let m = super::super::state::photon_moments(&out);
        assert!((m.mean_a - 1.0).abs() < 1e-14);
    }

    #[test]
    fn blocks_match_dense_exponential() {
        for generator in [Generator::J1, Generator::J2, Generator::J3] {
            for total in [0, 1, 4, 7, 11] {
                let angle = 0.731;
                let ops = ModeOperatorBlocks::exp_generator(generator, angle, 6);
                let expected = dense_exp(&generator_block(generator, 6, total), angle);
                let diff = (ops.block(total).unwrap() - &expected).norm();
                assert!(diff < 1e-12, "{generator:?} N={total} diff {diff}");
            }
        }
    }

    #[test]
    fn blocks_are_unitary() {
        let ops = ModeOperatorBlocks::exp_generator(Generator::J1, FRAC_PI_2, 40);
        assert!(ops.max_unitarity_error() < 1e-12);
    }

    #[test]
    fn j2_block_is_hermitian() {
        let g = generator_block(Generator::J2, 5, 5);
        assert!((g.adjoint() - &g).norm() < 1e-15);
    }

    #[test]
    fn adjoint_application_inverts() {
        let ops = ModeOperatorBlocks::exp_generator(Generator::J2, 0.4, 5);
        let s = TwoModeState::fock(2, 3, 5).unwrap();
        let back = ops.apply_adjoint(&ops.apply(&s).unwrap()).unwrap();
        assert!((back.fidelity(&s).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn coverage_is_enforced() {
        let ops = ModeOperatorBlocks::exp_generator_up_to(Generator::J1, 0.3, 4, 2);
        let s = TwoModeState::fock(2, 2, 4).unwrap();
        assert!(matches!(ops.apply(&s), Err(Error::Dimension(_))));
        let wrong = TwoModeState::vacuum(3);
        assert!(ops.apply(&wrong).is_err());
    }
}
