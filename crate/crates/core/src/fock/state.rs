use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qfi::MomentSet;

/// One of the two interferometer modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// Pure two-mode state on the square truncation `0 <= k, l <= cutoff`,
/// where `k` counts photons in mode `a` and `l` in mode `b`.
///
/// Amplitudes are stored row-major in `k`: index `k * (cutoff + 1) + l`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff: usize,
    amps: Vec<Complex64>,
}

impl TwoModeState {
    pub fn zeros(cutoff: usize) -> Self {
        TwoModeState {
            cutoff,
            amps: vec![Complex64::new(0.0, 0.0); (cutoff + 1) * (cutoff + 1)],
        }
    }

    pub fn vacuum(cutoff: usize) -> Self {
        let mut s = Self::zeros(cutoff);
        s.amps[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// Number state `|k, l⟩`.
    pub fn fock(k: usize, l: usize, cutoff: usize) -> Result<Self> {
        if k > cutoff || l > cutoff {
            return Err(Error::Dimension(format!("|{k},{l}⟩ does not fit in cutoff {cutoff}")));
        }
        let mut s = Self::zeros(cutoff);
        let i = s.index(k, l);
        s.amps[i] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(cutoff: usize, amps: Vec<Complex64>) -> Result<Self> {
        let want = (cutoff + 1) * (cutoff + 1);
        if amps.len() != want {
            return Err(Error::Dimension(format!(
                "cutoff {cutoff} needs {want} amplitudes, got {}",
                amps.len()
            )));
        }
        Ok(TwoModeState { cutoff, amps })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Hilbert-space dimension `(cutoff + 1)²`.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn index(&self, k: usize, l: usize) -> usize {
        k * (self.cutoff + 1) + l
    }

    /// Inverse of [`index`](Self::index).
    #[inline]
    pub fn basis_pair(&self, i: usize) -> (usize, usize) {
        (i / (self.cutoff + 1), i % (self.cutoff + 1))
    }

    pub fn amplitude(&self, k: usize, l: usize) -> Complex64 {
        if k > self.cutoff || l > self.cutoff {
            return Complex64::new(0.0, 0.0);
        }
        self.amps[self.index(k, l)]
    }

    pub fn set_amplitude(&mut self, k: usize, l: usize, value: Complex64) {
        let i = self.index(k, l);
        self.amps[i] = value;
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Copy rescaled to unit norm. The zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0 / norm, 0.0))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        TwoModeState {
            cutoff: self.cutoff,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Zero-padded copy on a larger per-mode cutoff.
    pub fn embed(&self, cutoff: usize) -> Result<Self> {
        if cutoff < self.cutoff {
            return Err(Error::Dimension(format!(
                "cannot embed cutoff {} into smaller cutoff {cutoff}",
                self.cutoff
            )));
        }
        let mut out = Self::zeros(cutoff);
        for k in 0..=self.cutoff {
            for l in 0..=self.cutoff {
                let v = self.amps[self.index(k, l)];
                out.set_amplitude(k, l, v);
            }
        }
        Ok(out)
    }

    /// Largest total photon number `k + l` carrying a nonzero amplitude,
    /// or `None` for the zero vector.
    pub fn max_total(&self) -> Option<usize> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, _)| {
                let (k, l) = self.basis_pair(i);
                k + l
            })
            .max()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &TwoModeState) -> Result<Complex64> {
        self.check_same_cutoff(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨a|b⟩|² / (‖a‖² ‖b‖²)`, insensitive to global phase and normalisation.
    pub fn fidelity(&self, other: &TwoModeState) -> Result<f64> {
        let overlap = self.inner(other)?.norm_sqr();
        Ok(overlap / (self.norm_sqr() * other.norm_sqr()))
    }

    pub(crate) fn check_same_cutoff(&self, other: &TwoModeState) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::Dimension(format!(
                "cutoff {} vs {}",
                self.cutoff, other.cutoff
            )));
        }
        Ok(())
    }

    /// Nonzero entries as `((k, l), re, im)`, used by the JSON state dump.
    pub fn nonzero_entries(&self) -> Vec<((usize, usize), f64, f64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, a)| (self.basis_pair(i), a.re, a.im))
            .collect()
    }
}

/// Anything with a diagonal in the two-mode Fock basis: photon-number
/// observables only need the populations.
pub trait FockPopulations {
    fn cutoff(&self) -> usize;

    /// `⟨k,l|ρ|k,l⟩` for every basis pair, indexed like [`TwoModeState::index`].
    fn populations(&self) -> Vec<f64>;
}

impl FockPopulations for TwoModeState {
    fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Expectation value of the photon-number parity `(-1)^{n̂}` of one mode.
pub fn parity_expectation<S: FockPopulations + ?Sized>(state: &S, mode: Mode) -> f64 {
    let side = state.cutoff() + 1;
    state
        .populations()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let count = match mode {
                Mode::A => i / side,
                Mode::B => i % side,
            };
            if count % 2 == 0 {
                *p
            } else {
                -*p
            }
        })
        .sum()
}

/// `⟨n̂_a⟩, ⟨n̂_b⟩, ⟨n̂_a²⟩, ⟨n̂_b²⟩, ⟨n̂_a n̂_b⟩` by direct summation over populations.
pub fn photon_moments<S: FockPopulations + ?Sized>(state: &S) -> MomentSet {
    let side = state.cutoff() + 1;
    let mut m = MomentSet::default();
    for (i, p) in state.populations().into_iter().enumerate() {
        let k = (i / side) as f64;
        let l = (i % side) as f64;
        m.mean_a += p * k;
        m.mean_b += p * l;
        m.mean_a2 += p * k * k;
        m.mean_b2 += p * l * l;
        m.cross += p * k * l;
    }
    m
}
