use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::blocks::ModeOperatorBlocks;
use super::state::{FockPopulations, TwoModeState};
use crate::error::{Error, Result};

/// Mixed two-mode state kept in factored form `ρ = Σᵢ |vᵢ⟩⟨vᵢ|`.
///
/// The branches `vᵢ` are unnormalised; their squared norms are the branch
/// weights. This is the natural output of a Kraus channel and stays
/// Hermitian and positive semidefinite by construction. The dense matrix is
/// only built on request, so large cutoffs remain cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeDensity {
    cutoff: usize,
    branches: Vec<TwoModeState>,
}

/// Hermiticity tolerance for [`TwoModeDensity::from_matrix`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated before a matrix is rejected.
pub const NEGATIVITY_TOL: f64 = 1e-10;

impl From<TwoModeState> for TwoModeDensity {
    fn from(state: TwoModeState) -> Self {
        TwoModeDensity {
            cutoff: state.cutoff(),
            branches: vec![state],
        }
    }
}

impl From<&TwoModeState> for TwoModeDensity {
    fn from(state: &TwoModeState) -> Self {
        state.clone().into()
    }
}

impl TwoModeDensity {
    pub fn from_branches(cutoff: usize, branches: Vec<TwoModeState>) -> Result<Self> {
        if let Some(b) = branches.iter().find(|b| b.cutoff() != cutoff) {
            return Err(Error::Dimension(format!("branch cutoff {} vs {cutoff}", b.cutoff())));
        }
        Ok(TwoModeDensity { cutoff, branches })
    }

    /// Factorises a dense density matrix through its eigendecomposition.
    pub fn from_matrix(cutoff: usize, matrix: &DMatrix<Complex64>) -> Result<Self> {
        let dim = (cutoff + 1) * (cutoff + 1);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Dimension(format!(
                "expected {dim}x{dim} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let asym = (matrix - matrix.adjoint()).camax();
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {asym:e})")));
        }
        let eig = SymmetricEigen::new(matrix.clone());
        let mut branches = Vec::new();
        for (m, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < -NEGATIVITY_TOL {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {lambda:e}")));
            }
            if lambda <= 0.0 {
                continue;
            }
            let w = lambda.sqrt();
            let amps = eig.eigenvectors.column(m).iter().map(|v| v * w).collect();
            branches.push(TwoModeState::from_amplitudes(cutoff, amps)?);
        }
        Ok(TwoModeDensity { cutoff, branches })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }

    pub fn branches(&self) -> &[TwoModeState] {
        &self.branches
    }

    pub fn trace(&self) -> f64 {
        self.branches.iter().map(TwoModeState::norm_sqr).sum()
    }

    /// `⟨i|ρ|j⟩` for basis indices `i`, `j`.
    pub fn element(&self, i: usize, j: usize) -> Complex64 {
        self.branches
            .iter()
            .map(|b| b.amplitudes()[i] * b.amplitudes()[j].conj())
            .sum()
    }

    /// Dense `(cutoff+1)² × (cutoff+1)²` matrix. Memory grows as cutoff⁴.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for b in &self.branches {
            let v = b.amplitudes();
            let nz: Vec<usize> = (0..dim).filter(|&i| v[i].norm_sqr() > 0.0).collect();
            for &i in &nz {
                for &j in &nz {
                    m[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        m
    }

    /// `U ρ U†` branch by branch.
    pub fn transformed(&self, unitary: &ModeOperatorBlocks) -> Result<Self> {
        let branches = self
            .branches
            .iter()
            .map(|b| unitary.apply(b))
            .collect::<Result<_>>()?;
        Ok(TwoModeDensity { cutoff: self.cutoff, branches })
    }

    /// `U† ρ U` branch by branch.
    pub fn transformed_adjoint(&self, unitary: &ModeOperatorBlocks) -> Result<Self> {
        let branches = self
            .branches
            .iter()
            .map(|b| unitary.apply_adjoint(b))
            .collect::<Result<_>>()?;
        Ok(TwoModeDensity { cutoff: self.cutoff, branches })
    }

    /// Applies a state map to every branch; the map must be linear.
    pub fn map_branches(&self, f: impl Fn(&TwoModeState) -> TwoModeState) -> Self {
        TwoModeDensity {
            cutoff: self.cutoff,
            branches: self.branches.iter().map(f).collect(),
        }
    }
}

impl FockPopulations for TwoModeDensity {
    fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn populations(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.dim()];
        for b in &self.branches {
            for (acc, a) in p.iter_mut().zip(b.amplitudes()) {
                *acc += a.norm_sqr();
            }
        }
        p
    }
}
