//! Self-checks comparing the closed forms against the Fock-space oracle and
//! against their own analytic limits.

use rayon::prelude::*;
use serde::Serialize;
use twinfock::closed_form::{
    mean_total_photons, parity, r_for_energy, sensitivity, tmsv_sensitivity, DEFAULT_DERIVATIVE_STEP,
};
use twinfock::fock::{
    interferometer_identity_error, interferometer_input, oracle_parities, photon_moments, pure_state_qfi,
    truncated_lossy_qfi, Interferometer,
};
use twinfock::numerics::linspace;
use twinfock::qfi::{cq_bound, gamma_opt, moments_closed_form, qcrb, qfi_ideal, qfi_lossy};
use twinfock::{QfiParams, Scenario, SchemeParams};

use crate::error::ScanError;
use crate::sweep::with_workers;

/// How much of the grid to cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GridLevel {
    /// `n <= 1`, analytic checks only.
    Quick,
    /// `n <= 3`, plus the exact mixed-state QFI comparison.
    Full,
}

impl GridLevel {
    pub fn excitations(self) -> Vec<u32> {
        match self {
            GridLevel::Quick => vec![0, 1],
            GridLevel::Full => vec![0, 1, 2, 3],
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl CheckResult {
    fn from_errors(name: &str, tolerance: f64, errors: Result<Vec<f64>, twinfock::Error>) -> Self {
        match errors {
            Ok(errors) => {
                let max_error = errors.iter().copied().fold(0.0, f64::max);
                let finite = errors.iter().all(|e| e.is_finite());
                CheckResult {
                    name: name.into(),
                    max_error,
                    tolerance,
                    passed: finite && max_error <= tolerance,
                    failure: None,
                }
            }
            Err(e) => CheckResult {
                name: name.into(),
                max_error: f64::INFINITY,
                tolerance,
                passed: false,
                failure: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: GridLevel,
    pub version: &'static str,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SQUEEZINGS: [f64; 3] = [0.3, 0.7, 1.0];
pub const PHASES: [f64; 4] = [0.01, 0.05, 0.2, 0.5];
pub const LOSSES: [f64; 3] = [1.0, 0.95, 0.8];
pub const ORACLE_TAIL_TOL: f64 = 1e-12;

/// All interferometer configurations of the verification grid.
pub fn scenario_grid() -> Vec<Scenario> {
    let mut out = vec![Scenario::Ideal];
    out.extend(LOSSES.iter().map(|&t1| Scenario::External { t1 }));
    out.extend(LOSSES.iter().map(|&t2| Scenario::Internal { t2 }));
    out
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `|closed form − oracle|` for the parity over the full grid at each `n`.
pub fn parity_equivalence(excitations: &[u32]) -> CheckResult {
    let jobs: Vec<(u32, f64)> =
        excitations.iter().flat_map(|&n| SQUEEZINGS.iter().map(move |&r| (n, r))).collect();
    let points: Vec<(f64, Scenario)> =
        PHASES.iter().flat_map(|&phi| scenario_grid().into_iter().map(move |s| (phi, s))).collect();
    let errors = jobs
        .par_iter()
        .map(|&(n, r)| {
            let brute = oracle_parities(n, r, &points, ORACLE_TAIL_TOL)?;
            points
                .iter()
                .zip(brute)
                .map(|(&(phi, s), b)| Ok((parity(&SchemeParams::new(n, r, phi, s)?)? - b).abs()))
                .collect::<Result<Vec<f64>, twinfock::Error>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.concat());
    CheckResult::from_errors("parity_equivalence", 1e-8, errors)
}

/// Unit transmissivity reproduces the lossless parity.
pub fn lossless_reductions(excitations: &[u32]) -> CheckResult {
    let mut errors = Vec::new();
    let result = (|| {
        for &n in excitations {
            for r in SQUEEZINGS {
                for phi in PHASES {
                    let ideal = parity(&SchemeParams::ideal(n, r, phi)?)?;
                    for s in [Scenario::External { t1: 1.0 }, Scenario::Internal { t2: 1.0 }] {
                        errors.push((parity(&SchemeParams::new(n, r, phi, s)?)? - ideal).abs());
                    }
                }
            }
        }
        Ok(())
    })();
    CheckResult::from_errors("lossless_reductions", 1e-12, result.map(|()| errors))
}

/// Numerical sensitivity of the squeezed vacuum against its closed form on
/// 100 phases in `[0.01, 1]`.
pub fn tmsv_sensitivity_check() -> CheckResult {
    let errors = SQUEEZINGS
        .iter()
        .flat_map(|&r| linspace(0.01, 1.0, 100).into_iter().map(move |phi| (r, phi)))
        .map(|(r, phi)| {
            let numeric = sensitivity(&SchemeParams::ideal(0, r, phi)?, DEFAULT_DERIVATIVE_STEP)?;
            Ok(relative(numeric, tmsv_sensitivity(r, phi)?))
        })
        .collect();
    CheckResult::from_errors("tmsv_sensitivity", 1e-8, errors)
}

/// Squeezed-vacuum sensitivity at vanishing phase equals `1/sinh 2r`.
pub fn tmsv_zero_phase_limit() -> CheckResult {
    let errors = SQUEEZINGS
        .iter()
        .map(|&r| Ok(relative(tmsv_sensitivity(r, 1e-9)?, 1.0 / (2.0 * r).sinh())))
        .collect();
    CheckResult::from_errors("tmsv_zero_phase_limit", 1e-8, errors)
}

/// `1/√F` of the squeezed vacuum equals `1/sinh 2r = 1/√(N̄² + 2N̄)`.
pub fn qcrb_tmsv() -> CheckResult {
    let errors = SQUEEZINGS
        .iter()
        .map(|&r| {
            let bound = qcrb(qfi_ideal(0, r))?;
            let nbar = mean_total_photons(0, r);
            Ok(relative(bound, 1.0 / (2.0 * r).sinh()).max(relative(bound, 1.0 / (nbar * nbar + 2.0 * nbar).sqrt())))
        })
        .collect();
    CheckResult::from_errors("qcrb_tmsv", 1e-12, errors)
}

/// Closed-form QFI against `4 Var(J₃)` on the oracle state.
pub fn qfi_identity(excitations: &[u32]) -> CheckResult {
    let errors = grid(excitations)
        .par_iter()
        .map(|&(n, r)| Ok(relative(pure_state_qfi(&interferometer_input(n, r, 1e-20)?)?, qfi_ideal(n, r))))
        .collect();
    CheckResult::from_errors("qfi_identity", 1e-8, errors)
}

/// Closed-form photon moments after the first beam splitter against the oracle.
pub fn moments_identity(excitations: &[u32]) -> CheckResult {
    let errors = grid(excitations)
        .par_iter()
        .map(|&(n, r)| {
            let input = interferometer_input(n, r, 1e-20)?;
            let probe = Interferometer::new(input.cutoff()).probe(&input)?;
            Ok(photon_moments(&probe).max_relative_error(&moments_closed_form(n, r)))
        })
        .collect();
    CheckResult::from_errors("moments_identity", 1e-10, errors)
}

/// The `(n, r, η)` combinations of the bound checks.
pub fn bound_combinations(excitations: &[u32]) -> Vec<QfiParams> {
    let etas = [0.6, 0.8, 0.95];
    let combos: [(f64, f64); 3] = [(0.3, etas[0]), (0.7, etas[1]), (1.0, etas[2])];
    let mut out = Vec::new();
    for &n in excitations {
        for (r, eta) in combos {
            out.push(QfiParams { n, r, eta });
        }
    }
    out
}

/// The optimal `γ` is no worse than any point of a 3001-point grid on `[−2, 1]`.
pub fn gamma_grid(excitations: &[u32]) -> CheckResult {
    let grid = linspace(-2.0, 1.0, 3001);
    let errors = bound_combinations(excitations)
        .iter()
        .map(|p| {
            let best = cq_bound(p, gamma_opt(p)?);
            let grid_min = grid.iter().map(|&g| cq_bound(p, g)).fold(f64::INFINITY, f64::min);
            Ok((best - grid_min).max(0.0))
        })
        .collect();
    CheckResult::from_errors("gamma_grid", 1e-12, errors)
}

/// The lossy bound collapses to the lossless QFI at `η = 1`.
pub fn qfi_lossless_limit(excitations: &[u32]) -> CheckResult {
    let errors = grid(excitations)
        .iter()
        .map(|&(n, r)| Ok(relative(qfi_lossy(&QfiParams::new(n, r, 1.0)?)?, qfi_ideal(n, r))))
        .collect();
    CheckResult::from_errors("qfi_lossless_limit", 1e-12, errors)
}

/// `exp(iπJ₁/2) exp(−iφJ₃) exp(−iπJ₁/2) = exp(−iφJ₂)` on the cutoff-8 space.
pub fn operator_identity() -> CheckResult {
    let errors = [0.1, 0.7].iter().map(|&phi| interferometer_identity_error(8, phi)).collect();
    CheckResult::from_errors("operator_identity", 1e-10, errors)
}

/// `r_for_energy` inverts the mean photon number, and the oracle agrees.
pub fn energy_inversion(excitations: &[u32]) -> CheckResult {
    let errors = excitations
        .iter()
        .flat_map(|&n| [8.0, 10.0, 20.0].into_iter().map(move |nbar| (n, nbar)))
        .map(|(n, nbar)| {
            let r = r_for_energy(nbar, n)?;
            let m = photon_moments(&interferometer_input(n, r, 1e-20)?);
            Ok(relative(mean_total_photons(n, r), nbar).max(relative(m.mean_a + m.mean_b, nbar)))
        })
        .collect();
    CheckResult::from_errors("energy_inversion", 1e-10, errors)
}

/// The variational bound dominates the exact QFI of the lossy probe, on
/// per-mode cutoff 15.
pub fn mixed_qfi_bound() -> CheckResult {
    let cases: Vec<(u32, f64, f64)> = [0, 1]
        .into_iter()
        .flat_map(|n| [0.3, 0.6].into_iter().flat_map(move |r| [0.6, 0.8].map(|eta| (n, r, eta))))
        .collect();
    let errors = cases
        .par_iter()
        .map(|&(n, r, eta)| {
            let exact = truncated_lossy_qfi(n, r, eta, 15)?;
            let bound = qfi_lossy(&QfiParams::new(n, r, eta)?)?;
            Ok((exact - bound).max(0.0))
        })
        .collect();
    CheckResult::from_errors("mixed_qfi_bound", 1e-6, errors)
}

fn grid(excitations: &[u32]) -> Vec<(u32, f64)> {
    excitations.iter().flat_map(|&n| SQUEEZINGS.iter().map(move |&r| (n, r))).collect()
}

/// Runs every check of `level` on `workers` threads.
pub fn run_verify(level: GridLevel, workers: usize) -> Result<VerifyReport, ScanError> {
    let ns = level.excitations();
    let checks = with_workers(workers, || {
        let mut jobs: Vec<Box<dyn Fn() -> CheckResult + Send + Sync>> = vec![
            Box::new(|| parity_equivalence(&ns)),
            Box::new(|| lossless_reductions(&ns)),
            Box::new(tmsv_sensitivity_check),
            Box::new(tmsv_zero_phase_limit),
            Box::new(qcrb_tmsv),
            Box::new(|| qfi_identity(&ns)),
            Box::new(|| moments_identity(&ns)),
            Box::new(|| gamma_grid(&ns)),
            Box::new(|| qfi_lossless_limit(&ns)),
            Box::new(operator_identity),
            Box::new(|| energy_inversion(&ns)),
        ];
        if level == GridLevel::Full {
            jobs.push(Box::new(mixed_qfi_bound));
        }
        jobs.par_iter().map(|job| job()).collect::<Vec<_>>()
    })?;
    Ok(VerifyReport { level, version: twinfock::VERSION, checks })
}
