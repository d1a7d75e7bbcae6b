//! Quantum Fisher information of the squeezed twin-Fock probe, with and
//! without photon loss in arm `b`.
//!
//! The lossy value is a variational upper bound `C_Q(γ)` built from the
//! photon-number moments of the probe after the first beam splitter;
//! `γ` interpolates between loss before (`γ = 0`) and after (`γ = −1`) the
//! phase shift and is minimised in closed form.

use crate::error::{domain, Result};

/// `⟨n̂_a⟩, ⟨n̂_b⟩, ⟨n̂_a²⟩, ⟨n̂_b²⟩, ⟨n̂_a n̂_b⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentSet {
    pub mean_a: f64,
    pub mean_b: f64,
    pub mean_a2: f64,
    pub mean_b2: f64,
    pub cross: f64,
}

impl MomentSet {
    pub fn variance_a(&self) -> f64 {
        self.mean_a2 - self.mean_a * self.mean_a
    }

    pub fn variance_b(&self) -> f64 {
        self.mean_b2 - self.mean_b * self.mean_b
    }

    /// `Cov[n̂_a, n̂_b]`.
    pub fn covariance(&self) -> f64 {
        self.cross - self.mean_a * self.mean_b
    }

    /// Divides every moment by `norm` (for unnormalised states).
    pub fn normalized(&self, norm: f64) -> Self {
        MomentSet {
            mean_a: self.mean_a / norm,
            mean_b: self.mean_b / norm,
            mean_a2: self.mean_a2 / norm,
            mean_b2: self.mean_b2 / norm,
            cross: self.cross / norm,
        }
    }

    /// Largest relative deviation between two moment sets.
    pub fn max_relative_error(&self, reference: &MomentSet) -> f64 {
        let pairs = [
            (self.mean_a, reference.mean_a),
            (self.mean_b, reference.mean_b),
            (self.mean_a2, reference.mean_a2),
            (self.mean_b2, reference.mean_b2),
            (self.cross, reference.cross),
        ];
        pairs
            .iter()
            .map(|&(a, b)| if b == 0.0 { a.abs() } else { ((a - b) / b).abs() })
            .fold(0.0, f64::max)
    }
}

/// Probe and loss parameters for the QFI bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiParams {
    pub n: u32,
    /// Squeezing; zero is allowed and gives the bare twin-Fock state.
    pub r: f64,
    /// Transmissivity of arm `b`.
    pub eta: f64,
}

impl QfiParams {
    pub fn new(n: u32, r: f64, eta: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return domain(format!("squeezing parameter must be finite and non-negative, got {r}"));
        }
        if !(eta > 0.0 && eta <= 1.0) {
            return domain(format!("transmissivity must lie in (0, 1], got {eta}"));
        }
        Ok(QfiParams { n, r, eta })
    }
}

/// Lossless QFI `[2 + 3 sinh²2r] n(n+1) + sinh²2r`.
pub fn qfi_ideal(n: u32, r: f64) -> f64 {
    let s = (2.0 * r).sinh().powi(2);
    let n = n as f64;
    (2.0 + 3.0 * s) * n * (n + 1.0) + s
}

/// Quantum Cramér-Rao bound `1/√F`.
pub fn qcrb(fisher: f64) -> Result<f64> {
    if !(fisher > 0.0) {
        return domain(format!("Fisher information must be positive, got {fisher}"));
    }
    Ok(1.0 / fisher.sqrt())
}

/// Photon-number moments of `exp(−iπJ₁/2) S(r)|n,n⟩`.
pub fn moments_closed_form(n: u32, r: f64) -> MomentSet {
    let nf = n as f64;
    let c2 = r.cosh().powi(2);
    let s2 = r.sinh().powi(2);
    let s22 = (2.0 * r).sinh().powi(2);
    let mean = nf * c2 + (nf + 1.0) * s2;
    let second = (3.0 * nf * nf + nf) * c2 * c2 / 2.0
        + (3.0 * nf * nf + 5.0 * nf + 2.0) * s2 * s2 / 2.0
        + (3.0 * nf * nf + 3.0 * nf + 1.0) * s22 / 2.0;
    let cross = (nf * nf - nf) * c2 * c2 / 2.0
        + (nf * nf + 3.0 * nf + 2.0) * s2 * s2 / 2.0
        + (nf * nf + nf) * s22 / 2.0;
    MomentSet { mean_a: mean, mean_b: mean, mean_a2: second, mean_b2: second, cross }
}

fn loss_factor(eta: f64, gamma: f64) -> f64 {
    eta + gamma * eta - gamma
}

/// Variational bound `C_Q(γ)`.
pub fn cq_bound(p: &QfiParams, gamma: f64) -> f64 {
    let m = moments_closed_form(p.n, p.r);
    let k = loss_factor(p.eta, gamma);
    m.variance_a() + k * k * m.variance_b() - 2.0 * k * m.covariance()
        + (1.0 + gamma).powi(2) * p.eta * (1.0 - p.eta) * m.mean_b
}

/// The `γ` minimising [`cq_bound`].
pub fn gamma_opt(p: &QfiParams) -> Result<f64> {
    let m = moments_closed_form(p.n, p.r);
    let v = m.variance_b();
    let denom = (1.0 - p.eta) * v + p.eta * m.mean_b;
    if !(denom > 0.0) {
        return domain(format!("optimal gamma is undefined: denominator {denom:e} (no photons in arm b)"));
    }
    Ok((p.eta * v - m.covariance() - p.eta * m.mean_b) / denom)
}

/// Lossy QFI bound `C_Q(γ_opt)`.
pub fn qfi_lossy(p: &QfiParams) -> Result<f64> {
    Ok(cq_bound(p, gamma_opt(p)?))
}
