//! Scalar prefactors and quadratic exponents of the three parity signals.
//!
//! Each signal has the shape `prefactor · D̂ₙ{exp(q)}`. The structs below
//! hold the intermediate scalars so they can be inspected and reused, and
//! expand the bilinear pieces into the ten pair slots of a
//! [`QuadraticExponent`].

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::scheme::{Scenario, SchemeParams};
use crate::series::{LinearForm, QuadraticExponent, Var};

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Ideal (lossless) interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealCoefficients {
    pub omega0: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl IdealCoefficients {
    pub fn new(r: f64, phi: f64) -> Self {
        let t = r.tanh();
        let ch = r.cosh();
        let sech = 1.0 / ch;
        let omega0 = 1.0 - 2.0 * t * t * (2.0 * phi).cos() + t.powi(4);
        IdealCoefficients {
            omega0,
            a0: sech * sech / omega0.sqrt(),
            a1: (2.0 * phi).sin() * t / (2.0 * omega0 * ch * ch),
            a2: ((2.0 * phi).cos() - 1.0) * (t + t.powi(3)) / omega0,
            a3: phi.sin() * (2.0 * r).cosh() * sech.powi(4) / omega0,
            a4: -phi.cos() * sech.powi(4) / omega0,
        }
    }

    pub fn exponent(&self) -> QuadraticExponent {
        let mut q = QuadraticExponent::zero();
        q.add(Var::X, Var::X, re(self.a1));
        q.add(Var::T, Var::T, re(self.a1));
        q.add(Var::Y, Var::Y, re(-self.a1));
        q.add(Var::Tau, Var::Tau, re(-self.a1));
        q.add(Var::X, Var::Y, re(self.a2));
        q.add(Var::T, Var::Tau, re(self.a2));
        q.add(Var::Y, Var::Tau, re(self.a3));
        q.add(Var::X, Var::T, re(-self.a3));
        q.add(Var::X, Var::Tau, re(self.a4));
        q.add(Var::Y, Var::T, re(self.a4));
        q
    }
}

/// Loss of transmissivity `T₁` in front of the detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExternalCoefficients {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    /// `ε₁² + ε₂ε₃`.
    pub eps_sum: f64,
    pub omega1: f64,
    pub c1: f64,
    pub mu: LinearForm,
    pub kappa: LinearForm,
    tanh: f64,
    sech: f64,
}

impl ExternalCoefficients {
    pub fn new(r: f64, phi: f64, t1: f64) -> Result<Self> {
        let t = r.tanh();
        let se = 1.0 / r.cosh();
        let eps1 = -t1 * phi.cos();
        let eps2 = 1.0 - t1 * (1.0 + phi.sin());
        let eps3 = 1.0 - t1 * (1.0 - phi.sin());
        let s = eps1 * eps1 + eps2 * eps3;
        let omega1 = (s * t * t - 1.0).powi(2) - 4.0 * eps1 * eps1 * eps2 * eps3 * t.powi(4);
        if !(omega1 > 0.0) {
            return domain(format!("external-loss normalisation is not positive ({omega1:e})"));
        }
        Ok(ExternalCoefficients {
            eps1,
            eps2,
            eps3,
            eps_sum: s,
            omega1,
            c1: se * se / omega1.sqrt(),
            mu: LinearForm::real(eps1 * se * t, eps3 * se * t, se, 2.0 * eps1 * eps3 * t * t * se),
            kappa: LinearForm::real(eps2 * se, eps1 * se, 0.0, s * se * t),
            tanh: t,
            sech: se,
        })
    }

    pub fn exponent(&self) -> QuadraticExponent {
        let (t, se, w) = (self.tanh, self.sech, self.omega1);
        let (e1, e2, e3, s) = (self.eps1, self.eps2, self.eps3, self.eps_sum);
        let mut q = QuadraticExponent::zero();
        q.add_product(&self.mu, &self.kappa, re((1.0 - s * t * t) / w));
        q.add_product(&self.mu, &self.mu, re(e1 * e2 * t / w));
        q.add_product(&self.kappa, &self.kappa, re(e1 * e3 * t.powi(3) / w));
        q.add(Var::X, Var::Tau, re(e1 * se * se));
        q.add(Var::Y, Var::Tau, re(e3 * se * se));
        q.add(Var::Tau, Var::Tau, re(e1 * e3 * se * se * t));
        q.add(Var::T, Var::Tau, re(-t));
        q.add(Var::X, Var::Y, re(-t));
        q
    }
}

/// Loss of transmissivity `T₂` between the phase shifter and the second
/// beam splitter. `X₂` is complex, so the exponent is too.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalCoefficients {
    pub x1: f64,
    pub x2: Complex64,
    pub x3: f64,
    pub e: f64,
    pub omega2: f64,
    pub d1: f64,
    pub mu: LinearForm,
    pub kappa: LinearForm,
    tanh: f64,
    sech: f64,
}

impl InternalCoefficients {
    pub fn new(r: f64, phi: f64, t2: f64) -> Result<Self> {
        let t = r.tanh();
        let se = 1.0 / r.cosh();
        let st = t2.sqrt();
        let x1 = -(2.0 * st * phi.sin() + 1.0 + t2) / 2.0;
        let x3 = (2.0 * st * phi.sin() - 1.0 - t2) / 2.0;
        let denom = Complex64::new(2.0 * 2.0 * st * phi.cos(), 2.0 * (t2 - 1.0));
        if denom.norm() == 0.0 {
            return domain(format!("internal-loss coefficients are singular at phi = {phi}, T2 = {t2}"));
        }
        let x2 = re((t2 + 1.0).powi(2) - 4.0 * t2 * phi.sin().powi(2)) / denom;
        let x2c = x2.conj();
        let e = x2.norm_sqr() + x1 * x3 + x3 + x1 + 1.0;
        let omega2 = (1.0 - e * t * t).powi(2) - 4.0 * x2.norm_sqr() * (x1 + 1.0) * (x3 + 1.0) * t.powi(4);
        if !(omega2 > 0.0) {
            return domain(format!("internal-loss normalisation is not positive ({omega2:e})"));
        }
        let mu = LinearForm::new(
            re((x1 + 1.0) * se * t),
            -x2c * se * t,
            -x2c * (2.0 * (x1 + 1.0) * t * t * se),
            re(se),
        );
        let kappa = LinearForm::new(-x2 * se, re((x3 + 1.0) * se), re(e * se * t), re(0.0));
        Ok(InternalCoefficients {
            x1,
            x2,
            x3,
            e,
            omega2,
            d1: se * se / omega2.sqrt(),
            mu,
            kappa,
            tanh: t,
            sech: se,
        })
    }

    pub fn exponent(&self) -> QuadraticExponent {
        let (t, se, w) = (self.tanh, self.sech, self.omega2);
        let x2c = self.x2.conj();
        let cross = -x2c * (self.x1 + 1.0);
        let mut q = QuadraticExponent::zero();
        q.add_product(&self.mu, &self.kappa, re((1.0 - self.e * t * t) / w));
        q.add_product(&self.mu, &self.mu, -self.x2 * (self.x3 + 1.0) * t / w);
        q.add_product(&self.kappa, &self.kappa, cross * t.powi(3) / w);
        q.add(Var::X, Var::T, re((self.x1 + 1.0) * se * se));
        q.add(Var::Y, Var::T, -x2c * se * se);
        q.add(Var::T, Var::T, cross * se * se * t);
        q.add(Var::X, Var::Y, re(-t));
        q.add(Var::T, Var::Tau, re(-t));
        q
    }
}

/// Coefficients for whichever scenario a [`SchemeParams`] selects.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentCoefficients {
    Ideal(IdealCoefficients),
    External(ExternalCoefficients),
    Internal(InternalCoefficients),
}

impl ExponentCoefficients {
    pub fn for_params(p: &SchemeParams) -> Result<Self> {
        p.validate()?;
        Ok(match p.scenario {
            Scenario::Ideal => Self::Ideal(IdealCoefficients::new(p.r, p.phi)),
            Scenario::External { t1 } => Self::External(ExternalCoefficients::new(p.r, p.phi, t1)?),
            Scenario::Internal { t2 } => Self::Internal(InternalCoefficients::new(p.r, p.phi, t2)?),
        })
    }

    /// The factor in front of `D̂ₙ`.
    pub fn prefactor(&self) -> f64 {
        match self {
            Self::Ideal(c) => c.a0,
            Self::External(c) => c.c1,
            Self::Internal(c) => c.d1,
        }
    }

    pub fn exponent(&self) -> QuadraticExponent {
        match self {
            Self::Ideal(c) => c.exponent(),
            Self::External(c) => c.exponent(),
            Self::Internal(c) => c.exponent(),
        }
    }
}
