//! Truncated power series in the four auxiliary variables `x, y, t, τ`.
//!
//! The parity signals are written as `A · D̂ₙ{exp(q)}` where `q` is a
//! quadratic form in the auxiliary variables and
//!
//! ```text
//! D̂ₙ{f} = ∂⁴ⁿ f / ((n!)² ∂xⁿ ∂yⁿ ∂tⁿ ∂τⁿ) at x = y = t = τ = 0,
//! ```
//!
//! which is `(n!)²` times the coefficient of `xⁿyⁿtⁿτⁿ`. A dense
//! `(cap+1)⁴` coefficient table is plenty for the excitation orders of
//! interest.
//!
//! ```
//! use twinfock::series::{extract_dn, series_exp, series_from_quadratic, QuadraticExponent, Var};
//! use num_complex::Complex64;
//!
//! let mut q = QuadraticExponent::zero();
//! q.add(Var::X, Var::Y, Complex64::new(2.0, 0.0));
//! q.add(Var::T, Var::Tau, Complex64::new(3.0, 0.0));
//! let d2 = extract_dn(&series_exp(&series_from_quadratic(&q, 2)).unwrap(), 2).unwrap();
//! assert!((d2 - Complex64::new(36.0, 0.0)).norm() < 1e-12);
//! ```

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One of the four auxiliary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    T,
    Tau,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::T, Var::Tau];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
            Var::Tau => "τ",
        }
    }
}

/// `c_x x + c_y y + c_t t + c_τ τ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinearForm {
    pub coeffs: [Complex64; 4],
}

impl LinearForm {
    pub fn new(x: Complex64, y: Complex64, t: Complex64, tau: Complex64) -> Self {
        LinearForm { coeffs: [x, y, t, tau] }
    }

    pub fn real(x: f64, y: f64, t: f64, tau: f64) -> Self {
        Self::new(x.into(), y.into(), t.into(), tau.into())
    }

    pub fn coeff(&self, v: Var) -> Complex64 {
        self.coeffs[v.index()]
    }
}

/// A homogeneous quadratic form over the ten unordered variable pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticExponent {
    pairs: [Complex64; 10],
}

impl Default for QuadraticExponent {
    fn default() -> Self {
        Self::zero()
    }
}

fn pair_slot(a: Var, b: Var) -> usize {
    let (i, j) = if a.index() <= b.index() { (a.index(), b.index()) } else { (b.index(), a.index()) };
    // row-major upper triangle of a 4x4 table
    i * 4 - i * (i + 1) / 2 + j
}

fn slot_pair(slot: usize) -> (Var, Var) {
    let mut s = 0;
    for i in 0..4 {
        for j in i..4 {
            if s == slot {
                return (Var::ALL[i], Var::ALL[j]);
            }
            s += 1;
        }
    }
    unreachable!("pair slot {slot} out of range")
}

impl QuadraticExponent {
    pub fn zero() -> Self {
        QuadraticExponent { pairs: [ZERO; 10] }
    }

    /// Coefficient of the monomial `a·b` (for `a == b` this is the square).
    pub fn get(&self, a: Var, b: Var) -> Complex64 {
        self.pairs[pair_slot(a, b)]
    }

    pub fn set(&mut self, a: Var, b: Var, value: Complex64) {
        self.pairs[pair_slot(a, b)] = value;
    }

    pub fn add(&mut self, a: Var, b: Var, value: Complex64) {
        self.pairs[pair_slot(a, b)] += value;
    }

    /// Adds `scale · f · g`, expanding the product into pair slots.
    pub fn add_product(&mut self, f: &LinearForm, g: &LinearForm, scale: Complex64) {
        for a in Var::ALL {
            for b in Var::ALL {
                let c = f.coeff(a) * g.coeff(b) * scale;
                if c != ZERO {
                    self.add(a, b, c);
                }
            }
        }
    }

    /// Nonzero `(a, b, coefficient)` entries with `a <= b`.
    pub fn terms(&self) -> impl Iterator<Item = (Var, Var, Complex64)> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(s, c)| {
                let (a, b) = slot_pair(s);
                (a, b, *c)
            })
    }

    pub fn conj(&self) -> Self {
        QuadraticExponent { pairs: self.pairs.map(|c| c.conj()) }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.pairs.iter().all(|c| c.im.abs() <= tol)
    }
}

/// Dense truncated series `Σ c_{ijkm} xⁱ yʲ tᵏ τᵐ`, each exponent at most `cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiSeries {
    cap: usize,
    coeffs: Vec<Complex64>,
}

impl MultiSeries {
    pub fn zeros(cap: usize) -> Self {
        MultiSeries { cap, coeffs: vec![ZERO; (cap + 1).pow(4)] }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zeros(cap);
        s.coeffs[0] = ONE;
        s
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    fn offset(&self, e: [usize; 4]) -> Option<usize> {
        if e.iter().any(|&d| d > self.cap) {
            return None;
        }
        let side = self.cap + 1;
        Some(((e[0] * side + e[1]) * side + e[2]) * side + e[3])
    }

    fn exponents(&self, offset: usize) -> [usize; 4] {
        let side = self.cap + 1;
        [offset / side.pow(3), (offset / side.pow(2)) % side, (offset / side) % side, offset % side]
    }

    /// Coefficient of `xⁱ yʲ tᵏ τᵐ`; zero beyond the cap.
    pub fn coeff(&self, e: [usize; 4]) -> Complex64 {
        self.offset(e).map_or(ZERO, |o| self.coeffs[o])
    }

    /// Sets a coefficient. Exponents beyond the cap are silently dropped.
    pub fn set_coeff(&mut self, e: [usize; 4], value: Complex64) {
        if let Some(o) = self.offset(e) {
            self.coeffs[o] = value;
        }
    }

    pub fn add_to_coeff(&mut self, e: [usize; 4], value: Complex64) {
        if let Some(o) = self.offset(e) {
            self.coeffs[o] += value;
        }
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        MultiSeries { cap: self.cap, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn conj(&self) -> Self {
        MultiSeries { cap: self.cap, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Nonzero `(exponents, coefficient)` pairs in storage order.
    pub fn nonzero_terms(&self) -> Vec<([usize; 4], Complex64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(o, c)| (self.exponents(o), *c))
            .collect()
    }

    fn check_cap(&self, other: &MultiSeries) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::Dimension(format!("series caps differ: {} vs {}", self.cap, other.cap)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_cap(other)?;
        Ok(MultiSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Truncated product: terms with any exponent above the cap are dropped.
    pub fn try_mul(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_cap(other)?;
        let sparse = other.nonzero_terms();
        let mut out = MultiSeries::zeros(self.cap);
        for (o, &c) in self.coeffs.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            let e = self.exponents(o);
            for (f, d) in &sparse {
                let sum = [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]];
                out.add_to_coeff(sum, c * d);
            }
        }
        Ok(out)
    }
}

impl Add for &MultiSeries {
    type Output = MultiSeries;

    /// Panics if the caps differ; see [`MultiSeries::try_add`].
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        self.try_add(rhs).expect("series caps must match")
    }
}

impl Mul for &MultiSeries {
    type Output = MultiSeries;

    /// Panics if the caps differ; see [`MultiSeries::try_mul`].
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        self.try_mul(rhs).expect("series caps must match")
    }
}

/// Embeds a quadratic form; monomials beyond the cap are dropped.
pub fn series_from_quadratic(q: &QuadraticExponent, degree_cap: usize) -> MultiSeries {
    let mut s = MultiSeries::zeros(degree_cap);
    for (a, b, c) in q.terms() {
        let mut e = [0; 4];
        e[a.index()] += 1;
        e[b.index()] += 1;
        s.add_to_coeff(e, c);
    }
    s
}

/// `exp(s)` truncated at the cap, as `Σ_{p ≤ 2·cap} sᵖ/p!`.
///
/// The order bound is exact when `s` has no constant or linear part, which
/// is the case for every quadratic exponent.
pub fn series_exp(s: &MultiSeries) -> Result<MultiSeries> {
    let c0 = s.constant_term();
    if c0 != ZERO {
        return Err(Error::Precondition(format!("series_exp needs a zero constant term, got {c0}")));
    }
    let cap = s.degree_cap();
    let mut sum = MultiSeries::one(cap);
    let mut term = MultiSeries::one(cap);
    for p in 1..=2 * cap {
        term = term.try_mul(s)?.scaled(Complex64::new(1.0 / p as f64, 0.0));
        if term.is_zero() {
            break;
        }
        sum = sum.try_add(&term)?;
    }
    Ok(sum)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `D̂ₙ{s} = (n!)² · [xⁿyⁿtⁿτⁿ] s`.
pub fn extract_dn(s: &MultiSeries, n: usize) -> Result<Complex64> {
    if s.degree_cap() < n {
        return Err(Error::Dimension(format!("series cap {} is below n = {n}", s.degree_cap())));
    }
    Ok(s.coeff([n; 4]) * factorial(n).powi(2))
}

/// `D̂ₙ{exp(q)}` in one call, using the smallest sufficient cap.
pub fn dn_of_exp(q: &QuadraticExponent, n: usize) -> Result<Complex64> {
    extract_dn(&series_exp(&series_from_quadratic(q, n))?, n)
}
