//! The perturbing angular profile V(θ) and its Fourier-type moments.
//!
//! A profile is a finite sum of terms drawn from four families: constants,
//! cos θ, sin(γθ) with γ > 0, and monomials θ^k. The physics enters through
//! the angular moments
//!
//! ```text
//! moment(m) = ∫_0^{2π} V(θ) e^{imθ} dθ
//! ```
//!
//! One sign convention is used everywhere: the classical I_1 (kernel
//! e^{-iθ}) is `moment(-1)`, I_2 (kernel e^{+iθ}) is `moment(+1)`, and I_0
//! is `moment(0)`. A profile is *admissible* — it produces real, observable
//! first-order splittings — when both moment(±1) are real and nonzero.
//!
//! Moments are integrated by the trapezoid rule for the 2π-periodic term
//! kinds and by Gauss–Legendre for sin(γθ) and θ^k, whose integrands do not
//! close periodically and would leave the trapezoid rule stuck at O(h²).

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{gauss_legendre, trapezoid_periodic};

/// Default node count for angular moment quadrature.
pub const DEFAULT_ANGULAR_NODES: usize = 4096;

/// Default absolute tolerance for the admissibility tests.
pub const DEFAULT_ADMISSIBILITY_TOL: f64 = 1e-10;

/// One additive term of the angular profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialTerm {
    /// amplitude
    Constant { amplitude: f64 },
    /// amplitude · cos θ
    Cosine { amplitude: f64 },
    /// amplitude · sin(γθ), γ > 0
    SineGamma { amplitude: f64, gamma: f64 },
    /// amplitude · θ^k
    Monomial { amplitude: f64, exponent: u32 },
}

impl PotentialTerm {
    pub fn amplitude(&self) -> f64 {
        match *self {
            PotentialTerm::Constant { amplitude }
            | PotentialTerm::Cosine { amplitude }
            | PotentialTerm::SineGamma { amplitude, .. }
            | PotentialTerm::Monomial { amplitude, .. } => amplitude,
        }
    }

    fn evaluate(&self, theta: f64) -> f64 {
        match *self {
            PotentialTerm::Constant { amplitude } => amplitude,
            PotentialTerm::Cosine { amplitude } => amplitude * theta.cos(),
            PotentialTerm::SineGamma { amplitude, gamma } => amplitude * (gamma * theta).sin(),
            PotentialTerm::Monomial {
                amplitude,
                exponent,
            } => amplitude * theta.powi(exponent as i32),
        }
    }

    /// The trapezoid rule is spectrally accurate only when the term closes
    /// periodically over [0, 2π).
    fn is_periodic(&self) -> bool {
        matches!(
            self,
            PotentialTerm::Constant { .. } | PotentialTerm::Cosine { .. }
        )
    }

    /// sup over [0, 2π] of |term|, used as a scale for zero thresholds.
    fn magnitude_bound(&self) -> f64 {
        match *self {
            PotentialTerm::Constant { amplitude }
            | PotentialTerm::Cosine { amplitude }
            | PotentialTerm::SineGamma { amplitude, .. } => amplitude.abs(),
            PotentialTerm::Monomial {
                amplitude,
                exponent,
            } => amplitude.abs() * TAU.powi(exponent as i32),
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.amplitude().is_finite() {
            return Err(Error::InvalidPotential("amplitude must be finite"));
        }
        if let PotentialTerm::SineGamma { gamma, .. } = *self {
            if !(gamma.is_finite() && gamma > 0.0) {
                return Err(Error::InvalidPotential(
                    "sin frequency gamma must be positive and finite",
                ));
            }
        }
        Ok(())
    }
}

/// A finite sum of [`PotentialTerm`]s; always nonempty with finite
/// amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    terms: Vec<PotentialTerm>,
}

impl PotentialSpec {
    pub fn new(terms: Vec<PotentialTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidPotential("at least one term is required"));
        }
        for term in &terms {
            term.validate()?;
        }
        Ok(PotentialSpec { terms })
    }

    pub fn constant(amplitude: f64) -> Self {
        PotentialSpec::new(vec![PotentialTerm::Constant { amplitude }]).expect("finite amplitude")
    }

    pub fn cosine(amplitude: f64) -> Self {
        PotentialSpec::new(vec![PotentialTerm::Cosine { amplitude }]).expect("finite amplitude")
    }

    pub fn sine(amplitude: f64, gamma: f64) -> Self {
        PotentialSpec::new(vec![PotentialTerm::SineGamma { amplitude, gamma }])
            .expect("valid sine term")
    }

    pub fn monomial(amplitude: f64, exponent: u32) -> Self {
        PotentialSpec::new(vec![PotentialTerm::Monomial {
            amplitude,
            exponent,
        }])
        .expect("finite amplitude")
    }

    pub fn terms(&self) -> &[PotentialTerm] {
        &self.terms
    }

    /// V(θ), a total function of any finite angle.
    pub fn evaluate(&self, theta: f64) -> f64 {
        self.terms.iter().map(|t| t.evaluate(theta)).sum()
    }

    /// Upper bound on |moment(m)| for any m; a scale for "exact zero"
    /// thresholds downstream.
    pub fn moment_bound(&self) -> f64 {
        self.terms.iter().map(|t| TAU * t.magnitude_bound()).sum()
    }
}

impl fmt::Display for PotentialSpec {
    /// Canonical form: terms in order, amplitudes with 17 significant
    /// digits, so formatting and re-parsing round-trips exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *term {
                PotentialTerm::Constant { amplitude } => write!(f, "{amplitude:.16e}")?,
                PotentialTerm::Cosine { amplitude } => write!(f, "{amplitude:.16e}*cos(theta)")?,
                PotentialTerm::SineGamma { amplitude, gamma } => {
                    write!(f, "{amplitude:.16e}*sin({gamma:.16e}*theta)")?
                }
                PotentialTerm::Monomial {
                    amplitude,
                    exponent,
                } => write!(f, "{amplitude:.16e}*theta^{exponent}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_potential(s)
    }
}

/// ∫_0^{2π} V(θ) e^{imθ} dθ by numerical quadrature.
///
/// Terms are integrated independently (trapezoid for periodic kinds,
/// Gauss–Legendre otherwise) and summed, so the moment is exactly linear
/// in the term list.
pub fn angular_moment(spec: &PotentialSpec, m: i32, quadrature_nodes: usize) -> Complex64 {
    let mf = m as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for term in spec.terms() {
        let integrand = |theta: f64| Complex64::from(term.evaluate(theta)) * Complex64::cis(mf * theta);
        total += if term.is_periodic() {
            trapezoid_periodic(quadrature_nodes, integrand)
        } else {
            gauss_legendre(quadrature_nodes).integrate_complex(0.0, TAU, integrand)
        };
    }
    total
}

/// A moment together with the order it was taken at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMoment {
    pub order: i32,
    pub value: Complex64,
}

/// Moments for a contiguous range of orders, e.g. every Δn_θ a truncated
/// basis can produce.
pub fn angular_moments(
    spec: &PotentialSpec,
    orders: std::ops::RangeInclusive<i32>,
    quadrature_nodes: usize,
) -> Vec<AngularMoment> {
    orders
        .map(|m| AngularMoment {
            order: m,
            value: angular_moment(spec, m, quadrature_nodes),
        })
        .collect()
}

/// Exact moment where one is known; `Ok(None)` means no closed form is
/// available and the caller should fall back to quadrature.
///
/// Closed forms: constants and cos θ for every integer order; sin(γθ) for
/// orders 0 and ±1 (singular at γ = 1 for ±1, where the γ²−1 denominator
/// vanishes); θ^k for order 0.
pub fn angular_moment_closed(spec: &PotentialSpec, m: i32) -> Result<Option<Complex64>> {
    let mut total = Complex64::new(0.0, 0.0);
    for term in spec.terms() {
        match term_moment_closed(term, m)? {
            Some(v) => total += v,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

fn term_moment_closed(term: &PotentialTerm, m: i32) -> Result<Option<Complex64>> {
    let value = match *term {
        PotentialTerm::Constant { amplitude } => {
            if m == 0 {
                Some(Complex64::from(TAU * amplitude))
            } else {
                Some(Complex64::new(0.0, 0.0))
            }
        }
        PotentialTerm::Cosine { amplitude } => {
            if m.abs() == 1 {
                Some(Complex64::from(PI * amplitude))
            } else {
                Some(Complex64::new(0.0, 0.0))
            }
        }
        PotentialTerm::SineGamma { amplitude, gamma } => match m {
            0 => Some(Complex64::from(
                amplitude * (1.0 - (TAU * gamma).cos()) / gamma,
            )),
            1 | -1 => {
                if gamma == 1.0 {
                    return Err(Error::SingularGamma);
                }
                // ∫ sin(γθ) e^{±iθ} dθ
                //   = (2 sin γπ / (γ²−1)) (γ sin γπ ± i cos γπ)
                let s = (gamma * PI).sin();
                let c = (gamma * PI).cos();
                let common = 2.0 * amplitude * s / (gamma * gamma - 1.0);
                let sign = m as f64;
                Some(Complex64::new(common * gamma * s, sign * common * c))
            }
            _ => None,
        },
        PotentialTerm::Monomial {
            amplitude,
            exponent,
        } => {
            if m == 0 {
                Some(Complex64::from(
                    amplitude * TAU.powi(exponent as i32 + 1) / (exponent as f64 + 1.0),
                ))
            } else {
                None
            }
        }
    };
    Ok(value)
}

/// Whether a profile can produce a real, nonzero first-order splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub i1: Complex64,
    pub i2: Complex64,
    pub is_real: bool,
    pub is_nonzero: bool,
    pub admissible: bool,
}

/// Evaluates moment(±1) and tests them against the admissibility
/// criterion: both real within `imag_tol` and with modulus above
/// `zero_tol`.
pub fn admissibility(spec: &PotentialSpec, imag_tol: f64, zero_tol: f64) -> AdmissibilityReport {
    let i1 = angular_moment(spec, -1, DEFAULT_ANGULAR_NODES);
    let i2 = angular_moment(spec, 1, DEFAULT_ANGULAR_NODES);
    let is_real = i1.im.abs() <= imag_tol && i2.im.abs() <= imag_tol;
    let is_nonzero = i1.norm() > zero_tol && i2.norm() > zero_tol;
    AdmissibilityReport {
        i1,
        i2,
        is_real,
        is_nonzero,
        admissible: is_real && is_nonzero,
    }
}

/// Parses the potential DSL.
///
/// `spec := term ('+' term)*` where a term is a decimal number, an
/// optional `number*` amplitude followed by `cos(theta)`,
/// `sin(gamma*theta)` or `theta^k`, with whitespace insignificant. The
/// frequency inside `cos(...)` may be written explicitly but must equal 1.
pub fn parse_potential(text: &str) -> Result<PotentialSpec> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.expected("a potential term"));
    }
    let mut terms = vec![parser.term()?];
    loop {
        parser.skip_ws();
        if parser.eat(b'+') {
            terms.push(parser.term()?);
        } else {
            break;
        }
    }
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.expected("'+' or end of input"));
    }
    PotentialSpec::new(terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, expected: &str) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.expected(expected))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expected(&self, what: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            expected: what.to_string(),
        }
    }

    fn starts_number(&self) -> bool {
        matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.' || b == b'-')
    }

    /// Longest decimal-literal prefix: optional sign, mantissa, optional
    /// exponent. Returns the value and the byte offset it started at.
    fn number(&mut self) -> Result<(f64, usize)> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let mut digits = 0;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
            digits += 1;
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
                digits += 1;
            }
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.expected("a number"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let mut exp_digits = 0;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
                exp_digits += 1;
            }
            if exp_digits == 0 {
                // Not an exponent after all; leave the 'e' unconsumed.
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((v, start)),
            _ => Err(Error::Parse {
                offset: start,
                expected: "a finite number".to_string(),
            }),
        }
    }

    fn term(&mut self) -> Result<PotentialTerm> {
        self.skip_ws();
        if self.starts_number() {
            let (amplitude, _) = self.number()?;
            self.skip_ws();
            if self.eat(b'*') {
                self.function(amplitude)
            } else {
                Ok(PotentialTerm::Constant { amplitude })
            }
        } else {
            self.function(1.0)
        }
    }

    fn function(&mut self, amplitude: f64) -> Result<PotentialTerm> {
        self.skip_ws();
        if self.eat_keyword("cos") {
            let (freq, freq_offset) = self.trig_argument()?;
            if freq != 1.0 {
                return Err(Error::Parse {
                    offset: freq_offset,
                    expected: "frequency 1 inside cos (only cos(theta) is representable)"
                        .to_string(),
                });
            }
            Ok(PotentialTerm::Cosine { amplitude })
        } else if self.eat_keyword("sin") {
            let (gamma, gamma_offset) = self.trig_argument()?;
            if !(gamma.is_finite() && gamma > 0.0) {
                return Err(Error::Parse {
                    offset: gamma_offset,
                    expected: "a positive frequency".to_string(),
                });
            }
            Ok(PotentialTerm::SineGamma { amplitude, gamma })
        } else if self.eat_keyword("theta") {
            self.skip_ws();
            self.expect(b'^', "'^' followed by an integer exponent")?;
            self.skip_ws();
            let start = self.pos;
            let mut exponent: u32 = 0;
            let mut digits = 0;
            while let Some(b) = self.peek() {
                if !b.is_ascii_digit() {
                    break;
                }
                exponent = exponent
                    .checked_mul(10)
                    .and_then(|e| e.checked_add((b - b'0') as u32))
                    .ok_or_else(|| Error::Parse {
                        offset: start,
                        expected: "a smaller exponent".to_string(),
                    })?;
                self.pos += 1;
                digits += 1;
            }
            if digits == 0 {
                return Err(self.expected("a nonnegative integer exponent"));
            }
            Ok(PotentialTerm::Monomial {
                amplitude,
                exponent,
            })
        } else {
            Err(self.expected("a number, 'cos', 'sin', or 'theta'"))
        }
    }

    /// `(theta)` or `(number*theta)`; returns the frequency and its offset
    /// (the opening parenthesis offset when written implicitly).
    fn trig_argument(&mut self) -> Result<(f64, usize)> {
        self.skip_ws();
        self.expect(b'(', "'('")?;
        self.skip_ws();
        let result = if self.eat_keyword("theta") {
            (1.0, self.pos)
        } else if self.starts_number() {
            let (freq, offset) = self.number()?;
            self.skip_ws();
            self.expect(b'*', "'*' before theta")?;
            self.skip_ws();
            if !self.eat_keyword("theta") {
                return Err(self.expected("'theta'"));
            }
            (freq, offset)
        } else {
            return Err(self.expected("'theta' or a number"));
        };
        self.skip_ws();
        self.expect(b')', "')'")?;
        Ok(result)
    }
}
