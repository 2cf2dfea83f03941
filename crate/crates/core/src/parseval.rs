//! Norm constants of the holographic operators and the radial integrals they
//! evaluate.
//!
//! For `(lambda', lambda'')` in `Lambda_{delta eps}(lambda)` the constant
//! `V^{(lambda', lambda'')}_{delta eps, lambda}` has a closed form as a ratio of
//! Gamma values at half-integers, and equals the squared `L^2` norm of a Jacobi
//! function against the weight `(cosh t)^{2 lambda' + 1} (sinh t)^{2 lambda'' + 1}`
//! (or its compact analogue). This module computes both sides.

use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::{Deserialize, Serialize};

use crate::branching::LambdaKind;
use crate::error::{Error, Result};
use crate::exactnum::{gamma_exact, rgamma, HalfInt};
use crate::hypergeom::{jacobi_phi, jacobi_phi_compact, JacobiParams};
use crate::quadrature::integrate_adaptive;

/// Default relative tolerance of [`norm_integral`].
pub const DEFAULT_TOL: f64 = 1e-10;

/// Initial truncation point of the hyperbolic integrals.
const INITIAL_T: f64 = 8.0;
/// The truncation point is doubled at most up to this value.
const MAX_T: f64 = 256.0;
/// Right end of the first, finer panel at the origin.
const GRADED_PANEL: f64 = 1e-2;

/// A norm constant together with the parameter set it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormConstant {
    pub kind: LambdaKind,
    pub value: f64,
}

fn half_of(x: HalfInt) -> Result<HalfInt> {
    x.half().ok_or_else(|| {
        Error::invalid("lambda' + lambda'' + lambda must be an integer for the norm constants")
    })
}

fn numerator_gamma(x: HalfInt) -> Result<f64> {
    gamma_exact(x)?
        .finite()
        .ok_or_else(|| Error::Pole(format!("numerator Gamma({x})")))
}

fn v_plus_minus(l1: HalfInt, l2: HalfInt, lam: HalfInt) -> Result<f64> {
    let one = HalfInt::ONE;
    let g2 = numerator_gamma(l2 + one)?;
    let num = g2 * g2 * numerator_gamma(half_of(l1 - l2 + lam + one)?)? * numerator_gamma(half_of(l1 - l2 - lam + one)?)?;
    let den = rgamma(half_of(l1 + l2 + lam + one)?) * rgamma(half_of(l1 + l2 - lam + one)?);
    Ok(num * den / (2.0 * lam.to_f64()))
}

fn v_plus_plus(l1: HalfInt, l2: HalfInt, lam: HalfInt) -> Result<f64> {
    let one = HalfInt::ONE;
    let g2 = numerator_gamma(l2 + one)?;
    let num = g2 * g2 * numerator_gamma(half_of(-l1 - l2 + lam + one)?)? * numerator_gamma(half_of(l1 - l2 + lam + one)?)?;
    let den = rgamma(half_of(-l1 + l2 + lam + one)?) * rgamma(half_of(l1 + l2 + lam + one)?);
    Ok(num * den / (2.0 * lam.to_f64()))
}

/// The closed-form constant `V^{(lam1, lam2)}_{kind, lam}`.
///
/// A pole of Gamma in a denominator contributes a factor 0; a pole in the
/// numerator is reported as [`Error::Pole`].
pub fn v_constant(kind: LambdaKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> Result<NormConstant> {
    if lam.twice() <= 0 {
        return Err(Error::invalid(format!("lambda must be positive, got {lam}")));
    }
    let value = match kind {
        LambdaKind::PlusMinus => v_plus_minus(lam1, lam2, lam)?,
        LambdaKind::MinusPlus => v_plus_minus(lam2, lam1, lam)?,
        LambdaKind::PlusPlus => v_plus_plus(lam1, lam2, lam)?,
    };
    Ok(NormConstant { kind, value })
}

/// Integration domain of a [`RadialMeasure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialDomain {
    /// `t` in `(0, infinity)`.
    Hyperbolic,
    /// `theta` in `(0, pi/2)`.
    Compact,
}

/// The weight `(cosh t)^{2 lam1 + 1} (sinh t)^{2 lam2 + 1} dt`, or
/// `(cos theta)^{2 lam1 + 1} (sin theta)^{2 lam2 + 1} d theta` on the compact domain.
///
/// It is integrable at the origin exactly when `lam2 > -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialMeasure {
    pub lam1: HalfInt,
    pub lam2: HalfInt,
    pub domain: RadialDomain,
}

impl RadialMeasure {
    pub fn new(lam1: HalfInt, lam2: HalfInt, domain: RadialDomain) -> Self {
        RadialMeasure { lam1, lam2, domain }
    }

    pub fn integrable_at_origin(&self) -> bool {
        self.lam2.twice() > -2
    }

    /// Natural logarithm of the density.
    pub fn ln_density(&self, x: f64) -> f64 {
        let e1 = 2.0 * self.lam1.to_f64() + 1.0;
        let e2 = 2.0 * self.lam2.to_f64() + 1.0;
        match self.domain {
            RadialDomain::Hyperbolic => e1 * ln_cosh(x) + e2 * ln_sinh(x),
            RadialDomain::Compact => e1 * x.cos().ln() + e2 * x.sin().ln(),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        self.ln_density(x).exp()
    }

    /// `f(x)^2` times the density, formed in log space so that large hyperbolic
    /// weights and small values of `f` do not overflow or underflow separately.
    pub fn weighted_square(&self, f: f64, x: f64) -> f64 {
        if f == 0.0 {
            return 0.0;
        }
        (2.0 * f.abs().ln() + self.ln_density(x)).exp()
    }
}

/// `ln cosh t`, accurate for large `|t|`.
pub fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln sinh t` for `t > 0`.
pub fn ln_sinh(t: f64) -> f64 {
    if t < 1.0 {
        t.sinh().ln()
    } else {
        t + (-(-2.0 * t).exp()).ln_1p() - LN_2
    }
}

/// Outcome of [`norm_integral_detailed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormIntegral {
    pub value: f64,
    /// Truncation point of a hyperbolic integral, `pi/2` for the compact one.
    pub truncation: f64,
}

fn check_member(kind: LambdaKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt) -> Result<()> {
    let minus_half = HalfInt::from_twice(-1);
    if lam.twice() <= 0 || lam1 < minus_half || lam2 < minus_half || !kind.defect(lam, lam1, lam2).in_two_n() {
        return Err(Error::invalid(format!(
            "({lam1}, {lam2}) is not in Lambda_{kind}({lam}); the integral diverges"
        )));
    }
    Ok(())
}

/// Adaptive integral over `(0, infinity)` with the doubling tail rule.
///
/// Returns the value and the final truncation point `T`; the last contribution
/// `[T/2, T]` was below `tol` relative to the total.
pub fn integrate_half_line(f: &dyn Fn(f64) -> Result<f64>, tol: f64) -> Result<(f64, f64)> {
    let head = integrate_adaptive(f, 0.0, GRADED_PANEL, tol, 0.0)?.value;
    let mut total = head + integrate_adaptive(f, GRADED_PANEL, INITIAL_T, tol, head.abs())?.value;
    let mut t = INITIAL_T;
    while t < MAX_T {
        let piece = integrate_adaptive(f, t, 2.0 * t, tol, total.abs())?.value;
        total += piece;
        t *= 2.0;
        if piece.abs() <= tol * total.abs() {
            return Ok((total, t));
        }
    }
    Err(Error::NonConvergence {
        routine: "norm integral tail",
        detail: format!("tail still significant at T = {MAX_T}"),
    })
}

/// The radial integral whose closed form is [`v_constant`], with its truncation data.
pub fn norm_integral_detailed(
    kind: LambdaKind,
    lam1: HalfInt,
    lam2: HalfInt,
    lam: HalfInt,
    tol: f64,
) -> Result<NormIntegral> {
    if !(tol >= 1e-12) {
        return Err(Error::invalid(format!("tolerance must be at least 1e-12, got {tol}")));
    }
    check_member(kind, lam1, lam2, lam)?;
    match kind {
        LambdaKind::PlusMinus | LambdaKind::MinusPlus => {
            let (l1, l2) = if kind == LambdaKind::PlusMinus { (lam1, lam2) } else { (lam2, lam1) };
            let params = JacobiParams::new(lam, l1, l2)?;
            let measure = RadialMeasure::new(l1, l2, RadialDomain::Hyperbolic);
            let f = |t: f64| Ok(measure.weighted_square(jacobi_phi(&params, t)?, t));
            let (value, truncation) = integrate_half_line(&f, tol)?;
            Ok(NormIntegral { value, truncation })
        }
        LambdaKind::PlusPlus => {
            let params = JacobiParams::new(lam, lam1, lam2)?;
            let measure = RadialMeasure::new(lam1, lam2, RadialDomain::Compact);
            let f = |theta: f64| Ok(measure.weighted_square(jacobi_phi_compact(&params, theta)?, theta));
            let value = integrate_adaptive(&f, 0.0, FRAC_PI_2, tol, 0.0)?.value;
            Ok(NormIntegral { value, truncation: FRAC_PI_2 })
        }
    }
}

/// The radial integral whose closed form is [`v_constant`].
pub fn norm_integral(kind: LambdaKind, lam1: HalfInt, lam2: HalfInt, lam: HalfInt, tol: f64) -> Result<f64> {
    Ok(norm_integral_detailed(kind, lam1, lam2, lam, tol)?.value)
}

/// Whether the decaying solution at infinity is square integrable near the origin:
/// `-1 < lam2 < 1` or `lam1 - lam2 - lam - 1` in `2N`.
pub fn l2_membership(lam: HalfInt, lam1: HalfInt, lam2: HalfInt) -> Result<bool> {
    if lam.twice() <= 0 || lam1.twice() <= -2 || lam2.twice() <= -2 {
        return Err(Error::invalid(format!(
            "l2_membership needs lambda > 0 and lambda', lambda'' > -1, got ({lam}, {lam1}, {lam2})"
        )));
    }
    Ok(lam2.twice() < 2 || (lam1 - lam2 - lam - HalfInt::ONE).in_two_n())
}
