//! Gauss hypergeometric functions with half-integer parameters and the
//! Jacobi functions built from them.
//!
//! [`hyp2f1`] evaluates `2F1(a, b; c; x)` for every real `x < 1` (and at
//! `x = 1` when the value is finite). The evaluation route depends on `x`:
//!
//! | region | method |
//! |---|---|
//! | `a` or `b` in `{0, -1, ...}` | terminating polynomial, any `x` |
//! | `c - a` or `c - b` in `{0, -1, ...}` | `(1 - x)^(c-a-b)` times a polynomial |
//! | `-1/2 <= x <= 2/3` | power series at `0` |
//! | `-2 <= x < -1/2` | Pfaff transformation, series in `x / (x - 1)` |
//! | `x < -2` | connection to the basis at infinity, series in `1 / x` |
//! | `2/3 < x < 1` | Pfaff transformation followed by the connection at infinity |
//!
//! The connection at infinity uses the two-term formula when `b - a` is not an
//! integer and the logarithmic formula when `b - a` is an integer. In the latter
//! case all digamma values needed are at half-integers and are exact.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{digamma, factorial, gamma_exact, psi_over_gamma, rgamma, HalfInt};

/// Relative size of a series term below which summation stops.
pub const TERM_TOL: f64 = 1e-16;
/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 10_000;

/// Jacobi parameters `(lambda, lambda', lambda'')`.
///
/// The associated hypergeometric parameters are
/// `a = (lambda' + lambda'' + 1 - lambda) / 2`, `b = (lambda' + lambda'' + 1 + lambda) / 2`
/// and `c = lambda'' + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JacobiParams {
    lam: HalfInt,
    lam1: HalfInt,
    lam2: HalfInt,
}

impl JacobiParams {
    /// Requires `lambda' + lambda'' - lambda` to be an integer, so that `a`,
    /// `b` and `c` are half-integers.
    pub fn new(lam: HalfInt, lam1: HalfInt, lam2: HalfInt) -> Result<Self> {
        if !(lam1 + lam2 - lam).is_integer() {
            return Err(Error::invalid(format!(
                "lambda' + lambda'' - lambda must be an integer, got ({lam1}) + ({lam2}) - ({lam})"
            )));
        }
        Ok(JacobiParams { lam, lam1, lam2 })
    }

    pub fn lam(&self) -> HalfInt {
        self.lam
    }
    pub fn lam1(&self) -> HalfInt {
        self.lam1
    }
    pub fn lam2(&self) -> HalfInt {
        self.lam2
    }

    pub fn a(&self) -> HalfInt {
        (self.lam1 + self.lam2 + HalfInt::ONE - self.lam)
            .half()
            .expect("checked in constructor")
    }

    pub fn b(&self) -> HalfInt {
        (self.lam1 + self.lam2 + HalfInt::ONE + self.lam)
            .half()
            .expect("checked in constructor")
    }

    pub fn c(&self) -> HalfInt {
        self.lam2 + HalfInt::ONE
    }

    /// The same function with `lambda` negated; `a` and `b` swap.
    pub fn with_negated_lambda(&self) -> JacobiParams {
        JacobiParams { lam: -self.lam, ..*self }
    }

    fn with_negated_lam2(&self) -> JacobiParams {
        JacobiParams { lam2: -self.lam2, ..*self }
    }
}

/// Degree of the polynomial `2F1(a, b; c; .)` when `a` or `b` is a
/// non-positive integer.
fn terminating_degree(a: HalfInt, b: HalfInt) -> Option<u64> {
    let deg = |x: HalfInt| x.as_integer().filter(|n| *n <= 0).map(|n| (-n) as u64);
    match (deg(a), deg(b)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (d, None) | (None, d) => d,
    }
}

fn pole_error(c: HalfInt) -> Error {
    Error::Pole(format!("2F1 lower parameter c = {c}"))
}

fn polynomial(a: HalfInt, b: HalfInt, c: HalfInt, x: f64, degree: u64) -> f64 {
    let (a, b, c) = (a.to_f64(), b.to_f64(), c.to_f64());
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..degree {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
    }
    sum
}

fn power_series(a: HalfInt, b: HalfInt, c: HalfInt, z: f64) -> Result<f64> {
    let (af, bf, cf) = (a.to_f64(), b.to_f64(), c.to_f64());
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let k = k as f64;
        term *= (af + k) * (bf + k) / ((cf + k) * (k + 1.0)) * z;
        sum += term;
        if term.abs() <= TERM_TOL * sum.abs() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        routine: "hyp2f1 series",
        detail: format!("a={a}, b={b}, c={c}, z={z}: more than {MAX_TERMS} terms"),
    })
}

/// The power series of `2F1(a, b; c; z)` at `z = 0`.
///
/// Terminating series are summed exactly for every `z`; otherwise `|z| < 1`
/// is required.
pub fn hyp2f1_series(a: HalfInt, b: HalfInt, c: HalfInt, z: f64) -> Result<f64> {
    if c.is_nonpositive_integer() {
        return Err(pole_error(c));
    }
    if let Some(n) = terminating_degree(a, b) {
        return Ok(polynomial(a, b, c, z, n));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::domain("hyp2f1_series", format!("|z| < 1 required, got {z}")));
    }
    power_series(a, b, c, z)
}

/// Explicit evaluation routes, exposed so that neighbouring regions can be
/// cross-checked against each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Power series at zero, `|x| < 1`.
    Series,
    /// `(1 - x)^(-a) 2F1(a, c - b; c; x / (x - 1))`, for `x < 1/2`.
    Pfaff,
    /// Connection to the solutions at infinity, for `x < -1`.
    Infinity,
}

/// `2F1(a, b; c; x)` through a prescribed route.
pub fn hyp2f1_via(route: Route, a: HalfInt, b: HalfInt, c: HalfInt, x: f64) -> Result<f64> {
    if c.is_nonpositive_integer() {
        return Err(pole_error(c));
    }
    match route {
        Route::Series => hyp2f1_series(a, b, c, x),
        Route::Pfaff => {
            if !(x < 0.5) {
                return Err(Error::domain("hyp2f1 Pfaff route", format!("x < 1/2 required, got {x}")));
            }
            Ok((1.0 - x).powf(-a.to_f64()) * hyp2f1_series(a, c - b, c, x / (x - 1.0))?)
        }
        Route::Infinity => {
            if !(x < -1.0) {
                return Err(Error::domain("hyp2f1 infinity route", format!("x < -1 required, got {x}")));
            }
            connection_at_infinity(a, b, c, x)
        }
    }
}

/// `2F1(a, b; c; x)` for real `x < 1`, and at `x = 1` when `c - a - b > 0`
/// or the series terminates.
pub fn hyp2f1(a: HalfInt, b: HalfInt, c: HalfInt, x: f64) -> Result<f64> {
    if c.is_nonpositive_integer() {
        return Err(pole_error(c));
    }
    if x.is_nan() {
        return Err(Error::domain("hyp2f1", "x is NaN"));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = terminating_degree(a, b) {
        return Ok(polynomial(a, b, c, x, n));
    }
    if x.is_infinite() {
        return Err(Error::domain("hyp2f1", format!("x = {x}")));
    }
    if let Some(n) = terminating_degree(c - a, c - b) {
        if x < 1.0 {
            let s = c - a - b;
            return Ok((1.0 - x).powf(s.to_f64()) * polynomial(c - a, c - b, c, x, n));
        }
    }
    if x >= 1.0 {
        let s = c - a - b;
        if x == 1.0 && s.twice() > 0 {
            return gauss_sum(a, b, c);
        }
        return Err(Error::domain("hyp2f1", format!("x = {x} lies on the branch cut")));
    }
    if (-0.5..=2.0 / 3.0).contains(&x) {
        power_series(a, b, c, x)
    } else if x < -2.0 {
        connection_at_infinity(a, b, c, x)
    } else if x < -0.5 {
        hyp2f1_via(Route::Pfaff, a, b, c, x)
    } else {
        let w = x / (x - 1.0);
        Ok((1.0 - x).powf(-a.to_f64()) * hyp2f1(a, c - b, c, w)?)
    }
}

/// `2F1(a, b; c; 1) = Gamma(c) Gamma(c - a - b) / (Gamma(c - a) Gamma(c - b))`.
fn gauss_sum(a: HalfInt, b: HalfInt, c: HalfInt) -> Result<f64> {
    let g = |x: HalfInt| -> Result<f64> {
        gamma_exact(x)?
            .finite()
            .ok_or_else(|| Error::Pole(x.to_string()))
    };
    Ok(g(c)? * g(c - a - b)? * rgamma(c - a) * rgamma(c - b))
}

fn finite_gamma(x: HalfInt) -> Result<f64> {
    gamma_exact(x)?
        .finite()
        .ok_or_else(|| Error::Pole(x.to_string()))
}

/// `2F1(a, b; c; z)` for `z < -1` via the solutions at infinity.
fn connection_at_infinity(a: HalfInt, b: HalfInt, c: HalfInt, z: f64) -> Result<f64> {
    let w = 1.0 / z;
    let mz = -z;
    let d = b - a;
    if !d.is_integer() {
        let gc = finite_gamma(c)?;
        let t1 = gc
            * finite_gamma(d)?
            * rgamma(b)
            * rgamma(c - a)
            * mz.powf(-a.to_f64())
            * hyp2f1_series(a, a - c + HalfInt::ONE, a - b + HalfInt::ONE, w)?;
        let t2 = gc
            * finite_gamma(-d)?
            * rgamma(a)
            * rgamma(c - b)
            * mz.powf(-b.to_f64())
            * hyp2f1_series(b, b - c + HalfInt::ONE, b - a + HalfInt::ONE, w)?;
        return Ok(t1 + t2);
    }
    let (a, m) = if d.twice() >= 0 {
        (a, d.as_integer().unwrap_or(0) as u64)
    } else {
        (b, (-d).as_integer().unwrap_or(0) as u64)
    };
    logarithmic_connection(a, m, c, z)
}

/// `2F1(a, a + m; c; z)` for integer `m >= 0` and `z < -1`.
fn logarithmic_connection(a: HalfInt, m: u64, c: HalfInt, z: f64) -> Result<f64> {
    let mz = -z;
    let w = 1.0 / z;
    let af = a.to_f64();
    let mi = m as i64;

    let mut finite = 0.0;
    let mut poch = 1.0;
    for k in 0..m {
        let kf = k as f64;
        finite += poch * factorial(m - k - 1) / factorial(k) * rgamma(c - a.plus_int(k as i64)) * w.powi(k as i32);
        poch *= af + kf;
    }
    finite *= rgamma(a.plus_int(mi));

    // Recurrences keep every factor of size O(k^const):
    //   r_k = rgamma(x_k) / k!,  s_k = psi_over_gamma(x_k) / k!,  x_k = c - a - m - k,
    //   q_k = (a + m)_k / (k + m)!.
    let ln_mz = mz.ln();
    let x0 = c - a.plus_int(mi);
    let mut r = rgamma(x0);
    let mut s = psi_over_gamma(x0);
    let mut q = 1.0 / factorial(m);
    let mut psi_sum = digamma(HalfInt::from_int(1 + mi)).expect("positive") + digamma(HalfInt::ONE).expect("positive")
        - digamma(a.plus_int(mi)).ok_or_else(|| Error::Pole(a.plus_int(mi).to_string()))?;
    let mut power = w.powi(mi as i32);
    let mut tail = 0.0;
    let mut small = 0;
    let mut converged = false;
    for k in 0..MAX_TERMS as i64 {
        let term = q * power * ((ln_mz + psi_sum) * r - s);
        tail += term;
        if term.abs() <= TERM_TOL * tail.abs() {
            small += 1;
            if small == 2 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
        let k1 = (k + 1) as f64;
        let x_next = x0.to_f64() - k1;
        s = (x_next * s - r) / k1;
        r *= x_next / k1;
        q *= (af + mi as f64 + k as f64) / (k1 + m as f64);
        psi_sum += 1.0 / (1.0 + m as f64 + k as f64) + 1.0 / k1 - 1.0 / (af + mi as f64 + k as f64);
        power *= -w;
    }
    if !converged {
        return Err(Error::NonConvergence {
            routine: "hyp2f1 logarithmic connection",
            detail: format!("a={a}, m={m}, c={c}, z={z}"),
        });
    }
    tail *= rgamma(a);

    let gc = finite_gamma(c)?;
    Ok(gc * mz.powf(-af) * (finite + tail))
}

/// The Jacobi function `phi(t) = 2F1(a, b; c; -sinh^2 t)`, the even solution
/// of the radial equation normalised by `phi(0) = 1`.
pub fn jacobi_phi(params: &JacobiParams, t: f64) -> Result<f64> {
    let s = t.sinh();
    hyp2f1(params.a(), params.b(), params.c(), -s * s)
}

/// The Jacobi function on the compact real form, `2F1(a, b; c; sin^2 theta)`.
pub fn jacobi_phi_compact(params: &JacobiParams, theta: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::domain("jacobi_phi_compact", format!("theta = {theta} outside [0, pi/2]")));
    }
    let s = if theta == FRAC_PI_2 { 1.0 } else { theta.sin() };
    hyp2f1(params.a(), params.b(), params.c(), s * s)
}

/// Solutions of the radial equation normalised at `t = 0` or at `t = infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionBasis {
    /// `2F1(a, b; c; -sinh^2 t)`, regular at 0.
    #[serde(rename = "u1_at_0")]
    U1At0,
    /// `(sinh t)^(-2 lambda'') 2F1(a - c + 1, b - c + 1; 2 - c; -sinh^2 t)`, for non-integer `lambda''`.
    #[serde(rename = "u2_at_0")]
    U2At0,
    /// `(sinh t)^(-2a) 2F1(a, a - c + 1; 1 - lambda; -1 / sinh^2 t)`.
    #[serde(rename = "u_inf_plus")]
    UInfPlus,
    /// `(sinh t)^(-2b) 2F1(b, b - c + 1; 1 + lambda; -1 / sinh^2 t)`.
    #[serde(rename = "u_inf_minus")]
    UInfMinus,
}

impl SolutionBasis {
    pub const ALL: [SolutionBasis; 4] = [
        SolutionBasis::U1At0,
        SolutionBasis::U2At0,
        SolutionBasis::UInfPlus,
        SolutionBasis::UInfMinus,
    ];
}

impl std::fmt::Display for SolutionBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolutionBasis::U1At0 => "u1_at_0",
            SolutionBasis::U2At0 => "u2_at_0",
            SolutionBasis::UInfPlus => "u_inf_plus",
            SolutionBasis::UInfMinus => "u_inf_minus",
        })
    }
}

impl std::str::FromStr for SolutionBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "u1" | "u1_at_0" => Ok(SolutionBasis::U1At0),
            "u2" | "u2_at_0" => Ok(SolutionBasis::U2At0),
            "u_inf_plus" | "uinf_plus" => Ok(SolutionBasis::UInfPlus),
            "u_inf_minus" | "uinf_minus" => Ok(SolutionBasis::UInfMinus),
            other => Err(Error::invalid(format!("unknown basis {other:?}"))),
        }
    }
}

/// Check that `which` is defined for `params`.
pub fn basis_domain(which: SolutionBasis, params: &JacobiParams) -> Result<()> {
    match which {
        SolutionBasis::U1At0 => {
            if params.c().is_nonpositive_integer() {
                return Err(pole_error(params.c()));
            }
        }
        SolutionBasis::U2At0 => {
            if params.lam2().is_integer() {
                return Err(Error::Unsupported(format!(
                    "u2_at_0 has a logarithmic term for integer lambda'' = {}",
                    params.lam2()
                )));
            }
        }
        SolutionBasis::UInfMinus => {
            if params.lam().is_nonpositive_integer() {
                return Err(Error::invalid(format!(
                    "u_inf_minus needs lambda outside {{0, -1, ...}}, got {}",
                    params.lam()
                )));
            }
        }
        SolutionBasis::UInfPlus => {
            if params.lam().is_integer() {
                return Err(Error::Unsupported(format!(
                    "u_inf_plus needs non-integer lambda, got {}",
                    params.lam()
                )));
            }
        }
    }
    Ok(())
}

/// Evaluate one of the four normalised solutions at `t` (`t > 0` except for `u1`).
pub fn basis_eval(which: SolutionBasis, params: &JacobiParams, t: f64) -> Result<f64> {
    basis_domain(which, params)?;
    if which != SolutionBasis::U1At0 && !(t > 0.0) {
        return Err(Error::domain("basis_eval", format!("t > 0 required, got {t}")));
    }
    let (a, b, c) = (params.a(), params.b(), params.c());
    let one = HalfInt::ONE;
    let s = t.sinh();
    let s2 = s * s;
    match which {
        SolutionBasis::U1At0 => hyp2f1(a, b, c, -s2),
        SolutionBasis::U2At0 => {
            let lead = s.powf(-2.0 * params.lam2().to_f64());
            Ok(lead * hyp2f1(a - c + one, b - c + one, one + one - c, -s2)?)
        }
        SolutionBasis::UInfMinus => {
            let lead = s.powf(-2.0 * b.to_f64());
            Ok(lead * hyp2f1(b, b - c + one, b - a + one, -1.0 / s2)?)
        }
        SolutionBasis::UInfPlus => {
            let lead = s.powf(-2.0 * a.to_f64());
            Ok(lead * hyp2f1(a, a - c + one, a - b + one, -1.0 / s2)?)
        }
    }
}

fn kummer_core(params: &JacobiParams) -> Result<f64> {
    let (lam, lam1, lam2) = (params.lam(), params.lam1(), params.lam2());
    if lam.is_nonpositive_integer() {
        return Err(Error::invalid(format!("lambda must avoid {{0, -1, ...}}, got {lam}")));
    }
    if lam2 == HalfInt::ZERO {
        return Err(Error::invalid("lambda'' must be nonzero"));
    }
    let num = finite_gamma(lam2)? * finite_gamma(lam + HalfInt::ONE)?;
    let one = HalfInt::ONE;
    let d1 = (-lam1 + lam2 + lam + one).half().expect("integral by construction");
    let d2 = (lam1 + lam2 + lam + one).half().expect("integral by construction");
    Ok(num * rgamma(d1) * rgamma(d2))
}

/// The coefficient `b(lambda', lambda'', lambda)` of the connection
/// `u_inf_minus = a u1 + b u2`.
pub fn kummer_b(params: &JacobiParams) -> Result<f64> {
    kummer_core(params)
}

/// The coefficient `a(lambda', lambda'', lambda) = b(lambda', -lambda'', lambda)`,
/// for non-integer `lambda''`.
pub fn kummer_a(params: &JacobiParams) -> Result<f64> {
    if params.lam2().is_integer() {
        return Err(Error::Unsupported(format!(
            "kummer_a is undefined for integer lambda'' = {}",
            params.lam2()
        )));
    }
    kummer_core(&params.with_negated_lam2())
}

/// `g^-(z) = (-z)^(-b) 2F1(b, b - c + 1; 1 + lambda; 1/z)` for `-1 < z < 0`.
///
/// The `1/z` series is continued by the Pfaff transformation into a series in
/// `1 / (1 - z)`, which lies in `(1/2, 1)` on this interval.
fn g_inf_minus_near_zero(params: &JacobiParams, z: f64) -> Result<f64> {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let one = HalfInt::ONE;
    let (big_a, big_b, big_c) = (b, b - c + one, b - a + one);
    if big_c.is_nonpositive_integer() {
        return Err(pole_error(big_c));
    }
    let w = 1.0 / z;
    let pfaff = (1.0 - w).powf(-big_a.to_f64()) * hyp2f1_series(big_a, big_c - big_b, big_c, w / (w - 1.0))?;
    Ok((-z).powf(-b.to_f64()) * pfaff)
}

/// Largest relative discrepancy of the connection identity
/// `g^- = a g1 + b e^{i pi lambda''} g2` over `z_grid` in `(-1, 0)`.
///
/// On `z < 0` with principal branches, `e^{i pi lambda''} z^{-lambda''}` equals
/// the real number `(-z)^{-lambda''}`, so both sides are computed in real arithmetic.
pub fn connection_residual(params: &JacobiParams, z_grid: &[f64]) -> Result<f64> {
    if params.lam2().is_integer() {
        return Err(Error::Unsupported(format!(
            "connection identity needs non-integer lambda'', got {}",
            params.lam2()
        )));
    }
    let coef_a = kummer_a(params)?;
    let coef_b = kummer_b(params)?;
    let (a, b, c) = (params.a(), params.b(), params.c());
    let one = HalfInt::ONE;
    let mut worst: f64 = 0.0;
    for &z in z_grid {
        if !(z > -1.0 && z < 0.0) {
            return Err(Error::domain("connection_residual", format!("z = {z} outside (-1, 0)")));
        }
        let lhs = g_inf_minus_near_zero(params, z)?;
        let g1 = hyp2f1_series(a, b, c, z)?;
        let g2 = (-z).powf(-params.lam2().to_f64()) * hyp2f1_series(a - c + one, b - c + one, one + one - c, z)?;
        let rhs = coef_a * g1 + coef_b * g2;
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    Ok(worst)
}

/// Default grid `z = -(k/10)^2`, `k = 2, ..., 9`, for [`connection_residual`].
pub fn default_connection_grid() -> Vec<f64> {
    (2..=9).map(|k| -((k as f64) / 10.0).powi(2)).collect()
}

/// Finite-difference step used by the residual checks.
pub const FD_STEP: f64 = 1e-3;

fn derivatives(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<(f64, f64, f64)> {
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    Ok((f0, d1, d2))
}

/// Pointwise residual of the radial equation
/// `u'' + ((2 lambda' + 1) tanh t + (2 lambda'' + 1) coth t) u' + ((lambda' + lambda'' + 1)^2 - lambda^2) u`.
pub fn ode_pointwise(params: &JacobiParams, which: SolutionBasis, t: f64) -> Result<(f64, f64)> {
    let f = |x: f64| basis_eval(which, params, x);
    let (u, d1, d2) = derivatives(&f, t, FD_STEP)?;
    let p1 = 2.0 * params.lam1().to_f64() + 1.0;
    let p2 = 2.0 * params.lam2().to_f64() + 1.0;
    let s = params.lam1().to_f64() + params.lam2().to_f64() + 1.0;
    let lam = params.lam().to_f64();
    let res = d2 + (p1 * t.tanh() + p2 / t.tanh()) * d1 + (s * s - lam * lam) * u;
    Ok((u, res))
}

/// Largest residual of the radial equation over `t_grid`, normalised by
/// `max(|u|, 1)` on the grid.
pub fn ode_residual(params: &JacobiParams, which: SolutionBasis, t_grid: &[f64]) -> Result<f64> {
    basis_domain(which, params)?;
    let mut scale: f64 = 1.0;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        if which != SolutionBasis::U1At0 && t - 2.0 * FD_STEP <= 0.0 {
            return Err(Error::domain("ode_residual", format!("t = {t} too close to 0")));
        }
        let (u, r) = ode_pointwise(params, which, t)?;
        scale = scale.max(u.abs());
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

/// Residual of the hypergeometric equation
/// `z(1 - z) g'' + (c - (a + b + 1) z) g' - a b g` for `g(z) = 2F1(a, b; c; z)`
/// with `z = sin^2 theta`, normalised by `max(|g|, 1)` on the grid.
pub fn ode_residual_compact(params: &JacobiParams, theta_grid: &[f64]) -> Result<f64> {
    let (a, b, c) = (params.a().to_f64(), params.b().to_f64(), params.c().to_f64());
    let g = |z: f64| hyp2f1(params.a(), params.b(), params.c(), z);
    let mut scale: f64 = 1.0;
    let mut worst: f64 = 0.0;
    for &theta in theta_grid {
        let z = theta.sin().powi(2);
        if z - 2.0 * FD_STEP <= 0.0 || z + 2.0 * FD_STEP >= 1.0 {
            return Err(Error::domain("ode_residual_compact", format!("theta = {theta} too close to the ends")));
        }
        let (u, d1, d2) = derivatives(&g, z, FD_STEP)?;
        let r = z * (1.0 - z) * d2 + (c - (a + b + 1.0) * z) * d1 - a * b * u;
        scale = scale.max(u.abs());
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

/// `(cosh t)^(lambda' - rho') (sinh t)^(lambda'' - rho'') phi`, for `t > 0`.
pub fn s_transform(lam1: HalfInt, lam2: HalfInt, rho1: HalfInt, rho2: HalfInt, phi_value: f64, t: f64) -> f64 {
    let e1 = (lam1 - rho1).to_f64();
    let e2 = (lam2 - rho2).to_f64();
    t.cosh().powf(e1) * t.sinh().powf(e2) * phi_value
}
