//! Numerical verification suites.
//!
//! * `parseval`: quadrature of the radial norm integrals against the closed-form
//!   constants, on members of `Lambda_{delta eps}(lambda)` for a fixed list of splits.
//! * `kummer`: the connection identity on `z` in `(-1, 0)`, plus the exact
//!   vanishing of the second coefficient and the proportionality of the decaying
//!   solution to the regular one in the terminating cases.
//! * `ode`: finite-difference residuals of the radial equation for each basis
//!   solution and for the compact variant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::branching::{lambda_set_enumerate, Budget, LambdaKind};
use crate::error::{Error, Result};
use crate::exactnum::HalfInt;
use crate::hypergeom::{
    basis_eval, connection_residual, kummer_b, ode_residual, ode_residual_compact, JacobiParams, SolutionBasis,
};
use crate::parseval::{norm_integral, v_constant};
use crate::repparams::{a_enumerate, Sign, SplitSignature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Parseval,
    Kummer,
    Ode,
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Parseval, Suite::Kummer, Suite::Ode],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Parseval => "parseval",
            Suite::Kummer => "kummer",
            Suite::Ode => "ode",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "parseval" => Ok(Suite::Parseval),
            "kummer" => Ok(Suite::Kummer),
            "ode" => Ok(Suite::Ode),
            "all" => Ok(Suite::All),
            _ => Err(Error::invalid(format!("unknown suite '{s}'"))),
        }
    }
}

/// Tolerance presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fast,
    #[default]
    Strict,
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fast" => Ok(Preset::Fast),
            "strict" => Ok(Preset::Strict),
            _ => Err(Error::invalid(format!("unknown precision preset '{s}' (expected fast or strict)"))),
        }
    }
}

/// Pass thresholds for each check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub parseval: f64,
    pub quadrature: f64,
    pub kummer: f64,
    pub proportional: f64,
    pub ode: f64,
}

impl Tolerances {
    pub fn preset(p: Preset) -> Self {
        match p {
            Preset::Strict => Tolerances {
                parseval: 1e-8,
                quadrature: 1e-10,
                kummer: 1e-10,
                proportional: 1e-8,
                ode: 1e-5,
            },
            Preset::Fast => Tolerances {
                parseval: 1e-6,
                quadrature: 1e-8,
                kummer: 1e-8,
                proportional: 1e-6,
                ode: 1e-4,
            },
        }
    }

    /// Use `tol` as the pass threshold of every check.
    pub fn uniform(self, tol: f64) -> Self {
        Tolerances {
            parseval: tol,
            quadrature: (tol * 1e-2).clamp(1e-12, 1e-6),
            kummer: tol,
            proportional: tol,
            ode: tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub tolerances: Tolerances,
    /// Number of points of every evaluation grid.
    pub grid_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerances: Tolerances::preset(Preset::Strict),
            grid_size: DEFAULT_GRID,
        }
    }
}

pub const DEFAULT_GRID: usize = 8;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub suite: Suite,
    pub case: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CaseResult {
    fn from_residual(suite: Suite, case: String, residual: Result<f64>, tol: f64) -> Self {
        match residual {
            Ok(r) => CaseResult {
                suite,
                case,
                residual: r,
                tol,
                passed: r <= tol,
                error: None,
            },
            Err(e) => CaseResult {
                suite,
                case,
                residual: f64::NAN,
                tol,
                passed: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub max_residual: f64,
    pub cases: Vec<CaseResult>,
}

impl Report {
    fn new(suite: Suite, cases: Vec<CaseResult>) -> Self {
        let passed = cases.iter().all(|c| c.passed);
        let max_residual = cases.iter().map(|c| c.residual).fold(0.0, |a: f64, r| if r.is_nan() { f64::NAN } else { a.max(r) });
        Report {
            suite,
            passed,
            max_residual,
            cases,
        }
    }

    pub fn count(&self, suite: Suite) -> usize {
        self.cases.iter().filter(|c| c.suite == suite).count()
    }
}

/// `n` evenly spaced points on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn h(s: &str) -> HalfInt {
    s.parse().expect("static half-integer literal")
}

/// A member `(lam1, lam2)` of `Lambda_kind(lam)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParsevalCase {
    pub kind: LambdaKind,
    pub lam1: HalfInt,
    pub lam2: HalfInt,
    pub lam: HalfInt,
}

impl fmt::Display for ParsevalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V_{}(lambda'={}, lambda''={}, lambda={})", self.kind, self.lam1, self.lam2, self.lam)
    }
}

/// Splits whose Lambda sets feed the parseval suite.
pub const PARSEVAL_SPLITS: [(u32, u32, u32, u32); 6] =
    [(2, 1, 1, 1), (3, 0, 1, 2), (2, 2, 2, 0), (1, 2, 2, 1), (4, 1, 2, 1), (3, 2, 3, 0)];

/// Parseval cases: members with `lambda <= 13/2` and `lambda', lambda'' <= 11/2`,
/// at most two per `(split, kind, lambda)`, led by `V_{+-}(2, 1/2, 1/2) = pi/4`.
pub fn parseval_cases() -> Vec<ParsevalCase> {
    let mut out = vec![ParsevalCase {
        kind: LambdaKind::PlusMinus,
        lam1: h("2"),
        lam2: h("1/2"),
        lam: h("1/2"),
    }];
    let cap = h("11/2");
    for (p1, q1, p2, q2) in PARSEVAL_SPLITS {
        let split = SplitSignature::new(p1, q1, p2, q2).expect("static split");
        let (p, q) = split.join();
        for lam in a_enumerate(Sign::Plus, p, q, h("13/2")) {
            for kind in LambdaKind::ALL {
                let members = lambda_set_enumerate(kind, &split, lam, Budget::new(usize::MAX, cap + cap))
                    .expect("lambda taken from the admissible set");
                let picked = members.into_iter().filter(|&(a, b)| a <= cap && b <= cap).take(2);
                for (lam1, lam2) in picked {
                    let case = ParsevalCase { kind, lam1, lam2, lam };
                    if !out.contains(&case) {
                        out.push(case);
                    }
                }
            }
        }
    }
    out
}

/// Relative error between the quadrature and the closed form.
pub fn parseval_error(case: &ParsevalCase, quad_tol: f64) -> Result<f64> {
    let want = v_constant(case.kind, case.lam1, case.lam2, case.lam)?.value;
    let got = norm_integral(case.kind, case.lam1, case.lam2, case.lam, quad_tol)?;
    Ok((got - want).abs() / want.abs())
}

fn jp(lam: &str, lam1: &str, lam2: &str) -> JacobiParams {
    JacobiParams::new(h(lam), h(lam1), h(lam2)).expect("static Jacobi parameters")
}

/// `(lambda, lambda', lambda'')` with half-odd `lambda''` for the connection identity.
pub fn kummer_cases() -> Vec<JacobiParams> {
    vec![
        jp("1/2", "1", "1/2"),
        jp("1/2", "2", "3/2"),
        jp("1", "1/2", "3/2"),
        jp("3/2", "3", "5/2"),
        jp("2", "5/2", "1/2"),
        jp("5/2", "0", "7/2"),
        jp("1/2", "2", "1/2"),
        jp("3/2", "4", "3/2"),
    ]
}

/// Cases with `lambda' - lambda'' - lambda - 1` in `2N`.
pub fn terminating_cases() -> Vec<JacobiParams> {
    vec![
        jp("1/2", "2", "1/2"),
        jp("1", "3", "1"),
        jp("3/2", "4", "3/2"),
        jp("2", "11/2", "1/2"),
        jp("1/2", "5", "3/2"),
        jp("3", "6", "2"),
    ]
}

/// Grid `z = -s^2` with `s` evenly spaced on `[0.2, 0.9]`.
pub fn kummer_grid(n: usize) -> Vec<f64> {
    linspace(0.2, 0.9, n).into_iter().map(|s| -s * s).collect()
}

/// Largest relative deviation of `u^-_(inf) / u_1(0)` from its value at `t_grid[0]`.
pub fn proportionality_spread(params: &JacobiParams, t_grid: &[f64]) -> Result<f64> {
    let ratio = |t: f64| -> Result<f64> {
        Ok(basis_eval(SolutionBasis::UInfMinus, params, t)? / basis_eval(SolutionBasis::U1At0, params, t)?)
    };
    let r0 = ratio(t_grid[0])?;
    let mut worst: f64 = 0.0;
    for &t in &t_grid[1..] {
        worst = worst.max(((ratio(t)? - r0) / r0).abs());
    }
    Ok(worst)
}

fn describe(p: &JacobiParams) -> String {
    format!("(lambda={}, lambda'={}, lambda''={})", p.lam(), p.lam1(), p.lam2())
}

/// Parameters for the ODE suite; the last one has integer `lambda''`.
pub fn ode_cases() -> Vec<JacobiParams> {
    vec![jp("1/2", "1", "1/2"), jp("3/2", "2", "5/2"), jp("5/2", "1", "3/2"), jp("2", "1", "1")]
}

/// Grid for each basis solution, and for the compact variant (`None`).
pub fn ode_grid(which: Option<SolutionBasis>, n: usize) -> Vec<f64> {
    match which {
        Some(SolutionBasis::U1At0) => linspace(0.1, 3.0, n),
        Some(SolutionBasis::U2At0) => linspace(0.5, 3.0, n),
        Some(SolutionBasis::UInfPlus | SolutionBasis::UInfMinus) => linspace(1.5, 5.0, n),
        None => linspace(0.2, 1.1, n),
    }
}

fn run_parseval(opts: &VerifyOptions) -> Vec<CaseResult> {
    let tol = opts.tolerances;
    parseval_cases()
        .iter()
        .map(|c| CaseResult::from_residual(Suite::Parseval, c.to_string(), parseval_error(c, tol.quadrature), tol.parseval))
        .collect()
}

fn run_kummer(opts: &VerifyOptions) -> Vec<CaseResult> {
    let tol = opts.tolerances;
    let grid = kummer_grid(opts.grid_size.max(2));
    let mut out: Vec<CaseResult> = kummer_cases()
        .iter()
        .map(|p| {
            CaseResult::from_residual(
                Suite::Kummer,
                format!("connection {}", describe(p)),
                connection_residual(p, &grid),
                tol.kummer,
            )
        })
        .collect();
    let t_grid = linspace(1.2, 4.0, opts.grid_size.max(2));
    for p in terminating_cases() {
        let b = kummer_b(&p).map(f64::abs);
        out.push(CaseResult::from_residual(Suite::Kummer, format!("kummer_b = 0 {}", describe(&p)), b, 0.0));
        out.push(CaseResult::from_residual(
            Suite::Kummer,
            format!("proportional {}", describe(&p)),
            proportionality_spread(&p, &t_grid),
            tol.proportional,
        ));
    }
    out
}

fn run_ode(opts: &VerifyOptions) -> Vec<CaseResult> {
    let tol = opts.tolerances.ode;
    let n = opts.grid_size.max(2);
    let mut out = Vec::new();
    for p in ode_cases() {
        for which in [
            SolutionBasis::U1At0,
            SolutionBasis::U2At0,
            SolutionBasis::UInfPlus,
            SolutionBasis::UInfMinus,
        ] {
            if crate::hypergeom::basis_domain(which, &p).is_err() {
                continue;
            }
            let r = ode_residual(&p, which, &ode_grid(Some(which), n));
            out.push(CaseResult::from_residual(Suite::Ode, format!("{which} {}", describe(&p)), r, tol));
        }
        let r = ode_residual_compact(&p, &ode_grid(None, n));
        out.push(CaseResult::from_residual(Suite::Ode, format!("compact {}", describe(&p)), r, tol));
    }
    out
}

/// Run a suite; `Suite::All` runs the three in order.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    let mut cases = Vec::new();
    for part in suite.parts() {
        cases.extend(match part {
            Suite::Parseval => run_parseval(opts),
            Suite::Kummer => run_kummer(opts),
            Suite::Ode => run_ode(opts),
            Suite::All => unreachable!("expanded by parts"),
        });
    }
    Report::new(suite, cases)
}
