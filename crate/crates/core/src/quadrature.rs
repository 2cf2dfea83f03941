//! Composite Gauss-Legendre quadrature.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of nodes per panel.
pub const NODES: usize = 64;

/// Largest number of panels tried by [`integrate_adaptive`].
pub const MAX_PANELS: usize = 4096;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `n` nodes, computed by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// The shared 64-node rule.
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(NODES))
    }

    /// Apply the rule on `[a, b]`.
    pub fn apply(&self, f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x)?;
        }
        Ok(sum * half)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule with `panels` equal panels; panels are summed in order.
pub fn integrate_panels(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, panels: usize) -> Result<f64> {
    let rule = GaussLegendre::standard();
    let width = (b - a) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { lo + width };
        sum += rule.apply(f, lo, hi)?;
    }
    Ok(sum)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integration {
    pub value: f64,
    pub panels: usize,
}

/// Double the number of panels until two successive estimates agree to `tol`
/// relative (or `tol * abs_floor` absolute).
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
    abs_floor: f64,
) -> Result<Integration> {
    let mut panels = 1;
    let mut prev = integrate_panels(f, a, b, panels)?;
    while panels < MAX_PANELS {
        panels *= 2;
        let next = integrate_panels(f, a, b, panels)?;
        if (next - prev).abs() <= tol * next.abs().max(abs_floor) {
            return Ok(Integration { value: next, panels });
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        routine: "Gauss-Legendre quadrature",
        detail: format!("[{a}, {b}] not resolved with {MAX_PANELS} panels"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        let rule = GaussLegendre::standard();
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        for i in 0..NODES {
            assert!((rule.nodes[i] + rule.nodes[NODES - 1 - i]).abs() < 1e-15);
        }
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        for deg in 0..16 {
            let got = rule.apply(&|x| Ok(x.powi(deg)), 0.0, 1.0).unwrap();
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((got - want).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_integrals() {
        let r = integrate_adaptive(&|x| Ok((-x).exp()), 0.0, 40.0, 1e-13, 0.0).unwrap();
        assert!((r.value - (1.0 - (-40f64).exp())).abs() < 1e-13);
        let r = integrate_adaptive(&|x: f64| Ok(x.sin().powi(2)), 0.0, std::f64::consts::PI, 1e-13, 0.0).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn propagates_errors() {
        let failing = |x: f64| if x > 0.5 { Err(Error::invalid("boom")) } else { Ok(x) };
        assert!(integrate_adaptive(&failing, 0.0, 1.0, 1e-10, 0.0).is_err());
    }
}
