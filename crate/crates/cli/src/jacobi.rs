use branchkit::hypergeom::{
    basis_domain, basis_eval, jacobi_phi_compact, ode_residual, ode_residual_compact, JacobiParams, SolutionBasis,
};
use branchkit::HalfInt;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::output::{fmt_f64, fmt_opt, to_value, CliError, Output};
use crate::parse_half;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    #[value(name = "u1", alias = "u1_at_0")]
    U1,
    #[value(name = "u2", alias = "u2_at_0")]
    U2,
    #[value(name = "u_inf_plus")]
    UInfPlus,
    #[value(name = "u_inf_minus")]
    UInfMinus,
    /// The regular solution on the compact form, as a function of an angle.
    #[value(name = "compact")]
    Compact,
}

impl Basis {
    fn solution(self) -> Option<SolutionBasis> {
        match self {
            Basis::U1 => Some(SolutionBasis::U1At0),
            Basis::U2 => Some(SolutionBasis::U2At0),
            Basis::UInfPlus => Some(SolutionBasis::UInfPlus),
            Basis::UInfMinus => Some(SolutionBasis::UInfMinus),
            Basis::Compact => None,
        }
    }

    fn name(self) -> String {
        match self.solution() {
            Some(s) => s.to_string(),
            None => "compact".into(),
        }
    }
}

#[derive(Debug, Args)]
pub struct JacobiArgs {
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    lam: HalfInt,
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    lam1: HalfInt,
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    lam2: HalfInt,
    #[arg(long, value_enum, default_value = "u1")]
    basis: Basis,
    /// Evaluation points as `start:stop:count`.
    #[arg(long, value_parser = parse_grid)]
    t_grid: Grid,
    /// Add a column with the residual of the differential equation at each point.
    #[arg(long)]
    emit_ode_residual: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("expected start:stop:count, got {s:?}"));
    };
    let start: f64 = start.trim().parse().map_err(|_| format!("bad start {start:?}"))?;
    let stop: f64 = stop.trim().parse().map_err(|_| format!("bad stop {stop:?}"))?;
    let count: usize = count.trim().parse().map_err(|_| format!("bad count {count:?}"))?;
    if !(start.is_finite() && stop.is_finite()) {
        return Err("grid ends must be finite".into());
    }
    match count {
        0 => Err("count must be at least 1".into()),
        1 => Ok(Grid(vec![start])),
        _ if stop <= start => Err(format!("need start < stop, got {start}:{stop}")),
        _ => {
            let h = (stop - start) / (count - 1) as f64;
            Ok(Grid((0..count).map(|i| if i + 1 == count { stop } else { start + h * i as f64 }).collect()))
        }
    }
}

#[derive(Serialize)]
struct Row {
    t: f64,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ode_residual: Option<f64>,
}

pub fn run(args: &JacobiArgs) -> Result<Output, CliError> {
    let params = JacobiParams::new(args.lam, args.lam1, args.lam2)?;
    if let Some(which) = args.basis.solution() {
        basis_domain(which, &params)?;
    }
    let mut diagnostics = Vec::new();
    let mut rows = Vec::with_capacity(args.t_grid.0.len());
    for &t in &args.t_grid.0 {
        let value = match args.basis.solution() {
            Some(which) => basis_eval(which, &params, t)?,
            None => jacobi_phi_compact(&params, t)?,
        };
        let ode = if args.emit_ode_residual {
            let r = match args.basis.solution() {
                Some(which) => ode_residual(&params, which, &[t]),
                None => ode_residual_compact(&params, &[t]),
            };
            match r {
                Ok(r) if r.is_finite() => Some(r),
                Ok(_) => {
                    diagnostics.push(format!("ode residual at t = {t} is not finite"));
                    Some(f64::NAN)
                }
                Err(e) => {
                    diagnostics.push(format!("no ode residual at t = {t}: {e}"));
                    Some(f64::NAN)
                }
            }
        } else {
            None
        };
        rows.push(Row { t, value, ode_residual: ode });
    }

    let mut headers = vec!["t", "value"];
    if args.emit_ode_residual {
        headers.push("ode_residual");
    }
    let table = rows
        .iter()
        .map(|r| {
            let mut cells = vec![fmt_f64(r.t), fmt_f64(r.value)];
            if args.emit_ode_residual {
                cells.push(fmt_opt(r.ode_residual));
            }
            cells
        })
        .collect();
    let basis = args.basis.name();
    let payload = serde_json::json!({
        "lambda": params.lam(),
        "lambda1": params.lam1(),
        "lambda2": params.lam2(),
        "basis": basis,
        "rows": to_value(&rows),
    });
    Ok(Output {
        payload,
        banner: vec![format!(
            "{basis} for lambda = {}, lambda' = {}, lambda'' = {}",
            params.lam(),
            params.lam1(),
            params.lam2()
        )],
        headers,
        rows: table,
        diagnostics,
        failure: None,
    })
}
