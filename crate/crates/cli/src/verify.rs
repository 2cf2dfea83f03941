use branchkit::verify::{run_suite, Preset, Suite, Tolerances, VerifyOptions, DEFAULT_GRID};
use clap::Args;

use crate::output::{fmt_f64, to_value, CliError, Failure, Output};

pub const PRECISION_VAR: &str = "BRANCHKIT_PRECISION";

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which suite to run: parseval, kummer, ode or all.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Pass threshold applied to every check, overriding the precision preset.
    #[arg(long)]
    tol: Option<f64>,
    /// Number of points in each evaluation grid.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid_size: usize,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

fn preset_from_env() -> Result<Preset, CliError> {
    match std::env::var(PRECISION_VAR) {
        Ok(v) if !v.trim().is_empty() => v
            .parse::<Preset>()
            .map_err(|e| CliError::invalid("invalid_precision", format!("{PRECISION_VAR}: {e}"))),
        _ => Ok(Preset::default()),
    }
}

pub fn run(args: &VerifyArgs) -> Result<Output, CliError> {
    let preset = preset_from_env()?;
    let mut tolerances = Tolerances::preset(preset);
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::invalid("invalid_tolerance", format!("--tol must be positive, got {tol}")));
        }
        tolerances = tolerances.uniform(tol);
    }
    if args.grid_size < 2 {
        return Err(CliError::invalid(
            "invalid_grid",
            format!("--grid-size must be at least 2, got {}", args.grid_size),
        ));
    }
    let opts = VerifyOptions {
        tolerances,
        grid_size: args.grid_size,
    };
    let report = run_suite(args.suite, &opts);

    let failed = report.cases.iter().filter(|c| !c.passed).count();
    let total = report.cases.len();
    let banner = vec![
        format!("suite {}: {} of {total} case(s) passed", report.suite, total - failed),
        format!("max residual {}", fmt_f64(report.max_residual)),
    ];
    let rows = report
        .cases
        .iter()
        .map(|c| {
            vec![
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
                c.suite.to_string(),
                c.case.clone(),
                fmt_f64(c.residual),
                fmt_f64(c.tol),
                c.error.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let failure = (!report.passed).then(|| Failure {
        code: "verification_failed",
        message: format!("{failed} of {total} case(s) failed"),
    });
    let mut payload = to_value(&report);
    payload["tolerances"] = to_value(&opts.tolerances);
    payload["grid_size"] = opts.grid_size.into();
    Ok(Output {
        payload,
        banner,
        headers: vec!["result", "suite", "case", "residual", "tol", "error"],
        rows,
        diagnostics: vec![format!("precision preset: {preset:?}").to_lowercase()],
        failure,
    })
}
