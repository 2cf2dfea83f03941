use branchkit::appendix::{bounded_multiplicity_triple, matching_row, ComplexTriple};
use branchkit::branching::{classify_split, SpectralClass};
use clap::Args;
use serde_json::json;

use crate::output::{to_value, CliError, Output};
use crate::SplitArgs;

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    split: SplitArgs,
    /// A complex symmetric triple as JSON, e.g. `{"g": "so(8)", "h": "gl(4)", "gp": "so(6)+so(2)"}`.
    #[arg(long, conflicts_with_all = ["p", "q", "p1", "q1", "p2", "q2"])]
    triple: Option<String>,
}

/// The most specific description that applies.
fn verdict(c: &SpectralClass) -> &'static str {
    if c.purely_continuous {
        "purely_continuous"
    } else if c.discretely_decomposable {
        "discretely_decomposable"
    } else if c.finite_discrete {
        "finite_discrete"
    } else {
        "infinite_discrete"
    }
}

pub fn run(args: &ClassifyArgs) -> Result<Output, CliError> {
    match &args.triple {
        Some(text) => run_triple(text),
        None if args.split.any() => run_split(&args.split),
        None => Err(CliError::invalid(
            "missing_argument",
            "give a split (--p --q --p1 --q1) or --triple",
        )),
    }
}

fn run_split(split_args: &SplitArgs) -> Result<Output, CliError> {
    let split = split_args.resolve()?;
    let class = classify_split(&split)?;
    let v = verdict(&class);
    let rows = vec![
        vec!["purely_continuous".into(), class.purely_continuous.to_string()],
        vec!["finite_discrete".into(), class.finite_discrete.to_string()],
        vec!["discretely_decomposable".into(), class.discretely_decomposable.to_string()],
        vec!["lambda_union_infinite".into(), class.lambda_union_infinite.to_string()],
    ];
    Ok(Output {
        payload: json!({ "split": to_value(&split), "verdict": v, "class": to_value(&class) }),
        banner: vec![format!("split {split}: {v}")],
        headers: vec!["property", "value"],
        rows,
        ..Output::default()
    })
}

fn run_triple(text: &str) -> Result<Output, CliError> {
    let triple: ComplexTriple = serde_json::from_str(text)
        .map_err(|e| CliError::invalid("invalid_triple", format!("cannot read triple: {e}")))?;
    let bounded = bounded_multiplicity_triple(&triple);
    let row = matching_row(&triple);
    let verdict = if bounded { "bounded" } else { "unbounded" };
    let mut rows = vec![vec!["bounded".to_string(), bounded.to_string()]];
    if let Some(r) = row {
        rows.push(vec!["row".into(), r.id.into()]);
        rows.push(vec!["pattern".into(), r.pattern.into()]);
    }
    Ok(Output {
        payload: json!({
            "triple": to_value(&triple),
            "verdict": verdict,
            "bounded": bounded,
            "row": row.map(|r| r.id),
            "side": row.map(|r| to_value(&r.side)),
        }),
        banner: vec![format!("{triple}: {verdict}")],
        headers: vec!["property", "value"],
        rows,
        ..Output::default()
    })
}
