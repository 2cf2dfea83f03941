use branchkit::branching::{branch_discrete, classify_split, Budget, LambdaKind, SpectralClass, Summand};
use branchkit::parseval::v_constant;
use branchkit::repparams::{a_enumerate, RepParam, Sign, SplitSignature};
use branchkit::{Error, HalfInt};
use clap::Args;
use serde::Serialize;

use crate::output::{fmt_opt, to_value, CliError, Output};
use crate::{parse_half, SplitArgs};

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[command(flatten)]
    split: SplitArgs,
    /// Parameter of the representation, e.g. `7/2` or `3.5`.
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    lambda: HalfInt,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    eps: Sign,
    /// Largest number of summands listed per family; required when the spectrum is infinite.
    #[arg(long)]
    max_count: Option<usize>,
    /// Largest value of `lambda' + lambda''` considered.
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    total_max: Option<HalfInt>,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse::<Sign>().map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Entry {
    #[serde(flatten)]
    summand: Summand,
    /// The family the summand was found in, for `pi^{p,q}_{+,lambda}` with the split as given
    /// (or reversed when `eps = -`).
    family: LambdaKind,
    v_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sgn_power: Option<u64>,
}

#[derive(Serialize)]
struct Payload {
    rep: RepParam,
    split: SplitSignature,
    class: Option<SpectralClass>,
    budget: Budget,
    summands: Vec<Entry>,
}

fn admissible_hint(eps: Sign, p: u32, q: u32) -> String {
    let set = if eps == Sign::Plus { "A_+" } else { "A_-" };
    let values = a_enumerate(eps, p, q, HalfInt::from(12));
    if values.is_empty() {
        return format!("{set}({p}, {q}) is empty");
    }
    let shown: Vec<String> = values.iter().take(6).map(ToString::to_string).collect();
    let finite = values.len() <= 2 && values[0] < HalfInt::ZERO;
    let tail = if finite { "" } else { ", ..." };
    format!("admissible values: {set}({p}, {q}) = {{{}{tail}}}", shown.join(", "))
}

pub fn run(args: &BranchArgs) -> Result<Output, CliError> {
    let split = args.split.resolve()?;
    let (p, q) = split.join();
    let rep = RepParam::new(p, q, args.eps, args.lambda).map_err(|e| {
        let hint = matches!(e, Error::NotAdmissible { .. }).then(|| admissible_hint(args.eps, p, q));
        let err = CliError::from(e);
        match hint {
            Some(h) => err.with_hint(h),
            None => err,
        }
    })?;
    let work_split = match args.eps {
        Sign::Plus => split,
        Sign::Minus => split.swapped(),
    };
    let mut diagnostics = Vec::new();
    let class = match classify_split(&work_split) {
        Ok(c) => Some(c),
        Err(e) => {
            diagnostics.push(format!("no spectral class: {e}"));
            None
        }
    };
    if args.eps == Sign::Minus && class.is_some() {
        diagnostics.push(format!(
            "eps = -: the class refers to pi^{{{q},{p}}}_{{+}} restricted along {work_split}"
        ));
    }
    let infinite = class.is_some_and(|c| c.lambda_union_infinite);
    let lambda = args.lambda;
    let budget = match (args.max_count, infinite) {
        (None, true) => {
            return Err(CliError::invalid(
                "max_count_required",
                format!("the discrete spectrum along {split} is infinite"),
            )
            .with_hint("pass --max-count N to list the first N summands of each family"));
        }
        (Some(n), _) => Budget::new(n, args.total_max.unwrap_or(lambda.plus_int(2 * n as i64 + 8))),
        (None, false) => Budget::new(usize::MAX, args.total_max.unwrap_or((lambda + lambda).plus_int(8))),
    };

    let summands = branch_discrete(&rep, &split, budget)?;
    let mut entries = Vec::with_capacity(summands.len());
    for s in summands {
        let (d, e) = match args.eps {
            Sign::Plus => (s.delta, s.eps),
            Sign::Minus => (s.delta.flip(), s.eps.flip()),
        };
        let family = LambdaKind::from_signs(d, e).expect("summand signs form a family");
        let v = match v_constant(family, s.lambda1, s.lambda2, lambda) {
            Ok(c) => Some(c.value),
            Err(err) => {
                diagnostics.push(format!(
                    "no norm constant for ({}, {}): {err}",
                    s.lambda1, s.lambda2
                ));
                None
            }
        };
        entries.push(Entry {
            summand: s,
            family,
            v_constant: v,
            sgn_power: s.sign_character_power(&split, lambda),
        });
    }

    let mut banner = vec![format!("{rep} restricted along {split}")];
    match class {
        Some(c) => banner.push(format!(
            "class: purely_continuous={} finite_discrete={} discretely_decomposable={} lambda_union_infinite={}",
            c.purely_continuous, c.finite_discrete, c.discretely_decomposable, c.lambda_union_infinite
        )),
        None => banner.push("class: unavailable".into()),
    }
    banner.push(format!("{} discrete summand(s)", entries.len()));

    let rows = entries
        .iter()
        .map(|e| {
            vec![
                e.summand.delta.to_string(),
                e.summand.eps.to_string(),
                e.summand.lambda1.to_string(),
                e.summand.lambda2.to_string(),
                e.family.to_string(),
                fmt_opt(e.v_constant),
                e.sgn_power.map(|n| n.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let payload = Payload {
        rep,
        split,
        class,
        budget,
        summands: entries,
    };
    Ok(Output {
        payload: to_value(&payload),
        banner,
        headers: vec!["delta", "eps", "lambda1", "lambda2", "family", "v_constant", "sgn_power"],
        rows,
        diagnostics,
        failure: None,
    })
}
