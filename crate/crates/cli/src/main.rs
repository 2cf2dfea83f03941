mod branch;
mod classify;
mod jacobi;
mod output;
mod verify;

use std::process::ExitCode;

use branchkit::HalfInt;
use clap::{Args, Parser, Subcommand};

use output::{emit, CliError, Format};

/// Discrete branching laws for O(p, q) and the special functions behind them.
#[derive(Debug, Parser)]
#[command(name = "branchkit", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the discrete summands of a restriction together with their norm constants.
    Branch(branch::BranchArgs),
    /// Run the numerical verification suites.
    Verify(verify::VerifyArgs),
    /// Classify a real split or a complex symmetric triple.
    Classify(classify::ClassifyArgs),
    /// Tabulate a Jacobi function on a grid.
    Jacobi(jacobi::JacobiArgs),
}

/// `O(p, q)` together with the first factor `O(p', q')` of the subgroup.
#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub p1: Option<u32>,
    #[arg(long)]
    pub q1: Option<u32>,
    /// Second factor, as an alternative to `--p`/`--q`.
    #[arg(long)]
    pub p2: Option<u32>,
    #[arg(long)]
    pub q2: Option<u32>,
}

impl SplitArgs {
    pub fn any(&self) -> bool {
        [self.p, self.q, self.p1, self.q1, self.p2, self.q2].iter().any(Option::is_some)
    }

    pub fn resolve(&self) -> Result<branchkit::repparams::SplitSignature, CliError> {
        use branchkit::repparams::SplitSignature;
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| CliError::invalid("missing_argument", format!("--{name} is required")))
        };
        let (p1, q1) = (need(self.p1, "p1")?, need(self.q1, "q1")?);
        let split = match (self.p, self.q, self.p2, self.q2) {
            (Some(p), Some(q), None, None) => SplitSignature::from_total(p, q, p1, q1)?,
            (None, None, Some(p2), Some(q2)) => SplitSignature::new(p1, q1, p2, q2)?,
            (Some(p), Some(q), Some(p2), Some(q2)) => {
                if (p1 + p2, q1 + q2) != (p, q) {
                    return Err(CliError::invalid(
                        "split_mismatch",
                        format!("({p1}, {q1}) + ({p2}, {q2}) does not add up to ({p}, {q})"),
                    ));
                }
                SplitSignature::new(p1, q1, p2, q2)?
            }
            _ => {
                return Err(CliError::invalid(
                    "missing_argument",
                    "give either --p and --q, or --p2 and --q2",
                ))
            }
        };
        Ok(split)
    }
}

pub fn parse_half(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Branch(a) => branch::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Classify(a) => classify::run(a),
        Command::Jacobi(a) => jacobi::run(a),
    };
    ExitCode::from(emit(result, cli.format))
}
