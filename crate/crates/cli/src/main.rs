//! `qvalent`: truth values and valuational entropies of membership
//! propositions, from a JSON scenario to JSON or CSV reports.

mod commands;
mod error;
mod report;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qvalent::demo::{run_demo, DemoFixtures};
use qvalent::{FloatScalar, LogBase, Scalar, DEFAULT_EPS};
use serde_json::json;

use commands::{Context, Output};
use error::CliError;
use report::{render_json, OutputFormat, Table};
use scenario::{load_matrix, Arithmetic, Scenario};

#[derive(Parser, Debug)]
#[command(name = "qvalent", version, about, long_about = None)]
struct Cli {
    /// Scenario file (JSON) with the dimension, states and subspaces.
    #[arg(long, global = true, value_name = "FILE")]
    scenario: Option<PathBuf>,

    /// Logarithm base: a rational greater than 1, or `e`. Defaults to 2.
    #[arg(long, global = true)]
    base: Option<LogBase>,

    /// Tolerant floating-point arithmetic instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,

    /// Tolerance for `--float` (relative, with an absolute floor).
    #[arg(long, global = true, requires = "float")]
    eps: Option<f64>,

    /// Report format. Defaults: CSV for `trajectory`, plain text for
    /// `paper-demo`, JSON otherwise.
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truth value, match counts, entropy and Born probability per subspace.
    Entropy {
        #[arg(long)]
        state: String,
        /// Subspace names; all subspaces in file order when omitted.
        #[arg(long = "subspace")]
        subspaces: Vec<String>,
    },
    /// Truth value and Born probability per subspace.
    Truth {
        #[arg(long)]
        state: String,
        #[arg(long = "subspace")]
        subspaces: Vec<String>,
    },
    /// Entropy change per subspace between two states.
    Delta {
        #[arg(long)]
        past: String,
        #[arg(long)]
        present: String,
        #[arg(long = "subspace")]
        subspaces: Vec<String>,
    },
    /// Entropy-preserving or arbitrary-change classification of a transition.
    Classify {
        #[arg(long)]
        past: String,
        #[arg(long)]
        present: String,
        #[arg(long = "subspace")]
        subspaces: Vec<String>,
    },
    /// Entropies along `u_k = A^k u_0` for an invertible matrix `A`.
    Trajectory {
        #[arg(long)]
        state: String,
        /// JSON array of rows of scalars.
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long = "subspace")]
        subspaces: Vec<String>,
        /// Reject matrices that are not a scalar multiple of a unitary.
        #[arg(long)]
        strict_unitary: bool,
    },
    /// A basis of the orthocomplement of a subspace.
    Complement {
        #[arg(long)]
        subspace: String,
    },
    /// Reproduce and self-check the worked two-qubit and one-qubit examples.
    PaperDemo {
        /// Perturb a fixture so that the checks fail.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Command::PaperDemo { corrupt } = cli.command {
        return paper_demo(cli.base.unwrap_or_default(), corrupt, cli.output);
    }

    let path = cli.scenario.as_ref().ok_or_else(|| CliError::Malformed("--scenario FILE is required".into()))?;
    let scenario = Scenario::load(path)?;
    let base = match (&cli.base, &scenario.base) {
        (Some(b), _) => b.clone(),
        (None, Some(b)) => b.parse()?,
        (None, None) => LogBase::default(),
    };
    let default_format = match cli.command {
        Command::Trajectory { .. } => OutputFormat::Csv,
        _ => OutputFormat::Json,
    };
    let format = cli.output.unwrap_or(default_format);

    let float = cli.float || scenario.arithmetic == Arithmetic::Float;
    let output = if float {
        let eps = cli.eps.or(scenario.eps).unwrap_or(DEFAULT_EPS);
        if !(eps.is_finite() && eps > 0.0) {
            return Err(CliError::Malformed(format!("eps must be positive, got {eps}")));
        }
        dispatch(
            &cli.command,
            &Context { scenario: &scenario, base, convert: |s: &Scalar| FloatScalar::from_scalar(s, eps) },
        )?
    } else {
        dispatch(&cli.command, &Context { scenario: &scenario, base, convert: Scalar::clone })?
    };

    let text = match (output, format) {
        (Output::Table(t), OutputFormat::Json) => render_json(&t.to_json()),
        (Output::Document { json, .. }, OutputFormat::Json) => render_json(&json),
        (Output::Table(t) | Output::Document { table: t, .. }, OutputFormat::Csv) => t.to_csv()?,
    };
    emit(&text)
}

fn dispatch<F, C>(command: &Command, ctx: &Context<'_, C>) -> Result<Output, CliError>
where
    F: qvalent::Field,
    C: Fn(&Scalar) -> F,
{
    match command {
        Command::Entropy { state, subspaces } => ctx.entropy(state, subspaces),
        Command::Truth { state, subspaces } => ctx.truth(state, subspaces),
        Command::Delta { past, present, subspaces } => ctx.delta(past, present, subspaces),
        Command::Classify { past, present, subspaces } => ctx.classify(past, present, subspaces),
        Command::Trajectory { state, matrix, steps, subspaces, strict_unitary } => {
            ctx.trajectory(state, &load_matrix(matrix)?, *steps, subspaces, *strict_unitary)
        }
        Command::Complement { subspace } => ctx.complement(subspace),
        Command::PaperDemo { .. } => unreachable!("handled before the scenario is loaded"),
    }
}

fn paper_demo(base: LogBase, corrupt: bool, format: Option<OutputFormat>) -> Result<(), CliError> {
    let mut fixtures = DemoFixtures::default();
    if corrupt {
        fixtures.psi1 = [0, 1, 0, 0].into_iter().map(Scalar::from_integer).collect();
    }
    let report = run_demo(&fixtures, &base)?;
    let text = match format {
        Some(OutputFormat::Json) => render_json(&json!({
            "base": base.to_string(),
            "passed": report.all_passed(),
            "checks": report.checks.iter().map(|c| json!({
                "label": c.label,
                "expected": c.expected,
                "actual": c.actual,
                "passed": c.passed,
            })).collect::<Vec<_>>(),
        })),
        Some(OutputFormat::Csv) => {
            let mut table = Table::new(["label", "expected", "actual", "passed"]);
            for c in &report.checks {
                table.push(vec![
                    c.label.as_str().into(),
                    c.expected.as_str().into(),
                    c.actual.as_str().into(),
                    c.passed.to_string().into(),
                ]);
            }
            table.to_csv()?
        }
        None => {
            let mut s = format!("worked examples, log base {base}\n");
            for check in &report.checks {
                s.push_str(&format!("{check}\n"));
            }
            s.push_str(&format!(
                "{} of {} checks passed\n",
                report.checks.len() - report.failures(),
                report.checks.len()
            ));
            s
        }
    };
    emit(&text)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::DemoFailed(report.failures()))
    }
}
