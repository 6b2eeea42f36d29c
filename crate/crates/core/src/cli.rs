//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::analytics::{evaluate, FormulaInputs, FormulaKind};
use crate::harness::{run_experiment, write_experiment_outputs, write_figures, ExperimentConfig, FigureScale, HarnessError};
use crate::model::{parse_instance_csv, parse_lambda_list, sample_instance, write_instance_csv, TypeParams};
use crate::policies::{run_policy, Policy, PolicyConfig, DEFAULT_DELTA};
use crate::stats::{ConfidenceConstant, KlBonus};

/// Exit code for bad arguments or configuration.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for I/O and other runtime failures.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "typesched", version, about = "Single-machine scheduling with unknown job types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A comma-separated list of mean sizes as one argument.
#[derive(Debug, Clone)]
struct LambdaArg(Vec<f64>);

fn lambda_list(text: &str) -> Result<LambdaArg, String> {
    parse_lambda_list(text).map(LambdaArg).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a closed-form cost, ratio or bound and print it as JSON.
    Analytic {
        /// Formula name, e.g. cost-ftpp, cr-ftpp-tilde, upper-ucb-rr, lower-small-gap.
        formula: FormulaKind,
        /// Mean sizes, comma separated.
        #[arg(long, value_parser = lambda_list)]
        lambdas: Option<LambdaArg>,
        /// Jobs per type.
        #[arg(long)]
        n: Option<usize>,
        /// Number of types of the hard sequence (cr-ftpp-tilde).
        #[arg(long)]
        k: Option<usize>,
        /// Ratio of the larger to the smaller mean (cr-ftpp-upper-2types).
        #[arg(long)]
        ratio: Option<f64>,
        /// Slot length (upper-ucb-rr).
        #[arg(long)]
        delta: Option<f64>,
        /// Print only the value.
        #[arg(long)]
        raw: bool,
    },
    /// Run one policy on one instance and print its flow time and ratios.
    Simulate {
        #[arg(long)]
        policy: Policy,
        /// Mean sizes, comma separated; ignored with --instance.
        #[arg(long, value_parser = lambda_list, required_unless_present = "instance")]
        lambdas: Option<LambdaArg>,
        #[arg(long, required_unless_present = "instance")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Read realized sizes from an instance CSV instead of sampling.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, default_value_t = KlBonus::default())]
        bonus: KlBonus,
        #[arg(long, default_value_t = ConfidenceConstant::default())]
        confidence: ConfidenceConstant,
        /// Directory for instance.csv and trace.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment config and write records and summaries.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; results do not depend on it.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Run the figure experiments and write their data and figure specs.
    Figures {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value_t = FigureScale::Desk)]
        scale: FigureScale,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<HarnessError> for Failure {
    fn from(err: HarnessError) -> Self {
        match err {
            HarnessError::Config(_) => Failure::Usage(err.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct AnalyticOutput<'a> {
    kind: FormulaKind,
    params: &'a FormulaInputs,
    value: f64,
}

#[derive(Serialize)]
struct SimulateOutput {
    policy: Policy,
    lambdas: Vec<f64>,
    n: usize,
    seed: u64,
    flow: f64,
    opt_flow: f64,
    ftpp_flow: f64,
    cr: f64,
    excess: f64,
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes") + "\n"
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    let write_out = |stdout: &mut dyn Write, text: &str| {
        stdout.write_all(text.as_bytes()).map_err(|e| Failure::Runtime(e.to_string()))
    };
    match command {
        Command::Analytic {
            formula,
            lambdas,
            n,
            k,
            ratio,
            delta,
            raw,
        } => {
            let inputs = FormulaInputs {
                lambdas: lambdas.map(|l| l.0),
                n,
                k,
                ratio,
                delta,
            };
            let result = evaluate(formula, &inputs).map_err(|e| Failure::Usage(format!("{formula}: {e}")))?;
            let text = if raw {
                format!("{:?}\n", result.value)
            } else {
                json_line(&AnalyticOutput {
                    kind: result.kind,
                    params: &inputs,
                    value: result.value,
                })
            };
            write_out(stdout, &text)
        }
        Command::Simulate {
            policy,
            lambdas,
            n,
            seed,
            instance,
            delta,
            bonus,
            confidence,
            out,
        } => {
            let instance = match instance {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Runtime(format!("reading {}: {e}", path.display())))?;
                    parse_instance_csv(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                None => {
                    let lambdas = lambdas.ok_or_else(|| Failure::Usage("--lambdas is required".into()))?.0;
                    let n = n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
                    let params = TypeParams::new(lambdas, n).map_err(|e| Failure::Usage(e.to_string()))?;
                    sample_instance(&params, seed)
                }
            };
            let config = PolicyConfig {
                delta,
                bonus,
                confidence,
            };
            let run = |p| run_policy(p, &instance, &config).map_err(|e| Failure::Usage(format!("{p}: {e}")));
            let trace = run(policy)?;
            let opt_flow = run(Policy::Opt)?.flow_time();
            let ftpp_flow = run(Policy::Ftpp)?.flow_time();
            if let Some(dir) = out {
                let io = |e: std::io::Error| Failure::Runtime(format!("writing to {}: {e}", dir.display()));
                fs::create_dir_all(&dir).map_err(io)?;
                write_instance_csv(&instance, fs::File::create(dir.join("instance.csv")).map_err(io)?).map_err(io)?;
                trace.write_csv(fs::File::create(dir.join("trace.csv")).map_err(io)?).map_err(io)?;
            }
            let flow = trace.flow_time();
            write_out(
                stdout,
                &json_line(&SimulateOutput {
                    policy,
                    lambdas: instance.params().lambdas().to_vec(),
                    n: instance.n(),
                    seed: instance.seed(),
                    flow,
                    opt_flow,
                    ftpp_flow,
                    cr: flow / opt_flow,
                    excess: flow - ftpp_flow,
                }),
            )
        }
        Command::Experiment { config, out, jobs } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Failure::Usage(format!("reading {}: {e}", config.display())))?;
            let config = ExperimentConfig::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let records = run_experiment(&config, jobs)?;
            let rows = write_experiment_outputs(&out, &config, &records)?;
            write_out(
                stdout,
                &format!("wrote {} records and {} summary rows to {}\n", records.len(), rows.len(), out.display()),
            )
        }
        Command::Figures { out, jobs, scale } => {
            write_figures(&out, scale, jobs)?;
            write_out(stdout, &format!("wrote figure data to {}\n", out.display()))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let text = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            EXIT_FAILURE
        }
    }
}
