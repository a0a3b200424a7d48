//! Command-line front end: random configurations, orbits, limit prediction,
//! the invariant suite and the worked examples.

mod generate;
mod input;
mod output;
mod suite;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::dynamics::{run_orbit, run_orbit_with, OrbitOptions, OrbitState};
use crate::error::{Error, Result};
use crate::limits::{
    estimate_order, is_isodynamic, quad_limit, tetra_limit, triangle_limit, LimitPrediction,
};
use crate::numerics::PrecisionPolicy;
use crate::simplex::{params_from_vertices, EdgeParams, TriangleParams};

pub use generate::{generate_random, random_trapezoid};
pub use input::{parse_input, read_input_text, state_from_input, InputDoc};
pub use output::{orbit_document, Decimal, ORBIT_COLUMNS};
pub use suite::{
    agreement_budget, harmonic_quad, monotonicity_violations, worked_examples, pt_lambda_violations,
    verify_suite, CheckSummary, ExampleOutcome, TRAPEZOID_SEED,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Regime {
    Tetra,
    Quad,
    Triangle,
    Trapezoid,
    /// Vertex-space iteration of a `dim`-simplex.
    #[value(alias = "vertices-d")]
    Vertices,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Regime as ValueEnum>::from_str(s, true).map_err(|_| Error::InvalidInput(format!("unknown regime {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    #[default]
    Csv,
}

/// Everything that determines a run; identical specs give identical output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub regime: Regime,
    pub dim: usize,
    pub steps: usize,
    pub seed: u64,
    pub precision_bits: u32,
    pub output_format: OutputFormat,
    pub input: Option<String>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<PrecisionPolicy> {
        if !(2..=20).contains(&self.dim) {
            return Err(Error::InvalidInput(format!("--dim must be in 2..=20, got {}", self.dim)));
        }
        PrecisionPolicy::new(self.precision_bits)
    }

    /// Parsed input, with the regime resolved against the document's own.
    fn resolve(&self, policy: &PrecisionPolicy, explicit_regime: bool) -> Result<(Regime, Option<InputDoc>)> {
        let Some(raw) = &self.input else {
            return Ok((self.regime, None));
        };
        let doc = parse_input(&read_input_text(raw)?, policy)?;
        let regime = match doc.regime {
            Some(r) if explicit_regime && r != self.regime => {
                return Err(Error::InvalidInput(format!(
                    "--regime {} conflicts with input regime {r}",
                    self.regime
                )))
            }
            Some(r) => r,
            None => self.regime,
        };
        Ok((regime, Some(doc)))
    }

    /// Initial state from `--input`, or a seeded random configuration. A
    /// regime named inside a JSON input replaces `self.regime` unless
    /// `explicit` is set, in which case the two must agree.
    pub fn initial_state(&self, policy: &PrecisionPolicy, explicit: bool) -> Result<(Regime, OrbitState)> {
        let (regime, doc) = self.resolve(policy, explicit)?;
        if let Some(doc) = doc {
            return Ok((regime, state_from_input(regime, self.dim, &doc, policy)?));
        }
        let state = match regime {
            Regime::Trapezoid => OrbitState::Trapezoid(random_trapezoid(self.seed, policy)?),
            Regime::Triangle => {
                let c = generate_random(regime, self.dim, self.seed, policy)?;
                OrbitState::Triangle(TriangleParams::from_vertices(&c, policy)?)
            }
            Regime::Tetra | Regime::Quad => {
                let c = generate_random(regime, self.dim, self.seed, policy)?;
                OrbitState::Params(EdgeParams::new(params_from_vertices(&c)?.values().clone(), policy)?)
            }
            Regime::Vertices => OrbitState::Vertices(generate_random(regime, self.dim, self.seed, policy)?),
        };
        Ok((regime, state))
    }
}

#[derive(Debug, Parser)]
#[command(name = "simplex-orbits", version, about = "Centroid-projection dynamics of inscribed simplices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an orbit and emit one record per step.
    Orbit(SpecArgs),
    /// Predict the limit shape and rate of a configuration.
    Limit(SpecArgs),
    /// Run the invariant suite over random tetrahedra.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of random trials.
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Run an orbit and fit its convergence order.
    Order(SpecArgs),
    /// Reproduce the worked numeric examples with pass/fail thresholds.
    #[command(name = "paper-examples")]
    WorkedExamples(SpecArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Configuration family [default: tetra].
    #[arg(long, value_enum)]
    pub regime: Option<Regime>,
    /// Dimension of the vertices regime.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = crate::numerics::DEFAULT_SIGNIFICAND_BITS)]
    pub precision_bits: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Inline numbers (`2,2,4,2,2,2`), a JSON document, or `@path` to either.
    #[arg(long)]
    pub input: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SpecArgs {
    pub fn spec(&self) -> ExperimentSpec {
        ExperimentSpec {
            regime: self.regime.unwrap_or(Regime::Tetra),
            dim: self.dim,
            steps: self.steps,
            seed: self.seed,
            precision_bits: self.precision_bits,
            output_format: self.format,
            input: self.input.clone(),
        }
    }
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    NumericFault = 3,
}

impl Status {
    pub fn for_error(e: &Error) -> Status {
        if e.is_input_error() {
            Status::InvalidInput
        } else {
            Status::NumericFault
        }
    }
}

/// Runs a parsed command line, writing errors to stderr.
pub fn run(cli: Cli) -> Status {
    match execute(&cli.command) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            Status::for_error(&e)
        }
    }
}

fn emit(args: &SpecArgs, text: &str) -> Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::InvalidInput(format!("cannot write output: {e}")))
        }
    }
}

fn limit_for(state: &OrbitState, regime: Regime, policy: &PrecisionPolicy) -> Result<LimitPrediction> {
    let params = state
        .edge_params(policy)
        .ok_or_else(|| Error::InvalidInput(format!("{regime} configurations have no edge-parameter limit")))?;
    match regime {
        Regime::Quad | Regime::Trapezoid => quad_limit(&params, policy),
        Regime::Vertices if state.as_vertices().is_some_and(|c| c.dim() == 2) => quad_limit(&params, policy),
        _ => tetra_limit(&params, policy),
    }
}

pub fn execute(command: &Command) -> Result<Status> {
    match command {
        Command::Orbit(args) => {
            let spec = args.spec();
            let policy = spec.validate()?;
            let (regime, state) = spec.initial_state(&policy, args.regime.is_some())?;
            let orbit = run_orbit(state, spec.steps, &policy)?;
            let dec = Decimal { digits: policy.output_digits() };
            emit(args, &orbit_document(&regime.to_string(), policy.bits(), &orbit, spec.output_format, dec))?;
            Ok(Status::Ok)
        }
        Command::Limit(args) => {
            let spec = args.spec();
            let policy = spec.validate()?;
            let (regime, state) = spec.initial_state(&policy, args.regime.is_some())?;
            let dec = Decimal { digits: policy.output_digits() };
            let pairs = if regime == Regime::Triangle {
                output::triangle_limit_pairs(&triangle_limit(&policy), dec)
            } else {
                let lim = limit_for(&state, regime, &policy)?;
                let params = state.edge_params(&policy).expect("checked by limit_for");
                output::limit_pairs(&lim, is_isodynamic(&params, &policy), dec)
            };
            emit(args, &output::key_values(&pairs, spec.output_format))?;
            Ok(Status::Ok)
        }
        Command::Order(args) => {
            let spec = args.spec();
            let policy = spec.validate()?;
            let (regime, state) = spec.initial_state(&policy, args.regime.is_some())?;
            let options = OrbitOptions { stop_when_converged: false };
            let orbit = run_orbit_with(state, spec.steps, &policy, options)?;
            let est = estimate_order(&orbit.og_distances(&policy), &policy)?;
            let dec = Decimal { digits: policy.output_digits() };
            let pairs = output::order_pairs(&regime.to_string(), orbit.records.len(), &est, dec);
            emit(args, &output::key_values(&pairs, spec.output_format))?;
            Ok(Status::Ok)
        }
        Command::Verify { spec: args, n } => {
            let spec = args.spec();
            let policy = spec.validate()?;
            let summary = verify_suite(*n, spec.seed, spec.steps, &policy)?;
            let rows: Vec<Vec<Value>> = summary
                .iter()
                .map(|c| {
                    vec![
                        Value::from(c.name),
                        Value::from(c.trials),
                        Value::from(c.violations),
                        Value::from(c.skipped),
                    ]
                })
                .collect();
            let header = ["check", "trials", "violations", "skipped"];
            emit(args, &output::table(&header, &rows, spec.output_format))?;
            let failed = summary.iter().any(|c| c.violations > 0);
            Ok(if failed { Status::VerificationFailed } else { Status::Ok })
        }
        Command::WorkedExamples(args) => {
            let spec = args.spec();
            let policy = spec.validate()?;
            let outcomes = worked_examples(&policy)?;
            let rows: Vec<Vec<Value>> = outcomes
                .iter()
                .map(|o| {
                    vec![
                        Value::from(o.name),
                        Value::from(o.value.clone()),
                        Value::from(o.threshold),
                        Value::from(if o.passed { "pass" } else { "fail" }),
                    ]
                })
                .collect();
            let header = ["example", "value", "threshold", "result"];
            emit(args, &output::table(&header, &rows, spec.output_format))?;
            let failed = outcomes.iter().any(|o| !o.passed);
            Ok(if failed { Status::VerificationFailed } else { Status::Ok })
        }
    }
}
