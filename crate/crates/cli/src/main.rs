//! `aos`: solve, inspect, verify, and simulate synchronization-age
//! scheduling policies on a rate-limited link.

use std::path::PathBuf;
use std::process::ExitCode;

use aos_cli::commands::{self, BuiltinPolicy, PolicySpec, SimKnobs, SweepSpec, VerifySource};
use aos_cli::policy_file::Method;
use aos_cli::CliError;
use aos_core::params::ModelParams;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "aos",
    version,
    about = "Age-of-synchronization scheduling: solvers, policies, and simulation",
    after_help = "Exit status: 0 success; 1 convergence or verification failure; \
                  2 usage or parse error.\n\
                  AOS_OUT_DIR sets the directory for default artifact paths.\n\
                  Data goes to stdout (or --out) and is deterministic for fixed flags \
                  and seed; timings and progress go to stderr."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArgs {
    /// Slots per update transmission [default: 10].
    #[arg(long)]
    b: Option<u32>,
    /// Per-slot update generation probability, in (0, 1].
    #[arg(long)]
    p: Option<f64>,
    /// Destination-age truncation of the solved chain [default: 400].
    #[arg(long = "dmax")]
    d_max: Option<u32>,
    /// Discount factor, in (0, 1) [default: 0.9999].
    #[arg(long)]
    alpha: Option<f64>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams, CliError> {
        let p = self
            .p
            .ok_or_else(|| CliError::Usage("--p is required".into()))?;
        ModelParams {
            b: self.b.unwrap_or(10),
            p,
            d_max: self.d_max.unwrap_or(400),
            alpha: self.alpha.unwrap_or(0.9999),
        }
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))
    }

    fn any_given(&self) -> bool {
        self.b.is_some() || self.p.is_some() || self.d_max.is_some() || self.alpha.is_some()
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Solver route [default: structured; simulate and sweep use relative].
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Stopping tolerance: sup-norm residual for the discounted routes,
    /// span for relative [default: 1e-6; 1e-8 for relative].
    #[arg(long)]
    epsilon: Option<f64>,
    /// Iteration guard.
    #[arg(long, default_value_t = 1_000_000)]
    max_iters: usize,
}

impl SolverArgs {
    fn resolve(&self, fallback: Method) -> Result<(Method, f64, usize), CliError> {
        if self.max_iters < 1 {
            return Err(CliError::Usage("--max-iters must be at least 1".into()));
        }
        let method = self.method.unwrap_or(fallback);
        let epsilon = self.epsilon.unwrap_or(match method {
            Method::Relative => 1e-8,
            _ => 1e-6,
        });
        Ok((method, epsilon, self.max_iters))
    }
}

#[derive(Args)]
struct SimArgs {
    /// Slots per replication.
    #[arg(long, default_value_t = 500_000, conflicts_with = "paper_scale")]
    horizon: u64,
    /// Independent replications behind the standard errors.
    #[arg(long, default_value_t = 20, conflicts_with = "paper_scale")]
    replications: u32,
    /// Leading slots excluded from the averages.
    #[arg(long, default_value_t = 10_000)]
    warmup: u64,
    /// Base RNG seed; replication r draws from substream r.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// One ten-million-slot replication per cell instead of the desk
    /// default of twenty times half a million.
    #[arg(long)]
    paper_scale: bool,
    /// Clamp the destination age at dmax, reproducing the truncated
    /// chain the solver works on.
    #[arg(long)]
    cap_at_dmax: bool,
}

impl SimArgs {
    fn knobs(&self) -> SimKnobs {
        let (horizon, replications) = if self.paper_scale {
            (10_000_000, 1)
        } else {
            (self.horizon, self.replications)
        };
        SimKnobs {
            horizon,
            replications,
            warmup: self.warmup,
            seed: self.seed,
            cap_at_dmax: self.cap_at_dmax,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the truncated chain and write the policy artifact.
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Embed the converged value table (enables the full `verify
        /// --input` suite).
        #[arg(long)]
        with_values: bool,
        /// Output path [default: $AOS_OUT_DIR/policy_b{b}_dmax{dmax}_p{p}.json].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a solved policy's switch thresholds as CSV rows p,d,l,tau.
    Thresholds {
        /// Policy file written by `solve`.
        #[arg(long)]
        input: PathBuf,
        /// Output path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate one policy and print a result row.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Built-in policy to run [default: optimal].
        #[arg(long, value_enum, conflicts_with = "policy_file")]
        policy: Option<BuiltinPolicy>,
        /// Simulate the policy stored in this artifact; the file fixes
        /// the model, so model flags conflict with it.
        #[arg(long)]
        policy_file: Option<PathBuf>,
        /// Output path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve and simulate the four reference policies over a grid of
    /// generation rates.
    Sweep {
        /// Slots per update transmission.
        #[arg(long, default_value_t = 10)]
        b: u32,
        /// Destination-age truncation of the solved chain.
        #[arg(long = "dmax", default_value_t = 400)]
        d_max: u32,
        /// Discount factor for the discounted routes.
        #[arg(long, default_value_t = 0.9999)]
        alpha: f64,
        /// Smallest generation rate on the grid.
        #[arg(long, default_value_t = 0.05)]
        p_min: f64,
        /// Largest generation rate on the grid (included when the step
        /// lands on it).
        #[arg(long, default_value_t = 0.95)]
        p_max: f64,
        /// Grid step.
        #[arg(long, default_value_t = 0.05)]
        p_step: f64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Output path [default: stdout].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check structural properties and simulator identities; exit 0 iff
    /// all pass.
    Verify {
        /// Verify this artifact instead of solving fresh from the model
        /// flags; the file fixes the model.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Seed for the simulator-identity checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { model, solver, with_values, out } => {
            let params = model.params()?;
            let (method, epsilon, max_iters) = solver.resolve(Method::Structured)?;
            commands::solve(params, method, epsilon, max_iters, with_values, out)
        }
        Command::Thresholds { input, out } => commands::thresholds(&input, out.as_deref()),
        Command::Simulate { model, solver, sim, policy, policy_file, out } => {
            let knobs = sim.knobs();
            let spec = match policy_file {
                Some(path) => {
                    if model.any_given() {
                        return Err(CliError::Usage(
                            "model flags conflict with --policy-file; the file fixes the \
                             model"
                                .into(),
                        ));
                    }
                    PolicySpec::File(path)
                }
                None => {
                    let (method, epsilon, max_iters) = solver.resolve(Method::Relative)?;
                    PolicySpec::Builtin {
                        params: model.params()?,
                        kind: policy.unwrap_or(BuiltinPolicy::Optimal),
                        method,
                        epsilon,
                        max_iters,
                    }
                }
            };
            commands::simulate_one(&spec, &knobs, out.as_deref())
        }
        Command::Sweep { b, d_max, alpha, p_min, p_max, p_step, solver, sim, out } => {
            let (method, epsilon, max_iters) = solver.resolve(Method::Relative)?;
            let spec = SweepSpec {
                b,
                d_max,
                alpha,
                grid: commands::p_grid(p_min, p_max, p_step)?,
                method,
                epsilon,
                max_iters,
                knobs: sim.knobs(),
            };
            commands::sweep(&spec, out.as_deref())
        }
        Command::Verify { input, model, solver, seed } => {
            let source = match input {
                Some(path) => {
                    if model.any_given() {
                        return Err(CliError::Usage(
                            "model flags conflict with --input; the file fixes the model"
                                .into(),
                        ));
                    }
                    VerifySource::File(path)
                }
                None => {
                    let (method, epsilon, max_iters) = solver.resolve(Method::Structured)?;
                    VerifySource::Fresh { params: model.params()?, method, epsilon, max_iters }
                }
            };
            commands::verify(&source, seed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.status())
        }
    }
}
