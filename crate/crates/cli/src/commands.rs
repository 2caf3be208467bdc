//! Implementations behind the `aos` subcommands.
//!
//! The binary parses flags and hands plain values to these functions.
//! Data outputs (artifacts, CSV, check results) go to stdout or the
//! requested file and are deterministic for fixed flags and seed;
//! timings and progress go to stderr.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use aos_core::aoi::solve_aoi_baseline;
use aos_core::epochs::{decompose_epochs, epoch_area_capped};
use aos_core::params::ModelParams;
use aos_core::policy::Policy;
use aos_core::sim::{simulate, simulate_trace, SimConfig, SimResult};
use aos_core::solver::{
    extract_policy, relative_value_iteration, structured_value_iteration, value_iteration,
    verify_structure, SolveError, ThresholdTable, ValueTable,
};
use aos_core::state::AosState;
use clap::ValueEnum;

use crate::policy_file::{Method, PolicyFile, FORMAT_VERSION};
use crate::CliError;

/// Column order shared by `simulate` and `sweep`. The `error` column is
/// empty on success; failed cells leave the numeric columns empty.
pub const RESULT_HEADER: &str =
    "p,policy,avg_aos,se_aos,avg_aoi,se_aoi,horizon,replications,error";

/// One CSV row for a finished or failed simulation cell.
pub fn result_row(p: f64, label: &str, outcome: &Result<SimResult, String>) -> String {
    match outcome {
        Ok(r) => format!(
            "{p},{label},{},{},{},{},{},{},\n",
            r.avg_aos, r.std_err_aos, r.avg_aoi, r.std_err_aoi, r.horizon, r.replications
        ),
        Err(why) => {
            let why = why.replace(['\n', ','], ";");
            format!("{p},{label},,,,,,,{why}\n")
        }
    }
}

/// Inclusive arithmetic grid over the generation rate. Values are held
/// in whole micro-units so the emitted decimals stay clean; the upper
/// end is included when the step lands on it.
pub fn p_grid(p_min: f64, p_max: f64, p_step: f64) -> Result<Vec<f64>, CliError> {
    let micros = |x: f64, name: &str| -> Result<u64, CliError> {
        if !(x.is_finite() && x > 0.0 && x <= 1.0) {
            return Err(CliError::Usage(format!("--{name} must lie in (0, 1]")));
        }
        let m = (x * 1e6).round();
        if (m - x * 1e6).abs() > 1e-3 || m < 1.0 {
            return Err(CliError::Usage(format!(
                "--{name} must be a multiple of 0.000001"
            )));
        }
        Ok(m as u64)
    };
    let lo = micros(p_min, "p-min")?;
    let hi = micros(p_max, "p-max")?;
    let step = micros(p_step, "p-step")?;
    if lo > hi {
        return Err(CliError::Usage("--p-min must not exceed --p-max".into()));
    }
    Ok((lo..=hi)
        .step_by(step as usize)
        .map(|m| m as f64 / 1e6)
        .collect())
}

/// Default artifact location: `$AOS_OUT_DIR` (or the working directory)
/// with a name derived from the model.
pub fn default_policy_path(params: &ModelParams) -> PathBuf {
    let dir = env::var_os("AOS_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."));
    dir.join(policy_file_name(params))
}

fn policy_file_name(params: &ModelParams) -> String {
    format!(
        "policy_b{}_dmax{}_p{}.json",
        params.b, params.d_max, params.p
    )
}

/// Writes `text` to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| {
                    CliError::Failure(format!("cannot create {}: {e}", dir.display()))
                })?;
            }
            fs::write(path, text).map_err(|e| {
                CliError::Failure(format!("cannot write {}: {e}", path.display()))
            })?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Input problems surface as usage errors; a converged-but-malformed
/// table is a runtime failure. `--max-iters` is validated before any
/// solver call, so `MaxIters` cannot mean non-convergence here.
fn solve_err(e: SolveError) -> CliError {
    match e {
        SolveError::Params(_) | SolveError::Epsilon | SolveError::MaxIters => {
            CliError::Usage(e.to_string())
        }
        SolveError::Structure(_) => CliError::Failure(e.to_string()),
    }
}

/// The baseline solver signals hitting its iteration guard through
/// `MaxIters` instead of a convergence flag.
fn aoi_err(e: SolveError) -> CliError {
    match e {
        SolveError::Params(_) | SolveError::Epsilon => CliError::Usage(e.to_string()),
        SolveError::MaxIters => CliError::Failure(
            "AoI baseline solve stopped before convergence; raise --max-iters".into(),
        ),
        SolveError::Structure(_) => CliError::Failure(e.to_string()),
    }
}

fn ensure_converged(v: &ValueTable, method: Method, epsilon: f64) -> Result<(), CliError> {
    if v.converged {
        return Ok(());
    }
    Err(CliError::Failure(format!(
        "{method} iteration stopped at residual {:e} after {} sweeps without reaching \
         epsilon {epsilon:e}; raise --max-iters",
        v.residual, v.iterations
    )))
}

/// A converged solve from any route: thresholds always, values always,
/// gain from the average-cost route.
pub struct Solved {
    pub values: ValueTable,
    pub thresholds: ThresholdTable,
    pub gain: Option<f64>,
}

pub fn solve_policy(
    params: &ModelParams,
    method: Method,
    epsilon: f64,
    max_iters: usize,
) -> Result<Solved, CliError> {
    match method {
        Method::Plain => {
            let (values, q) = value_iteration(params, epsilon, max_iters).map_err(solve_err)?;
            ensure_converged(&values, method, epsilon)?;
            let thresholds = extract_policy(&q)
                .map_err(|e| CliError::Failure(format!("threshold structure violated: {e}")))?;
            Ok(Solved { values, thresholds, gain: None })
        }
        Method::Structured => {
            let (values, thresholds) =
                structured_value_iteration(params, epsilon, max_iters).map_err(solve_err)?;
            ensure_converged(&values, method, epsilon)?;
            Ok(Solved { values, thresholds, gain: None })
        }
        Method::Relative => {
            let (values, thresholds, gain) =
                relative_value_iteration(params, epsilon, max_iters).map_err(solve_err)?;
            ensure_converged(&values, method, epsilon)?;
            Ok(Solved { values, thresholds, gain: Some(gain) })
        }
    }
}

pub fn solve(
    params: ModelParams,
    method: Method,
    epsilon: f64,
    max_iters: usize,
    with_values: bool,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let start = Instant::now();
    let solved = solve_policy(&params, method, epsilon, max_iters)?;
    eprintln!("wall time {:.2?}", start.elapsed());

    let path = out.unwrap_or_else(|| default_policy_path(&params));
    let file = PolicyFile {
        version: FORMAT_VERSION,
        method,
        params,
        iterations: solved.values.iterations,
        residual: solved.values.residual,
        gain: solved.gain,
        policy: Policy::Threshold(solved.thresholds),
        values: with_values.then_some(solved.values),
    };
    file.save(&path)?;
    println!(
        "solved b={} p={} dmax={} alpha={} by {method}: {} iterations, residual {:e}",
        params.b, params.p, params.d_max, params.alpha, file.iterations, file.residual
    );
    if let Some(gain) = file.gain {
        println!("gain {gain}");
    }
    println!("wrote {}", path.display());
    Ok(())
}

/// Emits the threshold grid of a solved artifact as CSV rows
/// `p,d,l,tau`, ordered by level and then by destination age.
pub fn thresholds(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let file = PolicyFile::load(input)?;
    let Policy::Threshold(table) = &file.policy else {
        return Err(CliError::Failure(format!(
            "{}: a {} policy has no threshold grid",
            input.display(),
            file.policy.kind_name()
        )));
    };
    let p = file.params.p;
    let mut csv = String::from("p,d,l,tau\n");
    for (d, l, tau) in table.entries() {
        csv.push_str(&format!("{p},{d},{l},{tau}\n"));
    }
    emit(out, &csv)
}

/// Built-in policies selectable without an artifact file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinPolicy {
    /// Thresholds solved fresh for the model flags.
    Optimal,
    AlwaysSkip,
    AlwaysSwitch,
    /// Greedy age-minimizing policy of the unbuffered companion chain.
    AoiBaseline,
}

/// Where `simulate` gets its policy: solved in-process, or loaded from
/// an artifact that also fixes the model.
pub enum PolicySpec {
    Builtin {
        params: ModelParams,
        kind: BuiltinPolicy,
        method: Method,
        epsilon: f64,
        max_iters: usize,
    },
    File(PathBuf),
}

fn resolve_policy(spec: &PolicySpec) -> Result<(ModelParams, Policy, &'static str), CliError> {
    match spec {
        PolicySpec::Builtin { params, kind, method, epsilon, max_iters } => {
            let (policy, label) = match kind {
                BuiltinPolicy::AlwaysSkip => (Policy::AlwaysSkip, "always_skip"),
                BuiltinPolicy::AlwaysSwitch => (Policy::AlwaysSwitch, "always_switch"),
                BuiltinPolicy::Optimal => (
                    Policy::Threshold(
                        solve_policy(params, *method, *epsilon, *max_iters)?.thresholds,
                    ),
                    "optimal",
                ),
                BuiltinPolicy::AoiBaseline => (
                    Policy::AoiBaseline(
                        solve_aoi_baseline(params, *epsilon, *max_iters).map_err(aoi_err)?,
                    ),
                    "aoi_baseline",
                ),
            };
            Ok((*params, policy, label))
        }
        PolicySpec::File(path) => {
            let file = PolicyFile::load(path)?;
            let label = file.policy.kind_name();
            Ok((file.params, file.policy, label))
        }
    }
}

/// Simulation shape shared by `simulate` and `sweep`; becomes a
/// [`SimConfig`] once the model is known.
#[derive(Debug, Clone, Copy)]
pub struct SimKnobs {
    pub horizon: u64,
    pub replications: u32,
    pub warmup: u64,
    pub seed: u64,
    pub cap_at_dmax: bool,
}

impl SimKnobs {
    fn config(&self, params: ModelParams) -> Result<SimConfig, CliError> {
        let config = SimConfig {
            params,
            horizon: self.horizon,
            seed: self.seed,
            replications: self.replications,
            warmup: self.warmup,
            cap_at_dmax: self.cap_at_dmax,
        };
        config
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }
}

pub fn simulate_one(
    spec: &PolicySpec,
    knobs: &SimKnobs,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (params, policy, label) = resolve_policy(spec)?;
    let config = knobs.config(params)?;
    let start = Instant::now();
    let result = simulate(&policy, &config).map_err(|e| CliError::Usage(e.to_string()))?;
    eprintln!("simulated {label} in {:.2?}", start.elapsed());
    let mut csv = String::from(RESULT_HEADER);
    csv.push('\n');
    csv.push_str(&result_row(params.p, label, &Ok(result)));
    emit(out, &csv)
}

/// Everything a grid run needs besides the output path.
pub struct SweepSpec {
    pub b: u32,
    pub d_max: u32,
    pub alpha: f64,
    pub grid: Vec<f64>,
    pub method: Method,
    pub epsilon: f64,
    pub max_iters: usize,
    pub knobs: SimKnobs,
}

/// Converts a cell-level failure into its error-column text; usage
/// errors still abort the whole run.
fn cell(result: Result<Policy, CliError>) -> Result<Result<Policy, String>, CliError> {
    match result {
        Ok(policy) => Ok(Ok(policy)),
        Err(CliError::Failure(why)) => Ok(Err(why)),
        Err(usage) => Err(usage),
    }
}

/// Solves and simulates the four reference policies at every grid rate.
/// Rows are buffered and emitted in (p, policy) order; a failed cell
/// keeps its row, with the reason in the error column.
pub fn sweep(spec: &SweepSpec, out: Option<&Path>) -> Result<(), CliError> {
    let mut csv = String::from(RESULT_HEADER);
    csv.push('\n');
    let total = spec.grid.len();
    for (i, &p) in spec.grid.iter().enumerate() {
        let params = ModelParams { b: spec.b, p, d_max: spec.d_max, alpha: spec.alpha }
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let config = spec.knobs.config(params)?;
        let start = Instant::now();
        let optimal = cell(
            solve_policy(&params, spec.method, spec.epsilon, spec.max_iters)
                .map(|s| Policy::Threshold(s.thresholds)),
        )?;
        let baseline = cell(
            solve_aoi_baseline(&params, spec.epsilon, spec.max_iters)
                .map(Policy::AoiBaseline)
                .map_err(aoi_err),
        )?;
        let cells: [(&str, Result<Policy, String>); 4] = [
            ("optimal", optimal),
            ("always_skip", Ok(Policy::AlwaysSkip)),
            ("always_switch", Ok(Policy::AlwaysSwitch)),
            ("aoi_baseline", baseline),
        ];
        for (label, policy) in cells {
            let outcome =
                policy.and_then(|policy| simulate(&policy, &config).map_err(|e| e.to_string()));
            csv.push_str(&result_row(p, label, &outcome));
        }
        eprintln!("[{}/{total}] p={p}: {:.2?}", i + 1, start.elapsed());
    }
    emit(out, &csv)
}

/// What `verify` checks: a fresh solve from flags, or a stored artifact.
pub enum VerifySource {
    Fresh {
        params: ModelParams,
        method: Method,
        epsilon: f64,
        max_iters: usize,
    },
    File(PathBuf),
}

type Check = (&'static str, Result<(), String>);

fn report(check: Check, failed: &mut usize, total: &mut usize) {
    *total += 1;
    match check.1 {
        Ok(()) => println!("ok    {}", check.0),
        Err(why) => {
            *failed += 1;
            println!("FAIL  {}: {why}", check.0);
        }
    }
}

/// Runs the structural suite (when discounted values are available),
/// the threshold-chain checks, and the simulator identities; exits
/// nonzero if anything fails.
pub fn verify(source: &VerifySource, seed: u64) -> Result<(), CliError> {
    let (params, policy, discounted) = match source {
        VerifySource::Fresh { params, method, epsilon, max_iters } => {
            if *method == Method::Relative {
                return Err(CliError::Usage(
                    "the structural suite needs a discounted solve; use --method plain \
                     or structured"
                        .into(),
                ));
            }
            let start = Instant::now();
            let solved = solve_policy(params, *method, *epsilon, *max_iters)?;
            eprintln!(
                "solved b={} p={} dmax={} alpha={} by {method} in {:.2?}: {} iterations, \
                 residual {:e}",
                params.b,
                params.p,
                params.d_max,
                params.alpha,
                start.elapsed(),
                solved.values.iterations,
                solved.values.residual
            );
            let policy = Policy::Threshold(solved.thresholds.clone());
            (*params, policy, Some((solved.values, Some(solved.thresholds))))
        }
        VerifySource::File(path) => {
            let file = PolicyFile::load(path)?;
            eprintln!(
                "loaded {}: {} policy solved by {}",
                path.display(),
                file.policy.kind_name(),
                file.method
            );
            let discounted = match (&file.values, file.method) {
                (Some(v), Method::Plain | Method::Structured) => {
                    let embedded = match &file.policy {
                        Policy::Threshold(t) => Some(t.clone()),
                        _ => None,
                    };
                    Some((v.clone(), embedded))
                }
                (Some(_), Method::Relative) => {
                    println!(
                        "skip  value checks: relative-route values take an undiscounted \
                         lookahead"
                    );
                    None
                }
                (None, _) => {
                    println!(
                        "skip  value checks: no value table stored (re-solve with \
                         --with-values)"
                    );
                    None
                }
            };
            (file.params, file.policy, discounted)
        }
    };

    let mut failed = 0usize;
    let mut total = 0usize;
    if let Some((values, embedded)) = &discounted {
        let q = values.discounted_q();
        for c in verify_structure(values, &q, &params).checks {
            let outcome = if c.passed {
                Ok(())
            } else {
                Err(c.counterexample.unwrap_or_else(|| "no counterexample".into()))
            };
            report((c.name, outcome), &mut failed, &mut total);
        }
        if let Some(table) = embedded {
            let outcome = match extract_policy(&q) {
                Ok(fresh) if fresh.same_decisions(table) => Ok(()),
                Ok(_) => Err("stored thresholds disagree with the values' greedy policy".into()),
                Err(e) => Err(e.to_string()),
            };
            report(("thresholds_match_values", outcome), &mut failed, &mut total);
        }
    } else if let Policy::Threshold(table) = &policy {
        for check in threshold_chain_checks(table, &params) {
            report(check, &mut failed, &mut total);
        }
    }

    for check in simulator_identities(&policy, &params, seed) {
        report(check, &mut failed, &mut total);
    }

    if failed > 0 {
        Err(CliError::Failure(format!("{failed} of {total} checks failed")))
    } else {
        println!("all {total} checks passed");
        Ok(())
    }
}

/// Threshold-shape checks that need no value table: range, the rising
/// chain in the destination age, and the falling chain in the remaining
/// time where the wider block's switching age exists in the narrower.
fn threshold_chain_checks(table: &ThresholdTable, params: &ModelParams) -> Vec<Check> {
    let (b, d_max) = (params.b, params.d_max);
    let range = (|| {
        for (d, l, tau) in table.entries() {
            if tau > b {
                return Err(format!("tau(d={d}, l={l}) = {tau} exceeds b = {b}"));
            }
        }
        Ok(())
    })();
    let in_d = (|| {
        for l in 1..b {
            for d in (b - l)..d_max {
                if let (Some(t1), Some(t2)) = (table.tau(d, l), table.tau(d + 1, l)) {
                    if t2 < t1 {
                        return Err(format!(
                            "tau(d={}, l={l}) = {t2} below tau(d={d}, l={l}) = {t1}",
                            d + 1
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    let in_l = (|| {
        for l in 1..b.saturating_sub(1) {
            for d in (b - l)..=d_max {
                let (Some(t1), Some(t2)) = (table.tau(d, l), table.tau(d, l + 1)) else {
                    continue;
                };
                if t1 <= b - l - 2 && t2 > t1 {
                    return Err(format!(
                        "tau(d={d}, l={}) = {t2} exceeds tau(d={d}, l={l}) = {t1}",
                        l + 1
                    ));
                }
            }
        }
        Ok(())
    })();
    vec![
        ("threshold_range", range),
        ("threshold_monotone_in_d", in_d),
        ("threshold_monotone_in_l", in_l),
    ]
}

/// Trace- and aggregate-level invariants of the simulator under this
/// policy: bit-identical reruns, valid visited states, the AoI floor
/// and post-delivery reset, and the exact epoch-area decomposition,
/// each under both the capped and the free dynamics.
fn simulator_identities(policy: &Policy, params: &ModelParams, seed: u64) -> Vec<Check> {
    const HORIZON: u64 = 20_000;
    let unbounded = ModelParams { d_max: u32::MAX - 1, ..*params };
    let mut rerun = Ok(());
    let mut valid = Ok(());
    let mut aoi = Ok(());
    let mut decomposition = Ok(());
    let mut closed_forms = Ok(());
    let fail = |slot: &mut Result<(), String>, why: String| {
        if slot.is_ok() {
            *slot = Err(why);
        }
    };
    for capped in [false, true] {
        let trace = simulate_trace(policy, params, HORIZON, seed, 0, capped)
            .expect("parameters were validated on entry");
        let again = simulate_trace(policy, params, HORIZON, seed, 0, capped)
            .expect("parameters were validated on entry");
        if trace != again {
            fail(&mut rerun, format!("capped={capped}: rerun from seed {seed} diverged"));
        }
        let check_params = if capped { *params } else { unbounded };
        for t in 0..HORIZON as usize {
            let s = AosState::new(
                trace.aos[t] as u32,
                trace.delta[t] as u32,
                trace.l[t],
                trace.arrivals[t],
            );
            if !s.is_valid(&check_params) {
                fail(&mut valid, format!("capped={capped}, slot {t}: invalid {s:?}"));
            }
            if trace.aoi[t] < u64::from(params.b) {
                fail(
                    &mut aoi,
                    format!("capped={capped}, slot {t}: AoI {} below b", trace.aoi[t]),
                );
            }
        }
        for &boundary in &trace.deliveries {
            if boundary < HORIZON && trace.aoi[boundary as usize] != u64::from(params.b) {
                fail(
                    &mut aoi,
                    format!("capped={capped}: AoI did not reset to b at slot {boundary}"),
                );
            }
        }
        let decomp = decompose_epochs(&trace);
        let per_slot: u64 = trace.aos.iter().sum();
        if decomp.total_area() != per_slot {
            fail(
                &mut decomposition,
                format!(
                    "capped={capped}: epoch areas sum to {} but the trace accumulates \
                     {per_slot}",
                    decomp.total_area()
                ),
            );
        }
        let cap = if capped { u64::from(params.d_max) } else { u64::MAX };
        for record in &decomp.epochs {
            if epoch_area_capped(record, cap) != record.area {
                fail(
                    &mut closed_forms,
                    format!("capped={capped}: closed form disagrees on {record:?}"),
                );
                break;
            }
        }
    }
    let config = SimConfig {
        params: *params,
        horizon: HORIZON,
        seed,
        replications: 3,
        warmup: 100,
        cap_at_dmax: false,
    };
    let aggregate = match (simulate(policy, &config), simulate(policy, &config)) {
        (Ok(a), Ok(b)) if a == b => Ok(()),
        (Ok(_), Ok(_)) => Err("aggregate rerun from one seed diverged".into()),
        (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
    };
    vec![
        ("trace_rerun_bit_identical", rerun),
        ("visited_states_valid", valid),
        ("aoi_floor_and_reset", aoi),
        ("epoch_decomposition_exact", decomposition),
        ("epoch_closed_forms", closed_forms),
        ("aggregate_rerun_bit_identical", aggregate),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_the_default_sweep() {
        let grid = p_grid(0.05, 0.95, 0.05).unwrap();
        assert_eq!(grid.len(), 19);
        assert_eq!(grid[0], 0.05);
        assert_eq!(grid[18], 0.95);
        assert_eq!(p_grid(0.2, 0.6, 0.2).unwrap(), vec![0.2, 0.4, 0.6]);
        // The top end is included only when the step lands on it.
        assert_eq!(p_grid(0.3, 0.7, 0.3).unwrap(), vec![0.3, 0.6]);
        assert_eq!(p_grid(0.5, 0.5, 0.1).unwrap(), vec![0.5]);
    }

    #[test]
    fn grid_rejects_unusable_bounds() {
        assert!(p_grid(0.0, 0.9, 0.1).is_err());
        assert!(p_grid(0.1, 1.1, 0.1).is_err());
        assert!(p_grid(0.9, 0.1, 0.1).is_err());
        assert!(p_grid(0.1, 0.9, 0.0).is_err());
        assert!(p_grid(0.1, 0.9, 1e-9).is_err());
    }

    #[test]
    fn rows_stay_aligned_with_the_header() {
        let result = SimResult {
            avg_aos: 1.5,
            avg_aoi: 2.5,
            std_err_aos: 0.25,
            std_err_aoi: 0.0,
            epoch_count: 7,
            replications: 2,
            horizon: 100,
            warmup: 10,
            aoi_initial: 2,
            capped: false,
        };
        let row = result_row(0.3, "optimal", &Ok(result));
        assert_eq!(row, "0.3,optimal,1.5,0.25,2.5,0,100,2,\n");
        assert_eq!(
            row.trim_end_matches('\n').split(',').count(),
            RESULT_HEADER.split(',').count(),
            "success rows leave the error column empty"
        );
        let failed = result_row(0.3, "optimal", &Err("p must lie in (0, 1]".into()));
        assert_eq!(failed, "0.3,optimal,,,,,,,p must lie in (0; 1]\n");
    }

    #[test]
    fn artifact_names_are_model_derived() {
        let params = ModelParams { b: 10, p: 0.35, d_max: 400, alpha: 0.9999 };
        assert_eq!(policy_file_name(&params), "policy_b10_dmax400_p0.35.json");
    }
}
