//! The `berge` command line: argument parsing, run reports and exit codes.
//!
//! Every run prints one JSON [`RunReport`] on stdout and a short human table
//! on stderr. Exit codes: 0 success or verified absence, 1 I/O failure,
//! 2 usage error, 3 witness found, 4 budget exceeded.

pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::berge::{find_mono_berge_clique, find_mono_berge_clique_par, BergeError};
use crate::bounds::{self, BoundsError};
use crate::combinat::{ratio_to_f64, BigRational, MAX_UNIVERSE};
use crate::construct::{self, ColoringPolicy, ConstructError};
use crate::hedgehog::{self, HedgehogError};
use crate::hypergraph::{BergeWitness, Color, CompleteColoring, HyperEdge};
use crate::search::{self, SearchConfig, SearchError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_WITNESS: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Environment variable overriding the search leaf budget.
pub const BUDGET_ENV: &str = "BERGE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "berge", version, about = "Berge-Ramsey lower-bound constructions and checks")]
pub struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expectation, threshold and closed-form bounds.
    Bound(BoundArgs),
    /// Build a forbidden table and the coloring it induces.
    Construct(ConstructArgs),
    /// Exact small Berge-Ramsey numbers by exhaustive search.
    Search(SearchArgs),
    /// Build a hedgehog and check that it is a Berge clique.
    Hedgehog(HedgehogArgs),
    /// Estimate how often a random construction contains a witness.
    Montecarlo(MonteCarloArgs),
    /// Scan a coloring file for a monochromatic Berge clique.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub n: u64,
    /// Color count; defaults to C(r,2)+1.
    #[arg(long)]
    pub c: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub c: Color,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fix the table by conditional expectations instead of sampling it.
    #[arg(long)]
    pub derandomize: bool,
    /// Scan the coloring for a monochromatic Berge-K_n.
    #[arg(long)]
    pub verify: bool,
    /// least, random, or pref:a,b,...
    #[arg(long, default_value = "least")]
    pub policy: String,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("range").required(true).args(["nmax", "big_n"])))]
pub struct SearchArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub c: Color,
    #[arg(long)]
    pub n: usize,
    /// Find the least arrowing N in n..=nmax.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Decide a single N.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Do not fix the first edge's color.
    #[arg(long)]
    pub free_first: bool,
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Write the last counterexample coloring here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HedgehogArgs {
    #[arg(long)]
    pub n: usize,
    /// Write the hypergraph file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub c: Color,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "least")]
    pub policy: String,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

/// One run: enough to reproduce the outcome, which excludes timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub outcome: Value,
    pub exit_code: i32,
    pub wall_time_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        Self::usage(e)
    }
}

impl From<HedgehogError> for CliError {
    fn from(e: HedgehogError) -> Self {
        Self::usage(e)
    }
}

impl From<BergeError> for CliError {
    fn from(e: BergeError) -> Self {
        let code = if matches!(e, BergeError::TooLarge(_)) { EXIT_BUDGET } else { EXIT_USAGE };
        Self { code, message: e.to_string() }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Berge(b) => b.into(),
            other => Self::usage(other),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } | SearchError::NodeBudgetExceeded(_) => Self { code: EXIT_BUDGET, message: e.to_string() },
            SearchError::Berge(b) => b.into(),
            other => Self::usage(other),
        }
    }
}

/// What a command hands back before the report is assembled.
struct Done {
    parameters: Value,
    seed: Option<u64>,
    outcome: Value,
    code: i32,
    table: Vec<(String, String)>,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, the human table and errors to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let argv = std::iter::once("berge".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect();
    let start = Instant::now();
    let (name, result) = dispatch(&cli.command);
    let done = match result {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            return e.code;
        }
    };
    let report = RunReport {
        command: name.to_string(),
        argv,
        parameters: done.parameters,
        seed: done.seed,
        outcome: done.outcome,
        exit_code: done.code,
        wall_time_ms: start.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let text = report.to_json();
    let _ = writeln!(out, "{text}");
    let width = done.table.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &done.table {
        let _ = writeln!(err, "{k:<width$}  {v}");
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            let e = CliError::io(path, e);
            let _ = writeln!(err, "error: {}", e.message);
            return e.code;
        }
    }
    done.code
}

fn dispatch(command: &Command) -> (&'static str, Result<Done, CliError>) {
    match command {
        Command::Bound(a) => ("bound", cmd_bound(a)),
        Command::Construct(a) => ("construct", cmd_construct(a)),
        Command::Search(a) => ("search", cmd_search(a)),
        Command::Hedgehog(a) => ("hedgehog", cmd_hedgehog(a)),
        Command::Montecarlo(a) => ("montecarlo", cmd_montecarlo(a)),
        Command::Verify(a) => ("verify", cmd_verify(a)),
    }
}

fn rational(q: &BigRational) -> Value {
    json!({ "exact": format!("{}/{}", q.numer(), q.denom()), "approx": ratio_to_f64(q) })
}

fn row(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn parse_policy(text: &str, seed: u64) -> Result<ColoringPolicy, CliError> {
    match text {
        "least" => Ok(ColoringPolicy::LeastAllowed),
        "random" => Ok(ColoringPolicy::RandomAllowed { seed }),
        _ => {
            let list = text
                .strip_prefix("pref:")
                .ok_or_else(|| CliError::usage(format!("unknown policy {text:?}")))?;
            list.split(',')
                .map(|x| x.trim().parse::<Color>())
                .collect::<Result<Vec<_>, _>>()
                .map(ColoringPolicy::FixedPreference)
                .map_err(|e| CliError::usage(format!("policy {text:?}: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn witness_json(w: &BergeWitness) -> Value {
    let assignment: Vec<Value> = w
        .assignment
        .iter()
        .map(|&((u, v), e)| json!({ "pair": [u, v], "edge": e.vertices() }))
        .collect();
    json!({ "color": w.color, "core": w.core, "assignment": assignment })
}

/// Finds a witness and checks it against the coloring before reporting it.
fn scan(col: &CompleteColoring, n: usize, workers: usize) -> Result<Option<BergeWitness>, CliError> {
    let w = if workers > 1 { find_mono_berge_clique_par(col, n, workers)? } else { find_mono_berge_clique(col, n)? };
    if let Some(w) = &w {
        w.validate_against(col)
            .map_err(|v| CliError { code: EXIT_IO, message: format!("internal witness check failed: {v:?}") })?;
    }
    Ok(w)
}

fn check_universe(big_n: usize) -> Result<(), CliError> {
    if big_n > MAX_UNIVERSE {
        return Err(CliError::usage(format!("N = {big_n} exceeds the cap of {MAX_UNIVERSE}")));
    }
    Ok(())
}

fn cmd_bound(a: &BoundArgs) -> Result<Done, CliError> {
    let rep = bounds::bound_report(a.r, a.n, a.c)?;
    let parameters = json!({ "r": a.r, "n": a.n, "c": rep.c });
    let outcome = json!({
        "c": rep.c,
        "threshold_n": rep.threshold_n,
        "expectation_at_threshold": rep.expectation.as_ref().map(rational),
        "theorem_bound": rational(&rep.theorem_bound),
        "sufficiency_ok": rep.sufficiency_ok,
        "argument_applies": rep.argument_applies,
        "known": bounds::known_exact(a.r, rep.c, a.n),
    });
    let table = vec![
        row("c", rep.c),
        row("threshold N", rep.threshold_n.map_or("none".into(), |t| t.to_string())),
        row("E(threshold)", rep.expectation.as_ref().map_or("-".into(), |q| format!("{:.6}", ratio_to_f64(q)))),
        row("theorem bound", format!("{:.6}", ratio_to_f64(&rep.theorem_bound))),
        row("sufficiency", rep.sufficiency_ok),
    ];
    Ok(Done { parameters, seed: None, outcome, code: EXIT_OK, table })
}

fn cmd_construct(a: &ConstructArgs) -> Result<Done, CliError> {
    check_universe(a.big_n)?;
    if a.r < 2 || a.r > a.big_n {
        return Err(CliError::usage(format!("need 2 <= r <= N, got r = {}, N = {}", a.r, a.big_n)));
    }
    if a.n < 2 {
        return Err(CliError::usage(format!("need n >= 2, got {}", a.n)));
    }
    let policy = parse_policy(&a.policy, a.seed)?;
    policy.validate(a.c)?;
    let mut outcome = serde_json::Map::new();
    let mut table = Vec::new();
    let forbidden = if a.derandomize {
        let cert = construct::derandomize_forbidden(a.big_n, a.n, a.c)?;
        let verified = cert.verify();
        write_file(&a.out_dir.join("certificate.txt"), &format::write_certificate(&cert))?;
        outcome.insert(
            "certificate".into(),
            json!({
                "file": "certificate.txt",
                "compatible_count": cert.compatible_count.to_string(),
                "initial_expectation": rational(&cert.initial_expectation),
                "certifying": cert.is_certifying(),
                "verified": verified,
            }),
        );
        table.push(row("compatible count", cert.compatible_count));
        table.push(row("certificate", if verified { "verified" } else { "FAILED" }));
        cert.forbidden
    } else {
        construct::random_forbidden(a.big_n, a.c, a.seed)?
    };
    let (col, violations) = construct::lenient_coloring(&forbidden, a.r, &policy)?;
    write_file(&a.out_dir.join("forbidden.txt"), &format::write_forbidden(&forbidden))?;
    write_file(&a.out_dir.join("coloring.txt"), &format::write_coloring(&col))?;
    let sizes: Vec<usize> = (0..a.c).map(|x| col.class_size(x)).collect();
    outcome.insert("forbidden_file".into(), json!("forbidden.txt"));
    outcome.insert("coloring_file".into(), json!("coloring.txt"));
    outcome.insert("class_sizes".into(), json!(sizes));
    outcome.insert("rule_violations".into(), json!(violations.len()));
    table.push(row("edges", col.edge_count()));
    table.push(row("rule violations", violations.len()));
    let mut code = EXIT_OK;
    if a.verify {
        let w = scan(&col, a.n, a.workers)?;
        table.push(row("witness", w.as_ref().map_or("absent".into(), |w| format!("color {:?} core {:?}", w.color, w.core))));
        if w.is_some() {
            code = EXIT_WITNESS;
        }
        outcome.insert("witness".into(), w.as_ref().map_or(Value::Null, witness_json));
    }
    let parameters = json!({
        "N": a.big_n, "n": a.n, "r": a.r, "c": a.c,
        "derandomize": a.derandomize, "verify": a.verify,
        "policy": policy, "out_dir": a.out_dir, "workers": a.workers,
    });
    Ok(Done { parameters, seed: Some(a.seed), outcome: Value::Object(outcome), code, table })
}

fn search_config(a: &SearchArgs) -> Result<SearchConfig, CliError> {
    let mut cfg = SearchConfig {
        fix_first_color: !a.free_first,
        node_budget: a.node_budget,
        ..SearchConfig::default()
    };
    if let Ok(text) = std::env::var(BUDGET_ENV) {
        cfg.max_nominal_leaves = text
            .trim()
            .parse()
            .map_err(|e| CliError::usage(format!("{BUDGET_ENV}={text:?}: {e}")))?;
    }
    Ok(cfg)
}

fn cmd_search(a: &SearchArgs) -> Result<Done, CliError> {
    let cfg = search_config(a)?;
    let parameters = json!({
        "r": a.r, "c": a.c, "n": a.n, "nmax": a.nmax, "N": a.big_n,
        "fix_first_color": cfg.fix_first_color,
        "max_nominal_leaves": cfg.max_nominal_leaves.to_string(),
        "node_budget": a.node_budget,
    });
    let steps = match (a.big_n, a.nmax) {
        (Some(big_n), _) => vec![(big_n, search::ramsey_decide(a.r, a.c, a.n, big_n, &cfg)?)],
        (None, Some(nmax)) => search::ramsey_number_exact(a.r, a.c, a.n, nmax, &cfg)?.steps,
        (None, None) => return Err(CliError::usage("one of --nmax or --N is required")),
    };
    let value = match a.nmax {
        Some(nmax) if a.big_n.is_none() => Some(match steps.iter().find(|(_, o)| o.arrowing) {
            Some(&(big_n, _)) => search::ExactValue::Found(big_n),
            None => search::ExactValue::NotFoundBelow(nmax),
        }),
        _ => None,
    };
    if let Some(path) = &a.out {
        if let Some(col) = steps.iter().rev().find_map(|(_, o)| o.counterexample.as_ref()) {
            write_file(path, &format::write_coloring(col))?;
        }
    }
    let explored: u64 = steps.iter().map(|(_, o)| o.explored).sum();
    let step_json: Vec<Value> = steps
        .iter()
        .map(|(big_n, o)| json!({ "N": big_n, "arrowing": o.arrowing, "explored": o.explored }))
        .collect();
    let mut table: Vec<_> = steps
        .iter()
        .map(|(big_n, o)| row(&format!("N = {big_n}"), if o.arrowing { "arrows" } else { "counterexample" }))
        .collect();
    if let Some(v) = value {
        table.push(row(
            "value",
            match v {
                search::ExactValue::Found(x) => x.to_string(),
                search::ExactValue::NotFoundBelow(x) => format!("> {x}"),
            },
        ));
    }
    table.push(row("explored", explored));
    let outcome = json!({ "value": value, "steps": step_json, "explored": explored });
    Ok(Done { parameters, seed: None, outcome, code: EXIT_OK, table })
}

fn cmd_hedgehog(a: &HedgehogArgs) -> Result<Done, CliError> {
    let h = hedgehog::build_hedgehog(a.n)?;
    let emb = hedgehog::is_berge_clique(&h)?;
    if let Some(path) = &a.out {
        write_file(path, &format::write_hypergraph(h.hypergraph()))?;
    }
    let g = h.hypergraph();
    let outcome = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "invariants_ok": h.check_invariants().is_ok(),
        "berge_clique": emb.is_some(),
        "embedding": emb.as_ref().map(|e| json!({
            "vertex_map": e.vertex_map,
            "edge_map": e.edge_map.iter().map(|x: &HyperEdge| x.vertices()).collect::<Vec<_>>(),
        })),
    });
    let table = vec![
        row("vertices", g.vertex_count()),
        row("edges", g.edge_count()),
        row("berge clique", emb.is_some()),
    ];
    Ok(Done { parameters: json!({ "n": a.n }), seed: None, outcome, code: EXIT_OK, table })
}

fn cmd_montecarlo(a: &MonteCarloArgs) -> Result<Done, CliError> {
    check_universe(a.big_n)?;
    let policy = parse_policy(&a.policy, a.seed)?;
    let est = construct::estimate_mono_probability(a.big_n, a.n, a.r, a.c, a.trials, a.seed, &policy, a.workers)?;
    let bound = bounds::expected_mono_upper(a.big_n as u64, a.n as u64, a.c as u64);
    let parameters = json!({
        "N": a.big_n, "n": a.n, "r": a.r, "c": a.c, "trials": a.trials,
        "policy": policy, "workers": a.workers,
    });
    let table = vec![
        row("trials", est.trials),
        row("hits", est.hits),
        row("infeasible", est.infeasible),
        row("fraction", format!("{:.6}", est.fraction)),
        row("95% interval", format!("[{:.6}, {:.6}]", est.ci_low, est.ci_high)),
        row("expectation", format!("{:.6}", ratio_to_f64(&bound))),
    ];
    let outcome = json!({ "estimate": est, "expectation": rational(&bound) });
    Ok(Done { parameters, seed: Some(a.seed), outcome, code: EXIT_OK, table })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Done, CliError> {
    let text = std::fs::read_to_string(&a.coloring).map_err(|e| CliError::io(&a.coloring, e))?;
    let col = format::read_coloring(&text).map_err(|e| CliError::usage(format!("{}: {e}", a.coloring.display())))?;
    if a.n < 2 {
        return Err(CliError::usage(format!("need n >= 2, got {}", a.n)));
    }
    let w = scan(&col, a.n, a.workers)?;
    let parameters = json!({ "coloring": a.coloring, "n": a.n, "workers": a.workers });
    let table = vec![
        row("N", col.vertex_count()),
        row("r", col.uniformity()),
        row("witness", w.as_ref().map_or("absent".into(), |w| format!("color {:?} core {:?}", w.color, w.core))),
    ];
    let outcome = json!({
        "N": col.vertex_count(), "r": col.uniformity(), "c": col.colors_count(),
        "witness": w.as_ref().map_or(Value::Null, witness_json),
    });
    let code = if w.is_some() { EXIT_WITNESS } else { EXIT_OK };
    Ok(Done { parameters, seed: None, outcome, code, table })
}
