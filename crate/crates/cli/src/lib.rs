//! The `turan` command-line tool: solving, constructions, density bounds,
//! a certificate cache and verification suites.

mod args;
pub mod cache;
pub mod verify;

use std::collections::BTreeMap;
use std::io::{self, Read};
use std::time::Duration;

use serde_json::json;
use turan_core::bounds::{self, parse_fraction, BoundReport, DensityInterval};
use turan_core::solver::naive::{naive_oracle, DEFAULT_NAIVE_BUDGET};
use turan_core::{constructions, io as graph_io, Certificate, Hypergraph, SolveConfig, SolveSpec, Solver};

pub use args::{
    BoundsArgs, BoundsKind, Cli, Command, ConstructArgs, ConstructKind, FamilyArg, GraphFormat, Output, SolveArgs,
    VerifyArgs,
};
use cache::Cache;
use verify::VerifyParams;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE_LIMIT: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Core(turan_core::Error),
    Io(io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(turan_core::Error::ResourceLimit(_)) => exit::RESOURCE_LIMIT,
            _ => exit::USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<turan_core::Error> for CliError {
    fn from(e: turan_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Solve(args) => solve(&args),
        Command::Construct(args) => construct(&args),
        Command::Bounds(args) => bounds_cmd(&args),
        Command::Alpha { file, output } => alpha(&file, output),
        Command::Verify(args) => verify_cmd(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn build_spec(args: &SolveArgs) -> CliResult<SolveSpec> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("this family needs --{flag}")));
    let spec = match args.family {
        FamilyArg::T => SolveSpec::t(args.n, need(args.k, "k")?, args.r),
        FamilyArg::Tm => SolveSpec::t_components(args.n, need(args.k, "k")?, args.r, need(args.components, "components")?),
        FamilyArg::Tilde => {
            let seq = args.sequence.clone().ok_or_else(|| CliError::Usage("family tilde needs --sequence".into()))?;
            SolveSpec::tilde_t(args.n, args.r, seq)
        }
        FamilyArg::ConnAlpha => SolveSpec::conn_alpha(args.n, args.r, need(args.s, "s")?),
    };
    if args.at_most && args.family != FamilyArg::Tm {
        return Err(CliError::Usage("--at-most only applies to family tm".into()));
    }
    let spec = spec.enumerate_all(args.enumerate_all);
    spec.validate()?;
    Ok(spec)
}

fn solve(args: &SolveArgs) -> CliResult<i32> {
    let spec = build_spec(args)?;
    let cache = args.cache.as_ref().map(Cache::new);
    if let Some(cache) = &cache {
        if !args.at_most {
            if let Some(cert) = cache.lookup(&spec.key(), args.require_optimal)? {
                log::info!("{}: cached in {}", spec.key(), cache.path().display());
                return emit_certificate(&cert, args.output);
            }
        }
    }
    let cert = if args.naive {
        naive_oracle(&spec, args.node_budget.unwrap_or(DEFAULT_NAIVE_BUDGET))?
    } else {
        let mut solver = Solver::new(SolveConfig {
            threads: args.threads.max(1),
            node_budget: args.node_budget,
            time_budget: args.time_budget.map(Duration::from_secs_f64),
            ..SolveConfig::default()
        });
        if args.at_most {
            at_most(&mut solver, &spec, cache.as_ref())?
        } else {
            solver.solve(&spec)?
        }
    };
    if let Err(problem) = cert.validate() {
        eprintln!("error: certificate failed re-validation: {problem}");
        return Ok(exit::VERIFY_FAILED);
    }
    if let Some(cache) = &cache {
        cache.store(&cert)?;
    }
    emit_certificate(&cert, args.output)
}

/// Best certificate over 1..=m components. It is optimal only if every
/// component count was solved to optimality.
fn at_most(solver: &mut Solver, spec: &SolveSpec, cache: Option<&Cache>) -> CliResult<Certificate> {
    let m = spec.m.expect("family tm");
    let mut best: Option<Certificate> = None;
    let mut all_optimal = true;
    for i in 1..=m {
        let mut sub = spec.clone();
        sub.m = Some(i);
        let cert = solver.solve(&sub)?;
        if let Some(cache) = cache {
            cache.store(&cert)?;
        }
        all_optimal &= cert.optimal;
        let better = match (&best, cert.value) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(b), Some(v)) => b.value.is_none_or(|bv| v < bv),
        };
        if better || best.is_none() {
            best = Some(cert);
        }
    }
    let mut best = best.expect("m >= 1");
    log::info!("best over at most {m} components: {}", best.spec.key());
    best.optimal &= all_optimal;
    Ok(best)
}

fn emit_certificate(cert: &Certificate, output: Output) -> CliResult<i32> {
    match output {
        Output::Json => println!("{}", cert.to_json()),
        Output::Table => print!("{}", certificate_table(cert)),
    }
    Ok(if cert.optimal { exit::OK } else { exit::RESOURCE_LIMIT })
}

fn edge_list(h: &Hypergraph) -> String {
    h.edge_lists()
        .iter()
        .map(|e| format!("{{{}}}", e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn certificate_table(cert: &Certificate) -> String {
    let value = match (cert.infeasible, cert.value) {
        (true, _) => "infeasible".to_string(),
        (false, Some(v)) => v.to_string(),
        (false, None) => "unknown".to_string(),
    };
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<12} {v}\n"));
    line("spec", cert.spec.key());
    line("value", value);
    line("optimal", if cert.optimal { "yes".into() } else { "no (budget exhausted)".into() });
    line("lower bound", cert.stats.lower_bound_used.to_string());
    line("nodes", cert.stats.nodes_expanded.to_string());
    line("elapsed", format!("{} ms", cert.stats.elapsed_ms));
    line("threads", cert.stats.threads.to_string());
    if let Some(w) = &cert.witness {
        line("witness", edge_list(w));
    }
    if let Some(all) = &cert.all_witnesses {
        line("witnesses", all.len().to_string());
    }
    out
}

fn construct(args: &ConstructArgs) -> CliResult<i32> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("this construction needs --{flag}")));
    let h = match args.kind {
        ConstructKind::Turan => constructions::turan_graph(need(args.n, "n")?, need(args.k, "k")?)?,
        ConstructKind::Union => {
            if args.sizes.is_empty() {
                return Err(CliError::Usage("union needs --sizes".into()));
            }
            constructions::disjoint_complete(args.r, &args.sizes)?
        }
        ConstructKind::Balanced => constructions::balanced_complete_union(need(args.n, "n")?, args.r, need(args.m, "components")?)?,
        ConstructKind::ThmMax => constructions::thm_max_witness(need(args.n, "n")?)?,
    };
    match args.format {
        GraphFormat::Text => print!("{}", graph_io::to_text(&h)),
        GraphFormat::Json => println!("{}", graph_io::to_json(&h)),
    }
    Ok(exit::OK)
}

/// Parses `s=lo:hi`.
fn parse_entry(src: &str) -> CliResult<(usize, DensityInterval)> {
    let bad = || CliError::Usage(format!("expected s=lo:hi, got {src:?}"));
    let (s, range) = src.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
    let s = s.trim().parse().map_err(|_| bad())?;
    Ok((s, DensityInterval::new(parse_fraction(lo)?, parse_fraction(hi)?)?))
}

fn bounds_cmd(args: &BoundsArgs) -> CliResult<i32> {
    let table: BTreeMap<usize, DensityInterval> = args.entries.iter().map(|e| parse_entry(e)).collect::<CliResult<_>>()?;
    let report = |components: Option<usize>| -> CliResult<BoundReport> {
        Ok(match components {
            Some(m) => bounds::t_limit_components(args.r, args.k, m, &table)?,
            None => bounds::t_interval_report(args.r, args.k)?,
        })
    };
    let rep = match args.kind {
        BoundsKind::T => report(None)?,
        BoundsKind::TComponents => {
            let m = args.components.ok_or_else(|| CliError::Usage("t-components needs --components".into()))?;
            report(Some(m))?
        }
        BoundsKind::Interval => {
            let t = report(args.components)?;
            let quantity = t.quantity.replacen("t_", "π_", 1);
            let mut pi = BoundReport::new(quantity, t.interval.complement(), t.derivation);
            pi.derivation.push(bounds::Step::new("complement", "π = 1 - t", vec![]));
            pi
        }
        BoundsKind::Report => report(args.components)?,
    };
    match (args.output, args.kind) {
        (Output::Json, _) => println!("{}", rep.to_json()),
        (Output::Table, BoundsKind::Report) => {
            print!("{rep}");
            if !rep.minimizers.is_empty() {
                let names: Vec<String> = rep.minimizers.iter().map(|s| s.to_string()).collect();
                println!("minimizers: {}", names.join(" "));
            }
        }
        (Output::Table, _) => {
            println!("{} in {}  (~[{:.6}, {:.6}])", rep.quantity, rep.interval, rep.interval.lo_f64(), rep.interval.hi_f64());
            if !rep.minimizers.is_empty() {
                let names: Vec<String> = rep.minimizers.iter().map(|s| s.to_string()).collect();
                println!("minimizers: {}", names.join(" "));
            }
        }
    }
    Ok(exit::OK)
}

fn alpha(file: &std::path::Path, output: Output) -> CliResult<i32> {
    let src = if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file)?
    };
    let h = graph_io::parse_any(&src)?;
    let alpha = h.independence_number();
    let seq = h.independence_sequence();
    match output {
        Output::Json => {
            let v = json!({
                "n": h.n(),
                "r": h.r(),
                "edges": h.edge_count(),
                "alpha": alpha,
                "components": h.connected_components(),
                "sequence": seq,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("plain json"));
        }
        Output::Table => {
            println!("vertices    {}", h.n());
            println!("uniformity  {}", h.r());
            println!("edges       {}", h.edge_count());
            println!("alpha       {alpha}");
            println!("components  {}", h.component_count());
            println!("sequence    {seq}");
        }
    }
    Ok(exit::OK)
}

fn verify_cmd(args: &VerifyArgs) -> CliResult<i32> {
    let params = VerifyParams {
        max_n: args.max_n,
        n: args.n,
        max_l: args.max_l,
        max_m: args.max_m,
        samples: args.samples,
        seed: args.seed,
        threads: args.threads,
        extended: args.extended,
    };
    let report = verify::run_suite(&args.suite, &params)
        .ok_or_else(|| CliError::Usage(format!("unknown suite {:?}", args.suite)))?;
    match args.output {
        Output::Json => println!("{}", serde_json::to_string_pretty(&report).expect("plain json")),
        Output::Table => println!("{report}"),
    }
    Ok(if report.passed() { exit::OK } else { exit::VERIFY_FAILED })
}
