//! Verification suites: each runs a family of exact checks and reports one
//! row per check.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use turan_core::bounds::{
    average_lemma_check, binom_shift_compare, de_caen_lower, jensen_check, max_components, sidorenko_upper,
    thm_max_value,
};
use turan_core::solver::naive::{naive_oracle, DEFAULT_NAIVE_BUDGET};
use turan_core::{binom, constructions, Error, Hypergraph, IndependenceSequence, Result, SolveConfig, SolveSpec, Solver};

pub const SUITES: &[&str] = &[
    "thm-max",
    "lem-components",
    "isolated",
    "component-cap",
    "jensen",
    "binom",
    "sandwich",
    "average-lemma",
    "oracle",
    "density-monotone",
    "decompose-convergence",
];

/// Knobs shared by the suites; each suite reads the ones it needs.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub max_n: Option<usize>,
    pub n: Option<usize>,
    pub max_l: Option<usize>,
    pub max_m: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
    /// Also run the larger, slower instances.
    pub extended: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            max_n: None,
            n: None,
            max_l: None,
            max_m: None,
            samples: 1000,
            seed: 1,
            threads: 1,
            extended: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub check: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<Row>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    /// Longest single check.
    pub fn slowest(&self) -> Duration {
        Duration::from_millis(self.rows.iter().map(|r| r.elapsed_ms).max().unwrap_or(0))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
        writeln!(f, "{:<width$}  {:<4}  {:>8}  detail", "check", "pass", "ms")?;
        for row in &self.rows {
            let mark = if row.pass { "ok" } else { "FAIL" };
            writeln!(f, "{:<width$}  {:<4}  {:>8}  {}", row.check, mark, row.elapsed_ms, row.detail)?;
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        write!(f, "{}: {passed}/{} passed in {} ms", self.suite, self.rows.len(), self.elapsed_ms)
    }
}

/// Collects rows and times each one.
struct Rows(Vec<Row>);

impl Rows {
    fn check(&mut self, check: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let started = Instant::now();
        let (pass, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.0.push(Row { check: check.into(), pass, detail, elapsed_ms: started.elapsed().as_millis() as u64 });
    }
}

/// Runs a suite by name. `None` for an unknown name.
pub fn run_suite(name: &str, params: &VerifyParams) -> Option<SuiteReport> {
    let started = Instant::now();
    let mut rows = Rows(Vec::new());
    match name {
        "thm-max" => thm_max(params, &mut rows),
        "lem-components" => lem_components(params, &mut rows),
        "isolated" => witness_shape(params, &mut rows, false),
        "component-cap" => witness_shape(params, &mut rows, true),
        "jensen" => jensen(params, &mut rows),
        "binom" => binom_grid(params, &mut rows),
        "sandwich" => sandwich(params, &mut rows),
        "average-lemma" => average_lemma(params, &mut rows),
        "oracle" => oracle(params, &mut rows),
        "density-monotone" => density_monotone(params, &mut rows),
        "decompose-convergence" => decompose_convergence(params, &mut rows),
        _ => return None,
    }
    Some(SuiteReport { suite: name.to_string(), rows: rows.0, elapsed_ms: started.elapsed().as_millis() as u64 })
}

fn solver(params: &VerifyParams) -> Solver {
    Solver::new(SolveConfig { threads: params.threads.max(1), ..SolveConfig::default() })
}

fn thm_max(params: &VerifyParams, rows: &mut Rows) {
    let max_n = params.max_n.unwrap_or(if params.extended { 10 } else { 8 });
    let mut solver = solver(params);
    for n in 6..=max_n {
        rows.check(format!("T({n},5,3;2)"), || {
            let cert = solver.min_cover_components(n, 5, 3, 2)?;
            let expected = thm_max_value(n)?;
            let pass = cert.optimal && cert.value == Some(expected);
            Ok((pass, format!("solver {:?}, closed form {expected}", cert.value)))
        });
        rows.check(format!("two halves, n={n}"), || {
            let h = constructions::thm_max_witness(n)?;
            let expected = thm_max_value(n)?;
            let pass = h.edge_count() as u64 == expected && h.satisfies_covering(5)? && h.component_count() == 2;
            Ok((pass, format!("{} edges, {} components", h.edge_count(), h.component_count())))
        });
    }
}

/// Counts for the exhaustive component check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub graphs: u64,
    pub disconnected_covering: u64,
    pub three_components: u64,
    pub two_without_isolated: u64,
    pub two_with_isolated: u64,
    pub violations: u64,
}

/// Every 3-graph on `n` vertices with α ≤ 4 and at least two components
/// has at most three components; with three it is two isolated vertices
/// and a complete part; with two and no isolated vertex both parts are
/// complete; with an isolated vertex the rest has α ≤ 3.
pub fn component_census(n: usize) -> Result<ComponentCensus> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!("the component structure holds for n >= 6, got {n}")));
    }
    let triples: Vec<u64> = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (1u64 << a) | (1 << b) | (1 << c))))
        .collect();
    let count = triples.len();
    if count > 20 {
        return Err(Error::InvalidParameter(format!("exhaustive search over 2^{count} graphs is out of reach; use n <= 6")));
    }
    let mut census = ComponentCensus::default();
    for subset in 0u64..(1u64 << count) {
        census.graphs += 1;
        let edges: Vec<u64> = (0..count).filter(|i| subset >> i & 1 == 1).map(|i| triples[i]).collect();
        let h = Hypergraph::from_masks(n, 3, edges)?;
        let comps = h.components();
        if comps.len() < 2 || h.independence_number() > 4 {
            continue;
        }
        census.disconnected_covering += 1;
        let singles = comps.iter().filter(|c| c.count_ones() == 1).count();
        let complete = |mask: u64| h.induced(mask).edge_count() as u64 == binom(mask.count_ones() as usize, 3);
        let ok = match (comps.len(), singles) {
            (3, _) => {
                census.three_components += 1;
                singles == 2 && comps.iter().all(|&c| c.count_ones() == 1 || complete(c))
            }
            (2, 0) => {
                census.two_without_isolated += 1;
                comps.iter().all(|&c| complete(c))
            }
            (2, _) => {
                census.two_with_isolated += 1;
                let rest = comps.iter().copied().find(|c| c.count_ones() > 1).unwrap_or(0);
                h.induced(rest).independence_number() <= 3
            }
            _ => false,
        };
        if !ok {
            census.violations += 1;
        }
    }
    Ok(census)
}

fn lem_components(params: &VerifyParams, rows: &mut Rows) {
    let n = params.n.unwrap_or(6);
    rows.check(format!("all 3-graphs on {n} vertices"), || {
        let c = component_census(n)?;
        let detail = format!(
            "{} graphs, {} disconnected with α≤4 (3 comps: {}, 2 comps: {} + {} with an isolated vertex), {} violations",
            c.graphs, c.disconnected_covering, c.three_components, c.two_without_isolated, c.two_with_isolated, c.violations
        );
        Ok((c.violations == 0, detail))
    });
}

/// Instances whose optimal witnesses are all enumerated.
fn shape_instances(params: &VerifyParams) -> Vec<(usize, usize, usize)> {
    let mut out = vec![(5, 4, 3), (6, 4, 3)];
    if params.extended {
        out.push((8, 5, 3));
    }
    out
}

fn witness_shape(params: &VerifyParams, rows: &mut Rows, cap: bool) {
    let mut solver = solver(params);
    for (n, k, r) in shape_instances(params) {
        rows.check(format!("T({n},{k},{r}) all witnesses"), || {
            let cert = solver.solve(&SolveSpec::t(n, k, r).enumerate_all(true))?;
            let all = cert.all_witnesses.unwrap_or_default();
            let limit = max_components(k, r)?;
            let bad = all
                .iter()
                .filter(|h| if cap { h.component_count() > limit } else { h.min_degree() == 0 })
                .count();
            let what = if cap { format!("more than {limit} components") } else { "an isolated vertex".into() };
            let pass = cert.optimal && !all.is_empty() && bad == 0;
            Ok((pass, format!("{} witnesses of size {:?}, {bad} with {what}", all.len(), cert.value)))
        });
    }
}

fn jensen(params: &VerifyParams, rows: &mut Rows) {
    let samples = params.samples;
    rows.check(format!("{samples} random instances"), || {
        let mut rng = StdRng::seed_from_u64(params.seed);
        let (mut below, mut off_star, mut worst) = (0, 0, 0.0f64);
        for _ in 0..samples {
            let r = rng.gen_range(2..=4);
            let m = rng.gen_range(1..=6);
            let t: Vec<f64> = (0..m).map(|_| rng.gen_range(0.01..10.0)).collect();
            let w: Vec<f64> = (0..m).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = w.iter().sum();
            let p: Vec<f64> = w.iter().map(|x| x / total).collect();
            let rep = jensen_check(&t, &p, r)?;
            if !rep.holds {
                below += 1;
            }
            let eq = jensen_check(&t, &rep.p_star, r)?;
            let gap = (eq.lhs - eq.rhs).abs();
            worst = worst.max(gap);
            if gap > 1e-9 {
                off_star += 1;
            }
        }
        let detail = format!("{below} below the bound, {off_star} off equality at p*, max gap at p* {worst:.2e}");
        Ok((below == 0 && off_star == 0, detail))
    });
}

fn binom_grid(params: &VerifyParams, rows: &mut Rows) {
    let top = params.max_n.unwrap_or(60);
    rows.check(format!("2 <= r < a <= b <= {top}"), || {
        let (mut total, mut bad) = (0u64, 0u64);
        for r in 2..top {
            for a in r + 1..=top {
                for b in a..=top {
                    total += 1;
                    if !binom_shift_compare(a, b, r)? {
                        bad += 1;
                    }
                }
            }
        }
        Ok((bad == 0, format!("{total} triples, {bad} failures")))
    });
}

fn sandwich(params: &VerifyParams, rows: &mut Rows) {
    let max_l = params.max_l.unwrap_or(1000);
    rows.check(format!("1/binom(l,2) <= 4/l^2, l <= {max_l}"), || {
        let mut bad = Vec::new();
        for l in 2..=max_l {
            if de_caen_lower(3, l)? > sidorenko_upper(3, l)?.value {
                bad.push(l);
            }
        }
        Ok((bad.is_empty(), format!("{} values of l, failures at {bad:?}", max_l.saturating_sub(1))))
    });
}

fn average_lemma(params: &VerifyParams, rows: &mut Rows) {
    let max_l = params.max_l.unwrap_or(50);
    rows.check(format!("l = 2..={max_l}"), || {
        let mut bad = Vec::new();
        for l in 2..=max_l {
            if !average_lemma_check(l)?.passed() {
                bad.push(l);
            }
        }
        Ok((bad.is_empty(), format!("failures at {bad:?}")))
    });
}

fn oracle(params: &VerifyParams, rows: &mut Rows) {
    let mut specs: Vec<SolveSpec> =
        [(5, 4, 3), (5, 5, 3), (6, 4, 3), (6, 5, 3)].iter().map(|&(n, k, r)| SolveSpec::t(n, k, r)).collect();
    specs.push(SolveSpec::t_components(6, 5, 3, 2));
    specs.push(SolveSpec::t_components(6, 5, 3, 3));
    let mut solver = solver(params);
    for spec in specs {
        rows.check(spec.key(), || {
            let fast = solver.solve(&spec)?;
            let slow = naive_oracle(&spec, DEFAULT_NAIVE_BUDGET)?;
            let mut pass = fast.optimal && fast.value == slow.value && fast.validate().is_ok();
            // Covering witnesses are both the lexicographically first optimum.
            if spec.m.is_none() {
                pass &= fast.witness == slow.witness;
            }
            Ok((pass, format!("solver {:?}, oracle {:?}", fast.value, slow.value)))
        });
    }
}

fn density_monotone(params: &VerifyParams, rows: &mut Rows) {
    let max_n = params.max_n.unwrap_or(8);
    let mut solver = solver(params);
    let mut prev: Option<(usize, u64)> = None;
    for n in 5..=max_n {
        rows.check(format!("T({n},5,3)/binom({n},3)"), || {
            let cert = solver.min_cover(n, 5, 3)?;
            let value = cert.value.unwrap_or(0);
            // value/binom(n,3) >= prev/binom(n-1,3), compared exactly.
            let pass = cert.optimal
                && prev.is_none_or(|(pn, pv)| value as u128 * binom(pn, 3) as u128 >= pv as u128 * binom(n, 3) as u128);
            prev = Some((n, value));
            Ok((pass, format!("{value}/{} = {:.4}", binom(n, 3), value as f64 / binom(n, 3) as f64)))
        });
    }
}

fn decompose_convergence(params: &VerifyParams, rows: &mut Rows) {
    let max_m = params.max_m.unwrap_or(3);
    let mut solver = solver(params);
    for m in 2..=max_m {
        rows.check(format!("Ť({},3;{m}·{{2}})/binom({},3) in [1/m², 1.15/m²]", 6 * m, 6 * m), || {
            let seq = IndependenceSequence::repeated(2, m)?;
            let cert = solver.tilde_t(6 * m, 3, &seq)?;
            let value = cert.value.unwrap_or(0) as u128;
            let total = binom(6 * m, 3) as u128;
            let mm = (m * m) as u128;
            let pass = cert.optimal && value * mm >= total && value * mm * 100 <= 115 * total;
            let detail = format!(
                "{value}/{total} = {:.4}, target [{:.4}, {:.4}]",
                value as f64 / total as f64,
                1.0 / mm as f64,
                1.15 / mm as f64
            );
            Ok((pass, detail))
        });
    }
}
