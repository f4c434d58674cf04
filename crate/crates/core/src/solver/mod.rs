//! Exact minimization of edge counts under covering, component and
//! independence constraints.
//!
//! Unconstrained minima ([`Family::T`]) are found by a covering branch and
//! bound. Component-constrained minima decompose: the independence number
//! of a hypergraph is the sum over its components, so an `m`-component
//! optimum is a sum of connected optima on a partition of the vertices,
//! each with its own share of the independence budget.

mod bits;
mod decompose;
pub mod naive;
mod search;
mod spec;

use std::collections::HashMap;
use std::time::{Duration, Instant};

pub use spec::{check_witness, Certificate, Family, SolveSpec, Stats, TOOLKIT_VERSION};

use crate::combinatorics::{binom, low_bits, Combinations};
use crate::error::{ensure, Result};
use crate::hypergraph::{components_of, Hypergraph, IndependenceSequence};
use search::{Budget, CoverIndex, Mode, Problem};

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub threads: usize,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Fix the first edge to {0, .., r-1}. Ignored when enumerating.
    pub symmetry_breaking: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self { threads: 1, node_budget: None, time_budget: None, symmetry_breaking: true }
    }
}

/// ⌈binom(n,k) / binom(n−r, k−r)⌉: every edge lies in binom(n−r, k−r) of
/// the k-sets, and each k-set needs one.
pub fn lower_bound_count(n: usize, k: usize, r: usize) -> Result<u64> {
    ensure!(r < k && k <= n, "need r < k <= n (r={r}, k={k}, n={n})");
    Ok(binom(n, k).div_ceil(binom(n - r, k - r)))
}

/// The counting bound strengthened by vertex averaging: deleting a vertex
/// from a covering graph leaves a covering graph on n − 1 vertices, and each
/// edge survives n − r of the n deletions.
pub fn averaging_lower_bound(n: usize, k: usize, r: usize) -> Result<u64> {
    ensure!(r < k && k <= n, "need r < k <= n (r={r}, k={k}, n={n})");
    Ok(averaging_from(k, 1, n, k, r))
}

fn averaging_from(start: usize, start_lb: u64, n: usize, k: usize, r: usize) -> u64 {
    let mut lb = start_lb;
    for v in start + 1..=n {
        let count = binom(v, k).div_ceil(binom(v - r, k - r));
        lb = count.max((v as u64 * lb).div_ceil((v - r) as u64));
    }
    lb
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct KernelKey {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// independence number exactly `s` rather than at most `s`
    pub exact: bool,
}

impl KernelKey {
    fn feasible(&self) -> bool {
        let Self { n, r, s, exact } = *self;
        if n == 1 {
            return !exact || s == 1;
        }
        if n < r || s + 1 < r {
            return false;
        }
        !exact || s < n
    }

    fn lower_bound(&self) -> u64 {
        let Self { n, r, s, .. } = *self;
        if n == 1 || !self.feasible() {
            return 0;
        }
        if s + 1 == r {
            return binom(n, r);
        }
        let connect = (n as u64 - 1).div_ceil(r as u64 - 1);
        if s < n {
            connect.max(averaging_from(s + 1, 1, n, s + 1, r))
        } else {
            connect
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct KernelSolution {
    pub value: u64,
    pub witness: Vec<u64>,
    pub all: Option<Vec<Vec<u64>>>,
}

#[derive(Default)]
struct KernelEntry {
    lower: u64,
    solution: Option<KernelSolution>,
}

pub(crate) enum KernelOutcome {
    Solved(KernelSolution),
    Infeasible,
    AboveCap,
    Aborted,
}

enum SearchOutcome {
    Found { t: u64, witness: Vec<u64>, all: Option<Vec<Vec<u64>>> },
    AboveCap,
    Infeasible,
    Aborted { lower: u64 },
}

/// Raw result of one family, before it is wrapped into a certificate.
pub(crate) struct Outcome {
    pub value: Option<u64>,
    pub witness: Option<Vec<u64>>,
    pub all: Option<Vec<Vec<u64>>>,
    pub optimal: bool,
    pub lower: u64,
}

impl Outcome {
    fn infeasible(lower: u64) -> Self {
        Self { value: None, witness: None, all: None, optimal: true, lower }
    }
}

/// Solver with memoized connected kernels and unconstrained optima.
#[derive(Default)]
pub struct Solver {
    config: SolveConfig,
    kernels: HashMap<KernelKey, KernelEntry>,
    t_exact: HashMap<(usize, usize, usize), u64>,
}

impl Solver {
    pub fn new(config: SolveConfig) -> Self {
        Self { config, ..Default::default() }
    }

    pub fn config(&self) -> &SolveConfig {
        &self.config
    }

    pub fn set_config(&mut self, config: SolveConfig) {
        self.config = config;
    }

    pub fn solve(&mut self, spec: &SolveSpec) -> Result<Certificate> {
        spec.validate()?;
        let started = Instant::now();
        let budget = Budget::new(self.config.node_budget, self.config.time_budget.map(|d| started + d));
        let (n, r) = (spec.n, spec.r);
        let outcome = match spec.family {
            Family::T => self.cover_family(n, spec.k.expect("validated"), r, spec.enumerate_all, &budget)?,
            Family::TComponents => self.components_family(
                n,
                spec.k.expect("validated"),
                r,
                spec.m.expect("validated"),
                spec.enumerate_all,
                &budget,
            )?,
            Family::TildeT => {
                self.tilde_family(n, r, spec.sequence.as_ref().expect("validated"), spec.enumerate_all, &budget)?
            }
            Family::ConnAlpha => {
                let key = KernelKey { n, r, s: spec.budget().expect("validated"), exact: false };
                self.kernel_family(key, spec.enumerate_all, &budget)?
            }
        };
        let to_graph = |edges: Vec<u64>| Hypergraph::from_sorted_unchecked(n, r, edges);
        let cert = Certificate {
            spec: spec.clone(),
            value: outcome.value,
            infeasible: outcome.optimal && outcome.value.is_none(),
            witness: outcome.witness.map(to_graph),
            all_witnesses: outcome.all.map(|all| all.into_iter().map(to_graph).collect()),
            stats: Stats {
                nodes_expanded: budget.nodes(),
                elapsed_ms: started.elapsed().as_millis() as u64,
                lower_bound_used: outcome.lower,
                threads: self.config.threads,
            },
            optimal: outcome.optimal,
            toolkit_version: TOOLKIT_VERSION.to_string(),
        };
        debug_assert_eq!(cert.validate(), Ok(()), "solver produced an invalid certificate");
        Ok(cert)
    }

    /// T(n, K_k^(r)): fewest edges meeting every k-set.
    pub fn min_cover(&mut self, n: usize, k: usize, r: usize) -> Result<Certificate> {
        self.solve(&SolveSpec::t(n, k, r))
    }

    /// T(n, K_k^(r); m): as [`Solver::min_cover`] with exactly `m` components.
    pub fn min_cover_components(&mut self, n: usize, k: usize, r: usize, m: usize) -> Result<Certificate> {
        self.solve(&SolveSpec::t_components(n, k, r, m))
    }

    /// Fewest edges of a connected r-graph on n vertices with α ≤ s.
    pub fn min_edges_connected_alpha(&mut self, n: usize, r: usize, s: usize) -> Result<Certificate> {
        ensure!(s >= 1, "budget s must be positive");
        self.solve(&SolveSpec::conn_alpha(n, r, s))
    }

    /// Ť(n, r; S): fewest edges with independence sequence exactly S.
    pub fn tilde_t(&mut self, n: usize, r: usize, sequence: &IndependenceSequence) -> Result<Certificate> {
        self.solve(&SolveSpec::tilde_t(n, r, sequence.clone()))
    }

    fn threads(&self) -> usize {
        self.config.threads.max(1)
    }

    fn cover_family(&mut self, n: usize, k: usize, r: usize, enumerate: bool, budget: &Budget) -> Result<Outcome> {
        let mut lower = averaging_lower_bound(n, k, r)?;
        // a known optimum one vertex down averages into a sharper bound
        if let Some(&prev) = self.t_exact.get(&(n - 1, k, r)) {
            if n > k {
                lower = lower.max(averaging_from(n - 1, prev, n, k, r));
            }
        }
        let idx = CoverIndex::new(n, r, Some(k))?;
        let prob = Problem { connected: false, exact_alpha: None, fix_first_edge: self.config.symmetry_breaking };
        let outcome = match self.deepen(&idx, prob, lower, binom(n, r), None, enumerate, budget) {
            SearchOutcome::Found { t, witness, all } => {
                self.t_exact.insert((n, k, r), t);
                Outcome { value: Some(t), witness: Some(witness), all, optimal: true, lower }
            }
            SearchOutcome::Aborted { lower: proven } => {
                let witness = greedy_completion(&idx, false);
                Outcome {
                    value: Some(witness.len() as u64),
                    witness: Some(witness),
                    all: None,
                    optimal: false,
                    lower: proven.max(lower),
                }
            }
            // the complete graph always covers
            SearchOutcome::AboveCap | SearchOutcome::Infeasible => unreachable!("complete graph covers every k-set"),
        };
        Ok(outcome)
    }

    fn kernel_family(&mut self, key: KernelKey, enumerate: bool, budget: &Budget) -> Result<Outcome> {
        let lower = key.lower_bound();
        Ok(match self.kernel(key, None, enumerate, budget)? {
            KernelOutcome::Solved(sol) => {
                Outcome { value: Some(sol.value), witness: Some(sol.witness), all: sol.all, optimal: true, lower }
            }
            KernelOutcome::Infeasible => Outcome::infeasible(0),
            KernelOutcome::AboveCap => unreachable!("no cap given"),
            KernelOutcome::Aborted => {
                let lower = self.kernels.get(&key).map_or(lower, |e| e.lower.max(lower));
                let witness = (!key.exact)
                    .then(|| CoverIndex::new(key.n, key.r, Some(key.s + 1)).map(|idx| greedy_completion(&idx, true)))
                    .transpose()?;
                Outcome {
                    value: witness.as_ref().map(|w| w.len() as u64),
                    witness,
                    all: None,
                    optimal: false,
                    lower,
                }
            }
        })
    }

    /// Connected minimum with α ≤ s (or α = s), memoized. With a `cap` the
    /// search stops once the optimum is known to exceed it.
    pub(crate) fn kernel(
        &mut self,
        key: KernelKey,
        cap: Option<u64>,
        want_all: bool,
        budget: &Budget,
    ) -> Result<KernelOutcome> {
        if !key.feasible() {
            return Ok(KernelOutcome::Infeasible);
        }
        let KernelKey { n, r, s, exact } = key;
        if n == 1 || s + 1 == r {
            // a single vertex, or α ≤ r − 1 forcing every r-set to be an edge
            let witness: Vec<u64> = Combinations::new(n, r).collect();
            let value = witness.len() as u64;
            if cap.is_some_and(|c| value > c) {
                return Ok(KernelOutcome::AboveCap);
            }
            let all = want_all.then(|| vec![witness.clone()]);
            return Ok(KernelOutcome::Solved(KernelSolution { value, witness, all }));
        }

        let entry = self.kernels.entry(key).or_default();
        if let Some(sol) = &entry.solution {
            if cap.is_some_and(|c| sol.value > c) {
                return Ok(KernelOutcome::AboveCap);
            }
            if !want_all || sol.all.is_some() {
                return Ok(KernelOutcome::Solved(sol.clone()));
            }
        }
        let mut lower = entry.lower.max(key.lower_bound());
        if let Some(sol) = &entry.solution {
            lower = sol.value;
        }
        if s < n {
            // connected graphs are a special case of covering graphs
            if let Some(&t) = self.t_exact.get(&(n, s + 1, r)) {
                lower = lower.max(t);
            }
        }
        if cap.is_some_and(|c| lower > c) {
            self.kernels.get_mut(&key).expect("inserted above").lower = lower;
            return Ok(KernelOutcome::AboveCap);
        }

        let idx = CoverIndex::new(n, r, Some(s + 1))?;
        let prob = Problem {
            connected: true,
            exact_alpha: exact.then_some(s),
            fix_first_edge: self.config.symmetry_breaking,
        };
        let outcome = self.deepen(&idx, prob, lower, binom(n, r), cap, want_all, budget);
        let entry = self.kernels.get_mut(&key).expect("inserted above");
        Ok(match outcome {
            SearchOutcome::Found { t, witness, all } => {
                let sol = KernelSolution { value: t, witness, all };
                entry.lower = t;
                entry.solution = Some(sol.clone());
                KernelOutcome::Solved(sol)
            }
            SearchOutcome::AboveCap => {
                entry.lower = entry.lower.max(cap.expect("cap") + 1);
                KernelOutcome::AboveCap
            }
            SearchOutcome::Infeasible => KernelOutcome::Infeasible,
            SearchOutcome::Aborted { lower } => {
                entry.lower = entry.lower.max(lower);
                KernelOutcome::Aborted
            }
        })
    }

    /// Iterative deepening on the edge count from `start` to `max_t`.
    #[allow(clippy::too_many_arguments)]
    fn deepen(
        &self,
        idx: &CoverIndex,
        mut prob: Problem,
        start: u64,
        max_t: u64,
        cap: Option<u64>,
        enumerate: bool,
        budget: &Budget,
    ) -> SearchOutcome {
        let mode = if enumerate { Mode::All } else { Mode::First };
        if enumerate {
            prob.fix_first_edge = false;
        }
        // the fixed edge needs at least one edge in every solution
        if idx.n < 2 || idx.edge_count() == 0 {
            prob.fix_first_edge = false;
        }
        for t in start..=max_t {
            if cap.is_some_and(|c| t > c) {
                return SearchOutcome::AboveCap;
            }
            let res = search::search_depth(idx, prob, t as usize, mode, self.threads(), budget);
            if res.aborted {
                return SearchOutcome::Aborted { lower: t };
            }
            if res.solutions.is_empty() {
                continue;
            }
            return if enumerate {
                let mut all = res.solutions;
                all.sort_unstable();
                all.dedup();
                SearchOutcome::Found { t, witness: all[0].clone(), all: Some(all) }
            } else {
                let canonical = Problem { fix_first_edge: false, ..prob };
                let witness = search::lex_min(idx, canonical, t as usize, budget)
                    .unwrap_or_else(|| res.solutions.into_iter().next().expect("non-empty"));
                SearchOutcome::Found { t, witness, all: None }
            };
        }
        SearchOutcome::Infeasible
    }
}

/// Greedy upper bound used when a budget runs out: repeatedly add the edge
/// covering the most uncovered k-sets, then join components.
fn greedy_completion(idx: &CoverIndex, connect: bool) -> Vec<u64> {
    let mut edges: Vec<u64> = Vec::new();
    let mut uncovered: Vec<u64> = idx.ksets.clone();
    while !uncovered.is_empty() {
        let best = idx
            .rsets
            .iter()
            .copied()
            .max_by_key(|&e| (uncovered.iter().filter(|&&ks| ks & e == e).count(), std::cmp::Reverse(e)))
            .expect("k-sets contain r-sets");
        uncovered.retain(|&ks| ks & best != best);
        edges.push(best);
    }
    if connect && idx.n >= idx.r {
        loop {
            let comps = components_of(idx.n, &edges);
            if comps.len() <= 1 {
                break;
            }
            let next = idx
                .rsets
                .iter()
                .copied()
                .filter(|e| !edges.contains(e))
                .max_by_key(|&e| (comps.iter().filter(|&&c| c & e != 0).count(), std::cmp::Reverse(e)))
                .expect("some edge joins two components");
            edges.push(next);
        }
    }
    edges.sort_unstable();
    debug_assert!(edges.iter().all(|&e| e & !low_bits(idx.n) == 0));
    edges
}

/// T(n, K_k^(r)) with a default solver.
pub fn min_cover(n: usize, k: usize, r: usize) -> Result<Certificate> {
    Solver::default().min_cover(n, k, r)
}

pub fn min_cover_components(n: usize, k: usize, r: usize, m: usize) -> Result<Certificate> {
    Solver::default().min_cover_components(n, k, r, m)
}

pub fn min_edges_connected_alpha(n: usize, r: usize, s: usize) -> Result<Certificate> {
    Solver::default().min_edges_connected_alpha(n, r, s)
}

pub fn tilde_t(n: usize, r: usize, sequence: &IndependenceSequence) -> Result<Certificate> {
    Solver::default().tilde_t(n, r, sequence)
}
