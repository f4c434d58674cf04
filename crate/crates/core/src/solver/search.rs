//! Covering branch and bound with iterative deepening on the edge count.
//!
//! A node holds a partial edge set. The lowest-colex k-set that no chosen
//! edge covers must receive one of its r-subsets, so the node branches over
//! those (at most binom(k, r) children). Once everything is covered and the
//! problem asks for connectivity, the node branches over edges crossing the
//! boundary of the component holding vertex 0. Siblings tried earlier are
//! forbidden in later branches, so every edge set is reached at most once.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::bits::Bits;
use crate::combinatorics::{binom, colex_rank, Combinations};
use crate::error::{Error, Result};
use crate::hypergraph::components_of;
use crate::independence::independence_number_of;

/// Largest number of k-sets (times edges) the index is allowed to hold.
const INDEX_LIMIT: u64 = 1 << 26;

/// The r-subsets and k-subsets of `0..n` with their incidence.
pub(crate) struct CoverIndex {
    pub n: usize,
    pub r: usize,
    pub rsets: Vec<u64>,
    pub ksets: Vec<u64>,
    /// For each r-set, the k-sets containing it.
    covers: Vec<Bits>,
    /// For each k-set, the indices of its r-subsets in increasing order.
    subsets: Vec<Vec<u32>>,
    /// For each k-set, its largest r-subset index.
    max_sub: Vec<u32>,
}

impl CoverIndex {
    /// `k = None` (or `k > n`) means nothing needs covering.
    pub fn new(n: usize, r: usize, k: Option<usize>) -> Result<Self> {
        let k = k.filter(|&k| k <= n);
        let nr = binom(n, r);
        let nk = k.map_or(0, |k| binom(n, k));
        if nr.saturating_mul(nk.max(1)) > INDEX_LIMIT || nr > INDEX_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "covering index for n={n}, r={r}, k={k:?} is too large ({nr} edges x {nk} k-sets)"
            )));
        }
        let rsets: Vec<u64> = Combinations::new(n, r).collect();
        let ksets: Vec<u64> = k.map_or_else(Vec::new, |k| Combinations::new(n, k).collect());
        let mut covers = vec![Bits::zeros(ksets.len()); rsets.len()];
        let mut subsets = Vec::with_capacity(ksets.len());
        let mut max_sub = Vec::with_capacity(ksets.len());
        let kk = k.unwrap_or(0);
        for (j, &ks) in ksets.iter().enumerate() {
            let verts: Vec<usize> = crate::combinatorics::bits(ks).collect();
            let mut subs = Vec::new();
            for local in Combinations::new(kk, r) {
                let mask = crate::combinatorics::bits(local).fold(0u64, |acc, i| acc | 1 << verts[i]);
                let idx = colex_rank(mask);
                debug_assert_eq!(rsets[idx], mask);
                covers[idx].set(j);
                subs.push(idx as u32);
            }
            subs.sort_unstable();
            max_sub.push(*subs.last().expect("k >= r"));
            subsets.push(subs);
        }
        Ok(Self { n, r, rsets, ksets, covers, subsets, max_sub })
    }

    pub fn edge_count(&self) -> usize {
        self.rsets.len()
    }

    fn masks(&self, chosen: &[u32]) -> Vec<u64> {
        chosen.iter().map(|&e| self.rsets[e as usize]).collect()
    }

    /// Sorted edge masks of a solution.
    pub fn witness(&self, chosen: &[u32]) -> Vec<u64> {
        let mut m = self.masks(chosen);
        m.sort_unstable();
        m
    }
}

/// What a solution must satisfy beyond covering the index's k-sets.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Problem {
    pub connected: bool,
    /// Keep only solutions whose independence number is exactly this.
    pub exact_alpha: Option<usize>,
    /// Fix the first edge to {0, .., r-1}. Only sound when every solution
    /// has an edge and the constraints are invariant under relabelling.
    pub fix_first_edge: bool,
}

/// Node and wall-clock limits shared by every worker of one solve.
pub(crate) struct Budget {
    nodes: AtomicU64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    exceeded: AtomicBool,
}

impl Budget {
    pub fn new(node_limit: Option<u64>, deadline: Option<Instant>) -> Self {
        Self { nodes: AtomicU64::new(0), node_limit, deadline, exceeded: AtomicBool::new(false) }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exceeded(&self) -> bool {
        self.exceeded.load(Ordering::Relaxed)
    }

    /// Count one node; false once any limit has been hit.
    #[inline]
    fn tick(&self) -> bool {
        if self.exceeded() {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.node_limit.is_some_and(|l| count > l);
        let over_time = count.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.exceeded.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Mode {
    First,
    All,
}

#[derive(Debug, Default)]
pub(crate) struct DepthResult {
    pub solutions: Vec<Vec<u64>>,
    pub aborted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Worker<'a> {
    idx: &'a CoverIndex,
    prob: Problem,
    budget: &'a Budget,
    stop: &'a AtomicBool,
    mode: Mode,
    chosen: Vec<u32>,
    uncovered: Bits,
    /// chosen or forbidden edges
    used: Bits,
    forbidden: Bits,
    saved: Vec<Bits>,
    solutions: Vec<Vec<u64>>,
}

impl<'a> Worker<'a> {
    fn new(idx: &'a CoverIndex, prob: Problem, budget: &'a Budget, stop: &'a AtomicBool, mode: Mode) -> Self {
        Self {
            idx,
            prob,
            budget,
            stop,
            mode,
            chosen: Vec::new(),
            uncovered: Bits::ones(idx.ksets.len()),
            used: Bits::zeros(idx.edge_count()),
            forbidden: Bits::zeros(idx.edge_count()),
            saved: Vec::new(),
            solutions: Vec::new(),
        }
    }

    fn choose(&mut self, e: u32) {
        let depth = self.chosen.len();
        if self.saved.len() <= depth {
            self.saved.push(self.uncovered.clone());
        } else {
            self.saved[depth].copy_from(&self.uncovered);
        }
        self.uncovered.and_not_assign(&self.idx.covers[e as usize]);
        self.used.set(e as usize);
        self.chosen.push(e);
    }

    fn unchoose(&mut self) {
        let e = self.chosen.pop().expect("unchoose on empty stack");
        self.used.clear(e as usize);
        let depth = self.chosen.len();
        self.uncovered.copy_from(&self.saved[depth]);
    }

    fn forbid(&mut self, e: u32) {
        self.forbidden.set(e as usize);
        self.used.set(e as usize);
    }

    fn allow(&mut self, e: u32) {
        self.forbidden.clear(e as usize);
        self.used.clear(e as usize);
    }

    fn components(&self) -> Vec<u64> {
        if !self.prob.connected {
            return Vec::new();
        }
        components_of(self.idx.n, &self.idx.masks(&self.chosen))
    }

    /// Lower bound on the edges still needed below this node, or `None`
    /// when no completion exists.
    fn lower_bound(&self, ncomps: usize) -> Option<u64> {
        let mut lb = 0;
        let uncovered = self.uncovered.count();
        if uncovered > 0 {
            let gain = (0..self.idx.edge_count())
                .filter(|&e| !self.used.get(e))
                .map(|e| self.idx.covers[e].and_count(&self.uncovered))
                .max()
                .unwrap_or(0);
            if gain == 0 {
                return None;
            }
            lb = uncovered.div_ceil(gain);
        }
        if ncomps > 1 {
            lb = lb.max((ncomps as u64 - 1).div_ceil(self.idx.r as u64 - 1));
        }
        Some(lb)
    }

    /// Candidate edges at this node, or an empty list at a solution.
    fn branches(&self, comps: &[u64]) -> Vec<u32> {
        if let Some(j) = self.uncovered.first() {
            return self.idx.subsets[j].iter().copied().filter(|&e| !self.forbidden.get(e as usize)).collect();
        }
        if comps.len() > 1 {
            let c0 = comps[0];
            return (0..self.idx.edge_count() as u32)
                .filter(|&e| {
                    let m = self.idx.rsets[e as usize];
                    !self.used.get(e as usize) && m & c0 != 0 && m & !c0 != 0
                })
                .collect();
        }
        Vec::new()
    }

    fn accept(&mut self) -> Flow {
        let edges = self.idx.witness(&self.chosen);
        if let Some(s) = self.prob.exact_alpha {
            if independence_number_of(crate::combinatorics::low_bits(self.idx.n), &edges) != s {
                return Flow::Continue;
            }
        }
        self.solutions.push(edges);
        match self.mode {
            Mode::First => {
                self.stop.store(true, Ordering::Relaxed);
                Flow::Stop
            }
            Mode::All => Flow::Continue,
        }
    }

    fn is_solution(&self, comps: &[u64]) -> bool {
        self.uncovered.is_empty() && comps.len() <= 1
    }

    fn dfs(&mut self, limit: usize) -> Flow {
        if self.stop.load(Ordering::Relaxed) || !self.budget.tick() {
            return Flow::Stop;
        }
        let comps = self.components();
        if self.is_solution(&comps) {
            return self.accept();
        }
        let left = limit - self.chosen.len();
        if left == 0 {
            return Flow::Continue;
        }
        match self.lower_bound(comps.len()) {
            Some(lb) if lb <= left as u64 => {}
            _ => return Flow::Continue,
        }
        let branches = self.branches(&comps);
        let mut flow = Flow::Continue;
        for (i, &e) in branches.iter().enumerate() {
            self.choose(e);
            flow = self.dfs(limit);
            self.unchoose();
            if flow == Flow::Stop {
                for &f in &branches[..i] {
                    self.allow(f);
                }
                return flow;
            }
            self.forbid(e);
        }
        for &f in &branches {
            self.allow(f);
        }
        flow
    }
}

/// Explore every edge set of size at most `limit`. With `threads > 1` the
/// children of the root are handed to a worker pool.
pub(crate) fn search_depth(
    idx: &CoverIndex,
    prob: Problem,
    limit: usize,
    mode: Mode,
    threads: usize,
    budget: &Budget,
) -> DepthResult {
    let stop = AtomicBool::new(false);
    let mut root = Worker::new(idx, prob, budget, &stop, mode);
    if prob.fix_first_edge {
        if limit == 0 || idx.edge_count() == 0 {
            return DepthResult::default();
        }
        root.choose(0);
    }

    let comps = root.components();
    let flat = threads <= 1 || root.is_solution(&comps) || root.chosen.len() >= limit;
    if flat {
        root.dfs(limit);
        return DepthResult { solutions: root.solutions, aborted: budget.exceeded() };
    }
    if !budget.tick() {
        return DepthResult { solutions: Vec::new(), aborted: true };
    }
    let left = (limit - root.chosen.len()) as u64;
    if root.lower_bound(comps.len()).is_none_or(|lb| lb > left) {
        return DepthResult { solutions: Vec::new(), aborted: budget.exceeded() };
    }
    let branches = root.branches(&comps);
    let run = || {
        branches
            .par_iter()
            .enumerate()
            .map(|(i, &e)| {
                let mut w = Worker::new(idx, prob, budget, &stop, mode);
                for &c in &root.chosen {
                    w.choose(c);
                }
                for &f in &branches[..i] {
                    w.forbid(f);
                }
                w.choose(e);
                w.dfs(limit);
                w.solutions
            })
            .collect::<Vec<_>>()
    };
    let per_branch = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let mut solutions: Vec<Vec<u64>> = per_branch.into_iter().flatten().collect();
    if mode == Mode::First {
        solutions.truncate(1);
    }
    DepthResult { solutions, aborted: budget.exceeded() }
}

/// Lexicographically smallest edge set of exactly `size` edges meeting the
/// problem's constraints, scanning edges in increasing colex order. Single
/// threaded so the answer never depends on scheduling.
pub(crate) fn lex_min(idx: &CoverIndex, prob: Problem, size: usize, budget: &Budget) -> Option<Vec<u64>> {
    let stop = AtomicBool::new(false);
    let mut w = Worker::new(idx, prob, budget, &stop, Mode::First);
    if lex_dfs(&mut w, 0, size) {
        Some(idx.witness(&w.chosen))
    } else {
        None
    }
}

fn lex_dfs(w: &mut Worker<'_>, next: usize, size: usize) -> bool {
    if !w.budget.tick() {
        return false;
    }
    let comps = w.components();
    let left = size - w.chosen.len();
    if left == 0 {
        if !w.is_solution(&comps) {
            return false;
        }
        return match w.prob.exact_alpha {
            Some(s) => independence_number_of(crate::combinatorics::low_bits(w.idx.n), &w.idx.witness(&w.chosen)) == s,
            None => true,
        };
    }
    let total = w.idx.edge_count();
    if total - next < left {
        return false;
    }
    // Every uncovered k-set still needs an edge at index >= next, so the
    // next edge can be no larger than the smallest such maximum.
    let mut hi = total - left;
    for j in w.uncovered.iter() {
        let m = w.idx.max_sub[j] as usize;
        if m < next {
            return false;
        }
        hi = hi.min(m);
    }
    // edges below `next` can no longer be picked
    for e in 0..next {
        if !w.used.get(e) {
            w.forbid(e as u32);
        }
    }
    let feasible = w.lower_bound(comps.len()).is_some_and(|lb| lb <= left as u64);
    for e in 0..next {
        if w.forbidden.get(e) {
            w.allow(e as u32);
        }
    }
    if !feasible {
        return false;
    }
    for e in next..=hi {
        w.choose(e as u32);
        if lex_dfs(w, e + 1, size) {
            return true;
        }
        w.unchoose();
        if w.budget.exceeded() {
            return false;
        }
    }
    false
}
