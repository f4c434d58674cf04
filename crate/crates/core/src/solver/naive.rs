//! Exhaustive ground truth: try every edge set in order of size. Shares no
//! search code with the branch and bound; its predicates are evaluated by
//! direct subset enumeration.

use std::time::Instant;

use super::spec::{Certificate, Family, SolveSpec, Stats, TOOLKIT_VERSION};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Default cap on the number of edge sets examined.
pub const DEFAULT_NAIVE_BUDGET: u64 = 200_000_000;

fn r_subsets(n: usize, r: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == r).collect()
}

/// Index tuples `0 <= i_1 < .. < i_t < len` in lexicographic order.
struct IndexTuples {
    idx: Vec<usize>,
    len: usize,
    done: bool,
}

impl IndexTuples {
    fn new(len: usize, t: usize) -> Self {
        Self { idx: (0..t).collect(), len, done: t > len }
    }

    fn advance(&mut self) {
        let t = self.idx.len();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.len - (t - i) {
                self.idx[i] += 1;
                for j in i + 1..t {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

fn has_edge_inside(set: u64, edges: &[u64]) -> bool {
    edges.iter().any(|&e| e & !set == 0)
}

fn covers_all(n: usize, k: usize, edges: &[u64]) -> bool {
    (0u64..1 << n).filter(|s| s.count_ones() as usize == k).all(|s| has_edge_inside(s, edges))
}

fn brute_alpha(within: u64, edges: &[u64]) -> usize {
    let verts: Vec<u64> = (0..64).filter(|v| within >> v & 1 == 1).map(|v| 1u64 << v).collect();
    let mut best = 0;
    for pick in 0u64..1 << verts.len() {
        let set = verts.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |a, (_, &v)| a | v);
        if !has_edge_inside(set, edges) {
            best = best.max(pick.count_ones() as usize);
        }
    }
    best
}

fn brute_components(n: usize, edges: &[u64]) -> Vec<u64> {
    // union-find over vertices
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let vs: Vec<usize> = (0..n).filter(|v| e >> v & 1 == 1).collect();
        for w in vs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut comps: Vec<u64> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        match roots.iter().position(|&x| x == root) {
            Some(i) => comps[i] |= 1 << v,
            None => {
                roots.push(root);
                comps.push(1 << v);
            }
        }
    }
    comps
}

fn satisfies(spec: &SolveSpec, edges: &[u64]) -> bool {
    let n = spec.n;
    match spec.family {
        Family::T => covers_all(n, spec.k.unwrap_or(0), edges),
        Family::TComponents => {
            brute_components(n, edges).len() == spec.m.unwrap_or(0) && covers_all(n, spec.k.unwrap_or(0), edges)
        }
        Family::TildeT => {
            let mut seq: Vec<usize> = brute_components(n, edges).into_iter().map(|c| brute_alpha(c, edges)).collect();
            seq.sort_unstable();
            spec.sequence.as_ref().is_some_and(|s| s.entries() == seq.as_slice())
        }
        Family::ConnAlpha => {
            let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
            brute_components(n, edges).len() == 1 && spec.budget().is_some_and(|s| brute_alpha(full, edges) <= s)
        }
    }
}

/// Solve `spec` by enumerating edge sets of increasing size. The witness is
/// the first feasible set in lexicographic order. Fails with a resource
/// limit once more than `max_sets` sets have been examined.
pub fn naive_oracle(spec: &SolveSpec, max_sets: u64) -> Result<Certificate> {
    spec.validate()?;
    let started = Instant::now();
    let all = r_subsets(spec.n, spec.r);
    let mut examined = 0u64;
    for t in 0..=all.len() {
        let mut found: Vec<Vec<u64>> = Vec::new();
        let mut tuples = IndexTuples::new(all.len(), t);
        let mut edges = vec![0u64; t];
        while !tuples.done {
            examined += 1;
            if examined > max_sets {
                return Err(Error::ResourceLimit(format!("naive oracle examined more than {max_sets} edge sets")));
            }
            for (slot, &i) in edges.iter_mut().zip(&tuples.idx) {
                *slot = all[i];
            }
            if satisfies(spec, &edges) {
                found.push(edges.clone());
                if !spec.enumerate_all {
                    break;
                }
            }
            tuples.advance();
        }
        if !found.is_empty() {
            let graphs: Vec<Hypergraph> =
                found.into_iter().map(|e| Hypergraph::from_masks(spec.n, spec.r, e)).collect::<Result<_>>()?;
            return Ok(Certificate {
                spec: spec.clone(),
                value: Some(t as u64),
                infeasible: false,
                witness: Some(graphs[0].clone()),
                all_witnesses: spec.enumerate_all.then_some(graphs),
                stats: stats(examined, started, 0),
                optimal: true,
                toolkit_version: TOOLKIT_VERSION.to_string(),
            });
        }
    }
    Ok(Certificate {
        spec: spec.clone(),
        value: None,
        infeasible: true,
        witness: None,
        all_witnesses: None,
        stats: stats(examined, started, 0),
        optimal: true,
        toolkit_version: TOOLKIT_VERSION.to_string(),
    })
}

fn stats(examined: u64, started: Instant, lower: u64) -> Stats {
    Stats {
        nodes_expanded: examined,
        elapsed_ms: started.elapsed().as_millis() as u64,
        lower_bound_used: lower,
        threads: 1,
    }
}

/// ex(n, K_k^(r)) by trying edge sets from the largest down until one
/// spans no complete k-vertex subgraph.
pub fn naive_max_free(n: usize, k: usize, r: usize, max_sets: u64) -> Result<u64> {
    crate::error::ensure!(r < k && k <= n && n <= 16, "need r < k <= n <= 16");
    let all = r_subsets(n, r);
    let ksets: Vec<u64> = (0u64..1 << n).filter(|s| s.count_ones() as usize == k).collect();
    let clique_size = all.iter().filter(|&&e| e & ksets[0] == e).count();
    let mut examined = 0u64;
    for t in (0..=all.len()).rev() {
        let mut tuples = IndexTuples::new(all.len(), t);
        while !tuples.done {
            examined += 1;
            if examined > max_sets {
                return Err(Error::ResourceLimit(format!("naive maximization examined more than {max_sets} edge sets")));
            }
            let edges: Vec<u64> = tuples.idx.iter().map(|&i| all[i]).collect();
            let has_clique =
                ksets.iter().any(|&ks| edges.iter().filter(|&&e| e & ks == e).count() == clique_size);
            if !has_clique {
                return Ok(t as u64);
            }
            tuples.advance();
        }
    }
    unreachable!("the empty graph is K_k-free")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_tuples_enumerate_combinations() {
        let mut t = IndexTuples::new(5, 2);
        let mut count = 0;
        while !t.done {
            count += 1;
            t.advance();
        }
        assert_eq!(count, 10);
        assert!(IndexTuples::new(2, 3).done);
        let mut empty = IndexTuples::new(4, 0);
        assert!(!empty.done);
        empty.advance();
        assert!(empty.done);
    }

    #[test]
    fn brute_predicates() {
        let edges = [0b000111, 0b111000];
        assert_eq!(brute_alpha(0b111111, &edges), 4);
        assert_eq!(brute_components(6, &edges), vec![0b000111, 0b111000]);
        assert!(covers_all(6, 5, &edges));
        assert!(!covers_all(6, 4, &edges));
    }
}
