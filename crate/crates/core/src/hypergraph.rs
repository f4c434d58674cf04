//! Uniform hypergraphs on at most 64 vertices, stored as sorted bit masks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, bits, low_bits, Combinations};
use crate::error::{ensure, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// An `r`-uniform hypergraph on vertices `0..n`.
///
/// Edges are `n`-bit masks with exactly `r` bits set, kept strictly
/// increasing in colex order. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<u64>,
}

impl Hypergraph {
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        check_dims(n, r)?;
        Ok(Self { n, r, edges: Vec::new() })
    }

    pub fn complete(n: usize, r: usize) -> Result<Self> {
        check_dims(n, r)?;
        Ok(Self { n, r, edges: Combinations::new(n, r).collect() })
    }

    /// Build from edge masks in any order. Duplicates, wrong arity and
    /// out-of-range vertices are rejected.
    pub fn from_masks(n: usize, r: usize, mut edges: Vec<u64>) -> Result<Self> {
        check_dims(n, r)?;
        let range = low_bits(n);
        for &e in &edges {
            ensure!(e & !range == 0, "edge {} has a vertex outside 0..{n}", mask_str(e));
            ensure!(e.count_ones() as usize == r, "edge {} does not have {r} vertices", mask_str(e));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {}", mask_str(w[0]))));
        }
        Ok(Self { n, r, edges })
    }

    /// Build from vertex lists.
    pub fn from_edges<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut masks = Vec::new();
        for e in edges {
            let e = e.as_ref();
            ensure!(e.len() == r, "edge {e:?} does not have {r} vertices");
            let mut m = 0u64;
            for &v in e {
                ensure!(v < n, "vertex {v} out of range 0..{n}");
                ensure!(m & (1 << v) == 0, "edge {e:?} repeats vertex {v}");
                m |= 1 << v;
            }
            masks.push(m);
        }
        Self::from_masks(n, r, masks)
    }

    /// Trusted constructor for masks already validated and sorted.
    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, edges: Vec<u64>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.count_ones() as usize == r && e & !low_bits(n) == 0));
        Self { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    pub fn contains_edge(&self, mask: u64) -> bool {
        self.edges.binary_search(&mask).is_ok()
    }

    /// Edges as sorted vertex lists.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| bits(e).collect()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&e| e >> v & 1 == 1).count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> u64 {
        let touched = self.edges.iter().fold(0u64, |acc, &e| acc | e);
        self.vertex_mask() & !touched
    }

    /// The hypergraph on the same vertices whose edges are exactly the
    /// `r`-subsets missing from `self`.
    pub fn complement(&self) -> Hypergraph {
        let mut present = self.edges.iter().peekable();
        let edges = Combinations::new(self.n, self.r)
            .filter(|e| {
                if present.peek().copied() == Some(e) {
                    present.next();
                    false
                } else {
                    true
                }
            })
            .collect();
        Hypergraph { n: self.n, r: self.r, edges }
    }

    /// Connected components as vertex masks, ordered by smallest member.
    /// Isolated vertices are singleton components.
    pub fn components(&self) -> Vec<u64> {
        components_of(self.n, &self.edges)
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components().into_iter().map(|c| bits(c).collect()).collect()
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// The sub-hypergraph induced on `mask`, relabelled onto `0..|mask|`.
    pub fn induced(&self, mask: u64) -> Hypergraph {
        let verts: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut edges: Vec<u64> = self
            .edges
            .iter()
            .filter(|&&e| e & !mask == 0)
            .map(|&e| compress(e, &verts))
            .collect();
        edges.sort_unstable();
        Hypergraph { n: verts.len(), r: self.r, edges }
    }

    /// α(H), the size of a largest vertex set containing no edge.
    pub fn independence_number(&self) -> usize {
        crate::independence::independence_number_within(self, self.vertex_mask())
    }

    /// Multiset of per-component independence numbers.
    pub fn independence_sequence(&self) -> IndependenceSequence {
        let entries = self
            .components()
            .into_iter()
            .map(|c| crate::independence::independence_number_within(self, c))
            .collect();
        IndependenceSequence::new(entries).expect("component independence numbers are positive")
    }

    /// Whether every `k`-subset of the vertices contains an edge, checked
    /// as α(H) ≤ k − 1.
    pub fn satisfies_covering(&self, k: usize) -> Result<bool> {
        ensure!(self.r <= k && k <= self.n, "covering needs r <= k <= n (r={}, k={k}, n={})", self.r, self.n);
        Ok(self.independence_number() < k)
    }
}

fn check_dims(n: usize, r: usize) -> Result<()> {
    ensure!((1..=MAX_VERTICES).contains(&n), "vertex count {n} outside 1..=64");
    // n < r is allowed and forces an edgeless graph (single isolated
    // vertices arise as components and decomposition parts).
    ensure!(r >= 2, "uniformity {r} must be at least 2");
    Ok(())
}

pub(crate) fn components_of(n: usize, edges: &[u64]) -> Vec<u64> {
    let mut unseen = low_bits(n);
    let mut comps = Vec::new();
    while unseen != 0 {
        let mut comp = unseen & unseen.wrapping_neg();
        loop {
            let grown = edges.iter().filter(|&&e| e & comp != 0).fold(comp, |acc, &e| acc | e);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        unseen &= !comp;
        comps.push(comp);
    }
    comps
}

fn compress(mask: u64, verts: &[usize]) -> u64 {
    verts
        .iter()
        .enumerate()
        .filter(|(_, &v)| mask >> v & 1 == 1)
        .fold(0u64, |acc, (i, _)| acc | 1 << i)
}

fn mask_str(mask: u64) -> String {
    format!("{:?}", bits(mask).collect::<Vec<_>>())
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edge_lists())
            .finish()
    }
}

/// Number of `r`-subsets of an `n`-set, the edge count of the complete
/// `r`-graph.
pub fn max_edges(n: usize, r: usize) -> u64 {
    binom(n, r)
}

/// A multiset of positive integers held as a sorted list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndependenceSequence(Vec<usize>);

impl IndependenceSequence {
    pub fn new(mut entries: Vec<usize>) -> Result<Self> {
        ensure!(entries.iter().all(|&s| s >= 1), "sequence entries must be positive: {entries:?}");
        entries.sort_unstable();
        Ok(Self(entries))
    }

    /// `m` copies of `s`.
    pub fn repeated(s: usize, m: usize) -> Result<Self> {
        Self::new(vec![s; m])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// |S|, the number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// ‖S‖, the sum of entries.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Self(v)
    }

    /// The `m`-fold multiset union.
    pub fn times(&self, m: usize) -> Self {
        let mut v: Vec<usize> = (0..m).flat_map(|_| self.0.iter().copied()).collect();
        v.sort_unstable();
        Self(v)
    }
}

impl TryFrom<Vec<usize>> for IndependenceSequence {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IndependenceSequence> for Vec<usize> {
    fn from(s: IndependenceSequence) -> Self {
        s.0
    }
}

impl fmt::Display for IndependenceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl std::str::FromStr for IndependenceSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        let entries = trimmed
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::invalid(format!("bad sequence entry {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}
