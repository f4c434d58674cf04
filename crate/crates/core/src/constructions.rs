//! Closed-form extremal hypergraphs.

use crate::combinatorics::{low_bits, Combinations};
use crate::error::{ensure, Result};
use crate::hypergraph::Hypergraph;

/// The Turán graph T_{n,k}: `k` classes of sizes ⌈n/k⌉ or ⌊n/k⌋ (larger
/// classes on the lower indices), edges between distinct classes.
pub fn turan_graph(n: usize, k: usize) -> Result<Hypergraph> {
    ensure!(n >= 2 && (1..=n).contains(&k), "need 1 <= k <= n and n >= 2 (n={n}, k={k})");
    let class_of: Vec<usize> = class_sizes(n, k)
        .into_iter()
        .enumerate()
        .flat_map(|(c, size)| std::iter::repeat_n(c, size))
        .collect();
    let edges = Combinations::new(n, 2)
        .filter(|&e| {
            let a = e.trailing_zeros() as usize;
            let b = 63 - e.leading_zeros() as usize;
            class_of[a] != class_of[b]
        })
        .collect();
    Hypergraph::from_masks(n, 2, edges)
}

/// Sizes of `m` nearly equal parts of `n`, largest first.
fn class_sizes(n: usize, m: usize) -> Vec<usize> {
    (0..m).map(|i| n / m + usize::from(i < n % m)).collect()
}

/// Disjoint union of complete r-graphs with the given part sizes, on
/// consecutive vertex ranges with the largest part first. Parts smaller than
/// `r` carry no edges and so fall apart into isolated vertices.
pub fn disjoint_complete(r: usize, sizes: &[usize]) -> Result<Hypergraph> {
    ensure!(!sizes.is_empty(), "need at least one part");
    ensure!(sizes.iter().all(|&s| s >= 1), "part sizes must be positive: {sizes:?}");
    ensure!(r >= 2, "uniformity must be at least 2");
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let n: usize = sorted.iter().sum();
    ensure!(n <= crate::hypergraph::MAX_VERTICES, "total size {n} exceeds 64 vertices");
    let mut edges = Vec::new();
    let mut offset = 0;
    for size in sorted {
        let part = low_bits(size) << offset;
        edges.extend(Combinations::new(n, r).filter(|&e| e & !part == 0));
        offset += size;
    }
    Hypergraph::from_masks(n, r, edges)
}

/// `m` complete parts of sizes as equal as possible.
pub fn balanced_complete_union(n: usize, r: usize, m: usize) -> Result<Hypergraph> {
    ensure!(m >= 1 && n >= m, "need 1 <= m <= n (n={n}, m={m})");
    disjoint_complete(r, &class_sizes(n, m))
}

/// Two complete 3-graphs on ⌈n/2⌉ and ⌊n/2⌋ vertices: every 5-set has
/// three vertices in one half.
pub fn thm_max_witness(n: usize) -> Result<Hypergraph> {
    ensure!(n >= 6, "need n >= 6 (n={n})");
    balanced_complete_union(n, 3, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binom;

    #[test]
    fn turan_graph_examples() {
        assert_eq!(turan_graph(6, 3).unwrap().edge_count(), 12);
        let g = turan_graph(5, 2).unwrap();
        assert_eq!(g.edge_count(), 6);
        // class {0,1,2} then {3,4}
        assert!(!g.contains_edge(0b00011));
        assert!(g.contains_edge(0b01001));
        assert!(!g.contains_edge(0b11000));
        assert_eq!(turan_graph(6, 6).unwrap(), Hypergraph::complete(6, 2).unwrap());
        assert!(turan_graph(5, 0).is_err());
        assert!(turan_graph(5, 6).is_err());
    }

    #[test]
    fn disjoint_complete_examples() {
        let a = disjoint_complete(3, &[3, 3]).unwrap();
        assert_eq!(a.edge_count(), 2);
        assert_eq!(a.independence_sequence().entries(), &[2, 2]);

        let b = disjoint_complete(3, &[3, 4]).unwrap();
        assert_eq!(b.edge_count(), 5);
        assert_eq!(b.independence_sequence().entries(), &[2, 2]);
        // larger part first
        assert!(b.contains_edge(0b1111 & !0b1000));
        assert!(b.contains_edge(0b1110000));

        let c = disjoint_complete(3, &[1, 1, 4]).unwrap();
        assert_eq!(c.edge_count(), 4);
        assert_eq!(c.independence_sequence().entries(), &[1, 1, 2]);

        // a part of size two is two isolated vertices
        let d = disjoint_complete(3, &[2, 3]).unwrap();
        assert_eq!(d.independence_sequence().entries(), &[1, 1, 2]);
        assert!(disjoint_complete(3, &[]).is_err());
        assert!(disjoint_complete(3, &[0, 3]).is_err());
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced_complete_union(12, 3, 2).unwrap().edge_count(), 40);
        assert_eq!(balanced_complete_union(7, 3, 2).unwrap().edge_count(), 5);
        let iso = balanced_complete_union(6, 3, 6).unwrap();
        assert_eq!(iso.edge_count(), 0);
        assert_eq!(iso.component_count(), 6);
        assert!(balanced_complete_union(3, 3, 4).is_err());
    }

    #[test]
    fn thm_max_examples() {
        assert_eq!(thm_max_witness(6).unwrap().edge_count(), 2);
        assert_eq!(thm_max_witness(7).unwrap().edge_count(), 5);
        assert_eq!(thm_max_witness(10).unwrap().edge_count(), 20);
        for n in 6..=14 {
            let w = thm_max_witness(n).unwrap();
            assert!(w.satisfies_covering(5).unwrap());
            let expected = binom(n / 2, 3) + binom(n.div_ceil(2), 3);
            assert_eq!(w.edge_count() as u64, expected);
        }
        assert!(thm_max_witness(5).is_err());
    }

    #[test]
    fn balanced_beats_unbalanced() {
        for r in 2..=4 {
            for a in (r + 1).max(3)..=12 {
                for b in a..=12 {
                    let even = disjoint_complete(r, &[a, b]).unwrap().edge_count();
                    let skew = disjoint_complete(r, &[a - 1, b + 1]).unwrap().edge_count();
                    assert!(even < skew, "r={r} a={a} b={b}");
                }
            }
        }
    }
}
