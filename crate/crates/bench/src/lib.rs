//! Shared inputs for the benchmarks.

use turan_core::constructions::disjoint_complete;
use turan_core::Hypergraph;

/// A dense 3-graph on `n` vertices: complete parts of four vertices plus a
/// deterministic sprinkle of crossing triples.
pub fn dense_graph(n: usize) -> Hypergraph {
    let parts: Vec<usize> = (0..n / 4).map(|_| 4).chain((!n.is_multiple_of(4)).then_some(n % 4)).collect();
    let base = disjoint_complete(3, &parts).expect("valid sizes");
    let mut edges = base.edges().to_vec();
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..n * 2 {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        let (a, b, c) = ((x % n as u64) as u32, ((x >> 8) % n as u64) as u32, ((x >> 16) % n as u64) as u32);
        if a != b && b != c && a != c {
            edges.push((1 << a) | (1 << b) | (1 << c));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Hypergraph::from_masks(n, 3, edges).expect("valid edges")
}
