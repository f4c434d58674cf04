//! Exact independence number of a uniform hypergraph by branch and bound.
//!
//! Vertices are branched in decreasing-degree order. The bound is the number
//! of candidates minus a greedy packing of vertex-disjoint edges lying fully
//! inside the candidate set: an independent set misses at least one vertex
//! of each packed edge.

use crate::combinatorics::bits;
use crate::hypergraph::Hypergraph;

/// α of the sub-hypergraph induced on `within`.
pub fn independence_number_within(h: &Hypergraph, within: u64) -> usize {
    let edges: Vec<u64> = h.edges().iter().copied().filter(|&e| e & !within == 0).collect();
    independence_number_of(within, &edges)
}

pub(crate) fn independence_number_of(within: u64, edges: &[u64]) -> usize {
    if edges.is_empty() {
        return within.count_ones() as usize;
    }
    let mut order: Vec<usize> = bits(within).collect();
    let degree = |v: usize| edges.iter().filter(|&&e| e >> v & 1 == 1).count();
    order.sort_by_key(|&v| std::cmp::Reverse(degree(v)));

    // Vertices never touched by an edge are always free.
    let touched = edges.iter().fold(0u64, |acc, &e| acc | e);
    let free = (within & !touched).count_ones() as usize;
    let order: Vec<usize> = order.into_iter().filter(|&v| touched >> v & 1 == 1).collect();

    let mut search = Search { edges, order: &order, best: greedy(&order, edges) };
    search.run(0, 0, within & touched);
    free + search.best
}

fn greedy(order: &[usize], edges: &[u64]) -> usize {
    // lowest-degree first
    let mut chosen = 0u64;
    for &v in order.iter().rev() {
        let next = chosen | 1 << v;
        if !edges.iter().any(|&e| e & !next == 0) {
            chosen = next;
        }
    }
    chosen.count_ones() as usize
}

struct Search<'a> {
    edges: &'a [u64],
    order: &'a [usize],
    best: usize,
}

impl Search<'_> {
    fn run(&mut self, current: u64, size: usize, cand: u64) {
        if cand == 0 {
            self.best = self.best.max(size);
            return;
        }
        if size + self.upper_bound(cand) <= self.best {
            return;
        }
        let v = *self.order.iter().find(|&&v| cand >> v & 1 == 1).expect("cand is non-empty");
        let bit = 1u64 << v;

        let with = current | bit;
        let mut blocked = 0u64;
        for &e in self.edges {
            if e & bit != 0 {
                let rest = e & !with;
                if rest.count_ones() == 1 {
                    blocked |= rest;
                }
            }
        }
        self.run(with, size + 1, cand & !bit & !blocked);
        self.run(current, size, cand & !bit);
    }

    fn upper_bound(&self, cand: u64) -> usize {
        let mut used = 0u64;
        let mut packed = 0;
        for &e in self.edges {
            if e & !cand == 0 && e & used == 0 {
                used |= e;
                packed += 1;
            }
        }
        cand.count_ones() as usize - packed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Combinations;
    use proptest::prelude::*;

    fn brute(n: usize, edges: &[u64]) -> usize {
        (0u64..1 << n)
            .filter(|&s| !edges.iter().any(|&e| e & !s == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn disjoint_triples_have_alpha_four() {
        // frozen from exhaustive search over all 64 subsets
        let edges = [0b000111, 0b111000];
        assert_eq!(brute(6, &edges), 4);
        assert_eq!(independence_number_of(0b111111, &edges), 4);
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 3usize..=10, r in 2usize..=4, seed in any::<u64>()) {
            prop_assume!(r <= n);
            let all: Vec<u64> = Combinations::new(n, r).collect();
            let mut x = seed | 1;
            let edges: Vec<u64> = all.into_iter().filter(|_| {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                x % 3 == 0
            }).collect();
            let within = (1u64 << n) - 1;
            prop_assert_eq!(independence_number_of(within, &edges), brute(n, &edges));
        }
    }
}
