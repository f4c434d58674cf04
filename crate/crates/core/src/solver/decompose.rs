//! Component decomposition: enumerate how vertices and independence budget
//! split across components, and sum memoized connected kernels.

use std::collections::BTreeSet;

use super::search::Budget;
use super::{KernelKey, KernelOutcome, KernelSolution, Outcome, Solver};
use crate::combinatorics::{bits, low_bits, partitions, Combinations};
use crate::error::Result;
use crate::hypergraph::IndependenceSequence;

/// One way to split the vertices: `(part size, independence budget)` per
/// component, kept sorted.
type Combo = Vec<(usize, usize)>;

/// Budget vectors `s_i ∈ [1, min(size_i, total)]` summing to at most
/// `total` that cannot be raised in any coordinate.
fn maximal_budgets(sizes: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(sizes: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == sizes.len() {
            out.push(cur.clone());
            return;
        }
        let rest = sizes.len() - i - 1;
        if left < rest + 1 {
            return;
        }
        for s in 1..=sizes[i].min(left - rest) {
            cur.push(s);
            rec(sizes, left - s, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(sizes, total, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|b| {
            let used: usize = b.iter().sum();
            used == total || b.iter().zip(sizes).all(|(s, size)| s == size)
        })
        .collect()
}

/// Part sizes for each entry of a sorted sequence, nondecreasing within a
/// run of equal entries.
fn sequence_sizes(n: usize, seq: &[usize]) -> Vec<Vec<usize>> {
    fn rec(seq: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == seq.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = seq.len() - i - 1;
        let min = if i > 0 && seq[i] == seq[i - 1] { cur[i - 1] } else { 1 };
        let mut size = min;
        while size + rest <= left {
            cur.push(size);
            rec(seq, left - size, cur, out);
            cur.pop();
            size += 1;
        }
    }
    let mut out = Vec::new();
    rec(seq, n, &mut Vec::new(), &mut out);
    out
}

struct Candidate {
    combo: Combo,
    lower: Vec<u64>,
    lower_sum: u64,
}

impl Solver {
    pub(crate) fn components_family(
        &mut self,
        n: usize,
        k: usize,
        r: usize,
        m: usize,
        enumerate: bool,
        budget: &Budget,
    ) -> Result<Outcome> {
        let mut combos = BTreeSet::new();
        for sizes in partitions(n, m) {
            if sizes.iter().any(|&p| p >= 2 && p < r) {
                continue;
            }
            for budgets in maximal_budgets(&sizes, k - 1) {
                let mut combo: Combo = sizes.iter().copied().zip(budgets).collect();
                combo.sort_unstable();
                combos.insert(combo);
            }
        }
        self.best_combination(n, r, combos, false, enumerate, budget)
    }

    pub(crate) fn tilde_family(
        &mut self,
        n: usize,
        r: usize,
        seq: &IndependenceSequence,
        enumerate: bool,
        budget: &Budget,
    ) -> Result<Outcome> {
        let entries = seq.entries();
        let mut combos = BTreeSet::new();
        for sizes in sequence_sizes(n, entries) {
            if sizes.iter().any(|&p| p >= 2 && p < r) {
                continue;
            }
            let mut combo: Combo = sizes.into_iter().zip(entries.iter().copied()).collect();
            combo.sort_unstable();
            combos.insert(combo);
        }
        self.best_combination(n, r, combos, true, enumerate, budget)
    }

    /// Evaluate candidate splits in increasing order of their lower bound,
    /// stopping once no remaining split can match the incumbent.
    fn best_combination(
        &mut self,
        n: usize,
        r: usize,
        combos: BTreeSet<Combo>,
        exact: bool,
        enumerate: bool,
        budget: &Budget,
    ) -> Result<Outcome> {
        let mut cands: Vec<Candidate> = combos
            .into_iter()
            .filter_map(|combo| {
                let keys: Vec<KernelKey> = combo.iter().map(|&(n, s)| KernelKey { n, r, s, exact }).collect();
                if !keys.iter().all(KernelKey::feasible) {
                    return None;
                }
                let lower: Vec<u64> = keys.iter().map(KernelKey::lower_bound).collect();
                let lower_sum = lower.iter().sum();
                Some(Candidate { combo, lower, lower_sum })
            })
            .collect();
        cands.sort_by_key(|c| c.lower_sum);
        let Some(first) = cands.first() else {
            return Ok(Outcome::infeasible(0));
        };
        let start_lower = first.lower_sum;

        let mut best: Option<u64> = None;
        let mut winners: Vec<(Combo, Vec<KernelSolution>)> = Vec::new();
        let mut aborted_at: Option<u64> = None;

        for cand in &cands {
            if let Some(b) = best {
                if cand.lower_sum > b || (!enumerate && cand.lower_sum >= b) {
                    break;
                }
            }
            let mut sum = 0u64;
            let mut parts = Vec::with_capacity(cand.combo.len());
            let mut viable = true;
            for (i, &(size, s)) in cand.combo.iter().enumerate() {
                let rest: u64 = cand.lower[i + 1..].iter().sum();
                let cap = match best {
                    None => None,
                    Some(b) => {
                        let room = b.checked_sub(sum + rest).and_then(|x| if enumerate { Some(x) } else { x.checked_sub(1) });
                        match room {
                            Some(c) => Some(c),
                            None => {
                                viable = false;
                                break;
                            }
                        }
                    }
                };
                let key = KernelKey { n: size, r, s, exact };
                match self.kernel(key, cap, false, budget)? {
                    KernelOutcome::Solved(sol) => {
                        sum += sol.value;
                        parts.push(sol);
                    }
                    KernelOutcome::AboveCap | KernelOutcome::Infeasible => {
                        viable = false;
                        break;
                    }
                    KernelOutcome::Aborted => {
                        aborted_at = Some(cand.lower_sum);
                        viable = false;
                        break;
                    }
                }
            }
            if aborted_at.is_some() {
                break;
            }
            if !viable {
                continue;
            }
            match best {
                Some(b) if sum > b => {}
                Some(b) if sum == b => {
                    if enumerate {
                        winners.push((cand.combo.clone(), parts));
                    }
                }
                _ => {
                    best = Some(sum);
                    winners = vec![(cand.combo.clone(), parts)];
                }
            }
        }

        if let Some(lower_left) = aborted_at {
            let witness = winners.first().map(|(combo, parts)| assemble(n, combo, parts));
            return Ok(Outcome {
                value: best,
                witness,
                all: None,
                optimal: false,
                lower: best.map_or(lower_left, |b| b.min(lower_left)).max(start_lower),
            });
        }
        let Some(value) = best else {
            return Ok(Outcome::infeasible(start_lower));
        };
        let witness = assemble(n, &winners[0].0, &winners[0].1);
        let all = if enumerate { Some(self.enumerate_winners(n, r, &winners, exact, budget)?) } else { None };
        Ok(Outcome { value: Some(value), witness: Some(witness), all, optimal: true, lower: start_lower })
    }

    fn enumerate_winners(
        &mut self,
        n: usize,
        r: usize,
        winners: &[(Combo, Vec<KernelSolution>)],
        exact: bool,
        budget: &Budget,
    ) -> Result<Vec<Vec<u64>>> {
        let mut found = BTreeSet::new();
        for (combo, _) in winners {
            let mut part_lists = Vec::with_capacity(combo.len());
            for &(size, s) in combo {
                match self.kernel(KernelKey { n: size, r, s, exact }, None, true, budget)? {
                    KernelOutcome::Solved(sol) => part_lists.push(sol.all.expect("requested all witnesses")),
                    _ => {
                        return Err(crate::Error::ResourceLimit("budget exhausted while enumerating witnesses".into()))
                    }
                }
            }
            place_parts(combo, &part_lists, 0, low_bits(n), &mut Vec::new(), &mut found);
        }
        Ok(found.into_iter().collect())
    }
}

/// Put each part's witness on consecutive vertices, largest part first.
fn assemble(n: usize, combo: &Combo, parts: &[KernelSolution]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..combo.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(combo[i]));
    let mut offset = 0;
    let mut edges = Vec::new();
    for i in order {
        edges.extend(parts[i].witness.iter().map(|&e| e << offset));
        offset += combo[i].0;
    }
    debug_assert_eq!(offset, n);
    edges.sort_unstable();
    edges
}

/// All labelled placements of the part witnesses onto disjoint vertex sets.
fn place_parts(
    combo: &Combo,
    lists: &[Vec<Vec<u64>>],
    i: usize,
    free: u64,
    acc: &mut Vec<u64>,
    out: &mut BTreeSet<Vec<u64>>,
) {
    if i == combo.len() {
        let mut edges = acc.clone();
        edges.sort_unstable();
        out.insert(edges);
        return;
    }
    let size = combo[i].0;
    let free_verts: Vec<usize> = bits(free).collect();
    for pick in Combinations::new(free_verts.len(), size) {
        let verts: Vec<usize> = bits(pick).map(|j| free_verts[j]).collect();
        let block = verts.iter().fold(0u64, |a, &v| a | 1 << v);
        for w in &lists[i] {
            let before = acc.len();
            acc.extend(w.iter().map(|&e| bits(e).fold(0u64, |a, j| a | 1 << verts[j])));
            place_parts(combo, lists, i + 1, free & !block, acc, out);
            acc.truncate(before);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions(6, 2), vec![vec![1, 5], vec![2, 4], vec![3, 3]]);
        assert_eq!(partitions(6, 3).len(), 3);
        assert_eq!(partitions(3, 4), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn budget_enumeration() {
        // k - 1 = 4 split over parts of sizes 1 and 5
        assert_eq!(maximal_budgets(&[1, 5], 4), vec![vec![1, 3]]);
        assert_eq!(maximal_budgets(&[3, 3], 4), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        // budgets capped by part sizes
        assert_eq!(maximal_budgets(&[1, 1], 4), vec![vec![1, 1]]);
    }

    #[test]
    fn sequence_size_enumeration() {
        assert_eq!(sequence_sizes(6, &[2, 2]), vec![vec![1, 5], vec![2, 4], vec![3, 3]]);
        assert_eq!(sequence_sizes(4, &[1, 2]).len(), 3);
    }
}
