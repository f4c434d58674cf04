use turan_core::bounds::max_components;
use turan_core::constructions::{balanced_complete_union, turan_graph};
use turan_core::solver::naive::{naive_max_free, DEFAULT_NAIVE_BUDGET};
use turan_core::{binom, IndependenceSequence, SolveConfig, SolveSpec, Solver};

#[test]
fn turan_graphs_are_extremal() {
    // ex(n, K_k) is attained by the Turán graph with k-1 classes.
    for n in 3..=7 {
        for k in 3..=n {
            let t = turan_graph(n, k - 1).unwrap();
            let ex = naive_max_free(n, k, 2, DEFAULT_NAIVE_BUDGET).unwrap();
            assert_eq!(t.edge_count() as u64, ex, "n={n} k={k}");
            assert!(t.complement().satisfies_covering(k).unwrap());
        }
    }
    for k in 4..=8 {
        let t = turan_graph(8, k - 1).unwrap();
        assert_eq!(t.edge_count() as u64, naive_max_free(8, k, 2, DEFAULT_NAIVE_BUDGET).unwrap(), "n=8 k={k}");
    }
}

#[test]
fn graph_covering_is_the_turan_complement() {
    let mut solver = Solver::default();
    for n in 3..=9 {
        for k in 3..=n.min(6) {
            let cert = solver.min_cover(n, k, 2).unwrap();
            let turan = turan_graph(n, k - 1).unwrap().edge_count() as u64;
            assert_eq!(cert.value, Some(binom(n, 2) - turan), "n={n} k={k}");
        }
    }
}

#[test]
fn density_is_monotone_in_n() {
    let mut solver = Solver::default();
    for (k, top) in [(4, 7), (5, 8)] {
        let mut prev: Option<(u64, u64)> = None;
        for n in k..=top {
            let v = solver.min_cover(n, k, 3).unwrap().value.unwrap();
            let total = binom(n, 3);
            if let Some((pv, pt)) = prev {
                assert!(v * pt >= pv * total, "k={k} n={n}: {v}/{total} < {pv}/{pt}");
            }
            prev = Some((v, total));
        }
    }
}

#[test]
fn optimal_witnesses_respect_the_component_cap() {
    let mut solver = Solver::default();
    for (n, k, r) in [(5, 4, 3), (6, 4, 3), (7, 4, 3), (8, 5, 3)] {
        let cert = solver.solve(&SolveSpec::t(n, k, r).enumerate_all(true)).unwrap();
        let cap = max_components(k, r).unwrap();
        let all = cert.all_witnesses.unwrap();
        assert!(!all.is_empty());
        for h in &all {
            assert!(h.component_count() <= cap, "({n},{k},{r}) witness with {} components", h.component_count());
            assert!(h.min_degree() >= 1, "({n},{k},{r}) witness with an isolated vertex");
        }
    }
}

#[test]
fn constraints_only_raise_the_optimum() {
    let mut solver = Solver::default();
    for n in 6..=8 {
        let free = solver.min_cover(n, 5, 3).unwrap().value.unwrap();
        for m in 1..=2 {
            let cert = solver.min_cover_components(n, 5, 3, m).unwrap();
            assert!(cert.value.unwrap() >= free, "n={n} m={m}");
        }
    }
}

#[test]
fn forced_complete_parts() {
    // Components with independence number 2 are complete 3-graphs on at
    // least three vertices, so balanced parts are optimal.
    let mut solver = Solver::default();
    for m in 1..=3usize {
        for n in 3 * m..=(3 * m + 6).min(18) {
            let seq = IndependenceSequence::repeated(2, m).unwrap();
            let cert = solver.tilde_t(n, 3, &seq).unwrap();
            let expected = balanced_complete_union(n, 3, m).unwrap().edge_count() as u64;
            assert_eq!(cert.value, Some(expected), "n={n} m={m}");
        }
    }
}

#[test]
fn thread_count_does_not_change_the_witness() {
    let spec = SolveSpec::t(8, 5, 3);
    let one = Solver::default().solve(&spec).unwrap();
    let four = Solver::new(SolveConfig { threads: 4, ..SolveConfig::default() }).solve(&spec).unwrap();
    assert_eq!(one.value, four.value);
    assert_eq!(one.witness, four.witness);
}
