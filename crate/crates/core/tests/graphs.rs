//! Graph pipeline against direct evaluation of independently found diagrams.

use sl2share::diagrams::SimpleGraph;
use sl2share::graphs::{
    complement, graph_rseries, isomorphic, join_discrete, permutation_graphs, realize_circle, realize_permutation,
    verify_duality,
};
use sl2share::rewrite::wsl2_diagram;

#[test]
fn series_values_match_circle_realizations() {
    for n in 1..=6 {
        for g in permutation_graphs(n) {
            let r = graph_rseries(&g, 8).unwrap();
            for extra in 0..=2 {
                let d = realize_circle(&join_discrete(&g, extra), 8).unwrap().expect("joins stay circle graphs");
                assert_eq!(r.value(extra as u32), wsl2_diagram(&d), "{g} joined with {extra}");
            }
        }
    }
}

#[test]
fn reversed_strand_draws_the_complement() {
    for n in 1..=6 {
        for g in permutation_graphs(n) {
            let s = realize_permutation(&g, 8).unwrap().unwrap();
            let flipped = s.reverse_strand().two_colored_graph();
            assert!(flipped.black_vertices().len() == n);
            assert!(isomorphic(&flipped.graph, &complement(&g)), "{g}");
        }
    }
}

#[test]
fn self_complementary_bull_has_only_odd_terms() {
    let bull: SimpleGraph = "5: 1-2,1-3,2-3,2-4,3-5".parse().unwrap();
    let report = verify_duality(&bull, 8).unwrap();
    assert!(report.pass);
    for row in &report.rows {
        assert_eq!(row.k % 2 == 0, row.r.is_zero(), "k = {}", row.k);
    }
    let single = verify_duality(&SimpleGraph::empty(1), 8).unwrap();
    assert!(single.pass);
}
