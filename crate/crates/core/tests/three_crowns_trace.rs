use suptree_core::fixtures::three_crowns_network;
use suptree_core::oracle::{brute_force_top_k, DEFAULT_CAP};
use suptree_core::{top_k, RankVector, RankingModel};

fn rv(s: &str) -> RankVector {
    RankVector(s.chars().map(|c| c.to_digit(10).unwrap()).collect())
}

fn opt(s: &str) -> Option<RankVector> {
    (!s.is_empty()).then(|| rv(s))
}

/// (Q_j, τ_j, child*, sibling*) per column; `-` marks a cell left blank.
const TRACE: [(&[&str], &str, &str, &str); 8] = [
    (&["111"], "111", "112", ""),
    (&["112"], "112", "212", "211"),
    (&["211", "212"], "211", "", "121"),
    (&["121", "212"], "212", "", "122"),
    (&["121", "122"], "121", "221", ""),
    (&["122", "221"], "122", "222", ""),
    (&["221", "222"], "221", "", ""),
    (&["222"], "222", "-", "-"),
];

#[test]
fn golden_trace_matches_cell_for_cell() {
    let n = three_crowns_network();
    let model = RankingModel::new(&n).unwrap();
    let coords = model.nontrivial_trails().to_vec();
    let mut e = top_k(&n, 8).unwrap().with_trace();
    let emitted: Vec<_> = e.by_ref().collect();
    assert_eq!(emitted.len(), 8);
    let trace = e.trace().unwrap();
    assert_eq!(trace.len(), 8);

    for (step, (queue, tau, child, sibling)) in trace.iter().zip(TRACE) {
        let mut q: Vec<RankVector> = step.queue.iter().map(|v| v.project(&coords)).collect();
        q.sort();
        let mut want: Vec<RankVector> = queue.iter().map(|s| rv(s)).collect();
        want.sort();
        assert_eq!(q, want, "Q_{}", step.j);
        assert_eq!(step.emitted.project(&coords), rv(tau), "tau_{}", step.j);
        match &step.expansion {
            Some(x) => {
                assert_eq!(
                    x.child_star.as_ref().map(|v| v.project(&coords)),
                    opt(child),
                    "child* at j={}",
                    step.j
                );
                assert_eq!(
                    x.sibling_star.as_ref().map(|v| v.project(&coords)),
                    opt(sibling),
                    "sibling* at j={}",
                    step.j
                );
            }
            None => assert_eq!(
                (child, sibling),
                ("-", "-"),
                "j={} was not expanded",
                step.j
            ),
        }
    }
}

#[test]
fn likelihoods_follow_crown_ratios() {
    let n = three_crowns_network();
    let trees: Vec<_> = top_k(&n, 8).unwrap().collect();
    let first = trees[0].likelihood.clone();
    let ratios: Vec<_> = trees.iter().map(|t| &t.likelihood / &first).collect();
    let expected = [
        (1, 1),
        (1, 2),
        (1, 4),
        (1, 8),
        (1, 16),
        (1, 32),
        (1, 64),
        (1, 128),
    ];
    for (r, (p, q)) in ratios.iter().zip(expected) {
        assert_eq!(*r, suptree_core::BigRational::new(p.into(), q.into()));
    }
}

#[test]
fn oracle_agrees_on_three_crowns() {
    let n = three_crowns_network();
    let coords = RankingModel::new(&n).unwrap().nontrivial_trails().to_vec();
    let oracle = brute_force_top_k(&n, 8, DEFAULT_CAP).unwrap();
    let order: Vec<RankVector> = oracle
        .iter()
        .map(|t| t.rank_vector.project(&coords))
        .collect();
    let want: Vec<RankVector> = ["111", "112", "211", "212", "121", "122", "221", "222"]
        .iter()
        .map(|s| rv(s))
        .collect();
    assert_eq!(order, want);
    let engine: Vec<_> = top_k(&n, 8).unwrap().collect();
    for (e, o) in engine.iter().zip(&oracle) {
        assert_eq!(e.arcs, o.arcs);
        assert_eq!(e.likelihood, o.likelihood);
        assert_eq!(e.rank_vector, o.rank_vector);
    }
}
