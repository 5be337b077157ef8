//! Serialization round trips for graphs and all word kinds, as property
//! tests over randomized inputs.

use proptest::prelude::*;
use vartin_core::{
    ArtinLetter, ArtinWord, CoxWord, CoxeterGraph, DeltaLetter, DeltaWord, Label, VaLetter, VaWord,
};

fn arb_label() -> impl Strategy<Value = Label> {
    prop_oneof![(2u32..=7).prop_map(Label::Finite), Just(Label::Infinite),]
}

fn arb_graph() -> impl Strategy<Value = CoxeterGraph> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            proptest::collection::vec(arb_label(), pairs.len()).prop_map(move |labels| {
                let edges: Vec<(String, String, Label)> = pairs
                    .iter()
                    .zip(&labels)
                    .map(|(&(i, j), &m)| (names[i].clone(), names[j].clone(), m))
                    .collect();
                CoxeterGraph::from_parts(&names, &edges).unwrap()
            })
        })
        .no_shrink()
}

proptest! {
    #[test]
    fn graph_json_round_trips(graph in arb_graph()) {
        let parsed = CoxeterGraph::parse_json(&graph.to_json()).unwrap();
        prop_assert_eq!(parsed, graph);
    }

    #[test]
    fn words_round_trip(
        graph in arb_graph(),
        raw in proptest::collection::vec((0usize..5, 0u8..3), 0..20),
    ) {
        let cox = CoxWord(raw.iter().map(|&(v, _)| v % graph.rank()).collect());
        prop_assert_eq!(CoxWord::parse(&graph, &cox.display(&graph)).unwrap(), cox);

        let artin = ArtinWord(
            raw.iter()
                .map(|&(v, e)| ArtinLetter { vertex: v % graph.rank(), inverse: e == 1 })
                .collect(),
        );
        prop_assert_eq!(ArtinWord::parse(&graph, &artin.display(&graph)).unwrap(), artin);

        let va = VaWord(
            raw.iter()
                .map(|&(v, e)| {
                    let vertex = v % graph.rank();
                    match e {
                        0 => VaLetter::Sigma { vertex, inverse: false },
                        1 => VaLetter::Sigma { vertex, inverse: true },
                        _ => VaLetter::Tau { vertex },
                    }
                })
                .collect(),
        );
        prop_assert_eq!(VaWord::parse(&graph, &va.display(&graph)).unwrap(), va);

        let delta = DeltaWord(
            raw.iter()
                .map(|&(v, e)| DeltaLetter { root: v, inverse: e == 1 })
                .collect(),
        );
        prop_assert_eq!(DeltaWord::parse(&delta.display(), 5).unwrap(), delta);
    }
}
