mod common;

use std::collections::BTreeSet;

use common::{random_graph, rng};
use proptest::prelude::*;
use rpq_resilience::gadgets::{
    aa_pregadget, condense, encode_graph_detailed, match_hypergraph, validate_gadget, vertex_cover_bruteforce,
    vertex_cover_number, Condensation, Graph, Hypergraph,
};
use rpq_resilience::lang::lang;
use rpq_resilience::solvers::min_hitting_set_bruteforce;

fn mhs(h: &Hypergraph) -> u64 {
    let vs: Vec<usize> = h.vertices.iter().copied().collect();
    let es: Vec<BTreeSet<usize>> = h.edges.iter().cloned().collect();
    min_hitting_set_bruteforce(&vs, &es, |_| 1)
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (3usize..=12).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=3), 1..=10)
            .prop_map(move |edges| Hypergraph::new((0..n).collect(), edges))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn condensation_steps_preserve_hitting_sets(h in hypergraph()) {
        let n = h.vertices.len();
        // only successful searches report a trace
        if let Condensation::OddPath { trace, result, .. } = condense(&h, 0, n - 1, 10_000) {
            let mut cur = h.clone();
            for step in &trace {
                let next = step.apply(&cur);
                prop_assert_eq!(mhs(&cur), mhs(&next), "{}", step);
                cur = next;
            }
            prop_assert_eq!(cur, result);
        }
    }

    #[test]
    fn single_rule_applications_preserve_hitting_sets(h in hypergraph()) {
        let keep = BTreeSet::new();
        let base = mhs(&h);
        if let Some((removed, _)) = h.edge_domination_step() {
            prop_assert_eq!(mhs(&h.remove_edge(&removed)), base);
        }
        for (v, _) in h.node_domination_moves(&keep) {
            prop_assert_eq!(mhs(&h.remove_vertex(v)), base);
        }
    }

    #[test]
    fn encodings_keep_matches_inside_one_copy(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 5, 6);
        let enc = encode_graph_detailed(&g.oriented(), &aa_pregadget()).unwrap();
        for l in ["aa", "aaa"] {
            for m in rpq_resilience::graphdb::enumerate_matches(&enc.db, &lang(l)) {
                let touched = enc.copies.iter().filter(|c| m.facts.iter().any(|f| c.contains(f))).count();
                prop_assert!(touched <= 1, "match {:?} spans {} copies", m.facts, touched);
            }
        }
    }

    #[test]
    fn subdivision_formula(seed in any::<u64>(), long in any::<bool>()) {
        let ell = if long { 5 } else { 3 };
        let mut r = rng(seed);
        // keep the subdivided graph within the brute-force cap
        let n_max = 7;
        let g = random_graph(&mut r, n_max, (20 - n_max) / (ell - 1));
        let s = g.subdivide(ell).unwrap();
        let expected = vertex_cover_bruteforce(&g).unwrap() + g.num_edges() * (ell - 1) / 2;
        prop_assert_eq!(vertex_cover_bruteforce(&s).unwrap(), expected);
        prop_assert_eq!(vertex_cover_number(&s), expected);
    }
}

#[test]
fn aa_gadget_has_five_binary_matches_before_any_rule() {
    let r = validate_gadget(&aa_pregadget(), &lang("aa")).unwrap();
    assert_eq!(r.hypergraph.graph.edges.len(), 5);
    assert!(r.hypergraph.graph.edges.iter().all(|e| e.len() == 2));
    assert!(r.trace.is_empty());
}

#[test]
fn aaa_matches_of_the_aa_gadget() {
    let r = validate_gadget(&aa_pregadget(), &lang("aaa")).unwrap();
    let sizes: Vec<usize> = r.hypergraph.graph.edges.iter().map(|e| e.len()).collect();
    assert_eq!(sizes, vec![3, 3, 3]);
    assert_eq!(r.odd_path_length, Some(3));
}

#[test]
fn single_edge_encoding_is_the_completion() {
    let mut g = Graph::directed();
    g.add_edge("u", "v").unwrap();
    let enc = encode_graph_detailed(&g, &aa_pregadget()).unwrap();
    let mh = match_hypergraph(&enc.db, &lang("aa"));
    let from = mh.index_of(&enc.vertex_facts["u"]).unwrap();
    let to = mh.index_of(&enc.vertex_facts["v"]).unwrap();
    assert_eq!(mh.graph.odd_path_length(from, to), Some(5));
}
