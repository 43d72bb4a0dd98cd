use proptest::prelude::*;
use rpq_resilience::flow::{check_cut, min_cut, Capacity, FlowNetwork};

fn network() -> impl Strategy<Value = FlowNetwork> {
    (0usize..4)
        .prop_flat_map(|extra| {
            let n = 2 + extra;
            (
                Just(extra),
                prop::collection::vec((0..n, 0..n, prop::option::weighted(0.9, 1u64..8)), 0..=10),
            )
        })
        .prop_map(|(extra, edges)| {
            let mut net = FlowNetwork::new();
            for _ in 0..extra {
                net.add_vertex();
            }
            for (u, v, c) in edges {
                net.add_edge(u, v, c.map_or(Capacity::Infinite, Capacity::Finite));
            }
            net
        })
}

/// Cheapest edge subset whose removal disconnects the target, or `None`
/// when every disconnecting set uses an infinite edge.
fn brute_force(net: &FlowNetwork) -> Option<u64> {
    let m = net.edges().len();
    (0u32..1 << m)
        .filter(|mask| {
            let cut: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            check_cut(net, &cut)
        })
        .filter_map(|mask| {
            (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .try_fold(0u64, |acc, i| match net.edges()[i].capacity {
                    Capacity::Finite(c) => Some(acc + c),
                    Capacity::Infinite => None,
                })
        })
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn min_cut_matches_brute_force(net in network()) {
        let cut = min_cut(&net).unwrap();
        match (cut.value, brute_force(&net)) {
            (Capacity::Finite(v), Some(b)) => {
                prop_assert_eq!(v, b);
                prop_assert!(check_cut(&net, &cut.edges));
                let total: u64 = cut.edges.iter().map(|&i| match net.edges()[i].capacity {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => panic!("infinite edge in a finite cut"),
                }).sum();
                prop_assert_eq!(total, v);
            }
            (Capacity::Infinite, None) => prop_assert!(cut.edges.is_empty()),
            (got, want) => prop_assert!(false, "min_cut {:?}, brute force {:?}\n{}", got, want, net.dump()),
        }
    }

    #[test]
    fn dropping_a_cut_edge_lowers_by_at_most_its_capacity(net in network()) {
        let cut = min_cut(&net).unwrap();
        let Capacity::Finite(v) = cut.value else { return Ok(()) };
        for &e in &cut.edges {
            let mut smaller = FlowNetwork::new();
            for _ in 2..net.num_vertices() {
                smaller.add_vertex();
            }
            for (i, edge) in net.edges().iter().enumerate() {
                if i != e {
                    smaller.add_edge(edge.from, edge.to, edge.capacity);
                }
            }
            let Capacity::Finite(c) = net.edges()[e].capacity else { unreachable!() };
            let Capacity::Finite(w) = min_cut(&smaller).unwrap().value else { unreachable!() };
            prop_assert!(w + c >= v && w <= v);
        }
    }
}
