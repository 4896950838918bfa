use detcut::flow::*;
use detcut::generators::{complete, glued_cliques, random_connected, rng};
use detcut::oracle::{brute_kappa_st, OracleBudget};
use detcut::Graph;
use proptest::prelude::*;

#[test]
fn glued_k5_shared_triple_is_the_cut() {
    // Shared 0..3, private 3, 4 and 5, 6.
    let g = glued_cliques(5, 3);
    assert_eq!(st_vertex_connectivity(&g, 3, 5, 4).unwrap(), StConnectivity::Cut(vec![0, 1, 2]));
    assert_eq!(st_vertex_connectivity(&g, 3, 5, 3).unwrap(), StConnectivity::AtLeast(3));
}

#[test]
fn k4_three_paths_within_capacity() {
    let g = complete(4);
    let net = FlowNetwork::uniform(&g, 1, 0, 3).unwrap();
    let r = max_flow(&net, None);
    assert_eq!(r.value, 3);
    assert_eq!(r.paths.len(), 3);
    let usage = r.vertex_usage(4);
    assert!(usage[1] <= 1 && usage[2] <= 1);
}

#[test]
fn network_validation() {
    let g = complete(3);
    assert!(FlowNetwork::uniform(&g, 1, 0, 0).is_err());
    assert!(FlowNetwork::uniform(&g, 1, 0, 3).is_err());
    assert!(FlowNetwork::new(&g, vec![1, 0, 1], 0, 2).is_err());
    assert!(FlowNetwork::new(&g, vec![1, 1], 0, 2).is_err());
}

#[test]
fn connectivity_of_small_families() {
    assert_eq!(vertex_connectivity(&complete(5)), 4);
    assert_eq!(vertex_connectivity(&glued_cliques(6, 2)), 2);
    assert_eq!(min_vertex_cut_below(&glued_cliques(6, 2), 3).map(|c| c.len()), Some(2));
    assert_eq!(min_vertex_cut_below(&complete(6), 5), None);
}

fn arb_query() -> impl Strategy<Value = (Graph, usize, usize)> {
    (3usize..11, 0.1f64..0.8, any::<u64>()).prop_flat_map(|(n, p, seed)| {
        let g = random_connected(n, p, &mut rng(seed));
        (Just(g), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn menger_duality((g, x, y) in arb_query()) {
        prop_assume!(x != y);
        let kappa = brute_kappa_st(&g, x, y, &OracleBudget::default()).unwrap();
        for k in 1..=g.n() {
            match st_vertex_connectivity(&g, x, y, k).unwrap() {
                // Adjacent pairs have no separating set and always certify.
                StConnectivity::AtLeast(_) => prop_assert!(kappa >= k || g.has_edge(x, y)),
                StConnectivity::Cut(c) => {
                    prop_assert_eq!(c.len(), kappa);
                    prop_assert!(!c.contains(&x) && !c.contains(&y));
                    let mut removed = vec![false; g.n()];
                    c.iter().for_each(|&v| removed[v] = true);
                    let comps = g.components_without(&removed);
                    prop_assert!(comps.iter().all(|comp| !(comp.contains(&x) && comp.contains(&y))));
                }
            }
        }
    }

    #[test]
    fn decomposition_respects_capacity((g, s, t) in arb_query(), cap in 1u64..4, bound in proptest::option::of(0u64..6)) {
        prop_assume!(s != t);
        let net = FlowNetwork::uniform(&g, cap, s, t).unwrap();
        for r in [max_flow(&net, bound), max_flow_blocking(&net, bound)] {
            prop_assert_eq!(r.paths.iter().map(|p| p.units).sum::<u64>(), r.value);
            if let Some(b) = bound {
                prop_assert!(r.value <= b);
            }
            let usage = r.vertex_usage(g.n());
            for v in 0..g.n() {
                if v != s && v != t {
                    prop_assert!(usage[v] <= cap);
                }
            }
            if let Some(c) = &r.min_cut_vertices {
                if cap == 1 && !g.has_edge(s, t) && bound.is_none() {
                    prop_assert_eq!(c.len() as u64, r.value);
                    prop_assert!(!c.contains(&s) && !c.contains(&t));
                }
            }
            for p in &r.paths {
                prop_assert_eq!(p.vertices.first(), Some(&s));
                prop_assert_eq!(p.vertices.last(), Some(&t));
                prop_assert!(p.vertices.windows(2).all(|w| g.has_edge(w[0], w[1])));
            }
        }
        prop_assert_eq!(max_flow(&net, bound).value, max_flow_blocking(&net, bound).value);
    }

    #[test]
    fn max_flow_is_deterministic((g, s, t) in arb_query()) {
        prop_assume!(s != t);
        let net = FlowNetwork::uniform(&g, 1, s, t).unwrap();
        prop_assert_eq!(max_flow(&net, None), max_flow(&net, None));
    }
}
