use detcut::balcut::{BalCutOutcome, BalancedCut};
use detcut::generators::{complete, dumbbell, random_connected, rng};
use detcut::graph::conductance;
use detcut::oracle::{brute_conductance, OracleBudget};
use detcut::pagerank::*;
use detcut::WeightedGraph;
use proptest::prelude::*;

#[test]
fn complete_graph_certifies() {
    match most_balanced_edge_cut(&complete(8), 0.1).unwrap() {
        BalCutOutcome::Certified(c) => assert!(c.lower_bound >= 0.1),
        other => panic!("expected a certificate, got {other:?}"),
    }
}

#[test]
fn dumbbell_returns_a_bell() {
    let g = dumbbell(8);
    let s = most_balanced_edge_cut(&g, 0.05).unwrap().cut().expect("a cut").to_vec();
    assert_eq!(s.len(), 8);
    let bound = DenseCut.conductance_bound(0.05, g.m() as f64);
    assert!(conductance(&g, &s).unwrap() <= bound + 1e-9);
}

#[test]
fn stationary_vector_has_no_excess() {
    let g = WeightedGraph::from_graph(&dumbbell(5));
    let total = g.total_volume();
    let p: Vec<f64> = (0..g.n()).map(|v| g.degree(v) / total).collect();
    assert_eq!(find_excess_cut(&g, &p, 0.01).unwrap(), ExcessCut::NoExcessCut);
}

#[test]
fn sweep_rejects_bad_thresholds() {
    let g = WeightedGraph::from_graph(&complete(4));
    let p = pagerank(&g, 0.1, &[1.0, 0.0, 0.0, 0.0]).unwrap();
    let idx = SweepIndex::new(&g, &p);
    assert!(sweep_cut_binary_search(&g, 0.1, 0.3, 0.3, &idx).is_err());
    assert!(sweep_cut_binary_search(&g, 0.1, 0.1, 1.5, &idx).is_err());
    assert!(pagerank_all(&g, 0.0).is_err());
    assert!(most_balanced_edge_cut(&complete(4), -1.0).is_err());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (2usize..max_n, 0.1f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| WeightedGraph::from_graph(&random_connected(n, p, &mut rng(seed))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_are_distributions(g in arb_graph(20), alpha in 0.001f64..1.0) {
        let all = pagerank_all(&g, alpha).unwrap();
        for v in 0..g.n() {
            let row: Vec<f64> = all.row(v).iter().copied().collect();
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(row.iter().all(|&x| x >= -1e-12));
            let mut seed = vec![0.0; g.n()];
            seed[v] = 1.0;
            prop_assert!(pagerank_residual(&g, alpha, &seed, &row) < 1e-9);
        }
    }

    #[test]
    fn sweep_index_matches_linear_scan(g in arb_graph(20), alpha in 0.01f64..0.5, t in 0.0f64..0.2) {
        let mut seed = vec![0.0; g.n()];
        seed[0] = 1.0;
        let p = pagerank(&g, alpha, &seed).unwrap();
        let idx = SweepIndex::new(&g, &p);
        prop_assert!(idx.density.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(idx.prefix_vol.windows(2).all(|w| w[0] <= w[1]));
        let level: Vec<usize> = (0..g.n()).filter(|&v| p[v] / g.degree(v) >= t).collect();
        prop_assert_eq!(idx.count_at(t), level.len());
        prop_assert_eq!(idx.set_at(t), level.clone());
        prop_assert!((idx.vol_at(t) - g.volume(&level)).abs() < 1e-9);
    }

    #[test]
    fn outcomes_are_sound(seed in any::<u64>(), n in 2usize..13, p in 0.1f64..0.9, phi in 0.001f64..0.3) {
        let g = random_connected(n, p, &mut rng(seed));
        let (opt, _) = brute_conductance(&g, &OracleBudget::default()).unwrap();
        match most_balanced_edge_cut(&g, phi).unwrap() {
            BalCutOutcome::Certified(c) => {
                prop_assert!(c.basis.is_unconditional());
                prop_assert!(opt >= c.lower_bound - 1e-9, "certified {} but Φ = {}", c.lower_bound, opt);
            }
            BalCutOutcome::Cut(s) => {
                prop_assert!(!s.is_empty() && s.len() < n);
                prop_assert!(conductance(&g, &s).unwrap() <= DenseCut.conductance_bound(phi, g.m() as f64) + 1e-9);
            }
        }
    }

    #[test]
    fn deterministic(g in arb_graph(16), phi in 0.001f64..0.3) {
        prop_assert_eq!(
            most_balanced_edge_cut_weighted(&g, phi).unwrap(),
            most_balanced_edge_cut_weighted(&g, phi).unwrap()
        );
    }
}
