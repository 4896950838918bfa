use detcut::generators::{cycle_power, dumbbell, petersen, random_connected, random_regular, rng};
use detcut::graph::{complement, conductance, format_edge_list, load_graph, parse_edge_list, sparsity, validate_triple, Loaded};
use detcut::{Cut, Graph};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

#[test]
fn petersen_outer_cycle() {
    // Pinned: 5 spokes leave a side of volume 15.
    let c = Cut::new(&petersen(), &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!((c.boundary, c.volume_in, c.volume_out), (5, 15, 15));
    assert!((c.conductance() - 1.0 / 3.0).abs() < EPS);
}

#[test]
fn dumbbell_triple_fifth() {
    let g = dumbbell(5);
    let t = validate_triple(&g, &[0, 1, 2, 3], &[4], &[5, 6, 7, 8, 9]).unwrap();
    assert!((t.expansion() - 0.2).abs() < EPS);
    let swapped = validate_triple(&g, &[5, 6, 7, 8, 9], &[4], &[0, 1, 2, 3]).unwrap();
    assert_eq!(t.expansion(), swapped.expansion());
}

#[test]
fn load_from_file() {
    let dir = std::env::temp_dir().join(format!("detcut-graph-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("tri.txt");
    std::fs::write(&good, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let Loaded::Unweighted(g) = load_graph(&good, false, false).unwrap() else { panic!("expected unweighted") };
    assert_eq!(g.degrees(), vec![2, 2, 2]);
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "4 3\n0 1\n1 2\n2 5").unwrap();
    assert_eq!(load_graph(&bad, false, false).unwrap_err().to_string(), "endpoint 5 ≥ n=4 at line 4");
    assert!(load_graph(&dir.join("missing.txt"), false, false).is_err());
    std::fs::remove_dir_all(&dir).ok();
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..16, 0.05f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, &mut rng(seed)))
}

fn arb_subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|bits| (0..bits.len()).filter(|&i| bits[i]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn handshake(g in arb_graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        prop_assert_eq!(g.total_volume(), 2 * g.m());
    }

    #[test]
    fn cut_recount_and_symmetry((g, s) in arb_graph().prop_flat_map(|g| { let n = g.n(); (Just(g), arb_subset(n)) })) {
        prop_assume!(!s.is_empty() && s.len() < g.n());
        let c = Cut::new(&g, &s).unwrap();
        let crossing = g.edges().iter().filter(|&&(u, v)| s.contains(&u) != s.contains(&v)).count();
        prop_assert_eq!(c.boundary, crossing);
        let rest = complement(g.n(), &s);
        prop_assert!((conductance(&g, &s).unwrap() - conductance(&g, &rest).unwrap()).abs() < EPS);
        prop_assert!((sparsity(&g, &s).unwrap() - sparsity(&g, &rest).unwrap()).abs() < EPS);
    }

    #[test]
    fn regular_sparsity_is_degree_times_conductance(seed in any::<u64>(), half in 4usize..10, bits in any::<u32>()) {
        let n = 2 * half;
        let g = random_regular(n, 4, &mut rng(seed));
        let s: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).take(half).collect();
        prop_assume!(!s.is_empty());
        let c = Cut::new(&g, &s).unwrap();
        prop_assert!((c.sparsity() - 4.0 * c.conductance()).abs() < EPS);
    }

    #[test]
    fn triple_validation_is_symmetric(seed in any::<u64>(), n in 3usize..9, code in any::<u64>()) {
        let g = random_connected(n, 0.3, &mut rng(seed));
        let parts: Vec<usize> = (0..n).map(|v| (code >> (2 * v) & 3) as usize % 3).collect();
        let part = |t| (0..n).filter(|&v| parts[v] == t).collect::<Vec<_>>();
        let a = validate_triple(&g, &part(0), &part(1), &part(2));
        let b = validate_triple(&g, &part(2), &part(1), &part(0));
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.expansion(), b.expansion());
        }
    }

    #[test]
    fn edge_list_round_trip(n in 5usize..20, power in 1usize..3) {
        let g = cycle_power(n, power);
        let Loaded::Unweighted(back) = parse_edge_list(&format_edge_list(&g), false, false).unwrap() else {
            panic!("expected unweighted");
        };
        prop_assert_eq!(back, g);
    }
}
