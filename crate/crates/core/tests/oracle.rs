use detcut::generators::{complete, cycle, glued_cliques, path, star};
use detcut::oracle::*;
use detcut::WeightedGraph;

#[test]
fn conductance_closed_forms() {
    let b = OracleBudget::default();
    for n in 3..=12 {
        let (phi, _) = brute_conductance(&complete(n), &b).unwrap();
        assert!((phi - n.div_ceil(2) as f64 / (n - 1) as f64).abs() < 1e-12, "K{n}");
        let (phi, _) = brute_conductance(&cycle(n), &b).unwrap();
        assert!((phi - 1.0 / (n / 2) as f64).abs() < 1e-12, "C{n}");
    }
}

#[test]
fn connectivity_closed_forms() {
    let b = OracleBudget::default();
    for n in 3..=10 {
        assert_eq!(brute_kappa(&complete(n), &b).unwrap(), n - 1);
        assert_eq!(brute_kappa(&cycle(n), &b).unwrap(), 2);
        assert_eq!(brute_kappa(&path(n), &b).unwrap(), 1);
        assert_eq!(brute_kappa(&star(n), &b).unwrap(), 1);
    }
    assert_eq!(brute_kappa(&glued_cliques(5, 3), &b).unwrap(), 3);
    assert_eq!(brute_min_vertex_cut(&glued_cliques(5, 3), &b).unwrap(), Some(vec![0, 1, 2]));
    assert_eq!(brute_kappa_st(&path(5), 0, 4, &b).unwrap(), 1);
}

#[test]
fn vertex_expansion_closed_forms() {
    let b = OracleBudget::default();
    assert!(brute_vertex_expansion(&complete(5), &b).unwrap().is_none());
    // One middle vertex splits P7 into two paths of 3.
    let (h, t) = brute_vertex_expansion(&path(7), &b).unwrap().unwrap();
    assert!((h - 0.25).abs() < 1e-12);
    assert_eq!(t.s, vec![3]);
    let (h, _) = brute_vertex_expansion(&star(6), &b).unwrap().unwrap();
    assert!((h - 0.5).abs() < 1e-12);
}

#[test]
fn identical_graphs_have_unit_kappa() {
    let g = WeightedGraph::from_graph(&cycle(8));
    let k = kappa_from_extremes(cut_ratio_extremes(&g, &g, &OracleBudget::default()).unwrap());
    assert!((k - 1.0).abs() < 1e-12);
}

#[test]
fn budgets_are_enforced() {
    let b = OracleBudget::with_caps(8, 6);
    assert!(brute_conductance(&complete(9), &b).is_err());
    assert!(brute_vertex_expansion(&complete(7), &b).is_err());
    assert!(brute_conductance(&complete(8), &b).is_ok());
}
