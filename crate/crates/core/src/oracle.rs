//! Exhaustive reference computations for small graphs.
//!
//! Everything here enumerates subsets directly and is meant to stay easy to
//! audit. Requests above the configured vertex caps fail with a budget error.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{members_of, Graph, SeparationTriple, WeightedGraph, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Vertex cap for enumerations over all cuts.
    pub max_subset_n: usize,
    /// Vertex cap for enumerations over separation triples.
    pub max_triple_n: usize,
    /// Number of random cuts used by sampled measurements.
    pub sample_count: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_subset_n: 14, max_triple_n: 10, sample_count: 1000 }
    }
}

impl OracleBudget {
    pub fn with_caps(max_subset_n: usize, max_triple_n: usize) -> Self {
        OracleBudget { max_subset_n, max_triple_n, ..Default::default() }
    }
}

fn check(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        return Err(Error::Budget(format!("{what}: n={n} exceeds the oracle cap {cap}")));
    }
    Ok(())
}

fn mask_bits(n: usize, bits: u64) -> Vec<bool> {
    (0..n).map(|v| bits >> v & 1 == 1).collect()
}

/// Calls `f` on every nonempty proper subset not containing vertex `n − 1`
/// (one representative per cut).
fn for_each_cut(n: usize, mut f: impl FnMut(&[bool])) {
    if n < 2 {
        return;
    }
    for bits in 1..(1u64 << (n - 1)) {
        f(&mask_bits(n, bits));
    }
}

fn edge_count(g: &Graph, mask: &[bool]) -> (usize, usize, usize) {
    let boundary = g.boundary(mask);
    let vol_in: usize = (0..g.n()).filter(|&v| mask[v]).map(|v| g.degree(v)).sum();
    (boundary, vol_in, g.total_volume() - vol_in)
}

fn phi(boundary: usize, a: usize, b: usize) -> f64 {
    let den = a.min(b);
    if den == 0 {
        if boundary == 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        boundary as f64 / den as f64
    }
}

/// Minimum conductance over all cuts and a minimizing side.
pub fn brute_conductance(g: &Graph, budget: &OracleBudget) -> Result<(f64, Vec<usize>)> {
    check(g.n(), budget.max_subset_n, "brute_conductance")?;
    let mut best = (f64::INFINITY, Vec::new());
    for_each_cut(g.n(), |mask| {
        let (b, vi, vo) = edge_count(g, mask);
        let c = phi(b, vi, vo);
        if c < best.0 - EPS {
            best = (c, members_of(mask));
        }
    });
    Ok(best)
}

/// Minimum sparsity over all cuts and a minimizing side.
pub fn brute_sparsity(g: &Graph, budget: &OracleBudget) -> Result<(f64, Vec<usize>)> {
    check(g.n(), budget.max_subset_n, "brute_sparsity")?;
    let n = g.n();
    let mut best = (f64::INFINITY, Vec::new());
    for_each_cut(n, |mask| {
        let size = mask.iter().filter(|&&b| b).count();
        let s = g.boundary(mask) as f64 / size.min(n - size) as f64;
        if s < best.0 - EPS {
            best = (s, members_of(mask));
        }
    });
    Ok(best)
}

/// Largest `vol(S)` over sets with `Φ(S) ≤ φ` and `vol(S) ≤ m`, with such a set.
pub fn brute_most_balanced(g: &Graph, phi_bound: f64, budget: &OracleBudget) -> Result<Option<(usize, Vec<usize>)>> {
    check(g.n(), budget.max_subset_n, "brute_most_balanced")?;
    let n = g.n();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for_each_cut(n, |mask| {
        let (b, vi, vo) = edge_count(g, mask);
        if phi(b, vi, vo) > phi_bound + EPS {
            return;
        }
        for (side, vol) in [(false, vi), (true, vo)] {
            if vol <= g.m() && best.as_ref().is_none_or(|x| vol > x.0) {
                let set = if side { members_of(&mask.iter().map(|b| !b).collect::<Vec<_>>()) } else { members_of(mask) };
                best = Some((vol, set));
            }
        }
    });
    Ok(best)
}

/// Minimum vertex expansion over all separation triples, or `None` when no
/// triple exists (complete graphs).
pub fn brute_vertex_expansion(g: &Graph, budget: &OracleBudget) -> Result<Option<(f64, SeparationTriple)>> {
    check(g.n(), budget.max_triple_n, "brute_vertex_expansion")?;
    let n = g.n();
    let mut best: Option<(f64, SeparationTriple)> = None;
    for bits in 0..(1u64 << n) {
        let removed = mask_bits(n, bits);
        let comps = g.components_without(&removed);
        if comps.len() < 2 {
            continue;
        }
        let (li, small) = comps.iter().enumerate().min_by_key(|(_, c)| c.len()).expect("two components");
        let s = members_of(&removed);
        let h = s.len() as f64 / (small.len() + s.len()) as f64;
        if best.as_ref().is_none_or(|b| h < b.0 - EPS) {
            let mut r: Vec<usize> = comps.iter().enumerate().filter(|(i, _)| *i != li).flat_map(|(_, c)| c.clone()).collect();
            r.sort_unstable();
            best = Some((h, SeparationTriple { l: small.clone(), s, r }));
        }
    }
    Ok(best)
}

/// Vertex connectivity by enumerating vertex sets in order of size; `n − 1`
/// when no vertex cut exists.
pub fn brute_kappa(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    check(g.n(), budget.max_subset_n, "brute_kappa")?;
    Ok(min_separator(g, |_| true).map_or(g.n().saturating_sub(1), |s| s.len()))
}

/// A smallest vertex set whose removal disconnects `g`, if one exists.
pub fn brute_min_vertex_cut(g: &Graph, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    check(g.n(), budget.max_subset_n, "brute_min_vertex_cut")?;
    Ok(min_separator(g, |_| true))
}

fn min_separator(g: &Graph, allowed: impl Fn(&[bool]) -> bool) -> Option<Vec<usize>> {
    let n = g.n();
    let mut by_size: Vec<u64> = (0..(1u64 << n)).collect();
    by_size.sort_by_key(|b| (b.count_ones(), *b));
    for bits in by_size {
        let removed = mask_bits(n, bits);
        if allowed(&removed) && g.components_without(&removed).len() >= 2 {
            return Some(members_of(&removed));
        }
    }
    None
}

/// κ(x, y): the fewest vertices (excluding x, y) separating x from y; `n − 1`
/// for adjacent pairs.
pub fn brute_kappa_st(g: &Graph, x: usize, y: usize, budget: &OracleBudget) -> Result<usize> {
    check(g.n(), budget.max_subset_n, "brute_kappa_st")?;
    if x == y {
        return Err(Error::Domain("x and y must differ".into()));
    }
    if g.has_edge(x, y) {
        return Ok(g.n() - 1);
    }
    let n = g.n();
    let mut best = n - 1;
    for bits in 0..(1u64 << n) {
        if bits >> x & 1 == 1 || bits >> y & 1 == 1 || bits.count_ones() as usize >= best {
            continue;
        }
        let removed = mask_bits(n, bits);
        let comps = g.components_without(&removed);
        if comps.iter().any(|c| c.contains(&x) && !c.contains(&y)) {
            best = bits.count_ones() as usize;
        }
    }
    Ok(best)
}

fn ratio_pair(gw: f64, hw: f64, hi: &mut f64, lo: &mut f64) {
    if gw <= 0.0 {
        if hw > 0.0 {
            *hi = f64::INFINITY;
            *lo = lo.min(f64::INFINITY);
        }
        return;
    }
    let r = hw / gw;
    *hi = hi.max(r);
    *lo = lo.min(r);
}

/// `(max, min)` of `w_H(S) / w_G(S)` over all cuts; cuts of weight zero in both
/// graphs are skipped.
pub fn cut_ratio_extremes(g: &WeightedGraph, h: &WeightedGraph, budget: &OracleBudget) -> Result<(f64, f64)> {
    check(g.n(), budget.max_subset_n, "cut_ratio_extremes")?;
    if g.n() != h.n() {
        return Err(Error::Domain("graphs must share a vertex set".into()));
    }
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for_each_cut(g.n(), |mask| ratio_pair(g.cut_weight(mask), h.cut_weight(mask), &mut hi, &mut lo));
    Ok((hi, lo))
}

/// Sampled version of [`cut_ratio_extremes`]: all singletons plus
/// `budget.sample_count` uniformly random cuts.
pub fn sampled_cut_ratio_extremes<R: Rng>(
    g: &WeightedGraph,
    h: &WeightedGraph,
    budget: &OracleBudget,
    rng: &mut R,
) -> (f64, f64) {
    let n = g.n();
    let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
    for v in 0..n {
        let mut mask = vec![false; n];
        mask[v] = true;
        ratio_pair(g.cut_weight(&mask), h.cut_weight(&mask), &mut hi, &mut lo);
    }
    for _ in 0..budget.sample_count {
        let mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if mask.iter().all(|&b| b) || !mask.iter().any(|&b| b) {
            continue;
        }
        ratio_pair(g.cut_weight(&mask), h.cut_weight(&mask), &mut hi, &mut lo);
    }
    (hi, lo)
}

/// κ of a cut-ratio pair: the smallest factor within which every cut agrees.
pub fn kappa_from_extremes(extremes: (f64, f64)) -> f64 {
    let (hi, lo) = extremes;
    if hi == f64::NEG_INFINITY {
        return 1.0;
    }
    hi.max(1.0 / lo).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn closed_forms() {
        let b = OracleBudget::default();
        let (phi, s) = brute_conductance(&complete(8), &b).unwrap();
        assert!((phi - 4.0 / 7.0).abs() < EPS);
        assert_eq!(s.len(), 4);
        let c8 = Graph::new(8, (0..8).map(|i| (i, (i + 1) % 8)).collect()).unwrap();
        assert!((brute_conductance(&c8, &b).unwrap().0 - 0.25).abs() < EPS);
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5)).collect()).unwrap();
        assert_eq!(brute_kappa(&c5, &b).unwrap(), 2);
        let star = Graph::new(5, (1..5).map(|i| (0, i)).collect()).unwrap();
        assert!((brute_vertex_expansion(&star, &b).unwrap().unwrap().0 - 0.5).abs() < EPS);
        assert!(brute_vertex_expansion(&complete(5), &b).unwrap().is_none());
        assert_eq!(brute_kappa(&complete(5), &b).unwrap(), 4);
    }

    #[test]
    fn over_cap_is_budget_error() {
        let b = OracleBudget::with_caps(4, 4);
        assert!(matches!(brute_conductance(&complete(5), &b), Err(Error::Budget(_))));
        assert!(matches!(brute_vertex_expansion(&complete(5), &b), Err(Error::Budget(_))));
    }

    #[test]
    fn ratio_extremes_identity_and_scaling() {
        let g = WeightedGraph::from_graph(&complete(5));
        let b = OracleBudget::default();
        assert_eq!(cut_ratio_extremes(&g, &g, &b).unwrap(), (1.0, 1.0));
        let doubled = WeightedGraph::new(5, g.edges().iter().map(|&(u, v, w)| (u, v, 2.0 * w)).collect()).unwrap();
        assert_eq!(cut_ratio_extremes(&g, &doubled, &b).unwrap(), (2.0, 2.0));
    }
}
