//! Cut sparsification by expander decomposition and the recursive pairwise
//! sparsifier built on top of it.
//!
//! Edges are bucketed by weight class. Each bucket is split by repeated
//! balanced-cut calls until every piece is certified; certified pieces are
//! replaced by an explicit expander when that saves edges, and all crossing
//! edges are kept verbatim. The approximation factor is measured, not proved.

use std::collections::BTreeMap;

use crate::balcut::{BalCutOutcome, BalancedCut};
use crate::error::{domain, Result};
use crate::expanders::gabber_galil;
use crate::generators::rng;
use crate::graph::{mask_of, WeightedGraph};
use crate::oracle::{cut_ratio_extremes, kappa_from_extremes, sampled_cut_ratio_extremes, OracleBudget};

/// Conductance at which pieces of the decomposition are accepted.
pub fn decomposition_phi(n: usize) -> f64 {
    0.01 / (n as f64).log2().max(1.0)
}

/// Default branching of [`recursive_sparsify`]: `⌈3·n^{1/3}⌉`.
pub fn default_branching(n: usize) -> usize {
    ((3.0 * (n as f64).cbrt()).ceil() as usize).max(2)
}

/// Measured cut approximation between a graph and its sparsifier.
#[derive(Clone, Debug)]
pub struct KappaApproxReport {
    pub original: WeightedGraph,
    pub sparsifier: WeightedGraph,
    /// Smallest `κ ≥ 1` with `w_G(S)/κ ≤ w_H(S) ≤ κ·w_G(S)` on every inspected cut.
    pub kappa_measured: f64,
    /// True when every cut was enumerated; otherwise singletons plus random cuts.
    pub exhaustive: bool,
}

impl KappaApproxReport {
    pub fn measure(original: &WeightedGraph, sparsifier: &WeightedGraph, budget: &OracleBudget, seed: u64) -> Result<Self> {
        let exhaustive = original.n() <= budget.max_subset_n;
        let extremes = if exhaustive {
            cut_ratio_extremes(original, sparsifier, budget)?
        } else {
            if original.n() != sparsifier.n() {
                return domain("graphs must share a vertex set");
            }
            sampled_cut_ratio_extremes(original, sparsifier, budget, &mut rng(seed))
        };
        Ok(KappaApproxReport {
            original: original.clone(),
            sparsifier: sparsifier.clone(),
            kappa_measured: kappa_from_extremes(extremes),
            exhaustive,
        })
    }
}

/// Edges replacing a certified piece: an explicit expander with uniform weight
/// `vol(X)·Φ/(8|X|)` when it is smaller than the piece, the piece itself otherwise.
fn replace_piece(h: &WeightedGraph, piece: &[usize], lower_bound: f64) -> Result<Vec<(usize, usize, f64)>> {
    let merged = h.merged();
    let x = gabber_galil(piece.len())?;
    let loops_free = x.edges().iter().filter(|&&(a, b)| a != b).count();
    if loops_free >= merged.m() {
        return Ok(merged.edges().iter().map(|&(a, b, w)| (piece[a], piece[b], w)).collect());
    }
    let w = h.total_volume() * lower_bound.min(1.0) / (8.0 * piece.len() as f64);
    Ok(x.edges()
        .iter()
        .filter(|&&(a, b)| a != b)
        .map(|&(a, b)| (piece[a], piece[b], w))
        .collect())
}

fn lift<'a>(h: &'a WeightedGraph, piece: &'a [usize]) -> impl Iterator<Item = (usize, usize, f64)> + 'a {
    h.edges().iter().map(move |&(a, b, w)| (piece[a], piece[b], w))
}

/// Decomposes one weight class into certified pieces.
fn sparsify_class(sub: &WeightedGraph, phi: f64, balcut: &dyn BalancedCut) -> Result<Vec<(usize, usize, f64)>> {
    let rounds = (sub.m().max(2) as f64).log2().ceil() as usize + 1;
    let mut active: Vec<Vec<usize>> = sub.components().into_iter().filter(|c| c.len() >= 2).collect();
    let mut out = Vec::new();
    for _ in 0..rounds {
        if active.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for piece in active {
            let h = sub.induced(&piece);
            match balcut.run(&h, phi)? {
                BalCutOutcome::Certified(c) => out.extend(replace_piece(&h, &piece, c.lower_bound)?),
                BalCutOutcome::Cut(s) => {
                    let mask = mask_of(h.n(), &s)?;
                    out.extend(
                        h.edges().iter().filter(|&&(a, b, _)| mask[a] != mask[b]).map(|&(a, b, w)| (piece[a], piece[b], w)),
                    );
                    for side in [true, false] {
                        let verts: Vec<usize> = (0..h.n()).filter(|&v| mask[v] == side).collect();
                        let hs = h.induced(&verts);
                        for comp in hs.components() {
                            if comp.len() >= 2 {
                                next.push(comp.iter().map(|&i| piece[verts[i]]).collect());
                            }
                        }
                    }
                }
            }
        }
        active = next;
    }
    for piece in active {
        let h = sub.induced(&piece);
        out.extend(lift(&h, &piece));
    }
    Ok(out)
}

fn sparsify_any(g: &WeightedGraph, balcut: &dyn BalancedCut) -> Result<WeightedGraph> {
    let g = g.merged();
    let phi = decomposition_phi(g.n());
    let mut classes: BTreeMap<i64, Vec<(usize, usize, f64)>> = BTreeMap::new();
    for &e in g.edges() {
        classes.entry(e.2.log2().floor() as i64).or_default().push(e);
    }
    let mut out = Vec::new();
    for (_, edges) in classes {
        let sub = WeightedGraph::new(g.n(), edges)?;
        out.extend(sparsify_class(&sub, phi, balcut)?);
    }
    Ok(WeightedGraph::new(g.n(), out)?.merged())
}

/// Sparsifies a connected weighted graph; the output has merged edges.
pub fn deterministic_sparsify(g: &WeightedGraph, balcut: &dyn BalancedCut) -> Result<WeightedGraph> {
    if g.n() >= 2 && !g.is_connected() {
        return domain("graph must be connected");
    }
    sparsify_any(g, balcut)
}

/// One of the pairwise subgraphs of [`recursive_sparsify`].
#[derive(Clone, Debug)]
pub struct PairSubgraph {
    pub parts: (usize, usize),
    /// Vertices of `V_i ∪ V_j` in increasing order; local id = position.
    pub vertices: Vec<usize>,
    /// Ids of the parent edges assigned to this pair.
    pub edge_ids: Vec<usize>,
    pub graph: WeightedGraph,
}

/// Splits `V` into `b` contiguous blocks whose sizes differ by at most one.
pub fn contiguous_parts(n: usize, b: usize) -> Vec<usize> {
    (0..n).map(|v| v * b / n.max(1)).collect()
}

/// Pairwise subgraphs whose edge sets partition `E(G)`: edges between `V_i`
/// and `V_j` go to pair `(i, j)`, edges inside `V_i` go to `(i, i+1)`, or to
/// `(b−2, b−1)` for the last block.
pub fn pair_subgraphs(g: &WeightedGraph, b: usize) -> Result<Vec<PairSubgraph>> {
    if b < 2 {
        return domain(format!("branching must be at least 2, got {b}"));
    }
    let n = g.n();
    let b = b.min(n.max(2));
    let part = contiguous_parts(n, b);
    let mut pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for i in 0..b {
        for j in i + 1..b {
            pairs.insert((i, j), Vec::new());
        }
    }
    for (id, &(u, v, _)) in g.edges().iter().enumerate() {
        let (pu, pv) = (part[u].min(part[v]), part[u].max(part[v]));
        let key = if pu != pv {
            (pu, pv)
        } else if pu + 1 < b {
            (pu, pu + 1)
        } else {
            (b - 2, b - 1)
        };
        pairs.get_mut(&key).expect("pair exists").push(id);
    }
    Ok(pairs
        .into_iter()
        .map(|((i, j), edge_ids)| {
            let vertices: Vec<usize> = (0..n).filter(|&v| part[v] == i || part[v] == j).collect();
            let mut local = vec![usize::MAX; n];
            for (k, &v) in vertices.iter().enumerate() {
                local[v] = k;
            }
            let edges = edge_ids
                .iter()
                .map(|&e| {
                    let (u, v, w) = g.edges()[e];
                    (local[u], local[v], w)
                })
                .collect();
            let graph = WeightedGraph::new(vertices.len(), edges).expect("pair edges in range");
            PairSubgraph { parts: (i, j), vertices, edge_ids, graph }
        })
        .collect())
}

/// Edge budget `n·log₂²n` that every sparsifier output stays within.
pub fn edge_budget(n: usize) -> f64 {
    let l = (n.max(2) as f64).log2();
    n as f64 * l * l
}

/// The top level of one recursive run: each pair subgraph with its
/// sparsifier, and the sum of those sparsifiers before the final pass.
#[derive(Clone, Debug)]
pub struct TopLevel {
    pub pairs: Vec<(PairSubgraph, WeightedGraph)>,
    pub sum: WeightedGraph,
}

#[derive(Clone, Debug)]
pub struct SparsifyTrace {
    pub output: WeightedGraph,
    /// `None` when the input was small enough for a single pass.
    pub top: Option<TopLevel>,
}

fn recursive_traced(g: &WeightedGraph, b: usize, balcut: &dyn BalancedCut) -> Result<SparsifyTrace> {
    let n = g.n();
    if g.m() <= b * n || n <= 2 {
        return Ok(SparsifyTrace { output: sparsify_any(g, balcut)?, top: None });
    }
    let mut pairs = Vec::new();
    let mut sum = Vec::new();
    for pair in pair_subgraphs(g, b)? {
        let h = if pair.vertices.len() < n {
            recursive_traced(&pair.graph, b, balcut)?.output
        } else {
            sparsify_any(&pair.graph, balcut)?
        };
        sum.extend(h.edges().iter().map(|&(u, v, w)| (pair.vertices[u], pair.vertices[v], w)));
        pairs.push((pair, h));
    }
    let sum = WeightedGraph::new(n, sum)?;
    let output = sparsify_any(&sum, balcut)?;
    Ok(SparsifyTrace { output, top: Some(TopLevel { pairs, sum }) })
}

/// [`recursive_sparsify`] keeping the intermediate graphs of the top level.
pub fn recursive_sparsify_traced(g: &WeightedGraph, b: usize, balcut: &dyn BalancedCut) -> Result<SparsifyTrace> {
    if b < 2 {
        return domain(format!("branching must be at least 2, got {b}"));
    }
    if g.n() >= 2 && !g.is_connected() {
        return domain("graph must be connected");
    }
    recursive_traced(g, b, balcut)
}
/// Sparsifies by splitting the vertices into `b` contiguous parts,
/// sparsifying every pair subgraph recursively and sparsifying their sum.
pub fn recursive_sparsify(g: &WeightedGraph, b: usize, balcut: &dyn BalancedCut) -> Result<WeightedGraph> {
    Ok(recursive_sparsify_traced(g, b, balcut)?.output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete;
    use crate::pagerank::DenseCut;

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::new(1, vec![]).unwrap();
        assert_eq!(deterministic_sparsify(&g, &DenseCut).unwrap().m(), 0);
    }

    #[test]
    fn k9_three_parts() {
        let g = WeightedGraph::from_graph(&complete(9));
        let pairs = pair_subgraphs(&g, 3).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.vertices.len() == 6));
        let mut ids: Vec<usize> = pairs.iter().flat_map(|p| p.edge_ids.clone()).collect();
        ids.sort_unstable();
        assert_eq!(ids, (0..36).collect::<Vec<_>>());
    }

    #[test]
    fn bad_branching() {
        let g = WeightedGraph::from_graph(&complete(4));
        assert!(recursive_sparsify(&g, 1, &DenseCut).is_err());
        let disc = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(deterministic_sparsify(&disc, &DenseCut).is_err());
    }
}
