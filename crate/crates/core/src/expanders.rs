//! Explicit constant-degree expanders and the expander split of a graph.

use crate::error::{domain, Result};
use crate::graph::{mask_of, members_of, Graph};

/// Largest conductance of a split-graph cut that [`lift_cut`] accepts.
pub const ROUNDABLE_CONDUCTANCE: f64 = 1.0 / 64.0;
/// Conductance blow-up allowed when rounding a split-graph cut.
pub const LIFT_FACTOR: f64 = 32.0;

/// The 8-regular Margulis-type multigraph on `Z_k × Z_k`.
///
/// Vertex `(x, y)` has id `x·k + y` and is joined to `(x + 2y, y)`,
/// `(x + 2y + 1, y)`, `(x, y + 2x)` and `(x, y + 2x + 1)`; the inverse maps give
/// the other four neighbors. Self-loops and parallel edges are kept.
pub fn margulis_base(k: usize) -> Graph {
    let id = |x: usize, y: usize| (x % k) * k + (y % k);
    let mut edges = Vec::with_capacity(4 * k * k);
    for x in 0..k {
        for y in 0..k {
            let v = id(x, y);
            edges.push((v, id(x + 2 * y, y)));
            edges.push((v, id(x + 2 * y + 1, y)));
            edges.push((v, id(x, y + 2 * x)));
            edges.push((v, id(x, y + 2 * x + 1)));
        }
    }
    Graph::new(k * k, edges).expect("ids below k²")
}

/// Explicit expander on `n` vertices with degrees in `[8, 16]` for `n ≥ 10`
/// (complete graph below 10).
///
/// For `n ≥ 10`, `k` is the least integer with `n ≤ k²`; vertex `n + j` of the
/// base graph is merged into vertex `j` for `j < k² − n`.
pub fn gabber_galil(n: usize) -> Result<Graph> {
    if n == 0 {
        return domain("expander size must be at least 1");
    }
    if n < 10 {
        return Ok(crate::generators::complete(n));
    }
    let mut k = (n as f64).sqrt() as usize;
    while k * k < n {
        k += 1;
    }
    while (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    let base = margulis_base(k);
    let fold = |v: usize| if v >= n { v - n } else { v };
    Ok(Graph::new(n, base.edges().iter().map(|&(u, v)| (fold(u), fold(v))).collect()).expect("folded ids below n"))
}

/// A graph with every vertex replaced by an expander on its ports.
#[derive(Clone, Debug)]
pub struct ExpanderSplitMap {
    pub split_graph: Graph,
    /// Original vertex owning each split vertex.
    pub super_node: Vec<usize>,
    /// Split vertex of each (edge id, endpoint index) pair.
    pub port: Vec<[usize; 2]>,
    /// First split vertex of each original vertex.
    pub offset: Vec<usize>,
}

impl ExpanderSplitMap {
    /// Split vertices forming the super-node of `u`.
    pub fn super_members(&self, u: usize) -> std::ops::Range<usize> {
        self.offset[u]..self.offset[u + 1]
    }

    /// All split vertices of the super-nodes in `set`.
    pub fn expand(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().flat_map(|&u| self.super_members(u)).collect();
        out.sort_unstable();
        out
    }
}

/// Replaces each vertex `u` by an explicit expander on `deg(u)` vertices, one
/// per incident edge; the `i`-th port of `u` is wired to the matching port of
/// the other endpoint.
pub fn expander_split(g: &Graph) -> Result<ExpanderSplitMap> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return domain(format!("vertex {v} is isolated"));
    }
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + g.degree(v);
    }
    let total = offset[n];
    let mut super_node = vec![0usize; total];
    let mut edges = Vec::new();
    for u in 0..n {
        for i in offset[u]..offset[u + 1] {
            super_node[i] = u;
        }
        let x = gabber_galil(g.degree(u))?;
        edges.extend(x.edges().iter().map(|&(a, b)| (a + offset[u], b + offset[u])));
    }
    let mut port = vec![[usize::MAX; 2]; g.m()];
    for u in 0..n {
        for (i, &(_, e)) in g.neighbors(u).iter().enumerate() {
            let (a, b) = g.edge(e);
            let slot = if a == u && port[e][0] == usize::MAX { 0 } else if b == u { 1 } else { 0 };
            debug_assert_eq!(port[e][slot], usize::MAX);
            port[e][slot] = offset[u] + i;
        }
    }
    for p in &port {
        edges.push((p[0], p[1]));
    }
    let split_graph = Graph::new(total, edges)?;
    Ok(ExpanderSplitMap { split_graph, super_node, port, offset })
}

/// Super-node rounding: `u` joins the result when the split-side volume inside
/// its super-node is at least twice the volume outside.
pub(crate) fn round_super_nodes(map: &ExpanderSplitMap, mask: &[bool]) -> Vec<usize> {
    let g = &map.split_graph;
    let n = map.offset.len() - 1;
    (0..n)
        .filter(|&u| {
            let (mut inside, mut outside) = (0usize, 0usize);
            for x in map.super_members(u) {
                if mask[x] {
                    inside += g.degree(x);
                } else {
                    outside += g.degree(x);
                }
            }
            inside >= 2 * outside
        })
        .collect()
}

/// A split-graph cut rounded to a cut of the original graph.
#[derive(Clone, Debug)]
pub struct LiftedCut {
    pub members: Vec<usize>,
    pub split_conductance: f64,
}

/// Rounds a low-conductance cut of the split graph to a cut of `g` made of
/// whole super-nodes.
pub fn lift_cut(g: &Graph, map: &ExpanderSplitMap, split_cut: &[usize]) -> Result<LiftedCut> {
    let gs = &map.split_graph;
    if split_cut.is_empty() || split_cut.len() >= gs.n() {
        return domain("split cut must be a nonempty proper subset");
    }
    let mask = mask_of(gs.n(), split_cut)?;
    let split_conductance = crate::graph::conductance(gs, &members_of(&mask))?;
    if split_conductance > ROUNDABLE_CONDUCTANCE + crate::graph::EPS {
        return domain(format!("cut too expanding to round (conductance {split_conductance:.4} > 1/64)"));
    }
    let members = round_super_nodes(map, &mask);
    if members.is_empty() || members.len() == g.n() {
        return domain("rounding produced a trivial cut");
    }
    Ok(LiftedCut { members, split_conductance })
}
