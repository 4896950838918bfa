//! k-vertex-connectivity by divide and conquer on sparse separation triples.
//!
//! A graph is split along a triple `(L, S, R)` of low vertex expansion into two
//! side graphs, each with the far side replaced by a `k`-clique wired to `S`.
//! Both are sparsified to `k` forests and solved recursively. Graphs of high
//! vertex expansion are searched locally from every vertex instead.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::balcut::BalancedCut;
use crate::cutmatching::{approx_vertex_expansion, ExpansionOutcome};
use crate::error::{domain, Error, Result};
use crate::flow::{min_vertex_cut_below, st_vertex_connectivity, SplitResidual, StConnectivity, INF};
use crate::graph::{mask_of, validate_triple, Graph, SeparationTriple};
use crate::pagerank::DenseCut;

/// `k` edge-disjoint forests from a maximum-adjacency scan and their union.
#[derive(Clone, Debug)]
pub struct SparseCertificate {
    pub forests: Vec<Vec<(usize, usize)>>,
    pub union_graph: Graph,
}

/// Forest decomposition by maximum-adjacency ordering.
///
/// Scanning `v` sends each edge to an unscanned neighbour `u` into the forest
/// numbered by how many scanned neighbours `u` has seen so far. Edges landing
/// beyond forest `k` are dropped; self-loops are dropped as well.
pub fn nagamochi_ibaraki(g: &Graph, k: usize) -> Result<SparseCertificate> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let n = g.n();
    let mut rank = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n).map(|v| (0, Reverse(v))).collect();
    let mut forests = vec![Vec::new(); k];
    while let Some((r, Reverse(v))) = heap.pop() {
        if scanned[v] || r != rank[v] {
            continue;
        }
        scanned[v] = true;
        for &(u, e) in g.neighbors(v) {
            if scanned[u] {
                continue;
            }
            rank[u] += 1;
            if rank[u] <= k {
                forests[rank[u] - 1].push(g.edge(e));
            }
            heap.push((rank[u], Reverse(u)));
        }
    }
    let edges = forests.iter().flatten().copied().collect();
    Ok(SparseCertificate { union_graph: Graph::new(n, edges)?, forests })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `G[X ∪ S]` plus a `k`-clique joined completely to `S`, where `X` is one
/// side of the triple.
///
/// Local ids: the vertices of `X ∪ S` in increasing order, then the clique.
#[derive(Clone, Debug)]
pub struct SideGraph {
    pub graph: Graph,
    pub side: Side,
    pub clique_vertices: Vec<usize>,
    pub boundary: Vec<usize>,
    /// Original id of each non-clique local vertex.
    pub original: Vec<usize>,
}

impl SideGraph {
    fn build(g: &Graph, kept: &[usize], boundary: &[usize], k: usize, side: Side) -> SideGraph {
        let mut original: Vec<usize> = kept.iter().chain(boundary).copied().collect();
        original.sort_unstable();
        let (inner, _) = g.induced(&original);
        let base = original.len();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let clique: Vec<usize> = (base..base + k).collect();
        let mut edges = inner.edges().to_vec();
        for &s in boundary {
            edges.extend(clique.iter().map(|&c| (local[s], c)));
        }
        for (i, &a) in clique.iter().enumerate() {
            edges.extend(clique[i + 1..].iter().map(|&b| (a, b)));
        }
        SideGraph {
            graph: Graph::new(base + k, edges).expect("side graph edges in range"),
            side,
            clique_vertices: clique,
            boundary: boundary.to_vec(),
            original,
        }
    }

    /// Turns a vertex cut of size below `k` in this graph into one of `g`:
    /// clique vertices are moved out of the cut, then ids are mapped back.
    pub fn lift_cut(&self, cut: &[usize], g: &Graph) -> Result<Vec<usize>> {
        let base = self.original.len();
        if !self.graph.is_vertex_cut(cut) {
            return domain("side-graph cut does not separate the side graph");
        }
        let kept: Vec<usize> = cut.iter().copied().filter(|&v| v < base).collect();
        let mut removed = vec![false; self.graph.n()];
        for &v in &kept {
            removed[v] = true;
        }
        let comps = self.graph.components_without(&removed);
        if comps.len() < 2 {
            return domain("cut consists of clique vertices only");
        }
        let clique_split = comps.iter().filter(|c| c.iter().any(|&v| v >= base)).count() != 1;
        if clique_split {
            return domain("clique spans two sides after normalization");
        }
        let lifted: Vec<usize> = kept.iter().map(|&v| self.original[v]).collect();
        if !g.is_vertex_cut(&lifted) {
            return domain("lifted cut does not separate the parent graph");
        }
        Ok(lifted)
    }
}

/// The left and right side graphs of a triple.
pub fn build_side_graphs(g: &Graph, t: &SeparationTriple, k: usize) -> Result<(SideGraph, SideGraph)> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    let t = validate_triple(g, &t.l, &t.s, &t.r)?;
    Ok((SideGraph::build(g, &t.l, &t.s, k, Side::Left), SideGraph::build(g, &t.r, &t.s, k, Side::Right)))
}

/// Result of one local search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalOutcome {
    /// Vertex cut of size at most `k` whose near side contains `x`.
    Cut { cut: Vec<usize>, near_side: Vec<usize> },
    /// No cut of size at most `k` has a side of volume at most `ν` containing `x`.
    NoLocalCut,
}

/// Local augmenting search from `x` in the vertex-split residual graph.
///
/// Runs up to `k + 1` depth-first passes, each allowed `8νk` arc inspections.
/// A pass that runs out of budget routes one unit to the last vertex it
/// discovered. A pass that gets stuck exposes the cut around the reached set.
pub fn local_vc(g: &Graph, x: usize, nu: usize, k: usize) -> Result<LocalOutcome> {
    let n = g.n();
    if x >= n {
        return domain(format!("seed {x} out of range for n={n}"));
    }
    if nu == 0 {
        return domain("volume budget must be positive");
    }
    if n >= 2 && !g.is_connected() {
        return domain("graph must be connected");
    }
    if g.min_degree() < k {
        return domain(format!("k={k} exceeds the minimum degree {}", g.min_degree()));
    }
    let budget = 8 * nu * k.max(1);
    let mut res = SplitResidual::build(g, |v| if v == x { INF } else { 1 }, (usize::MAX, usize::MAX));
    let source = 2 * x + 1;
    let nodes = 2 * n;
    for _ in 0..=k {
        let mut visited = vec![false; nodes];
        let mut parent = vec![usize::MAX; nodes];
        visited[source] = true;
        visited[2 * x] = true;
        let mut last = source;
        let mut inspected = 0usize;
        let mut stack: Vec<(usize, usize)> = vec![(source, 0)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if inspected > budget {
                break;
            }
            if *i < res.adj[u].len() {
                let a = res.adj[u][*i];
                *i += 1;
                inspected += 1;
                let w = res.to[a];
                if res.cap[a] > 0 && !visited[w] {
                    visited[w] = true;
                    parent[w] = a;
                    last = w;
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
        if stack.is_empty() {
            return stuck_cut(g, x, k, &visited);
        }
        if last == source {
            return domain("search escaped without discovering a vertex");
        }
        let mut v = last;
        while v != source {
            let a = parent[v];
            res.push(a, 1);
            v = res.to[a ^ 1];
        }
    }
    Ok(LocalOutcome::NoLocalCut)
}

fn stuck_cut(g: &Graph, x: usize, k: usize, visited: &[bool]) -> Result<LocalOutcome> {
    let n = g.n();
    let near: Vec<usize> = (0..n).filter(|&v| visited[2 * v + 1]).collect();
    let cut: Vec<usize> = (0..n).filter(|&v| visited[2 * v] && !visited[2 * v + 1]).collect();
    if near.len() + cut.len() < n {
        debug_assert!(cut.len() <= k);
        return Ok(LocalOutcome::Cut { cut, near_side: near });
    }
    // The whole graph fit in the budget: decide exactly from `x`.
    for y in 0..n {
        if y == x || g.has_edge(x, y) {
            continue;
        }
        if let StConnectivity::Cut(cut) = st_vertex_connectivity(g, x, y, k + 1)? {
            let comps = g.components_without(&mask_of(n, &cut)?);
            let near_side = comps.into_iter().find(|c| c.contains(&x)).unwrap_or_default();
            return Ok(LocalOutcome::Cut { cut, near_side });
        }
    }
    Ok(LocalOutcome::NoLocalCut)
}

/// Finds `x, y ∈ S` separated by fewer than `k` vertices, or `None` when every
/// pair in `S` is `k`-connected.
pub fn split_vc(g: &Graph, s: &[usize], k: usize) -> Result<Option<Vec<usize>>> {
    if s.len() < k {
        return domain(format!("|S|={} is smaller than k={k}", s.len()));
    }
    mask_of(g.n(), s)?;
    let x_set = &s[..k];
    for (i, &x) in x_set.iter().enumerate() {
        for &y in &x_set[i + 1..] {
            if let StConnectivity::Cut(c) = st_vertex_connectivity(g, x, y, k)? {
                return Ok(Some(c));
            }
        }
    }
    let hub = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend(x_set.iter().map(|&x| (hub, x)));
    let extended = Graph::new(g.n() + 1, edges)?;
    for &v in &s[k..] {
        if let StConnectivity::Cut(c) = st_vertex_connectivity(&extended, hub, v, k)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Settings of [`main_vc_with`].
#[derive(Clone, Copy)]
pub struct VcConfig<'a> {
    /// Exponent in `(0, 1/2)` trading recursion depth against local search cost.
    pub a: f64,
    /// Graphs with at most this many vertices are solved by all-pairs flow;
    /// `None` means `max(64·k^{2/a}, 32)`.
    pub base_case: Option<usize>,
    pub balcut: &'a dyn BalancedCut,
}

impl VcConfig<'static> {
    pub fn new(a: f64) -> Self {
        VcConfig { a, base_case: None, balcut: &DenseCut }
    }
}

impl VcConfig<'_> {
    pub fn threshold(&self, k: usize) -> usize {
        self.base_case.unwrap_or_else(|| (64.0 * (k as f64).powf(2.0 / self.a)).max(32.0).ceil() as usize)
    }
}

/// Counters describing one run of [`main_vc_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VcStats {
    pub base_cases: usize,
    pub high_expansion: usize,
    pub low_expansion: usize,
    /// Triples rejected by the size check and handled by the local search.
    pub unbalanced_triples: usize,
    pub local_searches: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug)]
pub struct VcReport {
    /// A vertex cut of size below `k`, or `None` when the graph is `k`-connected.
    pub cut: Option<Vec<usize>>,
    pub stats: VcStats,
}

/// `main_vc_with` under the default configuration.
pub fn main_vc(g: &Graph, k: usize, a: f64) -> Result<Option<Vec<usize>>> {
    Ok(main_vc_with(g, k, &VcConfig::new(a))?.cut)
}

/// Decides whether `g` has a vertex cut of size below `k`, returning one if so.
pub fn main_vc_with(g: &Graph, k: usize, cfg: &VcConfig) -> Result<VcReport> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    if !(cfg.a > 0.0 && cfg.a < 0.5) {
        return domain(format!("a must lie in (0, 1/2), got {}", cfg.a));
    }
    if k >= g.n() {
        return domain(format!("k={k} must be smaller than n={}", g.n()));
    }
    let g = g.simple();
    let mut stats = VcStats::default();
    let cut = solve(&g, k, cfg, "root", 0, &mut stats)?;
    if let Some(c) = &cut {
        if c.len() >= k || !g.is_vertex_cut(c) {
            return domain(format!("internal: returned set {c:?} is not a vertex cut below {k}"));
        }
    }
    Ok(VcReport { cut, stats })
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Domain(s) => Error::Domain(format!("{path}: {s}")),
        Error::Budget(s) => Error::Budget(format!("{path}: {s}")),
        Error::RoundCap { cap, transcript } => Error::RoundCap { cap, transcript: format!("{path}: {transcript}") },
        other => other,
    }
}

/// Cut search for a graph whose vertex expansion is at least `eta`: the
/// minimum-degree neighbourhood, then a local search from every vertex.
pub fn high_expansion_branch(g: &Graph, k: usize, eta: f64) -> Result<Option<Vec<usize>>> {
    high_branch(g, k, eta, &mut VcStats::default())
}

fn high_branch(g: &Graph, k: usize, eta: f64, stats: &mut VcStats) -> Result<Option<Vec<usize>>> {
    stats.high_expansion += 1;
    let n = g.n();
    if let Some(u) = (0..n).min_by_key(|&u| (g.degree(u), u)) {
        if g.degree(u) < k {
            let nb = g.neighbor_set(u);
            if g.is_vertex_cut(&nb) {
                return Ok(Some(nb));
            }
        }
    }
    let nu = (6.0 * (k * k) as f64 / eta).ceil() as usize;
    for x in 0..n {
        stats.local_searches += 1;
        if let LocalOutcome::Cut { cut, .. } = local_vc(g, x, nu, k - 1)? {
            return Ok(Some(cut));
        }
    }
    Ok(None)
}

fn solve(g: &Graph, k: usize, cfg: &VcConfig, path: &str, depth: usize, stats: &mut VcStats) -> Result<Option<Vec<usize>>> {
    stats.max_depth = stats.max_depth.max(depth);
    let n = g.n();
    if n >= 2 && !g.is_connected() {
        return Ok(Some(Vec::new()));
    }
    if n <= cfg.threshold(k) {
        stats.base_cases += 1;
        return Ok(min_vertex_cut_below(g, k));
    }
    let eta = 1.0 / (2.0 * (n as f64).powf(1.0 - cfg.a));
    let report = approx_vertex_expansion(g, eta, cfg.balcut).map_err(|e| at(path, e))?;
    let t = match report.outcome {
        ExpansionOutcome::Certified { .. } => return high_branch(g, k, eta, stats).map_err(|e| at(path, e)),
        ExpansionOutcome::Triple(t) => t,
    };
    let smaller = t.l.len().min(t.r.len());
    if (smaller as f64) < (n as f64).powf(1.0 - cfg.a) / 4.0 {
        stats.unbalanced_triples += 1;
        return high_branch(g, k, eta, stats).map_err(|e| at(path, e));
    }
    if smaller <= k {
        // A side graph would be as large as `g`; decide exactly instead.
        stats.base_cases += 1;
        return Ok(min_vertex_cut_below(g, k));
    }
    stats.low_expansion += 1;
    if t.s.len() < k {
        return Ok(Some(t.s));
    }
    if let Some(c) = split_vc(g, &t.s, k).map_err(|e| at(path, e))? {
        return Ok(Some(c));
    }
    let (left, right) = build_side_graphs(g, &t, k).map_err(|e| at(path, e))?;
    for (side, tag) in [(left, "L"), (right, "R")] {
        let sparse = nagamochi_ibaraki(&side.graph, k)?.union_graph;
        let sub_path = format!("{path}.{tag}");
        if let Some(c) = solve(&sparse, k, cfg, &sub_path, depth + 1, stats)? {
            return side.lift_cut(&c, g).map(Some).map_err(|e| at(&sub_path, e));
        }
    }
    Ok(None)
}
