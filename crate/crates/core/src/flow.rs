//! Vertex-capacitated maximum flow on undirected graphs, s–t vertex cuts and
//! flow-path decomposition.
//!
//! Every vertex `v` becomes an in-node `2v` and an out-node `2v + 1` joined by an
//! arc carrying the vertex capacity; each undirected edge becomes two arcs of
//! unbounded capacity between out- and in-nodes, except that an edge joining
//! source and sink directly carries one unit. Arcs at a node are scanned in
//! ascending target order, so results are reproducible.

use std::collections::VecDeque;

use crate::error::{domain, Result};
use crate::graph::Graph;

/// Capacity treated as unbounded.
pub const INF: u64 = u64::MAX / 4;

/// A graph with per-vertex capacities and a source/sink pair.
#[derive(Clone, Debug)]
pub struct FlowNetwork<'a> {
    pub base: &'a Graph,
    pub capacity: Vec<u64>,
    pub source: usize,
    pub sink: usize,
}

impl<'a> FlowNetwork<'a> {
    /// Network with every vertex capacity equal to `cap` (source and sink unbounded).
    pub fn uniform(base: &'a Graph, cap: u64, source: usize, sink: usize) -> Result<Self> {
        Self::new(base, vec![cap; base.n()], source, sink)
    }

    pub fn new(base: &'a Graph, capacity: Vec<u64>, source: usize, sink: usize) -> Result<Self> {
        let n = base.n();
        if source >= n || sink >= n {
            return domain(format!("terminal out of range for n={n}"));
        }
        if source == sink {
            return domain("source and sink coincide");
        }
        if capacity.len() != n {
            return domain("one capacity per vertex is required");
        }
        if let Some(v) = (0..n).find(|&v| capacity[v] == 0 && v != source && v != sink) {
            return domain(format!("vertex {v} has capacity 0"));
        }
        Ok(FlowNetwork { base, capacity, source, sink })
    }

    fn cap(&self, v: usize) -> u64 {
        if v == self.source || v == self.sink {
            INF
        } else {
            self.capacity[v].min(INF)
        }
    }
}

/// A source–sink path carrying `units` units of flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowPath {
    pub vertices: Vec<usize>,
    pub units: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    pub paths: Vec<FlowPath>,
    /// Minimum vertex cut, present when the flow stopped below the bound.
    pub min_cut_vertices: Option<Vec<usize>>,
}

impl FlowResult {
    /// Number of path units passing through each vertex, endpoints included.
    pub fn vertex_usage(&self, n: usize) -> Vec<u64> {
        let mut usage = vec![0u64; n];
        for p in &self.paths {
            for &v in &p.vertices {
                usage[v] += p.units;
            }
        }
        usage
    }
}

/// Residual network of the split graph.
#[derive(Clone, Debug)]
pub(crate) struct SplitResidual {
    pub(crate) adj: Vec<Vec<usize>>,
    pub(crate) to: Vec<usize>,
    pub(crate) cap: Vec<u64>,
    pub(crate) orig: Vec<u64>,
}

impl SplitResidual {
    /// Edges joining the two `terminals` carry one unit each; all other edges are unbounded.
    pub(crate) fn build(g: &Graph, cap: impl Fn(usize) -> u64, terminals: (usize, usize)) -> SplitResidual {
        let n = g.n();
        let mut r = SplitResidual { adj: vec![Vec::new(); 2 * n], to: Vec::new(), cap: Vec::new(), orig: Vec::new() };
        for v in 0..n {
            r.add_arc(2 * v, 2 * v + 1, cap(v));
        }
        for &(u, v) in g.edges() {
            if u != v {
                let direct = (u, v) == terminals || (v, u) == terminals;
                let c = if direct { 1 } else { INF };
                r.add_arc(2 * u + 1, 2 * v, c);
                r.add_arc(2 * v + 1, 2 * u, c);
            }
        }
        for node in 0..2 * n {
            let mut arcs = std::mem::take(&mut r.adj[node]);
            arcs.sort_by_key(|&a| (r.to[a], a));
            r.adj[node] = arcs;
        }
        r
    }

    fn add_arc(&mut self, a: usize, b: usize, c: u64) {
        let id = self.to.len();
        self.to.push(b);
        self.cap.push(c);
        self.orig.push(c);
        self.adj[a].push(id);
        self.to.push(a);
        self.cap.push(0);
        self.orig.push(0);
        self.adj[b].push(id + 1);
    }

    pub(crate) fn push(&mut self, arc: usize, amount: u64) {
        self.cap[arc] -= amount;
        self.cap[arc ^ 1] += amount;
    }

    /// One augmenting path from `s` to `t` by depth-first search; returns the amount pushed.
    pub(crate) fn augment_dfs(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let nodes = self.adj.len();
        let mut parent_arc = vec![usize::MAX; nodes];
        let mut visited = vec![false; nodes];
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        visited[s] = true;
        let mut found = false;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if u == t {
                found = true;
                break;
            }
            if *i < self.adj[u].len() {
                let a = self.adj[u][*i];
                *i += 1;
                let w = self.to[a];
                if self.cap[a] > 0 && !visited[w] {
                    visited[w] = true;
                    parent_arc[w] = a;
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
            }
        }
        if !found {
            return 0;
        }
        let mut amount = limit;
        let mut v = t;
        while v != s {
            let a = parent_arc[v];
            amount = amount.min(self.cap[a]);
            v = self.to[a ^ 1];
        }
        let mut v = t;
        while v != s {
            let a = parent_arc[v];
            self.push(a, amount);
            v = self.to[a ^ 1];
        }
        amount
    }

    /// Dinic blocking-flow phases until `bound` units are routed or no path remains.
    pub(crate) fn dinic(&mut self, s: usize, t: usize, bound: u64) -> u64 {
        let nodes = self.adj.len();
        let mut total = 0u64;
        while total < bound {
            let mut level = vec![usize::MAX; nodes];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && level[w] == usize::MAX {
                        level[w] = level[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if level[t] == usize::MAX {
                break;
            }
            let mut next = vec![0usize; nodes];
            loop {
                let pushed = self.blocking_dfs(s, t, bound - total, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= bound {
                    break;
                }
            }
        }
        total
    }

    fn blocking_dfs(&mut self, s: usize, t: usize, limit: u64, level: &[usize], next: &mut [usize]) -> u64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let amount = path.iter().fold(limit, |acc, &a| acc.min(self.cap[a]));
                for &a in &path {
                    self.push(a, amount);
                }
                return amount;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let a = self.adj[u][next[u]];
                let w = self.to[a];
                if self.cap[a] > 0 && level[w] == level[u] + 1 {
                    path.push(a);
                    u = w;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                let a = path.pop().expect("nonempty path below source");
                u = self.to[a ^ 1];
                next[u] += 1;
            }
        }
    }

    /// Nodes reachable from `s` through arcs with residual capacity.
    pub(crate) fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Vertices whose in-node is reachable from `s` but whose out-node is not.
    pub(crate) fn cut_vertices(&self, s: usize) -> Vec<usize> {
        let seen = self.reachable(s);
        (0..self.adj.len() / 2).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect()
    }

    /// Net flow on each base edge, as directed `(u, v, amount)` with amount > 0.
    pub(crate) fn edge_flows(&self, g: &Graph) -> Vec<(usize, usize, u64)> {
        let n = g.n();
        let mut out = Vec::new();
        // arcs 0..2n are internal pairs; edge arcs follow in insertion order
        let mut arc = 2 * n;
        for &(u, v) in g.edges() {
            if u == v {
                continue;
            }
            let uv = self.orig[arc] - self.cap[arc];
            let vu = self.orig[arc + 2] - self.cap[arc + 2];
            if uv > vu {
                out.push((u, v, uv - vu));
            } else if vu > uv {
                out.push((v, u, vu - uv));
            }
            arc += 4;
        }
        out
    }
}

fn run(net: &FlowNetwork, bound: Option<u64>, blocking: bool) -> FlowResult {
    let g = net.base;
    let bound = bound.unwrap_or(INF);
    let mut res = SplitResidual::build(g, |v| net.cap(v), (net.source, net.sink));
    let s = 2 * net.source + 1;
    let t = 2 * net.sink;
    let value = if blocking {
        res.dinic(s, t, bound)
    } else {
        let mut total = 0;
        while total < bound {
            let pushed = res.augment_dfs(s, t, bound - total);
            if pushed == 0 {
                break;
            }
            total += pushed;
        }
        total
    };
    let flows = res.edge_flows(g);
    let paths = decompose(g.n(), net.source, net.sink, &flows);
    let min_cut_vertices = (value < bound).then(|| res.cut_vertices(s));
    FlowResult { value, paths, min_cut_vertices }
}

/// Maximum flow capped at `bound` (unbounded when `None`) by depth-first augmenting paths.
pub fn max_flow(net: &FlowNetwork, bound: Option<u64>) -> FlowResult {
    run(net, bound, false)
}

/// Maximum flow capped at `bound` by blocking-flow phases.
pub fn max_flow_blocking(net: &FlowNetwork, bound: Option<u64>) -> FlowResult {
    run(net, bound, true)
}

/// Splits an integral flow into source–sink paths, cancelling any flow cycles.
fn decompose(n: usize, source: usize, sink: usize, flows: &[(usize, usize, u64)]) -> Vec<FlowPath> {
    let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for &(u, v, f) in flows {
        out[u].push((v, f));
    }
    for list in &mut out {
        list.sort_unstable();
    }
    let mut units: Vec<Vec<usize>> = Vec::new();
    loop {
        let mut path = vec![source];
        let mut pos = vec![usize::MAX; n];
        pos[source] = 0;
        let mut u = source;
        let mut stuck = false;
        while u != sink {
            let Some(slot) = out[u].iter().position(|&(_, f)| f > 0) else {
                stuck = true;
                break;
            };
            let w = out[u][slot].0;
            if pos[w] != usize::MAX {
                // cancel the cycle w -> ... -> u -> w
                let start = pos[w];
                let cycle: Vec<usize> = path[start..].to_vec();
                for i in 0..cycle.len() {
                    let a = cycle[i];
                    let b = if i + 1 < cycle.len() { cycle[i + 1] } else { w };
                    let e = out[a].iter_mut().find(|(x, f)| *x == b && *f > 0).expect("cycle arc");
                    e.1 -= 1;
                }
                for &x in &path[start + 1..] {
                    pos[x] = usize::MAX;
                }
                path.truncate(start + 1);
                u = w;
                continue;
            }
            pos[w] = path.len();
            path.push(w);
            u = w;
        }
        if stuck {
            break;
        }
        for i in 0..path.len() - 1 {
            let e = out[path[i]].iter_mut().find(|(x, f)| *x == path[i + 1] && *f > 0).expect("path arc");
            e.1 -= 1;
        }
        units.push(path);
    }
    let mut grouped: Vec<FlowPath> = Vec::new();
    for p in units {
        match grouped.iter_mut().find(|q| q.vertices == p) {
            Some(q) => q.units += 1,
            None => grouped.push(FlowPath { vertices: p, units: 1 }),
        }
    }
    grouped
}

/// Decomposes a given flow assignment, listed as directed `(u, v, amount)` on
/// edges of the base graph, into source–sink paths.
pub fn decompose_paths(net: &FlowNetwork, assignment: &[(usize, usize, f64)]) -> Result<Vec<FlowPath>> {
    let g = net.base;
    let n = g.n();
    let mut net_out = vec![0i128; n];
    let mut through = vec![0u64; n];
    let mut flows = Vec::new();
    for &(u, v, f) in assignment {
        if u >= n || v >= n || u == v || !g.has_edge(u, v) {
            return domain(format!("flow on ({u},{v}) does not follow an edge"));
        }
        if !f.is_finite() || f < 0.0 || (f - f.round()).abs() > 1e-9 {
            return domain(format!("flow {f} on ({u},{v}) is not a nonnegative integer"));
        }
        let f = f.round() as u64;
        if f == 0 {
            continue;
        }
        net_out[u] += f as i128;
        net_out[v] -= f as i128;
        through[v] += f;
        flows.push((u, v, f));
    }
    for v in 0..n {
        if v != net.source && v != net.sink && net_out[v] != 0 {
            return domain(format!("flow is not conserved at vertex {v}"));
        }
        if v != net.source && v != net.sink && through[v] > net.capacity[v] {
            return domain(format!("flow through vertex {v} exceeds its capacity"));
        }
    }
    Ok(decompose(n, net.source, net.sink, &flows))
}

/// Outcome of an s–t vertex connectivity query with threshold `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StConnectivity {
    /// κ(x, y) ≥ k.
    AtLeast(usize),
    /// A minimum vertex set separating x from y, of size below k.
    Cut(Vec<usize>),
}

/// Decides whether fewer than `k` vertices separate `x` from `y`.
///
/// Adjacent pairs have no separating set and always certify.
pub fn st_vertex_connectivity(g: &Graph, x: usize, y: usize, k: usize) -> Result<StConnectivity> {
    if x >= g.n() || y >= g.n() {
        return domain("query vertex out of range");
    }
    if x == y {
        return domain("x and y must differ");
    }
    if k == 0 || g.has_edge(x, y) {
        return Ok(StConnectivity::AtLeast(k));
    }
    let mut res = SplitResidual::build(g, |v| if v == x || v == y { INF } else { 1 }, (x, y));
    let s = 2 * x + 1;
    let t = 2 * y;
    let mut value = 0u64;
    while value < k as u64 {
        let pushed = res.augment_dfs(s, t, k as u64 - value);
        if pushed == 0 {
            break;
        }
        value += pushed;
    }
    if value >= k as u64 {
        Ok(StConnectivity::AtLeast(k))
    } else {
        Ok(StConnectivity::Cut(res.cut_vertices(s)))
    }
}

/// Vertex connectivity κ(G) by all-pairs flow; `n − 1` when no vertex cut exists.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for x in 0..n {
        for y in x + 1..n {
            if let Ok(StConnectivity::Cut(c)) = st_vertex_connectivity(g, x, y, best) {
                best = c.len();
            }
        }
    }
    best
}

/// A smallest vertex cut of size below `k`, searching all pairs.
pub fn min_vertex_cut_below(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    let mut limit = k;
    for x in 0..n {
        for y in x + 1..n {
            if let Ok(StConnectivity::Cut(c)) = st_vertex_connectivity(g, x, y, limit) {
                limit = c.len();
                best = Some(c);
                if limit == 0 {
                    return best;
                }
            }
        }
    }
    best
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
    fn k4_unit_capacities() {
        let g = complete(4);
        let net = FlowNetwork::uniform(&g, 1, 0, 3).unwrap();
        for r in [max_flow(&net, None), max_flow_blocking(&net, None)] {
            assert_eq!(r.value, 3);
            assert_eq!(r.paths.iter().map(|p| p.units).sum::<u64>(), 3);
            let usage = r.vertex_usage(4);
            assert!(usage[1] <= 1 && usage[2] <= 1);
        }
    }

    #[test]
    fn path_min_cut_and_zero_bound() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let net = FlowNetwork::uniform(&g, 1, 0, 2).unwrap();
        let r = max_flow(&net, None);
        assert_eq!(r.value, 1);
        assert_eq!(r.paths, vec![FlowPath { vertices: vec![0, 1, 2], units: 1 }]);
        assert_eq!(r.min_cut_vertices, Some(vec![1]));
        let r = max_flow(&net, Some(0));
        assert_eq!(r.value, 0);
        assert!(r.paths.is_empty());
    }

    #[test]
    fn st_queries() {
        assert_eq!(st_vertex_connectivity(&complete(4), 0, 1, 3).unwrap(), StConnectivity::AtLeast(3));
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).collect()).unwrap();
        match st_vertex_connectivity(&c6, 0, 3, 3).unwrap() {
            StConnectivity::Cut(c) => assert!(c == vec![1, 5] || c == vec![2, 4] || c.len() == 2),
            other => panic!("{other:?}"),
        }
        assert!(st_vertex_connectivity(&c6, 2, 2, 3).is_err());
    }

    #[test]
    fn decompose_given_assignment() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let net = FlowNetwork::uniform(&g, 1, 0, 2).unwrap();
        let p = decompose_paths(&net, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(p, vec![FlowPath { vertices: vec![0, 1, 2], units: 1 }]);
        assert!(decompose_paths(&net, &[(0, 1, 0.5), (1, 2, 0.5)]).is_err());
        assert!(decompose_paths(&net, &[(0, 1, 1.0)]).is_err());
        assert!(decompose_paths(&net, &[(0, 1, 2.0), (1, 2, 2.0)]).is_err());
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let net = FlowNetwork::uniform(&c4, 1, 0, 2).unwrap();
        let p = decompose_paths(&net, &[(0, 1, 1.0), (1, 2, 1.0), (0, 3, 1.0), (3, 2, 1.0)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|q| q.vertices.len() == 3));
    }
}
