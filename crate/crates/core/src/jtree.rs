//! Balanced cuts through j-trees.
//!
//! A j-tree is a forest whose trees each hang off one core vertex, plus edges
//! between core vertices. Every edge of the source graph is routed canonically
//! (forest path, at most one core edge, forest path), so each j-tree dominates
//! every cut of the source exactly. Trees come from multiplicative weights over
//! minimum spanning trees. A cut is searched for on the core with an inner
//! balanced-cut routine and on the contracted forest with a linear-time tree
//! rule; the best result is lifted back through the expander split.

use std::collections::BTreeMap;

use crate::balcut::{BalCutOutcome, BalancedCut, Certificate, CertificateBasis};
use crate::error::{domain, Result};
use crate::expanders::{expander_split, round_super_nodes, ExpanderSplitMap, LIFT_FACTOR};
use crate::graph::{complement, Graph, WeightedGraph, EPS};
use crate::pagerank::DenseCut;
use crate::sparsify::{default_branching, recursive_sparsify};

/// Degree bound of an expander-split graph.
pub const SPLIT_MAX_DEGREE: usize = 17;
/// Graphs with at most this many edges go straight to the dense routine.
pub const DENSE_EDGE_LIMIT: usize = 32;

const NONE: usize = usize::MAX;

/// A rooted forest with ancestor tables for lowest common ancestors.
struct RootedForest {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    root: Vec<usize>,
    /// Vertices in BFS order from the roots.
    order: Vec<usize>,
    up: Vec<Vec<usize>>,
}

impl RootedForest {
    /// `adj[v]` lists `(neighbor, edge index)` pairs of forest edges.
    fn new(n: usize, adj: &[Vec<(usize, usize)>], roots: &[usize]) -> RootedForest {
        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut depth = vec![0; n];
        let mut root = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        for &r in roots {
            parent[r] = r;
            root[r] = r;
            order.push(r);
            let mut head = order.len() - 1;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &(w, e) in &adj[v] {
                    if root[w] == NONE {
                        root[w] = r;
                        parent[w] = v;
                        parent_edge[w] = e;
                        depth[w] = depth[v] + 1;
                        order.push(w);
                    }
                }
            }
        }
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        let mut up = vec![parent.clone()];
        for k in 1..levels {
            let prev = &up[k - 1];
            let next: Vec<usize> = (0..n).map(|v| if prev[v] == NONE { NONE } else { prev[prev[v]] }).collect();
            up.push(next);
        }
        RootedForest { parent, parent_edge, depth, root, order, up }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        if self.depth[a] < self.depth[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let mut diff = self.depth[a] - self.depth[b];
        let mut k = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                a = self.up[k][a];
            }
            diff >>= 1;
            k += 1;
        }
        if a == b {
            return a;
        }
        for k in (0..self.up.len()).rev() {
            if self.up[k][a] != self.up[k][b] {
                a = self.up[k][a];
                b = self.up[k][b];
            }
        }
        self.parent[a]
    }

    /// Turns point differences into subtree sums: afterwards `diff[v]` is the
    /// load on the edge from `v` to its parent.
    fn accumulate(&self, diff: &mut [i64]) {
        for &v in self.order.iter().rev() {
            let p = self.parent[v];
            if p != v {
                diff[p] += diff[v];
            }
        }
    }
}

/// Number of source edges routed over each tree edge of a spanning tree.
fn tree_congestion(g: &Graph, tree_edges: &[usize]) -> Vec<i64> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for (i, &e) in tree_edges.iter().enumerate() {
        let (a, b) = g.edge(e);
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let f = RootedForest::new(n, &adj, &[0]);
    let mut diff = vec![0i64; n];
    for &(u, v) in g.edges() {
        if u != v {
            diff[u] += 1;
            diff[v] += 1;
            diff[f.lca(u, v)] -= 2;
        }
    }
    f.accumulate(&mut diff);
    let mut cong = vec![0i64; tree_edges.len()];
    for v in 0..n {
        if f.parent_edge[v] != NONE {
            cong[f.parent_edge[v]] = diff[v];
        }
    }
    cong
}

fn find(dsu: &mut [usize], mut x: usize) -> usize {
    while dsu[x] != x {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
    }
    x
}

/// Minimum spanning tree by Kruskal, ties broken by edge id; returns edge ids.
fn minimum_spanning_tree(g: &Graph, log_len: &[f64]) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..g.m()).filter(|&e| g.edge(e).0 != g.edge(e).1).collect();
    ids.sort_by(|&a, &b| log_len[a].total_cmp(&log_len[b]).then(a.cmp(&b)));
    let mut dsu: Vec<usize> = (0..g.n()).collect();
    let mut out = Vec::with_capacity(g.n().saturating_sub(1));
    for e in ids {
        let (u, v) = g.edge(e);
        let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
        if ru != rv {
            dsu[ru] = rv;
            out.push(e);
        }
    }
    out
}

/// A canonical j-tree of a source graph.
#[derive(Clone, Debug)]
pub struct JTree {
    /// Forest edges weighted by routed load, plus core edges weighted by multiplicity.
    pub graph: WeightedGraph,
    pub core: Vec<usize>,
    /// Forest edges `(u, v, load)`.
    pub forest: Vec<(usize, usize, f64)>,
    /// Core edges `(r, r', multiplicity)` with `r < r'`.
    pub core_edges: Vec<(usize, usize, f64)>,
    /// Core vertex of each vertex's tree.
    pub root_of: Vec<usize>,
    /// Per core vertex: number of source edges with both ends in its tree.
    pub same_root_edges: Vec<f64>,
    /// Mean number of j-tree edges on the route of a source edge.
    pub stretch: f64,
    pub source_edges: usize,
}

impl JTree {
    /// The core graph: core edges plus one self-loop per same-root source edge,
    /// on local ids given by the position in `core`.
    pub fn core_graph(&self) -> WeightedGraph {
        let mut local = vec![NONE; self.root_of.len()];
        for (i, &r) in self.core.iter().enumerate() {
            local[r] = i;
        }
        let mut edges: Vec<(usize, usize, f64)> =
            self.core_edges.iter().map(|&(a, b, w)| (local[a], local[b], w)).collect();
        for (i, &r) in self.core.iter().enumerate() {
            if self.same_root_edges[r] > 0.0 {
                edges.push((i, i, self.same_root_edges[r]));
            }
        }
        WeightedGraph::new(self.core.len(), edges).expect("core ids in range")
    }

    /// All vertices whose tree hangs off one of the given core vertices.
    pub fn expand_core(&self, core_subset: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.root_of.len()];
        for &r in core_subset {
            mark[r] = true;
        }
        (0..self.root_of.len()).filter(|&v| mark[self.root_of[v]]).collect()
    }
}

/// Splits a spanning tree into at most `j` pieces, one core vertex each.
fn select_core(n: usize, g: &Graph, tree_edges: &[usize], cong: &[i64], j: usize) -> (Vec<usize>, Vec<bool>) {
    let mut by_load: Vec<usize> = (0..tree_edges.len()).collect();
    by_load.sort_by(|&a, &b| cong[b].cmp(&cong[a]).then(a.cmp(&b)));
    let mut candidate = vec![false; n];
    for &i in by_load.iter().take(j / 2) {
        let (a, b) = g.edge(tree_edges[i]);
        candidate[a] = true;
        candidate[b] = true;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &e) in tree_edges.iter().enumerate() {
        let (a, b) = g.edge(e);
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut removed = vec![false; tree_edges.len()];
    loop {
        let mut comp = vec![NONE; n];
        let mut split = None;
        for s in 0..n {
            if comp[s] != NONE {
                continue;
            }
            comp[s] = s;
            let mut stack = vec![s];
            let mut cands = Vec::new();
            while let Some(v) = stack.pop() {
                if candidate[v] {
                    cands.push(v);
                }
                for &(w, i) in &adj[v] {
                    if !removed[i] && comp[w] == NONE {
                        comp[w] = s;
                        stack.push(w);
                    }
                }
            }
            if cands.len() >= 2 {
                cands.sort_unstable();
                split = Some((cands[0], cands[1]));
                break;
            }
        }
        let Some((a, b)) = split else { break };
        // Path from a to b, then cut its most loaded edge.
        let mut prev = vec![(NONE, NONE); n];
        prev[a] = (a, NONE);
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &(w, i) in &adj[v] {
                if !removed[i] && prev[w].0 == NONE {
                    prev[w] = (v, i);
                    queue.push_back(w);
                }
            }
        }
        let mut best: Option<usize> = None;
        let mut v = b;
        while v != a {
            let (p, i) = prev[v];
            if best.is_none_or(|bi| cong[i] > cong[bi] || (cong[i] == cong[bi] && i < bi)) {
                best = Some(i);
            }
            v = p;
        }
        removed[best.expect("distinct candidates are joined by a path")] = true;
    }
    // One core vertex per forest tree: its candidate, or the vertex with the
    // most loaded incident tree edge.
    let mut comp = vec![NONE; n];
    let mut core = Vec::new();
    for s in 0..n {
        if comp[s] != NONE {
            continue;
        }
        comp[s] = s;
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &(w, i) in &adj[v] {
                if !removed[i] && comp[w] == NONE {
                    comp[w] = s;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        let pick = members.iter().copied().find(|&v| candidate[v]).unwrap_or_else(|| {
            let load = |v: usize| adj[v].iter().map(|&(_, i)| cong[i]).max().unwrap_or(0);
            *members.iter().max_by(|&&a, &&b| load(a).cmp(&load(b)).then(b.cmp(&a))).expect("nonempty")
        });
        core.push(pick);
    }
    core.sort_unstable();
    (core, removed)
}

/// Canonical j-tree for a spanning tree with some edges removed and the given core.
fn canonical_jtree(g: &Graph, tree_edges: &[usize], removed: &[bool], core: Vec<usize>) -> JTree {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    let mut forest_ids = Vec::new();
    for (i, &e) in tree_edges.iter().enumerate() {
        if !removed[i] {
            let (a, b) = g.edge(e);
            let k = forest_ids.len();
            adj[a].push((b, k));
            adj[b].push((a, k));
            forest_ids.push(e);
        }
    }
    let f = RootedForest::new(n, &adj, &core);
    let mut diff = vec![0i64; n];
    let mut core_mult: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut same_root = vec![0.0; n];
    let mut route_total = 0usize;
    let mut routed = 0usize;
    for &(u, v) in g.edges() {
        let (ru, rv) = (f.root[u], f.root[v]);
        if ru == rv {
            same_root[ru] += 1.0;
            if u == v {
                continue;
            }
            let a = f.lca(u, v);
            diff[u] += 1;
            diff[v] += 1;
            diff[a] -= 2;
            route_total += f.depth[u] + f.depth[v] - 2 * f.depth[a];
        } else {
            diff[u] += 1;
            diff[ru] -= 1;
            diff[v] += 1;
            diff[rv] -= 1;
            *core_mult.entry((ru.min(rv), ru.max(rv))).or_insert(0.0) += 1.0;
            route_total += f.depth[u] + f.depth[v] + 1;
        }
        routed += 1;
    }
    f.accumulate(&mut diff);
    let mut forest = Vec::with_capacity(forest_ids.len());
    for v in 0..n {
        if f.parent_edge[v] != NONE {
            forest.push((f.parent[v].min(v), f.parent[v].max(v), diff[v] as f64));
        }
    }
    forest.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let core_edges: Vec<(usize, usize, f64)> = core_mult.into_iter().map(|((a, b), w)| (a, b, w)).collect();
    let graph = WeightedGraph::new(n, forest.iter().chain(core_edges.iter()).copied().collect())
        .expect("j-tree edges in range");
    JTree {
        graph,
        core,
        forest,
        core_edges,
        root_of: f.root,
        same_root_edges: same_root,
        stretch: if routed == 0 { 1.0 } else { route_total as f64 / routed as f64 },
        source_edges: g.m(),
    }
}

/// `t` canonical j-trees with at most `j` core vertices each, from
/// multiplicative weights over minimum spanning trees.
pub fn build_jtrees(g: &Graph, t: usize, j: usize) -> Result<Vec<JTree>> {
    if t < 1 {
        return domain("need at least one tree");
    }
    if j < 1 {
        return domain("core budget must be at least 1");
    }
    if g.n() == 0 || !g.is_connected() {
        return domain("graph must be connected");
    }
    let n = g.n();
    let m = g.m().max(1) as f64;
    let scale = t as f64 / (m * (n.max(2) as f64).ln());
    let mut log_len = vec![0.0f64; g.m()];
    let mut out = Vec::with_capacity(t);
    for _ in 0..t {
        let tree = minimum_spanning_tree(g, &log_len);
        let cong = tree_congestion(g, &tree);
        for (i, &e) in tree.iter().enumerate() {
            log_len[e] += (cong[i] as f64 * scale).ln_1p();
        }
        let (core, removed) = select_core(n, g, &tree, &cong, j);
        out.push(canonical_jtree(g, &tree, &removed, core));
    }
    Ok(out)
}

/// A tree with vertex weights and edge multiplicities, rooted so that every
/// subtree below the root carries at most half the total weight.
#[derive(Clone, Debug)]
pub struct WeightedMultiTree {
    pub root: usize,
    /// Parent of each vertex (`None` for the root).
    pub parent: Vec<Option<usize>>,
    /// Multiplicity of the edge to the parent (0 at the root).
    pub multiplicity: Vec<f64>,
    pub weight: Vec<f64>,
    /// Vertices in BFS order from the root.
    order: Vec<usize>,
}

impl WeightedMultiTree {
    /// Roots the tree given by `edges` at `root` and checks the half-weight invariant.
    pub fn new(weight: Vec<f64>, edges: &[(usize, usize, f64)], root: usize) -> Result<Self> {
        let n = weight.len();
        if n == 0 || root >= n {
            return domain("root must be a vertex of a nonempty tree");
        }
        if edges.len() + 1 != n {
            return domain(format!("a tree on {n} vertices needs {} edges, got {}", n - 1, edges.len()));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b, _)) in edges.iter().enumerate() {
            if a >= n || b >= n || a == b {
                return domain(format!("tree edge {i} = ({a},{b}) is invalid"));
            }
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let f = RootedForest::new(n, &adj, &[root]);
        if f.order.len() != n {
            return domain("edges do not form a tree");
        }
        let parent = (0..n).map(|v| if v == root { None } else { Some(f.parent[v]) }).collect();
        let multiplicity = (0..n).map(|v| if v == root { 0.0 } else { edges[f.parent_edge[v]].2 }).collect();
        let t = WeightedMultiTree { root, parent, multiplicity, weight, order: f.order };
        let sub = t.subtree_weights();
        let total: f64 = t.weight.iter().sum();
        if let Some(v) = (0..n).find(|&v| v != root && sub[v] > total / 2.0 + EPS) {
            return domain(format!("subtree of {v} has weight {} > half of {total}", sub[v]));
        }
        Ok(t)
    }

    /// A root meeting the half-weight invariant (smallest id among candidates).
    pub fn centroid(weight: &[f64], edges: &[(usize, usize, f64)]) -> usize {
        let n = weight.len();
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b, _)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let f = RootedForest::new(n, &adj, &[0]);
        let mut sub = weight.to_vec();
        for &v in f.order.iter().rev() {
            if f.parent[v] != v {
                sub[f.parent[v]] += sub[v];
            }
        }
        let total: f64 = weight.iter().sum();
        (0..n)
            .find(|&v| {
                let above = total - sub[v];
                above <= total / 2.0 + EPS
                    && adj[v].iter().all(|&(w, _)| f.parent[v] == w || sub[w] <= total / 2.0 + EPS)
            })
            .expect("every weighted tree has a centroid")
    }

    pub fn n(&self) -> usize {
        self.weight.len()
    }

    /// Weight of the subtree below each vertex.
    pub fn subtree_weights(&self) -> Vec<f64> {
        let mut sub = self.weight.clone();
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                sub[p] += sub[v];
            }
        }
        sub
    }

    /// Vertices of the subtree rooted at `u`.
    pub fn subtree(&self, u: usize) -> Vec<usize> {
        let mut inside = vec![false; self.n()];
        inside[u] = true;
        for &v in &self.order {
            if let Some(p) = self.parent[v] {
                if inside[p] {
                    inside[v] = true;
                }
            }
        }
        (0..self.n()).filter(|&v| inside[v]).collect()
    }

    /// Total multiplicity of tree edges with exactly one end in `set`.
    pub fn boundary(&self, set: &[usize]) -> f64 {
        let mut inside = vec![false; self.n()];
        set.iter().for_each(|&v| inside[v] = true);
        (0..self.n())
            .filter_map(|v| self.parent[v].map(|p| (v, p)))
            .filter(|&(v, p)| inside[v] != inside[p])
            .map(|(v, _)| self.multiplicity[v])
            .sum()
    }
}

/// Union of light-boundary subtrees: every non-root `u` whose parent edge
/// multiplicity is at most `2φ·w(V_u)` is eligible, the topmost eligible
/// subtrees are added in id order, stopping once a quarter of the weight is
/// reached.
pub fn rooted_tree_cut(t: &WeightedMultiTree, phi: f64) -> Vec<usize> {
    let n = t.n();
    let sub = t.subtree_weights();
    let total: f64 = t.weight.iter().sum();
    let eligible: Vec<bool> = (0..n)
        .map(|u| u != t.root && t.multiplicity[u] <= 2.0 * phi * sub[u] + EPS)
        .collect();
    // Topmost eligible vertices: no eligible proper ancestor.
    let mut covered = vec![false; n];
    let mut top = Vec::new();
    for &v in &t.order {
        let above = t.parent[v].is_some_and(|p| covered[p]);
        if above {
            covered[v] = true;
        } else if eligible[v] {
            covered[v] = true;
            top.push(v);
        }
    }
    top.sort_unstable();
    let mut s = Vec::new();
    let mut w = 0.0;
    for u in top {
        s.extend(t.subtree(u));
        w += sub[u];
        if w >= total / 4.0 {
            break;
        }
    }
    s.sort_unstable();
    s
}

/// Which search produced a j-tree cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutBranch {
    Core,
    Tree,
}

/// A cut of the source graph found on one j-tree.
#[derive(Clone, Debug, PartialEq)]
pub struct JTreeCut {
    pub members: Vec<usize>,
    pub branch: CutBranch,
    /// Cut weight in the j-tree over the smaller side's vertex count.
    pub jtree_sparsity: f64,
}

fn jtree_sparsity(j: &JTree, members: &[usize]) -> f64 {
    let n = j.root_of.len();
    let mut mask = vec![false; n];
    members.iter().for_each(|&v| mask[v] = true);
    let small = members.len().min(n - members.len());
    j.graph.cut_weight(&mask) / small as f64
}

/// Sparsity threshold a j-tree cut must meet.
pub fn jtree_cut_threshold(inner: &dyn BalancedCut, phi: f64, m: f64) -> f64 {
    SPLIT_MAX_DEGREE as f64 * inner.conductance_bound(3.0 * phi, m).max(6.0 * phi)
}

/// Searches one j-tree for a sparse balanced cut: the inner routine on the
/// core graph at `3φ` and the subtree rule on the forest with the core
/// contracted. Of the qualifying cuts the one with the larger smaller-side
/// volume wins, the tree cut on ties. `None` when neither search finds a cut.
pub fn jtree_cut(g: &Graph, j: &JTree, phi: f64, inner: &dyn BalancedCut) -> Result<Option<JTreeCut>> {
    let n = g.n();
    if j.root_of.len() != n || j.source_edges != g.m() || j.core.iter().any(|&r| r >= n || j.root_of[r] != r) {
        return domain("j-tree does not belong to this graph");
    }
    let mut found: Vec<JTreeCut> = Vec::new();
    // Tree search: core contracted into node `k`, the last id.
    let mut node = vec![NONE; n];
    let mut next = 0;
    for v in 0..n {
        if j.root_of[v] != v {
            node[v] = next;
            next += 1;
        }
    }
    let k = next;
    for &r in &j.core {
        node[r] = k;
    }
    let mut weight = vec![1.0; k + 1];
    weight[k] = j.core.len() as f64;
    let tree_edges: Vec<(usize, usize, f64)> = j.forest.iter().map(|&(a, b, w)| (node[a], node[b], w)).collect();
    let root = WeightedMultiTree::centroid(&weight, &tree_edges);
    let t = WeightedMultiTree::new(weight, &tree_edges, root)?;
    let s_tree = rooted_tree_cut(&t, phi);
    if !s_tree.is_empty() {
        let mut pick = vec![false; k + 1];
        s_tree.iter().for_each(|&x| pick[x] = true);
        let members: Vec<usize> = (0..n).filter(|&v| pick[node[v]]).collect();
        if members.len() < n {
            let jtree_sparsity = jtree_sparsity(j, &members);
            found.push(JTreeCut { members, branch: CutBranch::Tree, jtree_sparsity });
        }
    }
    // Core search.
    if j.core.len() >= 2 {
        let hk = j.core_graph();
        if let BalCutOutcome::Cut(s) = inner.run(&hk, 3.0 * phi)? {
            let chosen: Vec<usize> = s.iter().map(|&i| j.core[i]).collect();
            let members = j.expand_core(&chosen);
            if !members.is_empty() && members.len() < n {
                let jtree_sparsity = jtree_sparsity(j, &members);
                found.push(JTreeCut { members, branch: CutBranch::Core, jtree_sparsity });
            }
        }
    }
    let threshold = jtree_cut_threshold(inner, phi, g.total_volume() as f64 / 2.0);
    let deg_vol = |s: &[usize]| {
        let v = g.volume(s);
        v.min(g.total_volume() - v)
    };
    Ok(found
        .into_iter()
        .filter(|c| c.jtree_sparsity <= threshold + EPS)
        .max_by(|a, b| {
            deg_vol(&a.members)
                .cmp(&deg_vol(&b.members))
                .then((b.branch == CutBranch::Tree).cmp(&(a.branch == CutBranch::Tree)).reverse())
        }))
}

/// Trace of a j-tree run.
#[derive(Clone, Debug, PartialEq)]
pub struct JTreeRun {
    pub outcome: BalCutOutcome,
    pub trees: usize,
    pub core_budget: usize,
    /// Mean stretch over all trees.
    pub mean_stretch: f64,
    /// Parameter passed to each per-tree search.
    pub tree_phi: f64,
    /// True when the input was handed to the inner routine directly.
    pub fell_back: bool,
}

fn lift_loose(map: &ExpanderSplitMap, members: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut mask = vec![false; map.split_graph.n()];
    members.iter().for_each(|&v| mask[v] = true);
    let strict = round_super_nodes(map, &mask);
    if !strict.is_empty() && strict.len() < n {
        return Some(strict);
    }
    let flipped: Vec<bool> = mask.iter().map(|b| !b).collect();
    let other = round_super_nodes(map, &flipped);
    if !other.is_empty() && other.len() < n {
        return Some(complement(n, &other));
    }
    None
}

/// Balanced cut via `k`-fold size reduction into j-trees.
///
/// The graph is expander-split to bounded degree, `k` j-trees with cores of
/// at most `⌈2m/k⌉` vertices are built, and each is searched at
/// `φ·stretch·Δ`. Lifted cuts are ranked by conductance in `g`: the most
/// balanced within [`JTreeRoutine::conductance_bound`] wins, else the sparsest.
/// With no cut on any tree the run certifies (conditional on the stretch).
pub fn jtree_balanced_cut(g: &Graph, phi: f64, k: usize, inner: &dyn BalancedCut) -> Result<JTreeRun> {
    if !(phi > 0.0 && phi.is_finite()) {
        return domain(format!("phi must be positive, got {phi}"));
    }
    if g.n() >= 2 && !g.is_connected() {
        return domain("graph must be connected");
    }
    let fallback = |core_budget: usize| -> Result<JTreeRun> {
        Ok(JTreeRun {
            outcome: inner.run(&WeightedGraph::from_graph(g), phi)?,
            trees: 0,
            core_budget,
            mean_stretch: 1.0,
            tree_phi: phi,
            fell_back: true,
        })
    };
    if g.n() < 2 || k <= 1 {
        return fallback(g.n());
    }
    let map = expander_split(g)?;
    let gs = &map.split_graph;
    let core_budget = gs.n().div_ceil(k);
    if core_budget < 2 {
        return fallback(core_budget);
    }
    let trees = build_jtrees(gs, k, core_budget)?;
    let mean_stretch = trees.iter().map(|t| t.stretch).sum::<f64>() / trees.len() as f64;
    let tree_phi = phi * mean_stretch * SPLIT_MAX_DEGREE as f64;
    let mut lifted: Vec<Vec<usize>> = Vec::new();
    let mut any_cut = false;
    for t in &trees {
        if let Some(c) = jtree_cut(gs, t, tree_phi, inner)? {
            any_cut = true;
            if let Some(s) = lift_loose(&map, &c.members, g.n()) {
                if !lifted.contains(&s) {
                    lifted.push(s);
                }
            }
        }
    }
    let run = |outcome| JTreeRun { outcome, trees: trees.len(), core_budget, mean_stretch, tree_phi, fell_back: false };
    if !any_cut {
        return Ok(run(BalCutOutcome::Certified(Certificate { lower_bound: phi, basis: CertificateBasis::JTreeFamily })));
    }
    if lifted.is_empty() {
        return Ok(JTreeRun { trees: trees.len(), mean_stretch, tree_phi, ..fallback(core_budget)? });
    }
    let bound = JTreeRoutine { inner }.conductance_bound(phi, g.m() as f64);
    let total = g.total_volume();
    let scored: Vec<(f64, usize, Vec<usize>)> = lifted
        .into_iter()
        .map(|s| {
            let c = crate::graph::conductance(g, &s).expect("proper subset");
            let v = g.volume(&s);
            let small = if v <= total - v { s } else { complement(g.n(), &s) };
            (c, v.min(total - v), small)
        })
        .collect();
    let pick = scored
        .iter()
        .filter(|x| x.0 <= bound + EPS)
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.total_cmp(&a.0)))
        .or_else(|| scored.iter().min_by(|a, b| a.0.total_cmp(&b.0)))
        .expect("at least one lifted cut");
    Ok(run(BalCutOutcome::Cut(pick.2.clone())))
}

/// [`jtree_balanced_cut`] as a [`BalancedCut`] on unit-weight graphs.
pub struct JTreeRoutine<'a> {
    pub inner: &'a dyn BalancedCut,
}

impl BalancedCut for JTreeRoutine<'_> {
    fn name(&self) -> &'static str {
        "jtree"
    }

    fn run(&self, g: &WeightedGraph, phi: f64) -> Result<BalCutOutcome> {
        if g.edges().iter().any(|e| e.2 != 1.0) {
            return domain("the j-tree routine needs unit edge weights");
        }
        let k = Profile::OneShot.reduction(g.m());
        Ok(jtree_balanced_cut(&g.skeleton(), phi, k, self.inner)?.outcome)
    }

    /// Lifting, degree and stretch losses on top of the inner guarantee, with
    /// `log₂(2m)` standing in for the stretch.
    fn conductance_bound(&self, phi: f64, m: f64) -> f64 {
        let stretch = (2.0 * m).max(2.0).log2();
        let tree_phi = phi * stretch * SPLIT_MAX_DEGREE as f64;
        (LIFT_FACTOR * jtree_cut_threshold(self.inner, tree_phi, 2.0 * m)).min(1.0)
    }
}

/// The dense routine run on a recursive sparsifier of its input.
#[derive(Clone, Copy, Debug, Default)]
pub struct SparsifiedDense;

impl BalancedCut for SparsifiedDense {
    fn name(&self) -> &'static str {
        "sparsified-pagerank"
    }

    fn run(&self, g: &WeightedGraph, phi: f64) -> Result<BalCutOutcome> {
        if g.n() < 2 {
            return DenseCut.run(g, phi);
        }
        let h = recursive_sparsify(g, default_branching(g.n()), &DenseCut)?;
        Ok(match DenseCut.run(&h, phi)? {
            BalCutOutcome::Certified(c) => {
                BalCutOutcome::Certified(Certificate { lower_bound: c.lower_bound, basis: CertificateBasis::Sparsified })
            }
            cut => cut,
        })
    }

    fn conductance_bound(&self, phi: f64, m: f64) -> f64 {
        DenseCut.conductance_bound(phi, m)
    }
}

/// Which composition [`pipeline_cut`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// j-trees with `k = ⌈m^{2/3}⌉` over the dense routine.
    OneShot,
    /// j-trees with `k = ⌈m^{1/2}⌉` over the dense routine on a sparsifier.
    Recursive,
}

impl Profile {
    pub fn reduction(self, m: usize) -> usize {
        let m = m as f64;
        let k = match self {
            Profile::OneShot => m.powf(2.0 / 3.0).ceil(),
            Profile::Recursive => m.sqrt().ceil(),
        };
        (k as usize).clamp(1, (m as usize).max(1))
    }
}

/// End-to-end balanced cut; graphs with at most [`DENSE_EDGE_LIMIT`] edges go
/// to the dense routine directly.
pub fn pipeline_cut(g: &Graph, phi: f64, profile: Profile) -> Result<JTreeRun> {
    if g.m() <= DENSE_EDGE_LIMIT {
        return jtree_balanced_cut(g, phi, 1, &DenseCut);
    }
    let k = profile.reduction(g.m());
    match profile {
        Profile::OneShot => jtree_balanced_cut(g, phi, k, &DenseCut),
        Profile::Recursive => jtree_balanced_cut(g, phi, k, &SparsifiedDense),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path, star};

    fn unit_tree(g: &Graph, root: usize) -> WeightedMultiTree {
        let edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|&(a, b)| (a, b, 1.0)).collect();
        WeightedMultiTree::new(vec![1.0; g.n()], &edges, root).unwrap()
    }

    #[test]
    fn star_examples() {
        let t = unit_tree(&star(4), 0);
        assert_eq!(rooted_tree_cut(&t, 0.5), vec![1, 2]);
        assert!(rooted_tree_cut(&t, 0.25).is_empty());
    }

    #[test]
    fn path_rooted_in_middle() {
        let t = unit_tree(&path(8), 4);
        let s = rooted_tree_cut(&t, 1.0);
        assert!(!s.is_empty());
        let small = s.len().min(8 - s.len()) as f64;
        assert!(t.boundary(&s) / small <= 6.0);
        assert!(WeightedMultiTree::new(vec![1.0; 8], &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 1.0), (5, 6, 1.0), (6, 7, 1.0)], 0).is_err());
    }

    #[test]
    fn tree_input_embeds_into_itself() {
        let g = path(6);
        let js = build_jtrees(&g, 1, 1).unwrap();
        let mut edges: Vec<(usize, usize, f64)> = js[0].graph.edges().to_vec();
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        assert_eq!(edges, (0..5).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>());
        assert!(build_jtrees(&g, 0, 1).is_err());
    }

    #[test]
    fn cycle_domination() {
        let g = cycle(6);
        let js = build_jtrees(&g, 2, 2).unwrap();
        let gw = WeightedGraph::from_graph(&g);
        for j in &js {
            for bits in 1u32..63 {
                let mask: Vec<bool> = (0..6).map(|i| bits >> i & 1 == 1).collect();
                assert!(j.graph.cut_weight(&mask) >= gw.cut_weight(&mask));
            }
        }
    }
}
