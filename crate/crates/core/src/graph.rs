//! Undirected multigraphs, cut metrics, separation triples and the edge-list format.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{domain, Error, Result};

/// Absolute tolerance used for every floating-point comparison of ratios.
pub const EPS: f64 = 1e-9;

/// Immutable undirected multigraph in compressed adjacency form.
///
/// Parallel edges are stored as separate records. A self-loop appears twice in
/// the adjacency of its vertex, so it adds 2 to the degree and never crosses a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    adj: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops and parallel edges are kept.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return domain(format!("edge {i} = ({u},{v}) has an endpoint outside [0,{n})"));
            }
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut adj = vec![(0usize, 0usize); offsets[n]];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u]] = (v, e);
            fill[u] += 1;
            adj[fill[v]] = (u, e);
            fill[v] += 1;
        }
        for v in 0..n {
            adj[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph { n, edges, offsets, adj })
    }

    /// Graph with no vertices of degree above zero.
    pub fn empty(n: usize) -> Graph {
        Graph::new(n, Vec::new()).expect("empty graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor, then edge id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Distinct neighbors of `v` other than `v`, ascending.
    pub fn neighbor_set(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &(u, _) in self.neighbors(v) {
            if u != v && out.last() != Some(&u) {
                out.push(u);
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let nb = self.neighbors(u);
        let i = nb.partition_point(|&(w, _)| w < v);
        i < nb.len() && nb[i].0 == v
    }

    pub fn total_volume(&self) -> usize {
        2 * self.m()
    }

    pub fn volume(&self, set: &[usize]) -> usize {
        set.iter().map(|&v| self.degree(v)).sum()
    }

    /// Number of edges with exactly one endpoint inside the mask.
    pub fn boundary(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u] != mask[v]).count()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Components of the graph with the vertices of `removed` deleted.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when deleting `set` leaves at least two nonempty components.
    pub fn is_vertex_cut(&self, set: &[usize]) -> bool {
        let mut removed = vec![false; self.n];
        for &v in set {
            removed[v] = true;
        }
        self.components_without(&removed).len() >= 2
    }

    /// Subgraph induced by `vertices` (relabelled in the given order) and the
    /// map from new ids to old ids.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        (Graph::new(vertices.len(), edges).expect("induced edges in range"), vertices.to_vec())
    }

    /// Copy without self-loops and with parallel edges collapsed.
    pub fn simple(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::new(self.n, edges).expect("subset of valid edges")
    }
}

/// Membership mask of `set`, rejecting out-of-range or repeated vertices.
pub fn mask_of(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return domain(format!("vertex {v} out of range for n={n}"));
        }
        if mask[v] {
            return domain(format!("vertex {v} listed twice"));
        }
        mask[v] = true;
    }
    Ok(mask)
}

pub fn members_of(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

pub fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut mask = vec![true; n];
    for &v in set {
        mask[v] = false;
    }
    members_of(&mask)
}

/// A proper nonempty vertex subset with its boundary and volumes.
#[derive(Clone, Debug, PartialEq)]
pub struct Cut {
    pub members: Vec<usize>,
    pub boundary: usize,
    pub volume_in: usize,
    pub volume_out: usize,
    n: usize,
}

impl Cut {
    pub fn new(g: &Graph, set: &[usize]) -> Result<Cut> {
        let mask = mask_of(g.n(), set)?;
        if set.is_empty() || set.len() == g.n() {
            return domain("cut must be a nonempty proper subset");
        }
        let volume_in = g.volume(set);
        Ok(Cut {
            members: members_of(&mask),
            boundary: g.boundary(&mask),
            volume_in,
            volume_out: g.total_volume() - volume_in,
            n: g.n(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn conductance(&self) -> f64 {
        let den = self.volume_in.min(self.volume_out);
        ratio(self.boundary as f64, den as f64)
    }

    pub fn sparsity(&self) -> f64 {
        let den = self.members.len().min(self.n - self.members.len());
        self.boundary as f64 / den as f64
    }

    /// `min(vol(S), vol(V∖S))`.
    pub fn balance(&self) -> usize {
        self.volume_in.min(self.volume_out)
    }

    /// The side with smaller volume (ties keep `members`).
    pub fn smaller_side(&self) -> Vec<usize> {
        if self.volume_in <= self.volume_out {
            self.members.clone()
        } else {
            complement(self.n, &self.members)
        }
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// `|E(S, V∖S)| / min(vol S, vol V∖S)`.
pub fn conductance(g: &Graph, set: &[usize]) -> Result<f64> {
    Ok(Cut::new(g, set)?.conductance())
}

/// `|E(S, V∖S)| / min(|S|, n − |S|)`.
pub fn sparsity(g: &Graph, set: &[usize]) -> Result<f64> {
    Ok(Cut::new(g, set)?.sparsity())
}

/// Partition `(L, S, R)` with `L`, `R` nonempty and no edge between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationTriple {
    pub l: Vec<usize>,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
}

impl SeparationTriple {
    /// `|S| / (min(|L|, |R|) + |S|)`.
    pub fn expansion(&self) -> f64 {
        let s = self.s.len() as f64;
        s / (self.l.len().min(self.r.len()) as f64 + s)
    }
}

pub fn triple_expansion(t: &SeparationTriple) -> Result<f64> {
    if t.l.is_empty() || t.r.is_empty() {
        return domain("separation triple has an empty side");
    }
    Ok(t.expansion())
}

/// Checks the triple invariants against `g`, naming the first violation found.
pub fn validate_triple(g: &Graph, l: &[usize], s: &[usize], r: &[usize]) -> Result<SeparationTriple> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for (tag, set) in [(0u8, l), (1, s), (2, r)] {
        for &v in set {
            if v >= n {
                return domain(format!("vertex {v} out of range for n={n}"));
            }
            if side[v] != u8::MAX {
                return domain(format!("vertex {v} appears in more than one part"));
            }
            side[v] = tag;
        }
    }
    if let Some(v) = side.iter().position(|&t| t == u8::MAX) {
        return domain(format!("vertex {v} is not covered by L, S or R"));
    }
    if l.is_empty() {
        return domain("L is empty");
    }
    if r.is_empty() {
        return domain("R is empty");
    }
    for &(u, v) in g.edges() {
        if side[u] ^ side[v] == 2 && side[u] != 1 {
            let (a, b) = if side[u] == 0 { (u, v) } else { (v, u) };
            return domain(format!("edge ({a},{b}) joins L and R"));
        }
    }
    let sorted = |set: &[usize]| {
        let mut v = set.to_vec();
        v.sort_unstable();
        v
    };
    Ok(SeparationTriple { l: sorted(l), s: sorted(s), r: sorted(r) })
}

/// Undirected graph with nonnegative edge weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    offsets: Vec<usize>,
    adj: Vec<(usize, usize)>,
    degree: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<WeightedGraph> {
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return domain(format!("edge {i} = ({u},{v}) has an endpoint outside [0,{n})"));
            }
            if !w.is_finite() || w < 0.0 {
                return domain(format!("edge {i} has invalid weight {w}"));
            }
        }
        let skeleton = Graph::new(n, edges.iter().map(|&(u, v, _)| (u, v)).collect())?;
        let mut degree = vec![0.0; n];
        for &(u, v, w) in &edges {
            degree[u] += w;
            degree[v] += w;
        }
        Ok(WeightedGraph { n, edges, offsets: skeleton.offsets, adj: skeleton.adj, degree })
    }

    /// Unit weights on every edge record of `g`.
    pub fn from_graph(g: &Graph) -> WeightedGraph {
        WeightedGraph::new(g.n(), g.edges().iter().map(|&(u, v)| (u, v, 1.0)).collect())
            .expect("graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor, then edge id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Weighted degree; a self-loop of weight w contributes 2w.
    pub fn degree(&self, v: usize) -> f64 {
        self.degree[v]
    }

    pub fn total_volume(&self) -> f64 {
        self.degree.iter().sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn volume(&self, set: &[usize]) -> f64 {
        set.iter().map(|&v| self.degree[v]).sum()
    }

    pub fn cut_weight(&self, mask: &[bool]) -> f64 {
        self.edges.iter().filter(|&&(u, v, _)| mask[u] != mask[v]).map(|e| e.2).sum()
    }

    pub fn conductance(&self, set: &[usize]) -> Result<f64> {
        let mask = mask_of(self.n, set)?;
        if set.is_empty() || set.len() == self.n {
            return domain("cut must be a nonempty proper subset");
        }
        let vin = self.volume(set);
        let den = vin.min(self.total_volume() - vin);
        Ok(ratio(self.cut_weight(&mask), den))
    }

    /// Connectivity through edges of positive weight.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Components through positive-weight edges, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in self.neighbors(u) {
                    if !seen[w] && self.edges[e].2 > 0.0 {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v, _)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v, w)| (index[u], index[v], w))
            .collect();
        WeightedGraph::new(vertices.len(), edges).expect("induced edges in range")
    }

    /// Cut-equivalent copy: self-loops and zero weights dropped, parallel edges summed.
    pub fn merged(&self) -> WeightedGraph {
        let mut edges: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .filter(|&&(u, v, w)| u != v && w > 0.0)
            .map(|&(u, v, w)| (u.min(v), u.max(v), w))
            .collect();
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut out: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            match out.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += w,
                _ => out.push((u, v, w)),
            }
        }
        WeightedGraph::new(self.n, out).expect("merged edges are valid")
    }

    /// The unweighted skeleton with one record per weighted edge.
    pub fn skeleton(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v, _)| (u, v)).collect())
            .expect("edges in range")
    }
}

/// A parsed edge-list file.
#[derive(Clone, Debug)]
pub enum Loaded {
    Unweighted(Graph),
    Weighted(WeightedGraph),
}

/// Parses the edge-list text format.
///
/// Lines starting with `#` and blank lines are skipped. The first data line is
/// `n m`, followed by exactly `m` lines `u v` (or `u v w` when `weighted`).
pub fn parse_edge_list(text: &str, weighted: bool, allow_loops: bool) -> Result<Loaded> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |what: &str| Error::Parse(format!("{what} at line {line_no}"));
        let Some((n, m)) = header else {
            if fields.len() != 2 {
                return Err(bad("expected header \"n m\""));
            }
            let n = fields[0].parse::<usize>().map_err(|_| bad("malformed vertex count"))?;
            let m = fields[1].parse::<usize>().map_err(|_| bad("malformed edge count"))?;
            header = Some((n, m));
            continue;
        };
        let want = if weighted { 3 } else { 2 };
        if fields.len() != want {
            return Err(bad(&format!("expected {want} fields, found {}", fields.len())));
        }
        if edges.len() == m {
            return Err(bad(&format!("more than {m} edge lines")));
        }
        let u = fields[0].parse::<usize>().map_err(|_| bad("malformed endpoint"))?;
        let v = fields[1].parse::<usize>().map_err(|_| bad("malformed endpoint"))?;
        for x in [u, v] {
            if x >= n {
                return Err(bad(&format!("endpoint {x} ≥ n={n}")));
            }
        }
        if u == v && !allow_loops {
            return Err(bad(&format!("self-loop ({u},{v}) without --allow-loops")));
        }
        let w = if weighted {
            let w = fields[2].parse::<f64>().map_err(|_| bad("malformed weight"))?;
            if !w.is_finite() || w < 0.0 {
                return Err(bad(&format!("invalid weight {w}")));
            }
            w
        } else {
            1.0
        };
        edges.push((u, v, w));
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse("missing header line".into()));
    };
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges but {} were found at line {last_line}",
            edges.len()
        )));
    }
    if weighted {
        Ok(Loaded::Weighted(WeightedGraph::new(n, edges)?))
    } else {
        Ok(Loaded::Unweighted(Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)).collect())?))
    }
}

pub fn load_graph(path: &Path, weighted: bool, allow_loops: bool) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, weighted, allow_loops)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn format_weighted_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v, w) in g.edges() {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    #[test]
    fn parses_triangle_and_multi_edge() {
        let Loaded::Unweighted(g) = parse_edge_list("3 3\n0 1\n1 2\n2 0", false, false).unwrap() else {
            panic!()
        };
        assert_eq!(g.degrees(), vec![2, 2, 2]);
        let Loaded::Unweighted(g) = parse_edge_list("# k2\n2 2\n0 1\n0 1\n", false, false).unwrap() else {
            panic!()
        };
        assert_eq!(g.total_volume(), 4);
    }

    #[test]
    fn parse_errors_name_line() {
        let err = parse_edge_list("4 3\n0 1\n1 2\n2 5", false, false).unwrap_err();
        assert_eq!(err.to_string(), "endpoint 5 ≥ n=4 at line 4");
        assert!(parse_edge_list("2 2\n0 1\n", false, false).is_err());
        assert!(parse_edge_list("2 1\n1 1\n", false, false).is_err());
        assert!(parse_edge_list("2 1\n1 1\n", false, true).is_ok());
        assert!(parse_edge_list("2 1\n0 x\n", false, false).unwrap_err().to_string().contains("line 2"));
    }

    #[test]
    fn cut_metrics_match_definitions() {
        let c8 = cycle(8);
        assert!((conductance(&c8, &[0, 1, 2, 3]).unwrap() - 0.25).abs() < EPS);
        assert!((sparsity(&c8, &[0, 1, 2, 3]).unwrap() - 0.5).abs() < EPS);
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!((conductance(&k4, &[2]).unwrap() - 1.0).abs() < EPS);
        assert!((sparsity(&k4, &[2]).unwrap() - 3.0).abs() < EPS);
        let star = Graph::new(6, (1..6).map(|i| (0, i)).collect()).unwrap();
        assert!((sparsity(&star, &[0]).unwrap() - 5.0).abs() < EPS);
        assert!(conductance(&k4, &[]).is_err());
        assert!(conductance(&k4, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn self_loops_count_twice_and_never_cross() {
        let g = Graph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(Cut::new(&g, &[0]).unwrap().boundary, 1);
    }

    #[test]
    fn triples() {
        let p5 = Graph::new(5, (0..4).map(|i| (i, i + 1)).collect()).unwrap();
        let t = validate_triple(&p5, &[0, 1], &[2], &[3, 4]).unwrap();
        assert!((t.expansion() - 1.0 / 3.0).abs() < EPS);
        let tri = cycle(3);
        let err = validate_triple(&tri, &[0], &[1], &[2]).unwrap_err();
        assert_eq!(err.to_string(), "edge (0,2) joins L and R");
        let p3 = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!((validate_triple(&p3, &[0], &[1], &[2]).unwrap().expansion() - 0.5).abs() < EPS);
        let err = validate_triple(&tri, &[0], &[], &[1, 2]).unwrap_err();
        assert_eq!(err.to_string(), "edge (0,1) joins L and R");
        assert!(validate_triple(&tri, &[0], &[0], &[1, 2]).unwrap_err().to_string().contains("more than one"));
        assert!(validate_triple(&tri, &[0], &[1, 2], &[]).unwrap_err().to_string().contains("R is empty"));
        assert!(validate_triple(&tri, &[0], &[], &[1]).unwrap_err().to_string().contains("not covered"));
        let star = Graph::new(5, (1..5).map(|i| (0, i)).collect()).unwrap();
        assert!((validate_triple(&star, &[1], &[0], &[2, 3, 4]).unwrap().expansion() - 0.5).abs() < EPS);
    }

    #[test]
    fn weighted_basics() {
        let g = WeightedGraph::new(3, vec![(0, 1, 2.0), (1, 0, 1.0), (1, 1, 4.0), (1, 2, 0.5)]).unwrap();
        assert_eq!(g.degree(1), 11.5);
        let m = g.merged();
        assert_eq!(m.edges(), &[(0, 1, 3.0), (1, 2, 0.5)]);
        assert!(WeightedGraph::new(2, vec![(0, 1, -1.0)]).is_err());
        let text = format_weighted_edge_list(&m);
        let Loaded::Weighted(back) = parse_edge_list(&text, true, false).unwrap() else { panic!() };
        assert_eq!(back, m);
    }
}
