//! Vertex-expansion certificates from a cut-matching game.
//!
//! Each round trims the current matching graph `W` with a balanced-cut routine.
//! A certified `W` yields a lower bound on the vertex expansion of `G` through
//! its embedding. Otherwise the returned cut is fed to a unit-demand flow in `G`
//! that either embeds a matching across it, which joins `W`, or exposes a
//! separation triple of low expansion.

use crate::balcut::{BalCutOutcome, BalancedCut};
use crate::error::{domain, Error, Result};
use crate::flow::{max_flow_blocking, FlowNetwork};
use crate::graph::{mask_of, members_of, validate_triple, Graph, SeparationTriple, WeightedGraph};
use crate::pagerank::spectral_gap;

/// A matching between `A` and `B` together with its routing in `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedMatching {
    pub matching: Vec<(usize, usize)>,
    /// Path in `G` from `a` to `b` for each pair, endpoints included.
    pub paths: Vec<Vec<usize>>,
    /// Largest number of paths through one vertex.
    pub congestion: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatchingOrCut {
    Matching(EmbeddedMatching),
    Triple(SeparationTriple),
}

/// Number of paths through each vertex, endpoints included.
pub fn path_usage(n: usize, paths: &[Vec<usize>]) -> Vec<usize> {
    let mut usage = vec![0usize; n];
    for p in paths {
        for &v in p {
            usage[v] += 1;
        }
    }
    usage
}

/// Routes `min(|A|, |B|)` unit demands from `A` to `B` with vertex capacity `c`,
/// or returns a triple of expansion below `1/c` when that is impossible.
pub fn embed_matching_or_cut(g: &Graph, a: &[usize], b: &[usize], c: usize) -> Result<MatchingOrCut> {
    let n = g.n();
    if a.is_empty() || b.is_empty() {
        return domain("both sides must be nonempty");
    }
    if c == 0 {
        return domain("congestion must be at least 1");
    }
    let ma = mask_of(n, a)?;
    let mb = mask_of(n, b)?;
    if let Some(v) = (0..n).find(|&v| ma[v] && mb[v]) {
        return domain(format!("vertex {v} lies in both sides"));
    }
    // Layout: V, then one dummy per A vertex, one per B vertex, then s and t.
    let (na, nb) = (a.len(), b.len());
    let s = n + na + nb;
    let t = s + 1;
    let mut edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| u != v).collect();
    for (i, &v) in a.iter().enumerate() {
        edges.push((s, n + i));
        edges.push((n + i, v));
    }
    for (i, &v) in b.iter().enumerate() {
        edges.push((v, n + na + i));
        edges.push((n + na + i, t));
    }
    let aug = Graph::new(t + 1, edges)?;
    let mut cap = vec![c as u64; t + 1];
    for x in cap.iter_mut().take(s).skip(n) {
        *x = 1;
    }
    let net = FlowNetwork::new(&aug, cap, s, t)?;
    let want = na.min(nb) as u64;
    let flow = max_flow_blocking(&net, Some(want));
    if flow.value == want {
        let mut matching = Vec::new();
        let mut paths = Vec::new();
        for p in &flow.paths {
            let inner: Vec<usize> = p.vertices.iter().copied().filter(|&v| v < n).collect();
            for _ in 0..p.units {
                matching.push((inner[0], *inner.last().expect("path meets V")));
                paths.push(inner.clone());
            }
        }
        let congestion = path_usage(n, &paths).into_iter().max().unwrap_or(0);
        return Ok(MatchingOrCut::Matching(EmbeddedMatching { matching, paths, congestion }));
    }
    let cut = flow.min_cut_vertices.expect("flow below demand yields a cut");
    let mut removed = vec![false; aug.n()];
    cut.iter().for_each(|&v| removed[v] = true);
    let mut seen = vec![false; aug.n()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &(w, _) in aug.neighbors(v) {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let l: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
    let sep: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
    let r: Vec<usize> = (0..n).filter(|&v| !seen[v] && !removed[v]).collect();
    let triple = validate_triple(g, &l, &sep, &r)?;
    let h = triple.expansion();
    if h >= 1.0 / c as f64 {
        return Err(Error::Domain(format!("flow cut has expansion {h} ≥ 1/{c}")));
    }
    Ok(MatchingOrCut::Triple(triple))
}

/// Result of trimming a graph towards an expander.
#[derive(Clone, Debug, PartialEq)]
pub enum TrimOutcome {
    /// The whole graph has conductance at least `lower_bound`.
    Certified { lower_bound: f64 },
    /// A cut holding a `1/(8⌈log₂ m⌉)` share of the volume.
    Balanced { cut: Vec<usize>, conductance: f64 },
    /// A small cut whose complement has conductance at least `residual_lower_bound`.
    Trimmed { cut: Vec<usize>, conductance: f64, residual_lower_bound: f64 },
}

/// Sound conductance lower bound from a certificate: conditional certificates
/// are replaced by half the spectral gap.
fn sound_bound(h: &WeightedGraph, outcome_bound: f64, unconditional: bool) -> f64 {
    if unconditional {
        outcome_bound
    } else {
        (spectral_gap(h).0 / 2.0).min(1.0)
    }
}

/// `f` applied `levels` times to `φ`.
pub fn iterated_bound(balcut: &dyn BalancedCut, phi: f64, m: f64, levels: usize) -> f64 {
    (0..levels).fold(phi, |x, _| balcut.conductance_bound(x, m))
}

/// Default number of trimming levels: `max(1, ⌈log₂ log₂ n⌉)`.
pub fn trim_levels(n: usize) -> usize {
    ((n.max(4) as f64).log2().log2().ceil() as usize).max(1)
}

/// Repeatedly cuts the residual graph at the fixed parameter `φ`, collecting
/// the removed parts. Returns early once the collected volume reaches
/// `m/(8⌈log₂ m⌉)`; otherwise stops when the residual is certified.
pub fn trim_to_expander(g: &Graph, phi: f64, balcut: &dyn BalancedCut) -> Result<TrimOutcome> {
    let n = g.n();
    if n < 2 || g.m() == 0 {
        return domain("trimming needs at least one edge");
    }
    let total = g.total_volume() as f64;
    let m = total / 2.0;
    let share = m / (8.0 * m.max(2.0).log2().ceil());
    let mut removed = vec![false; n];
    let conductance_of = |mask: &[bool]| crate::graph::conductance(g, &members_of(mask)).unwrap_or(0.0);
    loop {
        let rest: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
        let (sub, map) = g.induced(&rest);
        let collected = members_of(&removed);
        let vol_collected = g.volume(&collected) as f64;
        if !collected.is_empty() && vol_collected >= share {
            return Ok(TrimOutcome::Balanced { cut: collected, conductance: conductance_of(&removed) });
        }
        let comps = sub.components();
        if comps.len() > 1 {
            // Keep the component of largest volume; everything else is a free cut.
            let keep = comps
                .iter()
                .enumerate()
                .max_by(|x, y| sub.volume(x.1).cmp(&sub.volume(y.1)).then(y.0.cmp(&x.0)))
                .map(|(i, _)| i)
                .expect("nonempty");
            for (i, c) in comps.iter().enumerate() {
                if i != keep {
                    c.iter().for_each(|&v| removed[map[v]] = true);
                }
            }
            continue;
        }
        if sub.n() < 2 || sub.m() == 0 {
            let cut = members_of(&removed);
            let conductance = conductance_of(&removed);
            return Ok(TrimOutcome::Trimmed { cut, conductance, residual_lower_bound: 1.0 });
        }
        let hw = WeightedGraph::from_graph(&sub);
        match balcut.run(&hw, phi)? {
            BalCutOutcome::Certified(cert) => {
                let lb = sound_bound(&hw, cert.lower_bound, cert.basis.is_unconditional());
                if collected.is_empty() {
                    return Ok(TrimOutcome::Certified { lower_bound: lb });
                }
                return Ok(TrimOutcome::Trimmed { cut: collected, conductance: conductance_of(&removed), residual_lower_bound: lb });
            }
            BalCutOutcome::Cut(s) => {
                if s.is_empty() || s.len() >= sub.n() {
                    return domain("balanced-cut routine returned a trivial cut");
                }
                s.iter().for_each(|&v| removed[map[v]] = true);
            }
        }
    }
}

/// Per-round outcome of the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundTag {
    /// `W` was disconnected; components were grouped into a balanced cut.
    Disconnected,
    Balanced,
    Trimmed,
    Certified,
    Triple,
}

impl RoundTag {
    pub fn name(self) -> &'static str {
        match self {
            RoundTag::Disconnected => "disconnected",
            RoundTag::Balanced => "balanced",
            RoundTag::Trimmed => "trimmed",
            RoundTag::Certified => "certified",
            RoundTag::Triple => "triple",
        }
    }
}

/// State of the cut-matching game.
#[derive(Clone, Debug)]
pub struct GameState {
    pub w: Graph,
    pub round: usize,
    pub congestion_budget: usize,
    pub history: Vec<RoundTag>,
    /// Embedding paths of each matching, in round order; their recount
    /// certifies the congestion.
    pub paths: Vec<Vec<Vec<usize>>>,
}

impl GameState {
    /// Recounted vertex congestion of all stored paths together.
    pub fn congestion(&self) -> usize {
        let all: Vec<Vec<usize>> = self.paths.iter().flatten().cloned().collect();
        path_usage(self.w.n(), &all).into_iter().max().unwrap_or(0)
    }

    /// Recounted vertex congestion of each matching on its own.
    pub fn matching_congestions(&self) -> Vec<usize> {
        self.paths.iter().map(|p| path_usage(self.w.n(), p).into_iter().max().unwrap_or(0)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpansionOutcome {
    /// `h(G) ≥ eta_cert`.
    Certified { eta_cert: f64 },
    Triple(SeparationTriple),
}

#[derive(Clone, Debug)]
pub struct GameReport {
    pub outcome: ExpansionOutcome,
    pub state: GameState,
}

/// Round cap of the game: `10⌈log₂ n⌉`.
pub fn round_cap(n: usize) -> usize {
    10 * ((n.max(2) as f64).log2().ceil() as usize)
}

/// Greedy union of components in order of smallest vertex, up to `n/2` vertices.
fn component_side(w: &Graph) -> Vec<usize> {
    let n = w.n();
    let mut side = Vec::new();
    for c in w.components() {
        if side.len() + c.len() <= n / 2 {
            side.extend(c);
        }
    }
    side.sort_unstable();
    side
}

/// Certifies `h(G) ≥ η_cert` or returns a separation triple with `h < 1/⌈1/η⌉`.
pub fn approx_vertex_expansion(g: &Graph, eta: f64, balcut: &dyn BalancedCut) -> Result<GameReport> {
    if !(eta > 0.0 && eta <= 1.0) {
        return domain(format!("eta must lie in (0,1], got {eta}"));
    }
    let n = g.n();
    if n < 2 || !g.is_connected() {
        return domain("graph must be connected with at least two vertices");
    }
    let c = (1.0 / eta).ceil() as usize;
    let cap = round_cap(n);
    let log_n = (n as f64).log2().ceil().max(1.0);
    let mut state = GameState { w: Graph::empty(n), round: 0, congestion_budget: c, history: Vec::new(), paths: Vec::new() };
    while state.round < cap {
        state.round += 1;
        let cong = state.congestion();
        let (side, tag) = if !state.w.is_connected() {
            (component_side(&state.w), RoundTag::Disconnected)
        } else {
            let phi = (2.0 * eta * cong as f64).min(1.0 / (4.0 * log_n));
            match trim_to_expander(&state.w, phi, balcut)? {
                TrimOutcome::Certified { lower_bound } => {
                    state.history.push(RoundTag::Certified);
                    let eta_cert = lower_bound / (2.0 * cong as f64);
                    return Ok(GameReport { outcome: ExpansionOutcome::Certified { eta_cert }, state });
                }
                TrimOutcome::Balanced { cut, .. } => (cut, RoundTag::Balanced),
                TrimOutcome::Trimmed { cut, .. } => (cut, RoundTag::Trimmed),
            }
        };
        let other = crate::graph::complement(n, &side);
        match embed_matching_or_cut(g, &side, &other, c)? {
            MatchingOrCut::Triple(t) => {
                state.history.push(RoundTag::Triple);
                return Ok(GameReport { outcome: ExpansionOutcome::Triple(t), state });
            }
            MatchingOrCut::Matching(em) => {
                state.history.push(tag);
                let mut edges = state.w.edges().to_vec();
                edges.extend(em.matching.iter().copied());
                state.w = Graph::new(n, edges)?;
                state.paths.push(em.paths);
            }
        }
    }
    let transcript = state.history.iter().map(|t| t.name()).collect::<Vec<_>>().join(",");
    Err(Error::RoundCap { cap, transcript })
}
