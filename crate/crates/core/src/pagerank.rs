//! Dense balanced cuts from all-pairs personalized PageRank.
//!
//! All `n` PageRank vectors come from one LU factorization of
//! `I − (1 − α)W` with `W = ½(I + D⁻¹A)`. Each vector yields at most one
//! candidate cut through excess bucketing and a sweep search that only asks for
//! level-set volumes; candidates are merged greedily in seed order.

use std::cell::Cell;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::balcut::{BalCutOutcome, BalancedCut, Certificate, CertificateBasis};
use crate::error::{domain, Result};
use crate::graph::{complement, Graph, WeightedGraph, EPS};

/// Candidate teleport values used when `400φ > 1`.
const FALLBACK_ALPHAS: [f64; 3] = [0.25, 1.0 / 16.0, 1.0 / 64.0];

fn lazy_walk(g: &WeightedGraph) -> DMatrix<f64> {
    let n = g.n();
    let mut w = DMatrix::<f64>::identity(n, n) * 0.5;
    for &(u, v, wt) in g.edges() {
        if u == v {
            w[(u, u)] += wt / g.degree(u);
        } else {
            w[(u, v)] += 0.5 * wt / g.degree(u);
            w[(v, u)] += 0.5 * wt / g.degree(v);
        }
    }
    w
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return domain(format!("alpha must lie in (0,1], got {alpha}"));
    }
    Ok(())
}

fn check_connected(g: &WeightedGraph) -> Result<()> {
    if g.n() >= 2 && (!g.is_connected() || (0..g.n()).any(|v| g.degree(v) <= 0.0)) {
        return domain("graph must be connected");
    }
    Ok(())
}

/// Matrix whose row `v` is the PageRank vector seeded at vertex `v`.
pub fn pagerank_all(g: &WeightedGraph, alpha: f64) -> Result<DMatrix<f64>> {
    check_alpha(alpha)?;
    check_connected(g)?;
    let n = g.n();
    let m = DMatrix::<f64>::identity(n, n) - lazy_walk(g) * (1.0 - alpha);
    // Row v of α·M⁻¹ is α·χ_v·M⁻¹; solve Mᵀ Y = α I and transpose.
    let lu = m.transpose().lu();
    let y = lu
        .solve(&(DMatrix::<f64>::identity(n, n) * alpha))
        .ok_or_else(|| crate::Error::Domain("singular PageRank system".into()))?;
    Ok(y.transpose())
}

/// PageRank vector of an arbitrary seed distribution.
pub fn pagerank(g: &WeightedGraph, alpha: f64, seed: &[f64]) -> Result<Vec<f64>> {
    let all = pagerank_all(g, alpha)?;
    let n = g.n();
    Ok((0..n).map(|j| (0..n).map(|i| seed[i] * all[(i, j)]).sum()).collect())
}

/// `‖p − α·seed − (1 − α)·p·W‖∞`.
pub fn pagerank_residual(g: &WeightedGraph, alpha: f64, seed: &[f64], p: &[f64]) -> f64 {
    let w = lazy_walk(g);
    let n = g.n();
    (0..n)
        .map(|j| {
            let pw: f64 = (0..n).map(|i| p[i] * w[(i, j)]).sum();
            (p[j] - alpha * seed[j] - (1.0 - alpha) * pw).abs()
        })
        .fold(0.0, f64::max)
}

/// Vertices by decreasing density `p(v)/deg(v)` (ties by increasing id) with
/// prefix volumes, answering level-set volume queries by binary search.
#[derive(Clone, Debug)]
pub struct SweepIndex {
    pub order: Vec<usize>,
    pub density: Vec<f64>,
    pub prefix_vol: Vec<f64>,
    queries: Cell<usize>,
}

impl SweepIndex {
    pub fn new(g: &WeightedGraph, p: &[f64]) -> SweepIndex {
        let mut order: Vec<usize> = (0..g.n()).collect();
        let dens = |v: usize| p[v] / g.degree(v);
        order.sort_by(|&a, &b| dens(b).total_cmp(&dens(a)).then(a.cmp(&b)));
        let density: Vec<f64> = order.iter().map(|&v| dens(v)).collect();
        let mut prefix_vol = vec![0.0; order.len() + 1];
        for (i, &v) in order.iter().enumerate() {
            prefix_vol[i + 1] = prefix_vol[i] + g.degree(v);
        }
        SweepIndex { order, density, prefix_vol, queries: Cell::new(0) }
    }

    /// Number of vertices with density at least `t`.
    pub fn count_at(&self, t: f64) -> usize {
        self.density.partition_point(|&d| d >= t)
    }

    /// `vol(V_{≥t})`, counted as one query.
    pub fn vol_at(&self, t: f64) -> f64 {
        self.queries.set(self.queries.get() + 1);
        self.prefix_vol[self.count_at(t)]
    }

    pub fn set_at(&self, t: f64) -> Vec<usize> {
        let mut s = self.order[..self.count_at(t)].to_vec();
        s.sort_unstable();
        s
    }

    pub fn queries(&self) -> usize {
        self.queries.get()
    }
}

/// Result of the volume-only sweep search.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutcome {
    pub members: Vec<usize>,
    /// `√(54α / ((τ − t0)·vol(V_{≥τ})))`; the output has conductance at most 3× this.
    pub phi: f64,
    pub l_init: usize,
    pub queries: usize,
    /// The guarantee says nothing when `phi ≥ 1`.
    pub vacuous: bool,
}

/// Binary search over sweep thresholds in `(t0, τ]` using only volume queries.
///
/// When the guarantee is vacuous the search may step below `t0` and return
/// every vertex; callers must treat such a set as no cut.
pub fn sweep_cut_binary_search(
    g: &WeightedGraph,
    alpha: f64,
    t0: f64,
    tau: f64,
    idx: &SweepIndex,
) -> Result<SweepOutcome> {
    let m = g.total_volume() / 2.0;
    if !(tau > t0 && tau <= 1.0 + EPS) {
        return domain(format!("tau must lie in (t0, 1], got t0={t0}, tau={tau}"));
    }
    if idx.prefix_vol[idx.count_at(t0)] > 1.5 * m + EPS {
        return domain("vol(V≥t0) exceeds 1.5m");
    }
    let start = idx.queries();
    let vol_tau = idx.vol_at(tau);
    if vol_tau <= 0.0 {
        return domain("level set at tau is empty");
    }
    let phi = (54.0 * alpha / ((tau - t0) * vol_tau)).sqrt();
    let grow = 1.0 + phi / 2.0;
    let l_init = ((2.0 * m).ln() / grow.ln()).ceil().max(1.0) as usize;
    let mut t_plus = tau;
    let mut l = l_init;
    while l > 1 {
        let half = l / 2;
        let v_plus = idx.vol_at(t_plus);
        let step: f64 = (0..half).map(|i| 18.0 * alpha / (phi * v_plus * grow.powi(i as i32))).sum();
        let t_mid = t_plus - step;
        if v_plus * grow.powi(half as i32) >= idx.vol_at(t_mid) {
            l = half;
        } else {
            t_plus = t_mid;
            l = l.div_ceil(2);
        }
    }
    let members = idx.set_at(t_plus);
    Ok(SweepOutcome { members, phi, l_init, queries: idx.queries() - start, vacuous: phi >= 1.0 })
}

/// Excess buckets of one PageRank vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcessBuckets {
    /// `buckets[i − 1]` holds `B_{2^{-i}}`.
    pub buckets: Vec<Vec<usize>>,
    pub excess: Vec<f64>,
    /// `V_{≥ 1/(2m) + 1/(100m)}`.
    pub support: Vec<usize>,
}

impl ExcessBuckets {
    pub fn new(g: &WeightedGraph, p: &[f64]) -> ExcessBuckets {
        let m = g.total_volume() / 2.0;
        let n = g.n();
        let excess: Vec<f64> = (0..n).map(|v| p[v] - g.degree(v) / (2.0 * m)).collect();
        let level = 1.0 / (2.0 * m) + 1.0 / (100.0 * m);
        let support: Vec<usize> = (0..n).filter(|&v| p[v] / g.degree(v) >= level).collect();
        let count = ((50.0 * m).log2().floor() as usize).max(1);
        let mut buckets = vec![Vec::new(); count];
        for &v in &support {
            let r = excess[v] / g.degree(v);
            for i in 1..=count {
                let lo = 0.5f64.powi(i as i32);
                if r > lo && r <= 2.0 * lo {
                    buckets[i - 1].push(v);
                    break;
                }
            }
        }
        ExcessBuckets { buckets, excess, support }
    }

    pub fn bucket_excess(&self, i: usize) -> f64 {
        self.buckets[i - 1].iter().map(|&v| self.excess[v]).sum()
    }
}

/// Outcome of [`find_excess_cut`].
#[derive(Clone, Debug, PartialEq)]
pub enum ExcessCut {
    Found { sweep: SweepOutcome, epsilon: f64, t0: f64, tau: f64 },
    /// The excess preconditions fail for this vector.
    NoExcessCut,
}

/// Picks the excess bucket with the most excess (if it carries at least
/// `1/(50·log₂(50m))`) and runs the sweep search on its density band.
pub fn find_excess_cut(g: &WeightedGraph, p: &[f64], alpha: f64) -> Result<ExcessCut> {
    let m = g.total_volume() / 2.0;
    let b = ExcessBuckets::new(g, p);
    let exc_s: f64 = b.support.iter().map(|&v| b.excess[v]).sum();
    let vol_s = g.volume(&b.support);
    if b.support.is_empty() || exc_s < 0.1 || vol_s > 1.5 * m {
        return Ok(ExcessCut::NoExcessCut);
    }
    let need = 1.0 / (50.0 * (50.0 * m).log2());
    let mut best: Option<(usize, f64)> = None;
    for i in 1..=b.buckets.len() {
        let e = b.bucket_excess(i);
        if e >= need && best.is_none_or(|(_, be)| e > be) {
            best = Some((i, e));
        }
    }
    let Some((i, _)) = best else {
        return Ok(ExcessCut::NoExcessCut);
    };
    let epsilon = 0.5f64.powi(i as i32);
    let t0 = 1.0 / (2.0 * m) + epsilon / 2.0;
    let tau = 1.0 / (2.0 * m) + epsilon;
    let idx = SweepIndex::new(g, p);
    let sweep = sweep_cut_binary_search(g, alpha, t0, tau, &idx)?;
    if sweep.members.is_empty() || sweep.members.len() == g.n() {
        return Ok(ExcessCut::NoExcessCut);
    }
    Ok(ExcessCut::Found { sweep, epsilon, t0, tau })
}

/// Second-smallest eigenvalue of the normalized Laplacian and the
/// corresponding degree-scaled eigenvector.
pub fn spectral_gap(g: &WeightedGraph) -> (f64, Vec<f64>) {
    let n = g.n();
    if n < 2 {
        return (f64::INFINITY, vec![0.0; n]);
    }
    let inv_sqrt: Vec<f64> = (0..n).map(|v| 1.0 / g.degree(v).sqrt()).collect();
    let mut lap = DMatrix::<f64>::identity(n, n);
    for &(u, v, w) in g.edges() {
        if u == v {
            lap[(u, u)] -= 2.0 * w * inv_sqrt[u] * inv_sqrt[u];
        } else {
            let x = w * inv_sqrt[u] * inv_sqrt[v];
            lap[(u, v)] -= x;
            lap[(v, u)] -= x;
        }
    }
    let eig = SymmetricEigen::new(lap);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let j = idx[1];
    let vec: Vec<f64> = (0..n).map(|v| eig.eigenvectors[(v, j)] * inv_sqrt[v]).collect();
    (eig.eigenvalues[j].max(0.0), vec)
}

/// Best-conductance prefix of the vertices ordered by `key` (ties by id).
pub(crate) fn best_sweep(g: &WeightedGraph, key: &[f64]) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key[a].total_cmp(&key[b]).then(a.cmp(&b)));
    let total = g.total_volume();
    let mut inside = vec![false; n];
    let (mut boundary, mut vol) = (0.0, 0.0);
    let mut best: Option<(f64, usize)> = None;
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        inside[v] = true;
        vol += g.degree(v);
        for &(w, e) in g.neighbors(v) {
            if w != v {
                let wt = g.edges()[e].2;
                boundary += if inside[w] { -wt } else { wt };
            }
        }
        let den = vol.min(total - vol);
        let c = if den > 0.0 { boundary.max(0.0) / den } else { f64::INFINITY };
        if best.is_none_or(|(bc, _)| c < bc - EPS) {
            best = Some((c, k + 1));
        }
    }
    let (_, k) = best?;
    let mut s = order[..k].to_vec();
    s.sort_unstable();
    Some(s)
}

/// Trace of one run of the dense routine.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseReport {
    pub outcome: BalCutOutcome,
    pub spectral_lower_bound: f64,
    /// Teleport values tried, with the number of seeds that produced a candidate.
    pub candidates: Vec<(f64, usize)>,
}

fn smaller_side(g: &WeightedGraph, s: &[usize]) -> Vec<usize> {
    let vin = g.volume(s);
    if vin <= g.total_volume() - vin {
        s.to_vec()
    } else {
        complement(g.n(), s)
    }
}

/// Greedy union of candidates in seed order until the volume reaches `m/4`,
/// checking `|∂S| ≤ 2φ'·vol(S)` after every step.
fn merge_candidates(g: &WeightedGraph, cands: &[Vec<usize>]) -> Vec<usize> {
    let n = g.n();
    let m = g.total_volume() / 2.0;
    let phi_prime = cands
        .iter()
        .map(|c| {
            let mut mask = vec![false; n];
            c.iter().for_each(|&v| mask[v] = true);
            g.cut_weight(&mask) / g.volume(c)
        })
        .fold(0.0, f64::max);
    let mut mask = vec![false; n];
    let mut vol_s = 0.0;
    for c in cands {
        let vol_c = g.volume(c);
        let fresh: f64 = c.iter().filter(|&&v| !mask[v]).map(|&v| g.degree(v)).sum();
        if fresh >= vol_c / 2.0 {
            for &v in c {
                mask[v] = true;
            }
            vol_s += fresh;
            let boundary = g.cut_weight(&mask);
            assert!(
                boundary <= 2.0 * phi_prime * vol_s * (1.0 + 1e-9) + EPS,
                "merge invariant violated: {boundary} > 2·{phi_prime}·{vol_s}"
            );
        }
        if vol_s >= m / 4.0 {
            break;
        }
    }
    crate::graph::members_of(&mask)
}

fn candidates_at(g: &WeightedGraph, alpha: f64) -> Result<Vec<Vec<usize>>> {
    let pr = pagerank_all(g, alpha)?;
    let mut out = Vec::new();
    for v in 0..g.n() {
        let p: Vec<f64> = pr.row(v).iter().copied().collect();
        if let ExcessCut::Found { sweep, .. } = find_excess_cut(g, &p, alpha)? {
            out.push(sweep.members);
        }
    }
    Ok(out)
}

/// Rescales weights so the mean edge weight is 1; conductances are unchanged.
fn normalized(g: &WeightedGraph) -> WeightedGraph {
    let total = g.total_weight();
    if g.m() == 0 || total <= 0.0 {
        return g.clone();
    }
    let s = g.m() as f64 / total;
    WeightedGraph::new(g.n(), g.edges().iter().map(|&(u, v, w)| (u, v, w * s)).collect()).expect("scaled weights valid")
}

/// Dense most-balanced low-conductance cut on a weighted multigraph.
///
/// Certifies `Φ(G) ≥ φ` when half the spectral gap reaches `φ`, or when
/// `400φ ≤ 1` and no seed yields an excess cut. Otherwise the merged PageRank
/// cut is returned; when `400φ > 1` a few smaller teleport values and the
/// spectral sweep cut are tried as well, and the most balanced candidate within
/// the conductance bound wins.
pub fn most_balanced_edge_cut_weighted(g: &WeightedGraph, phi: f64) -> Result<DenseReport> {
    if !(phi > 0.0 && phi.is_finite()) {
        return domain(format!("phi must be positive, got {phi}"));
    }
    check_connected(g)?;
    let n = g.n();
    if n < 2 {
        let outcome = BalCutOutcome::Certified(Certificate { lower_bound: 1.0, basis: CertificateBasis::Spectral });
        return Ok(DenseReport { outcome, spectral_lower_bound: 1.0, candidates: Vec::new() });
    }
    let g = &normalized(g);
    let (lambda2, fiedler) = spectral_gap(g);
    let spectral_lower_bound = lambda2 / 2.0 - 1e-12;
    if spectral_lower_bound >= phi {
        let outcome = BalCutOutcome::Certified(Certificate {
            lower_bound: spectral_lower_bound,
            basis: CertificateBasis::Spectral,
        });
        return Ok(DenseReport { outcome, spectral_lower_bound, candidates: Vec::new() });
    }
    let m = g.total_volume() / 2.0;
    let alpha = 400.0 * phi;
    let mut trace = Vec::new();
    if alpha <= 1.0 {
        let cands = candidates_at(g, alpha)?;
        trace.push((alpha, cands.len()));
        if cands.is_empty() {
            let outcome = BalCutOutcome::Certified(Certificate { lower_bound: phi, basis: CertificateBasis::PageRankExcess });
            return Ok(DenseReport { outcome, spectral_lower_bound, candidates: trace });
        }
        let s = merge_candidates(g, &cands);
        return Ok(DenseReport { outcome: BalCutOutcome::Cut(smaller_side(g, &s)), spectral_lower_bound, candidates: trace });
    }
    let mut options: Vec<Vec<usize>> = Vec::new();
    for &a in FALLBACK_ALPHAS.iter().filter(|&&a| a >= 1.0 / (8.0 * m)) {
        let cands = candidates_at(g, a)?;
        trace.push((a, cands.len()));
        if !cands.is_empty() {
            let s = merge_candidates(g, &cands);
            if !s.is_empty() && s.len() < n {
                options.push(smaller_side(g, &s));
            }
        }
    }
    if let Some(s) = best_sweep(g, &fiedler) {
        options.push(smaller_side(g, &s));
    }
    let bound = DenseCut.conductance_bound(phi, m);
    let scored: Vec<(f64, f64, Vec<usize>)> = options
        .into_iter()
        .map(|s| {
            let c = g.conductance(&s).expect("proper subset");
            let vol = g.volume(&s);
            (c, vol.min(g.total_volume() - vol), s)
        })
        .collect();
    let pick = scored
        .iter()
        .filter(|(c, _, _)| *c <= bound + EPS)
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.total_cmp(&a.0)))
        .or_else(|| scored.iter().min_by(|a, b| a.0.total_cmp(&b.0)))
        .expect("the spectral sweep always yields a candidate");
    Ok(DenseReport { outcome: BalCutOutcome::Cut(pick.2.clone()), spectral_lower_bound, candidates: trace })
}

/// [`most_balanced_edge_cut_weighted`] on an unweighted multigraph.
pub fn most_balanced_edge_cut(g: &Graph, phi: f64) -> Result<BalCutOutcome> {
    Ok(most_balanced_edge_cut_weighted(&WeightedGraph::from_graph(g), phi)?.outcome)
}

/// The dense PageRank routine as a [`BalancedCut`].
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseCut;

impl BalancedCut for DenseCut {
    fn name(&self) -> &'static str {
        "pagerank"
    }

    fn run(&self, g: &WeightedGraph, phi: f64) -> Result<BalCutOutcome> {
        Ok(most_balanced_edge_cut_weighted(g, phi)?.outcome)
    }

    fn conductance_bound(&self, phi: f64, m: f64) -> f64 {
        30.0 * (phi * m.max(2.0).ln()).sqrt()
    }
}
