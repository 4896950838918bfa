//! The interface shared by every approximate balanced-cut routine.

use crate::error::Result;
use crate::graph::WeightedGraph;

/// What a conductance certificate rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateBasis {
    /// Half the second-smallest eigenvalue of the normalized Laplacian.
    Spectral,
    /// No PageRank seed produced an excess cut while `400φ ≤ 1`.
    PageRankExcess,
    /// No j-tree produced a cut; sound up to the measured stretch of the trees.
    JTreeFamily,
    /// Certified on a sparsifier; sound up to the sparsifier's cut approximation.
    Sparsified,
}

impl CertificateBasis {
    /// True when the certificate holds without any measured approximation factor.
    pub fn is_unconditional(self) -> bool {
        matches!(self, CertificateBasis::Spectral | CertificateBasis::PageRankExcess)
    }

    pub fn name(self) -> &'static str {
        match self {
            CertificateBasis::Spectral => "spectral",
            CertificateBasis::PageRankExcess => "pagerank-excess",
            CertificateBasis::JTreeFamily => "jtree-family",
            CertificateBasis::Sparsified => "sparsified",
        }
    }
}

/// A lower bound on the conductance of a whole graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certificate {
    pub lower_bound: f64,
    pub basis: CertificateBasis,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BalCutOutcome {
    Certified(Certificate),
    /// Vertex set of a low-conductance cut (the smaller-volume side).
    Cut(Vec<usize>),
}

impl BalCutOutcome {
    pub fn cut(&self) -> Option<&[usize]> {
        match self {
            BalCutOutcome::Cut(s) => Some(s),
            BalCutOutcome::Certified(_) => None,
        }
    }
}

/// Either certifies `Φ(G) ≥ φ` or returns a cut of conductance at most
/// `conductance_bound(φ, m)` that is balanced relative to every cut of
/// conductance below `φ`.
pub trait BalancedCut {
    fn name(&self) -> &'static str;

    fn run(&self, g: &WeightedGraph, phi: f64) -> Result<BalCutOutcome>;

    /// The conductance guarantee `f(φ)` on a graph with total weight `m`.
    fn conductance_bound(&self, phi: f64, m: f64) -> f64;
}
