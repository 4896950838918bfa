//! Deterministic graph families used by tests, examples and the benchmark harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expanders::gabber_galil;
use crate::graph::Graph;

/// Name of the pseudo-random generator behind every seeded family.
pub const RNG_NAME: &str = "ChaCha8";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::new(n, e).expect("valid")
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("valid")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("valid")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("valid")
}

/// Two copies of `K_a` on `0..a` and `a..2a` joined by the edge `(a − 1, a)`.
pub fn dumbbell(a: usize) -> Graph {
    let mut e = Vec::new();
    for off in [0, a] {
        for u in 0..a {
            for v in u + 1..a {
                e.push((off + u, off + v));
            }
        }
    }
    e.push((a - 1, a));
    Graph::new(2 * a, e).expect("valid")
}

/// Two cliques of size `a` sharing the vertices `0..shared`.
///
/// The private vertices of the first clique are `shared..a`, those of the
/// second are `a..2a − shared`.
pub fn glued_cliques(a: usize, shared: usize) -> Graph {
    let n = 2 * a - shared;
    let first: Vec<usize> = (0..a).collect();
    let second: Vec<usize> = (0..shared).chain(a..n).collect();
    let mut e = Vec::new();
    for side in [&first, &second] {
        for i in 0..side.len() {
            for j in i + 1..side.len() {
                let (u, v) = (side[i], side[j]);
                if !(u < shared && v < shared && std::ptr::eq(side, &second)) {
                    e.push((u, v));
                }
            }
        }
    }
    Graph::new(n, e).expect("valid")
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, e).expect("valid")
}

/// Each vertex joined to the next `power` vertices around a cycle.
pub fn cycle_power(n: usize, power: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for d in 1..=power.min((n - 1) / 2) {
            e.push((i, (i + d) % n));
        }
    }
    Graph::new(n, e).expect("valid")
}

/// Uniform random labelled tree (random attachment to an earlier vertex).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v)).collect()).expect("valid")
}

/// A random spanning tree plus each remaining pair independently with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut present = vec![vec![false; n]; n];
    let mut e = Vec::new();
    for i in 1..n {
        let (u, v) = (perm[rng.gen_range(0..i)], perm[i]);
        present[u][v] = true;
        present[v][u] = true;
        e.push((u.min(v), u.max(v)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    e.sort_unstable();
    Graph::new(n, e).expect("valid")
}

/// Two random dense halves (`p_in`) joined by `crossing` random edges.
pub fn planted<R: Rng>(n: usize, p_in: f64, crossing: usize, rng: &mut R) -> Graph {
    let half = n / 2;
    let mut e = Vec::new();
    for (lo, hi) in [(0, half), (half, n)] {
        let size = hi - lo;
        let block = random_connected(size, p_in, rng);
        e.extend(block.edges().iter().map(|&(u, v)| (u + lo, v + lo)));
    }
    for _ in 0..crossing.max(1) {
        e.push((rng.gen_range(0..half), rng.gen_range(half..n)));
    }
    Graph::new(n, e).expect("valid")
}

/// Random `d`-regular multigraph by pairing half-edges, rejecting loops and
/// parallel edges when possible within a few attempts.
pub fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Graph {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for _ in 0..64 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut e: Vec<(usize, usize)> = stubs.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        e.sort_unstable();
        let simple = e.iter().all(|&(u, v)| u != v) && e.windows(2).all(|w| w[0] != w[1]);
        let g = Graph::new(n, e.clone()).expect("valid");
        if g.is_connected() {
            best = Some(e);
            if simple {
                break;
            }
        }
    }
    Graph::new(n, best.unwrap_or_else(|| cycle(n).edges().to_vec())).expect("valid")
}

/// Two explicit expanders on `n/2` and `n − n/2` vertices joined by one edge.
pub fn expander_dumbbell(n: usize) -> Graph {
    let a = n / 2;
    let left = gabber_galil(a).expect("a ≥ 1");
    let right = gabber_galil(n - a).expect("n − a ≥ 1");
    let mut e: Vec<(usize, usize)> = left.edges().to_vec();
    e.extend(right.edges().iter().map(|&(u, v)| (u + a, v + a)));
    e.push((a - 1, a));
    Graph::new(n, e).expect("valid")
}
