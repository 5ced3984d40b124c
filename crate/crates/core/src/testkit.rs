//! Seeded graph generators and a one-sided refinement oracle for stable
//! divisorial gonality.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::chipfiring::dgon_at_most_2_fast;
use crate::multigraph::{EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TestkitError {
    #[error("need at least one vertex")]
    NoVertices,
    #[error("{m} edges cannot connect {n} vertices")]
    TooFewEdges { n: usize, m: usize },
    #[error("graph too large for the refinement oracle: n={n}, m={m}, max_subdiv={max_subdiv}")]
    TooLarge { n: usize, m: usize, max_subdiv: usize },
}

/// Random connected multigraph on `n` vertices with `m` edges: a random
/// spanning tree, then extra edges that are loops with probability
/// `p_loop`, otherwise copies of an existing pair with probability
/// `p_parallel`, otherwise uniform pairs.
pub fn gen_multigraph(
    seed: u64,
    n: usize,
    m: usize,
    p_parallel: f64,
    p_loop: f64,
) -> Result<Multigraph, TestkitError> {
    if n == 0 {
        return Err(TestkitError::NoVertices);
    }
    if m + 1 < n {
        return Err(TestkitError::TooFewEdges { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (rng.gen_range(0..i), i)).collect();
    while edges.len() < m {
        let pick = if n == 1 || rng.gen_bool(p_loop) {
            let v = rng.gen_range(0..n as u32);
            (v, v)
        } else if !edges.is_empty() && rng.gen_bool(p_parallel) {
            edges[rng.gen_range(0..edges.len())]
        } else {
            let a = rng.gen_range(0..n as u32);
            let mut b = rng.gen_range(0..n as u32 - 1);
            if b >= a {
                b += 1;
            }
            (a.min(b), a.max(b))
        };
        edges.push(pick);
    }
    Ok(Multigraph::from_edges(n, &edges))
}

/// Random tree on `n` vertices, each vertex attached to a uniform earlier one.
pub fn gen_tree(seed: u64, n: usize) -> Result<Multigraph, TestkitError> {
    gen_multigraph(seed, n, n.saturating_sub(1), 0.0, 0.0)
}

/// Random series-parallel multigraph on `n ≥ 2` vertices, grown from a
/// single edge by subdividing random edges, each subdivision followed by
/// a parallel copy of a random edge with probability 0.4. A copy is only
/// made of a simple edge, so no pair carries more than two edges. Vertex
/// ids are dense.
pub fn gen_series_parallel(seed: u64, n: usize) -> Multigraph {
    let n = n.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = vec![(0, 1)];
    let mut doubled: HashSet<(u32, u32)> = HashSet::new();
    for w in 2..n as u32 {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        doubled.remove(&(a.min(b), a.max(b)));
        edges[i] = (a, w);
        edges.push((w, b));
        if rng.gen_bool(0.4) {
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            if doubled.insert((a.min(b), a.max(b))) {
                edges.push((a, b));
            }
        }
    }
    Multigraph::from_edges(n, &edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    Unknown,
}

impl fmt::Display for OracleAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleAnswer::Yes => "YES",
            OracleAnswer::Unknown => "UNKNOWN",
        })
    }
}

pub const MAX_BOUNDED_VERTICES: usize = 6;
pub const MAX_BOUNDED_EDGES: usize = 8;
pub const MAX_SUBDIVISIONS: usize = 2;

/// Searches refinements that subdivide every edge at most `max_subdiv`
/// times for one with divisorial gonality at most 2. Answers YES when one
/// exists and UNKNOWN otherwise; it never claims NO.
pub fn sdgon_leq2_bounded(g: &Multigraph, max_subdiv: usize) -> Result<OracleAnswer, TestkitError> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n > MAX_BOUNDED_VERTICES || m > MAX_BOUNDED_EDGES || max_subdiv > MAX_SUBDIVISIONS {
        return Err(TestkitError::TooLarge { n, m, max_subdiv });
    }
    // Parallel edges (and loops at one vertex) are interchangeable, so
    // each bundle only needs its multiset of subdivision counts.
    let mut bundles: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for (e, a, b) in g.edges() {
        bundles.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let choices: Vec<(Vec<EdgeId>, Vec<Vec<usize>>)> = bundles
        .into_values()
        .map(|es| {
            let counts = multisets(es.len(), max_subdiv);
            (es, counts)
        })
        .collect();

    let mut plans: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let total = choices
            .iter()
            .zip(&pick)
            .map(|((_, cs), &k)| cs[k].iter().sum::<usize>())
            .sum();
        plans.push((total, pick.clone()));
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < choices[i].1.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    plans.sort();

    for (_, plan) in plans {
        let mut h = g.clone();
        for ((es, counts), &k) in choices.iter().zip(&plan) {
            for (&e, &c) in es.iter().zip(&counts[k]) {
                if c > 0 {
                    h.subdivide_edge(e, c).expect("live edge");
                }
            }
        }
        if dgon_at_most_2_fast(&h) {
            return Ok(OracleAnswer::Yes);
        }
    }
    Ok(OracleAnswer::Unknown)
}

/// Non-decreasing sequences of length `len` over `0..=max`.
fn multisets(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            rec(len, x, max, cur, out);
            cur.pop();
        }
    }
    rec(len, 0, max, &mut cur, &mut out);
    out
}
