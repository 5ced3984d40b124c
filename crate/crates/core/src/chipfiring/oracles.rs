//! Brute-force membership oracles used to validate the rule engines.

use std::collections::HashMap;

use super::{rank_at_least_one, ChipError, ChipGraph, Divisor};
use crate::multigraph::Multigraph;

/// Default vertex cap for [`constrained_suitable_exists`].
pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// Two-chip placements given by cycle positions are equivalent on `C_L`
/// exactly when their position sums agree modulo `L`.
pub fn cycle_pair_equivalent(len: usize, p: (usize, usize), q: (usize, usize)) -> bool {
    assert!(len >= 1, "cycle length must be positive");
    (p.0 + p.1) % len == (q.0 + q.1) % len
}

fn loop_free_tree_components(g: &Multigraph) -> Option<usize> {
    let comps = g.components();
    let non_loops = g.edges().filter(|(_, a, b)| a != b).count();
    if non_loops + comps.len() == g.vertex_count() {
        Some(comps.len())
    } else {
        None
    }
}

/// Whether some effective degree-2 divisor has rank at least one, by
/// checking every placement of two chips. Loops are ignored; a
/// disconnected graph qualifies only as a pair of trees.
pub fn dgon_at_most_2(g: &Multigraph) -> bool {
    dgon_search(g, false)
}

/// Same answer as [`dgon_at_most_2`], trying only placements with a chip
/// on the lowest vertex: every class of rank at least one contains one.
pub(crate) fn dgon_at_most_2_fast(g: &Multigraph) -> bool {
    dgon_search(g, true)
}

fn dgon_search(g: &Multigraph, anchored: bool) -> bool {
    if g.is_empty() {
        return true;
    }
    let comps = g.components().len();
    if let Some(trees) = loop_free_tree_components(g) {
        return trees <= 2;
    }
    if comps > 1 {
        return false;
    }
    let cg = ChipGraph::new(g);
    let n = cg.len();
    let firsts = if anchored { 0..1 } else { 0..n };
    for i in firsts {
        for j in i..n {
            let d = Divisor::from_chips(n, &[i, j]);
            if rank_at_least_one(&cg, &d).expect("connected") {
                return true;
            }
        }
    }
    false
}

/// Exhaustive search for a suitable divisor under constraints: an
/// effective degree-2 divisor of rank at least one, satisfying every
/// constraint, where each firing set contains both or neither end of
/// every constraint.
///
/// Explores the graph whose nodes are the effective degree-2 divisors and
/// whose arcs are valid, constraint-closed set firings.
pub fn constrained_suitable_exists(g: &Multigraph, bound: usize) -> Result<bool, ChipError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(ChipError::TooLarge { n, bound });
    }
    if n == 0 {
        return Ok(true);
    }
    if g.vertices().any(|v| g.constraint_count_at(v).expect("live") > 1) {
        return Ok(false);
    }
    let cg = ChipGraph::new(g);
    if !cg.is_connected() {
        return Err(ChipError::Disconnected);
    }
    let pairs: Vec<(usize, usize)> = g
        .constraints()
        .into_iter()
        .map(|(a, b)| (cg.index_of(a).expect("live"), cg.index_of(b).expect("live")))
        .collect();

    let states: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let state_of: HashMap<(usize, usize), usize> = states.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut parent: Vec<usize> = (0..states.len()).collect();

    for (k, &(a, b)) in states.iter().enumerate() {
        let d = Divisor::from_chips(n, &[a, b]);
        for next in closed_valid_firings(&cg, &d, &pairs) {
            let s = support_pair(&next);
            union(&mut parent, k, state_of[&s]);
        }
    }

    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..states.len() {
        members.entry(find(&mut parent, k)).or_default().push(k);
    }
    Ok(members.values().any(|ks| {
        let mut covered = vec![false; n];
        for &k in ks {
            covered[states[k].0] = true;
            covered[states[k].1] = true;
        }
        covered.iter().all(|&c| c)
            && pairs.iter().all(|&(u, w)| {
                let p = (u.min(w), u.max(w));
                ks.iter().any(|&k| states[k] == p)
            })
    }))
}

fn support_pair(d: &Divisor) -> (usize, usize) {
    let mut chips = Vec::with_capacity(2);
    for (i, &c) in d.0.iter().enumerate() {
        for _ in 0..c {
            chips.push(i);
        }
    }
    (chips[0], chips[1])
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Every divisor reachable from `d` by one valid, constraint-closed firing
/// of a nonempty proper subset.
///
/// A chipless vertex can only fire together with all its neighbors, so a
/// valid set is its intersection `T` with the support plus whole
/// components of `G − T` that avoid the rest of the support.
fn closed_valid_firings(cg: &ChipGraph, d: &Divisor, pairs: &[(usize, usize)]) -> Vec<Divisor> {
    let n = cg.len();
    let support: Vec<usize> = (0..n).filter(|&i| d[i] > 0).collect();
    let mut out = Vec::new();
    for tmask in 1u32..(1 << support.len()) {
        let t: Vec<usize> = (0..support.len())
            .filter(|&k| tmask & (1 << k) != 0)
            .map(|k| support[k])
            .collect();
        let mut comp = vec![usize::MAX; n];
        for &x in &t {
            comp[x] = usize::MAX - 1;
        }
        let mut free: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = free.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in cg.neighbors(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            free.push(members);
        }
        let free: Vec<Vec<usize>> = free
            .into_iter()
            .filter(|m| !m.iter().any(|&x| d[x] > 0))
            .collect();
        assert!(free.len() < 64, "too many free components");
        for choice in 0u64..(1u64 << free.len()) {
            let mut mask = vec![false; n];
            for &x in &t {
                mask[x] = true;
            }
            for (k, m) in free.iter().enumerate() {
                if choice & (1 << k) != 0 {
                    for &x in m {
                        mask[x] = true;
                    }
                }
            }
            if mask.iter().all(|&b| b) {
                continue;
            }
            if pairs.iter().any(|&(u, w)| mask[u] != mask[w]) {
                continue;
            }
            if t.iter().any(|&x| d[x] < cg.outdeg(x, &mask)) {
                continue;
            }
            let mut next = d.0.clone();
            cg.fire_mask(&mut next, &mask, 1);
            out.push(Divisor(next));
        }
    }
    out
}
