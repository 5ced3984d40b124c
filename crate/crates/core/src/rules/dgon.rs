//! Rules for divisorial gonality at most two.
//!
//! Constraints `(u, w)` here demand that a suitable divisor can place its
//! two chips on `u` and `w`, and that every firing set takes both or
//! neither. Rules only delete vertices and edges, so connectivity and the
//! at-most-two parallel edges left by preprocessing persist.

use std::collections::{HashMap, HashSet};

use super::{compatible, leaf_edge, Attempt, Edit};
use crate::engine::{Flavor, RuleId, RuleName};
use crate::multigraph::{Chain, CycleCandidate, EdgeId, Multigraph, VertexId};

fn rule(name: RuleName) -> RuleId {
    RuleId::new(Flavor::Dgon, name)
}

/// Deletes every loop at `v`.
pub(crate) fn drop_loops(g: &mut Multigraph, v: VertexId) -> Attempt {
    if g.loop_count(v).expect("live") == 0 {
        return Attempt::No;
    }
    let loops: Vec<_> = g
        .incident(v)
        .expect("live")
        .iter()
        .copied()
        .filter(|&e| g.is_loop(e).expect("live"))
        .collect();
    if loops.is_empty() {
        return Attempt::No;
    }
    let mut edit = Edit::new(g, rule(RuleName::L));
    for e in loops {
        edit.delete_edge(e);
    }
    edit.finish()
}

/// Thins a bundle of at least three parallel edges to one or two,
/// recording the pair as a constraint.
pub(crate) fn thin_bundle(g: &mut Multigraph, u: VertexId, v: VertexId) -> Attempt {
    let mut bundle = g.edges_between(u, v).expect("live");
    if u == v || bundle.len() < 3 {
        return Attempt::No;
    }
    bundle.sort_unstable();
    let k = (bundle.len() - 1) / 2;
    let mut edit = Edit::new(g, rule(RuleName::M));
    for &e in &bundle[..2 * k] {
        edit.delete_edge(e);
    }
    edit.add_constraint(u, v);
    edit.finish()
}

pub(crate) fn end(g: &mut Multigraph) -> Attempt {
    match g.vertex_count() {
        1 if g.edge_count() == 0 => {
            let v = g.vertices().next().expect("one vertex");
            let mut edit = Edit::new(g, rule(RuleName::E1));
            edit.delete_vertex(v);
            edit.finish()
        }
        2 if g.edge_count() == 1 && g.constraint_count() == 1 => {
            let vs: Vec<_> = g.vertices().collect();
            let (u, v) = (vs[0], vs[1]);
            if g.parallel_count(u, v).expect("live") != 1 || !g.has_constraint(u, v).expect("live") {
                return Attempt::No;
            }
            let mut edit = Edit::new(g, rule(RuleName::E2));
            edit.delete_vertex(u);
            edit.delete_vertex(v);
            edit.finish()
        }
        _ => Attempt::No,
    }
}

pub(crate) fn leaf(g: &mut Multigraph, v: VertexId) -> Attempt {
    if g.degree(v).expect("live") != 1 {
        return Attempt::No;
    }
    let u = g.opposite(leaf_edge(g, v), v).expect("live");
    match g.constraint_partners(v).expect("live")[..] {
        [] => {
            let mut edit = Edit::new(g, rule(RuleName::T1));
            edit.delete_vertex(v);
            edit.finish()
        }
        [w] if w == v => {
            let mut edit = Edit::new(g, rule(RuleName::T2));
            edit.delete_vertex(v);
            edit.add_constraint(u, u);
            edit.finish()
        }
        [w] => {
            if w == u || g.degree(w).expect("live") != 1 || g.constraint_partners(w).expect("live") != [v] {
                return Attempt::No;
            }
            let u2 = g.opposite(leaf_edge(g, w), w).expect("live");
            let mut edit = Edit::new(g, rule(RuleName::T3));
            edit.delete_vertex(v);
            edit.delete_vertex(w);
            edit.add_constraint(u, u2);
            edit.finish()
        }
        _ => Attempt::No,
    }
}

/// Rule C2 through degree-2 vertex `v`: when the chain through `v`
/// leaves and returns to the same branch vertex `b`, and its constraints
/// are compatible with two chips on `b`, the cycle collapses onto `b`.
pub(crate) fn pendant_cycle(g: &mut Multigraph, v: VertexId) -> Attempt {
    if g.degree(v).expect("live") != 2 {
        return Attempt::No;
    }
    let first = g.incident(v).expect("live")[0];
    let half = g.walk_chain(v, first).expect("live");
    let b = half.end;
    if b == v || g.degree(b).expect("live") <= 2 {
        return Attempt::No;
    }
    let chain = g
        .walk_chain(b, *half.edges.last().expect("nonempty"))
        .expect("live");
    if chain.end != b {
        return Attempt::No;
    }
    let mut vertices = vec![b];
    vertices.extend(chain.interior.iter().copied());
    let cycle = CycleCandidate {
        vertices,
        edges: chain.edges.clone(),
        branch: vec![b],
    };
    if !compatible(g, &cycle, Some((b, b))) {
        return Attempt::No;
    }
    let mut edit = Edit::new(g, rule(RuleName::C2));
    for &x in &chain.interior {
        edit.delete_vertex(x);
    }
    edit.add_constraint(b, b);
    edit.finish()
}

/// Pairs of chains, keyed by their first edges and far end, already found
/// to have no black path joining their ends outside them. Deletions never
/// create such a path, so entries stay valid for the rest of a run.
pub(crate) type Separated = HashSet<(EdgeId, EdgeId, VertexId)>;

/// Rule C3 at branch vertex `a`: two chains from `a` to the same branch
/// vertex form a cycle that can be cut out when a black path outside it
/// still joins the two ends.
pub(crate) fn two_branch_cycle(g: &mut Multigraph, a: VertexId, separated: &mut Separated) -> Attempt {
    if g.degree(a).expect("live") <= 2 {
        return Attempt::No;
    }
    let deg = g.incident(a).expect("live").len();
    let mut by_end: HashMap<VertexId, Vec<Chain>> = HashMap::new();
    for k in 0..deg {
        let e = g.incident(a).expect("live")[k];
        let chain = g.walk_chain(a, e).expect("live");
        let b = chain.end;
        if b == a || g.degree(b).expect("live") <= 2 {
            continue;
        }
        let earlier = by_end.entry(b).or_default();
        for prev in earlier.iter() {
            let cycle = CycleCandidate::from_pair(prev, &chain);
            if !compatible(g, &cycle, Some((a, b))) {
                continue;
            }
            let outside = earlier.len() > 1
                || (k + 1..deg).any(|i| {
                    let f = g.incident(a).expect("live")[i];
                    g.walk_chain(a, f).expect("live").end == b
                })
                || {
                    let key = (prev.edges[0].min(e), prev.edges[0].max(e), b);
                    // interior chain vertices are only reachable through the end edges
                    let ends = |c: &Chain| [c.edges[0], *c.edges.last().expect("nonempty")];
                    let avoid = [ends(prev), ends(&chain)].concat();
                    let joined = !separated.contains(&key) && g.linked(a, b, &avoid, false).expect("live");
                    if !joined {
                        separated.insert(key);
                    }
                    joined
                };
            if !outside {
                continue;
            }
            let pair = [prev.clone(), chain.clone()];
            let mut edit = Edit::new(g, rule(RuleName::C3));
            for c in &pair {
                if c.interior.is_empty() {
                    edit.delete_edge(c.edges[0]);
                }
                for &x in &c.interior {
                    edit.delete_vertex(x);
                }
            }
            edit.add_constraint(a, b);
            return edit.finish();
        }
        earlier.push(chain);
    }
    Attempt::No
}

/// Rule C1: a graph that is a single cycle with compatible constraints
/// becomes one fresh vertex.
pub(crate) fn bare_cycle(g: &mut Multigraph) -> Attempt {
    let Some(start) = g.vertices().next() else {
        return Attempt::No;
    };
    if g.vertices().any(|v| g.degree(v).expect("live") != 2) || !g.is_connected() {
        return Attempt::No;
    }
    let cycle = g.bare_cycle_from(start).expect("live");
    if !compatible(g, &cycle, None) {
        return Attempt::No;
    }
    let mut edit = Edit::new(g, rule(RuleName::C1));
    for &x in &cycle.vertices {
        edit.delete_vertex(x);
    }
    edit.add_vertex();
    edit.finish()
}
