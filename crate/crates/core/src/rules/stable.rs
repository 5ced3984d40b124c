//! Rules shared by stable gonality and stable divisorial gonality.
//!
//! A constraint `(u, w)` asks that the degree-two map send `u` and `w` to
//! the same point. The two flavors differ only in how loops are dropped
//! and in how an unconstrained degree-2 vertex is smoothed.

use super::{leaf_edge, Attempt, Edit, Guard};
use crate::engine::{Flavor, Reason, RuleId, RuleName};
use crate::multigraph::{EdgeId, Multigraph, VertexId};

fn rule(flavor: Flavor, name: RuleName) -> RuleId {
    RuleId::new(flavor, name)
}

/// Removes every loop at `v`; in stable gonality `v` also gains a
/// self-constraint.
pub(crate) fn drop_loops(g: &mut Multigraph, flavor: Flavor, v: VertexId) -> Attempt {
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
    let mut edit = Edit::new(g, rule(flavor, RuleName::L));
    for e in loops {
        edit.delete_edge(e);
    }
    if flavor == Flavor::Sgon {
        edit.add_constraint(v, v);
    }
    edit.finish()
}

/// Replaces a bundle of at least three parallel edges by a constraint.
pub(crate) fn collapse_bundle(g: &mut Multigraph, flavor: Flavor, u: VertexId, v: VertexId) -> Attempt {
    let bundle = g.edges_between(u, v).expect("live");
    if u == v || bundle.len() < 3 {
        return Attempt::No;
    }
    let mut edit = Edit::new(g, rule(flavor, RuleName::M));
    for e in bundle {
        edit.delete_edge(e);
    }
    edit.add_constraint(u, v);
    edit.finish()
}

pub(crate) fn end(g: &mut Multigraph, flavor: Flavor) -> Attempt {
    if g.edge_count() != 0 {
        return Attempt::No;
    }
    match g.vertex_count() {
        1 => {
            let v = g.vertices().next().expect("one vertex");
            let name = match g.constraint_partners(v).expect("live")[..] {
                [] => RuleName::E1,
                [w] if w == v => RuleName::E2,
                _ => return Attempt::No,
            };
            let mut edit = Edit::new(g, rule(flavor, name));
            edit.delete_vertex(v);
            edit.finish()
        }
        2 => {
            let vs: Vec<_> = g.vertices().collect();
            let (u, v) = (vs[0], vs[1]);
            if g.constraint_count() != 1 || !g.has_constraint(u, v).expect("live") {
                return Attempt::No;
            }
            let mut edit = Edit::new(g, rule(flavor, RuleName::E3));
            edit.delete_vertex(u);
            edit.delete_vertex(v);
            edit.finish()
        }
        _ => Attempt::No,
    }
}

pub(crate) fn leaf(g: &mut Multigraph, flavor: Flavor, v: VertexId, guard: Guard) -> Attempt {
    if g.degree(v).expect("live") != 1 {
        return Attempt::No;
    }
    let e = leaf_edge(g, v);
    let u = g.opposite(e, v).expect("live");
    let name = match g.constraint_partners(v).expect("live")[..] {
        [] => RuleName::T1,
        [w] if w == v => RuleName::T2,
        [w] => {
            let dw = g.degree(w).expect("live");
            if dw != 1 {
                if guard.leaves && g.loop_total() == 0 {
                    return Attempt::Reject(Reason::DegreeMismatch);
                }
                return Attempt::No;
            }
            if w == u || g.constraint_partners(w).expect("live") != [v] {
                return Attempt::No;
            }
            if !guard.full {
                return Attempt::NeedsGuard;
            }
            let f = leaf_edge(g, w);
            let mut edit = Edit::new(g, rule(flavor, RuleName::T3));
            edit.contract(e);
            edit.contract(f);
            return edit.finish();
        }
        _ => return Attempt::No,
    };
    let mut edit = Edit::new(g, rule(flavor, name));
    edit.contract(e);
    edit.finish()
}

/// The two edges at a loop-free degree-2 vertex with their far ends,
/// ordered by far end then edge id.
fn series_arms(g: &Multigraph, v: VertexId) -> Option<[(VertexId, EdgeId); 2]> {
    if g.degree(v).expect("live") != 2 || g.loop_count(v).expect("live") != 0 {
        return None;
    }
    let inc = g.incident(v).expect("live");
    let mut arms = [
        (g.opposite(inc[0], v).expect("live"), inc[0]),
        (g.opposite(inc[1], v).expect("live"), inc[1]),
    ];
    arms.sort_unstable();
    Some(arms)
}

pub(crate) fn series(g: &mut Multigraph, flavor: Flavor, v: VertexId, guard: Guard) -> Attempt {
    let Some([(u1, e1), (u2, e2)]) = series_arms(g, v) else {
        return Attempt::No;
    };
    match g.constraint_partners(v).expect("live")[..] {
        [] => {
            if flavor == Flavor::Sdgon && u1 == u2 {
                let mut edit = Edit::new(g, rule(flavor, RuleName::S1a));
                edit.delete_vertex(v);
                edit.add_constraint(u1, u1);
                return edit.finish();
            }
            let name = if flavor == Flavor::Sdgon {
                RuleName::S1b
            } else {
                RuleName::S1
            };
            let mut edit = Edit::new(g, rule(flavor, name));
            edit.contract(e1);
            edit.finish()
        }
        [w] if w == v => {
            if !guard.full {
                return Attempt::NeedsGuard;
            }
            if u1 != u2 && !g.linked(u1, u2, &[e1, e2], true).expect("live") {
                return Attempt::No;
            }
            let mut edit = Edit::new(g, rule(flavor, RuleName::S2));
            edit.delete_vertex(v);
            edit.add_constraint(u1, u2);
            edit.finish()
        }
        _ => Attempt::No,
    }
}

pub(crate) fn parallel(g: &mut Multigraph, flavor: Flavor, a: VertexId, b: VertexId) -> Attempt {
    if a == b {
        return Attempt::No;
    }
    let mut bundle = g.edges_between(a, b).expect("live");
    bundle.sort_unstable();
    if !bundle.is_empty() && g.has_constraint(a, b).expect("live") {
        // each deletion is one P1 instance; they are batched into one step
        let mut edit = Edit::new(g, rule(flavor, RuleName::P1));
        for e in bundle {
            edit.delete_edge(e);
        }
        return edit.finish();
    }
    if bundle.len() < 2 {
        return Attempt::No;
    }
    let (e, f) = (bundle[0], bundle[1]);
    let outside = bundle.len() > 2 || { g.linked(a, b, &[e, f], true).expect("live") };
    if !outside {
        return Attempt::No;
    }
    let mut edit = Edit::new(g, rule(flavor, RuleName::P2));
    edit.delete_edge(e);
    edit.delete_edge(f);
    edit.add_constraint(a, b);
    edit.finish()
}
