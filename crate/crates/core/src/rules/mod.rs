//! Reduction rules. Each rule either applies at a given anchor, recording
//! every primitive edit it performs, or reports why it does not.

pub mod dgon;
pub mod stable;

use std::collections::HashMap;

use crate::engine::{Op, Reason, ReductionStep, RuleId};
use crate::multigraph::{CycleCandidate, EdgeId, Multigraph, VertexId};

/// Outcome of trying one rule class at one anchor.
#[derive(Debug)]
pub(crate) enum Attempt {
    Applied(ReductionStep),
    /// Would apply if every leaf and degree-2 vertex carried a constraint.
    NeedsGuard,
    Reject(Reason),
    No,
}

/// Global facts the stable rules consult.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Guard {
    /// Every leaf carries a constraint.
    pub leaves: bool,
    /// Every leaf and every degree-2 vertex carries a constraint.
    pub full: bool,
}

/// Applies primitive edits to the graph while recording them as a step.
pub(crate) struct Edit<'g> {
    g: &'g mut Multigraph,
    step: ReductionStep,
}

impl<'g> Edit<'g> {
    pub fn new(g: &'g mut Multigraph, rule: RuleId) -> Self {
        Edit {
            g,
            step: ReductionStep::new(rule),
        }
    }

    pub fn delete_edge(&mut self, e: EdgeId) {
        self.g.delete_edge(e).expect("rule edits live edges");
        self.step.removed_edges += 1;
        self.step.ops.push(Op::DeleteEdge(e));
    }

    /// Drops the constraints of `v`, then `v` and its edges.
    pub fn delete_vertex(&mut self, v: VertexId) {
        for p in self.g.constraint_partners(v).expect("live") {
            self.remove_constraint(v, p);
        }
        self.step.removed_edges += self.g.incident(v).expect("live").len();
        self.g.delete_vertex(v).expect("constraints removed");
        self.step.removed_vertices.push(v);
        self.step.ops.push(Op::DeleteVertex(v));
    }

    pub fn contract(&mut self, e: EdgeId) -> VertexId {
        let (a, b) = self.g.endpoints(e).expect("live");
        let s = self.g.contract_edge(e).expect("non-loop edge");
        self.step.removed_edges += 1;
        self.step.removed_vertices.push(a.max(b));
        self.step.contracted.push((a.min(b), a.max(b)));
        self.step.ops.push(Op::Contract(e));
        s
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.step.ops.push(Op::AddVertex);
        self.g.add_vertex()
    }

    pub fn add_constraint(&mut self, u: VertexId, v: VertexId) {
        self.g.add_constraint(u, v).expect("live");
        self.step.added_constraint = Some((u.min(v), u.max(v)));
        self.step.ops.push(Op::AddConstraint(u, v));
    }

    pub fn remove_constraint(&mut self, u: VertexId, v: VertexId) {
        self.g.remove_constraint(u, v).expect("live");
        self.step.ops.push(Op::RemoveConstraint(u, v));
    }

    pub fn finish(self) -> Attempt {
        Attempt::Applied(self.step)
    }
}

/// Whether the constraints touching `cycle`, plus `extra`, are compatible
/// on it: every such constraint lies on the cycle and all of them are
/// equivalent as two-chip placements there.
pub(crate) fn compatible(
    g: &Multigraph,
    cycle: &CycleCandidate,
    extra: Option<(VertexId, VertexId)>,
) -> bool {
    let len = cycle.len();
    let pos: HashMap<VertexId, usize> = cycle.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut target = extra.map(|(a, b)| (pos[&a] + pos[&b]) % len);
    for &x in &cycle.vertices {
        for p in g.constraint_partners(x).expect("live") {
            let Some(&pp) = pos.get(&p) else {
                return false;
            };
            let sum = (pos[&x] + pp) % len;
            match target {
                None => target = Some(sum),
                Some(t) if t != sum => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// The single non-loop edge of a leaf.
pub(crate) fn leaf_edge(g: &Multigraph, v: VertexId) -> EdgeId {
    g.incident(v).expect("live")[0]
}
