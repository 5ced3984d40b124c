//! Reduction engine: applies rules one instance at a time until the graph
//! is empty or no rule applies, and turns the outcome into a verdict.

mod schedule;

use std::fmt;

pub use schedule::Engine;

use crate::multigraph::{EdgeId, GraphError, Multigraph, VertexId};
use crate::treewidth::tw_at_most_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Dgon,
    Sgon,
    Sdgon,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Dgon, Flavor::Sgon, Flavor::Sdgon];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Dgon => "dgon",
            Flavor::Sgon => "sgon",
            Flavor::Sdgon => "sdgon",
        }
    }

    /// Rule classes the flavor uses, in default priority order.
    pub fn classes(self) -> &'static [RuleClass] {
        match self {
            Flavor::Dgon => &[
                RuleClass::End,
                RuleClass::Leaf,
                RuleClass::PendantCycle,
                RuleClass::Cycle,
            ],
            Flavor::Sgon | Flavor::Sdgon => &[
                RuleClass::End,
                RuleClass::Leaf,
                RuleClass::Series,
                RuleClass::Loop,
                RuleClass::Parallel,
            ],
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dgon" => Ok(Flavor::Dgon),
            "sgon" => Ok(Flavor::Sgon),
            "sdgon" => Ok(Flavor::Sdgon),
            other => Err(format!("unknown flavor {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    E1,
    E2,
    E3,
    T1,
    T2,
    T3,
    S1,
    S1a,
    S1b,
    S2,
    L,
    M,
    P1,
    P2,
    C1,
    C2,
    C3,
}

impl RuleName {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::E1 => "E1",
            RuleName::E2 => "E2",
            RuleName::E3 => "E3",
            RuleName::T1 => "T1",
            RuleName::T2 => "T2",
            RuleName::T3 => "T3",
            RuleName::S1 => "S1",
            RuleName::S1a => "S1a",
            RuleName::S1b => "S1b",
            RuleName::S2 => "S2",
            RuleName::L => "L",
            RuleName::M => "M",
            RuleName::P1 => "P1",
            RuleName::P2 => "P2",
            RuleName::C1 => "C1",
            RuleName::C2 => "C2",
            RuleName::C3 => "C3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleId {
    pub flavor: Flavor,
    pub name: RuleName,
}

impl RuleId {
    pub fn new(flavor: Flavor, name: RuleName) -> Self {
        RuleId { flavor, name }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.as_str())
    }
}

/// Groups of rules sharing an anchor kind; the engine tries classes in a
/// fixed priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleClass {
    End,
    Leaf,
    Series,
    PendantCycle,
    Loop,
    Parallel,
    Cycle,
}

impl RuleClass {
    pub const ALL: [RuleClass; 7] = [
        RuleClass::End,
        RuleClass::Leaf,
        RuleClass::Series,
        RuleClass::PendantCycle,
        RuleClass::Loop,
        RuleClass::Parallel,
        RuleClass::Cycle,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

/// A primitive edit; replaying a step's ops on the graph it was taken from
/// reproduces the graph after the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    DeleteVertex(VertexId),
    DeleteEdge(EdgeId),
    Contract(EdgeId),
    AddVertex,
    AddConstraint(VertexId, VertexId),
    RemoveConstraint(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: RuleId,
    /// Vertices deleted, or merged away by contraction.
    pub removed_vertices: Vec<VertexId>,
    pub removed_edges: usize,
    pub added_constraint: Option<(VertexId, VertexId)>,
    pub contracted: Vec<(VertexId, VertexId)>,
    pub ops: Vec<Op>,
}

impl ReductionStep {
    pub(crate) fn new(rule: RuleId) -> Self {
        ReductionStep {
            rule,
            removed_vertices: Vec::new(),
            removed_edges: 0,
            added_constraint: None,
            contracted: Vec::new(),
            ops: Vec::new(),
        }
    }

    pub fn apply_to(&self, g: &mut Multigraph) -> Result<(), GraphError> {
        for &op in &self.ops {
            match op {
                Op::DeleteVertex(v) => g.delete_vertex(v)?,
                Op::DeleteEdge(e) => g.delete_edge(e)?,
                Op::Contract(e) => {
                    g.contract_edge(e)?;
                }
                Op::AddVertex => {
                    g.add_vertex();
                }
                Op::AddConstraint(u, v) => {
                    g.add_constraint(u, v)?;
                }
                Op::RemoveConstraint(u, v) => {
                    g.remove_constraint(u, v)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} removed=[", self.rule.flavor, self.rule)?;
        for (i, v) in self.removed_vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")?;
        if let Some((u, v)) = self.added_constraint {
            write!(f, " constraint=({u},{v})")?;
        }
        Ok(())
    }
}

/// Replays a trace on a copy of the graph it was produced from.
pub fn replay_trace(g: &Multigraph, trace: &[ReductionStep]) -> Result<Multigraph, GraphError> {
    let mut h = g.clone();
    for step in trace {
        step.apply_to(&mut h)?;
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    ReducedToEmpty,
    Stuck,
    TreewidthReject,
    ConflictingConstraints,
    DegreeMismatch,
    Disconnected,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::ReducedToEmpty => "reduced-to-empty",
            Reason::Stuck => "stuck",
            Reason::TreewidthReject => "treewidth-reject",
            Reason::ConflictingConstraints => "conflicting-constraints",
            Reason::DegreeMismatch => "degree-mismatch",
            Reason::Disconnected => "disconnected",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub flavor: Flavor,
    pub answer: Answer,
    pub reason: Reason,
    pub trace: Vec<ReductionStep>,
    /// The input is a tree for this flavor, so its gonality is exactly one.
    pub is_tree: bool,
    /// Rule applications after preprocessing.
    pub steps: usize,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} reason={} steps={} tree={}",
            self.flavor, self.answer, self.reason, self.steps, self.is_tree
        )
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub priority: Vec<RuleClass>,
    /// Stop as soon as a certificate of a NO answer is seen, instead of
    /// running until stuck.
    pub eager_rejections: bool,
    pub treewidth_check: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            priority: RuleClass::ALL.to_vec(),
            eager_rejections: true,
            treewidth_check: true,
        }
    }
}

/// Upper bound on rule applications after preprocessing, from the
/// potential `n + 2m + betti` for inputs of treewidth at most two.
pub fn rule_application_budget(n: usize, flavor: Flavor) -> usize {
    match flavor {
        Flavor::Dgon => 3 * n,
        Flavor::Sgon | Flavor::Sdgon => 10 * n,
    }
}

pub fn run(g: &Multigraph, flavor: Flavor) -> Verdict {
    run_with(g, flavor, &Options::default())
}

fn tree_for(g: &Multigraph, flavor: Flavor) -> bool {
    let loops = g.loop_total();
    g.vertex_count() > 0
        && g.constraint_count() == 0
        && (loops == 0 || flavor != Flavor::Sgon)
        && g.edge_count() - loops + 1 == g.vertex_count()
        && g.is_connected()
}

pub fn run_with(g: &Multigraph, flavor: Flavor, opts: &Options) -> Verdict {
    let mut verdict = Verdict {
        flavor,
        answer: Answer::No,
        reason: Reason::Stuck,
        trace: Vec::new(),
        is_tree: tree_for(g, flavor),
        steps: 0,
    };
    if g.is_empty() {
        verdict.answer = Answer::Yes;
        verdict.reason = Reason::ReducedToEmpty;
        return verdict;
    }

    let comps = g.components_with_constraints();
    if comps.len() > 1 {
        let parts: Vec<Multigraph> = comps.iter().map(|c| restrict(g, c)).collect();
        if parts.len() == 2 && parts.iter().all(|p| tree_for(p, flavor)) {
            for part in parts {
                let v = run_connected(part, flavor, opts, true);
                debug_assert!(v.is_yes());
                verdict.steps += v.steps;
                verdict.trace.extend(v.trace);
            }
            verdict.answer = Answer::Yes;
            verdict.reason = Reason::ReducedToEmpty;
        } else {
            verdict.reason = Reason::Disconnected;
        }
        return verdict;
    }

    let tw_ok = !opts.treewidth_check || tw_at_most_2(g);
    let inner = run_connected(g.clone(), flavor, opts, tw_ok);
    Verdict {
        is_tree: verdict.is_tree,
        ..inner
    }
}

/// Copy of `g` keeping only `keep`, with ids unchanged.
fn restrict(g: &Multigraph, keep: &[VertexId]) -> Multigraph {
    let mut h = g.clone();
    let keep: std::collections::HashSet<_> = keep.iter().copied().collect();
    let drop: Vec<_> = h.vertices().filter(|v| !keep.contains(v)).collect();
    for v in drop {
        for p in h.constraint_partners(v).expect("live") {
            h.remove_constraint(v, p).expect("live");
        }
        h.delete_vertex(v).expect("constraints removed");
    }
    h
}

fn run_connected(g: Multigraph, flavor: Flavor, opts: &Options, tw_ok: bool) -> Verdict {
    let n = g.vertex_count();
    let mut engine = Engine::new(g, flavor)
        .with_priority(&opts.priority)
        .with_eager_rejections(opts.eager_rejections);
    let mut trace = engine.preprocess();
    let mut reason = engine.rejection();
    if reason.is_none() && !tw_ok {
        reason = Some(Reason::TreewidthReject);
    }
    let mut steps = 0;
    if reason.is_none() {
        while let Some(step) = engine.step() {
            trace.push(step);
            steps += 1;
        }
        debug_assert!(
            steps <= rule_application_budget(n, flavor),
            "{steps} steps on {n} vertices"
        );
        reason = Some(engine.rejection().unwrap_or(if engine.graph().is_empty() {
            Reason::ReducedToEmpty
        } else {
            Reason::Stuck
        }));
    }
    let reason = reason.expect("set above");
    Verdict {
        flavor,
        answer: if reason == Reason::ReducedToEmpty {
            Answer::Yes
        } else {
            Answer::No
        },
        reason,
        trace,
        is_tree: false,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Multigraph::from_edges(n as usize, &edges)
    }

    #[test]
    fn empty_graph_is_yes_everywhere() {
        for f in Flavor::ALL {
            let v = run(&Multigraph::new(), f);
            assert!(v.is_yes());
            assert!(v.trace.is_empty());
        }
    }

    #[test]
    fn k4_is_rejected_by_treewidth() {
        for f in Flavor::ALL {
            let v = run(&complete(4), f);
            assert_eq!(v.answer, Answer::No);
            assert_eq!(v.reason, Reason::TreewidthReject);
        }
    }

    #[test]
    fn cycles_are_hyperelliptic() {
        let c6 = Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        for f in Flavor::ALL {
            let v = run(&c6, f);
            assert!(v.is_yes(), "{f}: {v}");
            assert!(!v.is_tree);
        }
    }

    #[test]
    fn trees_report_tree() {
        let t = Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]);
        for f in Flavor::ALL {
            let v = run(&t, f);
            assert!(v.is_yes());
            assert!(v.is_tree);
        }
    }

    #[test]
    fn loops_matter_only_for_stable_gonality() {
        let g = Multigraph::from_edges(2, &[(0, 1), (1, 1)]);
        assert!(run(&g, Flavor::Dgon).is_tree);
        assert!(!run(&g, Flavor::Sgon).is_tree);
        assert!(run(&g, Flavor::Sdgon).is_tree);
    }

    #[test]
    fn two_trees_reduce_separately() {
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]);
        for f in Flavor::ALL {
            let v = run(&g, f);
            assert!(v.is_yes(), "{f}: {v}");
            let h = replay_trace(&g, &v.trace).unwrap();
            assert!(h.is_empty());
        }
        let three = Multigraph::from_edges(3, &[]);
        assert_eq!(run(&three, Flavor::Dgon).reason, Reason::Disconnected);
    }

    #[test]
    fn trace_replays_to_empty() {
        let g = Multigraph::from_edges(5, &[(0, 1), (0, 1), (1, 2), (2, 4), (4, 1), (2, 3), (2, 3)]);
        for f in Flavor::ALL {
            let v = run(&g, f);
            let h = replay_trace(&g, &v.trace).unwrap();
            assert_eq!(h.is_empty(), v.is_yes());
        }
    }

    #[test]
    fn budget_values() {
        assert_eq!(rule_application_budget(10, Flavor::Dgon), 30);
        assert_eq!(rule_application_budget(10, Flavor::Sgon), 100);
        assert_eq!(rule_application_budget(10, Flavor::Sdgon), 100);
    }

    #[test]
    fn step_display() {
        let mut s = ReductionStep::new(RuleId::new(Flavor::Sgon, RuleName::S2));
        s.removed_vertices.push(VertexId(4));
        s.added_constraint = Some((VertexId(1), VertexId(3)));
        assert_eq!(s.to_string(), "sgon S2 removed=[4] constraint=(1,3)");
    }
}
