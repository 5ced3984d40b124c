//! Worklist scheduling. Every rule class keeps a queue of anchors whose
//! neighborhood changed since they were last tried; the graph's mutation
//! journal feeds the queues, so a step never rescans the whole graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use super::{Flavor, Reason, ReductionStep, RuleClass};
use crate::multigraph::{Multigraph, Touch, VertexId};
use crate::rules::{dgon, stable, Attempt, Guard};

#[derive(Debug, Default, Clone)]
struct VertexQueue {
    heap: BinaryHeap<Reverse<u32>>,
    queued: Vec<bool>,
}

impl VertexQueue {
    fn push(&mut self, v: VertexId) {
        let i = v.0 as usize;
        if i >= self.queued.len() {
            self.queued.resize(i + 1, false);
        }
        if !self.queued[i] {
            self.queued[i] = true;
            self.heap.push(Reverse(v.0));
        }
    }

    fn pop(&mut self) -> Option<VertexId> {
        let Reverse(i) = self.heap.pop()?;
        self.queued[i as usize] = false;
        Some(VertexId(i))
    }
}

#[derive(Debug, Default, Clone)]
struct PairQueue {
    heap: BinaryHeap<Reverse<(u32, u32)>>,
    queued: HashSet<(u32, u32)>,
}

impl PairQueue {
    fn push(&mut self, a: VertexId, b: VertexId) {
        let key = (a.0.min(b.0), a.0.max(b.0));
        if self.queued.insert(key) {
            self.heap.push(Reverse(key));
        }
    }

    fn pop(&mut self) -> Option<(VertexId, VertexId)> {
        let Reverse(key) = self.heap.pop()?;
        self.queued.remove(&key);
        Some((VertexId(key.0), VertexId(key.1)))
    }
}

#[derive(Debug, Clone, Copy)]
enum Prep {
    Loops(VertexId),
    Bundle(VertexId, VertexId),
}

#[derive(Debug, Clone, Copy)]
enum Anchor {
    Global,
    Vertex(VertexId),
    Pair(VertexId, VertexId),
}

const OPEN_LEAF: u8 = 1;
const OPEN_SERIES: u8 = 2;
const BRANCHY: u8 = 4;

/// Per-id stamps recording the graph version at which an id was handled.
#[derive(Debug, Default, Clone)]
struct Stamps(Vec<u64>);

impl Stamps {
    fn seen(&self, v: VertexId, version: u64) -> bool {
        self.0.get(v.0 as usize) == Some(&version)
    }

    fn mark(&mut self, v: VertexId, version: u64) {
        let i = v.0 as usize;
        if i >= self.0.len() {
            self.0.resize(i + 1, 0);
        }
        self.0[i] = version;
    }
}

/// Incremental rule engine for one flavor.
///
/// [`Engine::step`] performs preprocessing first, one rule instance per
/// call, then main-loop rules chosen by class priority and, within a
/// class, by lowest anchor id.
#[derive(Debug)]
pub struct Engine {
    flavor: Flavor,
    g: Multigraph,
    order: Vec<RuleClass>,
    queues: Vec<VertexQueue>,
    pairs: PairQueue,
    parked: Vec<(RuleClass, VertexId)>,
    marks: Vec<u8>,
    open_leaves: usize,
    open_series: usize,
    branchy: usize,
    prep: VecDeque<Prep>,
    preprocessed: bool,
    eager: bool,
    reject: Option<Reason>,
    version: u64,
    walked: [Stamps; 2],
    anchored: [Stamps; 2],
    bare_tried: u64,
    separated: dgon::Separated,
}

impl Engine {
    pub fn new(mut g: Multigraph, flavor: Flavor) -> Self {
        g.set_journal(true);
        let mut prep: VecDeque<Prep> = g
            .vertices()
            .filter(|&v| g.loop_count(v).expect("live") > 0)
            .map(Prep::Loops)
            .collect();
        let mut bundles: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (_, a, b) in g.edges() {
            if a != b {
                *bundles.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        let mut big: Vec<_> = bundles
            .iter()
            .filter(|&(_, &c)| c >= 3)
            .map(|(&k, _)| k)
            .collect();
        big.sort_unstable();
        prep.extend(big.into_iter().map(|(a, b)| Prep::Bundle(a, b)));

        let mut engine = Engine {
            flavor,
            g,
            order: RuleClass::ALL.to_vec(),
            queues: vec![VertexQueue::default(); RuleClass::ALL.len()],
            pairs: PairQueue::default(),
            parked: Vec::new(),
            marks: Vec::new(),
            open_leaves: 0,
            open_series: 0,
            branchy: 0,
            prep,
            preprocessed: false,
            eager: true,
            reject: None,
            version: 1,
            walked: Default::default(),
            anchored: Default::default(),
            bare_tried: 0,
            separated: Default::default(),
        };
        let vs: Vec<_> = engine.g.vertices().collect();
        for v in vs {
            engine.refresh(v);
        }
        if flavor != Flavor::Dgon {
            let pairs: Vec<_> = engine
                .g
                .edges()
                .map(|(_, a, b)| (a, b))
                .chain(engine.g.constraints())
                .filter(|(a, b)| a != b)
                .collect();
            for (a, b) in pairs {
                engine.pairs.push(a, b);
            }
        }
        engine.g.drain_journal();
        engine
    }

    /// Replaces the class priority order. Classes left out are never tried.
    pub fn with_priority(mut self, order: &[RuleClass]) -> Self {
        self.order = order.to_vec();
        self
    }

    /// With eager rejections off, the engine runs until no rule applies
    /// even when the answer is already known to be NO.
    pub fn with_eager_rejections(mut self, on: bool) -> Self {
        self.eager = on;
        if !on {
            self.reject = None;
        }
        self
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn graph(&self) -> &Multigraph {
        &self.g
    }

    pub fn into_graph(mut self) -> Multigraph {
        self.g.set_journal(false);
        self.g
    }

    /// A NO certificate found so far, if any. Once set, no more steps run.
    pub fn rejection(&self) -> Option<Reason> {
        self.reject
    }

    /// Runs every preprocessing rule and returns the steps taken.
    pub fn preprocess(&mut self) -> Vec<ReductionStep> {
        let mut out = Vec::new();
        while let Some(s) = self.prep_step() {
            out.push(s);
        }
        self.preprocessed = true;
        out
    }

    fn prep_step(&mut self) -> Option<ReductionStep> {
        while let Some(p) = self.prep.pop_front() {
            let attempt = match p {
                Prep::Loops(v) if self.g.contains_vertex(v) => match self.flavor {
                    Flavor::Dgon => dgon::drop_loops(&mut self.g, v),
                    f => stable::drop_loops(&mut self.g, f, v),
                },
                Prep::Bundle(a, b) if self.g.contains_vertex(a) && self.g.contains_vertex(b) => {
                    match self.flavor {
                        Flavor::Dgon => dgon::thin_bundle(&mut self.g, a, b),
                        f => stable::collapse_bundle(&mut self.g, f, a, b),
                    }
                }
                _ => Attempt::No,
            };
            if let Attempt::Applied(s) = attempt {
                self.version += 1;
                self.absorb();
                return Some(s);
            }
        }
        None
    }

    /// Applies one rule instance, or returns `None` when none applies or a
    /// rejection has been recorded.
    pub fn step(&mut self) -> Option<ReductionStep> {
        if !self.preprocessed {
            if let Some(s) = self.prep_step() {
                return Some(s);
            }
            self.preprocessed = true;
        }
        if self.reject.is_some() {
            return None;
        }
        if self.guard().full && !self.parked.is_empty() {
            for (class, v) in std::mem::take(&mut self.parked) {
                self.queues[class.index()].push(v);
            }
        }
        for i in 0..self.order.len() {
            let class = self.order[i];
            if !self.flavor.classes().contains(&class) {
                continue;
            }
            if let Some(s) = self.try_class(class) {
                self.version += 1;
                self.absorb();
                return Some(s);
            }
            if self.reject.is_some() {
                return None;
            }
        }
        None
    }

    fn guard(&self) -> Guard {
        Guard {
            leaves: self.open_leaves == 0,
            full: self.open_leaves == 0 && self.open_series == 0,
        }
    }

    fn note_reject(&mut self, r: Reason) {
        if self.eager && self.reject.is_none() {
            self.reject = Some(r);
        }
    }

    fn absorb(&mut self) {
        for t in self.g.drain_journal() {
            match t {
                Touch::Vertex(v) => self.refresh(v),
                Touch::Pair(a, b) => {
                    if self.flavor != Flavor::Dgon && a != b {
                        self.pairs.push(a, b);
                    }
                }
            }
        }
    }

    fn refresh(&mut self, v: VertexId) {
        let i = v.0 as usize;
        if i >= self.marks.len() {
            self.marks.resize(i + 1, 0);
        }
        let alive = self.g.contains_vertex(v);
        let new = if alive {
            let deg = self.g.degree(v).expect("live");
            let free = self.g.constraint_count_at(v).expect("live") == 0;
            let mut m = 0;
            if deg == 1 && free {
                m |= OPEN_LEAF;
            }
            if deg == 2 && free {
                m |= OPEN_SERIES;
            }
            if deg != 2 {
                m |= BRANCHY;
            }
            m
        } else {
            0
        };
        let old = std::mem::replace(&mut self.marks[i], new);
        for (bit, counter) in [
            (OPEN_LEAF, &mut self.open_leaves),
            (OPEN_SERIES, &mut self.open_series),
            (BRANCHY, &mut self.branchy),
        ] {
            match (old & bit != 0, new & bit != 0) {
                (false, true) => *counter += 1,
                (true, false) => *counter -= 1,
                _ => {}
            }
        }
        if !alive {
            return;
        }
        for &class in self.flavor.classes() {
            if !matches!(class, RuleClass::End | RuleClass::Parallel) {
                self.queues[class.index()].push(v);
            }
        }
        let partners = self.g.constraint_partners(v).expect("live");
        for &p in &partners {
            if p != v {
                self.queues[RuleClass::Leaf.index()].push(p);
            }
        }
        if partners.len() > 1 {
            self.note_reject(Reason::ConflictingConstraints);
        }
    }

    fn attempt(&mut self, class: RuleClass, anchor: Anchor) -> Attempt {
        let guard = self.guard();
        let g = &mut self.g;
        match (self.flavor, class, anchor) {
            (Flavor::Dgon, RuleClass::End, _) => dgon::end(g),
            (f, RuleClass::End, _) => stable::end(g, f),
            (Flavor::Dgon, RuleClass::Leaf, Anchor::Vertex(v)) => dgon::leaf(g, v),
            (Flavor::Dgon, RuleClass::PendantCycle, Anchor::Vertex(v)) => dgon::pendant_cycle(g, v),
            (Flavor::Dgon, RuleClass::Cycle, Anchor::Vertex(v)) => {
                dgon::two_branch_cycle(g, v, &mut self.separated)
            }
            (Flavor::Dgon, RuleClass::Cycle, Anchor::Global) => dgon::bare_cycle(g),
            (Flavor::Dgon, _, _) => Attempt::No,
            (f, RuleClass::Leaf, Anchor::Vertex(v)) => stable::leaf(g, f, v, guard),
            (f, RuleClass::Series, Anchor::Vertex(v)) => stable::series(g, f, v, guard),
            (f, RuleClass::Loop, Anchor::Vertex(v)) => stable::drop_loops(g, f, v),
            (f, RuleClass::Parallel, Anchor::Pair(a, b)) => stable::parallel(g, f, a, b),
            _ => Attempt::No,
        }
    }

    fn try_class(&mut self, class: RuleClass) -> Option<ReductionStep> {
        match class {
            RuleClass::End => {
                if self.g.vertex_count() <= 2 {
                    if let Attempt::Applied(s) = self.attempt(class, Anchor::Global) {
                        return Some(s);
                    }
                }
                None
            }
            RuleClass::Parallel => {
                while let Some((a, b)) = self.pairs.pop() {
                    let (Some(a), Some(b)) = (self.g.resolve(a), self.g.resolve(b)) else {
                        continue;
                    };
                    if a == b {
                        continue;
                    }
                    match self.attempt(class, Anchor::Pair(a.min(b), a.max(b))) {
                        Attempt::Applied(s) => {
                            self.pairs.push(a, b);
                            return Some(s);
                        }
                        Attempt::Reject(r) => {
                            self.note_reject(r);
                            if self.reject.is_some() {
                                return None;
                            }
                        }
                        _ => {}
                    }
                }
                None
            }
            _ => {
                if class == RuleClass::Cycle
                    && self.flavor == Flavor::Dgon
                    && self.branchy == 0
                    && self.bare_tried != self.version
                {
                    self.bare_tried = self.version;
                    if let Attempt::Applied(s) = self.attempt(class, Anchor::Global) {
                        return Some(s);
                    }
                }
                while let Some(id) = self.queues[class.index()].pop() {
                    let Some(v) = self.g.resolve(id) else {
                        continue;
                    };
                    for a in self.anchors(class, v) {
                        match self.attempt(class, Anchor::Vertex(a)) {
                            Attempt::Applied(s) => {
                                self.queues[class.index()].push(v);
                                return Some(s);
                            }
                            Attempt::NeedsGuard => self.parked.push((class, a)),
                            Attempt::Reject(r) => {
                                self.note_reject(r);
                                if self.reject.is_some() {
                                    return None;
                                }
                            }
                            Attempt::No => {}
                        }
                    }
                }
                None
            }
        }
    }

    /// Anchors to try for a dirty vertex. Pendant cycles are tried from
    /// one degree-2 vertex per chain; two-branch cycles anchor at branch
    /// vertices, so a degree-2 vertex stands for the two ends of its chain.
    fn anchors(&mut self, class: RuleClass, v: VertexId) -> Vec<VertexId> {
        let k = match (self.flavor, class) {
            (Flavor::Dgon, RuleClass::PendantCycle) => 0,
            (Flavor::Dgon, RuleClass::Cycle) => 1,
            _ => return vec![v],
        };
        let version = self.version;
        let deg = self.g.degree(v).expect("live");
        if k == 0 {
            // pendant cycles always have an interior vertex to anchor at
            if deg != 2 || self.walked[k].seen(v, version) {
                return Vec::new();
            }
            let inc = self.g.incident(v).expect("live").to_vec();
            self.walked[k].mark(v, version);
            for e in inc {
                for x in self.g.walk_chain(v, e).expect("live").interior {
                    self.walked[k].mark(x, version);
                }
            }
            return vec![v];
        }
        let ends = if deg > 2 {
            vec![v]
        } else if deg == 2 && !self.walked[k].seen(v, version) {
            self.walked[k].mark(v, version);
            let inc = self.g.incident(v).expect("live").to_vec();
            let first = self.g.walk_chain(v, inc[0]).expect("live");
            for &x in &first.interior {
                self.walked[k].mark(x, version);
            }
            if first.end == v {
                Vec::new()
            } else {
                let second = self.g.walk_chain(v, inc[1]).expect("live");
                for &x in &second.interior {
                    self.walked[k].mark(x, version);
                }
                vec![first.end, second.end]
            }
        } else {
            Vec::new()
        };
        let mut out = Vec::with_capacity(2);
        for a in ends {
            if self.g.degree(a).expect("live") > 2 && !self.anchored[k].seen(a, version) {
                self.anchored[k].mark(a, version);
                out.push(a);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::RuleName;

    #[test]
    fn preprocessing_comes_first_one_step_at_a_time() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (1, 2), (2, 2)]);
        let mut e = Engine::new(g, Flavor::Sgon);
        let first = e.step().unwrap();
        assert_eq!(first.rule.name, RuleName::L);
        let second = e.step().unwrap();
        assert_eq!(second.rule.name, RuleName::M);
    }

    #[test]
    fn conflicting_constraints_stop_the_engine() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        g.add_constraint(VertexId(0), VertexId(1)).unwrap();
        g.add_constraint(VertexId(0), VertexId(0)).unwrap();
        let mut e = Engine::new(g.clone(), Flavor::Dgon);
        assert!(e.step().is_none());
        assert_eq!(e.rejection(), Some(Reason::ConflictingConstraints));

        let mut lazy = Engine::new(g, Flavor::Dgon).with_eager_rejections(false);
        while lazy.step().is_some() {}
        assert_eq!(lazy.rejection(), None);
        assert!(!lazy.graph().is_empty());
    }

    #[test]
    fn lowest_anchor_goes_first() {
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let mut e = Engine::new(g, Flavor::Dgon);
        let s = e.step().unwrap();
        assert_eq!(s.rule.name, RuleName::T1);
        assert_eq!(s.removed_vertices, vec![VertexId(0)]);
    }

    #[test]
    fn priority_order_is_respected() {
        // a pendant triangle at 0 and a leaf at 0
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)]);
        let mut e = Engine::new(g, Flavor::Dgon).with_priority(&[
            RuleClass::End,
            RuleClass::PendantCycle,
            RuleClass::Leaf,
            RuleClass::Cycle,
        ]);
        assert_eq!(e.step().unwrap().rule.name, RuleName::C2);
    }
}
