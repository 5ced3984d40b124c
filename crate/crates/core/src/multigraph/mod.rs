//! Mutable multigraph with parallel edges, loops and a separate set of
//! constraint edges.
//!
//! Vertex handles are stable: a merged vertex forwards to the survivor of
//! the merge, and ids are never reused. Internally each live vertex owns a
//! storage slot; contraction keeps the larger incidence list in place and
//! hands its slot to the surviving (lower) id, so merging costs time
//! proportional to the smaller side.

mod chains;
mod constraints;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use chains::{Chain, CycleCandidate};
pub use constraints::ConstraintSet;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not live")]
    DeadVertex(VertexId),
    #[error("edge {0} is not live")]
    DeadEdge(EdgeId),
    #[error("cannot contract loop {0}")]
    ContractLoop(EdgeId),
    #[error("vertex {0} still carries constraints")]
    ConstrainedVertex(VertexId),
    #[error("subdivision count must be at least one")]
    ZeroSubdivision,
    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(VertexId),
}

/// A structural change recorded by the mutation journal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Touch {
    /// Degree, incidence or constraints of the vertex changed, or it died.
    Vertex(VertexId),
    /// An edge or constraint between the two vertices appeared.
    Pair(VertexId, VertexId),
}

#[derive(Debug, Clone)]
struct EdgeRec {
    ends: [u32; 2],
    /// Position in the incidence list of each end; loops use only `pos[0]`.
    pos: [u32; 2],
    alive: bool,
}

impl EdgeRec {
    fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    fn side(&self, slot: u32) -> usize {
        usize::from(self.ends[0] != slot)
    }

    fn other(&self, slot: u32) -> u32 {
        if self.ends[0] == slot {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Clone, Default)]
struct VertexRec {
    id: u32,
    inc: Vec<EdgeId>,
    degree: u32,
    loops: u32,
}

#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    slot_of: Vec<u32>,
    forward: Vec<u32>,
    verts: Vec<VertexRec>,
    edges: Vec<EdgeRec>,
    cons: ConstraintSet<u32>,
    live_vertices: usize,
    live_edges: usize,
    live_loops: usize,
    journal: Option<Vec<Touch>>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with the given edges.
    ///
    /// Panics if an endpoint is out of range.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Multigraph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v)).expect("endpoint in range");
        }
        g
    }

    // ---- handles ---------------------------------------------------------

    fn slot(&self, v: VertexId) -> Result<u32, GraphError> {
        match self.slot_of.get(v.0 as usize) {
            Some(&s) if s != NIL => Ok(s),
            _ => Err(GraphError::DeadVertex(v)),
        }
    }

    fn id(&self, slot: u32) -> VertexId {
        VertexId(self.verts[slot as usize].id)
    }

    fn edge(&self, e: EdgeId) -> Result<&EdgeRec, GraphError> {
        match self.edges.get(e.0 as usize) {
            Some(rec) if rec.alive => Ok(rec),
            _ => Err(GraphError::DeadEdge(e)),
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.slot(v).is_ok()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edge(e).is_ok()
    }

    /// Follows merges to the live representative of `v`, if any.
    pub fn resolve(&self, v: VertexId) -> Option<VertexId> {
        let mut cur = v.0;
        loop {
            let i = cur as usize;
            if i >= self.slot_of.len() {
                return None;
            }
            if self.slot_of[i] != NIL {
                return Some(VertexId(cur));
            }
            if self.forward[i] == NIL {
                return None;
            }
            cur = self.forward[i];
        }
    }

    /// One past the largest id ever issued.
    pub fn id_bound(&self) -> usize {
        self.slot_of.len()
    }

    // ---- journal ---------------------------------------------------------

    /// Starts or stops recording [`Touch`] events.
    pub fn set_journal(&mut self, on: bool) {
        self.journal = if on { Some(Vec::new()) } else { None };
    }

    pub fn drain_journal(&mut self) -> Vec<Touch> {
        self.journal.as_mut().map(std::mem::take).unwrap_or_default()
    }

    fn touch(&mut self, slot: u32) {
        if let Some(j) = self.journal.as_mut() {
            j.push(Touch::Vertex(VertexId(self.verts[slot as usize].id)));
        }
    }

    fn touch_pair(&mut self, a: u32, b: u32) {
        if let Some(j) = self.journal.as_mut() {
            let (a, b) = (self.verts[a as usize].id, self.verts[b as usize].id);
            j.push(Touch::Pair(VertexId(a.min(b)), VertexId(a.max(b))));
        }
    }

    // ---- counts and iteration -------------------------------------------

    pub fn vertex_count(&self) -> usize {
        self.live_vertices
    }

    /// Number of black edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    pub fn loop_total(&self) -> usize {
        self.live_loops
    }

    pub fn is_empty(&self) -> bool {
        self.live_vertices == 0
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.slot_of
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != NIL)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Live edges in ascending id order with their endpoints.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, r)| r.alive)
            .map(|(i, r)| (EdgeId(i as u32), self.id(r.ends[0]), self.id(r.ends[1])))
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        let r = self.edge(e)?;
        Ok((self.id(r.ends[0]), self.id(r.ends[1])))
    }

    /// The endpoint of `e` opposite to `v` (`v` itself for a loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Result<VertexId, GraphError> {
        let s = self.slot(v)?;
        Ok(self.id(self.edge(e)?.other(s)))
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool, GraphError> {
        Ok(self.edge(e)?.is_loop())
    }

    /// Incident black edges; each loop is listed once.
    pub fn incident(&self, v: VertexId) -> Result<&[EdgeId], GraphError> {
        Ok(&self.verts[self.slot(v)? as usize].inc)
    }

    /// Black degree; a loop counts twice, constraints not at all.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.verts[self.slot(v)? as usize].degree as usize)
    }

    pub fn loop_count(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.verts[self.slot(v)? as usize].loops as usize)
    }

    /// Distinct non-loop neighbors in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let s = self.slot(v)?;
        let mut out: Vec<VertexId> = self.verts[s as usize]
            .inc
            .iter()
            .map(|&e| &self.edges[e.0 as usize])
            .filter(|r| !r.is_loop())
            .map(|r| self.id(r.other(s)))
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Edges joining `u` and `v` (loops at `u` when `u == v`).
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Result<Vec<EdgeId>, GraphError> {
        let (su, sv) = (self.slot(u)?, self.slot(v)?);
        let (scan, target) = if self.verts[su as usize].inc.len() <= self.verts[sv as usize].inc.len() {
            (su, sv)
        } else {
            (sv, su)
        };
        Ok(self.verts[scan as usize]
            .inc
            .iter()
            .copied()
            .filter(|&e| self.edges[e.0 as usize].other(scan) == target)
            .collect())
    }

    pub fn parallel_count(&self, u: VertexId, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.edges_between(u, v)?.len())
    }

    // ---- mutation --------------------------------------------------------

    pub fn add_vertex(&mut self) -> VertexId {
        let slot = self.verts.len() as u32;
        let id = self.slot_of.len() as u32;
        self.slot_of.push(slot);
        self.forward.push(NIL);
        self.verts.push(VertexRec {
            id,
            ..VertexRec::default()
        });
        self.live_vertices += 1;
        self.touch(slot);
        VertexId(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let (a, b) = (self.slot(u)?, self.slot(v)?);
        Ok(self.link(a, b))
    }

    fn link(&mut self, a: u32, b: u32) -> EdgeId {
        let e = EdgeId(self.edges.len() as u32);
        let pa = self.verts[a as usize].inc.len() as u32;
        self.verts[a as usize].inc.push(e);
        let pb = if a == b {
            self.verts[a as usize].degree += 2;
            self.verts[a as usize].loops += 1;
            self.live_loops += 1;
            NIL
        } else {
            let pb = self.verts[b as usize].inc.len() as u32;
            self.verts[b as usize].inc.push(e);
            self.verts[a as usize].degree += 1;
            self.verts[b as usize].degree += 1;
            pb
        };
        self.edges.push(EdgeRec {
            ends: [a, b],
            pos: [pa, pb],
            alive: true,
        });
        self.live_edges += 1;
        self.touch(a);
        if a != b {
            self.touch(b);
            self.touch_pair(a, b);
        }
        e
    }

    /// Removes position `pos` of the incidence list of `slot`, fixing the
    /// position of the edge swapped into its place.
    fn unlist(&mut self, slot: u32, pos: u32) {
        let inc = &mut self.verts[slot as usize].inc;
        inc.swap_remove(pos as usize);
        if let Some(&moved) = inc.get(pos as usize) {
            let rec = &mut self.edges[moved.0 as usize];
            let side = rec.side(slot);
            rec.pos[side] = pos;
        }
    }

    pub fn delete_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        let rec = self.edge(e)?.clone();
        let [a, b] = rec.ends;
        self.unlist(a, rec.pos[0]);
        if rec.is_loop() {
            self.verts[a as usize].degree -= 2;
            self.verts[a as usize].loops -= 1;
            self.live_loops -= 1;
        } else {
            self.unlist(b, rec.pos[1]);
            self.verts[a as usize].degree -= 1;
            self.verts[b as usize].degree -= 1;
        }
        self.edges[e.0 as usize].alive = false;
        self.live_edges -= 1;
        self.touch(a);
        if a != b {
            self.touch(b);
        }
        Ok(())
    }

    /// Deletes `v` together with its incident edges. Constraints touching
    /// `v` must be removed first.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let s = self.slot(v)?;
        if self.cons.count_at(s) > 0 {
            return Err(GraphError::ConstrainedVertex(v));
        }
        while let Some(&e) = self.verts[s as usize].inc.last() {
            self.delete_edge(e)?;
        }
        self.touch(s);
        self.verts[s as usize] = VertexRec {
            id: NIL,
            ..VertexRec::default()
        };
        self.slot_of[v.0 as usize] = NIL;
        self.live_vertices -= 1;
        Ok(())
    }

    /// Contracts a non-loop edge. The endpoints merge into the lower id;
    /// other edges between them become loops and constraints are rewritten
    /// onto the survivor, duplicates dropped.
    pub fn contract_edge(&mut self, e: EdgeId) -> Result<VertexId, GraphError> {
        let rec = self.edge(e)?;
        if rec.is_loop() {
            return Err(GraphError::ContractLoop(e));
        }
        let [a, b] = rec.ends;
        self.delete_edge(e)?;
        let (ida, idb) = (self.verts[a as usize].id, self.verts[b as usize].id);
        let (big, small) = if self.verts[a as usize].inc.len() >= self.verts[b as usize].inc.len() {
            (a, b)
        } else {
            (b, a)
        };
        let small_rec = std::mem::take(&mut self.verts[small as usize]);
        for f in small_rec.inc {
            let fr = &mut self.edges[f.0 as usize];
            if fr.is_loop() {
                fr.ends = [big, big];
                fr.pos = [self.verts[big as usize].inc.len() as u32, NIL];
                self.verts[big as usize].inc.push(f);
                continue;
            }
            let side = fr.side(small);
            let other = fr.other(small);
            if other == big {
                // already listed at `big`; becomes a loop kept at that entry
                let keep = fr.pos[1 - side];
                fr.ends = [big, big];
                fr.pos = [keep, NIL];
                self.verts[big as usize].loops += 1;
                self.live_loops += 1;
            } else {
                fr.ends[side] = big;
                fr.pos[side] = self.verts[big as usize].inc.len() as u32;
                self.verts[big as usize].inc.push(f);
                if let Some(j) = self.journal.as_mut() {
                    j.push(Touch::Vertex(VertexId(self.verts[other as usize].id)));
                    let (x, y) = (ida.min(idb), self.verts[other as usize].id);
                    j.push(Touch::Pair(VertexId(x.min(y)), VertexId(x.max(y))));
                }
            }
        }
        self.verts[big as usize].degree += small_rec.degree;
        self.verts[big as usize].loops += small_rec.loops;

        let survivor = ida.min(idb);
        let dead = ida.max(idb);
        self.verts[big as usize].id = survivor;
        self.verts[small as usize].id = NIL;
        self.slot_of[survivor as usize] = big;
        self.slot_of[dead as usize] = NIL;
        self.forward[dead as usize] = survivor;
        self.live_vertices -= 1;

        for (x, p) in self.cons.rename(small, big) {
            self.touch(p);
            self.touch_pair(x, p);
        }
        self.touch(big);
        if let Some(j) = self.journal.as_mut() {
            j.push(Touch::Vertex(VertexId(dead)));
        }
        Ok(VertexId(survivor))
    }

    /// Replaces `e` by a path of `k + 1` edges through `k` fresh vertices.
    pub fn subdivide_edge(&mut self, e: EdgeId, k: usize) -> Result<Vec<VertexId>, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroSubdivision);
        }
        let [a, b] = self.edge(e)?.ends;
        self.delete_edge(e)?;
        let mut fresh = Vec::with_capacity(k);
        let mut prev = a;
        for _ in 0..k {
            let w = self.add_vertex();
            let ws = self.slot_of[w.0 as usize];
            self.link(prev, ws);
            prev = ws;
            fresh.push(w);
        }
        self.link(prev, b);
        Ok(fresh)
    }

    // ---- constraints -----------------------------------------------------

    /// Returns false if the pair was already present.
    pub fn add_constraint(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        let (a, b) = (self.slot(u)?, self.slot(v)?);
        let fresh = self.cons.insert(a, b);
        if fresh {
            self.touch(a);
            if a != b {
                self.touch(b);
                self.touch_pair(a, b);
            }
        }
        Ok(fresh)
    }

    pub fn remove_constraint(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        let (a, b) = (self.slot(u)?, self.slot(v)?);
        let gone = self.cons.remove(a, b);
        if gone {
            self.touch(a);
            self.touch(b);
        }
        Ok(gone)
    }

    pub fn has_constraint(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        Ok(self.cons.contains(self.slot(u)?, self.slot(v)?))
    }

    /// Constraint partners of `v`, with `v` itself for a self-pair.
    pub fn constraint_partners(&self, v: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let s = self.slot(v)?;
        let mut out: Vec<_> = self.cons.partners(s).iter().map(|&p| self.id(p)).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn constraint_count_at(&self, v: VertexId) -> Result<usize, GraphError> {
        Ok(self.cons.count_at(self.slot(v)?))
    }

    pub fn constraint_count(&self) -> usize {
        self.cons.len()
    }

    /// All constraints as `(min, max)` pairs, sorted.
    pub fn constraints(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .cons
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.id(a), self.id(b));
                (x.min(y), x.max(y))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The constraints as a standalone set keyed by vertex id.
    pub fn constraint_set(&self) -> ConstraintSet<VertexId> {
        self.constraints().into_iter().collect()
    }

    // ---- global structure ------------------------------------------------

    fn components_by(&self, with_constraints: bool) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.verts.len()];
        let mut out = Vec::new();
        for v in self.vertices() {
            let s = self.slot_of[v.0 as usize];
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![v];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                let rec = &self.verts[x as usize];
                let nbrs = rec.inc.iter().map(|&e| self.edges[e.0 as usize].other(x));
                let extra: &[u32] = if with_constraints {
                    self.cons.partners(x)
                } else {
                    &[]
                };
                for y in nbrs.chain(extra.iter().copied()) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        comp.push(self.id(y));
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the black graph.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_by(false)
    }

    /// Connected components when constraint pairs also count as edges.
    pub fn components_with_constraints(&self) -> Vec<Vec<VertexId>> {
        self.components_by(true)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// First Betti number of the black graph.
    pub fn betti(&self) -> usize {
        self.live_edges + self.components().len() - self.live_vertices
    }

    /// Connected, acyclic, loop-free and without constraints.
    pub fn is_tree(&self) -> bool {
        self.live_vertices > 0
            && self.cons.is_empty()
            && self.live_edges + 1 == self.live_vertices
            && self.is_connected()
    }

    /// `{v}` together with the component of `u` in `G - v`.
    pub fn side_subgraph(&self, v: VertexId, u: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let (sv, su) = (self.slot(v)?, self.slot(u)?);
        if sv == su {
            return Err(GraphError::SameVertex(v));
        }
        let mut seen: HashSet<u32> = [sv, su].into_iter().collect();
        let mut stack = vec![su];
        while let Some(x) = stack.pop() {
            for &e in &self.verts[x as usize].inc {
                let y = self.edges[e.0 as usize].other(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().map(|s| self.id(s)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Whether `u` and `v` are joined in the black graph minus `excluded`,
    /// optionally treating constraint pairs as edges.
    ///
    /// Searches from both ends in lockstep, so a negative answer costs
    /// about twice the size of the smaller side.
    pub fn linked(
        &self,
        u: VertexId,
        v: VertexId,
        excluded: &[EdgeId],
        with_constraints: bool,
    ) -> Result<bool, GraphError> {
        let (su, sv) = (self.slot(u)?, self.slot(v)?);
        if su == sv {
            return Ok(true);
        }
        // 0 = unseen, 1 = reached from u, 2 = reached from v
        let mut owner = vec![0u8; self.verts.len()];
        owner[su as usize] = 1;
        owner[sv as usize] = 2;
        let mut queues = [VecDeque::from([su]), VecDeque::from([sv])];
        let mut turn = 0usize;
        loop {
            if queues[0].is_empty() || queues[1].is_empty() {
                return Ok(false);
            }
            let x = queues[turn].pop_front().expect("nonempty");
            let rec = &self.verts[x as usize];
            let black = rec
                .inc
                .iter()
                .filter(|e| !excluded.contains(e))
                .map(|&e| self.edges[e.0 as usize].other(x));
            let extra: &[u32] = if with_constraints {
                self.cons.partners(x)
            } else {
                &[]
            };
            let mine = turn as u8 + 1;
            for y in black.chain(extra.iter().copied()) {
                match owner[y as usize] {
                    0 => {
                        owner[y as usize] = mine;
                        queues[turn].push_back(y);
                    }
                    side if side != mine => return Ok(true),
                    _ => {}
                }
            }
            turn ^= 1;
        }
    }

    /// True iff `u` and `v` are connected in `(black − excluded) ∪ constraints`.
    pub fn connected_with_constraints(
        &self,
        u: VertexId,
        v: VertexId,
        excluded: &[EdgeId],
    ) -> Result<bool, GraphError> {
        self.linked(u, v, excluded, true)
    }

    /// Canonical description used to compare graphs for equality:
    /// live vertices, live edges with normalized endpoints, constraints.
    pub fn signature(&self) -> GraphSignature {
        GraphSignature {
            vertices: self.vertices().collect(),
            edges: self.edges().map(|(e, a, b)| (e, a.min(b), a.max(b))).collect(),
            constraints: self.constraints(),
        }
    }

    /// Internal consistency check used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut degree_sum = 0usize;
        let mut loops = 0usize;
        let mut live = 0usize;
        for (slot, rec) in self.verts.iter().enumerate() {
            let slot = slot as u32;
            if rec.id == NIL {
                if !rec.inc.is_empty() || self.cons.count_at(slot) > 0 {
                    return Err(format!("dead slot {slot} still has incidences"));
                }
                continue;
            }
            live += 1;
            if self.slot_of[rec.id as usize] != slot {
                return Err(format!("slot map broken for id {}", rec.id));
            }
            let mut deg = 0;
            let mut lp = 0;
            for (i, &e) in rec.inc.iter().enumerate() {
                let er = &self.edges[e.0 as usize];
                if !er.alive {
                    return Err(format!("dead edge {e} listed at {}", rec.id));
                }
                let side = er.side(slot);
                if er.ends[side] != slot || er.pos[side] != i as u32 {
                    return Err(format!("edge {e} position mismatch at {}", rec.id));
                }
                if er.is_loop() {
                    deg += 2;
                    lp += 1;
                } else {
                    deg += 1;
                }
            }
            if deg != rec.degree || lp != rec.loops {
                return Err(format!("degree cache wrong at {}", rec.id));
            }
            degree_sum += deg as usize;
            loops += lp as usize;
        }
        if live != self.live_vertices || loops != self.live_loops {
            return Err("live counters wrong".into());
        }
        if degree_sum != 2 * self.live_edges {
            return Err("handshake lemma violated".into());
        }
        for (i, er) in self.edges.iter().enumerate() {
            if er.alive && er.ends.iter().any(|&s| self.verts[s as usize].id == NIL) {
                return Err(format!("edge e{i} has a dead endpoint"));
            }
        }
        for (a, b) in self.cons.pairs() {
            if self.verts[a as usize].id == NIL || self.verts[b as usize].id == NIL {
                return Err("constraint on dead vertex".into());
            }
        }
        Ok(())
    }

    // ---- crate-internal slot access used by chain walking -----------------

    pub(crate) fn slot_degree(&self, slot: u32) -> u32 {
        self.verts[slot as usize].degree
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSignature {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
    pub constraints: Vec<(VertexId, VertexId)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn loop_counts_twice() {
        let mut g = Multigraph::from_edges(2, &[(0, 1)]);
        g.add_edge(v(0), v(0)).unwrap();
        assert_eq!(g.degree(v(0)).unwrap(), 3);
        assert_eq!(g.degree(v(1)).unwrap(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn deleting_one_parallel_edge_keeps_the_other() {
        let mut g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        g.delete_edge(EdgeId(0)).unwrap();
        assert_eq!(g.parallel_count(v(0), v(1)).unwrap(), 1);
        assert!(g.contains_edge(EdgeId(1)));
        g.check_invariants().unwrap();
    }

    #[test]
    fn delete_vertex_refuses_constrained_vertex() {
        let mut g = Multigraph::from_edges(2, &[(0, 1)]);
        g.add_constraint(v(0), v(1)).unwrap();
        assert_eq!(g.delete_vertex(v(0)), Err(GraphError::ConstrainedVertex(v(0))));
        g.remove_constraint(v(0), v(1)).unwrap();
        g.delete_vertex(v(0)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn green_loop_adds_no_degree() {
        let mut g = Multigraph::from_edges(1, &[]);
        g.add_constraint(v(0), v(0)).unwrap();
        assert_eq!(g.degree(v(0)).unwrap(), 0);
    }

    #[test]
    fn contract_path_edge() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        let s = g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(s, v(0));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.endpoints(EdgeId(1)).unwrap(), (v(0), v(2)));
        assert_eq!(g.resolve(v(1)), Some(v(0)));
        g.check_invariants().unwrap();
    }

    #[test]
    fn contracting_one_of_two_parallels_leaves_a_loop() {
        let mut g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.loop_count(v(0)).unwrap(), 1);
        assert_eq!(g.degree(v(0)).unwrap(), 2);
        g.check_invariants().unwrap();
    }

    #[test]
    fn contraction_rewrites_constraints() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        g.add_constraint(v(1), v(2)).unwrap();
        g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(g.constraints(), vec![(v(0), v(2))]);
    }

    #[test]
    fn survivor_is_lower_id_even_when_it_is_the_smaller_side() {
        // vertex 3 is a hub, vertex 0 a leaf of it
        let mut g = Multigraph::from_edges(5, &[(0, 3), (1, 3), (2, 3), (4, 3)]);
        g.set_journal(true);
        let s = g.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(s, v(0));
        assert_eq!(g.degree(v(0)).unwrap(), 3);
        assert_eq!(g.neighbors(v(0)).unwrap(), vec![v(1), v(2), v(4)]);
        assert!(!g.contains_vertex(v(3)));
        assert_eq!(g.resolve(v(3)), Some(v(0)));
        g.check_invariants().unwrap();
    }

    #[test]
    fn subdivide_edge_and_loop() {
        let mut g = Multigraph::from_edges(2, &[(0, 1)]);
        let w = g.subdivide_edge(EdgeId(0), 1).unwrap();
        assert_eq!(w, vec![v(2)]);
        assert_eq!(g.degree(v(2)).unwrap(), 2);
        assert_eq!(g.parallel_count(v(0), v(1)).unwrap(), 0);

        let mut h = Multigraph::from_edges(1, &[(0, 0)]);
        let w = h.subdivide_edge(EdgeId(0), 1).unwrap();
        assert_eq!(h.parallel_count(v(0), w[0]).unwrap(), 2);
        assert_eq!(h.loop_count(v(0)).unwrap(), 0);

        let mut k = Multigraph::from_edges(2, &[(0, 1)]);
        let w = k.subdivide_edge(EdgeId(0), 3).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(k.edge_count(), 4);
        k.check_invariants().unwrap();
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).betti(), 1);
        assert_eq!(
            Multigraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).betti(),
            0
        );
        let b3 = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(b3.parallel_count(v(0), v(1)).unwrap(), 3);
        assert_eq!(b3.betti(), 2);
    }

    #[test]
    fn side_subgraphs() {
        let path = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(path.side_subgraph(v(1), v(0)).unwrap(), vec![v(0), v(1)]);
        let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(tri.side_subgraph(v(0), v(1)).unwrap().len(), 3);
        let star = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(star.side_subgraph(v(0), v(2)).unwrap(), vec![v(0), v(2)]);
        assert!(star.side_subgraph(v(0), v(0)).is_err());
    }

    #[test]
    fn constraint_connectivity() {
        let mut g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        let both = [EdgeId(0), EdgeId(1)];
        assert!(!g.connected_with_constraints(v(0), v(1), &both).unwrap());
        g.add_constraint(v(0), v(1)).unwrap();
        assert!(g.connected_with_constraints(v(0), v(1), &both).unwrap());

        let square = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let one = [EdgeId(0)];
        assert!(square.connected_with_constraints(v(0), v(1), &one).unwrap());
    }

    #[test]
    fn journal_reports_pairs_created_by_contraction() {
        // triangle 0-1-2; contracting 1-2 creates a parallel pair 0-1
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        g.set_journal(true);
        g.contract_edge(EdgeId(1)).unwrap();
        let touches = g.drain_journal();
        assert!(touches.contains(&Touch::Pair(v(0), v(1))));
        assert_eq!(g.parallel_count(v(0), v(1)).unwrap(), 2);
    }
}
