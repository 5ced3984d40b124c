//! Chains (maximal paths through degree-2 vertices) and the cycles they
//! form, which are exactly the shapes the cycle rules act on.

use std::collections::BTreeMap;

use super::{EdgeId, GraphError, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub start: VertexId,
    pub end: VertexId,
    /// Degree-2 vertices strictly between the ends, in walking order.
    pub interior: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Chain {
    pub fn length(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCandidate {
    /// Cycle vertices in cyclic order; index = position.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Vertices of degree greater than two on the cycle (0, 1 or 2).
    pub branch: Vec<VertexId>,
}

impl CycleCandidate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    fn from_pendant(chain: Chain) -> Self {
        let mut vertices = vec![chain.start];
        vertices.extend(chain.interior);
        CycleCandidate {
            vertices,
            edges: chain.edges,
            branch: vec![chain.start],
        }
    }

    /// The cycle formed by two chains with the same ends.
    pub fn from_pair(first: &Chain, second: &Chain) -> Self {
        let mut vertices = vec![first.start];
        vertices.extend(first.interior.iter().copied());
        vertices.push(first.end);
        let mut back = second.interior.clone();
        if second.start == first.start {
            back.reverse();
        }
        vertices.extend(back);
        let mut edges = first.edges.clone();
        let mut back_edges = second.edges.clone();
        if second.start == first.start {
            back_edges.reverse();
        }
        edges.extend(back_edges);
        CycleCandidate {
            vertices,
            edges,
            branch: vec![first.start, first.end],
        }
    }
}

impl Multigraph {
    /// Walks from `from` along `via` through degree-2 vertices until a
    /// vertex of another degree is met or the walk closes up at `from`.
    pub fn walk_chain(&self, from: VertexId, via: EdgeId) -> Result<Chain, GraphError> {
        let start = self.slot(from)?;
        let rec = self.edge(via)?;
        if !rec.ends.contains(&start) {
            return Err(GraphError::DeadEdge(via));
        }
        let mut interior = Vec::new();
        let mut edges = vec![via];
        let mut prev_edge = via;
        let mut cur = rec.other(start);
        while cur != start && self.slot_degree(cur) == 2 {
            let inc = &self.verts[cur as usize].inc;
            let next = if inc[0] == prev_edge { inc[1] } else { inc[0] };
            interior.push(self.id(cur));
            edges.push(next);
            prev_edge = next;
            cur = self.edges[next.0 as usize].other(cur);
        }
        Ok(Chain {
            start: from,
            end: self.id(cur),
            interior,
            edges,
        })
    }

    /// All chains leaving `v`, one per incident edge (loops once).
    pub fn chains_at(&self, v: VertexId) -> Result<Vec<Chain>, GraphError> {
        self.incident(v)?.iter().map(|&e| self.walk_chain(v, e)).collect()
    }

    /// The cycle through a component whose vertices all have degree 2,
    /// starting at its lowest id and heading toward the lower neighbor.
    pub fn bare_cycle_from(&self, v: VertexId) -> Result<CycleCandidate, GraphError> {
        let inc = self.incident(v)?;
        let first = *inc
            .iter()
            .min_by_key(|&&e| (self.opposite(e, v).expect("live edge"), e))
            .ok_or(GraphError::DeadVertex(v))?;
        let chain = self.walk_chain(v, first)?;
        let mut vertices = vec![v];
        vertices.extend(chain.interior);
        Ok(CycleCandidate {
            vertices,
            edges: chain.edges,
            branch: Vec::new(),
        })
    }

    /// Enumerates bare cycles (components with every degree 2), pendant
    /// cycles at a single branch vertex, and cycles formed by two chains
    /// between the same two branch vertices.
    pub fn chain_cycles(&self) -> Vec<CycleCandidate> {
        let mut out = Vec::new();
        for comp in self.components() {
            if comp.iter().all(|&v| self.degree(v).expect("live") == 2) {
                out.push(self.bare_cycle_from(comp[0]).expect("live"));
            }
        }
        for b in self.vertices() {
            if self.degree(b).expect("live") <= 2 {
                continue;
            }
            let mut by_end: BTreeMap<VertexId, Vec<Chain>> = BTreeMap::new();
            for chain in self.chains_at(b).expect("live") {
                if chain.end == b {
                    // each pendant chain is walked from both of its ends
                    if chain.edges.len() == 1 || chain.edges[0] < *chain.edges.last().expect("nonempty") {
                        out.push(CycleCandidate::from_pendant(chain));
                    }
                } else if chain.end > b && self.degree(chain.end).expect("live") > 2 {
                    by_end.entry(chain.end).or_default().push(chain);
                }
            }
            for chains in by_end.values() {
                for i in 0..chains.len() {
                    for j in i + 1..chains.len() {
                        out.push(CycleCandidate::from_pair(&chains[i], &chains[j]));
                    }
                }
            }
        }
        out
    }
}
