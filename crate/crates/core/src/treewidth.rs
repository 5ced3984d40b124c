//! Treewidth-at-most-2 recognition by series-parallel reduction of the
//! underlying simple graph.

use std::collections::{HashMap, HashSet};

use crate::multigraph::{Multigraph, VertexId};

/// Whether the black graph (loops dropped, parallel edges collapsed) has
/// treewidth at most 2.
pub fn tw_at_most_2(g: &Multigraph) -> bool {
    reduces_to_empty(g, false)
}

/// As [`tw_at_most_2`], with every non-loop constraint pair counted as an
/// ordinary edge.
pub fn tw_at_most_2_with_constraints(g: &Multigraph) -> bool {
    reduces_to_empty(g, true)
}

fn reduces_to_empty(g: &Multigraph, with_constraints: bool) -> bool {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); ids.len()];
    let constraint_edges = if with_constraints {
        g.constraints()
    } else {
        Vec::new()
    };
    let pairs = g.edges().map(|(_, a, b)| (a, b)).chain(constraint_edges);
    for (a, b) in pairs {
        if a != b {
            let (i, j) = (index[&a], index[&b]);
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }

    let mut remaining = ids.len();
    let mut alive = vec![true; ids.len()];
    let mut work: Vec<usize> = (0..ids.len()).filter(|&v| adj[v].len() <= 2).collect();
    while let Some(v) = work.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nbrs: Vec<usize> = adj[v].drain().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for &u in &nbrs {
            if adj[u].len() <= 2 {
                work.push(u);
            }
        }
        alive[v] = false;
        remaining -= 1;
    }
    remaining == 0
}
