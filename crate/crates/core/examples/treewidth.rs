//! The treewidth filter every engine applies before reducing.

use hyperelliptic::engine::{run, Flavor};
use hyperelliptic::multigraph::{Multigraph, VertexId};
use hyperelliptic::treewidth::{tw_at_most_2, tw_at_most_2_with_constraints};

fn complete_bipartite(p: u32) -> Multigraph {
    let edges: Vec<_> = (0..p).flat_map(|a| (p..2 * p).map(move |b| (a, b))).collect();
    Multigraph::from_edges(2 * p as usize, &edges)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let fat_cycle = Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (2, 2)]);
    for (name, g) in [
        ("K4", k4),
        ("K3,3", complete_bipartite(3)),
        ("fat cycle", fat_cycle),
    ] {
        println!(
            "{name:10} tw<=2: {:5} sgon: {}",
            tw_at_most_2(&g),
            run(&g, Flavor::Sgon)
        );
    }

    // Constraint pairs can raise the treewidth when counted as edges.
    let mut c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    c4.add_constraint(VertexId(0), VertexId(2))?;
    c4.add_constraint(VertexId(1), VertexId(3))?;
    println!(
        "C4 + both diagonals as constraints: black {} / with constraints {}",
        tw_at_most_2(&c4),
        tw_at_most_2_with_constraints(&c4)
    );
    Ok(())
}
