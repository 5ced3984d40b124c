//! Brute-force oracles next to the reduction engines on small graphs.

use hyperelliptic::chipfiring::{constrained_suitable_exists, dgon_at_most_2, DEFAULT_ORACLE_BOUND};
use hyperelliptic::engine::{run, Flavor};
use hyperelliptic::multigraph::{Multigraph, VertexId};
use hyperelliptic::testkit::sdgon_leq2_bounded;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let theta = Multigraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
    let bananas = Multigraph::from_edges(5, &[(0, 1), (0, 1), (1, 2), (2, 4), (4, 1), (2, 3), (2, 3)]);
    for (name, g) in [("K4", &k4), ("theta", &theta), ("bananas", &bananas)] {
        println!(
            "{name:8} dgon oracle={:5} engine={:5} | sdgon bounded={} engine={}",
            dgon_at_most_2(g),
            run(g, Flavor::Dgon).is_yes(),
            sdgon_leq2_bounded(g, 1).map_or_else(|e| e.to_string(), |a| a.to_string()),
            run(g, Flavor::Sdgon).is_yes(),
        );
    }

    // A constraint (u, v) asks for a divisor class containing 1_u + 1_v;
    // no class can serve two constraints at one vertex.
    let mut path = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
    path.add_constraint(VertexId(0), VertexId(2))?;
    println!(
        "path 0-1-2 with (0,2): {}",
        constrained_suitable_exists(&path, DEFAULT_ORACLE_BOUND)?
    );
    path.add_constraint(VertexId(0), VertexId(0))?;
    println!(
        "  and (0,0) too: {}",
        constrained_suitable_exists(&path, DEFAULT_ORACLE_BOUND)?
    );
    Ok(())
}
