//! Decide all three gonality questions for an hgr file.
//!
//!     cargo run --example check_graph -- path/to/graph.hgr

use hyperelliptic::engine::{run, Flavor};
use hyperelliptic::hgr::parse_hgr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/tests/data/double_banana_triangle.hgr"
        )
        .into()
    });
    let parsed = parse_hgr(&std::fs::read_to_string(&path)?)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let g = parsed.graph;
    println!(
        "{path}: n={} m={} betti={}",
        g.vertex_count(),
        g.edge_count(),
        g.betti()
    );
    for flavor in Flavor::ALL {
        println!("  {}", run(&g, flavor));
    }
    Ok(())
}
