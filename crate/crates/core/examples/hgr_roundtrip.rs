//! Parse, edit, and print the hgr text format.

use hyperelliptic::hgr::{parse_hgr, print_hgr};
use hyperelliptic::multigraph::VertexId;

const TEXT: &str = "\
# a 4-cycle with a doubled edge and a loop
hgr 4 6
e 0 1
e 1 2
e 2 3
e 3 0
e 0 1
e 2 2
c 1 3
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = parse_hgr(TEXT)?.graph;
    println!(
        "parsed n={} m={} loops={} constraints={:?}",
        g.vertex_count(),
        g.edge_count(),
        g.loop_total(),
        g.constraints()
    );

    let e = g.edges_between(VertexId(2), VertexId(3))?[0];
    let merged = g.contract_edge(e)?;
    println!("contracted 2-3 into {merged}; ids are relabeled densely on output:");
    print!("{}", print_hgr(&g));

    match parse_hgr("hgr 2 1\ne 0 7\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad input: {e}"),
    }
    Ok(())
}
