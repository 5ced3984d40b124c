//! Write a DOT snapshot of the graph after every rule application.
//!
//!     cargo run --example dot_trace -- out_dir
//!     dot -Tsvg out_dir/step_3.dot > step_3.svg

use hyperelliptic::dot::to_dot;
use hyperelliptic::engine::{run, Flavor};
use hyperelliptic::multigraph::Multigraph;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "dot_trace".into());
    std::fs::create_dir_all(&dir)?;
    // Two triangles sharing vertex 0, one of them with a doubled edge.
    let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (3, 4)]);
    let verdict = run(&g, Flavor::Sgon);
    println!("{verdict}");

    let mut cur = g.clone();
    std::fs::write(format!("{dir}/step_0.dot"), to_dot(&cur, "step_0"))?;
    for (i, step) in verdict.trace.iter().enumerate() {
        step.apply_to(&mut cur).expect("trace replays on its input");
        let name = format!("step_{}", i + 1);
        std::fs::write(format!("{dir}/{name}.dot"), to_dot(&cur, &name))?;
        println!("{name}: {step}");
    }
    println!("wrote {} files to {dir}/", verdict.trace.len() + 1);
    Ok(())
}
