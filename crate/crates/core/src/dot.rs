//! Graphviz export. Constraint pairs are drawn as dashed edges.

use std::fmt::Write;

use crate::multigraph::Multigraph;

pub fn to_dot(g: &Multigraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (_, a, b) in g.edges() {
        writeln!(out, "  {a} -- {b};").unwrap();
    }
    for (a, b) in g.constraints() {
        writeln!(out, "  {a} -- {b} [style=dashed];").unwrap();
    }
    out.push_str("}\n");
    out
}
