//! The `hgr` text format.
//!
//! ```text
//! # comment
//! hgr <n> <m>
//! e <u> <v>      exactly m edge lines, 0-based ids, u = v for a loop
//! c <u> <v>      optional constraint lines
//! ```

use std::fmt::Write;

use thiserror::Error;

use crate::multigraph::{Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgrError {
    #[error("missing `hgr <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: cannot parse {text:?}")]
    BadLine { line: usize, text: String },
    #[error("line {line}: vertex {id} out of range for {n} vertices")]
    OutOfRange { line: usize, id: u64, n: usize },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Multigraph,
    pub warnings: Vec<String>,
}

pub fn parse_hgr(text: &str) -> Result<Parsed, HgrError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(HgrError::MissingHeader)?;
    let bad_header = || HgrError::BadHeader {
        line: hline,
        text: header.to_string(),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields[..] {
        ["hgr", n, m] => (
            n.parse::<usize>().map_err(|_| bad_header())?,
            m.parse::<usize>().map_err(|_| bad_header())?,
        ),
        _ => return Err(bad_header()),
    };

    let mut g = Multigraph::new();
    for _ in 0..n {
        g.add_vertex();
    }
    let mut warnings = Vec::new();
    let mut found = 0;
    for (line, text) in lines {
        let bad = || HgrError::BadLine {
            line,
            text: text.to_string(),
        };
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [kind, u, v] = fields[..] else {
            return Err(bad());
        };
        let id = |s: &str| -> Result<VertexId, HgrError> {
            let x: u64 = s.parse().map_err(|_| bad())?;
            if x >= n as u64 {
                return Err(HgrError::OutOfRange { line, id: x, n });
            }
            Ok(VertexId(x as u32))
        };
        let (u, v) = (id(u)?, id(v)?);
        match kind {
            "e" => {
                g.add_edge(u, v).expect("ids checked");
                found += 1;
            }
            "c" => {
                if !g.add_constraint(u, v).expect("ids checked") {
                    warnings.push(format!("line {line}: duplicate constraint ({u},{v}) ignored"));
                }
            }
            _ => return Err(bad()),
        }
    }
    if found != m {
        return Err(HgrError::EdgeCount { expected: m, found });
    }
    Ok(Parsed { graph: g, warnings })
}

/// Writes `g` in hgr form, relabeling live vertices to `0..n` in
/// ascending id order.
pub fn print_hgr(g: &Multigraph) -> String {
    let ids: Vec<VertexId> = g.vertices().collect();
    let label = |v: VertexId| ids.binary_search(&v).expect("live vertex");
    let mut out = String::new();
    writeln!(out, "hgr {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (_, a, b) in g.edges() {
        writeln!(out, "e {} {}", label(a), label(b)).unwrap();
    }
    for (a, b) in g.constraints() {
        writeln!(out, "c {} {}", label(a), label(b)).unwrap();
    }
    out
}
