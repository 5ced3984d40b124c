//! Recognition of hyperelliptic multigraphs: graphs whose divisorial,
//! stable, or stable divisorial gonality is at most two, decided by
//! exhaustive application of reduction rules.
//!
//! ```
//! use hyperelliptic::engine::{run, Flavor};
//! use hyperelliptic::multigraph::Multigraph;
//!
//! let c5 = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
//! assert!(run(&c5, Flavor::Dgon).is_yes());
//! ```

pub mod chipfiring;
pub mod cli;
pub mod dot;
pub mod engine;
pub mod hgr;
pub mod multigraph;
pub mod rules;
pub mod testkit;
pub mod treewidth;
