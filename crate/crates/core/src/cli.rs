//! Command-line front end behind the `hyperell` binary.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::chipfiring::{constrained_suitable_exists, dgon_at_most_2, DEFAULT_ORACLE_BOUND};
use crate::dot::to_dot;
use crate::engine::{run, Flavor, Verdict};
use crate::hgr::{parse_hgr, print_hgr};
use crate::multigraph::Multigraph;
use crate::testkit::{gen_multigraph, gen_series_parallel, gen_tree, sdgon_leq2_bounded};

/// Largest graph the plain divisorial-gonality oracle accepts.
pub const DGON_ORACLE_MAX_VERTICES: usize = 40;

#[derive(Debug, Parser)]
#[command(
    name = "hyperell",
    version,
    about = "Decide whether a multigraph has gonality at most two"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the reduction engines on an hgr file (`-` reads stdin).
    Check {
        #[arg(long, value_enum, default_value_t = CheckMode::All)]
        mode: CheckMode,
        /// Print every rule application.
        #[arg(long)]
        trace: bool,
        /// Write a DOT snapshot of the graph before and after every step.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        file: PathBuf,
    },
    /// Run a brute-force oracle on a small hgr file.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        /// Subdivisions per edge for `sdgon-bounded`.
        #[arg(long, default_value_t = 2)]
        max_subdiv: usize,
        file: PathBuf,
    },
    /// Print a generated graph in hgr form.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        nodes: usize,
        /// Edge count for `random`; defaults to one and a half per vertex.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 0.2)]
        p_parallel: f64,
        #[arg(long, default_value_t = 0.05)]
        p_loop: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Dgon,
    Sgon,
    Sdgon,
    All,
}

impl CheckMode {
    fn flavors(self) -> Vec<Flavor> {
        match self {
            CheckMode::Dgon => vec![Flavor::Dgon],
            CheckMode::Sgon => vec![Flavor::Sgon],
            CheckMode::Sdgon => vec![Flavor::Sdgon],
            CheckMode::All => Flavor::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    Dgon,
    Constrained,
    SdgonBounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Random,
    Sp,
    Tree,
}

/// Exit status: all requested answers YES.
pub const EXIT_YES: i32 = 0;
/// Exit status: some requested answer NO.
pub const EXIT_NO: i32 = 1;
/// Exit status: usage, parse, size or I/O error.
pub const EXIT_ERROR: i32 = 2;

/// Runs the command line `args` (program name first) and returns the
/// exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Check {
            mode,
            trace,
            dot,
            file,
        } => {
            let g = load(&file, err)?;
            check(&g, mode, trace, dot.as_deref(), out)
        }
        Command::Oracle {
            mode,
            max_subdiv,
            file,
        } => {
            let g = load(&file, err)?;
            let answer = match mode {
                OracleMode::Dgon => {
                    if g.vertex_count() > DGON_ORACLE_MAX_VERTICES {
                        return Err(format!(
                            "dgon oracle handles at most {DGON_ORACLE_MAX_VERTICES} vertices, got {}",
                            g.vertex_count()
                        ));
                    }
                    yes_no(dgon_at_most_2(&g))
                }
                OracleMode::Constrained => {
                    let ok =
                        constrained_suitable_exists(&g, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
                    yes_no(ok)
                }
                OracleMode::SdgonBounded => sdgon_leq2_bounded(&g, max_subdiv)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            };
            writeln!(out, "{answer}").map_err(|e| e.to_string())?;
            Ok(EXIT_YES)
        }
        Command::Gen {
            kind,
            seed,
            nodes,
            edges,
            p_parallel,
            p_loop,
        } => {
            let g = match kind {
                GenKind::Random => {
                    let m = edges.unwrap_or(nodes + nodes / 2);
                    gen_multigraph(seed, nodes, m, p_parallel, p_loop).map_err(|e| e.to_string())?
                }
                GenKind::Tree => gen_tree(seed, nodes).map_err(|e| e.to_string())?,
                GenKind::Sp => {
                    if nodes < 2 {
                        return Err("series-parallel graphs need at least 2 nodes".into());
                    }
                    gen_series_parallel(seed, nodes)
                }
            };
            out.write_all(print_hgr(&g).as_bytes())
                .map_err(|e| e.to_string())?;
            Ok(EXIT_YES)
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "YES" } else { "NO" }.to_string()
}

fn load(file: &Path, err: &mut dyn Write) -> Result<Multigraph, String> {
    let text = if file == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?
    };
    let parsed = parse_hgr(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(parsed.graph)
}

fn check(
    g: &Multigraph,
    mode: CheckMode,
    trace: bool,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let flavors = mode.flavors();
    let verdicts: Vec<Verdict> = if flavors.len() == 1 {
        vec![run(g, flavors[0])]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = flavors.iter().map(|&f| s.spawn(move || run(g, f))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("engine thread"))
                .collect()
        })
    };

    let io = |e: std::io::Error| e.to_string();
    for v in &verdicts {
        writeln!(out, "{v}").map_err(io)?;
        if trace {
            for step in &v.trace {
                writeln!(out, "{step}").map_err(io)?;
            }
        }
        if let Some(dir) = dot {
            let dir = if flavors.len() > 1 {
                dir.join(v.flavor.name())
            } else {
                dir.to_path_buf()
            };
            write_snapshots(g, v, &dir)?;
        }
    }
    Ok(if verdicts.iter().all(Verdict::is_yes) {
        EXIT_YES
    } else {
        EXIT_NO
    })
}

fn write_snapshots(g: &Multigraph, v: &Verdict, dir: &Path) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut cur = g.clone();
    let write = |i: usize, h: &Multigraph| {
        let name = format!("step_{i}");
        let path = dir.join(format!("{name}.dot"));
        std::fs::write(&path, to_dot(h, &name)).map_err(|e| format!("{}: {e}", path.display()))
    };
    write(0, &cur)?;
    for (i, step) in v.trace.iter().enumerate() {
        step.apply_to(&mut cur).map_err(|e| e.to_string())?;
        write(i + 1, &cur)?;
    }
    Ok(())
}
