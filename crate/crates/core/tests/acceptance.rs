//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperelliptic::chipfiring::{
    apply_laplacian, constrained_suitable_exists, cycle_pair_equivalent, dgon_at_most_2, equivalent,
    level_sets, replay, ChipGraph, Divisor, FiringVector, DEFAULT_ORACLE_BOUND,
};
use hyperelliptic::engine::{
    rule_application_budget, run, run_with, Engine, Flavor, Options, Reason, ReductionStep,
};
use hyperelliptic::hgr::{parse_hgr, print_hgr};
use hyperelliptic::multigraph::Multigraph;
use hyperelliptic::testkit::{gen_multigraph, gen_series_parallel, sdgon_leq2_bounded, OracleAnswer};
use hyperelliptic::treewidth::tw_at_most_2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> Multigraph {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_hgr(&text).expect("fixture parses").graph
}

fn complete_bipartite(p: u32) -> Multigraph {
    let edges: Vec<_> = (0..p).flat_map(|a| (p..2 * p).map(move |b| (a, b))).collect();
    Multigraph::from_edges(2 * p as usize, &edges)
}

/// Seeded random multigraphs with `n ≤ max_n` vertices and at most
/// `max_m` edges, cycling through loop and parallel-edge densities.
fn corpus(seed0: u64, count: usize, max_n: usize, max_m: usize) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed0);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let m = rng.gen_range(n - 1..=max_m.max(n - 1));
            let p_loop = [0.0, 0.1, 0.3][i % 3];
            let p_parallel = [0.0, 0.3, 0.6][(i / 3) % 3];
            gen_multigraph(seed0 ^ (i as u64) << 8, n, m, p_parallel, p_loop).expect("valid sizes")
        })
        .collect()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_vectors() -> Outcome {
    let cases = [
        ("double_banana_triangle.hgr", [false, true, true]),
        ("looped_triple_banana.hgr", [true, false, true]),
    ];
    for (name, expected) in cases {
        let g = fixture(name);
        for (f, want) in Flavor::ALL.into_iter().zip(expected) {
            let v = run(&g, f);
            check(v.is_yes() == want, || format!("{name}: {v}"))?;
        }
    }
    Ok("2 graphs x 3 flavors exact".into())
}

fn complete_bipartite_rejection() -> Outcome {
    for p in [3, 4] {
        let g = complete_bipartite(p);
        for f in Flavor::ALL {
            let v = run(&g, f);
            check(!v.is_yes() && v.reason == Reason::TreewidthReject, || {
                format!("K{p},{p}: {v}")
            })?;
        }
    }
    Ok("K3,3 and K4,4 rejected by treewidth in every flavor".into())
}

fn dgon_oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let graphs = corpus(3, 1200, 9, 14);
    let connected: Vec<_> = graphs.iter().filter(|g| g.is_connected()).collect();
    check(connected.len() >= 1000, || {
        format!("only {} graphs", connected.len())
    })?;
    let mut yes = 0;
    for (i, g) in connected.iter().enumerate() {
        let engine = run(g, Flavor::Dgon).is_yes();
        let oracle = dgon_at_most_2(g);
        check(engine == oracle, || {
            format!("graph {i}: engine {engine}, oracle {oracle}\n{}", print_hgr(g))
        })?;
        yes += engine as usize;
    }
    let took = t.elapsed();
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "{} graphs agree ({yes} YES) in {took:.1?}",
        connected.len()
    ))
}

fn metamorphic_safeness() -> Outcome {
    let graphs = corpus(4, 300, 10, 14);
    let mut steps = 0;
    for (i, g) in graphs.iter().enumerate() {
        let mut engine = Engine::new(g.clone(), Flavor::Dgon).with_eager_rejections(false);
        let holds =
            |h: &Multigraph| h.is_empty() || constrained_suitable_exists(h, DEFAULT_ORACLE_BOUND).unwrap();
        let mut before = holds(engine.graph());
        let mut next = engine.preprocess().into_iter();
        let mut cur = g.clone();
        while let Some(s) = next.next().or_else(|| engine.step()) {
            s.apply_to(&mut cur).unwrap();
            let after = holds(&cur);
            check(after == before, || {
                format!("graph {i}: {s} changed {before} to {after}\n{}", print_hgr(g))
            })?;
            before = after;
            steps += 1;
        }
    }
    Ok(format!(
        "{} graphs, {steps} single rule applications preserve the oracle",
        graphs.len()
    ))
}

fn order_independence() -> Outcome {
    let graphs = corpus(5, 200, 8, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for f in Flavor::ALL {
        for (i, g) in graphs.iter().enumerate() {
            let base = run(g, f);
            for _ in 0..50 {
                let mut order = f.classes().to_vec();
                order.shuffle(&mut rng);
                let opts = Options {
                    priority: order.clone(),
                    ..Options::default()
                };
                let v = run_with(g, f, &opts);
                check(v.answer == base.answer, || {
                    format!("{f} graph {i} order {order:?}: {v} vs {base}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} graphs x 3 flavors x 50 priority orders",
        graphs.len()
    ))
}

fn potential(g: &Multigraph) -> usize {
    g.vertex_count() + 2 * g.edge_count() + g.constraint_count()
}

fn budget_and_termination() -> Outcome {
    let mut graphs = corpus(6, 600, 10, 16);
    graphs.extend((0..20).map(|s| gen_series_parallel(s, 200)));
    let mut runs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for f in Flavor::ALL {
            for eager in [true, false] {
                let mut engine = Engine::new(g.clone(), f).with_eager_rejections(eager);
                let prep: Vec<ReductionStep> = engine.preprocess();
                let mut h = g.clone();
                for s in &prep {
                    s.apply_to(&mut h).unwrap();
                }
                let n = h.vertex_count();
                let mut steps = 0;
                let mut pot = potential(&h);
                while let Some(s) = engine.step() {
                    steps += 1;
                    let now = potential(engine.graph());
                    if f != Flavor::Dgon {
                        check(now < pot, || {
                            format!("{f} graph {i}: {s} left potential at {now}")
                        })?;
                    }
                    pot = now;
                }
                check(steps <= rule_application_budget(g.vertex_count(), f), || {
                    format!("{f} graph {i}: {steps} steps")
                })?;
                if f == Flavor::Dgon {
                    check(steps <= 3 * n, || {
                        format!("dgon graph {i}: {steps} steps for n={n}")
                    })?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} runs within budget, potential strictly decreasing"
    ))
}

fn flavor_dominance() -> Outcome {
    let mut graphs = corpus(7, 1500, 10, 16);
    graphs.extend((0..100).map(|s| gen_series_parallel(s, 30)));
    for (i, g) in graphs.iter().enumerate() {
        let [d, s, sd] = Flavor::ALL.map(|f| run(g, f).is_yes());
        check(!d || sd, || format!("graph {i}: dgon YES, sdgon NO"))?;
        check(!s || sd, || format!("graph {i}: sgon YES, sdgon NO"))?;
        check(!(g.is_connected() && g.betti() <= 1) || s, || {
            format!("graph {i}: betti ≤ 1 but sgon NO")
        })?;
        check(!(d || s || sd) || tw_at_most_2(g), || {
            format!("graph {i}: YES with treewidth above 2")
        })?;
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn cycle_graph(len: usize) -> ChipGraph {
    let edges: Vec<_> = (0..len as u32).map(|i| (i, (i + 1) % len as u32)).collect();
    ChipGraph::new(&Multigraph::from_edges(len, &edges))
}

fn cycle_equivalence() -> Outcome {
    let mut checks = 0;
    for len in 1..=8 {
        let g = cycle_graph(len);
        for a in 0..len {
            for b in a..len {
                for c in 0..len {
                    for d in c..len {
                        let generic = equivalent(
                            &g,
                            &Divisor::from_chips(len, &[a, b]),
                            &Divisor::from_chips(len, &[c, d]),
                        )
                        .unwrap();
                        let fast = cycle_pair_equivalent(len, (a, b), (c, d));
                        check(generic == fast, || {
                            format!("L={len} ({a},{b}) ({c},{d}): {generic} vs {fast}")
                        })?;
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checks} position pairs, L ≤ 8"))
}

fn level_set_replay() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut instances = 0;
    let mut seed = 0;
    while instances < 600 {
        seed += 1;
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(n - 1..=2 * n);
        let g = ChipGraph::new(&gen_multigraph(seed, n, m, 0.3, 0.0).unwrap());
        let f = FiringVector((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        let lf = apply_laplacian(&g, &f).unwrap();
        // D and D − Lf are both effective once D covers the positive part of Lf.
        let d = Divisor(lf.0.iter().map(|&x| x.max(0) + rng.gen_range(0..=2)).collect());
        let d2 = d.sub(&lf);
        if !d2.is_effective() {
            return Err(format!("instance {seed}: endpoint not effective"));
        }
        let steps = replay(&g, &d, &level_sets(&f)).unwrap();
        check(steps.last() == Some(&d2), || {
            format!("instance {seed}: replay does not end at D − Lf")
        })?;
        for (k, di) in steps.iter().enumerate() {
            for v in 0..n {
                check(di[v] >= d[v].min(d2[v]), || {
                    format!("instance {seed}: D_{k}({v}) = {} too small", di[v])
                })?;
            }
        }
        instances += 1;
    }
    Ok(format!("{instances} instances"))
}

fn bounded_refinement_soundness() -> Outcome {
    let graphs = corpus(10, 600, 5, 7);
    let mut certified = 0;
    for (i, g) in graphs.iter().enumerate() {
        if sdgon_leq2_bounded(g, 2).unwrap() == OracleAnswer::Yes {
            certified += 1;
            let v = run(g, Flavor::Sdgon);
            check(v.is_yes(), || {
                format!("graph {i}: oracle YES, engine {v}\n{}", print_hgr(g))
            })?;
        }
    }
    Ok(format!(
        "{} graphs, {certified} certified YES, engine agrees",
        graphs.len()
    ))
}

#[cfg(unix)]
fn children_peak_rss_bytes() -> u64 {
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    // SAFETY: `usage` is a valid, writable rusage struct.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_CHILDREN, &mut usage) };
    assert_eq!(rc, 0, "getrusage failed");
    let kib = usage.ru_maxrss as u64;
    if cfg!(target_os = "macos") {
        kib
    } else {
        kib * 1024
    }
}

fn scale_smoke() -> Outcome {
    let g = gen_series_parallel(2024, 100_000);
    check(g.edge_count() <= 4 * g.vertex_count(), || {
        format!("m = {}", g.edge_count())
    })?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("sp100k.hgr");
    std::fs::write(&path, print_hgr(&g)).map_err(|e| e.to_string())?;

    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hyperell"))
        .args(["check", "--mode", "all"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let code = out.status.code();
    check(matches!(code, Some(0 | 1)), || {
        format!("exit {code:?}: {}", String::from_utf8_lossy(&out.stderr))
    })?;
    let lines = String::from_utf8_lossy(&out.stdout).lines().count();
    check(lines == 3, || format!("expected 3 verdict lines, got {lines}"))?;
    check(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    #[cfg(unix)]
    {
        let peak = children_peak_rss_bytes();
        check(peak < 1 << 30, || format!("peak memory {} MiB", peak >> 20))?;
        Ok(format!(
            "n=100000 m={} in {took:.1?}, peak {} MiB",
            g.edge_count(),
            peak >> 20
        ))
    }
    #[cfg(not(unix))]
    Ok(format!(
        "n=100000 m={} in {took:.1?}, memory not measured",
        g.edge_count()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden vectors", golden_vectors),
        ("complete bipartite rejection", complete_bipartite_rejection),
        ("dgon oracle equivalence", dgon_oracle_equivalence),
        ("metamorphic safeness", metamorphic_safeness),
        ("order independence", order_independence),
        ("budget and termination", budget_and_termination),
        ("flavor dominance", flavor_dominance),
        ("cycle equivalence", cycle_equivalence),
        ("level-set replay", level_set_replay),
        ("bounded refinement soundness", bounded_refinement_soundness),
        ("scale smoke test", scale_smoke),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", k + 1, t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
