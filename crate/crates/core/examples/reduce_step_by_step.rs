//! Drive an engine one rule at a time and watch the graph shrink.

use hyperelliptic::engine::{Engine, Flavor, RuleClass};
use hyperelliptic::multigraph::Multigraph;

fn show(g: &Multigraph) -> String {
    let edges: Vec<String> = g.edges().map(|(_, a, b)| format!("{a}-{b}")).collect();
    let cons: Vec<String> = g.constraints().iter().map(|(a, b)| format!("{a}~{b}")).collect();
    format!("edges [{}] constraints [{}]", edges.join(" "), cons.join(" "))
}

fn main() {
    // A 6-cycle with a pendant triangle at vertex 0 and a leaf at vertex 3.
    let g = Multigraph::from_edges(
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 0),
            (0, 6),
            (6, 7),
            (7, 0),
            (3, 8),
        ],
    );
    for flavor in Flavor::ALL {
        println!("== {flavor}");
        let mut engine = Engine::new(g.clone(), flavor);
        for step in engine.preprocess() {
            println!("  prep {step}");
        }
        while let Some(step) = engine.step() {
            println!("  {step}\n      {}", show(engine.graph()));
        }
        let left = engine.graph();
        println!(
            "  result: {}",
            if left.is_empty() {
                "YES".to_owned()
            } else {
                format!("stuck at {}", show(left))
            }
        );
    }

    // Cycles before leaves: a different order, the same answer.
    let order = [
        RuleClass::Cycle,
        RuleClass::PendantCycle,
        RuleClass::End,
        RuleClass::Leaf,
    ];
    let mut engine = Engine::new(g, Flavor::Dgon).with_priority(&order);
    engine.preprocess();
    let steps: Vec<String> = std::iter::from_fn(|| engine.step())
        .map(|s| s.rule.to_string())
        .collect();
    println!(
        "== dgon, cycles first: {} -> empty={}",
        steps.join(" "),
        engine.graph().is_empty()
    );
}
