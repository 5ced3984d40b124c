//! Seeded generators and how the three engines answer on their output.

use hyperelliptic::engine::{run, Flavor};
use hyperelliptic::multigraph::Multigraph;
use hyperelliptic::testkit::{gen_multigraph, gen_series_parallel, gen_tree};

fn tally(name: &str, graphs: &[Multigraph]) {
    let yes = Flavor::ALL.map(|f| graphs.iter().filter(|g| run(g, f).is_yes()).count());
    println!(
        "{name:16} {} graphs: dgon {} sgon {} sdgon {} YES",
        graphs.len(),
        yes[0],
        yes[1],
        yes[2]
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trees: Vec<_> = (0..50).map(|s| gen_tree(s, 30)).collect::<Result<_, _>>()?;
    let sparse: Vec<_> = (0..200)
        .map(|s| gen_multigraph(s, 8, 9, 0.3, 0.1))
        .collect::<Result<_, _>>()?;
    let dense: Vec<_> = (0..200)
        .map(|s| gen_multigraph(s, 8, 14, 0.3, 0.1))
        .collect::<Result<_, _>>()?;
    let sp: Vec<_> = (0..50).map(|s| gen_series_parallel(s, 40)).collect();
    tally("trees", &trees);
    tally("random n=8 m=9", &sparse);
    tally("random n=8 m=14", &dense);
    tally("series-parallel", &sp);

    let big = gen_series_parallel(7, 100_000);
    let t = std::time::Instant::now();
    let v = run(&big, Flavor::Sgon);
    println!(
        "series-parallel n=100000 m={}: {v} in {:?}",
        big.edge_count(),
        t.elapsed()
    );
    Ok(())
}
