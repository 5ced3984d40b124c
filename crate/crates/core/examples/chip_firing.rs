//! Divisors on a graph: firing sets, reduction, equivalence, rank, and
//! replaying a firing vector level set by level set.

use hyperelliptic::chipfiring::{
    apply_laplacian, equivalent, fire_set, is_valid_firing, level_sets, rank_at_least_one, reduce_divisor,
    replay, ChipGraph, Divisor, FiringVector,
};
use hyperelliptic::multigraph::Multigraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Three paths of length two between vertices 0 and 1.
    let g = ChipGraph::new(&Multigraph::from_edges(
        5,
        &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)],
    ));
    let d = Divisor(vec![3, 0, 0, 0, 0]);
    println!("D = {:?}", d.0);
    println!("firing {{0}} legal: {}", is_valid_firing(&g, &d, &[0])?);
    let fired = fire_set(&g, &d, &[0])?;
    println!("after firing {{0}}: {:?}", fired.0);
    println!("equivalent to D: {}", equivalent(&g, &d, &fired)?);
    for q in 0..g.len() {
        println!("{q}-reduced form: {:?}", reduce_divisor(&g, &d, q)?.0);
    }

    for chips in [[0, 1], [2, 2], [2, 3]] {
        let two = Divisor::from_chips(g.len(), &chips);
        println!(
            "rank(1_{} + 1_{}) >= 1: {}",
            chips[0],
            chips[1],
            rank_at_least_one(&g, &two)?
        );
    }

    // Moving from D to D − L·f one level set at a time never takes a
    // vertex below both endpoints.
    let d = Divisor(vec![5, 2, 0, 0, 0]);
    let f = FiringVector(vec![2, 1, 1, 0, 0]);
    let end = d.sub(&apply_laplacian(&g, &f)?);
    let sets = level_sets(&f);
    println!("level sets of f = {:?}: {:?}", f.0, sets.sets);
    for (i, di) in replay(&g, &d, &sets)?.iter().enumerate() {
        println!("  D_{i} = {:?}", di.0);
    }
    println!("  D - Lf = {:?}", end.0);
    Ok(())
}
