//! Cross-checks of the library oracles against slow, independent
//! reimplementations: exact linear algebra for divisor equivalence and
//! elimination orderings for treewidth.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperelliptic::chipfiring::{
    dgon_at_most_2, equivalent, fire_set, rank_at_least_one, ChipGraph, Divisor,
};
use hyperelliptic::multigraph::Multigraph;
use hyperelliptic::testkit::gen_multigraph;
use hyperelliptic::treewidth::tw_at_most_2;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy)]
struct Frac(i128, i128);

impl Frac {
    fn new(n: i128, d: i128) -> Frac {
        let g = gcd(n, d).max(1) * d.signum();
        Frac(n / g, d / g)
    }
    fn sub(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1, self.1 * o.0)
    }
}

/// `D − E` lies in the integer image of the Laplacian of a connected
/// graph exactly when the reduced system `L₀ x = (D − E)` restricted to
/// vertices `1..n` has an integral solution.
fn equivalent_by_solving(g: &ChipGraph, d: &Divisor, e: &Divisor) -> bool {
    let n = g.len();
    if d.degree() != e.degree() {
        return false;
    }
    if n == 1 {
        return true;
    }
    let k = n - 1;
    let mut a = vec![vec![Frac(0, 1); k + 1]; k];
    for i in 1..n {
        a[i - 1][i - 1] = Frac(g.degree(i) as i128, 1);
        for &(j, c) in g.neighbors(i) {
            if j != 0 {
                a[i - 1][j - 1] = Frac(-(c as i128), 1);
            }
        }
        a[i - 1][k] = Frac((d[i] - e[i]) as i128, 1);
    }
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| a[r][col].0 != 0)
            .expect("reduced Laplacian is invertible");
        a.swap(col, pivot);
        for r in 0..k {
            if r != col && a[r][col].0 != 0 {
                let factor = a[r][col].div(a[col][col]);
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row).skip(col) {
                    *x = x.sub(factor.mul(p));
                }
            }
        }
    }
    (0..k).all(|r| a[r][k].div(a[r][r]).1 == 1)
}

fn effective_divisors(n: usize, deg: usize) -> Vec<Divisor> {
    fn rec(n: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Divisor>) {
        if cur.len() == n - 1 {
            cur.push(left as i64);
            out.push(Divisor(cur.clone()));
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x as i64);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

fn rank_at_least_one_by_solving(g: &ChipGraph, d: &Divisor) -> bool {
    let deg = d.degree() as usize;
    let targets = effective_divisors(g.len(), deg - 1);
    (0..g.len()).all(|v| {
        let mut dv = d.clone();
        dv[v] -= 1;
        targets.iter().any(|t| equivalent_by_solving(g, &dv, t))
    })
}

fn small_graphs(seed: u64, count: usize, max_n: usize) -> Vec<Multigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let m = rng.gen_range(n - 1..=n + 3);
            gen_multigraph(seed * 1000 + i as u64, n, m, 0.3, 0.1).unwrap()
        })
        .collect()
}

#[test]
fn equivalence_matches_exact_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut hits = 0;
    for g in small_graphs(1, 120, 6) {
        let cg = ChipGraph::new(&g);
        for k in 0..10 {
            let d = Divisor((0..cg.len()).map(|_| rng.gen_range(-2..=3)).collect());
            let e = if k % 2 == 0 {
                let set: Vec<usize> = (0..cg.len()).filter(|_| rng.gen_bool(0.5)).collect();
                let mut e = if set.is_empty() {
                    d.clone()
                } else {
                    fire_set(&cg, &d, &set).unwrap()
                };
                if k % 4 == 0 {
                    e[0] += 1;
                    e[cg.len() - 1] -= 1;
                }
                e
            } else {
                let mut e = Divisor((0..cg.len()).map(|_| rng.gen_range(-2..=3)).collect());
                e[0] += d.degree() - e.degree();
                e
            };
            let expected = equivalent_by_solving(&cg, &d, &e);
            hits += expected as usize;
            assert_eq!(equivalent(&cg, &d, &e).unwrap(), expected, "{d:?} vs {e:?}");
        }
    }
    assert!(hits > 300 && hits < 1200, "{hits} equivalent pairs");
}

#[test]
fn rank_matches_exhaustive_search() {
    for g in small_graphs(2, 60, 5) {
        let cg = ChipGraph::new(&g);
        for deg in 1..=3 {
            for d in effective_divisors(cg.len(), deg) {
                assert_eq!(
                    rank_at_least_one(&cg, &d).unwrap(),
                    rank_at_least_one_by_solving(&cg, &d),
                    "{d:?}"
                );
            }
        }
    }
}

#[test]
fn dgon_oracle_matches_exhaustive_search() {
    for g in small_graphs(3, 150, 5) {
        let cg = ChipGraph::new(&g);
        let slow = effective_divisors(cg.len(), 2)
            .iter()
            .any(|d| rank_at_least_one_by_solving(&cg, d));
        assert_eq!(dgon_at_most_2(&g), slow);
    }
}

/// Treewidth at most 2 by trying every elimination order of the
/// underlying simple graph.
fn tw_at_most_2_by_elimination(g: &Multigraph) -> bool {
    let ids: Vec<_> = g.vertices().collect();
    let n = ids.len();
    let mut adj = vec![HashSet::new(); n];
    for (_, a, b) in g.edges() {
        let (i, j) = (ids.binary_search(&a).unwrap(), ids.binary_search(&b).unwrap());
        if i != j {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    fn search(adj: &[HashSet<usize>], alive: &mut Vec<bool>) -> bool {
        let Some(_) = alive.iter().position(|&x| x) else {
            return true;
        };
        for v in 0..adj.len() {
            if !alive[v] {
                continue;
            }
            let nb: Vec<usize> = adj[v].iter().copied().filter(|&u| alive[u]).collect();
            if nb.len() > 2 {
                continue;
            }
            let mut next = adj.to_vec();
            if let [a, b] = nb[..] {
                next[a].insert(b);
                next[b].insert(a);
            }
            alive[v] = false;
            let ok = search(&next, alive);
            alive[v] = true;
            if ok {
                return true;
            }
        }
        false
    }
    search(&adj, &mut vec![true; n])
}

#[test]
fn treewidth_matches_elimination_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut rejected = 0;
    for i in 0..400u64 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(n - 1..=2 * n + 2);
        let g = gen_multigraph(i, n, m, 0.2, 0.1).unwrap();
        let expected = tw_at_most_2_by_elimination(&g);
        rejected += !expected as usize;
        assert_eq!(tw_at_most_2(&g), expected, "seed {i}");
    }
    assert!(
        rejected > 20,
        "corpus should contain graphs of treewidth 3 or more"
    );
}
