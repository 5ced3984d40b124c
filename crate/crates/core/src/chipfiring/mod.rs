//! Divisors on multigraphs: Laplacian, set firing, level-set replay and
//! reduced divisors via Dhar's burning algorithm.
//!
//! All computations run on a [`ChipGraph`], a dense read-only snapshot of
//! a [`Multigraph`] whose index order is ascending vertex id. Loops are
//! dropped from the snapshot since they never move chips.

mod oracles;

use std::collections::{HashMap, VecDeque};
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::multigraph::{Multigraph, VertexId};

pub(crate) use oracles::dgon_at_most_2_fast;
pub use oracles::{constrained_suitable_exists, cycle_pair_equivalent, dgon_at_most_2, DEFAULT_ORACLE_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChipError {
    #[error("expected a vector over {expected} vertices, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("firing set is empty")]
    EmptySet,
    #[error("vertex index {0} out of range")]
    OutOfRange(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("divisors have different degrees ({0} vs {1})")]
    DegreeMismatch(i64, i64),
    #[error("graph has {n} vertices, oracle bound is {bound}")]
    TooLarge { n: usize, bound: usize },
}

/// Dense loop-free snapshot of a multigraph.
#[derive(Debug, Clone)]
pub struct ChipGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<(usize, i64)>>,
    deg: Vec<i64>,
}

impl ChipGraph {
    pub fn new(g: &Multigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut mult: Vec<HashMap<usize, i64>> = vec![HashMap::new(); ids.len()];
        for (_, a, b) in g.edges() {
            if a == b {
                continue;
            }
            let (i, j) = (index[&a], index[&b]);
            *mult[i].entry(j).or_default() += 1;
            *mult[j].entry(i).or_default() += 1;
        }
        let adj: Vec<Vec<(usize, i64)>> = mult
            .into_iter()
            .map(|m| {
                let mut row: Vec<_> = m.into_iter().collect();
                row.sort_unstable();
                row
            })
            .collect();
        let deg = adj.iter().map(|row| row.iter().map(|&(_, c)| c).sum()).collect();
        ChipGraph { ids, index, adj, deg }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Neighbors with edge multiplicities.
    pub fn neighbors(&self, i: usize) -> &[(usize, i64)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.deg[i]
    }

    pub fn edge_count(&self) -> i64 {
        self.deg.iter().sum::<i64>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.distances(0).is_none_or(|d| !d.contains(&usize::MAX))
    }

    fn distances(&self, q: usize) -> Option<Vec<usize>> {
        if self.is_empty() {
            return None;
        }
        let mut dist = vec![usize::MAX; self.len()];
        dist[q] = 0;
        let mut queue = VecDeque::from([q]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Some(dist)
    }

    fn check_len(&self, got: usize) -> Result<(), ChipError> {
        if got == self.len() {
            Ok(())
        } else {
            Err(ChipError::SizeMismatch {
                expected: self.len(),
                got,
            })
        }
    }

    fn check_set(&self, set: &[usize]) -> Result<Vec<bool>, ChipError> {
        if set.is_empty() {
            return Err(ChipError::EmptySet);
        }
        let mut mask = vec![false; self.len()];
        for &i in set {
            *mask.get_mut(i).ok_or(ChipError::OutOfRange(i))? = true;
        }
        Ok(mask)
    }

    /// Number of edges from `i` to vertices outside `mask`.
    fn outdeg(&self, i: usize, mask: &[bool]) -> i64 {
        self.adj[i]
            .iter()
            .filter(|&&(j, _)| !mask[j])
            .map(|&(_, c)| c)
            .sum()
    }

    /// Fires the masked set `times` times in place.
    fn fire_mask(&self, d: &mut [i64], mask: &[bool], times: i64) {
        for i in 0..self.len() {
            if !mask[i] {
                continue;
            }
            for &(j, c) in &self.adj[i] {
                if !mask[j] {
                    d[i] -= times * c;
                    d[j] += times * c;
                }
            }
        }
    }
}

/// Integer chip count per vertex, indexed like the [`ChipGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = Divisor::zero(n);
        d.0[i] = 1;
        d
    }

    /// `Σ 1_v` over the listed indices, with repetition.
    pub fn from_chips(n: usize, chips: &[usize]) -> Self {
        let mut d = Divisor::zero(n);
        for &i in chips {
            d.0[i] += 1;
        }
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiringVector(pub Vec<i64>);

/// Nested sets `A_0 ⊆ … ⊆ A_k = V` with `A_i = {v : f(v) ≥ max f − i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSetDecomposition {
    pub sets: Vec<Vec<usize>>,
}

impl LevelSetDecomposition {
    /// Index `k` of the last set.
    pub fn depth(&self) -> usize {
        self.sets.len().saturating_sub(1)
    }
}

/// The principal divisor `L·f`.
pub fn apply_laplacian(g: &ChipGraph, f: &FiringVector) -> Result<Divisor, ChipError> {
    g.check_len(f.0.len())?;
    Ok(Divisor(
        (0..g.len())
            .map(|i| g.deg[i] * f.0[i] - g.adj[i].iter().map(|&(j, c)| c * f.0[j]).sum::<i64>())
            .collect(),
    ))
}

/// `D − L·1_A`.
pub fn fire_set(g: &ChipGraph, d: &Divisor, set: &[usize]) -> Result<Divisor, ChipError> {
    g.check_len(d.len())?;
    let mask = g.check_set(set)?;
    let mut out = d.0.clone();
    g.fire_mask(&mut out, &mask, 1);
    Ok(Divisor(out))
}

/// Whether every `a ∈ A` has at least as many chips as edges leaving `A`.
pub fn is_valid_firing(g: &ChipGraph, d: &Divisor, set: &[usize]) -> Result<bool, ChipError> {
    g.check_len(d.len())?;
    let mask = g.check_set(set)?;
    Ok((0..g.len())
        .filter(|&i| mask[i])
        .all(|i| d[i] >= g.outdeg(i, &mask)))
}

pub fn level_sets(f: &FiringVector) -> LevelSetDecomposition {
    let (Some(&max), Some(&min)) = (f.0.iter().max(), f.0.iter().min()) else {
        return LevelSetDecomposition {
            sets: vec![Vec::new()],
        };
    };
    let sets = (0..=(max - min))
        .map(|i| (0..f.0.len()).filter(|&v| f.0[v] >= max - i).collect())
        .collect();
    LevelSetDecomposition { sets }
}

/// Fires `A_0, …, A_{k−1}` in order, returning `D_0 = D, …, D_k`.
pub fn replay(g: &ChipGraph, d: &Divisor, ls: &LevelSetDecomposition) -> Result<Vec<Divisor>, ChipError> {
    g.check_len(d.len())?;
    let mut out = vec![d.clone()];
    for set in &ls.sets[..ls.depth()] {
        let mut mask = vec![false; g.len()];
        for &i in set {
            *mask.get_mut(i).ok_or(ChipError::OutOfRange(i))? = true;
        }
        let mut next = out.last().expect("nonempty").0.clone();
        g.fire_mask(&mut next, &mask, 1);
        out.push(Divisor(next));
    }
    Ok(out)
}

/// The unique `q`-reduced divisor equivalent to `d`.
pub fn reduce_divisor(g: &ChipGraph, d: &Divisor, q: usize) -> Result<Divisor, ChipError> {
    g.check_len(d.len())?;
    if q >= g.len() {
        return Err(ChipError::OutOfRange(q));
    }
    let dist = g.distances(q).expect("nonempty");
    if dist.contains(&usize::MAX) {
        return Err(ChipError::Disconnected);
    }
    let mut chips = d.0.clone();
    clear_debt(g, &mut chips, &dist);
    burn_until_reduced(g, &mut chips, q);
    Ok(Divisor(chips))
}

/// Makes `chips` non-negative away from the base by firing balls around
/// it, from the outermost layer inward.
fn clear_debt(g: &ChipGraph, chips: &mut [i64], dist: &[usize]) {
    let radius = dist.iter().copied().max().unwrap_or(0);
    for r in (1..=radius).rev() {
        let ball: Vec<bool> = dist.iter().map(|&x| x < r).collect();
        let mut times = 0i64;
        for v in (0..g.len()).filter(|&v| dist[v] == r && chips[v] < 0) {
            let inward: i64 = g.adj[v].iter().filter(|&&(j, _)| ball[j]).map(|&(_, c)| c).sum();
            times = times.max((-chips[v] + inward - 1) / inward);
        }
        if times > 0 {
            g.fire_mask(chips, &ball, times);
        }
    }
}

/// Dhar's burning loop: fire the unburnt set while it is nonempty.
fn burn_until_reduced(g: &ChipGraph, chips: &mut [i64], q: usize) {
    let n = g.len();
    loop {
        let mut burnt = vec![false; n];
        let mut heat = vec![0i64; n];
        burnt[q] = true;
        let mut queue = VecDeque::from([q]);
        while let Some(x) = queue.pop_front() {
            for &(y, c) in &g.adj[x] {
                if burnt[y] {
                    continue;
                }
                heat[y] += c;
                if heat[y] > chips[y] {
                    burnt[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let unburnt: Vec<bool> = burnt.iter().map(|b| !b).collect();
        if !unburnt.iter().any(|&b| b) {
            return;
        }
        let times = (0..n)
            .filter(|&v| unburnt[v] && heat[v] > 0)
            .map(|v| chips[v] / heat[v])
            .min()
            .expect("connected graph has a boundary");
        g.fire_mask(chips, &unburnt, times);
    }
}

pub fn equivalent(g: &ChipGraph, d: &Divisor, e: &Divisor) -> Result<bool, ChipError> {
    g.check_len(d.len())?;
    g.check_len(e.len())?;
    if d.degree() != e.degree() {
        return Err(ChipError::DegreeMismatch(d.degree(), e.degree()));
    }
    if g.is_empty() {
        return Ok(true);
    }
    Ok(reduce_divisor(g, d, 0)? == reduce_divisor(g, e, 0)?)
}

pub fn effective_equivalent(g: &ChipGraph, d: &Divisor) -> Result<bool, ChipError> {
    g.check_len(d.len())?;
    if g.is_empty() {
        return Ok(true);
    }
    Ok(reduce_divisor(g, d, 0)?[0] >= 0)
}

/// Whether `D − 1_v` is equivalent to an effective divisor for every `v`.
pub fn rank_at_least_one(g: &ChipGraph, d: &Divisor) -> Result<bool, ChipError> {
    g.check_len(d.len())?;
    for v in 0..g.len() {
        // the v-reduced form of D − 1_v is the v-reduced form of D minus 1_v
        if reduce_divisor(g, d, v)?[v] < 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
