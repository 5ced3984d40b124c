use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use super::VertexId;

/// Unordered vertex pairs, self-pairs allowed, each stored once.
///
/// The per-vertex partner lists make `𝒞_v` lookups exact: a self-pair
/// `(v, v)` appears once in the list of `v`.
#[derive(Debug, Clone)]
pub struct ConstraintSet<K = VertexId> {
    pairs: HashSet<(K, K)>,
    partners: HashMap<K, Vec<K>>,
}

impl<K> Default for ConstraintSet<K> {
    fn default() -> Self {
        ConstraintSet {
            pairs: HashSet::new(),
            partners: HashMap::new(),
        }
    }
}

fn norm<K: Ord>(a: K, b: K) -> (K, K) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl<K: Copy + Ord + Hash> ConstraintSet<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: K, b: K) -> bool {
        self.pairs.contains(&norm(a, b))
    }

    /// Returns false when the pair was already present.
    pub fn insert(&mut self, a: K, b: K) -> bool {
        if !self.pairs.insert(norm(a, b)) {
            return false;
        }
        self.partners.entry(a).or_default().push(b);
        if a != b {
            self.partners.entry(b).or_default().push(a);
        }
        true
    }

    pub fn remove(&mut self, a: K, b: K) -> bool {
        if !self.pairs.remove(&norm(a, b)) {
            return false;
        }
        self.unlink(a, b);
        if a != b {
            self.unlink(b, a);
        }
        true
    }

    fn unlink(&mut self, at: K, partner: K) {
        if let Some(list) = self.partners.get_mut(&at) {
            if let Some(i) = list.iter().position(|&p| p == partner) {
                list.swap_remove(i);
            }
            if list.is_empty() {
                self.partners.remove(&at);
            }
        }
    }

    /// Partners of `v`; `v` itself appears when `(v, v)` is present.
    pub fn partners(&self, v: K) -> &[K] {
        self.partners.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn count_at(&self, v: K) -> usize {
        self.partners(v).len()
    }

    /// All pairs in normalized `(min, max)` form, sorted.
    pub fn pairs(&self) -> Vec<(K, K)> {
        let mut out: Vec<_> = self.pairs.iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// Removes every pair touching `v` and returns them as `(v, partner)`.
    pub fn remove_all(&mut self, v: K) -> Vec<(K, K)> {
        let partners = self.partners.get(&v).cloned().unwrap_or_default();
        for &p in &partners {
            self.remove(v, p);
        }
        partners.into_iter().map(|p| (v, p)).collect()
    }

    /// Rewrites every pair touching `from` so that it touches `to`
    /// instead, dropping pairs that become duplicates. Returns the
    /// rewritten pairs that survive.
    pub fn rename(&mut self, from: K, to: K) -> Vec<(K, K)> {
        let mut out = Vec::new();
        for (_, p) in self.remove_all(from) {
            let p = if p == from { to } else { p };
            if self.insert(to, p) {
                out.push((to, p));
            }
        }
        out
    }
}

impl<K: Copy + Ord + Hash> FromIterator<(K, K)> for ConstraintSet<K> {
    fn from_iter<I: IntoIterator<Item = (K, K)>>(iter: I) -> Self {
        let mut set = ConstraintSet::new();
        for (a, b) in iter {
            set.insert(a, b);
        }
        set
    }
}
