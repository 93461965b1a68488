//! Finite lattices as abstract posets: cover relation, down/up sets,
//! join/meet tables and the order-theoretic predicates built on them.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite bounded poset whose node indices form a linear extension
/// (every cover `(i, j)` has `i < j`), so node `0` is the bottom and the
/// last node is the top.
#[derive(Debug, Clone)]
pub struct LatticeOrder {
    n: usize,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    height: Vec<usize>,
    tables: OnceLock<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// Isomorphism-invariant summary of a lattice; equal fingerprints are
/// necessary for lattice isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeFingerprint {
    pub nodes: usize,
    /// Node count per height (longest chain from the bottom).
    pub level_profile: Vec<usize>,
    /// Sorted `(lower-cover count, upper-cover count)` pairs.
    pub degree_pairs: Vec<(usize, usize)>,
    pub atoms: usize,
    pub coatoms: usize,
    pub distributive: bool,
    pub modular: bool,
}

impl LatticeOrder {
    /// Builds the order from the full "less than or equal" relation given as
    /// down-sets (`below[j]` contains `i` iff `i <= j`, including `j`).
    pub(crate) fn from_down_sets(below: Vec<FixedBitSet>) -> LatticeOrder {
        let n = below.len();
        let mut lower = vec![Vec::new(); n];
        for j in 0..n {
            let mut strict = below[j].clone();
            strict.set(j, false);
            let mut reachable = FixedBitSet::with_capacity(n);
            for k in strict.ones() {
                let mut sk = below[k].clone();
                sk.set(k, false);
                reachable.union_with(&sk);
            }
            strict.difference_with(&reachable);
            lower[j] = strict.ones().collect();
        }
        Self::assemble(n, lower, Some(below))
    }

    /// Builds the order from cover pairs `(i, j)`, `i` covered by `j`,
    /// requiring `i < j`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<LatticeOrder> {
        let mut lower = vec![Vec::new(); n];
        for &(i, j) in covers {
            if i >= j || j >= n {
                return Err(Error::Format(format!("cover ({i}, {j}) is not in linear-extension order")));
            }
            lower[j].push(i);
        }
        for l in lower.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        let order = Self::assemble(n, lower, None);
        // Input covers must already be transitively reduced.
        let reduced = Self::from_down_sets(order.below.clone());
        if reduced.covers != order.covers {
            return Err(Error::Format("cover list is not transitively reduced".into()));
        }
        Ok(order)
    }

    fn assemble(n: usize, lower: Vec<Vec<usize>>, below: Option<Vec<FixedBitSet>>) -> LatticeOrder {
        let below = below.unwrap_or_else(|| {
            let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
            for j in 0..n {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(j);
                for &i in &lower[j] {
                    b.union_with(&below[i]);
                }
                below.push(b);
            }
            below
        });
        let mut above: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (j, b) in below.iter().enumerate() {
            for i in b.ones() {
                above[i].insert(j);
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut covers = Vec::new();
        for (j, l) in lower.iter().enumerate() {
            for &i in l {
                upper[i].push(j);
                covers.push((i, j));
            }
        }
        covers.sort_unstable();
        let mut height = vec![0usize; n];
        for j in 0..n {
            height[j] = lower[j].iter().map(|&i| height[i] + 1).max().unwrap_or(0);
        }
        LatticeOrder {
            n,
            covers,
            lower,
            upper,
            below,
            above,
            height,
            tables: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n - 1
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// `i` is covered by `j` (`i` is maximal in `j`).
    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.lower[j].binary_search(&i).is_ok()
    }

    pub fn atoms(&self) -> Vec<usize> {
        if self.n <= 1 {
            return Vec::new();
        }
        self.upper[0].clone()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        if self.n <= 1 {
            return Vec::new();
        }
        self.lower[self.top()].clone()
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let n = self.n;
            let mut join = vec![0u32; n * n];
            let mut meet = vec![0u32; n * n];
            for i in 0..n {
                for j in i..n {
                    let m = highest_common(&self.below[i], &self.below[j]).expect("bottom is below everything");
                    let u = lowest_common(&self.above[i], &self.above[j]).expect("top is above everything");
                    meet[i * n + j] = m as u32;
                    meet[j * n + i] = m as u32;
                    join[i * n + j] = u as u32;
                    join[j * n + i] = u as u32;
                }
            }
            Tables { join, meet }
        })
    }

    /// Least upper bound. In a linear extension the join is the lowest-index
    /// common upper bound.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.tables().join[i * self.n + j] as usize
    }

    /// Greatest lower bound (highest-index common lower bound).
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.tables().meet[i * self.n + j] as usize
    }

    /// Whether the order-theoretic join and meet of every pair really are
    /// least/greatest bounds.
    pub fn is_lattice(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let m = self.meet(i, j);
                let u = self.join(i, j);
                let mut lb = self.below[i].clone();
                lb.intersect_with(&self.below[j]);
                let mut ub = self.above[i].clone();
                ub.intersect_with(&self.above[j]);
                lb.is_subset(&self.below[m]) && ub.is_subset(&self.above[u])
            })
        })
    }

    /// Shortest and longest maximal chain from bottom to top, in edges.
    pub fn maximal_chain_lengths(&self) -> (usize, usize) {
        let n = self.n;
        let mut shortest = vec![usize::MAX; n];
        let mut longest = vec![0usize; n];
        shortest[0] = 0;
        for j in 1..n {
            for &i in &self.lower[j] {
                shortest[j] = shortest[j].min(shortest[i] + 1);
                longest[j] = longest[j].max(longest[i] + 1);
            }
        }
        (shortest[n - 1], longest[n - 1])
    }

    /// `u` is a maximal element of `join(u, b)` for every `b` with
    /// `meet(u, b)` maximal in `b`.
    pub fn is_upper_semimodular_element(&self, u: usize) -> bool {
        (0..self.n).all(|b| !self.is_cover(self.meet(u, b), b) || self.is_cover(u, self.join(u, b)))
    }

    /// `meet(u, b)` is maximal in `b` for every `b` with `u` maximal in
    /// `join(u, b)`.
    pub fn is_lower_semimodular_element(&self, u: usize) -> bool {
        (0..self.n).all(|b| !self.is_cover(u, self.join(u, b)) || self.is_cover(self.meet(u, b), b))
    }

    pub fn is_lower_semimodular(&self) -> bool {
        (0..self.n).all(|u| self.is_lower_semimodular_element(u))
    }

    /// Every cover raises the height by exactly one.
    pub fn is_graded(&self) -> bool {
        self.covers.iter().all(|&(i, j)| self.height[j] == self.height[i] + 1)
    }

    /// A finite lattice is modular iff it is graded with a modular height
    /// function: `h(x) + h(y) = h(x ∧ y) + h(x ∨ y)`.
    pub fn is_modular(&self) -> bool {
        self.is_graded()
            && (0..self.n).all(|i| {
                (i + 1..self.n).all(|j| {
                    self.height[i] + self.height[j] == self.height[self.meet(i, j)] + self.height[self.join(i, j)]
                })
            })
    }

    pub fn is_distributive(&self) -> bool {
        if !self.is_modular() {
            return false;
        }
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| (y..n).all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))))
        })
    }

    pub fn fingerprint(&self) -> LatticeFingerprint {
        let max_h = self.height.iter().copied().max().unwrap_or(0);
        let mut level_profile = vec![0usize; if self.n == 0 { 0 } else { max_h + 1 }];
        for &h in &self.height {
            level_profile[h] += 1;
        }
        let mut degree_pairs: Vec<(usize, usize)> =
            (0..self.n).map(|i| (self.lower[i].len(), self.upper[i].len())).collect();
        degree_pairs.sort_unstable();
        LatticeFingerprint {
            nodes: self.n,
            level_profile,
            degree_pairs,
            atoms: self.atoms().len(),
            coatoms: self.coatoms().len(),
            distributive: self.is_distributive(),
            modular: self.is_modular(),
        }
    }
}

fn highest_common(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    let (sa, sb) = (a.as_slice(), b.as_slice());
    (0..sa.len()).rev().find_map(|w| {
        let x = sa[w] & sb[w];
        (x != 0).then(|| w * 32 + 31 - x.leading_zeros() as usize)
    })
}

fn lowest_common(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    let (sa, sb) = (a.as_slice(), b.as_slice());
    (0..sa.len()).find_map(|w| {
        let x = sa[w] & sb[w];
        (x != 0).then(|| w * 32 + x.trailing_zeros() as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// M3: bottom, three atoms, top.
    fn m3() -> LatticeOrder {
        LatticeOrder::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// N5 pentagon: 0 < 1 < 2 < 4, 0 < 3 < 4.
    fn n5() -> LatticeOrder {
        LatticeOrder::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    fn chain(n: usize) -> LatticeOrder {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        LatticeOrder::from_covers(n, &covers).unwrap()
    }

    #[test]
    fn join_meet_on_m3() {
        let l = m3();
        assert!(l.is_lattice());
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 1), 1);
        assert_eq!(l.meet(3, 0), 0);
        assert!(l.is_modular());
        assert!(!l.is_distributive());
    }

    #[test]
    fn pentagon_is_not_modular() {
        let l = n5();
        assert!(l.is_lattice());
        assert!(!l.is_modular());
        assert!(!l.is_distributive());
        assert_eq!(l.maximal_chain_lengths(), (2, 3));
        // 3 is covered by the top, 3 ∧ 2 = 0 is not maximal in 2
        assert!(!l.is_lower_semimodular_element(3));
    }

    #[test]
    fn chains_are_distributive_and_semimodular() {
        let l = chain(4);
        assert!(l.is_distributive());
        assert_eq!(l.maximal_chain_lengths(), (3, 3));
        assert!(l.is_lower_semimodular());
        assert!((0..4).all(|u| l.is_upper_semimodular_element(u)));
        assert_eq!(l.fingerprint().level_profile, vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_bad_covers() {
        assert!(LatticeOrder::from_covers(3, &[(1, 0)]).is_err());
        assert!(LatticeOrder::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).is_err());
    }

    #[test]
    fn fingerprint_of_m3() {
        let fp = m3().fingerprint();
        assert_eq!(fp.nodes, 5);
        assert_eq!(fp.atoms, 3);
        assert_eq!(fp.coatoms, 3);
        assert_eq!(fp.level_profile, vec![1, 3, 1]);
        assert_eq!(fp.degree_pairs, vec![(0, 3), (1, 1), (1, 1), (1, 1), (3, 0)]);
    }
}
