//! Subalgebra lattices over prime fields.

pub mod export;
pub mod iso;
pub mod order;

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::subspace::Subspace;

pub use iso::{enumerate_isomorphisms, lattice_automorphisms, lattice_isomorphism, lattice_isomorphism_pinned, LatticeMap};
pub use order::{LatticeFingerprint, LatticeOrder};

/// Size limits for enumeration; exceeding one fails with the projected size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCaps {
    pub max_dim: usize,
    pub max_p: u32,
    pub max_nodes: usize,
}

impl Default for LatticeCaps {
    fn default() -> Self {
        LatticeCaps {
            max_dim: 6,
            max_p: 7,
            max_nodes: 5000,
        }
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(n: usize, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

fn finite_elements<F: Field>(field: &F, what: &'static str) -> Result<Vec<F::Elem>> {
    field
        .elements()
        .ok_or(Error::RequiresFiniteField(what, field.spec()))
}

fn check_caps<F: Field>(field: &F, n: usize, caps: &LatticeCaps) -> Result<()> {
    let p = field.spec().characteristic();
    if n > caps.max_dim || p > caps.max_p {
        return Err(Error::CapExceeded {
            what: format!("subspaces of GF({p})^{n} (caps: dim {}, p {})", caps.max_dim, caps.max_p),
            requested: subspace_count(n, p as u64),
            cap: subspace_count(caps.max_dim.min(n), caps.max_p.min(p) as u64),
        });
    }
    Ok(())
}

/// All `k`-dimensional subspaces of `F^n`, sorted, built by choosing pivot
/// columns and filling the free entries to their right.
pub fn subspaces_of_dim<F: Field>(field: &F, n: usize, k: usize) -> Result<Vec<Subspace<F>>> {
    let elems = finite_elements(field, "subspace enumeration")?;
    let mut out = Vec::new();
    for pivots in (0..n).combinations(k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut m = vec![vec![field.zero(); n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                m[r][c] = field.one();
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m[r][c] = elems[d].clone();
            }
            out.push(Subspace::from_rref(field, n, m));
            // odometer over the free entries
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < elems.len() {
                    break;
                }
                digits[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || free.is_empty() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every subspace of `F^n` exactly once, in (dimension, lexicographic) order.
pub fn enumerate_subspaces<F: Field>(
    field: &F,
    n: usize,
    caps: &LatticeCaps,
) -> Result<impl Iterator<Item = Subspace<F>>> {
    finite_elements(field, "subspace enumeration")?;
    check_caps(field, n, caps)?;
    let field = field.clone();
    Ok((0..=n).flat_map(move |k| subspaces_of_dim(&field, n, k).expect("finite field checked")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeMeta {
    pub dim: usize,
    pub is_ideal: bool,
}

/// The lattice of all subalgebras of an algebra over GF(p).
#[derive(Debug, Clone)]
pub struct SubalgebraLattice<F: Field> {
    algebra: StructureTable<F>,
    nodes: Vec<Subspace<F>>,
    meta: Vec<NodeMeta>,
    order: LatticeOrder,
    index: HashMap<Subspace<F>, usize>,
}

impl<F: Field> SubalgebraLattice<F> {
    pub fn build(algebra: &StructureTable<F>, caps: &LatticeCaps) -> Result<Self> {
        finite_elements(algebra.field(), "subalgebra lattice")?;
        check_caps(algebra.field(), algebra.dim(), caps)?;
        let n = algebra.dim();
        let mut nodes = Vec::new();
        for k in 0..=n {
            let layer = subspaces_of_dim(algebra.field(), n, k)?;
            let kept: Vec<Subspace<F>> = layer.into_par_iter().filter(|u| algebra.is_subalgebra(u)).collect();
            nodes.extend(kept);
            if nodes.len() > caps.max_nodes {
                return Err(Error::CapExceeded {
                    what: format!("subalgebra lattice nodes (at least {} after dimension {k})", nodes.len()),
                    requested: nodes.len() as u128,
                    cap: caps.max_nodes as u128,
                });
            }
        }
        Ok(Self::from_nodes(algebra, nodes))
    }

    /// Assembles the lattice from a sorted, closed list of subalgebras.
    fn from_nodes(algebra: &StructureTable<F>, nodes: Vec<Subspace<F>>) -> Self {
        let count = nodes.len();
        let below: Vec<fixedbitset::FixedBitSet> = (0..count)
            .into_par_iter()
            .map(|j| {
                let mut b = fixedbitset::FixedBitSet::with_capacity(count);
                b.insert(j);
                for i in 0..j {
                    if nodes[i].dim() < nodes[j].dim() && nodes[j].contains(&nodes[i]) {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        let order = LatticeOrder::from_down_sets(below);
        let meta = nodes
            .par_iter()
            .map(|u| NodeMeta {
                dim: u.dim(),
                is_ideal: algebra.is_ideal(u),
            })
            .collect();
        let index = nodes.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        SubalgebraLattice {
            algebra: algebra.clone(),
            nodes,
            meta,
            order,
            index,
        }
    }

    pub fn algebra(&self) -> &StructureTable<F> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subspace<F>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subspace<F> {
        &self.nodes[i]
    }

    pub fn meta(&self, i: usize) -> NodeMeta {
        self.meta[i]
    }

    pub fn order(&self) -> &LatticeOrder {
        &self.order
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        self.order.covers()
    }

    pub fn index_of(&self, u: &Subspace<F>) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Node of the subalgebra generated by the union of nodes `i` and `j`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let u = self.algebra.closure_of(self.nodes[i].sum(&self.nodes[j]));
        self.index_of(&u).expect("the lattice is closed under joins")
    }

    /// Node of the intersection of nodes `i` and `j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.nodes[i].intersection(&self.nodes[j]))
            .expect("the lattice is closed under meets")
    }

    pub fn ideal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.meta[i].is_ideal).collect()
    }

    /// Coatoms: the maximal subalgebras.
    pub fn maximal_subalgebras(&self) -> Vec<&Subspace<F>> {
        self.order.coatoms().into_iter().map(|i| &self.nodes[i]).collect()
    }

    pub fn maximal_chain_lengths(&self) -> (usize, usize) {
        self.order.maximal_chain_lengths()
    }

    pub fn is_upper_semimodular_element(&self, u: usize) -> bool {
        self.order.is_upper_semimodular_element(u)
    }

    pub fn is_lower_semimodular_element(&self, u: usize) -> bool {
        self.order.is_lower_semimodular_element(u)
    }

    pub fn is_lower_semimodular(&self) -> bool {
        self.order.is_lower_semimodular()
    }

    pub fn fingerprint(&self) -> LatticeFingerprint {
        self.order.fingerprint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn gaussian_counts() {
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(3, 2), 16);
        assert_eq!(subspace_count(2, 3), 6);
        assert_eq!(subspace_count(5, 2), 374);
        assert_eq!(subspace_count(0, 7), 1);
    }

    #[test]
    fn enumeration_matches_counts_and_order() {
        let caps = LatticeCaps::default();
        for (n, p) in [(0usize, 2u64), (1, 5), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let f = PrimeField::new(p).unwrap();
            let all: Vec<_> = enumerate_subspaces(&f, n, &caps).unwrap().collect();
            assert_eq!(all.len() as u128, subspace_count(n, p), "n={n} p={p}");
            assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly increasing, hence distinct");
            for u in &all {
                let (m, _) = crate::linalg::rref(&f, u.basis());
                assert_eq!(&m, u.basis());
            }
        }
    }

    #[test]
    fn caps_fail_loudly() {
        let f = PrimeField::new(11).unwrap();
        match enumerate_subspaces(&f, 2, &LatticeCaps::default()) {
            Err(Error::CapExceeded { requested, .. }) => assert_eq!(requested, subspace_count(2, 11)),
            other => panic!("expected cap error, got {:?}", other.map(|i| i.count())),
        }
        let g = PrimeField::new(2).unwrap();
        assert!(enumerate_subspaces(&g, 7, &LatticeCaps::default()).is_err());
        assert!(matches!(
            enumerate_subspaces(&Rationals, 2, &LatticeCaps::default()).map(|i| i.count()),
            Err(Error::RequiresFiniteField(..))
        ));
        let small = LatticeCaps {
            max_nodes: 10,
            ..LatticeCaps::default()
        };
        let ab = StructureTable::zero_table(&g, crate::algebra::default_labels(3)).unwrap();
        assert!(matches!(SubalgebraLattice::build(&ab, &small), Err(Error::CapExceeded { cap: 10, .. })));
    }

    #[test]
    fn abelian_lattice_is_all_subspaces() {
        let f = PrimeField::new(2).unwrap();
        let l = StructureTable::zero_table(&f, vec!["x".into(), "y".into()]).unwrap();
        let lat = SubalgebraLattice::build(&l, &LatticeCaps::default()).unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.maximal_chain_lengths(), (2, 2));
        assert!(lat.ideal_indices().len() == 5);
        assert!((0..5).all(|u| lat.is_upper_semimodular_element(u) && lat.is_lower_semimodular_element(u)));
        assert_eq!(lat.join(1, 2), 4);
        assert_eq!(lat.meet(1, 2), 0);
    }
}
