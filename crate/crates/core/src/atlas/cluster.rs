use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{algebra_isomorphic, AtlasOptions, CorpusEntry};
use crate::lattice::{lattice_isomorphism, LatticeFingerprint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub field: String,
    pub fingerprint: LatticeFingerprint,
    /// Corpus indices sharing this fingerprint.
    pub members: Vec<usize>,
    /// Members split into lattice-isomorphism classes by explicit search.
    pub lattice_classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePair {
    pub a: usize,
    pub b: usize,
    /// `None` when the brute-force search was over its cap.
    pub algebra_isomorphic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub clusters: Vec<Cluster>,
    /// Lattice-isomorphic pairs that are not (or not known to be)
    /// isomorphic as algebras.
    pub latiso_not_algiso: Vec<LatticePair>,
    /// Every lattice-isomorphism class, in cluster order.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each corpus entry.
    pub class_of: Vec<usize>,
}

fn split_classes(corpus: &[CorpusEntry], members: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &m in members {
        let lat = corpus[m].lattice.order();
        match classes
            .iter_mut()
            .find(|c| lattice_isomorphism(corpus[c[0]].lattice.order(), lat).is_some())
        {
            Some(c) => c.push(m),
            None => classes.push(vec![m]),
        }
    }
    classes
}

fn algebra_verdict(corpus: &[CorpusEntry], a: usize, b: usize, opts: &AtlasOptions) -> Option<bool> {
    let (x, y) = (&corpus[a], &corpus[b]);
    if x.dim() != y.dim() || x.table.convention() != y.table.convention() {
        return Some(false);
    }
    if x.iso_class_rep && y.iso_class_rep {
        // representatives of one enumeration are pairwise non-isomorphic
        return Some(false);
    }
    algebra_isomorphic(&x.table, &y.table, opts.max_gl_order).ok().map(|g| g.is_some())
}

/// Groups entries by (field, lattice fingerprint), resolves true lattice
/// classes inside each group and lists the lattice-isomorphic pairs that
/// are not algebra-isomorphic.
pub fn cluster_by_fingerprint(corpus: &[CorpusEntry], opts: &AtlasOptions) -> ClusterReport {
    let mut groups: BTreeMap<(u32, LatticeFingerprint), Vec<usize>> = BTreeMap::new();
    for (i, e) in corpus.iter().enumerate() {
        groups
            .entry((e.field().modulus(), e.fingerprint.clone()))
            .or_default()
            .push(i);
    }
    let groups: Vec<((u32, LatticeFingerprint), Vec<usize>)> = groups.into_iter().collect();
    let clusters: Vec<Cluster> = groups
        .into_par_iter()
        .map(|((p, fingerprint), members)| Cluster {
            field: format!("GF({p})"),
            fingerprint,
            lattice_classes: split_classes(corpus, &members),
            members,
        })
        .collect();
    let classes: Vec<Vec<usize>> = clusters.iter().flat_map(|c| c.lattice_classes.iter().cloned()).collect();
    let mut class_of = vec![0; corpus.len()];
    for (ci, class) in classes.iter().enumerate() {
        for &m in class {
            class_of[m] = ci;
        }
    }
    let pairs: Vec<(usize, usize)> = classes
        .iter()
        .flat_map(|c| {
            c.iter()
                .enumerate()
                .flat_map(move |(i, &a)| c[i + 1..].iter().map(move |&b| (a, b)))
        })
        .collect();
    let latiso_not_algiso = pairs
        .into_par_iter()
        .map(|(a, b)| LatticePair {
            a,
            b,
            algebra_isomorphic: algebra_verdict(corpus, a, b, opts),
        })
        .filter(|pair| pair.algebra_isomorphic != Some(true))
        .collect();
    ClusterReport {
        clusters,
        latiso_not_algiso,
        classes,
        class_of,
    }
}
