use serde::Serialize;
use std::fmt::Write;

use super::{LatticeFingerprint, SubalgebraLattice};
use crate::field::Field;

#[derive(Debug, Clone, Serialize)]
pub struct LatticeNodeDoc {
    pub index: usize,
    pub dim: usize,
    pub basis: String,
    pub is_ideal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeDocument {
    pub field: String,
    pub algebra_dim: usize,
    pub nodes: Vec<LatticeNodeDoc>,
    pub covers: Vec<(usize, usize)>,
    pub fingerprint: LatticeFingerprint,
}

/// Node label used in both exports: `dim:basis-matrix`.
pub fn node_label<F: Field>(lat: &SubalgebraLattice<F>, i: usize) -> String {
    let u = lat.node(i);
    format!("{}:{}", u.dim(), u.render())
}

/// Graphviz rendering; ideals are drawn as boxes.
pub fn to_dot<F: Field>(lat: &SubalgebraLattice<F>) -> String {
    let mut s = String::from("digraph subalgebras {\n  rankdir=BT;\n");
    for i in 0..lat.len() {
        let shape = if lat.meta(i).is_ideal { "box" } else { "ellipse" };
        writeln!(s, "  n{i} [label=\"{}\", shape={shape}];", node_label(lat, i)).unwrap();
    }
    for &(a, b) in lat.covers() {
        writeln!(s, "  n{a} -> n{b};").unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn to_document<F: Field>(lat: &SubalgebraLattice<F>) -> LatticeDocument {
    LatticeDocument {
        field: lat.algebra().field().spec().to_string(),
        algebra_dim: lat.algebra().dim(),
        nodes: (0..lat.len())
            .map(|i| LatticeNodeDoc {
                index: i,
                dim: lat.meta(i).dim,
                basis: lat.node(i).render(),
                is_ideal: lat.meta(i).is_ideal,
            })
            .collect(),
        covers: lat.covers().to_vec(),
        fingerprint: lat.fingerprint(),
    }
}
