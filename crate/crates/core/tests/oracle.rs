mod common;

use leibniz_core::atlas::{enumerate_algebras, AtlasOptions};

fn library_classes(dim: usize, p: u32) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = enumerate_algebras(dim, p, &AtlasOptions::default())
        .unwrap()
        .into_iter()
        .map(|e| e.table.consts().to_vec())
        .collect();
    v.sort();
    v
}

#[test]
fn dim2_gf2_matches_brute_force() {
    let oracle = common::brute_force_classes(2, 2);
    assert_eq!(oracle.len(), 4);
    assert_eq!(library_classes(2, 2), oracle);
}

#[test]
fn dim2_gf3_matches_brute_force() {
    assert_eq!(library_classes(2, 3), common::brute_force_classes(3, 2));
}

#[test]
fn dim1_matches_brute_force() {
    for p in [2, 3, 5] {
        assert_eq!(library_classes(1, p), common::brute_force_classes(p, 1));
    }
}

#[test]
fn oracle_group_orders() {
    assert_eq!(common::general_linear(2, 2).len(), 6);
    assert_eq!(common::general_linear(3, 2).len(), 48);
    assert_eq!(common::general_linear(2, 3).len(), 168);
}

/// Orbit sizes of the dim-3 GF(2) classes must add up to the number of
/// right Leibniz tables, and the classes must be pairwise non-isomorphic.
#[test]
fn dim3_gf2_orbits_cover_every_table() {
    let group = common::general_linear(2, 3);
    let reps = library_classes(3, 2);
    let mut total = 0u64;
    let mut union = std::collections::BTreeSet::new();
    for r in &reps {
        assert!(common::is_right_leibniz(2, 3, r));
        let o = common::orbit(2, 3, r, &group);
        assert_eq!(o.iter().next(), Some(r), "representative is the orbit minimum");
        total += o.len() as u64;
        union.extend(o);
    }
    assert_eq!(union.len() as u64, total, "orbits overlap");
    assert_eq!(total, common::count_gf2_dim3_tables());
}
