use leibniz_core::families::{self, FamilyParams};
use leibniz_core::invariants::{self, CyclicVerdict, QuasiAbelianClass, SeriesKind};
use leibniz_core::lattice::{self, LatticeCaps, SubalgebraLattice};
use leibniz_core::{Field, IdentityVariant, PrimeField, Rationals, StructureTable, SubspaceKind};

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn caps() -> LatticeCaps {
    LatticeCaps::default()
}

fn span(l: &StructureTable<PrimeField>, rows: &[&[u32]]) -> leibniz_core::Subspace<PrimeField> {
    l.span(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn diamond_brackets_and_subspaces() {
    let l = families::diamond(&gf(5)).unwrap();
    assert_eq!(l.bracket(&[0, 1], &[0, 1]).unwrap(), vec![1, 0]);
    assert_eq!(l.bracket(&[4, 1], &[4, 1]).unwrap(), vec![0, 0]);
    assert!(l.check_identity(IdentityVariant::Right).holds);
    assert_eq!(l.right_mult_matrix(&[0, 1]).unwrap(), vec![vec![1, 1], vec![0, 0]]);
    let fa = span(&l, &[&[1, 0]]);
    assert_eq!(l.product_space(&l.whole(), &l.whole()).unwrap(), fa);
    assert_eq!(l.product_space(&fa, &l.whole()).unwrap(), fa);
    assert_eq!(l.generated_subalgebra(&[vec![0, 1]]).unwrap(), l.whole());
    let kind = l.classify_subspace(&span(&l, &[&[4, 1]])).unwrap();
    assert!(kind.is_subalgebra() && kind != SubspaceKind::Ideal);
    assert_eq!(kind, SubspaceKind::RightIdeal);
    assert_eq!(l.classify_subspace(&fa).unwrap(), SubspaceKind::Ideal);
    assert_eq!(l.classify_subspace(&span(&l, &[&[0, 1]])).unwrap(), SubspaceKind::NotSubalgebra);
    let q = l.quotient(&fa).unwrap();
    assert_eq!(q.algebra.dim(), 1);
    assert!(q.algebra.is_lie());
}

#[test]
fn broken_table_has_the_expected_witness() {
    let f = Rationals;
    let l = StructureTable::from_products(&f, vec!["a".into(), "b".into()], &[(1, 1, vec![f.parse("0").unwrap(), f.parse("1").unwrap()])]).unwrap();
    let r = l.check_identity(IdentityVariant::Right);
    assert!(!r.holds);
    let w = r.witness.unwrap();
    assert_eq!(w.triple, (1, 1, 1));
    assert_eq!(l.render_vector(&w.defect), "b");
}

#[test]
fn abelian_satisfies_every_variant() {
    let l = families::abelian(&gf(3), 3).unwrap();
    for v in [IdentityVariant::Right, IdentityVariant::Left, IdentityVariant::Symmetric] {
        assert!(l.check_identity(v).holds);
    }
    assert!(l.product_space(&l.whole(), &l.whole()).unwrap().is_zero());
}

#[test]
fn cyclic_three_invariants() {
    let f = gf(3);
    let l = families::cyclic_algebra(&f, 3, &[0, 0]).unwrap();
    let x = l.basis_vector(0);
    let rx = l.right_mult_matrix(&x).unwrap();
    let rx2 = leibniz_core::linalg::mat_mul(&f, &rx, &rx);
    let rx3 = leibniz_core::linalg::mat_mul(&f, &rx2, &rx);
    assert!(rx2.iter().flatten().any(|&c| c != 0));
    assert!(rx3.iter().flatten().all(|&c| c == 0));
    let tail = span(&l, &[&[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(invariants::leibniz_kernel(&l).unwrap(), tail);
    assert_eq!(invariants::centre(&l), span(&l, &[&[0, 0, 1]]));
    let lc = invariants::series(&l, SeriesKind::LowerCentral);
    assert_eq!(lc.dims(), vec![3, 2, 1, 0]);
    assert_eq!(lc.class_or_length, Some(3));
    assert_eq!(invariants::maximal_subalgebras(&l, &caps()).unwrap(), vec![tail.clone()]);
    assert_eq!(invariants::frattini_ideal(&l, &caps()).unwrap(), tail);
    assert_eq!(l.generated_subalgebra(&[x]).unwrap(), l.whole());
    let q = l.quotient(&span(&l, &[&[0, 0, 1]])).unwrap().algebra;
    assert_eq!(q.product(0, 0), &[0, 1]);
    assert_eq!(q.product(1, 0), &[0, 0]);
    let lat = SubalgebraLattice::build(&l, &caps()).unwrap();
    assert_eq!(lat.maximal_chain_lengths(), (3, 3));
    assert!(lat.is_lower_semimodular());
}

#[test]
fn kernel_and_centre_examples() {
    let d = families::diamond(&gf(5)).unwrap();
    assert_eq!(invariants::leibniz_kernel(&d).unwrap(), span(&d, &[&[1, 0]]));
    assert!(invariants::centre(&d).is_zero());
    let h = families::heisenberg(&gf(5)).unwrap();
    assert!(invariants::leibniz_kernel(&h).unwrap().is_zero());
    let a = families::abelian(&gf(2), 4).unwrap();
    assert!(invariants::centre(&a).is_full());
}

#[test]
fn diamond_series_and_ideals() {
    let l = families::diamond(&gf(3)).unwrap();
    let fa = span(&l, &[&[1, 0]]);
    let lc = invariants::series(&l, SeriesKind::LowerCentral);
    assert!(lc.stabilized && !lc.reaches_zero());
    assert_eq!(lc.terms.last().unwrap(), &fa);
    let d = invariants::series(&l, SeriesKind::Derived);
    assert_eq!(d.class_or_length, Some(2));
    assert_eq!(invariants::nilradical(&l, &caps()).unwrap(), fa);
    assert!(invariants::radical(&l, &caps()).unwrap().is_full());
    assert_eq!(invariants::minimal_ideals(&l, &caps()).unwrap(), vec![fa.clone()]);
    assert!(!invariants::is_simple(&l, &caps()).unwrap());
    let ss = invariants::is_supersolvable(&l);
    assert!(ss.holds);
    assert_eq!(ss.chain.unwrap()[1], fa);
    match invariants::is_cyclic(&l, 3) {
        CyclicVerdict::Yes(v) => assert_eq!(v, vec![0, 1]),
        other => panic!("expected a generator, got {other:?}"),
    }
}

#[test]
fn diamond_frattini_and_maximals() {
    let l = families::diamond(&gf(5)).unwrap();
    let mut maxes = invariants::maximal_subalgebras(&l, &caps()).unwrap();
    maxes.sort();
    assert_eq!(maxes, vec![span(&l, &[&[1, 0]]), span(&l, &[&[1, 4]])]);
    assert!(invariants::frattini_ideal(&l, &caps()).unwrap().is_zero());
}

#[test]
fn sl2_over_gf7() {
    let l = families::sl2(&gf(7)).unwrap();
    assert!(invariants::radical(&l, &caps()).unwrap().is_zero());
    assert!(invariants::nilradical(&l, &caps()).unwrap().is_zero());
    assert_eq!(invariants::minimal_ideals(&l, &caps()).unwrap(), vec![l.whole()]);
    assert!(!invariants::is_supersolvable(&l).holds);
    assert!(invariants::is_simple(&l, &caps()).unwrap());
    assert!(invariants::is_semisimple(&l, &caps()).unwrap());
}

#[test]
fn small_structural_flags() {
    assert!(!invariants::is_simple(&families::abelian(&gf(2), 1).unwrap(), &caps()).unwrap());
    assert!(invariants::is_supersolvable(&families::heisenberg(&gf(3)).unwrap()).holds);
    assert_eq!(invariants::is_cyclic(&families::abelian(&gf(3), 2).unwrap(), 3), CyclicVerdict::No);
    for alphas in [[0u32, 0, 0], [1, 2, 0], [2, 2, 2]] {
        let c = families::cyclic_algebra(&gf(3), 4, &alphas).unwrap();
        assert!(matches!(invariants::is_cyclic(&c, 3), CyclicVerdict::Yes(ref v) if v == &vec![1, 0, 0, 0]));
    }
    let alphas: Vec<_> = ["1", "0", "-2"].iter().map(|s| Rationals.parse(s).unwrap()).collect();
    let q = families::cyclic_algebra(&Rationals, 4, &alphas).unwrap();
    assert!(invariants::is_cyclic(&q, 3).is_yes());
}

#[test]
fn quasi_abelian_classes() {
    let f = gf(5);
    assert_eq!(invariants::quasi_abelian_class(&families::abelian(&f, 3).unwrap()), QuasiAbelianClass::Abelian);
    let aa = families::almost_abelian(&f, 2).unwrap();
    assert_eq!(invariants::quasi_abelian_class(&aa), QuasiAbelianClass::AlmostAbelian);
    assert!(aa.is_lie() && !invariants::square(&aa).is_zero());
    assert_eq!(invariants::quasi_abelian_class(&families::heisenberg(&f).unwrap()), QuasiAbelianClass::Neither);
    for n in 2..=3 {
        let l = families::almost_abelian(&gf(2), n).unwrap();
        let lat = SubalgebraLattice::build(&l, &caps()).unwrap();
        assert!(invariants::every_subspace_is_subalgebra(&lat));
    }
    let an = families::almost_nilpotent(&f, &[1]).unwrap();
    assert_eq!(invariants::quasi_abelian_class(&an), QuasiAbelianClass::AlmostAbelian);
    let an2 = families::almost_nilpotent(&f, &[1, 1]).unwrap();
    assert_eq!(an2.dim(), 3);
    assert!(!invariants::is_nilpotent(&an2) && invariants::is_solvable(&an2));
}

#[test]
fn cyclic_two_dimensional_forms() {
    let f = gf(2);
    let other = families::cyclic_algebra(&f, 2, &[0]).unwrap();
    let mut maxes = invariants::maximal_subalgebras(&other, &caps()).unwrap();
    maxes.sort();
    assert_eq!(maxes, vec![span(&other, &[&[0, 1]])]);
    assert!(invariants::is_nilpotent(&other));
    let lat = SubalgebraLattice::build(&other, &caps()).unwrap();
    assert_eq!(lat.len(), 3);
}

#[test]
fn lattice_golden_values() {
    for p in [2, 3, 5] {
        let l = families::diamond(&gf(p)).unwrap();
        let lat = SubalgebraLattice::build(&l, &caps()).unwrap();
        assert_eq!(lat.len(), 4);
        let fp = lat.fingerprint();
        assert_eq!((fp.atoms, fp.coatoms), (2, 2));
        assert_eq!(lat.maximal_chain_lengths(), (2, 2));
        let a = lat.index_of(&span(&l, &[&[1, 0]])).unwrap();
        let ba = lat.index_of(&span(&l, &[&[1, p as u32 - 1]])).unwrap();
        assert_eq!(lat.join(a, ba), lat.top());
        assert_eq!(lat.meet(a, 0), 0);
        assert_eq!(lat.join(a, a), a);
        assert!(lat.is_upper_semimodular_element(a));
    }
    let ab = families::abelian(&gf(2), 2).unwrap();
    let lat = SubalgebraLattice::build(&ab, &caps()).unwrap();
    assert_eq!(lat.len(), 5);
    assert_eq!(lat.maximal_chain_lengths(), (2, 2));
    assert!(invariants::frattini_in(&lat).unwrap().is_zero());
    assert_eq!(invariants::minimal_ideals_in(&lat).len(), 3);
    assert_eq!(lattice::lattice_automorphisms(lat.order(), 5000).unwrap().len(), 6);
    for u in 0..lat.len() {
        assert!(lat.is_upper_semimodular_element(u) && lat.is_lower_semimodular_element(u));
    }
    let again = SubalgebraLattice::build(&families::abelian(&gf(2), 2).unwrap(), &caps()).unwrap();
    assert_eq!(lat.fingerprint(), again.fingerprint());
    let dia = SubalgebraLattice::build(&families::diamond(&gf(2)).unwrap(), &caps()).unwrap();
    assert_ne!(lat.fingerprint(), dia.fingerprint());
    assert!(lattice::lattice_isomorphism(dia.order(), lat.order()).is_none());
    assert!(lattice::lattice_isomorphism(dia.order(), dia.order()).unwrap().is_identity());
}

#[test]
fn cyclic_three_lattice_shape() {
    // 0 < four lines of span{x^2, x^3} < span{x^2, x^3} < L
    let l = families::cyclic_algebra(&gf(3), 3, &[0, 0]).unwrap();
    let lat = SubalgebraLattice::build(&l, &caps()).unwrap();
    assert_eq!(lat.len(), 7);
    assert_eq!(lat.maximal_subalgebras().len(), 1);
    assert_eq!(lattice::lattice_automorphisms(lat.order(), 5000).unwrap().len(), 24);
    let chain = lattice::LatticeOrder::from_covers(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(lattice::lattice_automorphisms(&chain, 5000).unwrap().len(), 1);
}

#[test]
fn subspace_counts() {
    assert_eq!(lattice::enumerate_subspaces(&gf(2), 2, &caps()).unwrap().count(), 5);
    assert_eq!(lattice::enumerate_subspaces(&gf(2), 3, &caps()).unwrap().count(), 16);
    assert_eq!(lattice::enumerate_subspaces(&gf(3), 2, &caps()).unwrap().count(), 6);
    assert_eq!(lattice::enumerate_subspaces(&gf(5), 0, &caps()).unwrap().count(), 1);
    let lat = SubalgebraLattice::build(&families::abelian(&gf(2), 3).unwrap(), &caps()).unwrap();
    assert_eq!(lat.len(), 16);
}

#[test]
fn family_dispatch_matches_constructors() {
    let f = gf(5);
    let via = families::build_family(&f, &FamilyParams::Cyclic { n: 2, alphas: vec!["1".into()] }).unwrap();
    assert_eq!(via, families::cyclic_algebra(&f, 2, &[1]).unwrap());
    assert_eq!(families::build_family(&f, &FamilyParams::Heisenberg).unwrap(), families::heisenberg(&f).unwrap());
    assert!(families::build_family(&gf(2), &FamilyParams::Sl2).is_err());
    assert_eq!(f.spec().to_string(), "GF(5)");
}
