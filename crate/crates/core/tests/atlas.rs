use leibniz_core::atlas::{
    self, algebra_isomorphic, checks, enumerate_algebras, right_form, run_atlas, sample_algebras, AtlasOptions, AtlasPlan,
};
use leibniz_core::families;
use leibniz_core::lattice::{lattice_isomorphism, LatticeCaps, SubalgebraLattice};
use leibniz_core::{lbz, Convention, IdentityVariant, PrimeField, StructureTable, Subspace};

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn all_vectors(p: u32, u: &Subspace<PrimeField>) -> Vec<Vec<u32>> {
    let k = u.dim();
    let n = u.ambient_dim();
    (0..(p as u64).pow(k as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for row in u.basis() {
                let c = (idx % p as u64) as u32;
                idx /= p as u64;
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + c * r) % p;
                }
            }
            v
        })
        .collect()
}

/// Largest ideal inside the intersection of the maximal subalgebras, by
/// repeatedly discarding vectors whose products leave the current space.
fn frattini_by_core(l: &StructureTable<PrimeField>) -> Subspace<PrimeField> {
    let p = l.field().modulus();
    let lat = SubalgebraLattice::build(l, &LatticeCaps::default()).unwrap();
    let mut m = lat.maximal_subalgebras().into_iter().fold(l.whole(), |acc, s| acc.intersection(s));
    loop {
        let keep: Vec<Vec<u32>> = all_vectors(p, &m)
            .into_iter()
            .filter(|v| {
                (0..l.dim()).all(|i| {
                    let b = l.basis_vector(i);
                    m.contains_vector(&l.bracket(v, &b).unwrap()) && m.contains_vector(&l.bracket(&b, v).unwrap())
                })
            })
            .collect();
        let next = l.span(&keep).unwrap();
        if next == m {
            return m;
        }
        m = next;
    }
}

#[test]
fn frattini_matches_iterative_core() {
    let opts = AtlasOptions::default();
    for p in [2, 3] {
        for d in 1..=3 {
            for e in enumerate_algebras(d, p, &opts).unwrap() {
                let phi = e.profile.frattini.clone().unwrap();
                assert_eq!(phi, frattini_by_core(&e.table), "entry {}", e.id);
            }
        }
    }
}

#[test]
fn dim2_gf2_contains_the_named_algebras() {
    let f = gf(2);
    let corpus = enumerate_algebras(2, 2, &AtlasOptions::default()).unwrap();
    let named = [
        families::diamond(&f).unwrap(),
        families::cyclic_algebra(&f, 2, &[0]).unwrap(),
        families::cyclic_algebra(&f, 2, &[1]).unwrap(),
        families::abelian(&f, 2).unwrap(),
        families::almost_abelian(&f, 2).unwrap(),
    ];
    for l in &named {
        let hits = corpus.iter().filter(|e| algebra_isomorphic(l, &e.table, 1_000_000).unwrap().is_some()).count();
        assert_eq!(hits, 1, "{}", lbz::emit(l));
    }
    // the diamond is cyclic(2, 1)
    assert!(algebra_isomorphic(&named[0], &named[2], 1_000_000).unwrap().is_some());
}

#[test]
fn algebra_isomorphism_examples() {
    let f = gf(3);
    let d = families::diamond(&f).unwrap();
    let relabeled = d.change_basis(&[vec![0, 1], vec![1, 0]]).unwrap();
    assert!(algebra_isomorphic(&d, &relabeled, 1_000_000).unwrap().is_some());
    assert!(algebra_isomorphic(&d, &families::abelian(&f, 2).unwrap(), 1_000_000).unwrap().is_none());
    let c = families::cyclic_algebra(&f, 3, &[0, 0]).unwrap();
    let h = families::heisenberg(&f).unwrap();
    assert!(algebra_isomorphic(&c, &h, 1_000_000).unwrap().is_none());
    assert!(algebra_isomorphic(&c, &h, 10).is_err());
}

#[test]
fn abelian_and_almost_abelian_share_a_lattice() {
    let f = gf(2);
    let caps = LatticeCaps::default();
    let a = families::abelian(&f, 2).unwrap();
    let b = families::almost_abelian(&f, 2).unwrap();
    let (la, lb) = (SubalgebraLattice::build(&a, &caps).unwrap(), SubalgebraLattice::build(&b, &caps).unwrap());
    assert_eq!(la.len(), 5);
    assert!(lattice_isomorphism(la.order(), lb.order()).is_some());
    assert!(algebra_isomorphic(&a, &b, 1_000_000).unwrap().is_none());
}

#[test]
fn asserted_checks_on_named_entries() {
    let opts = AtlasOptions::default();
    let c = families::cyclic_algebra(&gf(3), 3, &[0, 0]).unwrap();
    let e = atlas::CorpusEntry::new(c, false, &opts).unwrap();
    assert!(checks::unique_max(&e).is_none());
    assert!(checks::nilpotent_frattini(&e).is_none());
    assert!(checks::kernel_basic(&e).is_none());
    for e in enumerate_algebras(2, 2, &opts).unwrap() {
        assert!(checks::kernel_basic(&e).is_none());
        assert!(checks::min_ideal_dichotomy(&e).is_none());
    }
}

#[test]
fn split_extension_instances_are_cyclic() {
    let entries = atlas::split_cyclic_entries(&[2, 3, 5], 3, &AtlasOptions::default());
    assert!(entries.len() >= 10);
    for e in &entries {
        assert!(checks::split_cyclic(e).is_none(), "{}", lbz::emit(&e.table));
    }
}

#[test]
fn sampling_is_reproducible() {
    let opts = AtlasOptions { seed: 7, ..AtlasOptions::default() };
    let a = sample_algebras(3, 3, 20, &opts).unwrap();
    let b = sample_algebras(3, 3, 20, &opts).unwrap();
    assert_eq!(a.len(), 20);
    assert!(a.iter().zip(&b).all(|(x, y)| x.table == y.table));
    assert!(a.iter().all(|e| e.table.satisfies(IdentityVariant::Right)));
    let other = sample_algebras(3, 3, 20, &AtlasOptions { seed: 8, ..opts }).unwrap();
    assert!(a.iter().zip(&other).any(|(x, y)| x.table != y.table));
}

#[test]
fn left_convention_corpus_mirrors_the_right_one() {
    let left = AtlasOptions {
        variant: IdentityVariant::Left,
        ..AtlasOptions::default()
    };
    let l = enumerate_algebras(2, 3, &left).unwrap();
    let r = enumerate_algebras(2, 3, &AtlasOptions::default()).unwrap();
    assert_eq!(l.len(), r.len());
    for e in &l {
        assert_eq!(e.table.convention(), Convention::Left);
        assert!(e.table.check_identity(IdentityVariant::Left).holds);
        let rf = right_form(&e.table);
        assert!(r.iter().any(|x| algebra_isomorphic(&rf, &x.table, 1_000_000).unwrap().is_some()));
    }
}

#[test]
fn atlas_report_for_dim2_gf2() {
    let plan = AtlasPlan {
        max_dim: 2,
        primes: vec![2],
        sample_dims: vec![],
        samples_per_case: 0,
    };
    let (corpus, report) = run_atlas(&plan, &AtlasOptions::default()).unwrap();
    assert_eq!(corpus.len(), 5);
    assert!(report.ok);
    let kb = report.theorems.iter().find(|t| t.theorem_id == "kernel-basic").unwrap();
    assert_eq!((kb.population, kb.passes), (5, 5));
    assert!(kb.violations.is_empty());
    assert_eq!(report.theorems.len(), atlas::THEOREM_IDS.len());
}

#[test]
fn violations_replay_through_lbz() {
    let plan = AtlasPlan {
        max_dim: 3,
        primes: vec![2],
        sample_dims: vec![],
        samples_per_case: 0,
    };
    let opts = AtlasOptions::default();
    let (_, report) = run_atlas(&plan, &opts).unwrap();
    let chain = report.theorems.iter().find(|t| t.theorem_id == "cyclic-chain").unwrap();
    for v in &chain.violations {
        let lbz::AnyTable::Prime(t) = lbz::from_document(&v.tables[0]).unwrap() else {
            panic!("prime field expected")
        };
        assert_eq!(atlas::table_id(&t), v.subjects[0]);
        let e = atlas::CorpusEntry::new(t, false, &opts).unwrap();
        assert_eq!(checks::cyclic_chain(&e).unwrap().detail, v.detail);
    }
}
