use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AtlasOptions, ClusterReport, CorpusEntry};
use crate::algebra::StructureTable;
use crate::families;
use crate::field::{Field, PrimeField};
use crate::invariants;
use crate::lattice::{enumerate_isomorphisms, lattice_isomorphism, lattice_isomorphism_pinned, SubalgebraLattice};
use crate::lbz::{self, LbzDocument};
use crate::subspace::Subspace;

pub const THEOREM_IDS: [&str; 11] = [
    "kernel-basic",
    "min-ideal-dichotomy",
    "nilpotent-cyclic-unique-max",
    "nilpotent-frattini",
    "split-extension-cyclic",
    "barnes-kernel",
    "lie-vs-nonlie",
    "cyclic-chain",
    "radical-intersection",
    "nilpmin-central",
    "almost-nilpotent-latiso",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Asserted,
    Exploratory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Ids of the algebras involved, in the order the detail refers to them.
    pub subjects: Vec<String>,
    pub field: String,
    pub detail: String,
    /// The algebras themselves, replayable through the LBZ parser.
    pub tables: Vec<LbzDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub mode: Mode,
    pub population: usize,
    pub passes: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn new(id: &str, mode: Mode) -> Self {
        TheoremReport {
            theorem_id: id.into(),
            mode,
            population: 0,
            passes: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Asserted reports fail on any violation; exploratory ones never do.
    pub fn ok(&self) -> bool {
        self.mode == Mode::Exploratory || self.violations.is_empty()
    }

    fn tally(&mut self, outcomes: Vec<Option<Violation>>) {
        self.population += outcomes.len();
        for o in outcomes {
            match o {
                None => self.passes += 1,
                Some(v) => self.violations.push(v),
            }
        }
    }
}

fn violation(entries: &[&CorpusEntry], detail: String) -> Violation {
    Violation {
        subjects: entries.iter().map(|e| e.id.clone()).collect(),
        field: entries[0].field().spec().to_string(),
        detail,
        tables: entries.iter().map(|e| lbz::to_document(&e.table)).collect(),
    }
}

fn check(entry: &CorpusEntry, failures: Vec<String>) -> Option<Violation> {
    (!failures.is_empty()).then(|| violation(&[entry], failures.join("; ")))
}

fn node_of(lat: &SubalgebraLattice<PrimeField>, u: &Subspace<PrimeField>) -> usize {
    lat.index_of(u).expect("subalgebras are lattice nodes")
}

pub fn kernel_basic(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let i = &e.profile.kernel;
    let mut fail = Vec::new();
    if !l.is_ideal(i) {
        fail.push("kernel is not an ideal".to_string());
    }
    if !l.product_space(&l.whole(), i).expect("ambient").is_zero() {
        fail.push("[L,I] != 0".into());
    }
    match l.quotient(i) {
        Ok(q) if q.algebra.is_lie() => {}
        _ => fail.push("L/I is not Lie".into()),
    }
    for j in invariants::ideals_in(&e.lattice) {
        let lie = l.quotient(j).map(|q| q.algebra.is_lie()).unwrap_or(false);
        if lie && !j.contains(i) {
            fail.push(format!("ideal {} has Lie quotient but misses I", l.render_subspace(j)));
        }
    }
    check(e, fail)
}

pub fn min_ideal_dichotomy(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let fail = e
        .profile
        .minimal_ideals
        .as_ref()
        .expect("prime field")
        .iter()
        .filter(|a| !invariants::min_ideal_dichotomy(l, a))
        .map(|a| format!("minimal ideal {} has [L,A] != 0 and is not antisymmetric", l.render_subspace(a)))
        .collect();
    check(e, fail)
}

pub fn unique_max(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let maxes = e.lattice.maximal_subalgebras();
    let mut fail = Vec::new();
    if maxes.len() != 1 || *maxes[0] != e.profile.kernel {
        fail.push(format!(
            "maximal subalgebras {:?}, kernel {}",
            maxes.iter().map(|m| l.render_subspace(m)).collect::<Vec<_>>(),
            l.render_subspace(&e.profile.kernel)
        ));
    }
    if let Some(x) = &e.profile.cyclic_generator {
        if maxes.iter().any(|m| m.contains_vector(x)) {
            fail.push(format!("generator {} lies in a maximal subalgebra", l.render_vector(x)));
        }
    }
    check(e, fail)
}

pub fn nilpotent_frattini(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let phi = e.profile.frattini.as_ref().expect("prime field");
    check(
        e,
        if *phi == e.profile.square {
            vec![]
        } else {
            vec![format!("phi = {}, L^2 = {}", l.render_subspace(phi), l.render_subspace(&e.profile.square))]
        },
    )
}

/// Hypotheses and conclusion for `L = A + Fx` built by
/// [`families::split_extension`] (A = all but the last basis vector).
pub fn split_cyclic(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let n = l.dim();
    let a = l.span(&(0..n - 1).map(|i| l.basis_vector(i)).collect::<Vec<_>>()).expect("ambient");
    let x = l.basis_vector(n - 1);
    let mut fail = Vec::new();
    let minimal = e.profile.minimal_ideals.as_ref().expect("prime field");
    if !minimal.contains(&a) {
        fail.push("A is not a minimal ideal".into());
    }
    if !l.product_space(&a, &a).expect("ambient").is_zero() {
        fail.push("A is not abelian".into());
    }
    if !l.product_space(&l.whole(), &a).expect("ambient").is_zero() {
        fail.push("[L,A] != 0".into());
    }
    if !crate::linalg::is_zero_vector(l.field(), &l.bracket(&x, &x).expect("ambient")) {
        fail.push("x^2 != 0".into());
    }
    if l.is_lie() {
        fail.push("L is Lie".into());
    }
    if !fail.is_empty() {
        fail.insert(0, "hypotheses not met".into());
    } else {
        if e.profile.flags.is_cyclic != "yes" {
            fail.push("L is not cyclic".into());
        }
        if e.profile.kernel != a {
            fail.push(format!("I = {} differs from A", l.render_subspace(&e.profile.kernel)));
        }
    }
    check(e, fail)
}

pub fn cyclic_chain(e: &CorpusEntry) -> Option<Violation> {
    let (lo, hi) = e.lattice.maximal_chain_lengths();
    let d = e.dim();
    check(
        e,
        if (lo, hi) == (d, d) {
            vec![]
        } else {
            vec![format!("maximal chain lengths ({lo}, {hi}) for dimension {d}")]
        },
    )
}

pub fn radical_intersection(e: &CorpusEntry) -> Option<Violation> {
    let l = e.analysed();
    let r = e.profile.radical.as_ref().expect("prime field");
    let gamma = invariants::maximal_solvable_subalgebras(&e.lattice)
        .iter()
        .fold(l.whole(), |acc, s| acc.intersection(s));
    check(
        e,
        if gamma == *r {
            vec![]
        } else {
            vec![format!(
                "radical {} but intersection of maximal solvable subalgebras {}",
                l.render_subspace(r),
                l.render_subspace(&gamma)
            )]
        },
    )
}

fn class_partners<'a>(clusters: &'a ClusterReport, i: usize) -> impl Iterator<Item = usize> + 'a {
    clusters.classes[clusters.class_of[i]].iter().copied()
}

/// Ordered lattice-isomorphic pairs `(L, L*)` with `dim L >= 3`, `L = L*`
/// allowed: is there an isomorphism moving the kernel node off `I*`?
fn barnes_kernel(corpus: &[CorpusEntry], clusters: &ClusterReport) -> TheoremReport {
    let mut rep = TheoremReport::new("barnes-kernel", Mode::Exploratory);
    let pairs: Vec<(usize, usize)> = (0..corpus.len())
        .filter(|&i| corpus[i].dim() >= 3)
        .flat_map(|i| class_partners(clusters, i).map(move |j| (i, j)))
        .collect();
    let outcomes = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let (a, b) = (&corpus[i], &corpus[j]);
            let ki = node_of(&a.lattice, &a.profile.kernel);
            let kj = node_of(&b.lattice, &b.profile.kernel);
            (0..b.lattice.len()).filter(|&t| t != kj).find_map(|t| {
                lattice_isomorphism_pinned(a.lattice.order(), b.lattice.order(), &[(ki, t)]).map(|m| {
                    violation(
                        &[a, b],
                        format!(
                            "lattice isomorphism sends I = {} to {} instead of I* = {}; map {:?}",
                            a.analysed().render_subspace(&a.profile.kernel),
                            b.analysed().render_subspace(b.lattice.node(t)),
                            b.analysed().render_subspace(&b.profile.kernel),
                            m.as_slice()
                        ),
                    )
                })
            })
        })
        .collect();
    rep.tally(outcomes);
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).expect("prime");
        let d = families::diamond(&f).expect("diamond");
        let lat = SubalgebraLattice::build(&d, &Default::default()).expect("small");
        let i = d.span(&[vec![1, 0]]).expect("ambient");
        let ba = d.span(&[vec![p as u32 - 1, 1]]).expect("ambient");
        let swapped = lattice_isomorphism_pinned(lat.order(), lat.order(), &[(node_of(&lat, &i), node_of(&lat, &ba))]);
        rep.notes.push(format!(
            "dim-2 exception, diamond over GF({p}): automorphism exchanging I = span{{a}} and span{{b - a}} {}",
            if swapped.is_some() { "exists" } else { "NOT found" }
        ));
    }
    rep
}

fn lie_vs_nonlie(corpus: &[CorpusEntry], clusters: &ClusterReport) -> TheoremReport {
    let mut rep = TheoremReport::new("lie-vs-nonlie", Mode::Exploratory);
    let outcomes = (0..corpus.len())
        .filter(|&i| !corpus[i].analysed().is_lie())
        .map(|i| {
            class_partners(clusters, i)
                .find(|&j| corpus[j].analysed().is_lie())
                .map(|j| violation(&[&corpus[i], &corpus[j]], "non-Lie algebra lattice-isomorphic to a Lie algebra".into()))
        })
        .collect();
    rep.tally(outcomes);
    rep
}

/// For nilpotent non-Lie `L`, one-dimensional minimal ideals `W` inside `I`
/// and lattice isomorphisms `L -> L*`: is `W*` a minimal ideal inside `Z(L*)`?
fn nilpmin_central(corpus: &[CorpusEntry], clusters: &ClusterReport, opts: &AtlasOptions) -> TheoremReport {
    let mut rep = TheoremReport::new("nilpmin-central", Mode::Exploratory);
    let mut cases = Vec::new();
    for (i, e) in corpus.iter().enumerate() {
        if !e.profile.flags.is_nilpotent || e.profile.kernel.is_zero() {
            continue;
        }
        for w in e.profile.minimal_ideals.as_ref().expect("prime field") {
            if w.dim() == 1 && e.profile.kernel.contains(w) {
                for j in class_partners(clusters, i) {
                    cases.push((i, w.clone(), j));
                }
            }
        }
    }
    let outcomes = cases
        .into_par_iter()
        .map(|(i, w, j)| {
            let (a, b) = (&corpus[i], &corpus[j]);
            let wn = node_of(&a.lattice, &w);
            let maps = enumerate_isomorphisms(a.lattice.order(), b.lattice.order(), &[], Some(opts.iso_limit));
            let minimal = b.profile.minimal_ideals.as_ref().expect("prime field");
            maps.iter().find_map(|m| {
                let image = b.lattice.node(m.apply(wn));
                let ok = minimal.contains(image) && b.profile.centre.contains(image);
                (!ok).then(|| {
                    violation(
                        &[a, b],
                        format!(
                            "W = {} maps to {}, which is {}",
                            a.analysed().render_subspace(&w),
                            b.analysed().render_subspace(image),
                            if minimal.contains(image) { "a minimal ideal outside the centre" } else { "not a minimal ideal" }
                        ),
                    )
                })
            })
        })
        .collect();
    rep.tally(outcomes);
    rep
}

fn almost_nilpotent_latiso(corpus: &[CorpusEntry], opts: &AtlasOptions) -> TheoremReport {
    let mut rep = TheoremReport::new("almost-nilpotent-latiso", Mode::Exploratory);
    let mut fields: Vec<u32> = corpus.iter().map(|e| e.field().modulus()).collect();
    fields.sort();
    fields.dedup();
    let shapes: [&[usize]; 4] = [&[1], &[2], &[1, 1], &[3]];
    let mut instances = Vec::new();
    for &p in &fields {
        let f = PrimeField::new(p as u64).expect("prime");
        for rs in shapes {
            let l = families::almost_nilpotent(&f, rs).expect("valid shape");
            if corpus.iter().any(|e| e.field().modulus() == p && e.dim() == l.dim()) {
                instances.push((rs.to_vec(), l));
            }
        }
    }
    let outcomes = instances
        .into_par_iter()
        .map(|(rs, l)| {
            let e = CorpusEntry::new(l, false, opts).expect("small instance");
            let partner = corpus.iter().find(|c| {
                c.field() == e.field()
                    && c.analysed().is_lie()
                    && c.profile.flags.is_nilpotent
                    && c.fingerprint == e.fingerprint
                    && lattice_isomorphism(e.lattice.order(), c.lattice.order()).is_some()
            });
            (partner, e, rs)
        })
        .collect::<Vec<_>>();
    rep.population = outcomes.len();
    for (partner, e, rs) in outcomes {
        match partner {
            Some(c) => {
                rep.passes += 1;
                rep.notes.push(format!("almost nilpotent {rs:?} over {}: nilpotent partner {}", e.field().spec(), c.id));
            }
            None => rep.violations.push(violation(&[&e], format!("almost nilpotent {rs:?}: no nilpotent Lie algebra in the corpus has an isomorphic lattice"))),
        }
    }
    rep
}

fn per_entry(
    id: &str,
    mode: Mode,
    corpus: &[CorpusEntry],
    select: impl Fn(&CorpusEntry) -> bool + Sync,
    test: impl Fn(&CorpusEntry) -> Option<Violation> + Sync,
) -> TheoremReport {
    let mut rep = TheoremReport::new(id, mode);
    rep.tally(corpus.par_iter().filter(|e| select(e)).map(&test).collect());
    rep
}

/// Instances for the split-extension check, over each prime of the corpus.
pub fn split_cyclic_entries(primes: &[u32], max_dim_a: usize, opts: &AtlasOptions) -> Vec<CorpusEntry> {
    primes
        .iter()
        .flat_map(|&p| {
            let f = PrimeField::new(p as u64).expect("prime");
            families::split_extension_instances(&f, max_dim_a)
        })
        .map(|(_, l)| CorpusEntry::new(l, false, opts).expect("small instance"))
        .collect()
}

fn cyclic_family_entries(primes: &[u32], opts: &AtlasOptions) -> Vec<CorpusEntry> {
    primes
        .iter()
        .flat_map(|&p| {
            let f = PrimeField::new(p as u64).expect("prime");
            (2..=3).map(move |n| families::cyclic_algebra(&f, n, &vec![0; n - 1]).expect("cyclic"))
        })
        .map(|l: StructureTable<PrimeField>| CorpusEntry::new(l, false, opts).expect("small instance"))
        .collect()
}

/// Runs every theorem check over `corpus` (plus constructed instances where
/// a check needs them), in the fixed order of [`THEOREM_IDS`].
pub fn run_theorem_suite(corpus: &[CorpusEntry], clusters: &ClusterReport, opts: &AtlasOptions) -> Vec<TheoremReport> {
    let mut primes: Vec<u32> = corpus.iter().map(|e| e.field().modulus()).collect();
    primes.sort();
    primes.dedup();
    let all = |_: &CorpusEntry| true;
    let nilpotent = |e: &CorpusEntry| e.profile.flags.is_nilpotent;
    let nilpotent_cyclic = |e: &CorpusEntry| e.profile.flags.is_nilpotent && e.profile.flags.is_cyclic == "yes";

    let mut unique_max_population: Vec<CorpusEntry> = corpus.iter().filter(|e| nilpotent_cyclic(e)).cloned().collect();
    unique_max_population.extend(cyclic_family_entries(&primes, opts));
    let split = split_cyclic_entries(&primes, 2, opts);

    vec![
        per_entry("kernel-basic", Mode::Asserted, corpus, all, kernel_basic),
        per_entry("min-ideal-dichotomy", Mode::Asserted, corpus, all, min_ideal_dichotomy),
        per_entry("nilpotent-cyclic-unique-max", Mode::Asserted, &unique_max_population, all, unique_max),
        per_entry("nilpotent-frattini", Mode::Asserted, corpus, nilpotent, nilpotent_frattini),
        per_entry("split-extension-cyclic", Mode::Asserted, &split, all, split_cyclic),
        barnes_kernel(corpus, clusters),
        lie_vs_nonlie(corpus, clusters),
        per_entry("cyclic-chain", Mode::Exploratory, corpus, |e| e.profile.flags.is_cyclic == "yes", cyclic_chain),
        per_entry("radical-intersection", Mode::Exploratory, corpus, all, radical_intersection),
        nilpmin_central(corpus, clusters, opts),
        almost_nilpotent_latiso(corpus, opts),
    ]
}

