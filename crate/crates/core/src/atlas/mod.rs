//! Small-algebra atlas: exhaustive enumeration up to isomorphism over GF(p),
//! seeded sampling, algebra isomorphism by brute force over GL(n, p),
//! fingerprint clustering and the theorem report suite.

mod cluster;
mod gl;
mod report;
mod theorems;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{default_labels, Convention, IdentityVariant, StructureTable};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::invariants::{self, ProfileOptions, StructureProfile};
use crate::lattice::{LatticeCaps, LatticeFingerprint, SubalgebraLattice};
use crate::linalg::Matrix;

pub use cluster::{cluster_by_fingerprint, Cluster, ClusterReport, LatticePair};
pub use gl::{gl_elements, gl_order, transform_flat};
pub use report::{AtlasReport, EntrySummary, ReportHeader};
pub use report::{run_atlas, AtlasPlan};
pub use theorems::{split_cyclic_entries, run_theorem_suite, Mode, TheoremReport, Violation, THEOREM_IDS};

/// Single-entry checks behind the asserted reports.
pub mod checks {
    pub use super::theorems::{
        cyclic_chain, kernel_basic, min_ideal_dichotomy, nilpotent_frattini, split_cyclic, radical_intersection, unique_max,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasOptions {
    pub caps: LatticeCaps,
    pub max_gl_order: u128,
    /// Cap on the number of kernel-adapted tables scanned by full enumeration.
    pub max_tables: u128,
    pub rational_height: u32,
    pub seed: u64,
    pub variant: IdentityVariant,
    /// Isomorphisms examined per lattice pair by pair-wise reports.
    pub iso_limit: usize,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        AtlasOptions {
            caps: LatticeCaps::default(),
            max_gl_order: 1_000_000,
            max_tables: 1_000_000,
            rational_height: 3,
            seed: 0,
            variant: IdentityVariant::Right,
            iso_limit: 16,
        }
    }
}

impl AtlasOptions {
    fn profile_options(&self) -> ProfileOptions {
        ProfileOptions {
            caps: self.caps,
            rational_height: self.rational_height,
        }
    }
}

/// One algebra of the atlas with everything the reports need.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub table: StructureTable<PrimeField>,
    pub profile: StructureProfile<PrimeField>,
    pub fingerprint: LatticeFingerprint,
    /// Marks a verified representative of its isomorphism class.
    pub iso_class_rep: bool,
    pub lattice: SubalgebraLattice<PrimeField>,
}

impl CorpusEntry {
    /// Invariants are computed on the right-convention form (the opposite
    /// of a left-convention table); subalgebras and ideals are the same.
    pub fn new(table: StructureTable<PrimeField>, iso_class_rep: bool, opts: &AtlasOptions) -> Result<Self> {
        let analysed = right_form(&table);
        let lattice = SubalgebraLattice::build(&analysed, &opts.caps)?;
        let profile = invariants::profile_with(&analysed, Some(&lattice), &opts.profile_options())?;
        Ok(CorpusEntry {
            id: table_id(&table),
            fingerprint: lattice.fingerprint(),
            table,
            profile,
            iso_class_rep,
            lattice,
        })
    }

    /// The table the invariants were computed on.
    pub fn analysed(&self) -> &StructureTable<PrimeField> {
        self.lattice.algebra()
    }

    pub fn field(&self) -> &PrimeField {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }
}

pub fn right_form(table: &StructureTable<PrimeField>) -> StructureTable<PrimeField> {
    match table.convention() {
        Convention::Right => table.clone(),
        Convention::Left => table.opposite(),
    }
}

/// Stable identifier: leading 16 hex digits of SHA-256 over the canonical
/// description of the table.
pub fn table_id<F: Field>(l: &StructureTable<F>) -> String {
    let f = l.field();
    let consts: Vec<String> = l.consts().iter().map(|c| f.format(c)).collect();
    let text = format!("{}|{}|{}|{}", f.spec(), l.convention().as_str(), l.dim(), consts.join(","));
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Free parameters of a kernel-adapted right Leibniz table: the kernel is
/// spanned by the last `d` basis vectors, right products with kernel
/// vectors vanish, squares and symmetrised products lie in the kernel, and
/// the kernel is an ideal.
struct AdaptedShape {
    n: usize,
    d: usize,
}

impl AdaptedShape {
    fn m(&self) -> usize {
        self.n - self.d
    }

    fn param_count(&self) -> usize {
        let (n, d, m) = (self.n, self.d, self.m());
        m * (m.saturating_sub(1)) / 2 * (n + d) + m * d + d * d * m
    }

    fn build(&self, p: u32, params: &[u32]) -> Vec<u32> {
        let (n, m) = (self.n, self.m());
        let mut c = vec![0u32; n * n * n];
        let mut it = params.iter().copied();
        let mut take = || it.next().expect("parameter count");
        for i in 0..m {
            for j in i + 1..m {
                let (ij, ji) = ((i * n + j) * n, (j * n + i) * n);
                for k in 0..n {
                    let v = take();
                    c[ij + k] = v;
                    c[ji + k] = (p - v) % p;
                }
                for k in m..n {
                    c[ji + k] = (c[ji + k] + take()) % p;
                }
            }
        }
        for i in 0..m {
            let ii = (i * n + i) * n;
            for k in m..n {
                c[ii + k] = take();
            }
        }
        for i in m..n {
            for j in 0..m {
                let ij = (i * n + j) * n;
                for k in m..n {
                    c[ij + k] = take();
                }
            }
        }
        c
    }
}

fn digits(mut idx: u128, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % p as u128) as u32;
        idx /= p as u128;
    }
    out
}

fn kernel_is_tail(l: &StructureTable<PrimeField>, d: usize) -> bool {
    let k = invariants::kernel_span(l);
    let n = l.dim();
    k.dim() == d && k.pivots().iter().all(|&c| c >= n - d)
}

/// Number of kernel-adapted tables scanned by [`enumerate_algebras`].
pub fn adapted_table_count(dim: usize, p: u32) -> u128 {
    (0..dim.max(1))
        .map(|d| (p as u128).pow(AdaptedShape { n: dim, d }.param_count() as u32))
        .sum()
}

/// All right Leibniz tables found by the kernel-adapted scan, in scan order.
fn scan_right_tables(field: &PrimeField, dim: usize) -> Vec<Vec<u32>> {
    let p = field.modulus();
    let labels = default_labels(dim);
    let mut out = Vec::new();
    for d in 0..dim.max(1) {
        if dim == 0 {
            out.push(Vec::new());
            break;
        }
        let shape = AdaptedShape { n: dim, d };
        let k = shape.param_count();
        let total = (p as u128).pow(k as u32);
        let found: Vec<Vec<u32>> = (0..total as u64)
            .into_par_iter()
            .filter_map(|idx| {
                let c = shape.build(p, &digits(idx as u128, p, k));
                let l = StructureTable::from_flat(field, labels.clone(), c).expect("sizes");
                (l.satisfies(IdentityVariant::Right) && kernel_is_tail(&l, d)).then(|| l.consts().to_vec())
            })
            .collect();
        out.extend(found);
    }
    out
}

/// One canonical table (lexicographically least in its GL orbit) per
/// isomorphism class, in the order classes are first met.
fn dedup_orbits(field: &PrimeField, dim: usize, tables: Vec<Vec<u32>>, max_gl: u128) -> Result<Vec<Vec<u32>>> {
    let group = gl_elements(field, dim, max_gl)?;
    let p = field.modulus();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for t in tables {
        if seen.contains(&t) {
            continue;
        }
        let orbit: Vec<Vec<u32>> = group.par_iter().map(|(g, ginv)| transform_flat(p, dim, &t, g, ginv)).collect();
        let rep = orbit.iter().min().expect("identity is in the group").clone();
        seen.extend(orbit);
        reps.push(rep);
    }
    Ok(reps)
}

fn canonical_form(field: &PrimeField, dim: usize, t: &[u32], max_gl: u128) -> Result<Vec<u32>> {
    let group = gl_elements(field, dim, max_gl)?;
    let p = field.modulus();
    Ok(group
        .par_iter()
        .map(|(g, ginv)| transform_flat(p, dim, t, g, ginv))
        .min()
        .expect("identity is in the group"))
}

/// Every Leibniz algebra of dimension `dim` over GF(p) satisfying
/// `variant`, one entry per isomorphism class, sorted by canonical table.
pub fn enumerate_algebras(dim: usize, p: u32, opts: &AtlasOptions) -> Result<Vec<CorpusEntry>> {
    let field = PrimeField::new(p as u64)?;
    let scanned = adapted_table_count(dim, p);
    if scanned > opts.max_tables {
        return Err(Error::CapExceeded {
            what: format!("kernel-adapted tables of dim {dim} over GF({p}); use sampling"),
            requested: scanned,
            cap: opts.max_tables,
        });
    }
    let order = gl_order(dim, p);
    if order > opts.max_gl_order {
        return Err(Error::CapExceeded {
            what: format!("|GL({dim},{p})| for isomorphism dedup"),
            requested: order,
            cap: opts.max_gl_order,
        });
    }
    let labels = default_labels(dim);
    let reps = dedup_orbits(&field, dim, scan_right_tables(&field, dim), opts.max_gl_order)?;
    let mut tables: Vec<StructureTable<PrimeField>> = match opts.variant {
        IdentityVariant::Right => reps
            .into_iter()
            .map(|c| StructureTable::from_flat(&field, labels.clone(), c))
            .collect::<Result<_>>()?,
        IdentityVariant::Symmetric => reps
            .into_iter()
            .map(|c| StructureTable::from_flat(&field, labels.clone(), c))
            .filter(|l| l.as_ref().map(|l| l.satisfies(IdentityVariant::Left)).unwrap_or(true))
            .collect::<Result<_>>()?,
        IdentityVariant::Left => reps
            .into_iter()
            .map(|c| {
                let opp = StructureTable::from_flat(&field, labels.clone(), c)?.opposite();
                let canon = canonical_form(&field, dim, opp.consts(), opts.max_gl_order)?;
                Ok(StructureTable::from_flat(&field, labels.clone(), canon)?.with_convention(Convention::Left))
            })
            .collect::<Result<_>>()?,
    };
    tables.sort_by(|a, b| a.consts().cmp(b.consts()));
    tables.par_iter().map(|l| CorpusEntry::new(l.clone(), true, opts)).collect()
}

/// `count` distinct algebras drawn from seeded random kernel-adapted
/// tables, each moved by a random change of basis. Not deduplicated up to
/// isomorphism.
pub fn sample_algebras(dim: usize, p: u32, count: usize, opts: &AtlasOptions) -> Result<Vec<CorpusEntry>> {
    let field = PrimeField::new(p as u64)?;
    if dim == 0 {
        return Err(Error::BadParams("sampling needs dim >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((dim as u64) << 32) ^ ((p as u64) << 40));
    let labels = default_labels(dim);
    let max_attempts = (count as u64).max(1) * 200_000;
    let mut seen = HashSet::new();
    let mut picked = Vec::new();
    let mut attempts = 0u64;
    while picked.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::CapExceeded {
                what: format!("sampling attempts for dim {dim} over GF({p})"),
                requested: attempts as u128,
                cap: max_attempts as u128,
            });
        }
        let shape = AdaptedShape { n: dim, d: rng.gen_range(0..dim) };
        let params: Vec<u32> = (0..shape.param_count()).map(|_| rng.gen_range(0..p)).collect();
        let c = shape.build(p, &params);
        let l = StructureTable::from_flat(&field, labels.clone(), c)?;
        if !l.satisfies(IdentityVariant::Right) {
            continue;
        }
        let (g, ginv) = loop {
            let g: Vec<u32> = (0..dim * dim).map(|_| rng.gen_range(0..p)).collect();
            if let Some(ginv) = gl::invert(p, dim, &g) {
                break (g, ginv);
            }
        };
        let moved = transform_flat(p, dim, l.consts(), &g, &ginv);
        let mut l = StructureTable::from_flat(&field, labels.clone(), moved)?;
        match opts.variant {
            IdentityVariant::Right => {}
            IdentityVariant::Symmetric => {
                if !l.satisfies(IdentityVariant::Left) {
                    continue;
                }
            }
            IdentityVariant::Left => l = l.opposite(),
        }
        if seen.insert(l.consts().to_vec()) {
            picked.push(l);
        }
    }
    picked.par_iter().map(|l| CorpusEntry::new(l.clone(), false, opts)).collect()
}

/// Cheap isomorphism invariants compared before any brute force.
pub fn invariant_signature(l: &StructureTable<PrimeField>) -> (bool, usize, usize, usize, Vec<usize>, Vec<usize>) {
    let r = right_form(l);
    (
        r.is_lie(),
        invariants::kernel_span(&r).dim(),
        invariants::centre(&r).dim(),
        invariants::square(&r).dim(),
        invariants::series(&r, invariants::SeriesKind::LowerCentral).dims(),
        invariants::series(&r, invariants::SeriesKind::Derived).dims(),
    )
}

/// A matrix `g` (columns = images of the basis of `l1`) giving an
/// isomorphism `l1 -> l2`, searched over all of GL(n, p).
pub fn algebra_isomorphic(
    l1: &StructureTable<PrimeField>,
    l2: &StructureTable<PrimeField>,
    max_gl_order: u128,
) -> Result<Option<Matrix<PrimeField>>> {
    if l1.field() != l2.field() {
        return Err(Error::MixedFields(l1.field().spec(), l2.field().spec()));
    }
    if l1.dim() != l2.dim() || l1.convention() != l2.convention() {
        return Ok(None);
    }
    let n = l1.dim();
    let p = l1.field().modulus();
    let order = gl_order(n, p);
    if order > max_gl_order {
        return Err(Error::CapExceeded {
            what: format!("|GL({n},{p})| for algebra isomorphism"),
            requested: order,
            cap: max_gl_order,
        });
    }
    if invariant_signature(l1) != invariant_signature(l2) {
        return Ok(None);
    }
    let group = gl_elements(l1.field(), n, max_gl_order)?;
    let found = group
        .par_iter()
        .find_first(|(g, _)| gl::is_homomorphism_flat(p, n, l1.consts(), l2.consts(), g));
    Ok(found.map(|(g, _)| g.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()))
}
