//! Structural invariants: kernel, centre, series, Frattini ideal, nilradical,
//! radical, minimal ideals, cyclicity, supersolvability.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{StructureTable, SubspaceKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::{LatticeCaps, SubalgebraLattice};
use crate::linalg::{self, Matrix, Vector};
use crate::subspace::Subspace;

/// Span of all squares: `b_i^2` and `[b_i,b_j] + [b_j,b_i]`.
pub fn leibniz_kernel<F: Field>(l: &StructureTable<F>) -> Result<Subspace<F>> {
    let variant = l.convention().variant();
    if !l.satisfies(variant) {
        return Err(Error::NotLeibniz(variant.as_str()));
    }
    Ok(kernel_span(l))
}

/// The polarized span of squares without checking the identity first.
pub fn kernel_span<F: Field>(l: &StructureTable<F>) -> Subspace<F> {
    let f = l.field();
    let n = l.dim();
    let mut rows: Vec<Vector<F>> = Vec::new();
    for i in 0..n {
        rows.push(l.product(i, i).to_vec());
        for j in i + 1..n {
            rows.push(linalg::add_vectors(f, l.product(i, j), l.product(j, i)));
        }
    }
    Subspace::span(f, n, &rows).expect("ambient length")
}

/// `{z : [z,x] = [x,z] = 0 for all x}`
pub fn centre<F: Field>(l: &StructureTable<F>) -> Subspace<F> {
    let n = l.dim();
    let mut eqs: Matrix<F> = Vec::new();
    for i in 0..n {
        let b = l.basis_vector(i);
        eqs.extend(l.right_mult_matrix(&b).expect("basis vector"));
        eqs.extend(l.left_mult_matrix(&b).expect("basis vector"));
    }
    let basis = linalg::nullspace(l.field(), &eqs, n);
    Subspace::span(l.field(), n, &basis).expect("ambient length")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

impl SeriesKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesKind::LowerCentral => "lower_central",
            SeriesKind::Derived => "derived",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesResult<F: Field> {
    pub kind: SeriesKind,
    /// `L` first; strictly decreasing, ending either at `0` or at the first
    /// repeated term.
    pub terms: Vec<Subspace<F>>,
    /// The series stopped at a nonzero term.
    pub stabilized: bool,
    /// Number of nonzero terms, when the series reaches zero.
    pub class_or_length: Option<usize>,
}

impl<F: Field> SeriesResult<F> {
    pub fn reaches_zero(&self) -> bool {
        self.class_or_length.is_some()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }
}

/// Series of the subalgebra `u` (use `l.whole()` for the algebra itself).
pub fn series_of<F: Field>(l: &StructureTable<F>, u: &Subspace<F>, kind: SeriesKind) -> SeriesResult<F> {
    let mut terms = vec![u.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            let class = terms.len() - 1;
            return SeriesResult {
                kind,
                terms,
                stabilized: false,
                class_or_length: Some(class),
            };
        }
        let next = match kind {
            SeriesKind::LowerCentral => l.product_space(last, u),
            SeriesKind::Derived => l.product_space(last, last),
        }
        .expect("same ambient");
        if &next == last {
            return SeriesResult {
                kind,
                terms,
                stabilized: true,
                class_or_length: None,
            };
        }
        terms.push(next);
    }
}

pub fn series<F: Field>(l: &StructureTable<F>, kind: SeriesKind) -> SeriesResult<F> {
    series_of(l, &l.whole(), kind)
}

pub fn is_nilpotent<F: Field>(l: &StructureTable<F>) -> bool {
    series(l, SeriesKind::LowerCentral).reaches_zero()
}

pub fn is_solvable<F: Field>(l: &StructureTable<F>) -> bool {
    series(l, SeriesKind::Derived).reaches_zero()
}

/// Nilpotency of `u` as an algebra in its own right.
pub fn is_nilpotent_subalgebra<F: Field>(l: &StructureTable<F>, u: &Subspace<F>) -> bool {
    series_of(l, u, SeriesKind::LowerCentral).reaches_zero()
}

pub fn is_solvable_subalgebra<F: Field>(l: &StructureTable<F>, u: &Subspace<F>) -> bool {
    series_of(l, u, SeriesKind::Derived).reaches_zero()
}

/// `L^2`
pub fn square<F: Field>(l: &StructureTable<F>) -> Subspace<F> {
    let w = l.whole();
    l.product_space(&w, &w).expect("same ambient")
}

pub fn maximal_subalgebras<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<Vec<Subspace<F>>> {
    let lat = SubalgebraLattice::build(l, caps)?;
    Ok(lat.maximal_subalgebras().into_iter().cloned().collect())
}

/// Ideals of the algebra, in canonical order.
pub fn ideals_in<F: Field>(lat: &SubalgebraLattice<F>) -> Vec<&Subspace<F>> {
    lat.ideal_indices().into_iter().map(|i| lat.node(i)).collect()
}

/// Intersection of all maximal subalgebras (the whole algebra if there are none).
pub fn maximal_intersection<F: Field>(lat: &SubalgebraLattice<F>) -> Subspace<F> {
    lat.maximal_subalgebras()
        .into_iter()
        .fold(lat.algebra().whole(), |acc, m| acc.intersection(m))
}

fn sum_all<'a, F: Field>(l: &StructureTable<F>, it: impl IntoIterator<Item = &'a Subspace<F>>) -> Subspace<F> {
    it.into_iter().fold(l.zero_subspace(), |acc, u| acc.sum(u))
}

pub fn frattini_in<F: Field>(lat: &SubalgebraLattice<F>) -> Result<Subspace<F>> {
    let l = lat.algebra();
    let meet = maximal_intersection(lat);
    let phi = sum_all(l, ideals_in(lat).into_iter().filter(|j| meet.contains(j)));
    if !l.is_ideal(&phi) {
        return Err(Error::MaximalityViolated(format!(
            "sum of ideals inside the maximal-subalgebra intersection is not an ideal: {}",
            l.render_subspace(&phi)
        )));
    }
    Ok(phi)
}

pub fn frattini_ideal<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<Subspace<F>> {
    frattini_in(&SubalgebraLattice::build(l, caps)?)
}

pub fn nilradical_in<F: Field>(lat: &SubalgebraLattice<F>) -> Result<Subspace<F>> {
    let l = lat.algebra();
    let n = sum_all(l, ideals_in(lat).into_iter().filter(|j| is_nilpotent_subalgebra(l, j)));
    if !is_nilpotent_subalgebra(l, &n) {
        return Err(Error::MaximalityViolated(format!(
            "sum of nilpotent ideals is not nilpotent: {}",
            l.render_subspace(&n)
        )));
    }
    Ok(n)
}

pub fn radical_in<F: Field>(lat: &SubalgebraLattice<F>) -> Result<Subspace<F>> {
    let l = lat.algebra();
    let r = sum_all(l, ideals_in(lat).into_iter().filter(|j| is_solvable_subalgebra(l, j)));
    if !is_solvable_subalgebra(l, &r) {
        return Err(Error::MaximalityViolated(format!(
            "sum of solvable ideals is not solvable: {}",
            l.render_subspace(&r)
        )));
    }
    Ok(r)
}

pub fn nilradical<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<Subspace<F>> {
    nilradical_in(&SubalgebraLattice::build(l, caps)?)
}

pub fn radical<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<Subspace<F>> {
    radical_in(&SubalgebraLattice::build(l, caps)?)
}

/// Minimal nonzero ideals.
pub fn minimal_ideals_in<F: Field>(lat: &SubalgebraLattice<F>) -> Vec<Subspace<F>> {
    let ideals: Vec<&Subspace<F>> = ideals_in(lat).into_iter().filter(|j| !j.is_zero()).collect();
    ideals
        .iter()
        .filter(|a| !ideals.iter().any(|b| b.dim() < a.dim() && a.contains(b)))
        .map(|a| (*a).clone())
        .collect()
}

pub fn minimal_ideals<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<Vec<Subspace<F>>> {
    Ok(minimal_ideals_in(&SubalgebraLattice::build(l, caps)?))
}

/// Subalgebras that are solvable and maximal among solvable subalgebras.
pub fn maximal_solvable_subalgebras<F: Field>(lat: &SubalgebraLattice<F>) -> Vec<Subspace<F>> {
    let l = lat.algebra();
    let solvable: Vec<usize> = (0..lat.len())
        .filter(|&i| is_solvable_subalgebra(l, lat.node(i)))
        .collect();
    solvable
        .iter()
        .filter(|&&i| !solvable.iter().any(|&j| j != i && lat.order().leq(i, j)))
        .map(|&i| lat.node(i).clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicVerdict<F: Field> {
    Yes(Vector<F>),
    No,
    Unknown,
}

impl<F: Field> CyclicVerdict<F> {
    pub fn is_yes(&self) -> bool {
        matches!(self, CyclicVerdict::Yes(_))
    }
}

pub fn generates<F: Field>(l: &StructureTable<F>, v: &[F::Elem]) -> bool {
    l.generated_subalgebra(&[v.to_vec()]).map(|u| u.is_full()).unwrap_or(false)
}

/// Searches for a single generator. Over GF(p) every vector is tried in
/// lexicographic order (last coordinate fastest); over the rationals only
/// vectors whose entries have numerator and denominator bounded by `height`.
pub fn is_cyclic<F: Field>(l: &StructureTable<F>, height: u32) -> CyclicVerdict<F> {
    let f = l.field();
    let n = l.dim();
    if n == 0 {
        return CyclicVerdict::Yes(Vec::new());
    }
    match f.elements() {
        Some(elems) => {
            let found = odometer(n, elems.len()).find_map(|digits| {
                let v: Vector<F> = digits.iter().map(|&d| elems[d].clone()).collect();
                (!linalg::is_zero_vector(f, &v) && generates(l, &v)).then_some(v)
            });
            found.map_or(CyclicVerdict::No, CyclicVerdict::Yes)
        }
        None => {
            for h in 1..=height.max(1) {
                let vals = height_values(h);
                let found = odometer(n, vals.len()).find_map(|digits| {
                    // only vectors with at least one entry of exact height h
                    if h > 1 && digits.iter().all(|&d| rational_height(&vals[d]) < h) {
                        return None;
                    }
                    let v: Vector<F> = digits
                        .iter()
                        .map(|&d| f.from_scalar(&crate::field::Scalar::rational(vals[d].clone())).expect("rational field"))
                        .collect();
                    (!linalg::is_zero_vector(f, &v) && generates(l, &v)).then_some(v)
                });
                if let Some(v) = found {
                    return CyclicVerdict::Yes(v);
                }
            }
            CyclicVerdict::Unknown
        }
    }
}

fn rational_height(q: &BigRational) -> u32 {
    let a: u32 = num_traits::ToPrimitive::to_u32(&num_traits::Signed::abs(q.numer())).unwrap_or(u32::MAX);
    let b: u32 = num_traits::ToPrimitive::to_u32(q.denom()).unwrap_or(u32::MAX);
    a.max(b)
}

/// Rationals `a/b` with `|a| <= h`, `1 <= b <= h`, sorted by height then value.
fn height_values(h: u32) -> Vec<BigRational> {
    let mut vals: Vec<BigRational> = Vec::new();
    for b in 1..=h as i64 {
        for a in -(h as i64)..=h as i64 {
            let q = BigRational::new(BigInt::from(a), BigInt::from(b));
            if !vals.contains(&q) {
                vals.push(q);
            }
        }
    }
    vals.sort_by(|x, y| rational_height(x).cmp(&rational_height(y)).then(x.cmp(y)));
    vals
}

/// All digit strings of length `n` over `0..base`, last digit fastest.
fn odometer(n: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![0usize; n]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < base {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

/// Nonzero vectors spanning ideals of dimension one, as the list of maximal
/// subspaces of common eigenvectors of all left and right multiplications.
pub fn one_dim_ideal_spaces<F: Field>(l: &StructureTable<F>) -> Vec<Subspace<F>> {
    let f = l.field();
    let n = l.dim();
    let mut candidates = vec![l.whole()];
    for i in 0..n {
        let b = l.basis_vector(i);
        for m in [l.right_mult_matrix(&b).expect("basis"), l.left_mult_matrix(&b).expect("basis")] {
            let mut next = Vec::new();
            for lambda in linalg::eigenvalues_in_field(f, &m) {
                let shifted: Matrix<F> = m
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        let mut row = row.clone();
                        row[r] = f.sub(&row[r], &lambda);
                        row
                    })
                    .collect();
                let eig = Subspace::span(f, n, &linalg::nullspace(f, &shifted, n)).expect("ambient");
                for w in &candidates {
                    let meet = w.intersection(&eig);
                    if !meet.is_zero() && !next.contains(&meet) {
                        next.push(meet);
                    }
                }
            }
            candidates = next;
            if candidates.is_empty() {
                return candidates;
            }
        }
    }
    candidates.sort();
    candidates
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersolvableResult<F: Field> {
    pub holds: bool,
    /// `0 = J_0 < J_1 < ... < J_n = L` with `dim J_i = i`, when `holds`.
    pub chain: Option<Vec<Subspace<F>>>,
}

/// Looks for a complete flag of ideals. Any one-dimensional ideal may be
/// taken as the first step, since chief factors do not depend on the series.
pub fn is_supersolvable<F: Field>(l: &StructureTable<F>) -> SupersolvableResult<F> {
    match flag_chain(l) {
        Some(chain) => SupersolvableResult {
            holds: true,
            chain: Some(chain),
        },
        None => SupersolvableResult {
            holds: false,
            chain: None,
        },
    }
}

fn flag_chain<F: Field>(l: &StructureTable<F>) -> Option<Vec<Subspace<F>>> {
    if l.dim() == 0 {
        return Some(vec![l.zero_subspace()]);
    }
    let spaces = one_dim_ideal_spaces(l);
    let first = spaces.first()?;
    let j = l.span(&first.basis()[..1]).expect("ambient");
    let q = l.quotient(&j).expect("one-dimensional common eigenvector spans an ideal");
    let rest = flag_chain(&q.algebra)?;
    let mut chain = vec![l.zero_subspace()];
    chain.extend(rest.iter().map(|w| q.preimage(w)));
    Some(chain)
}

/// Only ideals `0`, `I`, `L`, and `L^2 != I`.
pub fn is_simple_in<F: Field>(lat: &SubalgebraLattice<F>) -> Result<bool> {
    let l = lat.algebra();
    let kernel = leibniz_kernel(l)?;
    if square(l) == kernel {
        return Ok(false);
    }
    Ok(ideals_in(lat).into_iter().all(|j| j.is_zero() || j.is_full() || *j == kernel))
}

pub fn is_simple<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<bool> {
    if square(l) == leibniz_kernel(l)? {
        return Ok(false);
    }
    is_simple_in(&SubalgebraLattice::build(l, caps)?)
}

/// `R(L) = I`
pub fn is_semisimple_in<F: Field>(lat: &SubalgebraLattice<F>) -> Result<bool> {
    Ok(radical_in(lat)? == leibniz_kernel(lat.algebra())?)
}

pub fn is_semisimple<F: Field>(l: &StructureTable<F>, caps: &LatticeCaps) -> Result<bool> {
    is_semisimple_in(&SubalgebraLattice::build(l, caps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiAbelianClass {
    Abelian,
    AlmostAbelian,
    Neither,
}

impl QuasiAbelianClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuasiAbelianClass::Abelian => "abelian",
            QuasiAbelianClass::AlmostAbelian => "almost_abelian",
            QuasiAbelianClass::Neither => "neither",
        }
    }
}

/// For Lie algebras: abelian, or `L = L^2 + Fa` with `L^2` abelian and
/// right multiplication by `a` acting on `L^2` as a nonzero scalar.
pub fn quasi_abelian_class<F: Field>(l: &StructureTable<F>) -> QuasiAbelianClass {
    if !l.is_lie() {
        return QuasiAbelianClass::Neither;
    }
    let f = l.field();
    let sq = square(l);
    if sq.is_zero() {
        return QuasiAbelianClass::Abelian;
    }
    if sq.dim() + 1 != l.dim() || !l.product_space(&sq, &sq).expect("ambient").is_zero() {
        return QuasiAbelianClass::Neither;
    }
    let a = (0..l.dim())
        .map(|i| l.basis_vector(i))
        .find(|b| !sq.contains_vector(b))
        .expect("codimension one");
    let first = l.bracket(&sq.basis()[0], &a).expect("ambient");
    let k = sq.basis()[0]
        .iter()
        .zip(&first)
        .find(|(e, _)| !f.is_zero(e))
        .map(|(e, v)| f.mul(v, &f.inv(e).expect("nonzero")))
        .expect("nonzero basis vector");
    let scalar = !f.is_zero(&k)
        && sq.basis().iter().all(|e| {
            let image = l.bracket(e, &a).expect("ambient");
            image == linalg::scale(f, &k, e)
        });
    if scalar {
        QuasiAbelianClass::AlmostAbelian
    } else {
        QuasiAbelianClass::Neither
    }
}

/// Whether every subspace is a subalgebra (the lattice is all subspaces).
pub fn every_subspace_is_subalgebra<F: Field>(lat: &SubalgebraLattice<F>) -> bool {
    let q = lat.algebra().field().spec().characteristic() as u64;
    lat.len() as u128 == crate::lattice::subspace_count(lat.algebra().dim(), q)
}

/// Dichotomy for an ideal `a`: `[L,A] = 0` or `[x,a] = -[a,x]`.
pub fn min_ideal_dichotomy<F: Field>(l: &StructureTable<F>, a: &Subspace<F>) -> bool {
    let f = l.field();
    let whole = l.whole();
    if l.product_space(&whole, a).expect("ambient").is_zero() {
        return true;
    }
    (0..l.dim()).all(|i| {
        let x = l.basis_vector(i);
        a.basis().iter().all(|v| {
            let xa = l.bracket(&x, v).expect("ambient");
            let ax = l.bracket(v, &x).expect("ambient");
            linalg::is_zero_vector(f, &linalg::add_vectors(f, &xa, &ax))
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile<F: Field> {
    pub kernel: Subspace<F>,
    pub centre: Subspace<F>,
    pub square: Subspace<F>,
    pub lower_central: SeriesResult<F>,
    pub derived: SeriesResult<F>,
    /// The next four need a prime field; `None` over the rationals.
    pub frattini: Option<Subspace<F>>,
    pub nilradical: Option<Subspace<F>>,
    pub radical: Option<Subspace<F>>,
    pub minimal_ideals: Option<Vec<Subspace<F>>>,
    pub flags: ProfileFlags,
    pub cyclic_generator: Option<Vector<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileFlags {
    pub is_lie: bool,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_supersolvable: bool,
    /// "yes", "no" or "unknown"
    pub is_cyclic: String,
    pub is_simple: Option<bool>,
    pub is_semisimple: Option<bool>,
    pub quasi_abelian_class: QuasiAbelianClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub caps: LatticeCaps,
    pub rational_height: u32,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            caps: LatticeCaps::default(),
            rational_height: 3,
        }
    }
}

pub fn profile<F: Field>(l: &StructureTable<F>, opts: &ProfileOptions) -> Result<StructureProfile<F>> {
    let lat = if l.field().elements().is_some() {
        Some(SubalgebraLattice::build(l, &opts.caps)?)
    } else {
        None
    };
    profile_with(l, lat.as_ref(), opts)
}

/// Profile reusing an already built lattice.
pub fn profile_with<F: Field>(
    l: &StructureTable<F>,
    lat: Option<&SubalgebraLattice<F>>,
    opts: &ProfileOptions,
) -> Result<StructureProfile<F>> {
    let kernel = leibniz_kernel(l)?;
    let lower_central = series(l, SeriesKind::LowerCentral);
    let derived = series(l, SeriesKind::Derived);
    let sq = square(l);
    let (frattini, nilradical, radical, minimal, simple, semisimple) = match lat {
        Some(lat) => {
            let r = radical_in(lat)?;
            let simple = is_simple_in(lat)?;
            let semisimple = r == kernel;
            (
                Some(frattini_in(lat)?),
                Some(nilradical_in(lat)?),
                Some(r),
                Some(minimal_ideals_in(lat)),
                Some(simple),
                Some(semisimple),
            )
        }
        None => (None, None, None, None, (sq == kernel).then_some(false), None),
    };
    let cyclic = is_cyclic(l, opts.rational_height);
    let flags = ProfileFlags {
        is_lie: l.is_lie(),
        is_nilpotent: lower_central.reaches_zero(),
        is_solvable: derived.reaches_zero(),
        is_supersolvable: is_supersolvable(l).holds,
        is_cyclic: match &cyclic {
            CyclicVerdict::Yes(_) => "yes",
            CyclicVerdict::No => "no",
            CyclicVerdict::Unknown => "unknown",
        }
        .to_string(),
        is_simple: simple,
        is_semisimple: semisimple,
        quasi_abelian_class: quasi_abelian_class(l),
    };
    Ok(StructureProfile {
        kernel,
        centre: centre(l),
        square: sq,
        lower_central,
        derived,
        frattini,
        nilradical,
        radical,
        minimal_ideals: minimal,
        flags,
        cyclic_generator: match cyclic {
            CyclicVerdict::Yes(v) => Some(v),
            _ => None,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub terms: Vec<String>,
    pub dims: Vec<usize>,
    pub stabilized: bool,
    pub class_or_length: Option<usize>,
}

/// Serializable view of a profile; subspaces rendered as `span{...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub field: String,
    pub convention: String,
    pub dim: usize,
    pub kernel: String,
    pub centre: String,
    pub square: String,
    pub lower_central: SeriesDocument,
    pub derived: SeriesDocument,
    pub frattini: Option<String>,
    pub nilradical: Option<String>,
    pub radical: Option<String>,
    pub minimal_ideals: Option<Vec<String>>,
    pub cyclic_generator: Option<String>,
    pub flags: ProfileFlags,
}

impl<F: Field> StructureProfile<F> {
    pub fn document(&self, l: &StructureTable<F>) -> ProfileDocument {
        let r = |u: &Subspace<F>| l.render_subspace(u);
        let s = |s: &SeriesResult<F>| SeriesDocument {
            terms: s.terms.iter().map(r).collect(),
            dims: s.dims(),
            stabilized: s.stabilized,
            class_or_length: s.class_or_length,
        };
        ProfileDocument {
            field: l.field().spec().to_string(),
            convention: l.convention().as_str().to_string(),
            dim: l.dim(),
            kernel: r(&self.kernel),
            centre: r(&self.centre),
            square: r(&self.square),
            lower_central: s(&self.lower_central),
            derived: s(&self.derived),
            frattini: self.frattini.as_ref().map(r),
            nilradical: self.nilradical.as_ref().map(r),
            radical: self.radical.as_ref().map(r),
            minimal_ideals: self.minimal_ideals.as_ref().map(|v| v.iter().map(r).collect()),
            cyclic_generator: self.cyclic_generator.as_ref().map(|v| l.render_vector(v)),
            flags: self.flags.clone(),
        }
    }
}

/// Sanity relations between the profile's subspaces.
pub fn profile_consistent<F: Field>(l: &StructureTable<F>, p: &StructureProfile<F>) -> bool {
    let ideal = |u: &Subspace<F>| l.classify_subspace(u).ok() == Some(SubspaceKind::Ideal);
    let mut ok = ideal(&p.kernel) && ideal(&p.centre);
    if let (Some(n), Some(r), Some(phi)) = (&p.nilradical, &p.radical, &p.frattini) {
        ok &= r.contains(&p.kernel) && r.contains(n) && ideal(phi) && ideal(n) && ideal(r);
    }
    ok
}
