//! Leibniz algebras given by structure constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix, Vector};
use crate::subspace::Subspace;

/// Which side the Leibniz identity is written on. The workbench default is
/// [`Convention::Right`]: every right multiplication is a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Right,
    Left,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Right => "right",
            Convention::Left => "left",
        }
    }

    pub fn flipped(self) -> Convention {
        match self {
            Convention::Right => Convention::Left,
            Convention::Left => Convention::Right,
        }
    }

    pub fn variant(self) -> IdentityVariant {
        match self {
            Convention::Right => IdentityVariant::Right,
            Convention::Left => IdentityVariant::Left,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Convention::Right),
            "left" => Ok(Convention::Left),
            other => Err(Error::Format(format!("unknown convention {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityVariant {
    /// `[x,[y,z]] = [[x,y],z] - [[x,z],y]`
    Right,
    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`
    Left,
    /// Both of the above.
    Symmetric,
}

impl IdentityVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityVariant::Right => "right",
            IdentityVariant::Left => "left",
            IdentityVariant::Symmetric => "symmetric",
        }
    }
}

/// Failing basis triple of an identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityWitness<F: Field> {
    /// The one-sided identity that fails (never `Symmetric`).
    pub failing: IdentityVariant,
    pub triple: (usize, usize, usize),
    pub defect: Vector<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport<F: Field> {
    pub variant: IdentityVariant,
    pub holds: bool,
    pub witness: Option<IdentityWitness<F>>,
}

/// Strongest subobject label a subspace earns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    NotSubalgebra,
    Subalgebra,
    /// `[U, L] ⊆ U`
    RightIdeal,
    /// `[L, U] ⊆ U`
    LeftIdeal,
    Ideal,
}

impl SubspaceKind {
    pub fn is_subalgebra(self) -> bool {
        self != SubspaceKind::NotSubalgebra
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SubspaceKind::NotSubalgebra => "not_subalgebra",
            SubspaceKind::Subalgebra => "subalgebra",
            SubspaceKind::RightIdeal => "right_ideal",
            SubspaceKind::LeftIdeal => "left_ideal",
            SubspaceKind::Ideal => "ideal",
        }
    }
}

/// An algebra over `F` with basis `b_0..b_{n-1}` and bracket
/// `[b_i, b_j] = Σ_k c[i][j][k] b_k`. No identity is assumed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureTable<F: Field> {
    field: F,
    dim: usize,
    labels: Vec<String>,
    convention: Convention,
    /// flat `n * n * n`, index `(i * n + j) * n + k`
    consts: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for StructureTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureTable({} over {:?}", self.dim, self.field.spec())?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.product(i, j);
                if !linalg::is_zero_vector(&self.field, p) {
                    write!(f, ", [{},{}]={}", self.labels[i], self.labels[j], self.render_vector(p))?;
                }
            }
        }
        write!(f, ")")
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl<F: Field> StructureTable<F> {
    /// The abelian (all products zero) algebra with the given labels.
    pub fn zero_table(field: &F, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels)?;
        Ok(StructureTable {
            field: field.clone(),
            dim: n,
            labels,
            convention: Convention::Right,
            consts: vec![field.zero(); n * n * n],
        })
    }

    /// Builds a table from `(left, right, value)` basis products; unlisted
    /// products are zero.
    pub fn from_products(field: &F, labels: Vec<String>, products: &[(usize, usize, Vector<F>)]) -> Result<Self> {
        let mut t = Self::zero_table(field, labels)?;
        for (i, j, v) in products {
            t.set_product(*i, *j, v.clone())?;
        }
        Ok(t)
    }

    /// Builds a table from flat constants in `(i * n + j) * n + k` order.
    pub fn from_flat(field: &F, labels: Vec<String>, consts: Vec<F::Elem>) -> Result<Self> {
        let n = labels.len();
        if consts.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                found: consts.len(),
            });
        }
        check_labels(&labels)?;
        Ok(StructureTable {
            field: field.clone(),
            dim: n,
            labels,
            convention: Convention::Right,
            consts,
        })
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector<F>) -> Result<()> {
        let n = self.dim;
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: i.max(j) + 1,
            });
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let base = (i * n + j) * n;
        self.consts[base..base + n].clone_from_slice(&v);
        Ok(())
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        check_labels(&labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn consts(&self) -> &[F::Elem] {
        &self.consts
    }

    /// `[b_i, b_j]` as a coordinate slice.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[F::Elem] {
        let n = self.dim;
        let base = (i * n + j) * n;
        &self.consts[base..base + n]
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        linalg::unit_vector(&self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector<F> {
        linalg::zero_vector(&self.field, self.dim)
    }

    fn check_len(&self, v: &[F::Elem]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn check_subspace(&self, u: &Subspace<F>) -> Result<()> {
        if u.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.ambient_dim(),
            });
        }
        if u.field() != &self.field {
            return Err(Error::MixedFields(self.field.spec(), u.field().spec()));
        }
        Ok(())
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, v: &[F::Elem], w: &[F::Elem]) -> Result<Vector<F>> {
        self.check_len(v)?;
        self.check_len(w)?;
        Ok(self.bracket_unchecked(v, w))
    }

    pub(crate) fn bracket_unchecked(&self, v: &[F::Elem], w: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, vi) in v.iter().enumerate() {
            if f.is_zero(vi) {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if f.is_zero(wj) {
                    continue;
                }
                linalg::axpy(f, &mut out, &f.mul(vi, wj), self.product(i, j));
            }
        }
        out
    }

    /// `[x,[y,z]] - [[x,y],z] + [[x,z],y]`
    fn right_defect(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let lhs = self.bracket_unchecked(x, &self.bracket_unchecked(y, z));
        let a = self.bracket_unchecked(&self.bracket_unchecked(x, y), z);
        let b = self.bracket_unchecked(&self.bracket_unchecked(x, z), y);
        linalg::add_vectors(f, &linalg::sub_vectors(f, &lhs, &a), &b)
    }

    /// `[x,[y,z]] - [[x,y],z] - [y,[x,z]]`
    fn left_defect(&self, x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let lhs = self.bracket_unchecked(x, &self.bracket_unchecked(y, z));
        let a = self.bracket_unchecked(&self.bracket_unchecked(x, y), z);
        let b = self.bracket_unchecked(y, &self.bracket_unchecked(x, z));
        linalg::sub_vectors(f, &linalg::sub_vectors(f, &lhs, &a), &b)
    }

    /// Defect of a one-sided identity at arbitrary vectors.
    pub fn identity_defect(
        &self,
        variant: IdentityVariant,
        x: &[F::Elem],
        y: &[F::Elem],
        z: &[F::Elem],
    ) -> Result<Vector<F>> {
        self.check_len(x)?;
        self.check_len(y)?;
        self.check_len(z)?;
        Ok(match variant {
            IdentityVariant::Right => self.right_defect(x, y, z),
            IdentityVariant::Left => self.left_defect(x, y, z),
            IdentityVariant::Symmetric => {
                let r = self.right_defect(x, y, z);
                if linalg::is_zero_vector(&self.field, &r) {
                    self.left_defect(x, y, z)
                } else {
                    r
                }
            }
        })
    }

    fn first_failure(&self, side: IdentityVariant) -> Option<IdentityWitness<F>> {
        let n = self.dim;
        let basis: Vec<Vector<F>> = (0..n).map(|i| self.basis_vector(i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = match side {
                        IdentityVariant::Right => self.right_defect(&basis[i], &basis[j], &basis[k]),
                        _ => self.left_defect(&basis[i], &basis[j], &basis[k]),
                    };
                    if !linalg::is_zero_vector(&self.field, &d) {
                        return Some(IdentityWitness {
                            failing: side,
                            triple: (i, j, k),
                            defect: d,
                        });
                    }
                }
            }
        }
        None
    }

    /// Checks the identity on all basis triples, which suffices because the
    /// defect is trilinear.
    pub fn check_identity(&self, variant: IdentityVariant) -> IdentityReport<F> {
        let witness = match variant {
            IdentityVariant::Right | IdentityVariant::Left => self.first_failure(variant),
            IdentityVariant::Symmetric => self
                .first_failure(IdentityVariant::Right)
                .or_else(|| self.first_failure(IdentityVariant::Left)),
        };
        IdentityReport {
            variant,
            holds: witness.is_none(),
            witness,
        }
    }

    /// Fast yes/no version of [`Self::check_identity`].
    pub fn satisfies(&self, variant: IdentityVariant) -> bool {
        match variant {
            IdentityVariant::Right => self.satisfies_right_fast(),
            IdentityVariant::Left => self.opposite().satisfies_right_fast(),
            IdentityVariant::Symmetric => self.satisfies_right_fast() && self.opposite().satisfies_right_fast(),
        }
    }

    /// Right identity in operator form: `R_{[b_j,b_k]} = R_k R_j - R_j R_k`,
    /// compared entrywise on basis vectors with early exit.
    fn satisfies_right_fast(&self) -> bool {
        let f = &self.field;
        let n = self.dim;
        let mut lhs = vec![f.zero(); n];
        let mut rhs = vec![f.zero(); n];
        for j in 0..n {
            for k in 0..n {
                let yz = self.product(j, k);
                for i in 0..n {
                    // lhs = [b_i, [b_j, b_k]]
                    lhs.iter_mut().for_each(|x| *x = f.zero());
                    for (l, c) in yz.iter().enumerate() {
                        if !f.is_zero(c) {
                            linalg::axpy(f, &mut lhs, c, self.product(i, l));
                        }
                    }
                    // rhs = [[b_i,b_j],b_k] - [[b_i,b_k],b_j]
                    rhs.iter_mut().for_each(|x| *x = f.zero());
                    for (l, c) in self.product(i, j).iter().enumerate() {
                        if !f.is_zero(c) {
                            linalg::axpy(f, &mut rhs, c, self.product(l, k));
                        }
                    }
                    for (l, c) in self.product(i, k).iter().enumerate() {
                        if !f.is_zero(c) {
                            linalg::axpy(f, &mut rhs, &f.neg(c), self.product(l, j));
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[x, x] = 0` on basis vectors and `[b_i,b_j] = -[b_j,b_i]`.
    pub fn is_anticommutative(&self) -> bool {
        let f = &self.field;
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| {
                self.product(i, j)
                    .iter()
                    .zip(self.product(j, i))
                    .all(|(a, b)| f.is_zero(&f.add(a, b)))
                    && (i != j || linalg::is_zero_vector(f, self.product(i, i)))
            })
        })
    }

    /// Lie algebra: anticommutative and satisfying the Jacobi identity (which
    /// for anticommutative tables is the right Leibniz identity).
    pub fn is_lie(&self) -> bool {
        self.is_anticommutative() && self.satisfies_right_fast()
    }

    /// Matrix `M` with `M y = [y, x]`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let cols: Vec<Vector<F>> = (0..self.dim)
            .map(|j| self.bracket_unchecked(&self.basis_vector(j), x))
            .collect();
        Ok(linalg::transpose::<F>(&cols, self.dim))
    }

    /// Matrix `M` with `M y = [x, y]`.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let cols: Vec<Vector<F>> = (0..self.dim)
            .map(|j| self.bracket_unchecked(x, &self.basis_vector(j)))
            .collect();
        Ok(linalg::transpose::<F>(&cols, self.dim))
    }

    /// Span of `[u, v]` over basis vectors of `U` and `V`.
    pub fn product_space(&self, u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        Ok(self.product_space_unchecked(u.basis(), v.basis()))
    }

    fn product_space_unchecked(&self, u: &[Vector<F>], v: &[Vector<F>]) -> Subspace<F> {
        let rows: Vec<Vector<F>> = u
            .iter()
            .flat_map(|a| v.iter().map(move |b| self.bracket_unchecked(a, b)))
            .collect();
        Subspace::span(&self.field, self.dim, &rows).expect("products have ambient length")
    }

    pub fn whole(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace<F> {
        Subspace::zero(&self.field, self.dim)
    }

    pub fn span(&self, rows: &[Vector<F>]) -> Result<Subspace<F>> {
        Subspace::span(&self.field, self.dim, rows)
    }

    /// Least subalgebra containing `gens`: repeatedly extend the span by all
    /// pairwise products of its current basis until the dimension is stable.
    pub fn generated_subalgebra(&self, gens: &[Vector<F>]) -> Result<Subspace<F>> {
        for g in gens {
            self.check_len(g)?;
        }
        Ok(self.closure_of(Subspace::span(&self.field, self.dim, gens)?))
    }

    pub(crate) fn closure_of(&self, start: Subspace<F>) -> Subspace<F> {
        let mut current = start;
        loop {
            let mut rows = current.basis().to_vec();
            let mut grew = false;
            for a in current.basis() {
                for b in current.basis() {
                    let p = self.bracket_unchecked(a, b);
                    if !current.contains_vector(&p) {
                        grew = true;
                    }
                    rows.push(p);
                }
            }
            if !grew {
                return current;
            }
            current = Subspace::span(&self.field, self.dim, &rows).expect("ambient length");
        }
    }

    /// Whether every product of basis vectors of `U` stays in `U`.
    pub fn is_subalgebra(&self, u: &Subspace<F>) -> bool {
        u.basis()
            .iter()
            .all(|a| u.basis().iter().all(|b| u.contains_vector(&self.bracket_unchecked(a, b))))
    }

    /// `[U, L] ⊆ U`
    pub fn is_right_ideal(&self, u: &Subspace<F>) -> bool {
        u.basis()
            .iter()
            .all(|a| (0..self.dim).all(|j| u.contains_vector(&self.mul_right_basis(a, j))))
    }

    /// `[L, U] ⊆ U`
    pub fn is_left_ideal(&self, u: &Subspace<F>) -> bool {
        u.basis()
            .iter()
            .all(|a| (0..self.dim).all(|i| u.contains_vector(&self.mul_left_basis(i, a))))
    }

    pub fn is_ideal(&self, u: &Subspace<F>) -> bool {
        self.is_right_ideal(u) && self.is_left_ideal(u)
    }

    /// `[v, b_j]`
    fn mul_right_basis(&self, v: &[F::Elem], j: usize) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, c) in v.iter().enumerate() {
            linalg::axpy(f, &mut out, c, self.product(i, j));
        }
        out
    }

    /// `[b_i, v]`
    fn mul_left_basis(&self, i: usize, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (j, c) in v.iter().enumerate() {
            linalg::axpy(f, &mut out, c, self.product(i, j));
        }
        out
    }

    pub fn classify_subspace(&self, u: &Subspace<F>) -> Result<SubspaceKind> {
        self.check_subspace(u)?;
        let right = self.is_right_ideal(u);
        let left = self.is_left_ideal(u);
        Ok(match (right, left) {
            (true, true) => SubspaceKind::Ideal,
            (true, false) => SubspaceKind::RightIdeal,
            (false, true) => SubspaceKind::LeftIdeal,
            (false, false) if self.is_subalgebra(u) => SubspaceKind::Subalgebra,
            _ => SubspaceKind::NotSubalgebra,
        })
    }

    /// Quotient by a two-sided ideal, on the basis of classes of the
    /// non-pivot coordinates of the ideal's rref matrix.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<Quotient<F>> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let kept: Vec<usize> = (0..self.dim).filter(|c| !ideal.pivots().contains(c)).collect();
        let m = kept.len();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let r = ideal.reduce(v);
            kept.iter().map(|&c| r[c].clone()).collect()
        };
        let mut consts = Vec::with_capacity(m * m * m);
        for &i in &kept {
            for &j in &kept {
                consts.extend(project(self.product(i, j)));
            }
        }
        let labels = kept.iter().map(|&c| self.labels[c].clone()).collect();
        let algebra = StructureTable::from_flat(&self.field, labels, consts)?.with_convention(self.convention);
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            kept,
        })
    }

    /// Block-diagonal sum; colliding labels of the second summand get a `'`.
    pub fn direct_sum(&self, other: &StructureTable<F>) -> Result<StructureTable<F>> {
        if self.field != other.field {
            return Err(Error::MixedFields(self.field.spec(), other.field.spec()));
        }
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        let mut t = StructureTable::zero_table(&self.field, labels)?.with_convention(self.convention);
        for i in 0..n1 {
            for j in 0..n1 {
                let mut v = linalg::zero_vector(&self.field, n);
                v[..n1].clone_from_slice(self.product(i, j));
                t.set_product(i, j, v)?;
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                let mut v = linalg::zero_vector(&self.field, n);
                v[n1..].clone_from_slice(other.product(i, j));
                t.set_product(n1 + i, n1 + j, v)?;
            }
        }
        Ok(t)
    }

    /// `[x, y]_op = [y, x]`; flips the convention.
    pub fn opposite(&self) -> StructureTable<F> {
        let n = self.dim;
        let mut consts = Vec::with_capacity(self.consts.len());
        for i in 0..n {
            for j in 0..n {
                consts.extend_from_slice(self.product(j, i));
            }
        }
        StructureTable {
            field: self.field.clone(),
            dim: n,
            labels: self.labels.clone(),
            convention: self.convention.flipped(),
            consts,
        }
    }

    /// Table on the new basis given by the columns of `g`:
    /// `c'[i][j] = g^{-1} [g e_i, g e_j]`. `None` if `g` is singular.
    pub fn change_basis(&self, g: &[Vector<F>]) -> Option<StructureTable<F>> {
        let f = &self.field;
        let n = self.dim;
        let ginv = linalg::inverse(f, g)?;
        let cols: Vec<Vector<F>> = linalg::transpose::<F>(g, n);
        let mut consts = Vec::with_capacity(n * n * n);
        for ci in &cols {
            for cj in &cols {
                consts.extend(linalg::mat_vec(f, &ginv, &self.bracket_unchecked(ci, cj)));
            }
        }
        Some(StructureTable {
            field: f.clone(),
            dim: n,
            labels: self.labels.clone(),
            convention: self.convention,
            consts,
        })
    }

    /// Whether the linear map with matrix `g` (columns = images of the basis
    /// of `self`) satisfies `g [x, y] = [g x, g y]'` on basis pairs.
    pub fn is_homomorphism_to(&self, target: &StructureTable<F>, g: &[Vector<F>]) -> bool {
        let f = &self.field;
        let cols: Vec<Vector<F>> = linalg::transpose::<F>(g, self.dim);
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| linalg::mat_vec(f, g, self.product(i, j)) == target.bracket_unchecked(&cols[i], &cols[j]))
        })
    }

    pub fn render_vector(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                if f.is_one(c) {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", f.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn render_subspace(&self, u: &Subspace<F>) -> String {
        let vs: Vec<String> = u.basis().iter().map(|v| self.render_vector(v)).collect();
        format!("span{{{}}}", vs.join(", "))
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::Format("empty basis label".into()));
        }
        if labels[..i].contains(l) {
            return Err(Error::Format(format!("duplicate basis label {l:?}")));
        }
    }
    Ok(())
}

/// `L / J` together with the projection `L -> L / J`.
#[derive(Debug, Clone)]
pub struct Quotient<F: Field> {
    pub algebra: StructureTable<F>,
    pub ideal: Subspace<F>,
    /// Original basis indices whose classes form the quotient basis.
    pub kept: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn project(&self, v: &[F::Elem]) -> Vector<F> {
        let r = self.ideal.reduce(v);
        self.kept.iter().map(|&c| r[c].clone()).collect()
    }

    /// Matrix of the projection (rows = quotient coordinates).
    pub fn projection_matrix(&self) -> Matrix<F> {
        let n = self.ideal.ambient_dim();
        let f = self.ideal.field();
        let images: Vec<Vector<F>> = (0..n).map(|i| self.project(&linalg::unit_vector(f, n, i))).collect();
        linalg::transpose::<F>(&images, self.kept.len())
    }

    /// Representative in `L` of a quotient vector.
    pub fn lift(&self, v: &[F::Elem]) -> Vector<F> {
        let f = self.ideal.field();
        let mut out = linalg::zero_vector(f, self.ideal.ambient_dim());
        for (&c, x) in self.kept.iter().zip(v) {
            out[c] = x.clone();
        }
        out
    }

    /// Full preimage of a subspace of the quotient.
    pub fn preimage(&self, w: &Subspace<F>) -> Subspace<F> {
        let mut rows: Vec<Vector<F>> = w.basis().iter().map(|v| self.lift(v)).collect();
        rows.extend(self.ideal.basis().iter().cloned());
        Subspace::span(self.ideal.field(), self.ideal.ambient_dim(), &rows).expect("ambient length")
    }
}
