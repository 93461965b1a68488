use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix, Vector};

/// A subspace of `F^n`, stored as its canonical reduced row echelon basis.
///
/// Two subspaces are equal iff their basis matrices are identical. The total
/// order is (dimension, lexicographic basis matrix), which is the order every
/// list of subspaces in this crate is emitted in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of `rows`.
    pub fn span(field: &F, ambient: usize, rows: &[Vector<F>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let mut basis = rows.to_vec();
        let pivots = linalg::rref_in_place(field, &mut basis);
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        })
    }

    /// Wraps a matrix the caller guarantees is already in canonical rref.
    pub(crate) fn from_rref(field: &F, ambient: usize, basis: Matrix<F>) -> Self {
        let pivots = linalg::pivot_columns(field, &basis);
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::from_rref(field, ambient, linalg::identity(field, ambient))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` reduced modulo this subspace (zero iff `v` is contained).
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        linalg::reduce_modulo(&self.field, &self.basis, &self.pivots, v)
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        linalg::is_zero_vector(&self.field, &self.reduce(v))
    }

    pub fn contains(&self, other: &Subspace<F>) -> bool {
        other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains_vector(v))
    }

    /// Vector-space sum.
    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient, &rows).expect("same ambient dimension")
    }

    /// Intersection by the Zassenhaus sum-intersection algorithm.
    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        if self.contains(other) {
            return other.clone();
        }
        if other.contains(self) {
            return self.clone();
        }
        let f = &self.field;
        let n = self.ambient;
        let mut rows: Matrix<F> = self
            .basis
            .iter()
            .map(|u| u.iter().chain(u.iter()).cloned().collect())
            .collect();
        rows.extend(
            other
                .basis
                .iter()
                .map(|v| v.iter().cloned().chain(std::iter::repeat_n(f.zero(), n)).collect()),
        );
        linalg::rref_in_place(f, &mut rows);
        let meet: Matrix<F> = rows
            .into_iter()
            .filter(|r| linalg::is_zero_vector(f, &r[..n]))
            .map(|r| r[n..].to_vec())
            .collect();
        Subspace::span(f, n, &meet).expect("same ambient dimension")
    }
}

impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.cmp(&other.basis))
            .then_with(|| self.ambient.cmp(&other.ambient))
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<F: Field> Subspace<F> {
    /// `[[1,0,2],[0,1,1]]`-style rendering of the basis matrix.
    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| self.field.format(x)).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn intersection_and_sum() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let v = Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(u.intersection(&v), Subspace::span(&f, 3, &[vec![0, 1, 0]]).unwrap());
        assert!(u.sum(&v).is_full());
        let w = Subspace::span(&f, 3, &[vec![1, 1, 1]]).unwrap();
        assert!(u.intersection(&w).is_zero());
    }

    #[test]
    fn order_is_dimension_first() {
        let f = PrimeField::new(2).unwrap();
        let a = Subspace::span(&f, 2, &[vec![1, 1]]).unwrap();
        let b = Subspace::span(&f, 2, &[vec![0, 1]]).unwrap();
        let z = Subspace::zero(&f, 2);
        let full = Subspace::full(&f, 2);
        let mut v = vec![full.clone(), a.clone(), z.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![z, b, a, full]);
    }

    #[test]
    fn span_rejects_wrong_length() {
        let f = PrimeField::new(2).unwrap();
        assert!(matches!(
            Subspace::span(&f, 3, &[vec![1, 0]]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }
}
