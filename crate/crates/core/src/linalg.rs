//! Dense exact linear algebra over any [`Field`].
//!
//! Matrices are row-major `Vec<Vec<F::Elem>>`. Coordinate vectors are rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals, Scalar};

pub type Vector<F> = Vec<<F as Field>::Elem>;
pub type Matrix<F> = Vec<Vector<F>>;

pub fn zero_vector<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit_vector<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vector(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vector<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F> {
    (0..n).map(|i| unit_vector(f, n, i)).collect()
}

/// `dst += c * src`
pub fn axpy<F: Field>(f: &F, dst: &mut [F::Elem], c: &F::Elem, src: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !f.is_zero(s) {
            *d = f.add(d, &f.mul(c, s));
        }
    }
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, v: &[F::Elem]) -> Vector<F> {
    v.iter().map(|x| f.mul(c, x)).collect()
}

pub fn add_vectors<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub_vectors<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

/// `M * v` where `v` is a column vector.
pub fn mat_vec<F: Field>(f: &F, m: &[Vector<F>], v: &[F::Elem]) -> Vector<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| if f.is_zero(b) { acc } else { f.add(&acc, &f.mul(a, b)) })
        })
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vector<F>], b: &[Vector<F>]) -> Matrix<F> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = zero_vector(f, cols);
            for (k, x) in row.iter().enumerate() {
                axpy(f, &mut out, x, &b[k]);
            }
            out
        })
        .collect()
}

pub fn transpose<F: Field>(m: &[Vector<F>], cols: usize) -> Matrix<F> {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row-reduces in place to reduced row echelon form, drops zero rows and
/// returns the pivot columns.
pub fn rref_in_place<F: Field>(f: &F, rows: &mut Vec<Vector<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        if !f.is_one(&inv) {
            for x in rows[r].iter_mut() {
                *x = f.mul(&inv, x);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy(f, row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Canonical reduced row echelon form (zero rows dropped) and rank.
pub fn rref<F: Field>(f: &F, rows: &[Vector<F>]) -> (Matrix<F>, usize) {
    let mut m = rows.to_vec();
    let pivots = rref_in_place(f, &mut m);
    (m, pivots.len())
}

/// [`rref`] over dynamically tagged scalars; every entry must share one field.
pub fn rref_scalars(rows: &[Vec<Scalar>]) -> Result<(Vec<Vec<Scalar>>, usize), FieldError> {
    let Some(first) = rows.iter().flatten().next() else {
        return Ok((Vec::new(), 0));
    };
    let spec = first.spec();
    fn run<F: Field>(f: F, rows: &[Vec<Scalar>]) -> Result<(Vec<Vec<Scalar>>, usize), FieldError> {
        let typed = rows
            .iter()
            .map(|r| r.iter().map(|s| f.from_scalar(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let (m, rank) = rref(&f, &typed);
        Ok((
            m.iter().map(|r| r.iter().map(|x| f.to_scalar(x)).collect()).collect(),
            rank,
        ))
    }
    match spec {
        FieldSpec::Rationals => run(Rationals, rows),
        FieldSpec::Prime(p) => run(PrimeField::new(p as u64)?, rows),
    }
}

pub fn rank<F: Field>(f: &F, rows: &[Vector<F>]) -> usize {
    rref(f, rows).1
}

/// Pivot column of each row of a matrix already in rref.
pub fn pivot_columns<F: Field>(f: &F, rref_rows: &[Vector<F>]) -> Vec<usize> {
    rref_rows
        .iter()
        .map(|r| r.iter().position(|x| !f.is_zero(x)).expect("rref rows are nonzero"))
        .collect()
}

/// Reduces `v` modulo the row space of `rref_rows` (with its `pivots`);
/// the result is zero iff `v` lies in the span.
pub fn reduce_modulo<F: Field>(f: &F, rref_rows: &[Vector<F>], pivots: &[usize], v: &[F::Elem]) -> Vector<F> {
    let mut out = v.to_vec();
    for (row, &c) in rref_rows.iter().zip(pivots) {
        if !f.is_zero(&out[c]) {
            let factor = f.neg(&out[c]);
            axpy(f, &mut out, &factor, row);
        }
    }
    out
}

/// Basis (in rref) of `{x : M x = 0}` for an `m x ncols` matrix `M`.
pub fn nullspace<F: Field>(f: &F, m: &[Vector<F>], ncols: usize) -> Matrix<F> {
    let mut rows = m.to_vec();
    let pivots = rref_in_place(f, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Matrix<F> = free
        .iter()
        .map(|&fc| {
            let mut v = zero_vector(f, ncols);
            v[fc] = f.one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(&row[fc]);
            }
            v
        })
        .collect();
    rref_in_place(f, &mut basis);
    basis
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<F: Field>(f: &F, m: &[Vector<F>]) -> Option<Matrix<F>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(f, n, i));
            r
        })
        .collect();
    let pivots = rref_in_place(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients `c_0..c_n` (ascending) of `det(t I - M)` over the rationals,
/// by the Faddeev-LeVerrier recurrence.
pub fn char_poly_rational(m: &[Vector<Rationals>]) -> Vec<BigRational> {
    let f = Rationals;
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Matrix<Rationals> = vec![zero_vector(&f, n); n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&f, m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        let am = mat_mul(&f, m, &next);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}

/// Rational roots (distinct, ascending) of a polynomial given by ascending
/// rational coefficients.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(BigRational::zero());
        while c.first().is_some_and(|x| x.is_zero()) {
            c.remove(0);
        }
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        for p in divisors(&constant) {
            for q in divisors(&lead) {
                for sign in [-1i64, 1] {
                    let cand = BigRational::new(BigInt::from(sign) * &p, q.clone());
                    if eval_poly(&c, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    // Desk-scale polynomials have small coefficients; trial division is enough.
    let limit = n.sqrt();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= limit {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
        if d.to_u64().is_none() {
            break;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

/// Eigenvalues of a square matrix lying in the base field.
pub fn eigenvalues_in_field<F: Field>(f: &F, m: &[Vector<F>]) -> Vec<F::Elem> {
    let n = m.len();
    match f.elements() {
        Some(elems) => elems
            .into_iter()
            .filter(|lambda| {
                let shifted: Matrix<F> = m
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let mut r = row.clone();
                        r[i] = f.sub(&r[i], lambda);
                        r
                    })
                    .collect();
                rank(f, &shifted) < n
            })
            .collect(),
        None => {
            // Only the rationals are infinite here; round-trip through scalars.
            let q = Rationals;
            let qm: Matrix<Rationals> = m
                .iter()
                .map(|r| r.iter().map(|x| q.from_scalar(&f.to_scalar(x)).expect("rational entry")).collect())
                .collect();
            rational_roots(&char_poly_rational(&qm))
                .iter()
                .map(|r| f.from_scalar(&q.to_scalar(r)).expect("rational root"))
                .collect()
        }
    }
}
