//! Named algebra families. Every constructor checks its own output.

use serde::{Deserialize, Serialize};

use crate::algebra::{IdentityVariant, StructureTable};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{self, Matrix, Vector};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn verified<F: Field>(l: StructureTable<F>, lie: bool) -> Result<StructureTable<F>> {
    if !l.satisfies(IdentityVariant::Right) {
        return Err(Error::NotLeibniz("right"));
    }
    if lie && !l.is_lie() {
        return Err(Error::BadParams("constructed table is not a Lie algebra".into()));
    }
    Ok(l)
}

fn scaled<F: Field>(f: &F, n: usize, terms: &[(usize, i64)]) -> Vector<F> {
    let mut v = linalg::zero_vector(f, n);
    for &(i, c) in terms {
        v[i] = f.add(&v[i], &f.from_i64(c));
    }
    v
}

/// Basis `x, x^2, ..., x^n` with `[x^i, x] = x^(i+1)` and
/// `[x^n, x] = alphas[0] x^2 + ... + alphas[n-2] x^n`.
pub fn cyclic_algebra<F: Field>(field: &F, n: usize, alphas: &[F::Elem]) -> Result<StructureTable<F>> {
    if n < 2 {
        return Err(Error::BadParams(format!("cyclic algebra needs n >= 2, got {n}")));
    }
    if alphas.len() != n - 1 {
        return Err(Error::BadParams(format!("cyclic algebra of dim {n} needs {} coefficients, got {}", n - 1, alphas.len())));
    }
    let names: Vec<String> = (1..=n).map(|i| if i == 1 { "x".into() } else { format!("x^{i}") }).collect();
    let mut products = Vec::new();
    for i in 0..n - 1 {
        products.push((i, 0, linalg::unit_vector(field, n, i + 1)));
    }
    let mut last = linalg::zero_vector(field, n);
    for (k, a) in alphas.iter().enumerate() {
        last[k + 1] = a.clone();
    }
    products.push((n - 1, 0, last));
    verified(StructureTable::from_products(field, names, &products)?, false)
}

/// Basis `a, b` with `[b,b] = a` and `[a,b] = a`.
pub fn diamond<F: Field>(field: &F) -> Result<StructureTable<F>> {
    let a = linalg::unit_vector(field, 2, 0);
    verified(
        StructureTable::from_products(field, labels(&["a", "b"]), &[(1, 1, a.clone()), (0, 1, a)])?,
        false,
    )
}

pub fn abelian<F: Field>(field: &F, n: usize) -> Result<StructureTable<F>> {
    StructureTable::zero_table(field, crate::algebra::default_labels(n))
}

/// Abelian ideal `e1..e(n-1)` and `a` with `[e_i, a] = e_i = -[a, e_i]`.
pub fn almost_abelian<F: Field>(field: &F, n: usize) -> Result<StructureTable<F>> {
    if n < 2 {
        return Err(Error::BadParams(format!("almost abelian algebra needs n >= 2, got {n}")));
    }
    let mut names = crate::algebra::default_labels(n - 1);
    names.push("a".into());
    let mut products = Vec::new();
    for i in 0..n - 1 {
        products.push((i, n - 1, scaled(field, n, &[(i, 1)])));
        products.push((n - 1, i, scaled(field, n, &[(i, -1)])));
    }
    verified(StructureTable::from_products(field, names, &products)?, true)
}

/// Basis `x; e_ij` (`1 <= i <= rs.len()`, `1 <= j <= rs[i-1]`) with
/// `[x, e_ij] = e_ij + e_(i+1)j = -[e_ij, x]` and `[x, e_nj] = e_nj`.
pub fn almost_nilpotent<F: Field>(field: &F, rs: &[usize]) -> Result<StructureTable<F>> {
    if rs.is_empty() || rs.contains(&0) {
        return Err(Error::BadParams("almost nilpotent algebra needs index >= 1 and positive multiplicities".into()));
    }
    if rs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadParams(format!("multiplicities must be nondecreasing, got {rs:?}")));
    }
    let mut names = vec!["x".to_string()];
    let mut index = Vec::new();
    for (i, &r) in rs.iter().enumerate() {
        let row: Vec<usize> = (0..r)
            .map(|j| {
                names.push(format!("e{}{}", i + 1, j + 1));
                names.len() - 1
            })
            .collect();
        index.push(row);
    }
    let dim = names.len();
    let mut products = Vec::new();
    for (i, row) in index.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let mut terms = vec![(e, 1)];
            if i + 1 < rs.len() {
                terms.push((index[i + 1][j], 1));
            }
            let image = scaled(field, dim, &terms);
            products.push((e, 0, linalg::scale(field, &field.from_i64(-1), &image)));
            products.push((0, e, image));
        }
    }
    verified(StructureTable::from_products(field, names, &products)?, true)
}

/// `[e1, e2] = e3`
pub fn heisenberg<F: Field>(field: &F) -> Result<StructureTable<F>> {
    verified(
        StructureTable::from_products(
            field,
            labels(&["e1", "e2", "e3"]),
            &[(0, 1, scaled(field, 3, &[(2, 1)])), (1, 0, scaled(field, 3, &[(2, -1)]))],
        )?,
        true,
    )
}

/// Basis `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2<F: Field>(field: &F) -> Result<StructureTable<F>> {
    if field.spec().characteristic() == 2 {
        return Err(Error::BadParams("sl2 needs characteristic other than 2".into()));
    }
    let v = |terms: &[(usize, i64)]| scaled(field, 3, terms);
    let products = [
        (0, 1, v(&[(2, 1)])),
        (1, 0, v(&[(2, -1)])),
        (2, 0, v(&[(0, 2)])),
        (0, 2, v(&[(0, -2)])),
        (2, 1, v(&[(1, -2)])),
        (1, 2, v(&[(1, 2)])),
    ];
    verified(StructureTable::from_products(field, labels(&["e", "f", "h"]), &products)?, true)
}

/// `A + Fx` with `A = span{a1..am}`, `[a_i, x] = M a_i` and every other
/// product zero. `M` is given by rows; column `i` is the image of `a_i`.
pub fn split_extension<F: Field>(field: &F, m: &Matrix<F>) -> Result<StructureTable<F>> {
    let k = m.len();
    if m.iter().any(|r| r.len() != k) {
        return Err(Error::BadParams("action matrix must be square".into()));
    }
    let mut names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    names.push("x".into());
    let n = k + 1;
    let products: Vec<(usize, usize, Vector<F>)> = (0..k)
        .map(|i| {
            let mut v = linalg::zero_vector(field, n);
            for (r, row) in m.iter().enumerate() {
                v[r] = row[i].clone();
            }
            (i, k, v)
        })
        .collect();
    verified(StructureTable::from_products(field, names, &products)?, false)
}

/// Companion matrix of the monic polynomial `t^k + c[k-1] t^(k-1) + ... + c[0]`.
pub fn companion_matrix<F: Field>(field: &F, c: &[F::Elem]) -> Matrix<F> {
    let k = c.len();
    (0..k)
        .map(|r| {
            (0..k)
                .map(|col| {
                    if col == k - 1 {
                        field.neg(&c[r])
                    } else if r == col + 1 {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Whether a monic polynomial of degree at most 3 over GF(p) is irreducible
/// (no roots suffices in that range).
pub fn irreducible_low_degree(field: &PrimeField, c: &[u32]) -> bool {
    assert!(!c.is_empty() && c.len() <= 3, "degree 1..=3 only");
    (0..field.modulus()).all(|t| {
        let mut acc = field.one();
        for coeff in c.iter().rev() {
            acc = field.add(&field.mul(&acc, &t), coeff);
        }
        acc != 0
    })
}

/// Instances `A + Fx` with `A` acted on irreducibly by a nonzero `M`:
/// every nonzero scalar for `dim A = 1`, every irreducible monic quadratic
/// and cubic for `dim A = 2, 3` (cubics only when `max_dim_a >= 3`).
pub fn split_extension_instances(field: &PrimeField, max_dim_a: usize) -> Vec<(Matrix<PrimeField>, StructureTable<PrimeField>)> {
    let p = field.modulus();
    let mut mats: Vec<Matrix<PrimeField>> = (1..p).map(|c| vec![vec![c]]).collect();
    for k in 2..=max_dim_a.min(3) {
        let mut c = vec![0u32; k];
        loop {
            if irreducible_low_degree(field, &c) {
                mats.push(companion_matrix(field, &c));
            }
            let mut pos = 0;
            while pos < k {
                c[pos] += 1;
                if c[pos] < p {
                    break;
                }
                c[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    mats.into_iter()
        .map(|m| {
            let l = split_extension(field, &m).expect("split extensions are Leibniz");
            (m, l)
        })
        .collect()
}

/// Family selector used by front ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    Cyclic { n: usize, alphas: Vec<String> },
    Diamond,
    Abelian { n: usize },
    AlmostAbelian { n: usize },
    AlmostNilpotent { rs: Vec<usize> },
    Heisenberg,
    Sl2,
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::Cyclic { .. } => "cyclic",
            FamilyParams::Diamond => "diamond",
            FamilyParams::Abelian { .. } => "abelian",
            FamilyParams::AlmostAbelian { .. } => "almost_abelian",
            FamilyParams::AlmostNilpotent { .. } => "almost_nilpotent",
            FamilyParams::Heisenberg => "heisenberg",
            FamilyParams::Sl2 => "sl2",
        }
    }
}

pub fn build_family<F: Field>(field: &F, params: &FamilyParams) -> Result<StructureTable<F>> {
    match params {
        FamilyParams::Cyclic { n, alphas } => {
            let parsed = alphas.iter().map(|s| field.parse(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            let parsed = if parsed.is_empty() && *n >= 2 {
                vec![field.zero(); n - 1]
            } else {
                parsed
            };
            cyclic_algebra(field, *n, &parsed)
        }
        FamilyParams::Diamond => diamond(field),
        FamilyParams::Abelian { n } => abelian(field, *n),
        FamilyParams::AlmostAbelian { n } => almost_abelian(field, *n),
        FamilyParams::AlmostNilpotent { rs } => almost_nilpotent(field, rs),
        FamilyParams::Heisenberg => heisenberg(field),
        FamilyParams::Sl2 => sl2(field),
    }
}
