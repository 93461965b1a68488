//! Flat `u32` arithmetic for structure tables over GF(p): the general linear
//! group, change of basis and homomorphism tests.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// `|GL(n, p)| = prod_{i<n} (p^n - p^i)`
pub fn gl_order(n: usize, p: u32) -> u128 {
    let q = p as u128;
    (0..n).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

/// Inverse of a row-major `n x n` matrix over GF(p).
pub(crate) fn invert(p: u32, n: usize, g: &[u32]) -> Option<Vec<u32>> {
    let f = PrimeField::new(p as u64).expect("prime");
    let rows: Vec<Vec<u32>> = g.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
    crate::linalg::inverse(&f, &rows).map(|m| m.concat())
}

/// Every invertible matrix (row-major) with its inverse, built column by
/// column from vectors outside the span of the previous columns.
pub fn gl_elements(field: &PrimeField, n: usize, cap: u128) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let p = field.modulus();
    let order = gl_order(n, p);
    if order > cap {
        return Err(Error::CapExceeded {
            what: format!("|GL({n},{p})|"),
            requested: order,
            cap,
        });
    }
    let vectors: Vec<Vec<u32>> = (0..(p as u64).pow(n as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            v
        })
        .collect();
    let mut out = Vec::with_capacity(order as usize);
    let mut cols: Vec<usize> = Vec::new();
    extend(field, n, &vectors, &mut cols, &mut out);
    Ok(out)
}

fn extend(field: &PrimeField, n: usize, vectors: &[Vec<u32>], cols: &mut Vec<usize>, out: &mut Vec<(Vec<u32>, Vec<u32>)>) {
    if cols.len() == n {
        let mut g = vec![0u32; n * n];
        for (c, &vi) in cols.iter().enumerate() {
            for r in 0..n {
                g[r * n + c] = vectors[vi][r];
            }
        }
        let ginv = invert(field.modulus(), n, &g).expect("independent columns");
        out.push((g, ginv));
        return;
    }
    let chosen: Vec<Vec<u32>> = cols.iter().map(|&i| vectors[i].clone()).collect();
    let r = crate::linalg::rank(field, &chosen);
    for (vi, v) in vectors.iter().enumerate() {
        let mut with = chosen.clone();
        with.push(v.clone());
        if crate::linalg::rank(field, &with) > r {
            cols.push(vi);
            extend(field, n, vectors, cols, out);
            cols.pop();
        }
    }
}

/// Constants of the table on the basis given by the columns of `g`:
/// `c'[i][j] = g^{-1} [g e_i, g e_j]`.
pub fn transform_flat(p: u32, n: usize, c: &[u32], g: &[u32], ginv: &[u32]) -> Vec<u32> {
    let q = p as u64;
    // t[a][j] = [e_a, g e_j]
    let mut t = vec![0u64; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let base = (a * n + b) * n;
            for j in 0..n {
                let gbj = g[b * n + j] as u64;
                if gbj == 0 {
                    continue;
                }
                let tb = (a * n + j) * n;
                for k in 0..n {
                    t[tb + k] += gbj * c[base + k] as u64;
                }
            }
        }
    }
    t.iter_mut().for_each(|x| *x %= q);
    // s[i][j] = [g e_i, g e_j]
    let mut s = vec![0u64; n * n * n];
    for i in 0..n {
        for a in 0..n {
            let gai = g[a * n + i] as u64;
            if gai == 0 {
                continue;
            }
            for j in 0..n {
                let (sb, tb) = ((i * n + j) * n, (a * n + j) * n);
                for k in 0..n {
                    s[sb + k] += gai * t[tb + k];
                }
            }
        }
    }
    s.iter_mut().for_each(|x| *x %= q);
    let mut out = vec![0u32; n * n * n];
    for ij in 0..n * n {
        for k in 0..n {
            let mut acc = 0u64;
            for l in 0..n {
                acc += ginv[k * n + l] as u64 * s[ij * n + l];
            }
            out[ij * n + k] = (acc % q) as u32;
        }
    }
    out
}

/// Whether `e_i -> g e_i` is a homomorphism from table `c1` to table `c2`.
pub(crate) fn is_homomorphism_flat(p: u32, n: usize, c1: &[u32], c2: &[u32], g: &[u32]) -> bool {
    let q = p as u64;
    let col = |i: usize| -> Vec<u64> { (0..n).map(|r| g[r * n + i] as u64).collect() };
    let cols: Vec<Vec<u64>> = (0..n).map(col).collect();
    for i in 0..n {
        for j in 0..n {
            // g c1[i][j]
            let base = (i * n + j) * n;
            let lhs: Vec<u64> = (0..n)
                .map(|r| (0..n).map(|k| g[r * n + k] as u64 * c1[base + k] as u64).sum::<u64>() % q)
                .collect();
            // [g e_i, g e_j] in c2
            let mut rhs = vec![0u64; n];
            for a in 0..n {
                if cols[i][a] == 0 {
                    continue;
                }
                for b in 0..n {
                    let w = cols[i][a] * cols[j][b] % q;
                    if w == 0 {
                        continue;
                    }
                    let cb = (a * n + b) * n;
                    for k in 0..n {
                        rhs[k] += w * c2[cb + k] as u64;
                    }
                }
            }
            if rhs.iter().zip(&lhs).any(|(r, l)| r % q != *l) {
                return false;
            }
        }
    }
    true
}
