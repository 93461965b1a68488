#![allow(dead_code)]
//! Independent brute-force oracle: plain `u32` arithmetic mod p, no library
//! code. Tables are flat, `c[(i*n + j)*n + k]` = coefficient of `b_k` in
//! `[b_i, b_j]`.

use std::collections::BTreeSet;

pub fn bracket(p: u32, n: usize, c: &[u32], u: &[u32], v: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            if v[j] == 0 {
                continue;
            }
            let s = u[i] * v[j] % p;
            for k in 0..n {
                out[k] = (out[k] + s * c[(i * n + j) * n + k]) % p;
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on all basis triples.
pub fn is_right_leibniz(p: u32, n: usize, c: &[u32]) -> bool {
    let e: Vec<Vec<u32>> = (0..n).map(|i| unit(n, i)).collect();
    for x in &e {
        for y in &e {
            for z in &e {
                let lhs = bracket(p, n, c, x, &bracket(p, n, c, y, z));
                let a = bracket(p, n, c, &bracket(p, n, c, x, y), z);
                let b = bracket(p, n, c, &bracket(p, n, c, x, z), y);
                if (0..n).any(|k| lhs[k] != (a[k] + p - b[k]) % p) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every table over GF(p) of dimension `n`, as an iterator of flat vectors.
pub fn all_tables(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let len = n * n * n;
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0u32; len];
        for slot in t.iter_mut() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        t
    })
}

fn inverse_mod(p: u32, a: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residue")
}

/// Row-major inverse by Gauss-Jordan; `None` when singular.
pub fn invert(p: u32, n: usize, g: &[u32]) -> Option<Vec<u32>> {
    let mut a: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut r = g[i * n..(i + 1) * n].to_vec();
            r.extend(unit(n, i));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inverse_mod(p, a[col][col]);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
    }
    Some(a.into_iter().flat_map(|r| r[n..].to_vec()).collect())
}

/// All invertible `n x n` matrices over GF(p), row-major.
pub fn general_linear(p: u32, n: usize) -> Vec<Vec<u32>> {
    let len = n * n;
    (0..(p as u64).pow(len as u32))
        .filter_map(|mut idx| {
            let mut g = vec![0u32; len];
            for slot in g.iter_mut() {
                *slot = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            invert(p, n, &g).map(|_| g)
        })
        .collect()
}

fn mat_vec(p: u32, n: usize, m: &[u32], v: &[u32]) -> Vec<u32> {
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum::<u32>() % p).collect()
}

/// The table of the same algebra on the basis `g e_1, ..., g e_n`.
pub fn transform(p: u32, n: usize, c: &[u32], g: &[u32]) -> Vec<u32> {
    let ginv = invert(p, n, g).expect("invertible");
    let cols: Vec<Vec<u32>> = (0..n).map(|j| (0..n).map(|i| g[i * n + j]).collect()).collect();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            out.extend(mat_vec(p, n, &ginv, &bracket(p, n, c, &cols[i], &cols[j])));
        }
    }
    out
}

pub fn orbit(p: u32, n: usize, c: &[u32], group: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    group.iter().map(|g| transform(p, n, c, g)).collect()
}

/// Lexicographically least table of each isomorphism class of right
/// Leibniz algebras, found by filtering every table and splitting into
/// orbits under the full general linear group.
pub fn brute_force_classes(p: u32, n: usize) -> Vec<Vec<u32>> {
    let group = general_linear(p, n);
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut reps = Vec::new();
    for t in all_tables(p, n).filter(|t| is_right_leibniz(p, n, t)) {
        if seen.contains(&t) {
            continue;
        }
        let o = orbit(p, n, &t, &group);
        reps.push(o.iter().next().unwrap().clone());
        seen.extend(o);
    }
    reps.sort();
    reps
}

/// Number of right Leibniz tables of dimension 3 over GF(2), by a bitmask
/// scan of all 2^27 tables.
pub fn count_gf2_dim3_tables() -> u64 {
    use rayon::prelude::*;
    // products[i*3+j] is a 3-bit mask of [b_i, b_j]
    fn br(prod: &[u8; 9], u: u8, v: u8) -> u8 {
        let mut out = 0;
        for i in 0..3 {
            if u >> i & 1 == 1 {
                for j in 0..3 {
                    if v >> j & 1 == 1 {
                        out ^= prod[i * 3 + j];
                    }
                }
            }
        }
        out
    }
    (0u32..1 << 27)
        .into_par_iter()
        .filter(|&code| {
            let mut prod = [0u8; 9];
            for (s, slot) in prod.iter_mut().enumerate() {
                *slot = (code >> (3 * s) & 7) as u8;
            }
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        let (x, y, z) = (1u8 << x, 1u8 << y, 1u8 << z);
                        let lhs = br(&prod, x, br(&prod, y, z));
                        let rhs = br(&prod, br(&prod, x, y), z) ^ br(&prod, br(&prod, x, z), y);
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .count() as u64
}
