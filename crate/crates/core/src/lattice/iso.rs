//! Lattice isomorphism by color refinement on the Hasse diagram followed by
//! backtracking over cover-consistent partial maps.
//!
//! Colors use only lattice-theoretic data (heights, depths, cover degrees and
//! the colors of covering neighbours). A bijection that preserves the cover
//! relation in both directions is an order isomorphism, hence preserves joins
//! and meets; every returned map is nevertheless re-verified exhaustively.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::order::LatticeOrder;

const NONE: usize = usize::MAX;

/// A join- and meet-preserving bijection between two lattices' node sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeMap {
    map: Vec<usize>,
}

impl LatticeMap {
    /// Checks bijectivity and join/meet preservation on all node pairs.
    pub fn verified(source: &LatticeOrder, target: &LatticeOrder, map: Vec<usize>) -> Result<LatticeMap> {
        let n = source.len();
        if target.len() != n || map.len() != n {
            return Err(Error::Format("lattice map between lattices of different sizes".into()));
        }
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(Error::Format("lattice map is not a bijection".into()));
            }
            seen[t] = true;
        }
        for i in 0..n {
            for j in i..n {
                if map[source.join(i, j)] != target.join(map[i], map[j]) {
                    return Err(Error::Format(format!("lattice map breaks the join of nodes {i} and {j}")));
                }
                if map[source.meet(i, j)] != target.meet(map[i], map[j]) {
                    return Err(Error::Format(format!("lattice map breaks the meet of nodes {i} and {j}")));
                }
            }
        }
        Ok(LatticeMap { map })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> LatticeMap {
        let mut inv = vec![0; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        LatticeMap { map: inv }
    }

    pub fn compose(&self, then: &LatticeMap) -> LatticeMap {
        LatticeMap {
            map: self.map.iter().map(|&t| then.map[t]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i == t)
    }
}

fn depths(l: &LatticeOrder) -> Vec<usize> {
    let n = l.len();
    let mut d = vec![0usize; n];
    for i in (0..n).rev() {
        d[i] = l.upper_covers(i).iter().map(|&j| d[j] + 1).max().unwrap_or(0);
    }
    d
}

/// Jointly refined colors of two lattices, or `None` when the color
/// histograms already rule out an isomorphism.
pub fn refine_colors(a: &LatticeOrder, b: &LatticeOrder) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.len() != b.len() {
        return None;
    }
    let initial = |l: &LatticeOrder| -> Vec<Vec<usize>> {
        let d = depths(l);
        (0..l.len())
            .map(|i| vec![l.height(i), d[i], l.lower_covers(i).len(), l.upper_covers(i).len()])
            .collect()
    };
    let (mut ca, mut cb) = recolor(initial(a), initial(b));
    let mut classes = count_classes(&ca, &cb);
    loop {
        if !same_histogram(&ca, &cb) {
            return None;
        }
        let sig = |l: &LatticeOrder, c: &[usize]| -> Vec<Vec<usize>> {
            (0..l.len())
                .map(|i| {
                    let mut lo: Vec<usize> = l.lower_covers(i).iter().map(|&j| c[j]).collect();
                    let mut up: Vec<usize> = l.upper_covers(i).iter().map(|&j| c[j]).collect();
                    lo.sort_unstable();
                    up.sort_unstable();
                    let mut s = vec![c[i], lo.len()];
                    s.extend(lo);
                    s.push(usize::MAX);
                    s.extend(up);
                    s
                })
                .collect()
        };
        let (na, nb) = recolor(sig(a, &ca), sig(b, &cb));
        let next = count_classes(&na, &nb);
        ca = na;
        cb = nb;
        if next == classes {
            break;
        }
        classes = next;
    }
    same_histogram(&ca, &cb).then_some((ca, cb))
}

fn recolor(sa: Vec<Vec<usize>>, sb: Vec<Vec<usize>>) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for s in sa.iter().chain(sb.iter()) {
        ids.entry(s).or_insert(0);
    }
    for (k, v) in ids.values_mut().enumerate() {
        *v = k;
    }
    (sa.iter().map(|s| ids[s]).collect(), sb.iter().map(|s| ids[s]).collect())
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).copied().max().map_or(0, |m| m + 1)
}

fn same_histogram(a: &[usize], b: &[usize]) -> bool {
    let k = count_classes(a, b);
    let mut h = vec![0i64; k];
    for &c in a {
        h[c] += 1;
    }
    for &c in b {
        h[c] -= 1;
    }
    h.iter().all(|&x| x == 0)
}

struct Search<'a> {
    a: &'a LatticeOrder,
    b: &'a LatticeOrder,
    ca: Vec<usize>,
    cb: Vec<usize>,
    class_size: Vec<usize>,
    ab: Vec<usize>,
    ba: Vec<usize>,
    assigned: usize,
}

impl<'a> Search<'a> {
    fn new(a: &'a LatticeOrder, b: &'a LatticeOrder) -> Option<Search<'a>> {
        let (ca, cb) = refine_colors(a, b)?;
        let mut class_size = vec![0; count_classes(&ca, &cb)];
        for &c in &ca {
            class_size[c] += 1;
        }
        Some(Search {
            a,
            b,
            ca,
            cb,
            class_size,
            ab: vec![NONE; a.len()],
            ba: vec![NONE; a.len()],
            assigned: 0,
        })
    }

    fn consistent(&self, u: usize, t: usize) -> bool {
        if self.ca[u] != self.cb[t] || self.ba[t] != NONE {
            return false;
        }
        let side = |nu: &[usize], nt: &[usize]| -> bool {
            let mut count_u = 0;
            for &x in nu {
                let mx = self.ab[x];
                if mx != NONE {
                    if !nt.contains(&mx) {
                        return false;
                    }
                    count_u += 1;
                }
            }
            let count_t = nt.iter().filter(|&&y| self.ba[y] != NONE).count();
            count_u == count_t
        };
        side(self.a.lower_covers(u), self.b.lower_covers(t)) && side(self.a.upper_covers(u), self.b.upper_covers(t))
    }

    fn assign(&mut self, u: usize, t: usize) {
        self.ab[u] = t;
        self.ba[t] = u;
        self.assigned += 1;
    }

    fn unassign(&mut self, u: usize) {
        let t = self.ab[u];
        self.ab[u] = NONE;
        self.ba[t] = NONE;
        self.assigned -= 1;
    }

    /// Most constrained unassigned node: most assigned cover neighbours,
    /// then smallest color class, then lowest index.
    fn next_node(&self) -> usize {
        let mut best = NONE;
        let mut key = (0usize, usize::MAX);
        for u in 0..self.a.len() {
            if self.ab[u] != NONE {
                continue;
            }
            let links = self
                .a
                .lower_covers(u)
                .iter()
                .chain(self.a.upper_covers(u))
                .filter(|&&x| self.ab[x] != NONE)
                .count();
            let k = (links, usize::MAX - self.class_size[self.ca[u]]);
            if best == NONE || k > key {
                best = u;
                key = k;
            }
        }
        best
    }

    fn candidates(&self, u: usize) -> Vec<usize> {
        let anchor = self
            .a
            .lower_covers(u)
            .iter()
            .map(|&x| (x, true))
            .chain(self.a.upper_covers(u).iter().map(|&x| (x, false)))
            .find(|&(x, _)| self.ab[x] != NONE);
        let pool: Vec<usize> = match anchor {
            Some((x, true)) => self.b.upper_covers(self.ab[x]).to_vec(),
            Some((x, false)) => self.b.lower_covers(self.ab[x]).to_vec(),
            None => (0..self.b.len()).collect(),
        };
        pool.into_iter().filter(|&t| self.consistent(u, t)).collect()
    }

    /// Depth-first enumeration; `visit` returns `false` to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.assigned == self.a.len() {
            return visit(&self.ab);
        }
        let u = self.next_node();
        for t in self.candidates(u) {
            self.assign(u, t);
            let go_on = self.run(visit);
            self.unassign(u);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Enumerates isomorphisms `a -> b` extending `pins`, stopping after
/// `limit` maps when given.
pub fn enumerate_isomorphisms(
    a: &LatticeOrder,
    b: &LatticeOrder,
    pins: &[(usize, usize)],
    limit: Option<usize>,
) -> Vec<LatticeMap> {
    let Some(mut s) = Search::new(a, b) else {
        return Vec::new();
    };
    for &(u, t) in pins {
        if u >= a.len() || t >= b.len() || s.ab[u] != NONE || !s.consistent(u, t) {
            return Vec::new();
        }
        s.assign(u, t);
    }
    let mut found = Vec::new();
    s.run(&mut |m| {
        let map = LatticeMap::verified(a, b, m.to_vec()).expect("cover-preserving bijections preserve joins and meets");
        found.push(map);
        limit.is_none_or(|l| found.len() < l)
    });
    found.sort();
    found
}

pub fn lattice_isomorphism(a: &LatticeOrder, b: &LatticeOrder) -> Option<LatticeMap> {
    enumerate_isomorphisms(a, b, &[], Some(1)).into_iter().next()
}

/// An isomorphism sending each pinned source node to its given target node.
pub fn lattice_isomorphism_pinned(a: &LatticeOrder, b: &LatticeOrder, pins: &[(usize, usize)]) -> Option<LatticeMap> {
    enumerate_isomorphisms(a, b, pins, Some(1)).into_iter().next()
}

/// All automorphisms, sorted, for lattices with at most `node_cap` nodes.
pub fn lattice_automorphisms(l: &LatticeOrder, node_cap: usize) -> Result<Vec<LatticeMap>> {
    if l.len() > node_cap {
        return Err(Error::CapExceeded {
            what: "lattice nodes for automorphism search".into(),
            requested: l.len() as u128,
            cap: node_cap as u128,
        });
    }
    Ok(enumerate_isomorphisms(l, l, &[], None))
}
