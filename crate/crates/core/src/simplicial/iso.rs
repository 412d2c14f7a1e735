//! Isomorphism of simplicial complexes up to vertex relabeling.
//!
//! Ghost vertices are ignored. The search assigns real vertices one at a
//! time, restricted to candidates with the same refined color, and checks
//! every facet as soon as all of its vertices are assigned.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use super::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Default cap on real vertices for the isomorphism search.
pub const DEFAULT_MAX_ISO_VERTICES: usize = 24;

/// A vertex bijection `K → L` carrying facets onto facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub pairs: Vec<(Vertex, Vertex)>,
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Stable vertex colors from refinement on vertex-facet incidence.
fn refine(n: usize, facets: &[u64]) -> Vec<u64> {
    let mut colors: Vec<u64> = (0..n)
        .map(|v| {
            let count = facets.iter().filter(|f| *f >> v & 1 == 1).count();
            let nbrs = facets
                .iter()
                .filter(|f| *f >> v & 1 == 1)
                .fold(0u64, |a, f| a | f)
                .count_ones();
            hash_of(&(count, nbrs))
        })
        .collect();
    let mut classes = distinct(&colors);
    loop {
        let sigs: Vec<u64> = facets
            .iter()
            .map(|&f| {
                let mut cs: Vec<u64> = (0..n).filter(|v| f >> v & 1 == 1).map(|v| colors[v]).collect();
                cs.sort_unstable();
                hash_of(&cs)
            })
            .collect();
        let next: Vec<u64> = (0..n)
            .map(|v| {
                let mut around: Vec<u64> = facets
                    .iter()
                    .zip(&sigs)
                    .filter(|(f, _)| *f >> v & 1 == 1)
                    .map(|(_, s)| *s)
                    .collect();
                around.sort_unstable();
                hash_of(&(colors[v], around))
            })
            .collect();
        let c = distinct(&next);
        colors = next;
        if c == classes {
            return colors;
        }
        classes = c;
    }
}

fn distinct(colors: &[u64]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

/// Relabeling-invariant fingerprint; equal for isomorphic complexes.
pub(crate) fn invariant_hash(k: &SimplicialComplex) -> u64 {
    let (real, facets) = k.compressed();
    let mut colors = refine(real.len(), &facets);
    colors.sort_unstable();
    hash_of(&(k.f_vector(), colors))
}

/// Finds an isomorphism `k → l` of the real parts, if one exists.
///
/// Returns `Error::TooLarge` when either complex has more than `max_vertices`
/// real vertices (at most 64).
pub fn is_isomorphic(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    max_vertices: usize,
) -> Result<Option<Isomorphism>> {
    let cap = max_vertices.min(64);
    for c in [k, l] {
        if c.f0() > cap {
            return Err(Error::TooLarge {
                what: "real vertex count for isomorphism",
                size: c.f0() as u64,
                cap: cap as u64,
            });
        }
    }
    let (kr, kf) = k.compressed();
    let (lr, lf) = l.compressed();
    let n = kr.len();
    if n != lr.len() || kf.len() != lf.len() {
        return Ok(None);
    }
    let mut ksizes: Vec<u32> = kf.iter().map(|f| f.count_ones()).collect();
    let mut lsizes: Vec<u32> = lf.iter().map(|f| f.count_ones()).collect();
    ksizes.sort_unstable();
    lsizes.sort_unstable();
    if ksizes != lsizes || k.f_vector() != l.f_vector() {
        return Ok(None);
    }
    // joint refinement keeps colors comparable between the two sides
    let mut joint: Vec<u64> = kf.clone();
    joint.extend(lf.iter().map(|f| f << n));
    let colors = if 2 * n <= 64 {
        refine(2 * n, &joint)
    } else {
        let mut c = refine(n, &kf);
        c.extend(refine(n, &lf));
        c
    };
    let (kc, lc) = colors.split_at(n);
    let mut a: Vec<u64> = kc.to_vec();
    let mut b: Vec<u64> = lc.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }

    let order = search_order(n, &kf, kc);
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // facets of k grouped by the step at which they become fully assigned
    let mut due: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &f in &kf {
        if f == 0 {
            continue;
        }
        let last = (0..n).filter(|v| f >> v & 1 == 1).map(|v| rank[v]).max().unwrap();
        due[last].push(f);
    }
    let ladj = adjacency(n, &lf);
    let kadj = adjacency(n, &kf);
    let lset: HashSet<u64> = lf.iter().copied().collect();

    let mut search = Search {
        order: &order,
        kc,
        lc,
        kadj: &kadj,
        ladj: &ladj,
        due: &due,
        lset: &lset,
        map: vec![usize::MAX; n],
        used: 0,
    };
    if !search.run(0) {
        return Ok(None);
    }
    let pairs = (0..n)
        .map(|v| (k.universe[kr[v]], l.universe[lr[search.map[v]]]))
        .collect();
    Ok(Some(Isomorphism { pairs }))
}

fn adjacency(n: usize, facets: &[u64]) -> Vec<u64> {
    (0..n)
        .map(|v| {
            facets
                .iter()
                .filter(|f| *f >> v & 1 == 1)
                .fold(0u64, |a, f| a | f)
                & !(1 << v)
        })
        .collect()
}

/// Rarest color first, then vertices with most already-ordered neighbors.
fn search_order(n: usize, facets: &[u64], colors: &[u64]) -> Vec<usize> {
    let adj = adjacency(n, facets);
    let class_size = |v: usize| colors.iter().filter(|&&c| c == colors[v]).count();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (adj[v] & placed).count_ones(),
                    std::cmp::Reverse(class_size(v)),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

struct Search<'a> {
    order: &'a [usize],
    kc: &'a [u64],
    lc: &'a [u64],
    kadj: &'a [u64],
    ladj: &'a [u64],
    due: &'a [Vec<u64>],
    lset: &'a HashSet<u64>,
    map: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn image(&self, f: u64) -> u64 {
        let mut m = 0u64;
        let mut f = f;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            m |= 1 << self.map[v];
        }
        m
    }

    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let v = self.order[step];
        for w in 0..self.lc.len() {
            if self.used >> w & 1 == 1 || self.lc[w] != self.kc[v] {
                continue;
            }
            // adjacency to already-assigned vertices must be preserved both ways
            let consistent = self.order[..step].iter().all(|&u| {
                let ku = self.kadj[v] >> u & 1 == 1;
                let lu = self.ladj[w] >> self.map[u] & 1 == 1;
                ku == lu
            });
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used |= 1 << w;
            let ok = self.due[step].iter().all(|&f| self.lset.contains(&self.image(f)));
            if ok && self.run(step + 1) {
                return true;
            }
            self.used &= !(1 << w);
            self.map[v] = usize::MAX;
        }
        false
    }
}
