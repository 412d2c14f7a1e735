//! Exhaustive characteristic-map search.
//!
//! One facet is pinned to the first standard basis vectors: invertible
//! matrices act on characteristic maps and move any independent set (any
//! partial lattice basis) onto `e_1, …, e_k`, so a map exists iff one with
//! that facet pinned exists. Over `𝔽_p` vectors are further taken up to
//! scalars (first nonzero entry 1); over `ℤ` up to sign.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::charmap::{verify_char_map, CharMap64, Ring};
use super::linalg::{extends_to_basis, independent_gf2, is_prime, rank_mod_p};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "outcome")]
pub enum SearchOutcome {
    Found { map: CharMap64 },
    NoneExists,
    /// The search space estimate exceeds the budget; nothing was decided.
    Inconclusive { estimate: u64, budget: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&CharMap64> {
        match self {
            SearchOutcome::Found { map } => Some(map),
            _ => None,
        }
    }

    pub fn is_none_exists(&self) -> bool {
        matches!(self, SearchOutcome::NoneExists)
    }
}

trait Coefficients: Sync {
    type V: Clone + Send + Sync;
    fn candidates(&self, d: usize) -> Vec<Self::V>;
    fn unit(&self, d: usize, i: usize) -> Self::V;
    fn independent(&self, vs: &[Self::V]) -> bool;
    fn entries(&self, v: &Self::V, d: usize) -> Vec<i64>;
}

struct Gf2;

impl Coefficients for Gf2 {
    type V = u64;

    fn candidates(&self, d: usize) -> Vec<u64> {
        (1..1u64 << d).collect()
    }

    fn unit(&self, _: usize, i: usize) -> u64 {
        1 << i
    }

    fn independent(&self, vs: &[u64]) -> bool {
        independent_gf2(vs)
    }

    fn entries(&self, v: &u64, d: usize) -> Vec<i64> {
        (0..d).map(|i| (v >> i & 1) as i64).collect()
    }
}

/// All vectors in `{lo..=hi}^d` whose first nonzero entry is 1.
fn normalized(d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![lo; d];
    loop {
        if x.iter().find(|&&e| e != 0) == Some(&1) {
            out.push(x.clone());
        }
        let Some(i) = (0..d).rev().find(|&i| x[i] < hi) else {
            return out;
        };
        x[i] += 1;
        x[i + 1..].iter_mut().for_each(|e| *e = lo);
    }
}

fn unit_vec(d: usize, i: usize) -> Vec<i64> {
    let mut x = vec![0; d];
    x[i] = 1;
    x
}

struct Gfp(u64);

impl Coefficients for Gfp {
    type V = Vec<i64>;

    fn candidates(&self, d: usize) -> Vec<Vec<i64>> {
        normalized(d, 0, self.0 as i64 - 1)
    }

    fn unit(&self, d: usize, i: usize) -> Vec<i64> {
        unit_vec(d, i)
    }

    fn independent(&self, vs: &[Vec<i64>]) -> bool {
        rank_mod_p(vs, self.0) == vs.len()
    }

    fn entries(&self, v: &Vec<i64>, _: usize) -> Vec<i64> {
        v.clone()
    }
}

struct SmallIntegers;

impl Coefficients for SmallIntegers {
    type V = Vec<i64>;

    fn candidates(&self, d: usize) -> Vec<Vec<i64>> {
        normalized(d, -1, 1)
    }

    fn unit(&self, d: usize, i: usize) -> Vec<i64> {
        unit_vec(d, i)
    }

    fn independent(&self, vs: &[Vec<i64>]) -> bool {
        extends_to_basis(vs).unwrap_or(false)
    }

    fn entries(&self, v: &Vec<i64>, _: usize) -> Vec<i64> {
        v.clone()
    }
}

/// Assignment order and the independence checks due at each step.
struct Plan {
    /// Universe positions in assignment order; the first `pinned` form a facet.
    order: Vec<usize>,
    pinned: usize,
    /// For step `t`: earlier steps that share a facet with step `t`, one list
    /// per facet, keeping only inclusion-maximal lists.
    checks: Vec<Vec<Vec<usize>>>,
}

fn plan(k: &SimplicialComplex) -> Plan {
    let facets = k.facet_masks();
    let n = k.universe().len();
    let count = |v: usize| facets.iter().filter(|&&f| f >> v & 1 == 1).count();
    let weight = |f: u64| (0..n).filter(|&v| f >> v & 1 == 1).map(count).sum::<usize>();
    let first = facets
        .iter()
        .copied()
        .enumerate()
        .max_by_key(|&(i, f)| (weight(f), std::cmp::Reverse(i)))
        .map_or(0, |(_, f)| f);
    let mut order: Vec<usize> = (0..n).filter(|&v| first >> v & 1 == 1).collect();
    let pinned = order.len();
    let mut rest: Vec<usize> = (0..n)
        .filter(|&v| k.real_mask() >> v & 1 == 1 && first >> v & 1 == 0)
        .collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(count(v)), v));
    order.extend(rest);
    let mut step = vec![usize::MAX; n];
    for (t, &v) in order.iter().enumerate() {
        step[v] = t;
    }
    let checks = order
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            let mut lists: Vec<Vec<usize>> = facets
                .iter()
                .filter(|&&f| f >> v & 1 == 1)
                .map(|&f| {
                    let mut l: Vec<usize> = (0..n).filter(|&u| f >> u & 1 == 1 && step[u] < t).map(|u| step[u]).collect();
                    l.sort_unstable();
                    l
                })
                .collect();
            lists.sort_by_key(|l| std::cmp::Reverse(l.len()));
            let mut kept: Vec<Vec<usize>> = Vec::new();
            for l in lists {
                if !kept.iter().any(|big| l.iter().all(|x| big.contains(x))) {
                    kept.push(l);
                }
            }
            kept
        })
        .collect();
    Plan { order, pinned, checks }
}

fn fits<C: Coefficients>(coeffs: &C, plan: &Plan, assigned: &[C::V], t: usize, x: &C::V) -> bool {
    let mut buf: Vec<C::V> = Vec::new();
    plan.checks[t].iter().all(|others| {
        buf.clear();
        buf.extend(others.iter().map(|&s| assigned[s].clone()));
        buf.push(x.clone());
        coeffs.independent(&buf)
    })
}

fn extend<C: Coefficients>(coeffs: &C, plan: &Plan, cands: &[C::V], assigned: &mut Vec<C::V>) -> bool {
    let t = assigned.len();
    if t == plan.order.len() {
        return true;
    }
    for x in cands {
        if fits(coeffs, plan, assigned, t, x) {
            assigned.push(x.clone());
            if extend(coeffs, plan, cands, assigned) {
                return true;
            }
            assigned.pop();
        }
    }
    false
}

fn estimate(candidates: usize, free: usize) -> u64 {
    (0..free).fold(1u64, |acc, _| acc.saturating_mul(candidates as u64))
}

enum Raw<V> {
    Found(Vec<V>),
    NoneExists,
    Inconclusive(u64),
}

fn run<C: Coefficients>(coeffs: &C, k: &SimplicialComplex, d: usize, budget: u64) -> Raw<C::V> {
    let plan = plan(k);
    if k.facet_masks().iter().any(|f| f.count_ones() as usize > d) {
        return Raw::NoneExists;
    }
    let cands = coeffs.candidates(d);
    let free = plan.order.len() - plan.pinned;
    let est = estimate(cands.len(), free);
    if est > budget {
        return Raw::Inconclusive(est);
    }
    let base: Vec<C::V> = (0..plan.pinned).map(|i| coeffs.unit(d, i)).collect();
    let found = if free == 0 {
        Some(base)
    } else {
        // the first free vertex splits the search into independent branches
        let t = plan.pinned;
        cands.par_iter().find_map_first(|x| {
            if !fits(coeffs, &plan, &base, t, x) {
                return None;
            }
            let mut assigned = base.clone();
            assigned.push(x.clone());
            extend(coeffs, &plan, &cands, &mut assigned).then_some(assigned)
        })
    };
    match found {
        Some(assigned) => {
            let mut by_position = vec![None; k.universe().len()];
            for (t, v) in plan.order.iter().zip(assigned) {
                by_position[*t] = Some(v);
            }
            Raw::Found(by_position.into_iter().flatten().collect())
        }
        None => Raw::NoneExists,
    }
}

fn to_map<C: Coefficients>(coeffs: &C, k: &SimplicialComplex, ring: Ring, d: usize, vs: Vec<C::V>) -> Result<CharMap64> {
    let mut map = CharMap64::new(ring, d);
    for (v, x) in k.real_vertices().into_iter().zip(vs) {
        map.insert(v, coeffs.entries(&x, d));
    }
    if !verify_char_map(k, &map)? {
        return Err(Error::InvariantViolation("search returned a map that does not verify".into()));
    }
    Ok(map)
}

fn finish<C: Coefficients>(coeffs: &C, k: &SimplicialComplex, ring: Ring, d: usize, budget: u64) -> Result<SearchOutcome> {
    Ok(match run(coeffs, k, d, budget) {
        Raw::Found(vs) => SearchOutcome::Found { map: to_map(coeffs, k, ring, d, vs)? },
        Raw::NoneExists => SearchOutcome::NoneExists,
        Raw::Inconclusive(estimate) => SearchOutcome::Inconclusive { estimate, budget },
    })
}

/// Exhaustive search for a mod-`p` characteristic map into `𝔽_p^d`.
///
/// The search runs only when `(candidates per vertex)^(free vertices)` is at
/// most `budget`, where the candidates are the nonzero vectors (`p = 2`) or
/// their projective classes (`p > 2`).
pub fn search_char_map_mod_p(k: &SimplicialComplex, p: u64, d: usize, budget: u64) -> Result<SearchOutcome> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if d == 0 || d > 64 {
        return Err(Error::InvalidArgument(format!("target rank must be in 1..=64, got {d}")));
    }
    if p == 2 {
        finish(&Gf2, k, Ring::PrimeField(2), d, budget)
    } else {
        finish(&Gfp(p), k, Ring::PrimeField(p), d, budget)
    }
}

/// Search for an integer characteristic map into `ℤ^d` with entries in
/// `{-1, 0, 1}`. A failed search is `Inconclusive`, never `NoneExists`.
pub fn search_char_map_integer(k: &SimplicialComplex, d: usize, budget: u64) -> Result<SearchOutcome> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidArgument(format!("target rank must be in 1..=64, got {d}")));
    }
    let est = estimate(SmallIntegers.candidates(d).len(), k.f0().saturating_sub(d));
    Ok(match finish(&SmallIntegers, k, Ring::Integers, d, budget)? {
        SearchOutcome::NoneExists => SearchOutcome::Inconclusive { estimate: est, budget },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classify;
    use crate::multicomplex::CompositionVector;

    /// Unpinned enumeration of every assignment of nonzero vectors.
    fn brute_mod_p(k: &SimplicialComplex, p: u64, d: usize) -> bool {
        let vs = k.real_vertices();
        let nonzero: Vec<Vec<i64>> = normalized(d, 0, p as i64 - 1)
            .into_iter()
            .flat_map(|x| (1..p as i64).map(move |s| x.iter().map(|e| e * s % p as i64).collect::<Vec<_>>()))
            .collect();
        let mut idx = vec![0usize; vs.len()];
        loop {
            let mut map = CharMap64::new(Ring::PrimeField(p), d);
            for (v, &i) in vs.iter().zip(&idx) {
                map.insert(*v, nonzero[i].clone());
            }
            if verify_char_map(k, &map).unwrap() {
                return true;
            }
            let Some(j) = (0..idx.len()).find(|&j| idx[j] + 1 < nonzero.len()) else {
                return false;
            };
            idx[j] += 1;
            idx[..j].iter_mut().for_each(|i| *i = 0);
        }
    }

    #[test]
    fn cycle_z5_maps_into_f2_squared() {
        let z5 = SimplicialComplex::cycle_complex(5).unwrap();
        let out = search_char_map_mod_p(&z5, 2, 2, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(verify_char_map(&z5, out.found().unwrap()).unwrap());
        let int = search_char_map_integer(&z5, 2, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(verify_char_map(&z5, int.found().unwrap()).unwrap());
    }

    #[test]
    fn simplex_boundaries_have_rank_n_maps() {
        for n in 2..7 {
            let k = SimplicialComplex::boundary_of_simplex_dim(n).unwrap();
            let out = search_char_map_mod_p(&k, 2, n, DEFAULT_SEARCH_BUDGET).unwrap();
            assert!(out.found().is_some(), "n = {n}");
            assert!(search_char_map_mod_p(&k, 2, n - 1, DEFAULT_SEARCH_BUDGET).unwrap().is_none_exists());
        }
    }

    #[test]
    fn budget_makes_search_inconclusive() {
        let z6 = SimplicialComplex::cycle_complex(6).unwrap();
        let out = search_char_map_mod_p(&z6, 2, 2, 10).unwrap();
        assert_eq!(out, SearchOutcome::Inconclusive { estimate: 81, budget: 10 });
        assert!(search_char_map_mod_p(&z6, 4, 2, 10).is_err());
    }

    #[test]
    fn pinned_search_agrees_with_unpinned_enumeration() {
        for c in [vec![3u32], vec![2, 1], vec![1, 1, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]] {
            let cl = classify(&CompositionVector::new(c.clone()).unwrap()).unwrap();
            for class in &cl.classes {
                let m = crate::multicomplex::Multicomplex::from_generators(&cl.c, &class.representative).unwrap();
                let k = crate::murai::facet_set(&m).unwrap();
                if k.f0() > 7 {
                    continue;
                }
                let n = k.dimension() as usize + 1;
                let cases: &[(u64, usize)] = if n == 2 { &[(2, 1), (2, 2), (2, 3), (3, 2)] } else { &[(2, 2), (2, 3)] };
                for &(p, d) in cases {
                    let fast = search_char_map_mod_p(&k, p, d, u64::MAX).unwrap();
                    assert_eq!(fast.found().is_some(), brute_mod_p(&k, p, d), "c={c:?} p={p} d={d} {}", k.to_text());
                }
            }
        }
    }
}
