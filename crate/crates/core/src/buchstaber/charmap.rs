use std::collections::BTreeMap;

use num_traits::{PrimInt, Signed};
use serde::{Deserialize, Serialize};

use super::linalg::{extends_in_place, independent_gf2, is_prime, rank_mod_p};
use crate::error::{Error, Result};
use crate::multicomplex::CompositionVector;
use crate::simplicial::{SimplicialComplex, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Ring {
    Integers,
    PrimeField(u64),
}

/// A vertex assignment into `ℤ^d` or `𝔽_p^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMap<T = i64> {
    pub ring: Ring,
    pub rank: usize,
    pub vectors: BTreeMap<Vertex, Vec<T>>,
}

pub type CharMap64 = CharMap<i64>;
pub type CharMap128 = CharMap<i128>;

impl<T: PrimInt + Signed> CharMap<T> {
    pub fn new(ring: Ring, rank: usize) -> Self {
        Self {
            ring,
            rank,
            vectors: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, v: Vertex, vector: Vec<T>) {
        self.vectors.insert(v, vector);
    }

    pub fn get(&self, v: Vertex) -> Option<&[T]> {
        self.vectors.get(&v).map(Vec::as_slice)
    }

    /// Entrywise reduction into `𝔽_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<CharMap<T>> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let modulus = T::from(p).ok_or(Error::Overflow)?;
        let vectors = self
            .vectors
            .iter()
            .map(|(&v, x)| {
                let r = x.iter().map(|&e| {
                    let r = e % modulus;
                    if r < T::zero() { r + modulus } else { r }
                });
                (v, r.collect())
            })
            .collect();
        Ok(CharMap {
            ring: Ring::PrimeField(p),
            rank: self.rank,
            vectors,
        })
    }
}

/// Every facet maps to an independent set over `𝔽_p`, or to part of a lattice
/// basis over `ℤ`.
pub fn verify_char_map<T: PrimInt + Signed>(k: &SimplicialComplex, map: &CharMap<T>) -> Result<bool> {
    let d = map.rank;
    let real = k.real_mask();
    let mut slots: Vec<Option<&[T]>> = Vec::with_capacity(k.universe().len());
    for (i, v) in k.universe().iter().enumerate() {
        let x = map.vectors.get(v);
        if real >> i & 1 == 1 {
            match x {
                None => return Err(Error::MissingAssignment(*v)),
                Some(x) if x.len() != d => {
                    return Err(Error::InvalidArgument(format!(
                        "vector of {v} has length {}, rank is {d}",
                        x.len()
                    )))
                }
                Some(_) => {}
            }
        }
        slots.push(x.map(Vec::as_slice));
    }
    let members = |f: u64| (0..slots.len()).filter(move |&i| f >> i & 1 == 1);
    match map.ring {
        Ring::Integers => {
            // Rows ±e_j split off: they extend to a basis together with the
            // rest iff the rest, with those columns deleted, does.
            let unit_col = |x: &[T]| {
                let mut nz = x.iter().enumerate().filter(|(_, e)| !e.is_zero());
                match (nz.next(), nz.next()) {
                    (Some((j, e)), None) if e.abs().is_one() && j < 64 => Some(j),
                    _ => None,
                }
            };
            let units: Vec<Option<usize>> = slots.iter().map(|x| x.and_then(unit_col)).collect();
            let mut buf: Vec<T> = Vec::with_capacity(d * d);
            let mut keep: Vec<usize> = Vec::with_capacity(d);
            for &f in k.facet_masks() {
                if f.count_ones() as usize > d {
                    return Ok(false);
                }
                let mut cols = 0u64;
                let mut rest = 0u64;
                for i in members(f) {
                    match units[i] {
                        Some(j) if cols >> j & 1 == 1 => return Ok(false),
                        Some(j) => cols |= 1 << j,
                        None => rest |= 1 << i,
                    }
                }
                if rest == 0 {
                    continue;
                }
                keep.clear();
                keep.extend((0..d).filter(|&j| j >= 64 || cols >> j & 1 == 0));
                buf.clear();
                for i in members(rest) {
                    let x = slots[i].expect("facet vertices are real");
                    buf.extend(keep.iter().map(|&j| x[j]));
                }
                if !extends_in_place(&mut buf, rest.count_ones() as usize, keep.len())? {
                    return Ok(false);
                }
            }
        }
        Ring::PrimeField(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            let to_i64 = |x: &[T]| x.iter().map(|e| e.to_i64().ok_or(Error::Overflow)).collect::<Result<Vec<i64>>>();
            let residues = slots
                .iter()
                .map(|x| x.map(to_i64).transpose())
                .collect::<Result<Vec<Option<Vec<i64>>>>>()?;
            for &f in k.facet_masks() {
                let rows: Vec<&Vec<i64>> = members(f).map(|i| residues[i].as_ref().expect("facet vertices are real")).collect();
                if rows.len() > d {
                    return Ok(false);
                }
                let ok = if p == 2 && d <= 64 {
                    let masks: Vec<u64> = rows
                        .iter()
                        .map(|r| r.iter().enumerate().fold(0u64, |m, (i, e)| m | (e.rem_euclid(2) as u64) << i))
                        .collect();
                    independent_gf2(&masks)
                } else {
                    let owned: Vec<Vec<i64>> = rows.into_iter().cloned().collect();
                    rank_mod_p(&owned, p) == owned.len()
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The map into `ℤ^{|c|}` sending level `j ≥ 1` of axis `i` to `e_{i,j}` and
/// level 0 to `Σ_k e_{i,k}`, restricted to the real vertices of `k`.
pub fn canonical_char_map(c: &CompositionVector, k: &SimplicialComplex) -> Result<CharMap64> {
    let rank = c.total() as usize;
    let mut map = CharMap::new(Ring::Integers, rank);
    for v in k.real_vertices() {
        let axis = v.axis as usize;
        if axis == 0 || axis > c.m() || v.level as u32 > c.entries()[axis - 1] {
            return Err(Error::InvalidArgument(format!("vertex {v} is not in the universe of c = {c}")));
        }
        let offset: usize = c.entries()[..axis - 1].iter().map(|&e| e as usize).sum();
        let ci = c.entries()[axis - 1] as usize;
        let mut x = vec![0i64; rank];
        if v.level == 0 {
            x[offset..offset + ci].iter_mut().for_each(|e| *e = 1);
        } else {
            x[offset + v.level as usize - 1] = 1;
        }
        map.insert(v, x);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicomplex::{parse_monomials, Multicomplex};
    use crate::murai::facet_set;

    fn sphere(c: &[u32], gens: &str) -> (CompositionVector, SimplicialComplex) {
        let c = CompositionVector::new(c.to_vec()).unwrap();
        let m = Multicomplex::from_generators(&c, &parse_monomials(gens).unwrap()).unwrap();
        let k = facet_set(&m).unwrap();
        (c, k)
    }

    #[test]
    fn canonical_map_at_c21() {
        let (c, k) = sphere(&[2, 1], "0 1; 1 0");
        let map = canonical_char_map(&c, &k).unwrap();
        assert_eq!(map.rank, 3);
        let get = |a, l| map.get(Vertex::new(a, l)).unwrap().to_vec();
        assert_eq!(get(1, 0), vec![1, 1, 0]);
        assert_eq!(get(1, 1), vec![1, 0, 0]);
        assert_eq!(get(1, 2), vec![0, 1, 0]);
        assert_eq!(get(2, 0), vec![0, 0, 1]);
        assert_eq!(get(2, 1), vec![0, 0, 1]);
        assert!(verify_char_map(&k, &map).unwrap());
    }

    #[test]
    fn canonical_map_on_z4() {
        let (c, k) = sphere(&[3], "1");
        assert_eq!(k.facet_count(), 4);
        let map = canonical_char_map(&c, &k).unwrap();
        assert!(verify_char_map(&k, &map).unwrap());
        assert!(verify_char_map(&k, &map.reduce_mod(2).unwrap()).unwrap());
    }

    #[test]
    fn degenerate_maps_fail() {
        let (_, k) = sphere(&[2, 1], "0 1; 1 0");
        let mut same = CharMap::new(Ring::Integers, 3);
        for v in k.real_vertices() {
            same.insert(v, vec![1, 0, 0]);
        }
        assert!(!verify_char_map(&k, &same).unwrap());
        let mut partial = same.clone();
        partial.vectors.remove(&Vertex::new(1, 0));
        assert!(matches!(verify_char_map(&k, &partial), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn basis_on_simplex_boundary() {
        for n in 1..6usize {
            let k = SimplicialComplex::boundary_of_simplex_dim(n).unwrap();
            let mut map = CharMap::new(Ring::Integers, n + 1);
            for (i, v) in k.real_vertices().into_iter().enumerate() {
                let mut x = vec![0i64; n + 1];
                x[i] = 1;
                map.insert(v, x);
            }
            assert!(verify_char_map(&k, &map).unwrap());
            assert!(verify_char_map(&k, &map.reduce_mod(3).unwrap()).unwrap());
        }
    }

    proptest::proptest! {
        #[test]
        fn unit_row_split_matches_direct_check(
            entries in proptest::collection::vec(-2i64..=2, 24),
            units in proptest::collection::vec(proptest::option::of(0usize..4), 6),
        ) {
            let k = SimplicialComplex::boundary_of_simplex_dim(5).unwrap();
            let mut map = CharMap::new(Ring::Integers, 4);
            for (i, v) in k.real_vertices().into_iter().enumerate() {
                let x = match units[i] {
                    Some(j) => (0..4).map(|c| if c == j { if i % 2 == 0 { 1 } else { -1 } } else { 0 }).collect(),
                    None => entries[4 * (i % 6)..4 * (i % 6) + 4].to_vec(),
                };
                map.insert(v, x);
            }
            // 3-faces of ∂Δ^5 so that facets of size 4 fit in rank 4
            let sub = SimplicialComplex::from_facets(
                k.universe().to_vec(),
                &k.facets().iter().flat_map(|f| (0..f.len()).map(move |i| {
                    let mut g = f.clone();
                    g.remove(i);
                    g
                })).collect::<Vec<_>>(),
            ).unwrap();
            let direct = sub.facets().iter().all(|f| {
                let rows: Vec<Vec<i64>> = f.iter().map(|v| map.get(*v).unwrap().to_vec()).collect();
                super::super::linalg::extends_to_basis(&rows).unwrap()
            });
            proptest::prop_assert_eq!(verify_char_map(&sub, &map).unwrap(), direct);
        }
    }

    #[test]
    fn json_round_trip() {
        let (c, k) = sphere(&[2, 1], "0 1");
        let map = canonical_char_map(&c, &k).unwrap();
        let s = serde_json::to_string(&map).unwrap();
        assert!(s.starts_with(r#"{"ring":"integers","rank":3,"vectors":{"#), "{s}");
        let back: CharMap64 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, map);
        let m2 = map.reduce_mod(2).unwrap();
        let s2 = serde_json::to_string(&m2).unwrap();
        assert!(s2.contains(r#""ring":{"primeField":2}"#));
        assert_eq!(serde_json::from_str::<CharMap64>(&s2).unwrap(), m2);
    }
}
