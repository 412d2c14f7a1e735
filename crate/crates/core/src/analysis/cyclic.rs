//! Boundaries of cyclic polytopes via Gale's evenness condition.
//!
//! The vertex `t_i` of `Δ(p, q)` is labeled `0:i` (axis 0 is reserved for
//! these labels), `1 ≤ i ≤ p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{is_isomorphic, Isomorphism, SimplicialComplex, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSpec {
    pub p: usize,
    pub q: usize,
}

impl CyclicSpec {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if q < 2 || q >= p || p > 64 {
            return Err(Error::InvalidCyclic { p, q });
        }
        Ok(Self { p, q })
    }
}

/// The label of `t_i`.
pub fn t(i: usize) -> Vertex {
    Vertex::new(0, i as u16)
}

/// Gale evenness for a q-subset of `{0, …, p-1}` given as a bitmask: any two
/// non-members are separated by an even number of members.
pub fn gale_evenness(mask: u64, p: usize) -> bool {
    let mut last_gap: Option<usize> = None;
    for i in 0..p {
        if mask >> i & 1 == 0 {
            if let Some(j) = last_gap {
                let between = (mask >> (j + 1)) & ((1u64 << (i - j - 1)) - 1);
                if between.count_ones() % 2 == 1 {
                    return false;
                }
            }
            last_gap = Some(i);
        }
    }
    true
}

/// `Δ(p, q)`: the boundary complex of the cyclic polytope `C(p, q)`.
pub fn gale_facets(spec: CyclicSpec) -> Result<SimplicialComplex> {
    let CyclicSpec { p, q } = CyclicSpec::new(spec.p, spec.q)?;
    let mut facets = Vec::new();
    // Gosper's hack over q-subsets of p bits
    let mut s: u64 = (1u64 << q) - 1;
    let limit = if p == 64 { u64::MAX } else { 1u64 << p };
    while s < limit {
        if gale_evenness(s, p) {
            facets.push(s);
        }
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    let universe = (1..=p).map(t).collect();
    Ok(SimplicialComplex::from_masks(universe, facets))
}

/// Isomorphism between `k` and `Δ(p, q)`, if any.
pub fn cyclic_compare(
    k: &SimplicialComplex,
    spec: CyclicSpec,
    max_vertices: usize,
) -> Result<Option<Isomorphism>> {
    is_isomorphic(k, &gale_facets(spec)?, max_vertices)
}

/// The explicit bijection `X̃ → {t_1, …, t_{2k+4}}` for `c = (k+2, k)`:
/// `x̃_1^{(i)} ↦ t_{2i+2}` for `i ≤ k+1`, `x̃_1^{(k+2)} ↦ t_1`,
/// `x̃_2^{(i)} ↦ t_{2(k-i)+3}`.
pub fn murai_cyclic_map(k: usize) -> Result<Vec<(Vertex, Vertex)>> {
    if k < 1 || 2 * k + 4 > 64 {
        return Err(Error::InvalidArgument(format!(
            "cyclic map needs 1 ≤ k ≤ 30, got {k}"
        )));
    }
    let mut map = Vec::with_capacity(2 * k + 4);
    for i in 0..=k + 1 {
        map.push((Vertex::new(1, i as u16), t(2 * i + 2)));
    }
    map.push((Vertex::new(1, k as u16 + 2), t(1)));
    for i in 0..=k {
        map.push((Vertex::new(2, i as u16), t(2 * (k - i) + 3)));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_gale(p: usize, q: usize) -> Vec<u64> {
        (0..1u64 << p)
            .filter(|s| s.count_ones() as usize == q)
            .filter(|&s| {
                (0..p).all(|i| {
                    (i + 1..p).all(|j| {
                        s >> i & 1 == 1
                            || s >> j & 1 == 1
                            || (i + 1..j).filter(|&l| s >> l & 1 == 1).count() % 2 == 0
                    })
                })
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_evenness() {
        for p in 3..=10 {
            for q in 2..p {
                let k = gale_facets(CyclicSpec::new(p, q).unwrap()).unwrap();
                let mut expect = brute_gale(p, q);
                expect.sort_unstable();
                assert_eq!(k.facet_masks(), &expect[..], "p={p} q={q}");
            }
        }
    }

    #[test]
    fn small_cases() {
        let d42 = gale_facets(CyclicSpec::new(4, 2).unwrap()).unwrap();
        assert_eq!(d42.to_text(), "0:1,0:2|0:1,0:4|0:2,0:3|0:3,0:4");
        for p in 3..9 {
            let k = gale_facets(CyclicSpec::new(p, p - 1).unwrap()).unwrap();
            assert_eq!(k.facet_count(), p);
        }
        let z4 = SimplicialComplex::cycle_complex(4).unwrap();
        assert!(cyclic_compare(&z4, CyclicSpec::new(4, 2).unwrap(), 24).unwrap().is_some());
        assert!(CyclicSpec::new(3, 3).is_err());
        assert!(CyclicSpec::new(5, 1).is_err());
    }

    #[test]
    fn explicit_map_at_k3() {
        let map = murai_cyclic_map(3).unwrap();
        let get = |v: Vertex| map.iter().find(|(a, _)| *a == v).unwrap().1;
        assert_eq!(get(Vertex::new(1, 0)), t(2));
        assert_eq!(get(Vertex::new(2, 0)), t(9));
        assert_eq!(get(Vertex::new(1, 5)), t(1));
        let mut images: Vec<Vertex> = map.iter().map(|p| p.1).collect();
        images.sort();
        assert_eq!(images, (1..=10).map(t).collect::<Vec<_>>());
    }
}
