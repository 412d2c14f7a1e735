//! The Murai sphere `Bier_c(M)` by the facet formula and by its
//! Stanley–Reisner ideal.
//!
//! Both routes produce complexes over the universe X̃ in which the vertex
//! `x̃_i^{(j)}` sits at position `off_i + j`, `off_i = Σ_{k<i} (c_k + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multicomplex::{CompositionVector, Monomial, MonomialIdealGens, Multicomplex};
use crate::simplicial::{SimplicialComplex, Vertex};

/// The vertex universe X̃ in position order.
pub fn universe(c: &CompositionVector) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(c.vertex_count());
    for (i, &ci) in c.entries().iter().enumerate() {
        out.extend((0..=ci).map(|j| Vertex::new(i as u16 + 1, j as u16)));
    }
    out
}

fn check_universe(c: &CompositionVector) -> Result<()> {
    let n = c.vertex_count();
    if n > 64 {
        return Err(Error::TooLarge {
            what: "vertex universe |c| + m",
            size: n as u64,
            cap: 64,
        });
    }
    Ok(())
}

/// Squarefree generators in the polarized variables `x_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizedIdealGens {
    universe: Vec<Vertex>,
    masks: Vec<u64>,
}

impl PolarizedIdealGens {
    fn new(universe: Vec<Vertex>, mut masks: Vec<u64>) -> Self {
        masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
        masks.dedup();
        let mut keep: Vec<u64> = Vec::with_capacity(masks.len());
        for m in masks {
            if !keep.iter().any(|&k| k & !m == 0) {
                keep.push(m);
            }
        }
        Self {
            universe,
            masks: keep,
        }
    }

    /// Generators as vertex sets, smallest first.
    pub fn gens(&self) -> Vec<Vec<Vertex>> {
        self.masks
            .iter()
            .map(|&m| {
                (0..self.universe.len())
                    .filter(|p| m >> p & 1 == 1)
                    .map(|p| self.universe[p])
                    .collect()
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// The complex of all vertex subsets containing no generator.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_non_face_masks(self.universe.clone(), &self.masks)
    }
}

fn polar_mask(
    c: &CompositionVector,
    a: &Monomial,
    levels: impl Fn(u32, u32) -> std::ops::Range<u32>,
) -> Result<u64> {
    if a.exponents().len() != c.m()
        || a.exponents().iter().zip(c.entries()).any(|(&e, &ci)| e > ci + 1)
    {
        return Err(Error::InvalidMonomial {
            exponents: a.exponents().to_vec(),
            c: c.bar_entries(),
        });
    }
    let mut mask = 0u64;
    for (i, (&e, &ci)) in a.exponents().iter().zip(c.entries()).enumerate() {
        let off = c.vertex_offset(i);
        for t in levels(e, ci) {
            mask |= 1 << (off + t as usize);
        }
    }
    Ok(mask)
}

/// `pol(x^a) = Π_i x_{i,0} ⋯ x_{i,a_i-1}` applied to every generator.
pub fn polarize(ideal: &MonomialIdealGens) -> Result<PolarizedIdealGens> {
    check_universe(&ideal.c)?;
    let masks = ideal
        .gens
        .iter()
        .map(|a| polar_mask(&ideal.c, a, |e, _| 0..e))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolarizedIdealGens::new(universe(&ideal.c), masks))
}

/// `pol*(x^a) = Π_i x_{i,c_i} ⋯ x_{i,c_i-a_i+1}` applied to every generator.
pub fn polarize_star(ideal: &MonomialIdealGens) -> Result<PolarizedIdealGens> {
    check_universe(&ideal.c)?;
    let masks = ideal
        .gens
        .iter()
        .map(|a| polar_mask(&ideal.c, a, |e, ci| ci + 1 - e..ci + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolarizedIdealGens::new(universe(&ideal.c), masks))
}

/// Facets `G(x^a; x_i^j)` of `Bier_c(M)` from the facet formula.
pub fn facet_set(m: &Multicomplex) -> Result<SimplicialComplex> {
    if !m.is_proper() {
        return Err(Error::NotProper);
    }
    let c = m.c();
    check_universe(c)?;
    let n = c.vertex_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let offsets: Vec<usize> = (0..c.m()).map(|i| c.vertex_offset(i)).collect();
    let mut facets = Vec::new();
    // exponent digits of idx, advanced as an odometer
    let mut digits = vec![0u32; c.m()];
    for idx in 0..c.cells() as usize {
        if idx > 0 {
            for (d, &ci) in digits.iter_mut().zip(c.entries()) {
                if *d < ci {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        if !m.contains_index(idx) {
            continue;
        }
        let mut base = full;
        for (i, &d) in digits.iter().enumerate() {
            base &= !(1u64 << (offsets[i] + d as usize));
        }
        for (i, &ci) in c.entries().iter().enumerate() {
            let stride = c.stride(i);
            for j in digits[i] + 1..=ci {
                // x^a ⋄ x_i^j replaces the i-th exponent by j
                if !m.contains_index(idx + (j - digits[i]) as usize * stride) {
                    facets.push(base & !(1u64 << (offsets[i] + j as usize)));
                }
            }
        }
    }
    facets.sort_unstable();
    facets.dedup();
    // all facets have |c| - 1 vertices, so the list is already an antichain
    Ok(SimplicialComplex::from_sorted_antichain(universe(c), facets))
}

/// Minimal non-faces of `Bier_c(M)`:
/// `pol(I_c(M)) + pol*(I_c(M^∨)) + pol(x_1^{c_1+1}, …, x_m^{c_m+1})`, reduced.
pub fn sr_ideal(m: &Multicomplex) -> Result<PolarizedIdealGens> {
    let c = m.c();
    check_universe(c)?;
    let first = m.ideal_generators()?.gens;
    let second = m.alexander_dual()?.ideal_generators()?.gens;
    let mut masks = Vec::with_capacity(first.len() + second.len() + c.m());
    for a in &first {
        masks.push(polar_mask(c, a, |e, _| 0..e)?);
    }
    for a in &second {
        masks.push(polar_mask(c, a, |e, ci| ci + 1 - e..ci + 1)?);
    }
    for (i, &ci) in c.entries().iter().enumerate() {
        masks.push(polar_mask(c, &Monomial::pure_power(c.m(), i, ci + 1), |e, _| 0..e)?);
    }
    Ok(PolarizedIdealGens::new(universe(c), masks))
}

/// `Bier_c(M)` rebuilt from [`sr_ideal`]: all subsets of X̃ avoiding every generator.
pub fn sr_complex(m: &Multicomplex) -> Result<SimplicialComplex> {
    let ideal = sr_ideal(m)?;
    SimplicialComplex::from_non_face_masks(ideal.universe, &ideal.masks)
}

/// The classical Bier sphere `Bier(K)` for a complex `K` on the ground set
/// given by its universe (ghost vertices allowed).
///
/// Position `i` of `K`'s universe becomes axis `i + 1`: the level-0 copy
/// carries `K` and the level-1 copy its Alexander dual.
pub fn classical_bier(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let m = k.universe().len();
    if m == 0 || 2 * m > 64 {
        return Err(Error::InvalidArgument(format!(
            "classical Bier sphere needs a ground set of 1..=32 vertices, got {m}"
        )));
    }
    let full = (1u64 << m) - 1;
    if k.facet_count() == 0 {
        return Err(Error::InvalidArgument("void complex has no Bier sphere".into()));
    }
    if k.contains_mask(full) {
        return Err(Error::NotProper);
    }
    let c = CompositionVector::ones(m)?;
    let mut bits = vec![0u64; (1usize << m).div_ceil(64)];
    for &f in k.facet_masks() {
        // with c = (1, …, 1) the grid index of a squarefree monomial is its support mask
        let mut s = f;
        loop {
            bits[(s >> 6) as usize] |= 1 << (s & 63);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    let multi = Multicomplex::from_bits(c, bits)?;
    facet_set(&multi)
}
