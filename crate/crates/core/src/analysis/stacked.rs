use serde::{Deserialize, Serialize};

use super::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::simplicial::{SimplicialComplex, SphereCheck};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackednessReport {
    pub stacked: bool,
    /// `k` in `vc^k(Δ^n)` when stacked.
    pub truncation_cuts: Option<usize>,
    /// `n = dim + 1` when stacked.
    pub base_dim: Option<usize>,
}

/// Kalai's criterion: a sphere of dimension ≥ 2 is stacked iff it is chordal
/// and each minimal non-face on real vertices has size 2 or size > dim.
///
/// A 1-sphere counts as stacked with `k = f_0 - 3` cuts of the triangle.
pub fn stackedness(k: &SimplicialComplex) -> Result<StackednessReport> {
    let dim = k.dimension();
    if dim < 1 {
        return Err(Error::InvalidArgument(format!(
            "stackedness needs dimension ≥ 1, got {dim}"
        )));
    }
    let dim = dim as usize;
    let f0 = k.f0();
    if dim == 1 {
        let cycle = k.sphere_check() == SphereCheck::Complete(true);
        return Ok(StackednessReport {
            stacked: cycle,
            truncation_cuts: cycle.then(|| f0 - 3),
            base_dim: cycle.then_some(2),
        });
    }
    let real = k.real_mask();
    let sizes: Vec<usize> = k
        .minimal_non_face_masks()?
        .into_iter()
        .filter(|m| m & !real == 0)
        .map(|m| m.count_ones() as usize)
        .collect();
    let stacked =
        is_chordal(&k.one_skeleton()) && sizes.iter().all(|&s| s == 2 || s > dim);
    if !stacked {
        return Ok(StackednessReport {
            stacked: false,
            truncation_cuts: None,
            base_dim: None,
        });
    }
    let cuts = f0.checked_sub(dim + 2).ok_or_else(|| {
        Error::InvariantViolation(format!("stacked {dim}-sphere with only {f0} vertices"))
    })?;
    // each cut adds exactly one missing facet
    let missing = sizes.iter().filter(|&&s| s == dim + 1).count();
    if missing != cuts {
        return Err(Error::InvariantViolation(format!(
            "stacked sphere with {cuts} cuts has {missing} missing facets"
        )));
    }
    Ok(StackednessReport {
        stacked: true,
        truncation_cuts: Some(cuts),
        base_dim: Some(dim + 1),
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Every `⌈dim/2⌉`-subset of real vertices is a face.
pub fn neighborliness(k: &SimplicialComplex) -> bool {
    let dim = k.dimension();
    if dim < 1 {
        return true;
    }
    let size = (dim as usize).div_ceil(2);
    let f = k.f_vector();
    f[size - 1] == binomial(k.f0() as u64, size as u64)
}
