use serde::{Deserialize, Serialize};

use super::charmap::{canonical_char_map, verify_char_map, CharMap64, Ring};
use super::search::{search_char_map_integer, search_char_map_mod_p, SearchOutcome};
use crate::analysis::{chromatic_number, MAX_COLORING_VERTICES};
use crate::error::{Error, Result};
use crate::multicomplex::CompositionVector;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SearchStatus {
    Found,
    None,
    Inconclusive,
    Skipped,
}

/// Bounds on the Buchstaber numbers `s ≤ s_2` of a Murai sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BuchstaberReport {
    pub f0: usize,
    /// `dim + 1`.
    pub n: usize,
    /// `f0 - χ(1-skeleton)`, absent above the coloring cap.
    pub lower_bound_chromatic: Option<usize>,
    /// `f0 - |c|` when the canonical map verifies.
    pub canonical_lower_bound: Option<usize>,
    /// `f0 - n`.
    pub s_upper: usize,
    pub s2_exact: Option<usize>,
    pub s_exact: Option<usize>,
    /// Outcome of the mod-2 search at rank `n`.
    pub s2_search: SearchStatus,
    /// Outcome of the integer search at rank `n`.
    pub integer_search: SearchStatus,
}

impl BuchstaberReport {
    /// `r_2 = f0 - s_2`.
    pub fn r2(&self) -> Option<usize> {
        self.s2_exact.map(|s| self.f0 - s)
    }

    /// `r = f0 - s`.
    pub fn r(&self) -> Option<usize> {
        self.s_exact.map(|s| self.f0 - s)
    }
}

#[derive(Clone, Debug)]
pub struct BuchstaberAnalysis {
    pub report: BuchstaberReport,
    pub canonical: CharMap64,
    /// A mod-2 map at rank `n`, when one was found.
    pub mod2: Option<CharMap64>,
    /// An integer map at rank `n`, when one was found.
    pub integer: Option<CharMap64>,
}

fn violation(msg: String) -> Error {
    Error::InvariantViolation(msg)
}

/// Bounds, exact `s_2` when the search at rank `n` is within `budget`, and
/// exact `s` when the bounds meet or an integer map at rank `n` turns up.
pub fn buchstaber_analysis(k: &SimplicialComplex, c: &CompositionVector, budget: u64) -> Result<BuchstaberAnalysis> {
    let f0 = k.f0();
    let n = (k.dimension() + 1).max(0) as usize;
    let total = c.total() as usize;
    if n + 1 != total {
        return Err(Error::InvalidArgument(format!(
            "complex of dimension {} is not a Murai sphere for c = {c}",
            k.dimension()
        )));
    }
    let lower_bound_chromatic = if f0 <= MAX_COLORING_VERTICES {
        Some(f0 - chromatic_number(&k.one_skeleton())?)
    } else {
        None
    };
    let canonical = canonical_char_map(c, k)?;
    let canonical_ok = verify_char_map(k, &canonical)?;
    let canonical_lower_bound = canonical_ok.then(|| f0 - total);
    let s_upper = f0 - n;

    let outcome = search_char_map_mod_p(k, 2, n, budget)?;
    let (s2_search, mod2) = match outcome {
        SearchOutcome::Found { map } => (SearchStatus::Found, Some(map)),
        SearchOutcome::NoneExists => (SearchStatus::None, None),
        SearchOutcome::Inconclusive { .. } => (SearchStatus::Inconclusive, None),
    };
    let s2_exact = match s2_search {
        SearchStatus::Found => Some(s_upper),
        // rank n + 1 = |c| is realised by the canonical map reduced mod 2
        SearchStatus::None if canonical_ok => {
            if !verify_char_map(k, &canonical.reduce_mod(2)?)? {
                return Err(violation("canonical map fails mod 2".into()));
            }
            Some(f0 - total)
        }
        _ => None,
    };

    let mut integer = None;
    let mut integer_search = SearchStatus::Skipped;
    if s2_exact == Some(s_upper) {
        let lifted = mod2.as_ref().map(|m| CharMap64 { ring: Ring::Integers, ..m.clone() });
        match lifted {
            Some(m) if verify_char_map(k, &m)? => {
                integer = Some(m);
                integer_search = SearchStatus::Found;
            }
            _ => match search_char_map_integer(k, n, budget)? {
                SearchOutcome::Found { map } => {
                    integer = Some(map);
                    integer_search = SearchStatus::Found;
                }
                _ => integer_search = SearchStatus::Inconclusive,
            },
        }
    }
    let s_exact = if integer.is_some() {
        Some(s_upper)
    } else if s2_exact.is_some() && s2_exact == canonical_lower_bound {
        s2_exact
    } else {
        None
    };

    for bound in [lower_bound_chromatic, canonical_lower_bound].into_iter().flatten() {
        if bound > s_upper {
            return Err(violation(format!("lower bound {bound} exceeds upper bound {s_upper}")));
        }
    }
    if let Some(s2) = s2_exact {
        if canonical_lower_bound.is_some_and(|lb| s2 < lb) {
            return Err(violation(format!("s2 = {s2} below the canonical bound")));
        }
        if lower_bound_chromatic.is_some_and(|lb| s2 < lb) {
            return Err(violation(format!("s2 = {s2} below the chromatic bound")));
        }
    }
    if let Some(m) = &integer {
        if !verify_char_map(k, &m.reduce_mod(2)?)? {
            return Err(violation("integer map does not reduce to a mod-2 map".into()));
        }
    }
    Ok(BuchstaberAnalysis {
        report: BuchstaberReport {
            f0,
            n,
            lower_bound_chromatic,
            canonical_lower_bound,
            s_upper,
            s2_exact,
            s_exact,
            s2_search,
            integer_search,
        },
        canonical,
        mod2,
        integer,
    })
}

pub fn buchstaber_report(k: &SimplicialComplex, c: &CompositionVector, budget: u64) -> Result<BuchstaberReport> {
    Ok(buchstaber_analysis(k, c, budget)?.report)
}
