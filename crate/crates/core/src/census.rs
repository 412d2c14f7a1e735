//! Per-multicomplex census records with invariant checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    chordality, chromatic_number, neighborliness, stackedness, ChordalityReport, IsoClassTable, NamedTypes,
    StackednessReport, MAX_COLORING_VERTICES,
};
use crate::buchstaber::{
    buchstaber_report, canonical_char_map, verify_char_map, BuchstaberReport, DEFAULT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::multicomplex::{enumerate_proper, CompositionVector, Monomial, Multicomplex, DEFAULT_MAX_GRID};
use crate::murai::{facet_set, sr_complex};
use crate::simplicial::{SimplicialComplex, SphereCheck, DEFAULT_MAX_ISO_VERTICES};

pub const RECORD_VERSION: u32 = 1;
const CHUNK: usize = 256;

/// Which optional invariants a census computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantSelection {
    pub chordality: bool,
    pub stackedness: bool,
    pub neighborly: bool,
    pub flag: bool,
    pub chromatic: bool,
    pub buchstaber: bool,
}

impl InvariantSelection {
    pub const ALL: Self = Self {
        chordality: true,
        stackedness: true,
        neighborly: true,
        flag: true,
        chromatic: true,
        buchstaber: true,
    };
    pub const NONE: Self = Self {
        chordality: false,
        stackedness: false,
        neighborly: false,
        flag: false,
        chromatic: false,
        buchstaber: false,
    };

    /// Parses a comma-separated list such as `"chordality,buchstaber"`, or `"all"` / `"none"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut sel = Self::NONE;
        for word in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            match word {
                "all" => sel = Self::ALL,
                "none" => {}
                "chordality" => sel.chordality = true,
                "stackedness" => sel.stackedness = true,
                "neighborly" => sel.neighborly = true,
                "flag" => sel.flag = true,
                "chromatic" => sel.chromatic = true,
                "buchstaber" => sel.buchstaber = true,
                _ => return Err(Error::Parse(format!("unknown invariant {word:?}"))),
            }
        }
        Ok(sel)
    }
}

impl Default for InvariantSelection {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub max_grid: u64,
    pub max_vertices: usize,
    pub search_budget: u64,
    pub invariants: InvariantSelection,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            max_grid: DEFAULT_MAX_GRID,
            max_vertices: DEFAULT_MAX_ISO_VERTICES,
            search_budget: DEFAULT_SEARCH_BUDGET,
            invariants: InvariantSelection::ALL,
        }
    }
}

/// One line of census output. Unselected or capped invariants are `null`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRecord {
    pub v: u32,
    pub c: CompositionVector,
    pub generators: Vec<Monomial>,
    pub dual_generators: Vec<Monomial>,
    pub f_vector: Vec<u64>,
    pub euler: i64,
    pub pseudomanifold: bool,
    /// Complete sphere recognition in dimension ≤ 2, `null` above.
    pub sphere: Option<bool>,
    pub chordality: Option<ChordalityReport>,
    pub stackedness: Option<StackednessReport>,
    pub neighborly: Option<bool>,
    pub flag: Option<bool>,
    pub chromatic_number: Option<usize>,
    pub buchstaber: Option<BuchstaberReport>,
    pub iso_class_id: usize,
}

impl CensusRecord {
    pub fn to_json_line(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
        if r.v != RECORD_VERSION {
            return Err(Error::Parse(format!("unsupported record version {}", r.v)));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusClass {
    pub id: usize,
    pub representative: Vec<Monomial>,
    pub count: usize,
    pub f_vector: Vec<u64>,
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub c: CompositionVector,
    pub records: usize,
    pub classes: Vec<CensusClass>,
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantViolation(what()))
    }
}

/// The structural properties every census sphere must have, computed once.
#[derive(Clone, Debug)]
pub struct SphereFacts {
    pub complex: SimplicialComplex,
    /// The Stanley–Reisner route gives the same facets.
    pub routes_agree: bool,
    pub pseudomanifold: bool,
    pub euler: i64,
    /// Pure of dimension `|c| - 2`.
    pub pure_dimension: bool,
    /// `|c| ≤ f0 ≤ |c| + m`; the lower bound is 0 for `{∅}` at `c = (1)`.
    pub f0_in_range: bool,
    /// Complete sphere recognition in dimension ≤ 2, `None` above.
    pub sphere: Option<bool>,
    pub canonical_map_verifies: bool,
}

impl SphereFacts {
    pub fn expected_euler(c: &CompositionVector) -> i64 {
        if c.total() % 2 == 0 { 2 } else { 0 }
    }

    /// The first property that fails, if any.
    pub fn failure(&self, c: &CompositionVector) -> Option<String> {
        let euler = Self::expected_euler(c);
        [
            (self.routes_agree, "the two constructions differ".to_string()),
            (self.pseudomanifold, "not a pseudomanifold".to_string()),
            (self.euler == euler, format!("χ = {}, expected {euler}", self.euler)),
            (self.pure_dimension, format!("not pure of dimension {}", c.total() as i64 - 2)),
            (self.f0_in_range, format!("f0 = {} out of range", self.complex.f0())),
            (self.sphere != Some(false), "not a sphere".to_string()),
            (self.canonical_map_verifies, "canonical map fails".to_string()),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, msg)| msg)
    }
}

/// Builds the sphere of `m` both ways and checks it. Fails only on size caps.
pub fn sphere_facts(m: &Multicomplex, max_vertices: usize) -> Result<SphereFacts> {
    let c = m.c();
    let k = facet_set(m)?;
    if k.f0() > max_vertices {
        return Err(Error::TooLarge {
            what: "sphere vertex count",
            size: k.f0() as u64,
            cap: max_vertices as u64,
        });
    }
    let routes_agree = sr_complex(m)? == k;
    let total = c.total() as i64;
    let pseudomanifold = k.is_pseudomanifold();
    let euler = k.euler_characteristic();
    let pure_dimension = k.is_pure() && k.dimension() as i64 == total - 2;
    let f0 = k.f0() as i64;
    let lower = if total >= 2 { total } else { 0 };
    let f0_in_range = lower <= f0 && f0 <= total + c.m() as i64;
    let sphere = if total <= 4 {
        match k.sphere_check() {
            SphereCheck::Complete(b) => Some(b),
            SphereCheck::Partial { .. } => None,
        }
    } else {
        None
    };
    let canonical_map_verifies = verify_char_map(&k, &canonical_char_map(c, &k)?)?;
    Ok(SphereFacts {
        complex: k,
        routes_agree,
        pseudomanifold,
        euler,
        pure_dimension,
        f0_in_range,
        sphere,
        canonical_map_verifies,
    })
}

/// The record of one multicomplex (with `iso_class_id` left at 0) and its
/// sphere. Fails with `InvariantViolation` when any checked property breaks.
pub fn census_record(m: &Multicomplex, opts: &CensusOptions) -> Result<(CensusRecord, SimplicialComplex)> {
    let c = m.c();
    let gens = m.generators();
    let ctx = || format!("c = {c}, M = <{}>", crate::multicomplex::format_monomials(&gens));
    let dual = m.alexander_dual()?;
    check(dual.alexander_dual()? == *m, || format!("{}: dual is not an involution", ctx()))?;
    let facts = sphere_facts(m, opts.max_vertices)?;
    if let Some(msg) = facts.failure(c) {
        return Err(Error::InvariantViolation(format!("{}: {msg}", ctx())));
    }
    let SphereFacts {
        complex: k,
        euler,
        pseudomanifold,
        sphere,
        ..
    } = facts;
    let dim = c.total() as i64 - 2;

    let sel = opts.invariants;
    let chord = (sel.chordality || sel.stackedness).then(|| chordality(&k));
    if let Some(w) = chord.as_ref().and_then(|r| r.witness.as_ref()) {
        check(w.len() <= c.m() + 3, || format!("{}: chordless cycle of length {}", ctx(), w.len()))?;
    }
    let stacked = if sel.stackedness && dim >= 1 { Some(stackedness(&k)?) } else { None };
    // polygons are stacked without being chordal
    if let (Some(s), Some(ch), true) = (&stacked, &chord, dim >= 2) {
        check(!s.stacked || ch.chordal, || format!("{}: stacked but not chordal", ctx()))?;
    }
    let small = k.f0() <= MAX_COLORING_VERTICES;
    let chromatic = if sel.chromatic && small { Some(chromatic_number(&k.one_skeleton())?) } else { None };
    let buch = if sel.buchstaber { Some(buchstaber_report(&k, c, opts.search_budget)?) } else { None };
    let record = CensusRecord {
        v: RECORD_VERSION,
        c: c.clone(),
        generators: gens.clone(),
        dual_generators: dual.generators(),
        f_vector: k.f_vector(),
        euler,
        pseudomanifold,
        sphere,
        chordality: if sel.chordality { chord } else { None },
        stackedness: stacked,
        neighborly: sel.neighborly.then(|| neighborliness(&k)),
        flag: if sel.flag && small { Some(k.is_flag()?) } else { None },
        chromatic_number: chromatic,
        buchstaber: buch,
        iso_class_id: 0,
    };
    Ok((record, k))
}

/// Runs the census of `c`, handing records to `sink` in census order.
///
/// Records are computed in parallel on the current rayon pool; class ids are
/// assigned in census order, so output is independent of the pool size.
pub fn run_census(
    c: &CompositionVector,
    opts: &CensusOptions,
    mut sink: impl FnMut(&CensusRecord) -> Result<()>,
) -> Result<CensusSummary> {
    let mut stream = enumerate_proper(c, opts.max_grid)?;
    let mut table = IsoClassTable::new(opts.max_vertices);
    let mut reps: Vec<Vec<Monomial>> = Vec::new();
    let mut records = 0;
    loop {
        let chunk: Vec<Multicomplex> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let done: Vec<(CensusRecord, SimplicialComplex)> =
            chunk.par_iter().map(|m| census_record(m, opts)).collect::<Result<_>>()?;
        for (mut record, k) in done {
            let id = table.assign(&k)?;
            if id == reps.len() {
                reps.push(record.generators.clone());
            }
            record.iso_class_id = id;
            sink(&record)?;
            records += 1;
        }
    }
    let named = NamedTypes::standard();
    let classes = table
        .classes()
        .iter()
        .zip(reps)
        .map(|(class, rep)| {
            Ok(CensusClass {
                id: class.id,
                representative: rep,
                count: class.count,
                f_vector: class.representative.f_vector(),
                name: named.name_of(&class.representative)?.map(str::to_string),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CensusSummary {
        c: c.clone(),
        records,
        classes,
    })
}

/// [`run_census`] collecting every record.
pub fn census(c: &CompositionVector, opts: &CensusOptions) -> Result<(Vec<CensusRecord>, CensusSummary)> {
    let mut out = Vec::new();
    let summary = run_census(c, opts, |r| {
        out.push(r.clone());
        Ok(())
    })?;
    Ok((out, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(e: &[u32]) -> CompositionVector {
        CompositionVector::new(e.to_vec()).unwrap()
    }

    #[test]
    fn census_c21() {
        let (records, summary) = census(&cv(&[2, 1]), &CensusOptions::default()).unwrap();
        assert_eq!(records.len(), 8);
        let mut names: Vec<_> = summary.classes.iter().map(|c| c.name.clone().unwrap()).collect();
        names.sort();
        assert_eq!(names, ["Z_4", "Z_5", "∂Δ^2"]);
        for r in &records {
            let line = r.to_json_line().unwrap();
            assert!(line.starts_with(r#"{"v":1,"c":[2,1],"generators":["#), "{line}");
            let back = CensusRecord::from_json_line(&line).unwrap();
            assert_eq!(&back, r);
            assert_eq!(back.to_json_line().unwrap(), line);
        }
    }

    #[test]
    fn ids_match_isomorphism() {
        let (records, summary) = census(&cv(&[2, 1, 1]), &CensusOptions::default()).unwrap();
        assert_eq!(records.len(), 48);
        let spheres: Vec<SimplicialComplex> = records
            .iter()
            .map(|r| facet_set(&Multicomplex::from_generators(&r.c, &r.generators).unwrap()).unwrap())
            .collect();
        for i in 0..records.len() {
            for j in 0..i {
                let iso = crate::is_isomorphic(&spheres[i], &spheres[j], 24).unwrap().is_some();
                assert_eq!(iso, records[i].iso_class_id == records[j].iso_class_id);
            }
        }
        assert_eq!(summary.classes.iter().map(|c| c.count).sum::<usize>(), 48);
    }

    #[test]
    fn selection_and_caps() {
        let opts = CensusOptions {
            invariants: InvariantSelection::parse("chordality").unwrap(),
            ..CensusOptions::default()
        };
        let (records, _) = census(&cv(&[3]), &opts).unwrap();
        assert!(records.iter().all(|r| r.chordality.is_some() && r.buchstaber.is_none()));
        assert!(InvariantSelection::parse("bogus").is_err());
        let tight = CensusOptions {
            max_grid: 4,
            ..CensusOptions::default()
        };
        assert!(census(&cv(&[2, 1]), &tight).unwrap_err().is_size_cap());
        let few = CensusOptions {
            max_vertices: 4,
            ..CensusOptions::default()
        };
        assert!(census(&cv(&[2, 1]), &few).unwrap_err().is_size_cap());
    }
}
