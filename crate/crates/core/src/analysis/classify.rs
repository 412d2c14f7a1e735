//! Isomorphism-class tables, the named-type catalogue, and the low-dimensional
//! classifiers.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::cyclic::{gale_facets, CyclicSpec};
use crate::error::{Error, Result};
use crate::multicomplex::{enumerate_proper, parse_monomials, CompositionVector, Monomial, Multicomplex, DEFAULT_MAX_GRID};
use crate::murai::{classical_bier, facet_set};
use crate::simplicial::{invariant_hash, is_isomorphic, SimplicialComplex, DEFAULT_MAX_ISO_VERTICES};

#[derive(Clone, Debug)]
pub struct IsoClass {
    pub id: usize,
    pub representative: SimplicialComplex,
    pub count: usize,
    /// Census position of the first member.
    pub first: usize,
}

/// Incrementally assigned isomorphism classes, with an invariant-hash pre-filter.
#[derive(Clone, Debug)]
pub struct IsoClassTable {
    classes: Vec<IsoClass>,
    by_hash: HashMap<u64, Vec<usize>>,
    max_vertices: usize,
    seen: usize,
}

impl IsoClassTable {
    pub fn new(max_vertices: usize) -> Self {
        Self {
            classes: Vec::new(),
            by_hash: HashMap::new(),
            max_vertices,
            seen: 0,
        }
    }

    /// Class id of `k`, opening a new class when it matches none.
    pub fn assign(&mut self, k: &SimplicialComplex) -> Result<usize> {
        let h = invariant_hash(k);
        let position = self.seen;
        self.seen += 1;
        if let Some(ids) = self.by_hash.get(&h) {
            for &id in ids {
                if is_isomorphic(k, &self.classes[id].representative, self.max_vertices)?.is_some() {
                    self.classes[id].count += 1;
                    return Ok(id);
                }
            }
        }
        let id = self.classes.len();
        self.classes.push(IsoClass {
            id,
            representative: k.clone(),
            count: 1,
            first: position,
        });
        self.by_hash.entry(h).or_default().push(id);
        Ok(id)
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Named sphere types matched up to isomorphism.
#[derive(Clone, Debug, Default)]
pub struct NamedTypes {
    entries: Vec<(String, SimplicialComplex)>,
    by_hash: HashMap<u64, Vec<usize>>,
}

fn ground(m: usize) -> Vec<crate::simplicial::Vertex> {
    (0..m as u16).map(|i| crate::simplicial::Vertex::new(1, i)).collect()
}

/// `Bier(K)` label for a complex on `[m]` given by facet masks.
fn bier_label(facets: &[u64]) -> String {
    if facets == [0] {
        return "Bier(∅)".to_string();
    }
    let parts: Vec<String> = facets
        .iter()
        .map(|&f| {
            let vs: Vec<String> = (0..64).filter(|i| f >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect();
    format!("Bier({})", parts.join(""))
}

/// One representative `Bier(K)` per isomorphism type, over all proper `K` on `[m]`.
pub fn bier_catalogue(m: usize) -> Result<Vec<(String, SimplicialComplex)>> {
    if !(2..=6).contains(&m) {
        return Err(Error::InvalidArgument(format!("Bier catalogue supports 2 ≤ m ≤ 6, got {m}")));
    }
    let c = CompositionVector::ones(m)?;
    let mut table = IsoClassTable::new(DEFAULT_MAX_ISO_VERTICES);
    let mut out = Vec::new();
    for multi in enumerate_proper(&c, DEFAULT_MAX_GRID)? {
        let facets: Vec<u64> = multi.generator_indices().iter().map(|&g| g as u64).collect();
        let k = SimplicialComplex::from_masks(ground(m), facets.clone());
        let b = classical_bier(&k)?;
        let before = table.len();
        table.assign(&b)?;
        if table.len() > before {
            out.push((bier_label(k.facet_masks()), b));
        }
    }
    Ok(out)
}

fn bier_of(m: usize, facets: &[u64]) -> SimplicialComplex {
    classical_bier(&SimplicialComplex::from_masks(ground(m), facets.to_vec()))
        .expect("catalogue complexes are proper")
}

fn murai(c: &[u32], gens: &str) -> SimplicialComplex {
    let c = CompositionVector::new(c.to_vec()).expect("valid c");
    let m = Multicomplex::from_generators(&c, &parse_monomials(gens).expect("valid gens"))
        .expect("valid multicomplex");
    facet_set(&m).expect("proper")
}

/// `K_P = Bier_{(2,1,1)}(⟨x², y, z⟩)`.
pub fn exceptional_kp() -> SimplicialComplex {
    murai(&[2, 1, 1], "2 0 0; 0 1 0; 0 0 1")
}

/// `K_Q = Bier_{(2,1,1)}(⟨x², xy, z⟩)`.
pub fn exceptional_kq() -> SimplicialComplex {
    murai(&[2, 1, 1], "2 0 0; 1 1 0; 0 0 1")
}

impl NamedTypes {
    pub fn push(&mut self, name: impl Into<String>, k: SimplicialComplex) {
        let h = invariant_hash(&k);
        self.by_hash.entry(h).or_default().push(self.entries.len());
        self.entries.push((name.into(), k));
    }

    /// First registered name whose complex is isomorphic to `k`.
    pub fn name_of(&self, k: &SimplicialComplex) -> Result<Option<&str>> {
        if k.f0() > DEFAULT_MAX_ISO_VERTICES {
            return Ok(None);
        }
        let Some(ids) = self.by_hash.get(&invariant_hash(k)) else {
            return Ok(None);
        };
        for &i in ids {
            let (name, l) = &self.entries[i];
            if is_isomorphic(k, l, DEFAULT_MAX_ISO_VERTICES)?.is_some() {
                return Ok(Some(name));
            }
        }
        Ok(None)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The standard table: cycles, simplex boundaries and their joins, the
    /// named two-dimensional types, the Bier catalogue on `[4]`, and small
    /// cyclic polytopes.
    pub fn standard() -> &'static NamedTypes {
        static TABLE: OnceLock<NamedTypes> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut t = NamedTypes::default();
            let simplex = |n: usize| SimplicialComplex::boundary_of_simplex_dim(n).expect("n ≥ 1");
            let s1 = || simplex(1).shift_axes(20);
            for n in 1..=10 {
                t.push(format!("∂Δ^{n}"), simplex(n));
            }
            for p in 4..=12 {
                t.push(format!("Z_{p}"), SimplicialComplex::cycle_complex(p).expect("p ≥ 3"));
            }
            for a in 1..=9 {
                for b in a..=(10 - a) {
                    let join = simplex(a).join(&simplex(b).shift_axes(1)).expect("disjoint");
                    t.push(format!("∂Δ^{a}*∂Δ^{b}"), join);
                }
            }
            for p in 4..=8 {
                let prism = SimplicialComplex::cycle_complex(p).expect("p ≥ 3").join(&s1()).expect("disjoint");
                t.push(format!("Z_{p}*∂Δ^1"), prism);
            }
            t.push("vc^1(I^3)", bier_of(4, &[0b0011, 0b0100]));
            t.push("vc^2(Δ^3)", bier_of(4, &[0b0001, 0b0010]));
            t.push("vc^3(Δ^3)", bier_of(4, &[0b0001, 0b0010, 0b0100]));
            t.push("K_P", exceptional_kp());
            t.push("K_Q", exceptional_kq());
            for (label, k) in bier_catalogue(4).expect("m = 4 is supported") {
                t.push(label, k);
            }
            for p in 5..=10 {
                for q in 2..p {
                    if let Ok(k) = gale_facets(CyclicSpec { p, q }) {
                        t.push(format!("Δ({p},{q})"), k);
                    }
                }
            }
            t
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub generators: Vec<Monomial>,
    pub dual_generators: Vec<Monomial>,
    pub class_id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub id: usize,
    pub representative: Vec<Monomial>,
    pub count: usize,
    pub f_vector: Vec<u64>,
    pub name: Option<String>,
    /// Isomorphic to `Bier(K)` for some complex `K` on `[dim + 2]`.
    pub bier: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub c: CompositionVector,
    pub rows: Vec<ClassRow>,
    pub classes: Vec<ClassSummary>,
}

/// Census of `c` grouped into isomorphism classes with names and Bier flags.
pub fn classify(c: &CompositionVector) -> Result<Classification> {
    let dim = c.total() as usize - 2;
    let catalogue = bier_catalogue(dim + 2)?;
    let named = NamedTypes::standard();
    let mut table = IsoClassTable::new(DEFAULT_MAX_ISO_VERTICES);
    let mut rows = Vec::new();
    let mut reps = Vec::new();
    for m in enumerate_proper(c, DEFAULT_MAX_GRID)? {
        let k = facet_set(&m)?;
        let id = table.assign(&k)?;
        if id == reps.len() {
            reps.push(m.generators());
        }
        rows.push(ClassRow {
            generators: m.generators(),
            dual_generators: m.alexander_dual()?.generators(),
            class_id: id,
        });
    }
    let mut classes = Vec::new();
    for (class, rep) in table.classes().iter().zip(reps) {
        let k = &class.representative;
        let mut bier = false;
        for (_, b) in &catalogue {
            if is_isomorphic(k, b, DEFAULT_MAX_ISO_VERTICES)?.is_some() {
                bier = true;
                break;
            }
        }
        classes.push(ClassSummary {
            id: class.id,
            representative: rep,
            count: class.count,
            f_vector: k.f_vector(),
            name: named.name_of(k)?.map(str::to_string),
            bier,
        });
    }
    Ok(Classification {
        c: c.clone(),
        rows,
        classes,
    })
}

/// [`classify`] restricted to `|c| = 3`.
pub fn classify_dim1(c: &CompositionVector) -> Result<Classification> {
    if c.total() != 3 {
        return Err(Error::InvalidArgument(format!("1-dimensional census needs |c| = 3, got {}", c.total())));
    }
    classify(c)
}

/// [`classify`] restricted to `|c| = 4`.
pub fn classify_dim2(c: &CompositionVector) -> Result<Classification> {
    if c.total() != 4 {
        return Err(Error::InvalidArgument(format!("2-dimensional census needs |c| = 4, got {}", c.total())));
    }
    classify(c)
}
