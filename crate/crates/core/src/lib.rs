//! Murai spheres (generalized Bier spheres) built from c-multicomplexes.
//!
//! The crate is organised in layers: [`multicomplex`] holds the monomial
//! grids, [`simplicial`] general complexes on labeled vertices, [`murai`] the
//! two constructions of the sphere, [`analysis`] the invariant analyzers, and
//! [`buchstaber`] characteristic maps. [`census`] ties them together into
//! per-multicomplex records.

pub mod analysis;
pub mod buchstaber;
pub mod census;
pub mod error;
pub mod multicomplex;
pub mod murai;
pub mod simplicial;

pub use buchstaber::{CharMap, CharMap128, CharMap64};
pub use census::{sphere_facts, CensusOptions, CensusRecord, CensusSummary, InvariantSelection, SphereFacts};
pub use error::{Error, Result};
pub use multicomplex::{
    complement, enumerate_proper, format_monomials, parse_monomials, CompositionVector, Monomial,
    MonomialIdealGens, Multicomplex, DEFAULT_MAX_GRID,
};
pub use simplicial::{is_isomorphic, Graph, Isomorphism, SimplicialComplex, SphereCheck, Vertex};
pub use murai::{
    classical_bier, facet_set, polarize, polarize_star, sr_complex, sr_ideal, PolarizedIdealGens,
};
