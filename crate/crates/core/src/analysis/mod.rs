//! Invariant analyzers for simplicial spheres.

pub mod chordal;
pub mod classify;
pub mod coloring;
pub mod cyclic;
pub mod shelling;
pub mod stacked;

pub use chordal::{chordality, chordless_cycle_bound, induced_cycles, is_chordal, ChordalityReport};
pub use classify::{
    bier_catalogue, classify, classify_dim1, classify_dim2, exceptional_kp, exceptional_kq,
    ClassRow, ClassSummary, Classification, IsoClass, IsoClassTable, NamedTypes,
};
pub use coloring::{chromatic_number, MAX_COLORING_VERTICES};
pub use cyclic::{cyclic_compare, gale_facets, murai_cyclic_map, CyclicSpec};
pub use shelling::{is_shelling, shellability_witness, MAX_SHELLING_FACETS};
pub use stacked::{neighborliness, stackedness, StackednessReport};
