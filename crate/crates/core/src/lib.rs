//! Sets of fixed-length strings over a small alphabet, the rewriting
//! transition that replaces an infix by a single absent letter, and bounded
//! reachability search toward the empty set — together with the plane
//! near-triangulation machinery that mirrors it: shelling orders of
//! 4-connected triangulations, graph construction from derivation scripts,
//! and an exhaustive coloring oracle whose boundary-string sets must match
//! the string engine exactly.

pub mod alphabet;
pub mod catalog;
pub mod coloring;
pub mod formats;
pub mod graph;
pub mod lset;
pub mod script;
pub mod search;
pub mod shelling;
pub mod symmetry;
pub mod transition;
pub mod word;

pub use alphabet::Alphabet;
pub use coloring::{
    boundary_string_set, count_colorings, enumerate_colorings, roundtrip_check, ColoringAssignment,
};
pub use graph::PlaneTriangulation;
pub use lset::{LSet, PackedSet};
pub use script::{replay, DerivationScript};
pub use search::{bfs, reachable_states, verify_witness, Probe, SearchConfig, SearchReport};
pub use shelling::{
    build_from_derivation, compute_shelling_order, derivation_from_order, ShellingOrder,
};
pub use symmetry::{permute, reverse, SymmetryGroup};
pub use transition::{apply_set, apply_string, successors, TransitionLabel};
pub use word::ColorString;
