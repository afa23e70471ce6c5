//! Combinatorial 2-complexes immersed over presentation complexes.
//!
//! The crate covers the data model ([`Morphism`] onto a [`Presentation`]
//! complex), folding and the moves built from it, the `D_i`/`C_i` families
//! over `⟨a,b | b, bab⁻¹a⁻²⟩`, contractibility certificates, and an
//! exhaustive verification engine for immersions over that complex.

pub mod budget;
pub mod canon;
pub mod complex;
pub mod error;
pub mod families;
pub mod fold;
pub mod immersion;
pub mod io;
pub mod presentation;
pub mod topology;
pub mod verify;

pub use canon::{canonical_form, is_isomorphism, isomorphic, Isomorphism};
pub use complex::{
    presentation_complex, Edge, Face, Morphism, Side, SideSlot, TwoComplex, Violation,
};
pub use error::{Error, Result};
pub use families::{
    build_c, build_d, classify, odd_part, Classification, Family, FamilyTag, Variant,
};
pub use fold::{couple, fold, identify_edges, identify_vertices, FoldTrace, MergeEvent, MergeKind};
pub use immersion::{immersion_witness, is_immersion, EdgeEnd, End, Witness};
pub use presentation::{parse_presentation, Letter, Presentation, Word};
