//! Contractibility certification: collapse search, integral homology,
//! fundamental-group presentations and coset enumeration.

mod certify;
mod collapse;
mod coset;
mod homology;
mod pi1;
pub mod snf;

pub use certify::{certify_contractible, Certificate, SIMPLY_CONNECTED_ACYCLIC};
pub use collapse::{
    collapsibility_search, collapsibility_search_with, replay_collapse, CollapseSearch,
    CollapseStep,
};
pub use coset::{coset_enumeration, coset_enumeration_with, CosetOutcome};
pub use homology::{boundary_1, boundary_2, homology, HomologyProfile};
pub use pi1::pi1_presentation;
