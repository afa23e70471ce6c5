//! Enumeration, closure search and checkers over `⟨a,b | b, baBAA⟩`.

mod checks;
mod closure;
mod enumerate;
mod maps;
mod report;

pub use checks::{
    check_lemma_coupling, check_lemma_edge_identification, check_lemma_vertex_identification,
    family_survey, verify_main_theorem,
};
pub use closure::{closure_search, moves, Closure, ClosureResult, Move};
pub use enumerate::{
    enumerate_immersions, enumerate_immersions_over, Enumeration, EnumerationFilter,
};
pub use maps::{find_map, CellMap};
pub use report::{ReportRow, Verdict, VerificationReport};
