//! The double induction over cables of a negative knot, and the main lemma.
mod harness;
mod ind;
mod lemma;

pub use harness::{
    EntryData, EntryReport, EntryStatus, GCheck, Harness, HarnessOptions, Identification, IdentityCheck, InductionReport, Step,
    TriangleStep,
};
pub use ind::{ind_entries, orientation_grading, q_term, reorientation_shift, target, IndEntry, KnotInput, Renormalized};
pub use lemma::{cable_crossings, oriented_cable, verify_main_lemma, verify_theorem_sinv, LemmaReport, SinvReport};
