//! Finite ordinal normal-form games and exhaustive checks of choice-style axioms on
//! solution concepts.
//!
//! The crate covers the game model and its reduction algebra ([`game`], [`reduction`],
//! [`subset`]), a registry of solution concepts ([`concepts`]), finite game classes and
//! their closures ([`class`]), axiom checkers with replayable witnesses ([`axioms`]), and
//! step-by-step mechanized constructions behind the Nash characterization ([`theorem`]).

pub mod axioms;
pub mod class;
pub mod concepts;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod oracle;
pub mod profile;
pub mod reduction;
pub mod report;
pub mod subset;
pub mod suite;
pub mod theorem;

pub use axioms::{Axiom, AxiomError, AxiomVerdict, Witness};
pub use class::{GameClass, Provenance};
pub use concepts::{eval_concept, ConceptError, ConceptId, ConceptSpec, SolutionSet};
pub use error::GameError;
pub use game::{build_game, Game, GameId, Tables};
pub use profile::Profile;
pub use reduction::{is_reduction, is_strict_reduction, merge, reduce_players, strictly_dominates};
pub use report::CheckRecord;
pub use subset::{
    enumerate_reductions, reduction_flavor, FlavorFilter, ReductionFlavor, SubsetSpec,
};
pub use theorem::{
    lemma1a_witness, lemma1b_construct, verify_one_player_lemma, verify_theorem1,
    ConstructionReport, TheoremError,
};
