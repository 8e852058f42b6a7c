//! Possibly indecisive choice behaviour and its justification by ballots.
//!
//! A [`QuasiChoice`] assigns to every menu of a finite grand set a (possibly
//! empty) subset of it. A [`Ballot`] is the quasi-choice of a single voter
//! that keeps exactly the non-dominated items of each menu. The crate checks
//! the contraction (α) and expansion (γ) consistency axioms, builds and
//! verifies families of ballots whose share-`s` majority reproduces a given
//! quasi-choice, and computes the smallest liberal (`s = 0`) and democratic
//! (`s = 1/2`) families exactly.
//!
//! ```
//! use qchoice::{fixture, FixtureId, lib_number, verify, synth_liberal, Share, LibNumber};
//!
//! let c = fixture(FixtureId::ExLib2Dem3).choice;
//! assert_eq!(lib_number(&c), LibNumber::Finite(2));
//! let family = synth_liberal(&c).unwrap();
//! assert!(verify(&c, &family, Share::ZERO).unwrap().is_verified());
//! ```

pub mod axioms;
pub mod choice;
pub mod error;
pub mod format;
pub mod generators;
pub mod menu;
pub mod represent;
pub mod share;
pub mod solvers;

pub use axioms::{check_alpha, check_gamma, classify, Axiom, AxiomWitness, RationalityClass};
pub use choice::{revealed_relation, Ballot, BallotFamily, QuasiChoice, Relation};
pub use error::Error;
pub use generators::{
    fixture, gen_cnk, gen_cnk_democratic_family, gen_cnk_liberal_family, random_alpha,
    random_choice, Fixture, FixtureId,
};
pub use menu::{GrandSet, Menu, ABSOLUTE_MAX_ITEMS, DEFAULT_MAX_ITEMS};
pub use represent::{
    dem_from_lib, lib_from_dem, synth_liberal, synth_majoritarian, synth_majoritarian_with_limit,
    verify, Direction, SynthesisTrace, VerifyOutcome, DEFAULT_SIZE_LIMIT,
};
pub use share::Share;
pub use solvers::{
    acceptance_antichains, asymptotic_ratio, binomial, bounds_report, dem_number, lib_number,
    oracle_dem, oracle_lib, sperner_bound, AcceptanceAntichain, BoundsReport, DemLimits, DemNumber,
    DemResult, LibNumber,
};
