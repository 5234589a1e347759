//! Dempster-Shafer evidence combination over small finite frames.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`Frame`] and [`FocalSet`]: hypotheses and bit-encoded subsets of them.
//! - [`MassFunction`]: a validated, sparse basic probability assignment.
//! - [`combine`] / [`combine_all`]: Dempster's rule with conflict normalization.
//! - [`belief`], [`plausibility`], [`belief_interval`] and the dense
//!   [`belief_all`] subset-sum transform.
//! - [`kb`]: the symptom/disease knowledge base model and its built-in fixture.
//! - [`engine`]: the consultation fold that turns selected symptoms into a
//!   ranked, traced [`Diagnosis`](engine::Diagnosis).
//!
//! With the `oracle` feature (always on for this crate's own tests) the
//! [`oracle`] module exposes naive dense reference implementations.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod belief;
mod combine;
mod error;
mod focal;
mod frame;
mod mass;

pub mod engine;
pub mod kb;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use belief::{belief, belief_all, belief_interval, plausibility, BeliefInterval, DENSE_LIMIT};
pub use combine::{combine, combine_all, CombinationOutcome, TOTAL_CONFLICT_EPS};
pub use error::EvidenceError;
pub use focal::FocalSet;
pub use frame::{Frame, MAX_FRAME};
pub use mass::{validate, MassFunction, MassViolation, PRUNE_EPS, SUM_TOLERANCE};
