//! argsem: a toolkit for computational argumentation.
//!
//! The crate computes acceptability extensions of abstract argumentation
//! frameworks (plain, bipolar and value-based) and of flat assumption-based
//! frameworks under the conflict-free, admissible, complete, grounded,
//! preferred and stable semantics. It ships two interchangeable solving
//! paths — a brute-force reference oracle and compact answer-set encodings
//! evaluated by a small built-in engine — plus a learner that reconstructs
//! those encodings from labelled examples, and a benchmarking harness.
//!
//! Start with the runnable programs under `examples/`, or the `argsem`
//! binary for the command-line interface.

pub mod aba;
pub mod asp;
pub mod bench;
pub mod encodings;
pub mod framework;
pub mod learn;
pub mod oracle;
mod rng;

pub use asp::AspError;
pub use encodings::SemanticsId;
pub use framework::{
    parse_aba, parse_apx, parse_iccma, AbaFramework, ArgumentId, Extension, Framework,
    FrameworkError, FrameworkKind,
};
