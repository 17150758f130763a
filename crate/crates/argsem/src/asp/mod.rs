//! A miniature answer-set engine for normal programs with constraints and
//! heuristic statements: grounding, reduct construction, answer-set
//! enumeration, and projection-minimal answer sets.

mod ground;
mod parse;
mod solve;
mod syntax;

pub use ground::{
    ground, is_answer_set, least_model, reduct, DefiniteProgram, DefiniteRule, GroundProgram,
    GroundRule,
};
pub use parse::parse_program;
pub use solve::{answer_sets, filter_minimal_projections, minimal_answer_sets, Solver};
pub use syntax::{
    is_constant_token, is_variable_token, Atom, GroundAtom, Interpretation, Program, Rule, Term,
};

/// Errors raised by parsing, grounding or solving.
#[derive(Debug, Clone, thiserror::Error)]
pub enum AspError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("unsafe variable `{variable}` in rule `{rule}`")]
    UnsafeVariable { variable: String, rule: String },
    #[error("predicate `{predicate}` used with arity {found}, expected {expected}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("ground atom count {ground_atoms} exceeds the configured cap of {cap}")]
    ResourceLimit { ground_atoms: usize, cap: usize },
    #[error("deadline exceeded while enumerating answer sets")]
    Timeout,
}
