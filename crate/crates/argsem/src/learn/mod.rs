//! Learning semantics encodings from labelled examples.
//!
//! A learning task pairs background knowledge with positive and negative
//! examples, each a partial `in`/`out` labelling plus a context encoding a
//! framework. The learner searches the mode-bias rule space for a
//! minimum-cost hypothesis whose program accepts every positive example
//! and rejects every negative one, optionally learning heuristic
//! statements alongside the rules.

mod examples;
mod search;
mod space;

pub use examples::{format_examples, generate_examples, parse_examples};
pub use search::learn;
pub use space::enumerate_space;

use std::collections::BTreeSet;
use std::fmt;

use crate::asp::{
    minimal_answer_sets, Atom, GroundAtom, Program, Rule, Solver, Term,
};
use crate::oracle::OracleError;
use crate::AspError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum LearnError {
    #[error("no hypothesis within the configured bounds solves the task")]
    Unsatisfiable,
    #[error("invalid example: {0}")]
    InvalidExample(String),
    #[error("syntax error in example file at line {line}: {message}")]
    ExampleSyntax { line: usize, message: String },
    #[error("only {available} distinct labellings available, {requested} requested")]
    InsufficientLabellings { available: usize, requested: usize },
    #[error(transparent)]
    Engine(#[from] AspError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A context-dependent partial interpretation: the labelling an answer set
/// must (positive) or must not (negative) extend, over a framework context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdpiExample {
    pub polarity: Polarity,
    pub inclusions: BTreeSet<GroundAtom>,
    pub exclusions: BTreeSet<GroundAtom>,
    pub context: BTreeSet<GroundAtom>,
}

const CONTEXT_PREDICATES: [(&str, usize); 5] = [
    ("arg", 1),
    ("att", 2),
    ("support", 2),
    ("val", 2),
    ("valpref", 2),
];

impl CdpiExample {
    pub fn new(
        polarity: Polarity,
        inclusions: BTreeSet<GroundAtom>,
        exclusions: BTreeSet<GroundAtom>,
        context: BTreeSet<GroundAtom>,
    ) -> Result<Self, LearnError> {
        if let Some(shared) = inclusions.intersection(&exclusions).next() {
            return Err(LearnError::InvalidExample(format!(
                "`{shared}` is both an inclusion and an exclusion"
            )));
        }
        for fact in &context {
            let known = CONTEXT_PREDICATES
                .iter()
                .any(|(p, a)| *p == fact.predicate && *a == fact.arity());
            if !known {
                return Err(LearnError::InvalidExample(format!(
                    "`{fact}` is not a framework fact"
                )));
            }
        }
        let declared: BTreeSet<&str> = context
            .iter()
            .filter(|f| f.predicate == "arg")
            .map(|f| f.args[0].as_str())
            .collect();
        for atom in inclusions.iter().chain(&exclusions) {
            if !(atom.arity() == 1 && (atom.predicate == "in" || atom.predicate == "out")) {
                return Err(LearnError::InvalidExample(format!(
                    "`{atom}` is not an in/1 or out/1 atom"
                )));
            }
            if !declared.contains(atom.args[0].as_str()) {
                return Err(LearnError::InvalidExample(format!(
                    "`{atom}` mentions an argument not declared in the context"
                )));
            }
        }
        Ok(CdpiExample {
            polarity,
            inclusions,
            exclusions,
            context,
        })
    }

    /// An interpretation extends this example's partial interpretation if
    /// it holds every inclusion and no exclusion.
    pub fn extended_by(&self, atoms: &BTreeSet<GroundAtom>) -> bool {
        self.inclusions.iter().all(|a| atoms.contains(a))
            && self.exclusions.iter().all(|a| !atoms.contains(a))
    }
}

impl fmt::Display for CdpiExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.polarity {
            Polarity::Positive => "#pos",
            Polarity::Negative => "#neg",
        };
        let atoms = |set: &BTreeSet<GroundAtom>| {
            set.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let facts = self
            .context
            .iter()
            .map(|a| format!("{a}."))
            .collect::<Vec<_>>()
            .join(" ");
        write!(
            f,
            "{tag}({{{}}}, {{{}}}, {{{}}}).",
            atoms(&self.inclusions),
            atoms(&self.exclusions),
            facts
        )
    }
}

/// One mode declaration: a predicate schema allowed in learned rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeDecl {
    pub predicate: String,
    pub arity: usize,
    /// Never allowed under negation as failure.
    pub positive_only: bool,
}

impl ModeDecl {
    pub fn new(predicate: impl Into<String>, arity: usize) -> Self {
        ModeDecl {
            predicate: predicate.into(),
            arity,
            positive_only: false,
        }
    }

    pub fn positive_only(predicate: impl Into<String>, arity: usize) -> Self {
        ModeDecl {
            predicate: predicate.into(),
            arity,
            positive_only: true,
        }
    }
}

/// Head and body mode declarations spanning the hypothesis space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBias {
    pub head: Vec<ModeDecl>,
    pub body: Vec<ModeDecl>,
}

impl Default for ModeBias {
    /// The argumentation bias: `in`/`out` heads; `in`, `out`, `arg`
    /// (positive only), `att`, `defeated`, `not_defended` and `supported`
    /// bodies.
    fn default() -> Self {
        ModeBias {
            head: vec![ModeDecl::new("in", 1), ModeDecl::new("out", 1)],
            body: vec![
                ModeDecl::new("in", 1),
                ModeDecl::new("out", 1),
                ModeDecl::positive_only("arg", 1),
                ModeDecl::new("att", 2),
                ModeDecl::new("defeated", 1),
                ModeDecl::new("not_defended", 1),
                ModeDecl::new("supported", 1),
            ],
        }
    }
}

/// A candidate or learned rule set, possibly with heuristic statements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Hypothesis {
    pub rules: Vec<Rule>,
    pub heuristics: Vec<Atom>,
}

impl Hypothesis {
    pub fn empty() -> Self {
        Hypothesis::default()
    }

    /// Total literal count of the rules plus one per heuristic statement.
    pub fn cost(&self) -> usize {
        self.rules.iter().map(Rule::literal_count).sum::<usize>() + self.heuristics.len()
    }

    pub fn to_program(&self) -> Program {
        Program::new(self.rules.clone(), self.heuristics.clone())
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_program())
    }
}

/// The candidate heuristic atoms offered when heuristic learning is on.
pub(crate) fn heuristic_candidates() -> Vec<Atom> {
    vec![
        Atom::new("in", vec![Term::variable("X")]),
        Atom::new("out", vec![Term::variable("X")]),
    ]
}

/// A full learning task.
#[derive(Debug, Clone)]
pub struct LearningTask {
    pub background: Program,
    pub bias: ModeBias,
    pub positives: Vec<CdpiExample>,
    pub negatives: Vec<CdpiExample>,
    pub learn_heuristics: bool,
}

/// Search bounds and engine limits.
#[derive(Debug, Clone)]
pub struct LearnOptions {
    /// Maximum body literals per rule.
    pub max_body: usize,
    /// Maximum distinct variables per rule.
    pub max_vars: usize,
    /// Maximum total hypothesis cost explored before reporting the task
    /// unsatisfiable within bounds.
    pub max_cost: usize,
    pub solver: Solver,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions {
            max_body: 3,
            max_vars: 2,
            max_cost: 12,
            solver: Solver::default(),
        }
    }
}

/// Whether `program` accepts the example: some projection-minimal answer
/// set of the program over the example's context extends the example's
/// partial interpretation.
pub fn accepts(program: &Program, example: &CdpiExample) -> Result<bool, AspError> {
    let sets = minimal_answer_sets(program, &example.context)?;
    Ok(sets.iter().any(|s| example.extended_by(&s.atoms)))
}

/// [`accepts`] with explicit engine limits.
pub fn accepts_with(
    solver: &Solver,
    program: &Program,
    example: &CdpiExample,
) -> Result<bool, AspError> {
    let sets = solver.minimal_answer_sets(program, &example.context)?;
    Ok(sets.iter().any(|s| example.extended_by(&s.atoms)))
}
