//! Core syntax of normal logic programs: terms, atoms, rules and programs.
//!
//! Programs consist of normal rules `h :- b1, ..., not c1, ...`, constraints
//! (headless rules) and heuristic statements `#heuristic a(X). [1@1, false]`.
//! No function symbols, aggregates or choice rules.

use std::collections::BTreeSet;
use std::fmt;

use super::AspError;

/// Returns true for a symbolic constant token: letters/digits/underscore,
/// starting with a lowercase letter.
pub fn is_constant_token(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Returns true for a variable token: as above but starting uppercase.
pub fn is_variable_token(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A term is a symbolic constant or a variable; there are no function symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Constant(String),
    Variable(String),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn variable(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(s) | Term::Variable(s) => write!(f, "{s}"),
        }
    }
}

/// A (possibly non-ground) atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_variable())
    }

    /// Variables occurring in this atom, in order of appearance.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Variable(v) => Some(v.as_str()),
            Term::Constant(_) => None,
        })
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Constant(c) => Some(c.as_str()),
            Term::Variable(_) => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A ground atom: predicate applied to constants only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<String>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }

    /// Shorthand for a unary ground atom.
    pub fn unary(predicate: impl Into<String>, arg: impl Into<String>) -> Self {
        GroundAtom::new(predicate, vec![arg.into()])
    }

    /// Shorthand for a binary ground atom.
    pub fn binary(
        predicate: impl Into<String>,
        a: impl Into<String>,
        b: impl Into<String>,
    ) -> Self {
        GroundAtom::new(predicate, vec![a.into(), b.into()])
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn to_atom(&self) -> Atom {
        Atom::new(
            self.predicate.clone(),
            self.args.iter().map(Term::constant).collect(),
        )
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A normal rule or constraint. A missing head denotes a constraint.
///
/// Safety: every variable in the head or in a negated body literal must
/// occur in a positive body literal; enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: Option<Atom>,
    pos_body: Vec<Atom>,
    neg_body: Vec<Atom>,
}

impl Rule {
    pub fn new(
        head: Option<Atom>,
        pos_body: Vec<Atom>,
        neg_body: Vec<Atom>,
    ) -> Result<Self, AspError> {
        let rule = Rule {
            head,
            pos_body,
            neg_body,
        };
        rule.check_safety()?;
        Ok(rule)
    }

    pub fn fact(head: Atom) -> Result<Self, AspError> {
        Rule::new(Some(head), Vec::new(), Vec::new())
    }

    fn check_safety(&self) -> Result<(), AspError> {
        let bound: BTreeSet<&str> = self.pos_body.iter().flat_map(|a| a.variables()).collect();
        let needs_binding = self
            .head
            .iter()
            .flat_map(|a| a.variables())
            .chain(self.neg_body.iter().flat_map(|a| a.variables()));
        for v in needs_binding {
            if !bound.contains(v) {
                return Err(AspError::UnsafeVariable {
                    variable: v.to_string(),
                    rule: self.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn head(&self) -> Option<&Atom> {
        self.head.as_ref()
    }

    pub fn pos_body(&self) -> &[Atom] {
        &self.pos_body
    }

    pub fn neg_body(&self) -> &[Atom] {
        &self.neg_body
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.pos_body.is_empty() && self.neg_body.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head
            .iter()
            .chain(self.pos_body.iter())
            .chain(self.neg_body.iter())
    }

    /// Distinct variables in order of first occurrence (head, then positive
    /// body, then negative body).
    pub fn variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for atom in self.atoms() {
            for v in atom.variables() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }

    /// Head plus body literal count; the cost unit used by the learner.
    pub fn literal_count(&self) -> usize {
        usize::from(self.head.is_some()) + self.pos_body.len() + self.neg_body.len()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = &self.head {
            write!(f, "{h}")?;
        }
        if !self.pos_body.is_empty() || !self.neg_body.is_empty() {
            if self.head.is_some() {
                write!(f, " ")?;
            }
            write!(f, ":- ")?;
            let mut first = true;
            for a in &self.pos_body {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
                first = false;
            }
            for a in &self.neg_body {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "not {a}")?;
                first = false;
            }
        }
        write!(f, ".")
    }
}

/// A program: normal rules, constraints and heuristic statements.
///
/// Each heuristic atom `a` stands for the statement
/// `#heuristic a. [1@1, false]` and marks the predicate instances whose
/// joint projection answer-set enumeration minimises.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub heuristics: Vec<Atom>,
}

impl Program {
    pub fn new(rules: Vec<Rule>, heuristics: Vec<Atom>) -> Self {
        Program { rules, heuristics }
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty() && self.heuristics.is_empty()
    }

    /// Concatenates two programs.
    pub fn union(&self, other: &Program) -> Program {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        let mut heuristics = self.heuristics.clone();
        heuristics.extend(other.heuristics.iter().cloned());
        Program { rules, heuristics }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        self.rules
            .iter()
            .flat_map(|r| r.atoms())
            .flat_map(|a| a.constants())
            .map(str::to_string)
            .collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        for h in &self.heuristics {
            writeln!(f, "#heuristic {h}. [1@1, false]")?;
        }
        Ok(())
    }
}

/// A set of ground atoms; candidate or actual answer set of some program.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interpretation {
    pub atoms: BTreeSet<GroundAtom>,
}

impl Interpretation {
    pub fn new(atoms: BTreeSet<GroundAtom>) -> Self {
        Interpretation { atoms }
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The atoms of this interpretation over the given predicate.
    pub fn project_predicate(&self, predicate: &str) -> BTreeSet<GroundAtom> {
        self.atoms
            .iter()
            .filter(|a| a.predicate == predicate)
            .cloned()
            .collect()
    }
}

impl FromIterator<GroundAtom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = GroundAtom>>(iter: I) -> Self {
        Interpretation {
            atoms: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn safety_rejects_unbound_head_variable() {
        let head = Atom::new("in", vec![Term::variable("X")]);
        let err = Rule::new(Some(head), vec![], vec![]).unwrap_err();
        assert!(matches!(err, AspError::UnsafeVariable { .. }));
    }

    #[test]
    fn safety_rejects_unbound_negative_variable() {
        let head = Atom::new("p", vec![Term::variable("X")]);
        let pos = vec![Atom::new("q", vec![Term::variable("X")])];
        let neg = vec![Atom::new("r", vec![Term::variable("Y")])];
        assert!(Rule::new(Some(head), pos, neg).is_err());
    }

    #[test]
    fn display_round_trip_shape() {
        let r = Rule::new(
            Some(Atom::new("in", vec![Term::variable("X")])),
            vec![Atom::new("arg", vec![Term::variable("X")])],
            vec![Atom::new("out", vec![Term::variable("X")])],
        )
        .unwrap();
        assert_eq!(r.to_string(), "in(X) :- arg(X), not out(X).");
        let c = Rule::new(
            None,
            vec![
                Atom::new("in", vec![Term::constant("a")]),
                Atom::new("in", vec![Term::constant("b")]),
            ],
            vec![],
        )
        .unwrap();
        assert_eq!(c.to_string(), ":- in(a), in(b).");
    }

    #[test]
    fn ground_atom_ordering_is_lexicographic() {
        let a = GroundAtom::unary("arg", "a");
        let b = GroundAtom::unary("arg", "b");
        let c = GroundAtom::binary("att", "a", "b");
        assert!(a < b && b < c);
    }
}
