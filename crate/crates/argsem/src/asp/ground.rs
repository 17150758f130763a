//! Grounding: instantiating program rules over the constants of the
//! program and its input facts.

use std::collections::{BTreeMap, BTreeSet};

use super::syntax::{Atom, GroundAtom, Interpretation, Program, Rule, Term};
use super::AspError;

/// A fully instantiated rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroundRule {
    pub head: Option<GroundAtom>,
    pub pos_body: Vec<GroundAtom>,
    pub neg_body: Vec<GroundAtom>,
}

impl GroundRule {
    pub fn fact(head: GroundAtom) -> Self {
        GroundRule {
            head: Some(head),
            pos_body: Vec::new(),
            neg_body: Vec::new(),
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &GroundAtom> {
        self.head
            .iter()
            .chain(self.pos_body.iter())
            .chain(self.neg_body.iter())
    }
}

/// The result of grounding: instantiated rules plus the ground instances of
/// every heuristic atom schema.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
    pub heuristic_atoms: BTreeSet<GroundAtom>,
}

impl GroundProgram {
    /// Every ground atom occurring anywhere in the program.
    pub fn atoms(&self) -> BTreeSet<GroundAtom> {
        let mut set: BTreeSet<GroundAtom> =
            self.rules.iter().flat_map(|r| r.atoms().cloned()).collect();
        set.extend(self.heuristic_atoms.iter().cloned());
        set
    }
}

/// A negation-free ground program; the output of [`reduct`].
///
/// A rule with no head stands for `⊥ :- body`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefiniteProgram {
    pub rules: Vec<DefiniteRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiniteRule {
    pub head: Option<GroundAtom>,
    pub body: Vec<GroundAtom>,
}

fn check_arities(
    program: &Program,
    facts: &BTreeSet<GroundAtom>,
) -> Result<BTreeMap<String, usize>, AspError> {
    let mut arities: BTreeMap<String, usize> = BTreeMap::new();
    let mut record = |pred: &str, arity: usize| -> Result<(), AspError> {
        match arities.get(pred) {
            Some(&known) if known != arity => Err(AspError::ArityMismatch {
                predicate: pred.to_string(),
                expected: known,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                arities.insert(pred.to_string(), arity);
                Ok(())
            }
        }
    };
    for rule in &program.rules {
        for atom in rule.atoms() {
            record(&atom.predicate, atom.arity())?;
        }
    }
    for atom in &program.heuristics {
        record(&atom.predicate, atom.arity())?;
    }
    for fact in facts {
        record(&fact.predicate, fact.arity())?;
    }
    Ok(arities)
}

fn instantiate(atom: &Atom, binding: &BTreeMap<&str, &str>) -> GroundAtom {
    let args = atom
        .args
        .iter()
        .map(|t| match t {
            Term::Constant(c) => c.clone(),
            Term::Variable(v) => binding
                .get(v.as_str())
                .expect("grounding binds every rule variable")
                .to_string(),
        })
        .collect();
    GroundAtom::new(atom.predicate.clone(), args)
}

fn instances_of(rule: &Rule, constants: &[String], out: &mut Vec<GroundRule>) {
    let vars = rule.variables();
    if vars.is_empty() {
        out.push(GroundRule {
            head: rule.head().map(|a| instantiate(a, &BTreeMap::new())),
            pos_body: rule.pos_body().iter().map(|a| instantiate(a, &BTreeMap::new())).collect(),
            neg_body: rule.neg_body().iter().map(|a| instantiate(a, &BTreeMap::new())).collect(),
        });
        return;
    }
    if constants.is_empty() {
        return;
    }
    // odometer over constants^|vars|
    let mut indices = vec![0usize; vars.len()];
    loop {
        let binding: BTreeMap<&str, &str> = vars
            .iter()
            .zip(indices.iter())
            .map(|(v, &i)| (*v, constants[i].as_str()))
            .collect();
        out.push(GroundRule {
            head: rule.head().map(|a| instantiate(a, &binding)),
            pos_body: rule.pos_body().iter().map(|a| instantiate(a, &binding)).collect(),
            neg_body: rule.neg_body().iter().map(|a| instantiate(a, &binding)).collect(),
        });
        let mut k = vars.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            indices[k] += 1;
            if indices[k] < constants.len() {
                break;
            }
            indices[k] = 0;
        }
    }
}

/// Grounds `program` over the constants of the program and `facts`.
///
/// Facts are included as bodiless rules; heuristic atom schemas are
/// instantiated over all constants.
pub fn ground(program: &Program, facts: &BTreeSet<GroundAtom>) -> Result<GroundProgram, AspError> {
    check_arities(program, facts)?;
    let mut constants: BTreeSet<String> = program.constants();
    constants.extend(facts.iter().flat_map(|f| f.args.iter().cloned()));
    let constants: Vec<String> = constants.into_iter().collect();

    let mut rules: Vec<GroundRule> = facts.iter().cloned().map(GroundRule::fact).collect();
    for rule in &program.rules {
        instances_of(rule, &constants, &mut rules);
    }

    let mut heuristic_atoms = BTreeSet::new();
    for schema in &program.heuristics {
        let mut ground_rules = Vec::new();
        let as_rule = Rule::new(None, vec![schema.clone()], vec![])
            .expect("heuristic schema is trivially safe as a body");
        instances_of(&as_rule, &constants, &mut ground_rules);
        heuristic_atoms.extend(ground_rules.into_iter().flat_map(|r| r.pos_body));
    }

    Ok(GroundProgram {
        rules,
        heuristic_atoms,
    })
}

/// The reduct of a ground program with respect to an interpretation:
/// rules whose negative body intersects the interpretation are dropped,
/// the remaining rules lose their negative body, and constraint heads
/// become `⊥` (represented by a missing head).
pub fn reduct(gp: &GroundProgram, interpretation: &Interpretation) -> DefiniteProgram {
    let rules = gp
        .rules
        .iter()
        .filter(|r| !r.neg_body.iter().any(|a| interpretation.contains(a)))
        .map(|r| DefiniteRule {
            head: r.head.clone(),
            body: r.pos_body.clone(),
        })
        .collect();
    DefiniteProgram { rules }
}

/// Iterated fixpoint from the empty set. Returns the least model and
/// whether `⊥` (a constraint head) was derived.
pub fn least_model(dp: &DefiniteProgram) -> (Interpretation, bool) {
    let mut model: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut bottom = false;
    let mut changed = true;
    while changed {
        changed = false;
        for rule in &dp.rules {
            if rule.body.iter().all(|a| model.contains(a)) {
                match &rule.head {
                    Some(h) => {
                        if model.insert(h.clone()) {
                            changed = true;
                        }
                    }
                    None => {
                        if !bottom {
                            bottom = true;
                        }
                    }
                }
            }
        }
    }
    (Interpretation::new(model), bottom)
}

/// Checks `interpretation == least_model(reduct(gp, interpretation))` with
/// no constraint violated.
pub fn is_answer_set(gp: &GroundProgram, interpretation: &Interpretation) -> bool {
    let (lm, bottom) = least_model(&reduct(gp, interpretation));
    !bottom && lm == *interpretation
}
