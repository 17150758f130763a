//! Hypothesis space enumeration from mode declarations.

use std::collections::BTreeSet;

use crate::asp::{Atom, Rule, Term};

use super::ModeBias;

const VARIABLE_POOL: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];

fn variable_names(max_vars: usize) -> Vec<String> {
    (0..max_vars)
        .map(|i| match VARIABLE_POOL.get(i) {
            Some(name) => (*name).to_string(),
            None => format!("V{i}"),
        })
        .collect()
}

/// All instantiations of a predicate schema over the variable pool.
fn schema_atoms(predicate: &str, arity: usize, vars: &[String]) -> Vec<Atom> {
    let mut atoms = Vec::new();
    let mut indices = vec![0usize; arity];
    loop {
        atoms.push(Atom::new(
            predicate,
            indices.iter().map(|&i| Term::variable(&vars[i])).collect(),
        ));
        let mut k = arity;
        loop {
            if k == 0 {
                return atoms;
            }
            k -= 1;
            indices[k] += 1;
            if indices[k] < vars.len() {
                break;
            }
            indices[k] = 0;
        }
    }
}

fn rename(atom: &Atom, mapping: &[usize], vars: &[String]) -> Atom {
    Atom::new(
        atom.predicate.clone(),
        atom.args
            .iter()
            .map(|t| match t {
                Term::Constant(c) => Term::constant(c),
                Term::Variable(v) => {
                    let i = vars.iter().position(|name| name == v).expect("pool var");
                    Term::variable(&vars[mapping[i]])
                }
            })
            .collect(),
    )
}

/// The canonical representative of a rule under variable renaming: the
/// least rule (with sorted body literals) over all permutations of the
/// variable pool.
fn canonicalize(rule: &Rule, vars: &[String]) -> Rule {
    let mut permutations = Vec::new();
    let mut indices: Vec<usize> = (0..vars.len()).collect();
    permute(&mut indices, 0, &mut permutations);
    permutations
        .iter()
        .map(|mapping| {
            let head = rule.head().map(|h| rename(h, mapping, vars));
            let mut pos: Vec<Atom> = rule.pos_body().iter().map(|a| rename(a, mapping, vars)).collect();
            let mut neg: Vec<Atom> = rule.neg_body().iter().map(|a| rename(a, mapping, vars)).collect();
            pos.sort();
            neg.sort();
            Rule::new(head, pos, neg).expect("renaming preserves safety")
        })
        .min()
        .expect("at least the identity permutation")
}

fn permute(indices: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == indices.len() {
        out.push(indices.clone());
        return;
    }
    for i in k..indices.len() {
        indices.swap(k, i);
        permute(indices, k + 1, out);
        indices.swap(k, i);
    }
}

/// Enumerates every safe rule with a head from the head modes and at most
/// `max_body` body literals over at most `max_vars` distinct variables,
/// deduplicated modulo variable renaming and returned in canonical order.
pub fn enumerate_space(bias: &ModeBias, max_body: usize, max_vars: usize) -> Vec<Rule> {
    assert!(max_body >= 1 && max_vars >= 1, "bounds must be positive");
    let vars = variable_names(max_vars);

    let mut literals: Vec<(Atom, bool)> = Vec::new(); // (atom, negated)
    for mode in &bias.body {
        for atom in schema_atoms(&mode.predicate, mode.arity, &vars) {
            literals.push((atom.clone(), false));
            if !mode.positive_only {
                literals.push((atom, true));
            }
        }
    }
    let heads: Vec<Atom> = bias
        .head
        .iter()
        .flat_map(|mode| schema_atoms(&mode.predicate, mode.arity, &vars))
        .collect();

    let mut space: BTreeSet<Rule> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    for head in &heads {
        build_bodies(
            head,
            &literals,
            0,
            max_body,
            max_vars,
            &vars,
            &mut chosen,
            &mut space,
        );
    }
    space.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn build_bodies(
    head: &Atom,
    literals: &[(Atom, bool)],
    from: usize,
    remaining: usize,
    max_vars: usize,
    vars: &[String],
    chosen: &mut Vec<usize>,
    space: &mut BTreeSet<Rule>,
) {
    if !chosen.is_empty() {
        let pos: Vec<Atom> = chosen
            .iter()
            .filter(|&&i| !literals[i].1)
            .map(|&i| literals[i].0.clone())
            .collect();
        let neg: Vec<Atom> = chosen
            .iter()
            .filter(|&&i| literals[i].1)
            .map(|&i| literals[i].0.clone())
            .collect();
        if let Ok(rule) = Rule::new(Some(head.clone()), pos, neg) {
            let distinct = rule.variables().len();
            if distinct <= max_vars {
                space.insert(canonicalize(&rule, vars));
            }
        }
    }
    if remaining == 0 {
        return;
    }
    for i in from..literals.len() {
        chosen.push(i);
        build_bodies(head, literals, i + 1, remaining - 1, max_vars, vars, chosen, space);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asp::parse_program;

    fn space_contains(space: &[Rule], text: &str) -> bool {
        let program = parse_program(text).unwrap();
        let rule = canonicalize(&program.rules[0], &variable_names(2));
        space.contains(&rule)
    }

    #[test]
    fn contains_expected_rules() {
        let space = enumerate_space(&ModeBias::default(), 3, 2);
        assert!(space_contains(&space, "out(X) :- defeated(X)."));
        assert!(space_contains(&space, "in(X) :- arg(X), not out(X)."));
        assert!(space_contains(
            &space,
            "in(X) :- arg(X), not out(X), not not_defended(X)."
        ));
        assert!(space_contains(&space, "in(X) :- arg(X), att(Y,X)."));
    }

    #[test]
    fn arg_is_positive_only() {
        let space = enumerate_space(&ModeBias::default(), 3, 2);
        assert!(!space
            .iter()
            .any(|r| r.neg_body().iter().any(|a| a.predicate == "arg")));
    }

    #[test]
    fn variable_bound_is_enforced() {
        let narrow = enumerate_space(&ModeBias::default(), 3, 1);
        let two_var = parse_program("in(X) :- arg(X), att(Y,X).").unwrap();
        let canonical = canonicalize(&two_var.rules[0], &variable_names(2));
        assert!(!narrow.contains(&canonical));
        assert!(narrow.iter().all(|r| r.variables().len() <= 1));
    }

    #[test]
    fn body_bound_is_enforced() {
        let space = enumerate_space(&ModeBias::default(), 2, 2);
        assert!(space
            .iter()
            .all(|r| r.pos_body().len() + r.neg_body().len() <= 2));
        assert!(!space_contains(
            &space,
            "in(X) :- arg(X), not out(X), not not_defended(X)."
        ));
    }

    #[test]
    fn rules_are_canonical_and_deduplicated() {
        let space = enumerate_space(&ModeBias::default(), 3, 2);
        // a rule written with swapped variables canonicalizes to a member
        let program = parse_program("in(Y) :- arg(Y), att(X,Y).").unwrap();
        let vars = variable_names(2);
        let canonical = canonicalize(&program.rules[0], &vars);
        assert!(space.contains(&canonical));
        // no duplicates
        let set: BTreeSet<&Rule> = space.iter().collect();
        assert_eq!(set.len(), space.len());
        // every rule is safe and uses pool variables in canonical form
        for rule in &space {
            assert!(rule.variables().len() <= 2);
        }
    }

    #[test]
    fn all_rules_are_safe() {
        let space = enumerate_space(&ModeBias::default(), 3, 2);
        for rule in &space {
            let bound: BTreeSet<&str> =
                rule.pos_body().iter().flat_map(|a| a.variables()).collect();
            for atom in rule.head().iter().copied().chain(rule.neg_body()) {
                for v in atom.variables() {
                    assert!(bound.contains(v), "unsafe rule {rule}");
                }
            }
        }
    }
}
