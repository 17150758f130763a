//! Translation of flat assumption-based frameworks into abstract ones.
//!
//! Two steps. First, arguments are constructed: one per pair of a derivable
//! atom (the root) and a subset-minimal assumption set deriving it; every
//! assumption trivially yields itself. Second, attacks are generated from
//! the contrary map: an argument attacks every argument holding an
//! assumption whose contrary it concludes.
//!
//! Argument indices are assigned in a fixed order (root, then assumption
//! set, both lexicographic), so the translation is reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::framework::{index_argument, AbaFramework, Framework};

/// An argument of the translated framework: a claim derivable from a
/// subset-minimal set of assumptions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StructuredArgument {
    /// 1-based position in the deterministic argument order.
    pub index: usize,
    /// The derived claim.
    pub root: String,
    /// The assumptions the claim is derived from.
    pub assumptions: BTreeSet<String>,
}

impl fmt::Display for StructuredArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {{", self.index)?;
        for (i, a) in self.assumptions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}} |- {}", self.root)
    }
}

/// Inserts `candidate` into a family of incomparable sets, keeping only
/// subset-minimal elements. Returns true if the family changed.
fn insert_minimal(family: &mut Vec<BTreeSet<String>>, candidate: BTreeSet<String>) -> bool {
    if family.iter().any(|s| s.is_subset(&candidate)) {
        return false;
    }
    family.retain(|s| !candidate.is_subset(s));
    family.push(candidate);
    true
}

/// Constructs all arguments of a flat framework.
///
/// Forward chaining propagates, for every atom, the family of
/// subset-minimal assumption sets deriving it; rule applications take
/// unions of body families and prune non-minimal results, iterating to a
/// fixpoint so cyclic rules are handled.
pub fn construct_arguments(aba: &AbaFramework) -> Vec<StructuredArgument> {
    let mut families: BTreeMap<&str, Vec<BTreeSet<String>>> = BTreeMap::new();
    for a in aba.assumptions() {
        families.insert(a.as_str(), vec![BTreeSet::from([a.clone()])]);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for (head, body) in aba.rules() {
            // every combination of one derivation per body atom
            let mut combos: Vec<BTreeSet<String>> = vec![BTreeSet::new()];
            let mut derivable = true;
            for atom in body {
                let Some(atom_family) = families.get(atom.as_str()) else {
                    derivable = false;
                    break;
                };
                let mut next = Vec::new();
                for combo in &combos {
                    for support in atom_family {
                        let mut union = combo.clone();
                        union.extend(support.iter().cloned());
                        if !next.contains(&union) {
                            next.push(union);
                        }
                    }
                }
                combos = next;
            }
            if !derivable {
                continue;
            }
            let family = families.entry(head.as_str()).or_default();
            for combo in combos {
                if insert_minimal(family, combo) {
                    changed = true;
                }
            }
        }
    }
    let mut arguments: Vec<StructuredArgument> = families
        .into_iter()
        .flat_map(|(root, family)| {
            family.into_iter().map(move |assumptions| StructuredArgument {
                index: 0,
                root: root.to_string(),
                assumptions,
            })
        })
        .collect();
    arguments.sort_by(|a, b| {
        (&a.root, &a.assumptions).cmp(&(&b.root, &b.assumptions))
    });
    for (i, argument) in arguments.iter_mut().enumerate() {
        argument.index = i + 1;
    }
    arguments
}

/// Generates the attack relation: argument `x` attacks argument `y`
/// whenever the root of `x` is the contrary of one of `y`'s assumptions.
/// The produced framework names argument `i` as `a<i>`.
pub fn generate_attacks(
    arguments: &[StructuredArgument],
    contrary: &BTreeMap<String, String>,
) -> Framework {
    let args = (1..=arguments.len()).map(index_argument).collect();
    let mut attacks = BTreeSet::new();
    for attacker in arguments {
        for target in arguments {
            let attacks_target = target
                .assumptions
                .iter()
                .any(|a| contrary.get(a) == Some(&attacker.root));
            if attacks_target {
                attacks.insert((
                    index_argument(attacker.index),
                    index_argument(target.index),
                ));
            }
        }
    }
    Framework::aaf(args, attacks).expect("translation produces a valid framework")
}

/// The full two-step translation; returns the framework together with the
/// argument table for traceability.
pub fn translate(aba: &AbaFramework) -> (Framework, Vec<StructuredArgument>) {
    let arguments = construct_arguments(aba);
    let framework = generate_attacks(&arguments, aba.contrary());
    (framework, arguments)
}

/// Renders the argument table as CSV with header `index,root,assumptions`;
/// assumption sets are space-separated.
pub fn argument_table_csv(arguments: &[StructuredArgument]) -> String {
    let mut out = String::from("index,root,assumptions\n");
    for a in arguments {
        let assumptions: Vec<&str> = a.assumptions.iter().map(String::as_str).collect();
        out.push_str(&format!("{},{},{}\n", a.index, a.root, assumptions.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::parse_aba;

    const WORKED_EXAMPLE: &str = "assumption p\nassumption q\ncontrary p t\ncontrary q r\nrule r s t\nrule s p\nrule t q";

    fn pairs(arguments: &[StructuredArgument]) -> Vec<(String, Vec<String>)> {
        arguments
            .iter()
            .map(|a| {
                (
                    a.root.clone(),
                    a.assumptions.iter().cloned().collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    #[test]
    fn worked_example_arguments() {
        let aba = parse_aba(WORKED_EXAMPLE).unwrap();
        let arguments = construct_arguments(&aba);
        let expected = vec![
            ("p".to_string(), vec!["p".to_string()]),
            ("q".to_string(), vec!["q".to_string()]),
            ("r".to_string(), vec!["p".to_string(), "q".to_string()]),
            ("s".to_string(), vec!["p".to_string()]),
            ("t".to_string(), vec!["q".to_string()]),
        ];
        assert_eq!(pairs(&arguments), expected);
        assert_eq!(
            arguments.iter().map(|a| a.index).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn worked_example_attacks() {
        let aba = parse_aba(WORKED_EXAMPLE).unwrap();
        let (framework, arguments) = translate(&aba);
        assert_eq!(framework.args().len(), 5);
        // t (index 5) is the contrary of p; r (index 3) of q
        let by_pair = |root: &str, assumptions: &[&str]| {
            arguments
                .iter()
                .find(|a| {
                    a.root == root
                        && a.assumptions.iter().map(String::as_str).collect::<Vec<_>>()
                            == assumptions
                })
                .map(|a| a.index)
                .unwrap()
        };
        let t = by_pair("t", &["q"]);
        let r = by_pair("r", &["p", "q"]);
        let p = by_pair("p", &["p"]);
        let q = by_pair("q", &["q"]);
        let s = by_pair("s", &["p"]);
        let expected: BTreeSet<(usize, usize)> =
            [(t, p), (t, s), (t, r), (r, q), (r, t), (r, r)].into();
        let actual: BTreeSet<(usize, usize)> = framework
            .attacks()
            .iter()
            .map(|(x, y)| {
                let strip = |a: &crate::framework::ArgumentId| {
                    a.as_str()[1..].parse::<usize>().unwrap()
                };
                (strip(x), strip(y))
            })
            .collect();
        assert_eq!(actual, expected);
        assert_eq!(expected.len(), 6);
    }

    #[test]
    fn worked_example_stable_extension() {
        // the translated framework has exactly one stable extension: the
        // q-rooted argument together with the t-rooted one
        let aba = parse_aba(WORKED_EXAMPLE).unwrap();
        let (framework, arguments) = translate(&aba);
        let family =
            crate::oracle::extensions(&framework, crate::encodings::SemanticsId::Stable).unwrap();
        assert_eq!(family.len(), 1);
        let q = arguments.iter().find(|a| a.root == "q").unwrap().index;
        let t = arguments.iter().find(|a| a.root == "t").unwrap().index;
        let expected = crate::framework::Extension::new(
            [index_argument(q), index_argument(t)].into_iter().collect(),
        );
        assert!(family.contains(&expected));
        assert!(crate::oracle::is_extension(
            &framework,
            crate::encodings::SemanticsId::Stable,
            &expected
        )
        .unwrap());
    }

    #[test]
    fn no_rules_yields_trivial_arguments() {
        let aba = parse_aba("assumption p\ncontrary p x").unwrap();
        let arguments = construct_arguments(&aba);
        assert_eq!(pairs(&arguments), vec![("p".to_string(), vec!["p".to_string()])]);
        let (framework, _) = translate(&aba);
        assert_eq!(framework.args().len(), 1);
        assert!(framework.attacks().is_empty());
    }

    #[test]
    fn non_minimal_assumption_sets_are_pruned() {
        let aba = parse_aba(
            "assumption p\nassumption q\ncontrary p x\ncontrary q y\nrule s p\nrule s p q",
        )
        .unwrap();
        let arguments = construct_arguments(&aba);
        let s_args: Vec<_> = arguments.iter().filter(|a| a.root == "s").collect();
        assert_eq!(s_args.len(), 1);
        assert_eq!(
            s_args[0].assumptions.iter().cloned().collect::<Vec<_>>(),
            vec!["p".to_string()]
        );
    }

    #[test]
    fn self_attack_from_self_contrary_root() {
        // t is the contrary of p, and t is derivable from p itself
        let aba = parse_aba("assumption p\ncontrary p t\nrule t p").unwrap();
        let (framework, arguments) = translate(&aba);
        let t_index = arguments.iter().find(|a| a.root == "t").unwrap().index;
        assert!(framework
            .attacks()
            .contains(&(index_argument(t_index), index_argument(t_index))));
    }

    #[test]
    fn contrary_assumption_attack() {
        // empty rule set, q is the contrary of p: the q-argument attacks the p-argument
        let aba = parse_aba("assumption p\nassumption q\ncontrary p q\ncontrary q x").unwrap();
        let (framework, arguments) = translate(&aba);
        let p = arguments.iter().find(|a| a.root == "p").unwrap().index;
        let q = arguments.iter().find(|a| a.root == "q").unwrap().index;
        assert_eq!(framework.attacks().len(), 1);
        assert!(framework
            .attacks()
            .contains(&(index_argument(q), index_argument(p))));
    }

    #[test]
    fn underivable_contrary_yields_no_attacks() {
        let aba = parse_aba("assumption p\ncontrary p x").unwrap();
        let (framework, _) = translate(&aba);
        assert_eq!(framework.args().len(), 1);
        assert!(framework.attacks().is_empty());
    }

    #[test]
    fn cyclic_rules_terminate() {
        let aba = parse_aba(
            "assumption p\ncontrary p x\nrule s t\nrule t s\nrule s p",
        )
        .unwrap();
        let arguments = construct_arguments(&aba);
        // s and t both derivable from {p} despite the s/t cycle
        assert_eq!(
            pairs(&arguments),
            vec![
                ("p".to_string(), vec!["p".to_string()]),
                ("s".to_string(), vec!["p".to_string()]),
                ("t".to_string(), vec!["p".to_string()]),
            ]
        );
    }

    #[test]
    fn empty_body_rule_derives_from_no_assumptions() {
        let aba = parse_aba("assumption p\ncontrary p t\nrule t").unwrap();
        let arguments = construct_arguments(&aba);
        let t = arguments.iter().find(|a| a.root == "t").unwrap();
        assert!(t.assumptions.is_empty());
        let (framework, _) = translate(&aba);
        // the assumption-free t-argument attacks the p-argument
        assert_eq!(framework.attacks().len(), 1);
    }

    #[test]
    fn argument_table_csv_format() {
        let aba = parse_aba(WORKED_EXAMPLE).unwrap();
        let (_, arguments) = translate(&aba);
        let csv = argument_table_csv(&arguments);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "index,root,assumptions");
        assert_eq!(lines.next().unwrap(), "1,p,p");
        assert_eq!(csv.lines().count(), 6);
    }
}
