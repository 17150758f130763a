//! Brute-force reference semantics.
//!
//! Extensions are computed by enumerating all argument subsets over the
//! framework's defeat relation. This is the ground truth the encodings,
//! the learner and the benchmark harness are verified against, so it stays
//! deliberately simple: bitmask subsets, quadratic checks, no shortcuts
//! besides a polynomial fixpoint route for grounded membership tests.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::encodings::SemanticsId;
use crate::framework::{transitive_closure, ArgumentId, Extension, Framework, FrameworkKind};

#[derive(Debug, Clone, thiserror::Error)]
pub enum OracleError {
    #[error("framework has {n} arguments, above the enumeration cap of {cap}")]
    TooManyArguments { n: usize, cap: usize },
    #[error("deadline exceeded while enumerating extensions")]
    Timeout,
}

/// Enumeration limits for the oracle.
#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Subset enumeration is `2^n`; refuse frameworks above this size.
    pub max_args: usize,
    pub deadline: Option<Instant>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_args: 20,
            deadline: None,
        }
    }
}

/// The generalized attack relation used for conflict and defense checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefeatRelation {
    pairs: BTreeSet<(ArgumentId, ArgumentId)>,
}

impl DefeatRelation {
    pub fn pairs(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.pairs
    }

    pub fn contains(&self, attacker: &ArgumentId, target: &ArgumentId) -> bool {
        self.pairs
            .contains(&(attacker.clone(), target.clone()))
    }
}

/// Computes the defeat relation of a framework.
///
/// Plain frameworks defeat along attacks. Bipolar frameworks extend
/// attacks through the transitive support closure: a supporter of an
/// attacker defeats the target, and an attacker of a supporter defeats the
/// supported argument. Value-based frameworks drop attacks whose target is
/// preferred over the attacker.
pub fn defeats(framework: &Framework) -> DefeatRelation {
    let attacks = framework.attacks();
    let pairs = match framework.kind() {
        FrameworkKind::Aaf => attacks.clone(),
        FrameworkKind::Baf => {
            let support: BTreeSet<(String, String)> = framework
                .supports()
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect();
            let support = transitive_closure(&support);
            let supports = |x: &ArgumentId, y: &ArgumentId| {
                support.contains(&(x.to_string(), y.to_string()))
            };
            let mut pairs = attacks.clone();
            for (z, y) in attacks {
                for x in framework.args() {
                    // supporter of an attacker
                    if supports(x, z) {
                        pairs.insert((x.clone(), y.clone()));
                    }
                }
            }
            for (x, z) in attacks {
                for y in framework.args() {
                    // attack on a supporter carries over to the supported
                    if supports(z, y) {
                        pairs.insert((x.clone(), y.clone()));
                    }
                }
            }
            pairs
        }
        FrameworkKind::Vaf => {
            let valpref = transitive_closure(framework.valprefs());
            let value_of = |a: &ArgumentId| framework.values().get(a).expect("VAF values total");
            let mut pref: BTreeSet<(ArgumentId, ArgumentId)> = BTreeSet::new();
            for a in framework.args() {
                for b in framework.args() {
                    if valpref.contains(&(value_of(a).clone(), value_of(b).clone())) {
                        pref.insert((a.clone(), b.clone()));
                    }
                }
            }
            // argument preference is transitive as well
            loop {
                let mut additions = Vec::new();
                for (x, y) in &pref {
                    for (y2, z) in &pref {
                        if y == y2 && !pref.contains(&(x.clone(), z.clone())) {
                            additions.push((x.clone(), z.clone()));
                        }
                    }
                }
                if additions.is_empty() {
                    break;
                }
                pref.extend(additions);
            }
            attacks
                .iter()
                .filter(|(x, y)| !pref.contains(&(y.clone(), x.clone())))
                .cloned()
                .collect()
        }
    };
    DefeatRelation { pairs }
}

/// Indexed defeat masks for subset enumeration.
struct Masks {
    args: Vec<ArgumentId>,
    defeats_of: Vec<u64>,
    defeaters_of: Vec<u64>,
    all: u64,
}

impl Masks {
    fn build(framework: &Framework) -> Masks {
        let args: Vec<ArgumentId> = framework.args().iter().cloned().collect();
        let index = |a: &ArgumentId| args.binary_search(a).expect("argument indexed");
        let n = args.len();
        let mut defeats_of = vec![0u64; n];
        let mut defeaters_of = vec![0u64; n];
        for (x, y) in defeats(framework).pairs() {
            let (i, j) = (index(x), index(y));
            defeats_of[i] |= 1 << j;
            defeaters_of[j] |= 1 << i;
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Masks {
            args,
            defeats_of,
            defeaters_of,
            all,
        }
    }

    fn defeated_by(&self, set: u64) -> u64 {
        let mut defeated = 0u64;
        let mut m = set;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            defeated |= self.defeats_of[i];
            m &= m - 1;
        }
        defeated
    }

    fn conflict_free(&self, set: u64) -> bool {
        set & self.defeated_by(set) == 0
    }

    fn admissible(&self, set: u64) -> bool {
        let defeated = self.defeated_by(set);
        if set & defeated != 0 {
            return false;
        }
        let mut m = set;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if self.defeaters_of[i] & !defeated != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    fn complete(&self, set: u64) -> bool {
        if !self.admissible(set) {
            return false;
        }
        let defeated = self.defeated_by(set);
        let mut m = self.all & !set;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if self.defeaters_of[i] & !defeated == 0 {
                return false; // defended but left out
            }
            m &= m - 1;
        }
        true
    }

    fn stable(&self, set: u64) -> bool {
        let defeated = self.defeated_by(set);
        set & defeated == 0 && set | defeated == self.all
    }

    fn to_extension(&self, set: u64) -> Extension {
        let mut members = BTreeSet::new();
        let mut m = set;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            members.insert(self.args[i].clone());
            m &= m - 1;
        }
        Extension::new(members)
    }

    fn to_mask(&self, e: &Extension) -> Option<u64> {
        let mut mask = 0u64;
        for member in &e.members {
            match self.args.binary_search(member) {
                Ok(i) => mask |= 1 << i,
                Err(_) => return None,
            }
        }
        Some(mask)
    }

    /// Least fixpoint of the defense function; the grounded extension.
    fn grounded_fixpoint(&self) -> u64 {
        let mut set = 0u64;
        loop {
            let defeated = self.defeated_by(set);
            let mut next = 0u64;
            for i in 0..self.args.len() {
                if self.defeaters_of[i] & !defeated == 0 {
                    next |= 1 << i;
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }
}

fn keep_minimal(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| m.count_ones());
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|k| k & m == *k && *k != m) {
            kept.push(m);
        }
    }
    kept
}

fn keep_maximal(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|k| k & m == m && *k != m) {
            kept.push(m);
        }
    }
    kept
}

/// All extensions of `framework` under `semantics`, by subset enumeration.
pub fn extensions(
    framework: &Framework,
    semantics: SemanticsId,
) -> Result<BTreeSet<Extension>, OracleError> {
    extensions_with(framework, semantics, &OracleOptions::default())
}

pub fn extensions_with(
    framework: &Framework,
    semantics: SemanticsId,
    options: &OracleOptions,
) -> Result<BTreeSet<Extension>, OracleError> {
    let n = framework.args().len();
    if n > options.max_args {
        return Err(OracleError::TooManyArguments {
            n,
            cap: options.max_args,
        });
    }
    let masks = Masks::build(framework);
    let mut hits: Vec<u64> = Vec::new();
    let test: fn(&Masks, u64) -> bool = match semantics {
        SemanticsId::ConflictFree => Masks::conflict_free,
        SemanticsId::Admissible | SemanticsId::Preferred => Masks::admissible,
        SemanticsId::Complete | SemanticsId::Grounded => Masks::complete,
        SemanticsId::Stable => Masks::stable,
    };
    for set in 0..=masks.all {
        if set.trailing_zeros() >= 14 {
            // deadline checks every 16384 subsets
            if let Some(d) = options.deadline {
                if Instant::now() >= d {
                    return Err(OracleError::Timeout);
                }
            }
        }
        if test(&masks, set) {
            hits.push(set);
        }
        if set == masks.all {
            break;
        }
    }
    let hits = match semantics {
        SemanticsId::Grounded => keep_minimal(hits),
        SemanticsId::Preferred => keep_maximal(hits),
        _ => hits,
    };
    Ok(hits.into_iter().map(|m| masks.to_extension(m)).collect())
}

/// Membership test. Conflict-free, admissible, complete and stable are
/// checked directly; grounded uses the defense fixpoint; preferred needs
/// the global extension set and may therefore hit the enumeration cap.
pub fn is_extension(
    framework: &Framework,
    semantics: SemanticsId,
    extension: &Extension,
) -> Result<bool, OracleError> {
    let masks = Masks::build(framework);
    let Some(set) = masks.to_mask(extension) else {
        return Ok(false);
    };
    match semantics {
        SemanticsId::ConflictFree => Ok(masks.conflict_free(set)),
        SemanticsId::Admissible => Ok(masks.admissible(set)),
        SemanticsId::Complete => Ok(masks.complete(set)),
        SemanticsId::Stable => Ok(masks.stable(set)),
        SemanticsId::Grounded => Ok(set == masks.grounded_fixpoint()),
        SemanticsId::Preferred => {
            Ok(extensions(framework, semantics)?.contains(extension))
        }
    }
}

/// The grounded extension computed by iterating the defense function;
/// a polynomial cross-check for the enumeration route.
pub fn grounded_fixpoint(framework: &Framework) -> Extension {
    let masks = Masks::build(framework);
    let set = masks.grounded_fixpoint();
    masks.to_extension(set)
}

/// The arguments belonging to at least one extension under `semantics`.
pub fn credulous_accepted(
    framework: &Framework,
    semantics: SemanticsId,
    options: &OracleOptions,
) -> Result<BTreeSet<ArgumentId>, OracleError> {
    let exts = extensions_with(framework, semantics, options)?;
    Ok(exts.into_iter().flat_map(|e| e.members).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::parse_apx;

    fn ext(names: &[&str]) -> Extension {
        Extension::new(
            names
                .iter()
                .map(|n| ArgumentId::new(*n).unwrap())
                .collect(),
        )
    }

    fn families(
        f: &Framework,
        s: SemanticsId,
    ) -> Vec<Vec<String>> {
        extensions(f, s)
            .unwrap()
            .into_iter()
            .map(|e| e.members.iter().map(|a| a.to_string()).collect())
            .collect()
    }

    #[test]
    fn aaf_defeat_is_attack() {
        let f = parse_apx("arg(a). arg(b). att(a,b).").unwrap();
        let d = defeats(&f);
        assert_eq!(d.pairs().len(), 1);
        assert!(d.contains(
            &ArgumentId::new("a").unwrap(),
            &ArgumentId::new("b").unwrap()
        ));
    }

    #[test]
    fn baf_supported_defeat() {
        // a supports b, b attacks c: both b and a defeat c
        let f = parse_apx("arg(a). arg(b). arg(c). support(a,b). att(b,c).").unwrap();
        let d = defeats(&f);
        let arg = |n: &str| ArgumentId::new(n).unwrap();
        assert!(d.contains(&arg("a"), &arg("c")));
        assert!(d.contains(&arg("b"), &arg("c")));
        assert_eq!(d.pairs().len(), 2);
    }

    #[test]
    fn baf_secondary_defeat() {
        // a attacks b, b supports c: a defeats c
        let f = parse_apx("arg(a). arg(b). arg(c). att(a,b). support(b,c).").unwrap();
        let d = defeats(&f);
        let arg = |n: &str| ArgumentId::new(n).unwrap();
        assert!(d.contains(&arg("a"), &arg("c")));
        assert!(d.contains(&arg("a"), &arg("b")));
    }

    #[test]
    fn vaf_preference_blocks_attack() {
        let f =
            parse_apx("arg(a). arg(b). att(a,b). val(a,u). val(b,v). valpref(v,u).").unwrap();
        let d = defeats(&f);
        assert!(d.pairs().is_empty());
    }

    #[test]
    fn vaf_preference_uses_transitive_closure() {
        let f = parse_apx(
            "arg(a). arg(b). att(a,b). val(a,u). val(b,w). valpref(w,v). valpref(v,u).",
        )
        .unwrap();
        assert!(defeats(&f).pairs().is_empty());
    }

    #[test]
    fn mutual_attack_families() {
        let f = parse_apx("arg(a). arg(b). att(a,b). att(b,a).").unwrap();
        assert_eq!(
            families(&f, SemanticsId::Stable),
            vec![vec!["a".to_string()], vec!["b".to_string()]]
        );
        assert_eq!(families(&f, SemanticsId::Grounded), vec![Vec::<String>::new()]);
        assert_eq!(
            families(&f, SemanticsId::Admissible),
            vec![vec![], vec!["a".to_string()], vec!["b".to_string()]]
        );
    }

    #[test]
    fn chain_labelling_is_admissible() {
        let f = parse_apx("arg(a). arg(b). arg(c). att(a,b). att(b,c).").unwrap();
        assert!(is_extension(&f, SemanticsId::Admissible, &ext(&["a", "c"])).unwrap());
        assert_eq!(
            families(&f, SemanticsId::Stable),
            vec![vec!["a".to_string(), "c".to_string()]]
        );
    }

    #[test]
    fn three_cycle_has_no_stable_extension() {
        let f = parse_apx("arg(a). arg(b). arg(c). att(a,b). att(b,c). att(c,a).").unwrap();
        assert!(families(&f, SemanticsId::Stable).is_empty());
        assert_eq!(families(&f, SemanticsId::Grounded), vec![Vec::<String>::new()]);
    }

    #[test]
    fn is_extension_examples() {
        let f = parse_apx("arg(a). arg(b). att(a,b). att(b,a).").unwrap();
        assert!(is_extension(&f, SemanticsId::Stable, &ext(&["a"])).unwrap());
        assert!(is_extension(&f, SemanticsId::Admissible, &ext(&[])).unwrap());
        let g = parse_apx(
            "arg(a). arg(b). arg(c). arg(d). att(a,b). att(b,a). att(b,c). att(a,c). att(c,d).",
        )
        .unwrap();
        assert!(!is_extension(&g, SemanticsId::Admissible, &ext(&["a", "b"])).unwrap());
    }

    #[test]
    fn is_extension_agrees_with_enumeration() {
        let f = parse_apx(
            "arg(a). arg(b). arg(c). arg(d). att(a,b). att(b,a). att(b,c). att(a,c). att(c,d).",
        )
        .unwrap();
        for s in SemanticsId::ALL {
            let family = extensions(&f, s).unwrap();
            // every subset: membership test matches enumeration
            let args: Vec<ArgumentId> = f.args().iter().cloned().collect();
            for mask in 0u32..(1 << args.len()) {
                let members: BTreeSet<ArgumentId> = args
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, a)| a.clone())
                    .collect();
                let e = Extension::new(members);
                assert_eq!(
                    is_extension(&f, s, &e).unwrap(),
                    family.contains(&e),
                    "semantics {s} subset {e}"
                );
            }
        }
    }

    #[test]
    fn grounded_fixpoint_matches_enumeration() {
        let texts = [
            "arg(a). arg(b). att(a,b). att(b,a).",
            "arg(a). arg(b). arg(c). att(a,b). att(b,c).",
            "arg(a). att(a,a).",
            "arg(a). arg(b). arg(c). att(a,b). att(b,c). att(c,a).",
            "arg(a). arg(b). arg(c). support(a,b). att(b,c).",
        ];
        for text in texts {
            let f = parse_apx(text).unwrap();
            let enumerated = extensions(&f, SemanticsId::Grounded).unwrap();
            assert_eq!(enumerated.len(), 1, "{text}");
            assert_eq!(
                enumerated.into_iter().next().unwrap(),
                grounded_fixpoint(&f),
                "{text}"
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let args: String = (1..=22).map(|i| format!("arg(a{i}). ")).collect();
        let f = parse_apx(&args).unwrap();
        assert!(matches!(
            extensions(&f, SemanticsId::Stable),
            Err(OracleError::TooManyArguments { n: 22, cap: 20 })
        ));
    }

    #[test]
    fn empty_framework_extensions() {
        let f = parse_apx("").unwrap();
        for s in SemanticsId::ALL {
            let family = extensions(&f, s).unwrap();
            assert_eq!(family.len(), 1);
            assert!(family.iter().next().unwrap().members.is_empty());
        }
    }
}
