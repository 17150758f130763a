//! Answer-set enumeration.
//!
//! Answer sets of a ground program are determined by which atoms under
//! negation-as-failure (the "nant" atoms) they contain: fixing those fixes
//! the reduct, and the candidate interpretation is the least model of that
//! reduct. The solver searches assignments of the nant atoms with
//! lower/upper-bound propagation, and validates each leaf against the
//! reduct fixpoint.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use super::ground::{ground, GroundProgram};
use super::syntax::{GroundAtom, Interpretation, Program};
use super::AspError;

/// Enumeration limits: a cap on the number of distinct ground atoms and an
/// optional wall-clock deadline checked cooperatively during search.
#[derive(Debug, Clone)]
pub struct Solver {
    pub max_ground_atoms: usize,
    pub deadline: Option<Instant>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver {
            max_ground_atoms: 1_000_000,
            deadline: None,
        }
    }
}

/// All answer sets of `program` over `facts`, sorted.
pub fn answer_sets(
    program: &Program,
    facts: &BTreeSet<GroundAtom>,
) -> Result<Vec<Interpretation>, AspError> {
    Solver::default().answer_sets(program, facts)
}

/// The answer sets whose projection onto the ground heuristic atoms is
/// subset-minimal; equals [`answer_sets`] when the program has no
/// heuristic statements.
pub fn minimal_answer_sets(
    program: &Program,
    facts: &BTreeSet<GroundAtom>,
) -> Result<Vec<Interpretation>, AspError> {
    Solver::default().minimal_answer_sets(program, facts)
}

impl Solver {
    pub fn with_deadline(timeout: Duration) -> Self {
        Solver {
            deadline: Some(Instant::now() + timeout),
            ..Solver::default()
        }
    }

    pub fn answer_sets(
        &self,
        program: &Program,
        facts: &BTreeSet<GroundAtom>,
    ) -> Result<Vec<Interpretation>, AspError> {
        let gp = ground(program, facts)?;
        self.answer_sets_ground(&gp)
    }

    pub fn answer_sets_ground(&self, gp: &GroundProgram) -> Result<Vec<Interpretation>, AspError> {
        let mut search = Search::build(gp, self)?;
        search.run()?;
        let mut result = search.found;
        result.sort();
        Ok(result)
    }

    pub fn minimal_answer_sets(
        &self,
        program: &Program,
        facts: &BTreeSet<GroundAtom>,
    ) -> Result<Vec<Interpretation>, AspError> {
        let gp = ground(program, facts)?;
        self.minimal_answer_sets_ground(&gp)
    }

    pub fn minimal_answer_sets_ground(
        &self,
        gp: &GroundProgram,
    ) -> Result<Vec<Interpretation>, AspError> {
        let all = self.answer_sets_ground(gp)?;
        Ok(filter_minimal_projections(all, &gp.heuristic_atoms))
    }
}

/// Keeps the interpretations whose projection onto `targets` is minimal
/// with respect to set inclusion among all of them.
pub fn filter_minimal_projections(
    interpretations: Vec<Interpretation>,
    targets: &BTreeSet<GroundAtom>,
) -> Vec<Interpretation> {
    if targets.is_empty() {
        return interpretations;
    }
    let target_ids: Vec<&GroundAtom> = targets.iter().collect();
    let words = target_ids.len().div_ceil(64);
    let projections: Vec<Vec<u64>> = interpretations
        .iter()
        .map(|i| {
            let mut mask = vec![0u64; words];
            for (idx, atom) in target_ids.iter().enumerate() {
                if i.contains(atom) {
                    mask[idx / 64] |= 1 << (idx % 64);
                }
            }
            mask
        })
        .collect();
    let strictly_contains = |a: &[u64], b: &[u64]| {
        // b ⊂ a
        b.iter().zip(a).all(|(x, y)| x & !y == 0) && a != b
    };
    interpretations
        .iter()
        .zip(&projections)
        .filter(|(_, p)| !projections.iter().any(|q| strictly_contains(p, q)))
        .map(|(i, _)| i.clone())
        .collect()
}

struct IndexedRule {
    head: Option<usize>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

const UNKNOWN: i8 = -1;
const FALSE: i8 = 0;
const TRUE: i8 = 1;

struct Search {
    atoms: Vec<GroundAtom>,
    rules: Vec<IndexedRule>,
    nant: Vec<usize>,
    assign: Vec<i8>,
    found: Vec<Interpretation>,
    deadline: Option<Instant>,
    // scratch buffer for bound computation
    derived: Vec<bool>,
}

impl Search {
    fn build(gp: &GroundProgram, solver: &Solver) -> Result<Self, AspError> {
        let atom_set = gp.atoms();
        if atom_set.len() > solver.max_ground_atoms {
            return Err(AspError::ResourceLimit {
                ground_atoms: atom_set.len(),
                cap: solver.max_ground_atoms,
            });
        }
        let atoms: Vec<GroundAtom> = atom_set.into_iter().collect();
        let index_of = |a: &GroundAtom| atoms.binary_search(a).expect("atom indexed");
        let rules: Vec<IndexedRule> = gp
            .rules
            .iter()
            .map(|r| IndexedRule {
                head: r.head.as_ref().map(index_of),
                pos: r.pos_body.iter().map(index_of).collect(),
                neg: r.neg_body.iter().map(index_of).collect(),
            })
            .collect();
        let nant_set: BTreeSet<usize> = rules.iter().flat_map(|r| r.neg.iter().copied()).collect();
        // Branch first on atoms whose negation guards a head that feeds
        // other rules (or a constraint); atoms guarding only dead-end
        // predicates are determined by propagation once the rest settles,
        // so guessing them early just multiplies the search tree.
        let body_predicates: BTreeSet<&str> = rules
            .iter()
            .flat_map(|r| r.pos.iter().chain(r.neg.iter()))
            .map(|&a| atoms[a].predicate.as_str())
            .collect();
        let mut score = vec![0usize; atoms.len()];
        for rule in &rules {
            let feeds_search = match rule.head {
                None => true, // constraints prune everywhere
                Some(h) => body_predicates.contains(atoms[h].predicate.as_str()),
            };
            if feeds_search {
                for &a in &rule.neg {
                    score[a] += 1;
                }
            }
        }
        let mut nant: Vec<usize> = nant_set.into_iter().collect();
        nant.sort_by_key(|&a| (std::cmp::Reverse(score[a]), a));
        let n = atoms.len();
        Ok(Search {
            atoms,
            rules,
            nant,
            assign: vec![UNKNOWN; n],
            found: Vec::new(),
            deadline: solver.deadline,
            derived: vec![false; n],
        })
    }

    fn check_deadline(&self) -> Result<(), AspError> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(AspError::Timeout);
            }
        }
        Ok(())
    }

    /// Least fixpoint over the rules admitted by `usable`; fills
    /// `self.derived` and reports whether an admitted constraint fired.
    fn fixpoint(&mut self, lower: bool) -> bool {
        self.derived.iter_mut().for_each(|d| *d = false);
        let mut bottom = false;
        let mut changed = true;
        while changed {
            changed = false;
            'rules: for rule in &self.rules {
                let usable = if lower {
                    rule.neg.iter().all(|&a| self.assign[a] == FALSE)
                } else {
                    rule.neg.iter().all(|&a| self.assign[a] != TRUE)
                };
                if !usable {
                    continue;
                }
                for &b in &rule.pos {
                    if !self.derived[b] {
                        continue 'rules;
                    }
                }
                match rule.head {
                    Some(h) => {
                        if !self.derived[h] {
                            self.derived[h] = true;
                            changed = true;
                        }
                    }
                    None => {
                        if lower && !bottom {
                            bottom = true;
                        }
                    }
                }
            }
        }
        bottom
    }

    /// Propagates forced assignments; returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let bottom = self.fixpoint(true);
            if bottom {
                return false;
            }
            let mut changed = false;
            // lower bound: derived under every completion
            for i in 0..self.nant.len() {
                let a = self.nant[i];
                if self.derived[a] {
                    match self.assign[a] {
                        FALSE => return false,
                        UNKNOWN => {
                            self.assign[a] = TRUE;
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            self.fixpoint(false);
            // upper bound: derivable under no completion
            for i in 0..self.nant.len() {
                let a = self.nant[i];
                if !self.derived[a] {
                    match self.assign[a] {
                        TRUE => return false,
                        UNKNOWN => {
                            self.assign[a] = FALSE;
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self) -> Result<(), AspError> {
        let entry = self.assign.clone();
        self.dfs(&entry)
    }

    fn dfs(&mut self, entry: &[i8]) -> Result<(), AspError> {
        self.check_deadline()?;
        self.assign.copy_from_slice(entry);
        if !self.propagate() {
            return Ok(());
        }
        match self
            .nant
            .iter()
            .find(|&&a| self.assign[a] == UNKNOWN)
            .copied()
        {
            None => self.harvest(),
            Some(atom) => {
                let branch_state = self.assign.clone();
                for value in [FALSE, TRUE] {
                    self.assign.copy_from_slice(&branch_state);
                    self.assign[atom] = value;
                    let child = self.assign.clone();
                    self.dfs(&child)?;
                }
                Ok(())
            }
        }
    }

    /// Called with every nant atom assigned: the lower-bound fixpoint is the
    /// candidate model; keep it if it matches the assignment and violates no
    /// constraint.
    fn harvest(&mut self) -> Result<(), AspError> {
        let bottom = self.fixpoint(true);
        if bottom {
            return Ok(());
        }
        for &a in &self.nant {
            if (self.assign[a] == TRUE) != self.derived[a] {
                return Ok(());
            }
        }
        let model: BTreeSet<GroundAtom> = self
            .derived
            .iter()
            .enumerate()
            .filter(|(_, &d)| d)
            .map(|(i, _)| self.atoms[i].clone())
            .collect();
        self.found.push(Interpretation::new(model));
        Ok(())
    }
}
