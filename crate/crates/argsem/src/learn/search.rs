//! Optimal hypothesis search.
//!
//! Iterative deepening on hypothesis cost, enumerating rule sets in
//! canonical order so the first solution found is the cheapest and, within
//! a cost level, the lexicographically least.
//!
//! Checking a candidate against an example is made cheap by a completion
//! analysis. Hypothesis rules only ever derive `in`/`out` atoms, and the
//! background predicates are determined by the `in`/`out` labelling plus
//! the context, so every answer set of background ∪ hypothesis ∪ context
//! is pinned down by how it completes the example's partial labelling.
//! Each completion yields one candidate interpretation, precomputed once;
//! a candidate hypothesis accepts it iff no rule instance contradicts the
//! interpretation (a per-rule bitmask) and the labelling is re-derivable
//! through the rules' surviving instances (a small fixpoint). Heuristic
//! statements add a projection-minimality condition that is delegated to
//! the real engine for the few candidates that survive the screen.

use std::collections::HashMap;
use std::time::Instant;

use crate::asp::{ground, GroundAtom, Program, Rule, Term};

use super::{
    accepts_with, heuristic_candidates, CdpiExample, Hypothesis, LearnError, LearnOptions,
    LearningTask, Polarity,
};

/// Completions are enumerated per example; cap the exponent.
const MAX_FREE_ATOMS: usize = 10;

pub fn learn(task: &LearningTask, options: &LearnOptions) -> Result<Hypothesis, LearnError> {
    TaskSearch::build(task, options)?.run()
}

type Mask = Vec<u64>;

fn mask_words(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

fn mask_set(mask: &mut Mask, bit: usize) {
    mask[bit / 64] |= 1 << (bit % 64);
}

fn mask_get(mask: &[u64], bit: usize) -> bool {
    mask[bit / 64] & (1 << (bit % 64)) != 0
}

fn mask_clear_all(target: &mut [u64], remove: &[u64]) {
    for (t, r) in target.iter_mut().zip(remove) {
        *t &= !r;
    }
}

fn mask_is_zero(mask: &[u64]) -> bool {
    mask.iter().all(|w| *w == 0)
}

/// A definite ground instance over example-wide atom ids.
#[derive(Debug, Clone)]
struct FireInstance {
    head: u32,
    pos: Vec<u32>,
}

/// One way of completing an example's partial labelling: the unique
/// candidate interpretation with that labelling, plus everything needed to
/// re-derive it.
struct Completion {
    /// The candidate interpretation as a bitmask over example atom ids.
    atoms: Mask,
    /// The `in`/`out` atom ids the hypothesis must derive.
    inout: Vec<u32>,
    /// Context facts and reduced background instances.
    base: Vec<FireInstance>,
}

struct CompData {
    n_atoms: usize,
    completions: Vec<Completion>,
    all_alive: Mask,
    /// Per rule: completions contradicted by some instance of the rule.
    viol: Vec<Mask>,
    /// Per rule and completion: instances usable for derivation.
    fires: Vec<Vec<Vec<FireInstance>>>,
}

struct ExampleEval {
    polarity: Polarity,
    /// `None` means the example is checked through the engine only.
    data: Option<CompData>,
}

/// Ground instances of a space rule over an example's constants, kept as
/// ground atoms for classification against each completion.
struct RawInstance {
    head: GroundAtom,
    pos: Vec<GroundAtom>,
    neg: Vec<GroundAtom>,
}

fn rule_instances(rule: &Rule, constants: &[String]) -> Vec<RawInstance> {
    let vars = rule.variables();
    let substitute = |atom: &crate::asp::Atom, binding: &HashMap<&str, &str>| {
        GroundAtom::new(
            atom.predicate.clone(),
            atom.args
                .iter()
                .map(|t| match t {
                    Term::Constant(c) => c.clone(),
                    Term::Variable(v) => (*binding.get(v.as_str()).expect("bound")).to_string(),
                })
                .collect(),
        )
    };
    let mut out = Vec::new();
    if vars.is_empty() {
        let binding = HashMap::new();
        out.push(RawInstance {
            head: substitute(rule.head().expect("space rules have heads"), &binding),
            pos: rule.pos_body().iter().map(|a| substitute(a, &binding)).collect(),
            neg: rule.neg_body().iter().map(|a| substitute(a, &binding)).collect(),
        });
        return out;
    }
    if constants.is_empty() {
        return out;
    }
    let mut indices = vec![0usize; vars.len()];
    loop {
        let binding: HashMap<&str, &str> = vars
            .iter()
            .zip(indices.iter())
            .map(|(v, &i)| (*v, constants[i].as_str()))
            .collect();
        out.push(RawInstance {
            head: substitute(rule.head().expect("space rules have heads"), &binding),
            pos: rule.pos_body().iter().map(|a| substitute(a, &binding)).collect(),
            neg: rule.neg_body().iter().map(|a| substitute(a, &binding)).collect(),
        });
        let mut k = vars.len();
        loop {
            if k == 0 {
                return out;
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

struct ExampleShell {
    polarity: Polarity,
    constants: Vec<String>,
    atom_ids: HashMap<GroundAtom, u32>,
    n_atoms: usize,
    completions: Vec<Completion>,
}

impl ExampleShell {
    fn id_of(&self, atom: &GroundAtom) -> Option<u32> {
        self.atom_ids.get(atom).copied()
    }

    /// Classifies a rule against every completion: which completions it
    /// contradicts, and through which instances it can derive labels.
    fn classify(
        &self,
        rule: &Rule,
        with_fires: bool,
    ) -> (Mask, Vec<Vec<FireInstance>>) {
        let words = mask_words(self.completions.len());
        let mut viol: Mask = vec![0; words];
        let mut fires: Vec<Vec<FireInstance>> = if with_fires {
            self.completions.iter().map(|_| Vec::new()).collect()
        } else {
            Vec::new()
        };
        for raw in rule_instances(rule, &self.constants) {
            let head = self.id_of(&raw.head);
            let pos: Option<Vec<u32>> = raw.pos.iter().map(|a| self.id_of(a)).collect();
            let neg: Vec<Option<u32>> = raw.neg.iter().map(|a| self.id_of(a)).collect();
            for (ci, comp) in self.completions.iter().enumerate() {
                let holds = |id: &Option<u32>| match id {
                    Some(i) => mask_get(&comp.atoms, *i as usize),
                    None => false, // never interned ⇒ not in any interpretation
                };
                if neg.iter().any(holds) {
                    continue; // instance deleted by the reduct
                }
                let body_holds = match &pos {
                    Some(ids) => ids.iter().all(|i| mask_get(&comp.atoms, *i as usize)),
                    None => false,
                };
                if !body_holds {
                    continue;
                }
                match head {
                    Some(h) if mask_get(&comp.atoms, h as usize) => {
                        if with_fires {
                            fires[ci].push(FireInstance {
                                head: h,
                                pos: pos.clone().expect("body holds"),
                            });
                        }
                    }
                    _ => mask_set(&mut viol, ci),
                }
            }
        }
        (viol, fires)
    }
}

struct TaskSearch<'a> {
    task: &'a LearningTask,
    options: &'a LearnOptions,
    rules: Vec<Rule>,
    rule_costs: Vec<usize>,
    examples: Vec<ExampleEval>,
    refs: Vec<&'a CdpiExample>,
    background_heuristic: bool,
    deadline: Option<Instant>,
}

impl<'a> TaskSearch<'a> {
    fn build(task: &'a LearningTask, options: &'a LearnOptions) -> Result<Self, LearnError> {
        let space = super::enumerate_space(&task.bias, options.max_body, options.max_vars);

        let head_modes_ok = task.bias.head.iter().all(|m| {
            (m.predicate == "in" || m.predicate == "out") && m.arity == 1
        });
        let background_ok = task
            .background
            .rules
            .iter()
            .all(|r| r.head().is_none_or(|h| h.predicate != "in" && h.predicate != "out"))
            && task.background.constants().is_empty();
        let fast_path = head_modes_ok && background_ok;

        let refs: Vec<&CdpiExample> = task.positives.iter().chain(&task.negatives).collect();
        let mut shells: Vec<Option<ExampleShell>> = Vec::new();
        for example in &refs {
            shells.push(if fast_path {
                Self::build_shell(task, options, example)?
            } else {
                None
            });
        }

        // Rules contradicting every completion of some positive example can
        // never appear in a solution.
        let keep: Vec<bool> = space
            .iter()
            .map(|rule| {
                shells.iter().all(|shell| match shell {
                    Some(s) if s.polarity == Polarity::Positive && !s.completions.is_empty() => {
                        let (viol, _) = s.classify(rule, false);
                        let full = (0..s.completions.len()).all(|ci| mask_get(&viol, ci));
                        !full
                    }
                    _ => true,
                })
            })
            .collect();
        let rules: Vec<Rule> = space
            .into_iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(r, _)| r)
            .collect();
        let rule_costs: Vec<usize> = rules.iter().map(Rule::literal_count).collect();

        let examples: Vec<ExampleEval> = shells
            .into_iter()
            .zip(refs.iter())
            .map(|(shell, example)| {
                let polarity = example.polarity;
                let data = shell.map(|s| {
                    let words = mask_words(s.completions.len());
                    let mut all_alive: Mask = vec![0; words];
                    for ci in 0..s.completions.len() {
                        mask_set(&mut all_alive, ci);
                    }
                    let mut viol = Vec::with_capacity(rules.len());
                    let mut fires = Vec::with_capacity(rules.len());
                    for rule in &rules {
                        let (v, f) = s.classify(rule, true);
                        viol.push(v);
                        fires.push(f);
                    }
                    CompData {
                        n_atoms: s.n_atoms,
                        completions: s.completions,
                        all_alive,
                        viol,
                        fires,
                    }
                });
                ExampleEval { polarity, data }
            })
            .collect();

        Ok(TaskSearch {
            task,
            options,
            rules,
            rule_costs,
            examples,
            refs,
            background_heuristic: !task.background.heuristics.is_empty(),
            deadline: options.solver.deadline,
        })
    }

    /// Precomputes the completion data for one example, or `None` when the
    /// example must go through the engine.
    fn build_shell(
        task: &LearningTask,
        options: &LearnOptions,
        example: &CdpiExample,
    ) -> Result<Option<ExampleShell>, LearnError> {
        let ctx = &example.context;
        let constants: Vec<String> = {
            let set: std::collections::BTreeSet<String> =
                ctx.iter().flat_map(|f| f.args.iter().cloned()).collect();
            set.into_iter().collect()
        };
        let arg_constants: Vec<&str> = ctx
            .iter()
            .filter(|f| f.predicate == "arg")
            .map(|f| f.args[0].as_str())
            .collect();

        let mut universe: Vec<GroundAtom> = Vec::new();
        for c in &arg_constants {
            universe.push(GroundAtom::unary("in", *c));
            universe.push(GroundAtom::unary("out", *c));
        }
        let free: Vec<&GroundAtom> = universe
            .iter()
            .filter(|a| !example.inclusions.contains(a) && !example.exclusions.contains(a))
            .collect();
        if free.len() > MAX_FREE_ATOMS {
            return Ok(None);
        }

        let gp = ground(&task.background, ctx)?;
        let mut atom_ids: HashMap<GroundAtom, u32> = HashMap::new();
        let intern = |atom: &GroundAtom, ids: &mut HashMap<GroundAtom, u32>| {
            let next = ids.len() as u32;
            *ids.entry(atom.clone()).or_insert(next)
        };
        for rule in &gp.rules {
            for atom in rule.atoms() {
                intern(atom, &mut atom_ids);
            }
        }
        for atom in &universe {
            intern(atom, &mut atom_ids);
        }
        let n_atoms = atom_ids.len();

        let mut completions = Vec::new();
        for choice in 0..(1u64 << free.len()) {
            let mut facts = ctx.clone();
            facts.extend(example.inclusions.iter().cloned());
            for (i, atom) in free.iter().enumerate() {
                if choice & (1 << i) != 0 {
                    facts.insert((*atom).clone());
                }
            }
            let sets = options.solver.answer_sets(&task.background, &facts)?;
            match sets.len() {
                0 => continue, // no interpretation with this labelling exists
                1 => {}
                _ => return Ok(None), // background is not deterministic here
            }
            let interpretation = &sets[0];
            let mut atoms: Mask = vec![0; mask_words(n_atoms)];
            for atom in &interpretation.atoms {
                match atom_ids.get(atom) {
                    Some(&id) => mask_set(&mut atoms, id as usize),
                    None => return Ok(None), // unexpected derivation; stay safe
                }
            }
            let inout: Vec<u32> = universe
                .iter()
                .filter(|a| interpretation.contains(a))
                .map(|a| atom_ids[a])
                .collect();
            let mut base = Vec::new();
            for rule in &gp.rules {
                let Some(head) = &rule.head else {
                    continue; // constraints were honoured by the engine already
                };
                if rule
                    .neg_body
                    .iter()
                    .any(|a| interpretation.contains(a))
                {
                    continue;
                }
                if !rule.pos_body.iter().all(|a| interpretation.contains(a)) {
                    continue;
                }
                base.push(FireInstance {
                    head: atom_ids[head],
                    pos: rule.pos_body.iter().map(|a| atom_ids[a]).collect(),
                });
            }
            completions.push(Completion {
                atoms,
                inout,
                base,
            });
        }

        Ok(Some(ExampleShell {
            polarity: example.polarity,
            constants,
            atom_ids,
            n_atoms,
            completions,
        }))
    }

    fn run(&mut self) -> Result<Hypothesis, LearnError> {
        for total in 0..=self.options.max_cost {
            let alive: Vec<Mask> = self
                .examples
                .iter()
                .map(|e| match &e.data {
                    Some(d) => d.all_alive.clone(),
                    None => Vec::new(),
                })
                .collect();
            let mut chosen = Vec::new();
            if let Some(h) = self.extend(0, total, &alive, &mut chosen)? {
                return Ok(h);
            }
        }
        Err(LearnError::Unsatisfiable)
    }

    fn check_deadline(&self) -> Result<(), LearnError> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(LearnError::Engine(crate::AspError::Timeout));
            }
        }
        Ok(())
    }

    fn extend(
        &self,
        from: usize,
        budget: usize,
        alive: &[Mask],
        chosen: &mut Vec<usize>,
    ) -> Result<Option<Hypothesis>, LearnError> {
        self.check_deadline()?;
        if budget == 0 {
            if let Some(h) = self.candidate(chosen, &[], alive)? {
                return Ok(Some(h));
            }
        } else if self.task.learn_heuristics && budget <= 2 {
            for hs in heuristic_subsets(budget) {
                if let Some(h) = self.candidate(chosen, &hs, alive)? {
                    return Ok(Some(h));
                }
            }
        }
        if budget < 2 && !(self.task.learn_heuristics && budget == 1) {
            return Ok(None);
        }
        for j in from..self.rules.len() {
            let cost = self.rule_costs[j];
            if cost > budget {
                continue;
            }
            let rem = budget - cost;
            let completable = rem == 0 || rem >= 2 || (self.task.learn_heuristics && rem == 1);
            if !completable {
                continue;
            }
            let mut child: Vec<Mask> = alive.to_vec();
            let mut dead_positive = false;
            for (ei, eval) in self.examples.iter().enumerate() {
                if let Some(data) = &eval.data {
                    mask_clear_all(&mut child[ei], &data.viol[j]);
                    if eval.polarity == Polarity::Positive && mask_is_zero(&child[ei]) {
                        dead_positive = true;
                        break;
                    }
                }
            }
            if dead_positive {
                continue;
            }
            chosen.push(j);
            let found = self.extend(j + 1, rem, &child, chosen)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Full validity check of one candidate hypothesis.
    fn candidate(
        &self,
        chosen: &[usize],
        heuristics: &[crate::asp::Atom],
        alive: &[Mask],
    ) -> Result<Option<Hypothesis>, LearnError> {
        let needs_projection = !heuristics.is_empty() || self.background_heuristic;
        let mut full_program: Option<Program> = None;
        let program = |this: &Self| -> Program {
            let hypothesis = Program::new(
                chosen.iter().map(|&j| this.rules[j].clone()).collect(),
                heuristics.to_vec(),
            );
            this.task.background.union(&hypothesis)
        };
        for (ei, eval) in self.examples.iter().enumerate() {
            let example = self.refs[ei];
            match &eval.data {
                Some(data) => {
                    let survivor = (0..data.completions.len()).find(|&ci| {
                        mask_get(&alive[ei], ci) && self.derivable(data, ci, chosen)
                    });
                    match eval.polarity {
                        Polarity::Positive => {
                            if survivor.is_none() {
                                return Ok(None);
                            }
                            if needs_projection {
                                let p = full_program.get_or_insert_with(|| program(self));
                                if !accepts_with(&self.options.solver, p, example)? {
                                    return Ok(None);
                                }
                            }
                        }
                        Polarity::Negative => {
                            if survivor.is_some() {
                                if !needs_projection {
                                    return Ok(None);
                                }
                                let p = full_program.get_or_insert_with(|| program(self));
                                if accepts_with(&self.options.solver, p, example)? {
                                    return Ok(None);
                                }
                            }
                        }
                    }
                }
                None => {
                    let p = full_program.get_or_insert_with(|| program(self));
                    let accepted = accepts_with(&self.options.solver, p, example)?;
                    let wanted = eval.polarity == Polarity::Positive;
                    if accepted != wanted {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(Hypothesis {
            rules: chosen.iter().map(|&j| self.rules[j].clone()).collect(),
            heuristics: heuristics.to_vec(),
        }))
    }

    /// Can the hypothesis re-derive the completion's labelling?
    fn derivable(&self, data: &CompData, ci: usize, chosen: &[usize]) -> bool {
        let comp = &data.completions[ci];
        let mut derived = vec![false; data.n_atoms];
        loop {
            let mut changed = false;
            let instances = comp
                .base
                .iter()
                .chain(chosen.iter().flat_map(|&j| data.fires[j][ci].iter()));
            for inst in instances {
                if !derived[inst.head as usize]
                    && inst.pos.iter().all(|&p| derived[p as usize])
                {
                    derived[inst.head as usize] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        comp.inout.iter().all(|&i| derived[i as usize])
    }
}

/// Heuristic statement subsets of the given cost, in lexicographic order.
fn heuristic_subsets(cost: usize) -> Vec<Vec<crate::asp::Atom>> {
    let candidates = heuristic_candidates();
    match cost {
        1 => candidates.into_iter().map(|a| vec![a]).collect(),
        2 => vec![candidates],
        _ => Vec::new(),
    }
}
