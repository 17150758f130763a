//! Experiment driver: random framework generation, timed single-extension
//! solving runs with per-instance timeouts, PAR-2 aggregation, and
//! per-argument credulous-acceptance scoring against the oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::asp::{Interpretation, Solver};
use crate::encodings::{aspartix_admissible, full_semantics, SemanticsId};
use crate::framework::{ArgumentId, Extension, Framework};
use crate::oracle::{credulous_accepted, extensions_with, OracleOptions};
use crate::rng::SplitMix64;

/// The PAR-2 threshold used by competition scoring, in seconds.
pub const DEFAULT_PAR2_THRESHOLD_S: f64 = 1200.0;

#[derive(Debug, Clone, thiserror::Error)]
pub enum BenchError {
    #[error("no run results to aggregate")]
    EmptyResults,
    #[error("engine `{engine}` does not support the {semantics} semantics")]
    UnsupportedCombination {
        engine: EngineId,
        semantics: SemanticsId,
    },
    #[error(transparent)]
    Engine(#[from] crate::AspError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
}

/// The three interchangeable solving paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EngineId {
    Learned,
    AspartixAdm,
    Oracle,
}

impl EngineId {
    pub const ALL: [EngineId; 3] = [EngineId::Learned, EngineId::AspartixAdm, EngineId::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            EngineId::Learned => "learned",
            EngineId::AspartixAdm => "aspartix_adm",
            EngineId::Oracle => "oracle",
        }
    }

    pub fn parse(name: &str) -> Option<EngineId> {
        EngineId::ALL.into_iter().find(|e| e.name() == name)
    }
}

impl fmt::Display for EngineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    Timeout,
    Error,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Solved => "solved",
            Outcome::Timeout => "timeout",
            Outcome::Error => "error",
        }
    }
}

/// One timed solving run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub instance: String,
    pub engine: EngineId,
    pub semantics: SemanticsId,
    pub seconds: f64,
    pub outcome: Outcome,
    /// The extension found; `None` for unsolved runs or when the semantics
    /// admits no extension on the instance.
    pub extension: Option<Extension>,
}

/// Mean penalized runtime: unsolved instances (timeout or error) count
/// twice the threshold, solved instances their wall time.
pub fn par2(results: &[RunResult], threshold_s: f64) -> Result<f64, BenchError> {
    if results.is_empty() {
        return Err(BenchError::EmptyResults);
    }
    let total: f64 = results
        .iter()
        .map(|r| match r.outcome {
            Outcome::Solved => r.seconds,
            Outcome::Timeout | Outcome::Error => 2.0 * threshold_s,
        })
        .sum();
    Ok(total / results.len() as f64)
}

/// Binary confusion counts over (framework, argument) pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tpc: usize,
    pub tnc: usize,
    pub fpc: usize,
    pub fnc: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tpc + self.tnc + self.fpc + self.fnc
    }
}

/// Matthews correlation coefficient; zero when any denominator factor is
/// zero.
pub fn mcc(c: &ConfusionCounts) -> f64 {
    let (tp, tn, fp, fn_) = (c.tpc as f64, c.tnc as f64, c.fpc as f64, c.fnc as f64);
    let denom = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_);
    if denom == 0.0 {
        return 0.0;
    }
    (tp * tn - fp * fn_) / denom.sqrt()
}

/// A random attack-only framework: every ordered argument pair, self-loops
/// included, attacks independently with probability `attack_prob`.
/// Reproducible per seed.
pub fn gen_random_af(n_args: usize, attack_prob: f64, seed: u64) -> Framework {
    let mut rng = SplitMix64::new(seed);
    let args: Vec<ArgumentId> = (1..=n_args)
        .map(|i| ArgumentId::new(format!("a{i}")).expect("valid name"))
        .collect();
    let mut attacks = BTreeSet::new();
    for x in &args {
        for y in &args {
            if rng.next_f64() < attack_prob {
                attacks.insert((x.clone(), y.clone()));
            }
        }
    }
    Framework::aaf(args.into_iter().collect(), attacks).expect("generated framework is valid")
}

/// Suite limits.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub timeout: Duration,
    pub workers: usize,
    /// Enumeration cap handed to the oracle engine.
    pub oracle_cap: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            timeout: Duration::from_secs(1200),
            workers: 1,
            oracle_cap: 25,
        }
    }
}

fn in_projection(set: &Interpretation) -> Extension {
    Extension::new(
        set.project_predicate("in")
            .iter()
            .map(|a| ArgumentId::new(a.args[0].clone()).expect("constant"))
            .collect(),
    )
}

/// All extensions according to one engine.
pub fn engine_extensions(
    engine: EngineId,
    framework: &Framework,
    semantics: SemanticsId,
    deadline: Option<Instant>,
    oracle_cap: usize,
) -> Result<BTreeSet<Extension>, BenchError> {
    match engine {
        EngineId::Learned => {
            let program = full_semantics(framework.kind(), semantics).map_err(|_| {
                BenchError::UnsupportedCombination {
                    engine,
                    semantics,
                }
            })?;
            let solver = Solver {
                deadline,
                ..Solver::default()
            };
            let sets = solver.minimal_answer_sets(&program, &framework.to_facts())?;
            Ok(sets.iter().map(in_projection).collect())
        }
        EngineId::AspartixAdm => {
            if semantics != SemanticsId::Admissible {
                return Err(BenchError::UnsupportedCombination { engine, semantics });
            }
            let solver = Solver {
                deadline,
                ..Solver::default()
            };
            let sets = solver.answer_sets(&aspartix_admissible(), &framework.to_facts())?;
            Ok(sets.iter().map(in_projection).collect())
        }
        EngineId::Oracle => {
            let options = OracleOptions {
                max_args: oracle_cap,
                deadline,
            };
            Ok(extensions_with(framework, semantics, &options)?)
        }
    }
}

/// Finds one extension (the first in deterministic order), or `None` when
/// the semantics yields none on this instance.
pub fn solve_one(
    engine: EngineId,
    framework: &Framework,
    semantics: SemanticsId,
    deadline: Option<Instant>,
    oracle_cap: usize,
) -> Result<Option<Extension>, BenchError> {
    let extensions = engine_extensions(engine, framework, semantics, deadline, oracle_cap)?;
    Ok(extensions.into_iter().next())
}

/// Runs every (instance, engine, semantics) combination, each under the
/// per-instance timeout, across `workers` threads. Per-run failures are
/// recorded as outcomes, never aborting the suite. Results come back
/// sorted by instance, engine and semantics.
pub fn run_suite(
    instances: &[(String, Framework)],
    engines: &[EngineId],
    semantics: &[SemanticsId],
    options: &BenchOptions,
) -> Vec<RunResult> {
    let mut jobs: Vec<(&String, &Framework, EngineId, SemanticsId)> = Vec::new();
    for (name, framework) in instances {
        for &engine in engines {
            for &sem in semantics {
                jobs.push((name, framework, engine, sem));
            }
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<RunResult>> = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = options.workers.max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, framework, engine, sem)) = jobs.get(i) else {
                    break;
                };
                let started = Instant::now();
                let deadline = Some(started + options.timeout);
                let solved = solve_one(*engine, framework, *sem, deadline, options.oracle_cap);
                let seconds = started.elapsed().as_secs_f64();
                let result = match solved {
                    Ok(extension) => RunResult {
                        instance: (*name).clone(),
                        engine: *engine,
                        semantics: *sem,
                        seconds,
                        outcome: Outcome::Solved,
                        extension,
                    },
                    Err(err) => {
                        let timed_out = matches!(
                            err,
                            BenchError::Engine(crate::AspError::Timeout)
                                | BenchError::Oracle(crate::oracle::OracleError::Timeout)
                        );
                        RunResult {
                            instance: (*name).clone(),
                            engine: *engine,
                            semantics: *sem,
                            seconds,
                            outcome: if timed_out {
                                Outcome::Timeout
                            } else {
                                Outcome::Error
                            },
                            extension: None,
                        }
                    }
                };
                results.lock().expect("no panics hold the lock").push(result);
            });
        }
    });
    let mut results = results.into_inner().expect("workers finished");
    results.sort_by(|a, b| {
        (&a.instance, a.engine, a.semantics).cmp(&(&b.instance, b.engine, b.semantics))
    });
    results
}

/// Renders results as CSV with header `instance,engine,semantics,outcome,seconds`.
pub fn results_csv(results: &[RunResult]) -> String {
    let mut out = String::from("instance,engine,semantics,outcome,seconds\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{:.6}\n",
            r.instance,
            r.engine.name(),
            r.semantics.name(),
            r.outcome.name(),
            r.seconds
        ));
    }
    out
}

/// Scores per-argument credulous acceptance of `engine` against the
/// oracle over the given frameworks.
pub fn mcc_eval(
    engine: EngineId,
    semantics: SemanticsId,
    frameworks: &[Framework],
    options: &BenchOptions,
) -> Result<ConfusionCounts, BenchError> {
    let oracle_options = OracleOptions {
        max_args: options.oracle_cap,
        deadline: None,
    };
    let mut counts = ConfusionCounts::default();
    for framework in frameworks {
        let predicted: BTreeSet<ArgumentId> =
            engine_extensions(engine, framework, semantics, None, options.oracle_cap)?
                .into_iter()
                .flat_map(|e| e.members)
                .collect();
        let gold = credulous_accepted(framework, semantics, &oracle_options)?;
        for arg in framework.args() {
            match (predicted.contains(arg), gold.contains(arg)) {
                (true, true) => counts.tpc += 1,
                (false, false) => counts.tnc += 1,
                (true, false) => counts.fpc += 1,
                (false, true) => counts.fnc += 1,
            }
        }
    }
    Ok(counts)
}
