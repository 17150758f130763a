//! Command-line interface: solving, enumeration, ABA translation,
//! learning, example generation, encoding inspection and benchmarking.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use argsem::aba::{argument_table_csv, translate};
use argsem::asp::minimal_answer_sets;
use argsem::bench::{
    gen_random_af, mcc, mcc_eval, par2, results_csv, run_suite, BenchOptions, EngineId,
};
use argsem::encodings::{aspartix_admissible, background, background_full, full_semantics};
use argsem::framework::{parse_aba, parse_apx, parse_iccma, Extension, Framework, FrameworkKind};
use argsem::learn::{
    format_examples, generate_examples, learn, parse_examples, LearnOptions, LearningTask,
    ModeBias, Polarity,
};
use argsem::oracle::{extensions_with, OracleOptions};
use argsem::{ArgumentId, SemanticsId};

#[derive(Parser)]
#[command(name = "argsem", version, about = "Argumentation semantics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliSemantics {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl From<CliSemantics> for SemanticsId {
    fn from(s: CliSemantics) -> SemanticsId {
        match s {
            CliSemantics::ConflictFree => SemanticsId::ConflictFree,
            CliSemantics::Admissible => SemanticsId::Admissible,
            CliSemantics::Complete => SemanticsId::Complete,
            CliSemantics::Grounded => SemanticsId::Grounded,
            CliSemantics::Preferred => SemanticsId::Preferred,
            CliSemantics::Stable => SemanticsId::Stable,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliEngine {
    Learned,
    Aspartix,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Apx,
    Iccma,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliKind {
    Aaf,
    Baf,
    Vaf,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Compute extensions of a framework (all, or the first n).
    Solve(SolveArgs),
    /// Enumerate all extensions of a framework.
    Enumerate(EnumerateArgs),
    /// Translate a flat assumption-based framework into attack facts.
    #[command(name = "translate-aba")]
    TranslateAba {
        /// Input in the assumption line format.
        file: PathBuf,
        /// Write the argument table (index,root,assumptions CSV) here;
        /// without it the table goes to the diagnostic stream.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Learn a semantics encoding from labelled examples.
    Learn {
        #[arg(long, value_enum)]
        semantics: CliSemantics,
        /// Example file with #pos/#neg statements.
        #[arg(long)]
        examples: PathBuf,
        /// Also search heuristic statements.
        #[arg(long)]
        learn_heuristics: bool,
        /// Background knowledge to learn against.
        #[arg(long, value_enum, default_value = "aaf")]
        kind: CliKind,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long, default_value_t = 2)]
        max_vars: usize,
        #[arg(long, default_value_t = 12)]
        max_cost: usize,
        /// Verify the learned program against the oracle on every
        /// framework with up to this many arguments.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Generate labelled examples for a semantics from frameworks.
    #[command(name = "gen-examples")]
    GenExamples {
        #[arg(long, value_enum)]
        semantics: CliSemantics,
        #[arg(long, default_value_t = 4)]
        n_pos: usize,
        #[arg(long, default_value_t = 2)]
        n_neg: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Source frameworks in the fact format; a small random corpus is
        /// generated when none are given.
        files: Vec<PathBuf>,
    },
    /// Print a bundled encoding.
    #[command(name = "show-encoding")]
    ShowEncoding {
        /// Framework kind selecting the background knowledge.
        #[arg(long, value_enum)]
        kind: Option<CliKind>,
        /// Semantics selecting the learned program.
        #[arg(long, value_enum)]
        semantics: Option<CliSemantics>,
        /// Print the reference admissible encoding instead.
        #[arg(long)]
        aspartix: bool,
    },
    /// Time single-extension solving over a corpus and emit CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    semantics: CliSemantics,
    #[arg(long, value_enum, default_value = "apx")]
    format: CliFormat,
    #[arg(long, value_enum, default_value = "learned")]
    engine: CliEngine,
    /// Print only the first n extensions.
    #[arg(short = 'n')]
    n: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    semantics: CliSemantics,
    #[arg(long, value_enum, default_value = "apx")]
    format: CliFormat,
    #[arg(long, value_enum, default_value = "learned")]
    engine: CliEngine,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files or directories (.apx fact format, otherwise the
    /// numeric format); a seeded random corpus is generated when empty.
    paths: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "learned")]
    engines: Vec<CliEngine>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "stable")]
    semantics: Vec<CliSemantics>,
    /// Per-instance timeout in seconds; defaults to the ARGSEM_TIMEOUT
    /// environment variable or 1200.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Generated-corpus size when no instance paths are given.
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 5)]
    min_args: usize,
    #[arg(long, default_value_t = 25)]
    max_args: usize,
    #[arg(long, default_value_t = 0.25)]
    attack_prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Score credulous acceptance against the oracle instead of timing.
    #[arg(long)]
    mcc: bool,
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn domain_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn read_framework(file: &Path, format: CliFormat) -> Result<Framework, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    match format {
        CliFormat::Apx => parse_apx(&text).map_err(|e| e.to_string()),
        CliFormat::Iccma => parse_iccma(&text).map_err(|e| e.to_string()),
    }
}

/// Extensions under the chosen engine, in deterministic order.
fn compute_extensions(
    framework: &Framework,
    semantics: SemanticsId,
    engine: CliEngine,
) -> Result<BTreeSet<Extension>, String> {
    match engine {
        CliEngine::Oracle => {
            let options = OracleOptions {
                max_args: 25,
                deadline: None,
            };
            extensions_with(framework, semantics, &options).map_err(|e| e.to_string())
        }
        CliEngine::Learned => {
            let program = full_semantics(framework.kind(), semantics).map_err(|e| e.to_string())?;
            let sets =
                minimal_answer_sets(&program, &framework.to_facts()).map_err(|e| e.to_string())?;
            Ok(sets.iter().map(in_projection).collect())
        }
        CliEngine::Aspartix => {
            let sets = minimal_answer_sets(&aspartix_admissible(), &framework.to_facts())
                .map_err(|e| e.to_string())?;
            Ok(sets.iter().map(in_projection).collect())
        }
    }
}

fn in_projection(set: &argsem::asp::Interpretation) -> Extension {
    Extension::new(
        set.project_predicate("in")
            .iter()
            .map(|a| ArgumentId::new(a.args[0].clone()).expect("constant"))
            .collect(),
    )
}

fn print_extensions(extensions: &BTreeSet<Extension>, limit: Option<usize>) {
    if extensions.is_empty() {
        println!("NO EXTENSION");
        return;
    }
    let limit = limit.unwrap_or(extensions.len());
    for e in extensions.iter().take(limit) {
        println!("{e}");
    }
}

fn solve(args: &SolveArgs, limit: Option<usize>) -> ExitCode {
    let semantics = SemanticsId::from(args.semantics);
    if matches!(args.engine, CliEngine::Aspartix) && semantics != SemanticsId::Admissible {
        return usage_error("the aspartix engine only supports --semantics admissible");
    }
    if matches!(args.engine, CliEngine::Learned) && semantics == SemanticsId::ConflictFree {
        return usage_error("no learned encoding exists for conflict_free; use --engine oracle");
    }
    let framework = match read_framework(&args.file, args.format) {
        Ok(f) => f,
        Err(e) => return domain_error(e),
    };
    match compute_extensions(&framework, semantics, args.engine) {
        Ok(extensions) => {
            print_extensions(&extensions, limit);
            ExitCode::SUCCESS
        }
        Err(e) => domain_error(e),
    }
}

fn kind_background(kind: CliKind) -> argsem::asp::Program {
    match kind {
        CliKind::Aaf => background(FrameworkKind::Aaf),
        CliKind::Baf => background(FrameworkKind::Baf),
        CliKind::Vaf => background(FrameworkKind::Vaf),
        CliKind::Full => background_full(),
    }
}

/// Every attack relation over `n` named arguments.
fn frameworks_of_size(n: usize) -> impl Iterator<Item = Framework> {
    let names: Vec<ArgumentId> = (0..n)
        .map(|i| ArgumentId::new(format!("a{}", i + 1)).expect("valid"))
        .collect();
    let pairs: Vec<(ArgumentId, ArgumentId)> = names
        .iter()
        .flat_map(|x| names.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    (0u64..(1 << pairs.len())).map(move |mask| {
        let attacks: BTreeSet<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| p.clone())
            .collect();
        Framework::aaf(names.iter().cloned().collect(), attacks).expect("valid")
    })
}

fn verify_hypothesis(
    program: &argsem::asp::Program,
    semantics: SemanticsId,
    max_args: usize,
) -> Result<usize, String> {
    let mut checked = 0usize;
    for n in 0..=max_args {
        for framework in frameworks_of_size(n) {
            let expected =
                argsem::oracle::extensions(&framework, semantics).map_err(|e| e.to_string())?;
            let sets = minimal_answer_sets(program, &framework.to_facts())
                .map_err(|e| e.to_string())?;
            let got: BTreeSet<Extension> = sets.iter().map(in_projection).collect();
            if got != expected {
                return Err(format!("mismatch on framework:\n{}", framework.to_apx()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[allow(clippy::too_many_arguments)]
fn run_learn(
    semantics: CliSemantics,
    examples_path: &Path,
    learn_heuristics: bool,
    kind: CliKind,
    max_body: usize,
    max_vars: usize,
    max_cost: usize,
    verify: Option<usize>,
) -> ExitCode {
    let semantics = SemanticsId::from(semantics);
    let text = match std::fs::read_to_string(examples_path) {
        Ok(t) => t,
        Err(e) => return domain_error(format!("cannot read {}: {e}", examples_path.display())),
    };
    let examples = match parse_examples(&text) {
        Ok(e) => e,
        Err(e) => return domain_error(e),
    };
    let (positives, negatives): (Vec<_>, Vec<_>) = examples
        .into_iter()
        .partition(|e| e.polarity == Polarity::Positive);
    let task = LearningTask {
        background: kind_background(kind),
        bias: ModeBias::default(),
        positives,
        negatives,
        learn_heuristics,
    };
    let options = LearnOptions {
        max_body,
        max_vars,
        max_cost,
        ..LearnOptions::default()
    };
    let hypothesis = match learn(&task, &options) {
        Ok(h) => h,
        Err(e) => return domain_error(e),
    };
    print!("{hypothesis}");
    eprintln!("cost: {}", hypothesis.cost());
    if let Some(max_args) = verify {
        let program = task.background.union(&hypothesis.to_program());
        match verify_hypothesis(&program, semantics, max_args) {
            Ok(checked) => {
                println!("verify: PASS ({checked} frameworks, up to {max_args} arguments)")
            }
            Err(e) => {
                println!("verify: FAIL");
                return domain_error(e);
            }
        }
    }
    ExitCode::SUCCESS
}

fn collect_instances(paths: &[PathBuf]) -> Result<Vec<(String, Framework)>, String> {
    let mut files: Vec<PathBuf> = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    let mut instances = Vec::new();
    for file in files {
        let text = std::fs::read_to_string(&file)
            .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
        let first_line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        let is_iccma = file.extension().is_none_or(|e| e != "apx")
            && first_line.is_some_and(|l| l.starts_with("p af"));
        let framework = if is_iccma {
            parse_iccma(&text).map_err(|e| format!("{}: {e}", file.display()))?
        } else {
            parse_apx(&text).map_err(|e| format!("{}: {e}", file.display()))?
        };
        let name = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        instances.push((name, framework));
    }
    Ok(instances)
}

fn run_bench(args: &BenchArgs) -> ExitCode {
    let instances = if args.paths.is_empty() {
        let span = args.max_args.saturating_sub(args.min_args) + 1;
        (0..args.count)
            .map(|i| {
                let n = args.min_args + (i % span);
                let f = gen_random_af(n, args.attack_prob, args.seed.wrapping_add(i as u64));
                (format!("random-{i:04}"), f)
            })
            .collect()
    } else {
        match collect_instances(&args.paths) {
            Ok(i) => i,
            Err(e) => return domain_error(e),
        }
    };
    let engines: Vec<EngineId> = args
        .engines
        .iter()
        .map(|e| match e {
            CliEngine::Learned => EngineId::Learned,
            CliEngine::Aspartix => EngineId::AspartixAdm,
            CliEngine::Oracle => EngineId::Oracle,
        })
        .collect();
    let semantics: Vec<SemanticsId> = args.semantics.iter().map(|&s| s.into()).collect();

    let timeout = args
        .timeout
        .or_else(|| {
            std::env::var("ARGSEM_TIMEOUT")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1200.0);
    let options = BenchOptions {
        timeout: Duration::from_secs_f64(timeout),
        workers: args.workers,
        oracle_cap: 25,
    };

    if args.mcc {
        let frameworks: Vec<Framework> = instances.iter().map(|(_, f)| f.clone()).collect();
        println!("engine,semantics,tp,tn,fp,fn,mcc");
        for &engine in &engines {
            for &sem in &semantics {
                match mcc_eval(engine, sem, &frameworks, &options) {
                    Ok(counts) => println!(
                        "{},{},{},{},{},{},{:.6}",
                        engine.name(),
                        sem.name(),
                        counts.tpc,
                        counts.tnc,
                        counts.fpc,
                        counts.fnc,
                        mcc(&counts)
                    ),
                    Err(e) => return domain_error(e),
                }
            }
        }
        return ExitCode::SUCCESS;
    }

    let results = run_suite(&instances, &engines, &semantics, &options);
    let csv = results_csv(&results);
    match &args.csv {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                return domain_error(format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{csv}"),
    }
    for &engine in &engines {
        for &sem in &semantics {
            let slice: Vec<_> = results
                .iter()
                .filter(|r| r.engine == engine && r.semantics == sem)
                .cloned()
                .collect();
            if let Ok(score) = par2(&slice, timeout) {
                eprintln!("par2 {} {}: {:.3}", engine.name(), sem.name(), score);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Solve(args) => solve(args, args.n),
        Command::Enumerate(args) => {
            let solve_args = SolveArgs {
                file: args.file.clone(),
                semantics: args.semantics,
                format: args.format,
                engine: args.engine,
                n: None,
            };
            solve(&solve_args, None)
        }
        Command::TranslateAba { file, table } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return domain_error(format!("cannot read {}: {e}", file.display())),
            };
            let aba = match parse_aba(&text) {
                Ok(a) => a,
                Err(e) => return domain_error(e),
            };
            let (framework, arguments) = translate(&aba);
            print!("{}", framework.to_apx());
            let csv = argument_table_csv(&arguments);
            match table {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &csv) {
                        return domain_error(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => eprint!("{csv}"),
            }
            ExitCode::SUCCESS
        }
        Command::Learn {
            semantics,
            examples,
            learn_heuristics,
            kind,
            max_body,
            max_vars,
            max_cost,
            verify,
        } => run_learn(
            *semantics,
            examples,
            *learn_heuristics,
            *kind,
            *max_body,
            *max_vars,
            *max_cost,
            *verify,
        ),
        Command::GenExamples {
            semantics,
            n_pos,
            n_neg,
            seed,
            files,
        } => {
            let frameworks: Vec<Framework> = if files.is_empty() {
                (0..4)
                    .map(|i| gen_random_af(3 + i % 2, 0.3, seed.wrapping_add(i as u64)))
                    .collect()
            } else {
                let mut fs = Vec::new();
                for file in files {
                    match read_framework(file, CliFormat::Apx) {
                        Ok(f) => fs.push(f),
                        Err(e) => return domain_error(e),
                    }
                }
                fs
            };
            match generate_examples((*semantics).into(), &frameworks, *n_pos, *n_neg, *seed) {
                Ok((pos, neg)) => {
                    print!("{}", format_examples(&pos));
                    print!("{}", format_examples(&neg));
                    ExitCode::SUCCESS
                }
                Err(e) => domain_error(e),
            }
        }
        Command::ShowEncoding {
            kind,
            semantics,
            aspartix,
        } => {
            if *aspartix {
                print!("{}", aspartix_admissible());
                return ExitCode::SUCCESS;
            }
            match (kind, semantics) {
                (Some(CliKind::Full), Some(semantics)) => {
                    match argsem::encodings::learned((*semantics).into()) {
                        Ok(learned) => {
                            print!("{}", background_full().union(&learned));
                            ExitCode::SUCCESS
                        }
                        Err(e) => domain_error(e),
                    }
                }
                (Some(kind), Some(semantics)) => {
                    let kind = match kind {
                        CliKind::Aaf => FrameworkKind::Aaf,
                        CliKind::Baf => FrameworkKind::Baf,
                        CliKind::Vaf => FrameworkKind::Vaf,
                        CliKind::Full => unreachable!("handled above"),
                    };
                    match full_semantics(kind, (*semantics).into()) {
                        Ok(p) => {
                            print!("{p}");
                            ExitCode::SUCCESS
                        }
                        Err(e) => domain_error(e),
                    }
                }
                (Some(kind), None) => {
                    print!("{}", kind_background(*kind));
                    ExitCode::SUCCESS
                }
                (None, Some(semantics)) => match argsem::encodings::learned((*semantics).into()) {
                    Ok(p) => {
                        print!("{p}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => domain_error(e),
                },
                (None, None) => usage_error(
                    "pass --aspartix, --kind, --semantics, or both --kind and --semantics",
                ),
            }
        }
        Command::Bench(args) => run_bench(args),
    }
}
