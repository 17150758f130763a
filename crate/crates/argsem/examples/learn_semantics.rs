//! Learn a semantics encoding from the bundled example files and verify it
//! against the brute-force oracle on every small framework.
//!
//! Run with `cargo run --release --example learn_semantics [semantics]`.

use std::collections::BTreeSet;

use argsem::asp::minimal_answer_sets;
use argsem::encodings::{background, SemanticsId};
use argsem::framework::{Extension, Framework, FrameworkKind};
use argsem::learn::{learn, parse_examples, LearnOptions, LearningTask, ModeBias, Polarity};
use argsem::oracle::extensions;
use argsem::ArgumentId;

fn example_file(semantics: SemanticsId) -> &'static str {
    match semantics {
        SemanticsId::Admissible => include_str!("../fixtures/admissible.las"),
        SemanticsId::Stable => include_str!("../fixtures/stable.las"),
        SemanticsId::Complete => include_str!("../fixtures/complete.las"),
        SemanticsId::Grounded => include_str!("../fixtures/grounded.las"),
        SemanticsId::Preferred => include_str!("../fixtures/preferred.las"),
        SemanticsId::ConflictFree => panic!("no example file for conflict_free"),
    }
}

/// Every framework over `n` named arguments, one per attack relation.
fn all_frameworks(n: usize) -> impl Iterator<Item = Framework> {
    let names: Vec<ArgumentId> = (0..n)
        .map(|i| ArgumentId::new(format!("a{}", i + 1)).unwrap())
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
        Framework::aaf(names.iter().cloned().collect(), attacks).unwrap()
    })
}

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "stable".into());
    let semantics = SemanticsId::parse(&name).expect("unknown semantics");
    let examples = parse_examples(example_file(semantics)).unwrap();
    let (positives, negatives): (Vec<_>, Vec<_>) = examples
        .into_iter()
        .partition(|e| e.polarity == Polarity::Positive);
    println!(
        "task: {} ({} positive, {} negative examples)",
        semantics,
        positives.len(),
        negatives.len()
    );

    let learn_heuristics = matches!(semantics, SemanticsId::Grounded | SemanticsId::Preferred);
    let task = LearningTask {
        background: background(FrameworkKind::Aaf),
        bias: ModeBias::default(),
        positives,
        negatives,
        learn_heuristics,
    };
    let started = std::time::Instant::now();
    let hypothesis = learn(&task, &LearnOptions::default()).unwrap();
    println!(
        "learned hypothesis (cost {}) in {:.2?}:",
        hypothesis.cost(),
        started.elapsed()
    );
    print!("{hypothesis}");

    // verify extension-equivalence against the oracle on every framework
    // with up to three arguments
    let program = task.background.union(&hypothesis.to_program());
    let mut checked = 0usize;
    for n in 0..=3 {
        for framework in all_frameworks(n) {
            let expected = extensions(&framework, semantics).unwrap();
            let sets = minimal_answer_sets(&program, &framework.to_facts()).unwrap();
            let got: BTreeSet<Extension> = sets
                .iter()
                .map(|s| {
                    Extension::new(
                        s.project_predicate("in")
                            .iter()
                            .map(|a| ArgumentId::new(a.args[0].clone()).unwrap())
                            .collect(),
                    )
                })
                .collect();
            assert_eq!(got, expected, "mismatch on {}", framework.to_apx());
            checked += 1;
        }
    }
    println!("verified against the oracle on {checked} frameworks: OK");
}
