//! Score per-argument credulous acceptance of the learned encodings
//! against the oracle on a random corpus and report the Matthews
//! correlation coefficient per semantics.
//!
//! Run with `cargo run --release --example evaluate_mcc`.

use argsem::bench::{gen_random_af, mcc, mcc_eval, BenchOptions, EngineId};
use argsem::encodings::SemanticsId;

fn main() {
    let frameworks: Vec<_> = (0..25)
        .map(|i| gen_random_af(5 + (i % 10), 0.25, 4242 + i as u64))
        .collect();
    let options = BenchOptions::default();
    println!("{:<10} {:>5} {:>5} {:>5} {:>5} {:>8}", "semantics", "tp", "tn", "fp", "fn", "mcc");
    for semantics in [
        SemanticsId::Stable,
        SemanticsId::Complete,
        SemanticsId::Grounded,
        SemanticsId::Preferred,
    ] {
        let counts = mcc_eval(EngineId::Learned, semantics, &frameworks, &options).unwrap();
        println!(
            "{:<10} {:>5} {:>5} {:>5} {:>5} {:>8.4}",
            semantics.name(),
            counts.tpc,
            counts.tnc,
            counts.fpc,
            counts.fnc,
            mcc(&counts)
        );
    }
}
