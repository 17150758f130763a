//! Generate labelled learning examples for a semantics by sampling
//! extensions (positives) and non-extensions (negatives) from a seeded
//! random corpus.
//!
//! Run with `cargo run --example generate_examples [semantics] [seed]`.

use argsem::bench::gen_random_af;
use argsem::encodings::SemanticsId;
use argsem::learn::{format_examples, generate_examples};

fn main() {
    let mut args = std::env::args().skip(1);
    let semantics = args
        .next()
        .and_then(|s| SemanticsId::parse(&s))
        .unwrap_or(SemanticsId::Complete);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let frameworks: Vec<_> = (0..4)
        .map(|i| gen_random_af(3 + (i % 2), 0.35, seed.wrapping_add(i as u64)))
        .collect();
    let (positives, negatives) =
        generate_examples(semantics, &frameworks, 4, 3, seed).unwrap();
    print!("{}", format_examples(&positives));
    print!("{}", format_examples(&negatives));
}
