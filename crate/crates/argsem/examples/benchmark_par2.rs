//! Time single-extension solving over a random corpus with the learned
//! encodings, the reference admissible encoding, and the oracle; report
//! PAR-2 scores and the raw CSV.
//!
//! Run with `cargo run --release --example benchmark_par2`.

use std::time::Duration;

use argsem::bench::{
    gen_random_af, par2, results_csv, run_suite, BenchOptions, EngineId,
};
use argsem::encodings::SemanticsId;

fn main() {
    let instances: Vec<_> = (0..12)
        .map(|i| {
            let n = 5 + (i % 8);
            (format!("random-{i:02}"), gen_random_af(n, 0.25, 1000 + i as u64))
        })
        .collect();
    let engines = [EngineId::Learned, EngineId::Oracle];
    let semantics = [SemanticsId::Stable, SemanticsId::Preferred];
    let options = BenchOptions {
        timeout: Duration::from_secs(10),
        workers: 4,
        oracle_cap: 25,
    };
    let results = run_suite(&instances, &engines, &semantics, &options);
    print!("{}", results_csv(&results));
    println!();
    for engine in engines {
        for sem in semantics {
            let slice: Vec<_> = results
                .iter()
                .filter(|r| r.engine == engine && r.semantics == sem)
                .cloned()
                .collect();
            println!(
                "par2 {:<12} {:<10} {:>10.4}",
                engine.name(),
                sem.name(),
                par2(&slice, 10.0).unwrap()
            );
        }
    }
}
