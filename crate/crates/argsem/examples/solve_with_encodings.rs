//! Evaluate the bundled answer-set encodings with the built-in engine and
//! cross-check every extension family against the brute-force oracle.
//!
//! Run with `cargo run --release --example solve_with_encodings`.

use std::collections::BTreeSet;

use argsem::asp::minimal_answer_sets;
use argsem::encodings::{full_semantics, SemanticsId};
use argsem::framework::{parse_apx, Extension};
use argsem::oracle::extensions;
use argsem::ArgumentId;

fn main() {
    let inputs = [
        "arg(a). arg(b). att(a,b). att(b,a).",
        "arg(a). arg(b). arg(c). att(a,b). att(b,c).",
        "arg(a). arg(b). arg(c). att(a,b). att(b,c). att(c,a).",
        "arg(a). arg(b). arg(c). arg(d). support(a,b). att(b,c). att(c,d).",
        "arg(a). arg(b). att(a,b). att(b,a). val(a,u). val(b,v). valpref(u,v).",
    ];
    for text in inputs {
        let framework = parse_apx(text).unwrap();
        println!("{} {text}", framework.kind());
        for semantics in SemanticsId::ENCODED {
            let program = full_semantics(framework.kind(), semantics).unwrap();
            let sets = minimal_answer_sets(&program, &framework.to_facts()).unwrap();
            let engine: BTreeSet<Extension> = sets
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
            let oracle = extensions(&framework, semantics).unwrap();
            assert_eq!(engine, oracle, "engine and oracle disagree");
            let rendered: Vec<String> = engine.iter().map(|e| e.to_string()).collect();
            println!("  {:<10} {}  (oracle agrees)", semantics.to_string(), rendered.join(" "));
        }
        println!();
    }
}
