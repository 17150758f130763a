//! Enumerate the extensions of frameworks of all three kinds under every
//! semantics, using the brute-force oracle.
//!
//! Run with `cargo run --example enumerate_extensions`.

use argsem::encodings::SemanticsId;
use argsem::framework::parse_apx;
use argsem::oracle::{defeats, extensions};

fn main() {
    let inputs = [
        ("mutual attack", "arg(a). arg(b). att(a,b). att(b,a)."),
        (
            "support chain",
            "arg(a). arg(b). arg(c). support(a,b). att(b,c).",
        ),
        (
            "blocked attack",
            "arg(a). arg(b). att(a,b). val(a,economy). val(b,safety). valpref(safety,economy).",
        ),
    ];
    for (name, text) in inputs {
        let framework = parse_apx(text).unwrap();
        println!("{name} ({}):", framework.kind());
        println!("  facts: {text}");
        let defeat = defeats(&framework);
        let pairs: Vec<String> = defeat
            .pairs()
            .iter()
            .map(|(x, y)| format!("({x},{y})"))
            .collect();
        println!("  defeats: {}", pairs.join(" "));
        for semantics in SemanticsId::ALL {
            let family = extensions(&framework, semantics).unwrap();
            let rendered: Vec<String> = family.iter().map(|e| e.to_string()).collect();
            println!("  {:<13} {}", semantics.to_string(), rendered.join(" "));
        }
        println!();
    }
}
