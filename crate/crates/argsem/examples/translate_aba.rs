//! Translate a flat assumption-based framework into an abstract one, then
//! solve the result under the stable semantics.
//!
//! Run with `cargo run --example translate_aba`.

use argsem::aba::{argument_table_csv, translate};
use argsem::encodings::SemanticsId;
use argsem::framework::parse_aba;
use argsem::oracle::extensions;

const INPUT: &str = "\
assumption p
assumption q
contrary p t
contrary q r
rule r s t
rule s p
rule t q
";

fn main() {
    let aba = parse_aba(INPUT).unwrap();
    println!("assumptions: {:?}", aba.assumptions());
    println!("rules: {:?}", aba.rules());

    let (framework, arguments) = translate(&aba);
    println!("\narguments (one per minimal assumption set):");
    for argument in &arguments {
        println!("  {argument}");
    }
    println!("\nattack facts:\n{}", framework.to_apx());
    println!("argument table:\n{}", argument_table_csv(&arguments));

    let stable = extensions(&framework, SemanticsId::Stable).unwrap();
    let rendered: Vec<String> = stable.iter().map(|e| e.to_string()).collect();
    println!("stable extensions: {}", rendered.join(" "));
}
