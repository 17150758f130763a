//! The example file format and oracle-backed example generation.
//!
//! Files hold one statement per example:
//!
//! ```text
//! #pos({in(a), out(b)}, {out(a), in(b)}, {arg(a). arg(b). att(a,b).}).
//! #neg({in(a), in(b)}, {}, {arg(a). arg(b). att(a,b). att(b,a).}).
//! ```

use std::collections::BTreeSet;

use crate::asp::GroundAtom;
use crate::encodings::SemanticsId;
use crate::framework::{Extension, Framework};
use crate::oracle::extensions;
use crate::rng::SplitMix64;

use super::{CdpiExample, LearnError, Polarity};

/// Renders examples one per line.
pub fn format_examples(examples: &[CdpiExample]) -> String {
    let mut out = String::new();
    for e in examples {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// Parses an example file; `%` starts a comment.
pub fn parse_examples(text: &str) -> Result<Vec<CdpiExample>, LearnError> {
    let mut examples = Vec::new();
    let mut scanner = ExampleScanner {
        src: text.as_bytes(),
        pos: 0,
        line: 1,
    };
    loop {
        scanner.skip_trivia();
        if scanner.at_end() {
            return Ok(examples);
        }
        examples.push(scanner.example()?);
    }
}

struct ExampleScanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> ExampleScanner<'a> {
    fn error(&self, message: impl Into<String>) -> LearnError {
        LearnError::ExampleSyntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_trivia(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                b'%' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), LearnError> {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(text.as_bytes()) {
            self.pos += text.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{text}`")))
        }
    }

    fn peek_is(&mut self, text: &str) -> bool {
        self.skip_trivia();
        self.src[self.pos..].starts_with(text.as_bytes())
    }

    fn token(&mut self) -> Result<String, LearnError> {
        self.skip_trivia();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn ground_atom(&mut self) -> Result<GroundAtom, LearnError> {
        let pred = self.token()?;
        let mut args = Vec::new();
        if self.peek_is("(") {
            self.expect("(")?;
            loop {
                args.push(self.token()?);
                if self.peek_is(")") {
                    self.expect(")")?;
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(GroundAtom::new(pred, args))
    }

    /// `{a1, a2, ...}` of comma-separated ground atoms.
    fn atom_set(&mut self) -> Result<BTreeSet<GroundAtom>, LearnError> {
        self.expect("{")?;
        let mut atoms = BTreeSet::new();
        if self.peek_is("}") {
            self.expect("}")?;
            return Ok(atoms);
        }
        loop {
            atoms.insert(self.ground_atom()?);
            if self.peek_is("}") {
                self.expect("}")?;
                return Ok(atoms);
            }
            self.expect(",")?;
        }
    }

    /// `{f1. f2. ...}` of dot-terminated facts.
    fn fact_set(&mut self) -> Result<BTreeSet<GroundAtom>, LearnError> {
        self.expect("{")?;
        let mut atoms = BTreeSet::new();
        loop {
            if self.peek_is("}") {
                self.expect("}")?;
                return Ok(atoms);
            }
            atoms.insert(self.ground_atom()?);
            self.expect(".")?;
        }
    }

    fn example(&mut self) -> Result<CdpiExample, LearnError> {
        self.expect("#")?;
        let keyword = self.token()?;
        let polarity = match keyword.as_str() {
            "pos" => Polarity::Positive,
            "neg" => Polarity::Negative,
            other => return Err(self.error(format!("expected `pos` or `neg`, found `{other}`"))),
        };
        self.expect("(")?;
        let inclusions = self.atom_set()?;
        self.expect(",")?;
        let exclusions = self.atom_set()?;
        self.expect(",")?;
        let context = self.fact_set()?;
        self.expect(")")?;
        self.expect(".")?;
        CdpiExample::new(polarity, inclusions, exclusions, context)
    }
}

/// The complementary in/out labelling atoms of an extension.
fn labelling(framework: &Framework, extension: &Extension) -> (BTreeSet<GroundAtom>, BTreeSet<GroundAtom>) {
    let mut labelled = BTreeSet::new();
    let mut complement = BTreeSet::new();
    for arg in framework.args() {
        if extension.contains(arg) {
            labelled.insert(GroundAtom::unary("in", arg.as_str()));
            complement.insert(GroundAtom::unary("out", arg.as_str()));
        } else {
            labelled.insert(GroundAtom::unary("out", arg.as_str()));
            complement.insert(GroundAtom::unary("in", arg.as_str()));
        }
    }
    (labelled, complement)
}

fn subset_extension(framework: &Framework, mask: u64) -> Extension {
    Extension::new(
        framework
            .args()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect(),
    )
}

/// Samples labelled examples for a semantics from the given frameworks.
///
/// Positives pair a framework with one of its oracle extensions, labelled
/// `in`/`out` with the complementary labelling excluded. Negatives pair a
/// framework with a subset that is not an extension, labelled in the
/// inclusions only. Sampling is a seeded shuffle of all candidates, so
/// output is deterministic per seed.
pub fn generate_examples(
    semantics: SemanticsId,
    frameworks: &[Framework],
    n_pos: usize,
    n_neg: usize,
    seed: u64,
) -> Result<(Vec<CdpiExample>, Vec<CdpiExample>), LearnError> {
    let mut families = Vec::new();
    for framework in frameworks {
        families.push(extensions(framework, semantics)?);
    }

    let mut positive_candidates: Vec<(usize, Extension)> = Vec::new();
    let mut negative_candidates: Vec<(usize, Extension)> = Vec::new();
    for (fi, framework) in frameworks.iter().enumerate() {
        let family = &families[fi];
        for e in family {
            positive_candidates.push((fi, e.clone()));
        }
        let n = framework.args().len();
        assert!(n < 63, "oracle cap keeps frameworks small");
        for mask in 0..(1u64 << n) {
            let candidate = subset_extension(framework, mask);
            if !family.contains(&candidate) {
                negative_candidates.push((fi, candidate));
            }
        }
    }

    if positive_candidates.len() < n_pos {
        return Err(LearnError::InsufficientLabellings {
            available: positive_candidates.len(),
            requested: n_pos,
        });
    }
    if negative_candidates.len() < n_neg {
        return Err(LearnError::InsufficientLabellings {
            available: negative_candidates.len(),
            requested: n_neg,
        });
    }

    let mut rng = SplitMix64::new(seed);
    rng.shuffle(&mut positive_candidates);
    rng.shuffle(&mut negative_candidates);

    let mut positives = Vec::new();
    for (fi, extension) in positive_candidates.into_iter().take(n_pos) {
        let framework = &frameworks[fi];
        let (inc, exc) = labelling(framework, &extension);
        positives.push(CdpiExample::new(
            Polarity::Positive,
            inc,
            exc,
            framework.to_facts(),
        )?);
    }
    let mut negatives = Vec::new();
    for (fi, extension) in negative_candidates.into_iter().take(n_neg) {
        let framework = &frameworks[fi];
        let (inc, _) = labelling(framework, &extension);
        negatives.push(CdpiExample::new(
            Polarity::Negative,
            inc,
            BTreeSet::new(),
            framework.to_facts(),
        )?);
    }
    Ok((positives, negatives))
}
