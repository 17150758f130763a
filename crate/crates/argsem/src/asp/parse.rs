//! Parser for program text.
//!
//! Accepted statements, whitespace-insensitive, `%` comments to end of line:
//!
//! ```text
//! head :- b1, ..., not c1, ... .
//! :- b1, ..., not c1, ... .
//! fact(a).
//! #heuristic in(X). [1@1, false]
//! ```

use super::syntax::{is_constant_token, is_variable_token, Atom, Program, Rule, Term};
use super::AspError;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> AspError {
        AspError::Syntax {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'%' {
                while let Some(c) = self.peek() {
                    if c == b'\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.peek().is_none()
    }

    fn eat(&mut self, text: &str) -> bool {
        self.skip_trivia();
        if self.src[self.pos..].starts_with(text.as_bytes()) {
            for _ in 0..text.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), AspError> {
        if self.eat(text) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{text}`")))
        }
    }

    fn token(&mut self) -> Result<String, AspError> {
        self.skip_trivia();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected an identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term, AspError> {
        let tok = self.token()?;
        if is_constant_token(&tok) {
            Ok(Term::constant(tok))
        } else if is_variable_token(&tok) {
            Ok(Term::variable(tok))
        } else {
            Err(self.error(format!("`{tok}` is neither a constant nor a variable")))
        }
    }

    fn atom(&mut self) -> Result<Atom, AspError> {
        let pred = self.token()?;
        if !is_constant_token(&pred) {
            return Err(self.error(format!("`{pred}` is not a valid predicate name")));
        }
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                args.push(self.term()?);
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Atom::new(pred, args))
    }

    /// `not a1, b1, not c2, ...` up to the terminating dot.
    fn body(&mut self) -> Result<(Vec<Atom>, Vec<Atom>), AspError> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        loop {
            self.skip_trivia();
            if self.eat("not ") || self.eat("not\t") || self.eat("not\n") {
                neg.push(self.atom()?);
            } else {
                pos.push(self.atom()?);
            }
            if self.eat(".") {
                break;
            }
            self.expect(",")?;
        }
        Ok((pos, neg))
    }

    fn heuristic(&mut self) -> Result<Atom, AspError> {
        // `#heuristic` already consumed
        let atom = self.atom()?;
        self.expect(".")?;
        self.expect("[")?;
        self.expect("1")?;
        self.expect("@")?;
        self.expect("1")?;
        self.expect(",")?;
        self.expect("false")?;
        self.expect("]")?;
        Ok(atom)
    }

    fn statement(&mut self, program: &mut Program) -> Result<(), AspError> {
        if self.eat("#") {
            let kw = self.token()?;
            if kw != "heuristic" {
                return Err(self.error(format!("unsupported directive `#{kw}`")));
            }
            program.heuristics.push(self.heuristic()?);
            return Ok(());
        }
        if self.eat(":-") {
            let (pos, neg) = self.body()?;
            program.rules.push(Rule::new(None, pos, neg)?);
            return Ok(());
        }
        let head = self.atom()?;
        if self.eat(".") {
            program.rules.push(Rule::fact(head)?);
            return Ok(());
        }
        self.expect(":-")?;
        let (pos, neg) = self.body()?;
        program.rules.push(Rule::new(Some(head), pos, neg)?);
        Ok(())
    }
}

/// Parses program text into a [`Program`], validating rule safety.
pub fn parse_program(text: &str) -> Result<Program, AspError> {
    let mut scanner = Scanner::new(text);
    let mut program = Program::default();
    while !scanner.at_end() {
        scanner.statement(&mut program)?;
    }
    Ok(program)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rules_constraints_and_facts() {
        let p = parse_program(
            "% background\n\
             defeated(X) :- in(Y), att(Y,X).\n\
             :- in(X), in(Y), att(X,Y).\n\
             arg(a).\n",
        )
        .unwrap();
        assert_eq!(p.rules.len(), 3);
        assert!(p.rules[1].is_constraint());
        assert!(p.rules[2].is_fact());
        assert_eq!(p.rules[0].to_string(), "defeated(X) :- in(Y), att(Y,X).");
    }

    #[test]
    fn parses_heuristic_statement() {
        let p = parse_program("in(X) :- arg(X), not not_defended(X).\n#heuristic in(X). [1@1, false]\n").unwrap();
        assert_eq!(p.heuristics.len(), 1);
        assert_eq!(p.heuristics[0].to_string(), "in(X)");
    }

    #[test]
    fn rejects_other_heuristic_forms() {
        assert!(parse_program("#heuristic assume(X). [1, false]").is_err());
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_program("arg(a).\narg(b)\narg(c).").unwrap_err();
        match err {
            AspError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_unsafe_rule_at_parse() {
        assert!(parse_program("in(X) :- not out(X).").is_err());
    }

    #[test]
    fn display_parses_back() {
        let text = "out(X) :- defeated(X).\nin(X) :- arg(X), not out(X).\n#heuristic out(X). [1@1, false]\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }
}
