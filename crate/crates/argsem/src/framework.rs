//! Argumentation framework domain types, input parsers and fact encoding.
//!
//! Three abstract framework kinds share one representation: plain
//! attack-only frameworks, bipolar frameworks with a support relation, and
//! value-based frameworks where every argument carries a value and a strict
//! preference order on values defuses attacks. Flat assumption-based
//! frameworks are a separate structured type translated to the abstract
//! form by [`crate::aba`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::asp::{is_constant_token, GroundAtom};

/// Errors raised while parsing or validating frameworks.
#[derive(Debug, Clone, thiserror::Error)]
pub enum FrameworkError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("`{0}` is not a valid symbolic constant")]
    BadConstant(String),
    #[error("argument `{0}` occurs in a relation but is not declared")]
    UndeclaredArgument(String),
    #[error("pair ({0},{1}) is declared both as an attack and as a support")]
    AttackSupportOverlap(String, String),
    #[error("argument `{0}` has no value assigned")]
    MissingValue(String),
    #[error("value preference cycle through `{0}`")]
    ValuePreferenceCycle(String),
    #[error("support or value information is not allowed for kind {0}")]
    KindMismatch(FrameworkKind),
    #[error("missing or malformed header, expected `p af <n>`")]
    BadHeader,
    #[error("argument index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("assumption `{0}` appears in a rule head: framework is not flat")]
    NotFlat(String),
    #[error("assumption `{0}` has no contrary")]
    MissingContrary(String),
    #[error("duplicate contrary declaration for assumption `{0}`")]
    DuplicateContrary(String),
    #[error("`{0}` is declared as an assumption more than once")]
    DuplicateAssumption(String),
}

/// A symbolic argument name: letters, digits and underscores, starting with
/// a lowercase letter. Unique within its framework.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self, FrameworkError> {
        let name = name.into();
        if is_constant_token(&name) {
            Ok(ArgumentId(name))
        } else {
            Err(FrameworkError::BadConstant(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The three abstract framework kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameworkKind {
    Aaf,
    Baf,
    Vaf,
}

impl fmt::Display for FrameworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameworkKind::Aaf => write!(f, "AAF"),
            FrameworkKind::Baf => write!(f, "BAF"),
            FrameworkKind::Vaf => write!(f, "VAF"),
        }
    }
}

/// An abstract argumentation framework.
///
/// Immutable after construction; every constructor validates the
/// kind-specific invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framework {
    kind: FrameworkKind,
    args: BTreeSet<ArgumentId>,
    attacks: BTreeSet<(ArgumentId, ArgumentId)>,
    supports: BTreeSet<(ArgumentId, ArgumentId)>,
    values: BTreeMap<ArgumentId, String>,
    valprefs: BTreeSet<(String, String)>,
}

impl Framework {
    pub fn new(
        kind: FrameworkKind,
        args: BTreeSet<ArgumentId>,
        attacks: BTreeSet<(ArgumentId, ArgumentId)>,
        supports: BTreeSet<(ArgumentId, ArgumentId)>,
        values: BTreeMap<ArgumentId, String>,
        valprefs: BTreeSet<(String, String)>,
    ) -> Result<Self, FrameworkError> {
        for (x, y) in attacks.iter().chain(supports.iter()) {
            for end in [x, y] {
                if !args.contains(end) {
                    return Err(FrameworkError::UndeclaredArgument(end.to_string()));
                }
            }
        }
        for arg in values.keys() {
            if !args.contains(arg) {
                return Err(FrameworkError::UndeclaredArgument(arg.to_string()));
            }
        }
        if let Some((x, y)) = attacks.intersection(&supports).next() {
            return Err(FrameworkError::AttackSupportOverlap(
                x.to_string(),
                y.to_string(),
            ));
        }
        match kind {
            FrameworkKind::Aaf => {
                if !supports.is_empty() || !values.is_empty() || !valprefs.is_empty() {
                    return Err(FrameworkError::KindMismatch(kind));
                }
            }
            FrameworkKind::Baf => {
                if !values.is_empty() || !valprefs.is_empty() {
                    return Err(FrameworkError::KindMismatch(kind));
                }
            }
            FrameworkKind::Vaf => {
                for arg in &args {
                    if !values.contains_key(arg) {
                        return Err(FrameworkError::MissingValue(arg.to_string()));
                    }
                }
                // the preference order must stay irreflexive once closed
                let closure = transitive_closure(&valprefs);
                if let Some((v, _)) = closure.iter().find(|(u, v)| u == v) {
                    return Err(FrameworkError::ValuePreferenceCycle(v.clone()));
                }
            }
        }
        Ok(Framework {
            kind,
            args,
            attacks,
            supports,
            values,
            valprefs,
        })
    }

    /// A plain attack-only framework.
    pub fn aaf(
        args: BTreeSet<ArgumentId>,
        attacks: BTreeSet<(ArgumentId, ArgumentId)>,
    ) -> Result<Self, FrameworkError> {
        Framework::new(
            FrameworkKind::Aaf,
            args,
            attacks,
            BTreeSet::new(),
            BTreeMap::new(),
            BTreeSet::new(),
        )
    }

    pub fn kind(&self) -> FrameworkKind {
        self.kind
    }

    pub fn args(&self) -> &BTreeSet<ArgumentId> {
        &self.args
    }

    pub fn attacks(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.attacks
    }

    pub fn supports(&self) -> &BTreeSet<(ArgumentId, ArgumentId)> {
        &self.supports
    }

    pub fn values(&self) -> &BTreeMap<ArgumentId, String> {
        &self.values
    }

    pub fn valprefs(&self) -> &BTreeSet<(String, String)> {
        &self.valprefs
    }

    /// Encodes the framework as ground facts (`arg`, `att`, `support`,
    /// `val`, `valpref`), in lexicographic order.
    pub fn to_facts(&self) -> BTreeSet<GroundAtom> {
        let mut facts = BTreeSet::new();
        for a in &self.args {
            facts.insert(GroundAtom::unary("arg", a.as_str()));
        }
        for (x, y) in &self.attacks {
            facts.insert(GroundAtom::binary("att", x.as_str(), y.as_str()));
        }
        for (x, y) in &self.supports {
            facts.insert(GroundAtom::binary("support", x.as_str(), y.as_str()));
        }
        for (a, v) in &self.values {
            facts.insert(GroundAtom::binary("val", a.as_str(), v.as_str()));
        }
        for (u, v) in &self.valprefs {
            facts.insert(GroundAtom::binary("valpref", u.as_str(), v.as_str()));
        }
        facts
    }

    /// Renders the framework in the fact syntax accepted by [`parse_apx`].
    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for fact in self.to_facts() {
            out.push_str(&fact.to_string());
            out.push_str(".\n");
        }
        out
    }
}

/// A set of arguments proposed or verified as jointly acceptable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Extension {
    pub members: BTreeSet<ArgumentId>,
}

impl Extension {
    pub fn new(members: BTreeSet<ArgumentId>) -> Self {
        Extension { members }
    }

    pub fn contains(&self, arg: &ArgumentId) -> bool {
        self.members.contains(arg)
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A flat assumption-based framework: a language, inference rules,
/// assumptions and a total contrary mapping on assumptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbaFramework {
    language: BTreeSet<String>,
    rules: Vec<(String, Vec<String>)>,
    assumptions: BTreeSet<String>,
    contrary: BTreeMap<String, String>,
}

impl AbaFramework {
    pub fn new(
        rules: Vec<(String, Vec<String>)>,
        assumptions: BTreeSet<String>,
        contrary: BTreeMap<String, String>,
    ) -> Result<Self, FrameworkError> {
        for token in assumptions
            .iter()
            .chain(contrary.values())
            .chain(rules.iter().map(|(h, _)| h))
            .chain(rules.iter().flat_map(|(_, b)| b.iter()))
        {
            if !is_constant_token(token) {
                return Err(FrameworkError::BadConstant(token.clone()));
            }
        }
        for (head, _) in &rules {
            if assumptions.contains(head) {
                return Err(FrameworkError::NotFlat(head.clone()));
            }
        }
        for a in &assumptions {
            if !contrary.contains_key(a) {
                return Err(FrameworkError::MissingContrary(a.clone()));
            }
        }
        let mut language: BTreeSet<String> = assumptions.iter().cloned().collect();
        language.extend(contrary.values().cloned());
        for (head, body) in &rules {
            language.insert(head.clone());
            language.extend(body.iter().cloned());
        }
        Ok(AbaFramework {
            language,
            rules,
            assumptions,
            contrary,
        })
    }

    pub fn language(&self) -> &BTreeSet<String> {
        &self.language
    }

    pub fn rules(&self) -> &[(String, Vec<String>)] {
        &self.rules
    }

    pub fn assumptions(&self) -> &BTreeSet<String> {
        &self.assumptions
    }

    pub fn contrary(&self) -> &BTreeMap<String, String> {
        &self.contrary
    }
}

pub(crate) fn transitive_closure(pairs: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut closure = pairs.clone();
    loop {
        let mut additions = Vec::new();
        for (x, y) in &closure {
            for (y2, z) in &closure {
                if y == y2 && !closure.contains(&(x.clone(), z.clone())) {
                    additions.push((x.clone(), z.clone()));
                }
            }
        }
        if additions.is_empty() {
            return closure;
        }
        closure.extend(additions);
    }
}

// ---------------------------------------------------------------------------
// fact-format parser
// ---------------------------------------------------------------------------

/// Parses the fact format: lines of `arg(a).`, `att(a,b).`, `support(a,b).`,
/// `val(a,v).`, `valpref(u,v).` with `%` comments. The framework kind is
/// inferred: any `val`/`valpref` fact makes it value-based, otherwise any
/// `support` fact makes it bipolar, otherwise it is a plain framework.
pub fn parse_apx(text: &str) -> Result<Framework, FrameworkError> {
    let mut args = BTreeSet::new();
    let mut attacks = Vec::new();
    let mut supports = Vec::new();
    let mut values = Vec::new();
    let mut valprefs = BTreeSet::new();

    let mut pos = 0usize;
    let mut line = 1usize;
    let mut col = 1usize;
    let bytes = text.as_bytes();

    let mut statements: Vec<(String, Vec<String>, usize, usize)> = Vec::new();
    // hand-rolled scan: predicate '(' args ')' '.' with comments and spaces
    while pos < bytes.len() {
        let c = bytes[pos];
        if c == b'%' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        if c == b'\n' {
            pos += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            pos += 1;
            col += 1;
            continue;
        }
        let (stmt_line, stmt_col) = (line, col);
        let token = |pos: &mut usize, col: &mut usize| -> String {
            let start = *pos;
            while *pos < bytes.len()
                && (bytes[*pos].is_ascii_alphanumeric() || bytes[*pos] == b'_')
            {
                *pos += 1;
                *col += 1;
            }
            String::from_utf8_lossy(&bytes[start..*pos]).into_owned()
        };
        let pred = token(&mut pos, &mut col);
        if pred.is_empty() {
            return Err(FrameworkError::Syntax {
                line,
                col,
                message: format!("unexpected character `{}`", bytes[pos] as char),
            });
        }
        let mut terms = Vec::new();
        let skip_ws = |pos: &mut usize, col: &mut usize, line: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                if bytes[*pos] == b'\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
                *pos += 1;
            }
        };
        skip_ws(&mut pos, &mut col, &mut line);
        if pos < bytes.len() && bytes[pos] == b'(' {
            pos += 1;
            col += 1;
            loop {
                skip_ws(&mut pos, &mut col, &mut line);
                let t = token(&mut pos, &mut col);
                if t.is_empty() {
                    return Err(FrameworkError::Syntax {
                        line,
                        col,
                        message: "expected a term".to_string(),
                    });
                }
                terms.push(t);
                skip_ws(&mut pos, &mut col, &mut line);
                if pos < bytes.len() && bytes[pos] == b',' {
                    pos += 1;
                    col += 1;
                    continue;
                }
                if pos < bytes.len() && bytes[pos] == b')' {
                    pos += 1;
                    col += 1;
                    break;
                }
                return Err(FrameworkError::Syntax {
                    line,
                    col,
                    message: "expected `,` or `)`".to_string(),
                });
            }
        }
        skip_ws(&mut pos, &mut col, &mut line);
        if pos >= bytes.len() || bytes[pos] != b'.' {
            return Err(FrameworkError::Syntax {
                line,
                col,
                message: "expected `.` after fact".to_string(),
            });
        }
        pos += 1;
        col += 1;
        statements.push((pred, terms, stmt_line, stmt_col));
    }

    let arity_error = |pred: &str, line: usize, col: usize| FrameworkError::Syntax {
        line,
        col,
        message: format!("wrong number of terms for `{pred}`"),
    };
    for (pred, terms, s_line, s_col) in &statements {
        match pred.as_str() {
            "arg" => {
                if terms.len() != 1 {
                    return Err(arity_error(pred, *s_line, *s_col));
                }
                args.insert(ArgumentId::new(terms[0].clone())?);
            }
            "att" | "support" | "val" | "valpref" => {
                if terms.len() != 2 {
                    return Err(arity_error(pred, *s_line, *s_col));
                }
            }
            other => {
                return Err(FrameworkError::Syntax {
                    line: *s_line,
                    col: *s_col,
                    message: format!("unknown predicate `{other}`"),
                });
            }
        }
    }
    let arg_pair = |a: &str, b: &str| -> Result<(ArgumentId, ArgumentId), FrameworkError> {
        let x = ArgumentId::new(a)?;
        let y = ArgumentId::new(b)?;
        for end in [&x, &y] {
            if !args.contains(end) {
                return Err(FrameworkError::UndeclaredArgument(end.to_string()));
            }
        }
        Ok((x, y))
    };
    for (pred, terms, _, _) in &statements {
        match pred.as_str() {
            "att" => attacks.push(arg_pair(&terms[0], &terms[1])?),
            "support" => supports.push(arg_pair(&terms[0], &terms[1])?),
            "val" => {
                let a = ArgumentId::new(terms[0].clone())?;
                if !args.contains(&a) {
                    return Err(FrameworkError::UndeclaredArgument(a.to_string()));
                }
                if !is_constant_token(&terms[1]) {
                    return Err(FrameworkError::BadConstant(terms[1].clone()));
                }
                values.push((a, terms[1].clone()));
            }
            "valpref" => {
                for t in terms {
                    if !is_constant_token(t) {
                        return Err(FrameworkError::BadConstant(t.clone()));
                    }
                }
                valprefs.insert((terms[0].clone(), terms[1].clone()));
            }
            _ => {}
        }
    }

    let has_values = !values.is_empty() || !valprefs.is_empty();
    let kind = if has_values {
        FrameworkKind::Vaf
    } else if !supports.is_empty() {
        FrameworkKind::Baf
    } else {
        FrameworkKind::Aaf
    };
    Framework::new(
        kind,
        args,
        attacks.into_iter().collect(),
        supports.into_iter().collect(),
        values.into_iter().collect(),
        valprefs,
    )
}

// ---------------------------------------------------------------------------
// numeric competition format
// ---------------------------------------------------------------------------

/// Parses the numeric competition format: a header `p af <n>` followed by
/// attack lines `<i> <j>` with 1-based indices; `#` starts a comment.
/// Argument `i` is named `a<i>`.
pub fn parse_iccma(text: &str) -> Result<Framework, FrameworkError> {
    let mut n: Option<usize> = None;
    let mut attacks = BTreeSet::new();
    for raw_line in text.lines() {
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match n {
            None => {
                let mut parts = line.split_whitespace();
                let (p, af, count) = (parts.next(), parts.next(), parts.next());
                if p != Some("p") || af != Some("af") || parts.next().is_some() {
                    return Err(FrameworkError::BadHeader);
                }
                let count: usize = count
                    .and_then(|c| c.parse().ok())
                    .ok_or(FrameworkError::BadHeader)?;
                n = Some(count);
            }
            Some(max) => {
                let mut parts = line.split_whitespace();
                let i: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FrameworkError::BadHeader)?;
                let j: usize = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(FrameworkError::BadHeader)?;
                if parts.next().is_some() {
                    return Err(FrameworkError::BadHeader);
                }
                for index in [i, j] {
                    if index == 0 || index > max {
                        return Err(FrameworkError::IndexOutOfRange { index, max });
                    }
                }
                attacks.insert((index_argument(i), index_argument(j)));
            }
        }
    }
    let n = n.ok_or(FrameworkError::BadHeader)?;
    let args = (1..=n).map(index_argument).collect();
    Framework::aaf(args, attacks)
}

/// The argument name used for 1-based index `i` in numeric input.
pub fn index_argument(i: usize) -> ArgumentId {
    ArgumentId::new(format!("a{i}")).expect("a<i> is a valid constant")
}

// ---------------------------------------------------------------------------
// assumption-based framework format
// ---------------------------------------------------------------------------

/// Parses the line-based assumption format:
///
/// ```text
/// assumption <a>
/// contrary <a> <c>
/// rule <head> <body atoms...>
/// ```
///
/// with `%` comments. Every assumption needs exactly one contrary.
pub fn parse_aba(text: &str) -> Result<AbaFramework, FrameworkError> {
    let mut assumptions = BTreeSet::new();
    let mut contrary: BTreeMap<String, String> = BTreeMap::new();
    let mut rules = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('%') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| FrameworkError::Syntax {
            line: idx + 1,
            col: 1,
            message,
        };
        let mut parts = line.split_whitespace();
        let keyword = parts.next().expect("nonempty line has a first token");
        let rest: Vec<String> = parts.map(str::to_string).collect();
        match keyword {
            "assumption" => {
                if rest.len() != 1 {
                    return Err(syntax("expected `assumption <a>`".to_string()));
                }
                if !assumptions.insert(rest[0].clone()) {
                    return Err(FrameworkError::DuplicateAssumption(rest[0].clone()));
                }
            }
            "contrary" => {
                if rest.len() != 2 {
                    return Err(syntax("expected `contrary <a> <c>`".to_string()));
                }
                if contrary.insert(rest[0].clone(), rest[1].clone()).is_some() {
                    return Err(FrameworkError::DuplicateContrary(rest[0].clone()));
                }
            }
            "rule" => {
                if rest.is_empty() {
                    return Err(syntax("expected `rule <head> <body...>`".to_string()));
                }
                rules.push((rest[0].clone(), rest[1..].to_vec()));
            }
            other => {
                return Err(syntax(format!("unknown keyword `{other}`")));
            }
        }
    }
    for declared in contrary.keys() {
        if !assumptions.contains(declared) {
            return Err(FrameworkError::UndeclaredArgument(declared.clone()));
        }
    }
    AbaFramework::new(rules, assumptions, contrary)
}
