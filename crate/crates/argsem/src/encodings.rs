//! The bundled answer-set encodings: per-kind background knowledge, the
//! learned semantics programs, and the reference admissible encoding in
//! ASPARTIX style.
//!
//! Every program ships as a text fixture under `encodings/` and is parsed
//! at load so the files can be inspected and diffed as plain text.

use std::fmt;

use crate::asp::{parse_program, Program};
use crate::framework::FrameworkKind;

/// The acceptability semantics handled by the toolkit.
///
/// `ConflictFree` is served by the brute-force oracle only; no learned
/// encoding exists for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticsId {
    ConflictFree,
    Admissible,
    Complete,
    Grounded,
    Preferred,
    Stable,
}

impl SemanticsId {
    pub const ALL: [SemanticsId; 6] = [
        SemanticsId::ConflictFree,
        SemanticsId::Admissible,
        SemanticsId::Complete,
        SemanticsId::Grounded,
        SemanticsId::Preferred,
        SemanticsId::Stable,
    ];

    /// The five semantics with learned encodings.
    pub const ENCODED: [SemanticsId; 5] = [
        SemanticsId::Admissible,
        SemanticsId::Complete,
        SemanticsId::Grounded,
        SemanticsId::Preferred,
        SemanticsId::Stable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsId::ConflictFree => "conflict_free",
            SemanticsId::Admissible => "admissible",
            SemanticsId::Complete => "complete",
            SemanticsId::Grounded => "grounded",
            SemanticsId::Preferred => "preferred",
            SemanticsId::Stable => "stable",
        }
    }

    pub fn parse(name: &str) -> Option<SemanticsId> {
        SemanticsId::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum EncodingError {
    #[error("no learned encoding exists for the conflict_free semantics")]
    ConflictFreeRequested,
}

const BACKGROUND_FULL: &str = include_str!("../encodings/background.lp");
const BACKGROUND_AAF: &str = include_str!("../encodings/background_aaf.lp");
const BACKGROUND_BAF: &str = include_str!("../encodings/background_baf.lp");
const BACKGROUND_VAF: &str = include_str!("../encodings/background_vaf.lp");
const STABLE: &str = include_str!("../encodings/stable.lp");
const COMPLETE: &str = include_str!("../encodings/complete.lp");
const ADMISSIBLE: &str = include_str!("../encodings/admissible.lp");
const GROUNDED: &str = include_str!("../encodings/grounded.lp");
const PREFERRED: &str = include_str!("../encodings/preferred.lp");
const ASPARTIX_ADMISSIBLE: &str = include_str!("../encodings/aspartix_admissible.lp");

fn load(text: &str) -> Program {
    parse_program(text).expect("bundled encoding parses")
}

/// The unsimplified background knowledge covering all framework kinds.
pub fn background_full() -> Program {
    load(BACKGROUND_FULL)
}

/// The simplified background knowledge for one framework kind.
pub fn background(kind: FrameworkKind) -> Program {
    match kind {
        FrameworkKind::Aaf => load(BACKGROUND_AAF),
        FrameworkKind::Baf => load(BACKGROUND_BAF),
        FrameworkKind::Vaf => load(BACKGROUND_VAF),
    }
}

/// The learned program for a semantics, without background knowledge.
///
/// The learned programs are shared by all framework kinds; what changes per
/// kind is the background defining `defeated` and `not_defended`.
pub fn learned(semantics: SemanticsId) -> Result<Program, EncodingError> {
    match semantics {
        SemanticsId::ConflictFree => Err(EncodingError::ConflictFreeRequested),
        SemanticsId::Admissible => Ok(load(ADMISSIBLE)),
        SemanticsId::Complete => Ok(load(COMPLETE)),
        SemanticsId::Grounded => Ok(load(GROUNDED)),
        SemanticsId::Preferred => Ok(load(PREFERRED)),
        SemanticsId::Stable => Ok(load(STABLE)),
    }
}

/// Background knowledge for `kind` plus the learned program for
/// `semantics`: the full evaluatable encoding.
pub fn full_semantics(
    kind: FrameworkKind,
    semantics: SemanticsId,
) -> Result<Program, EncodingError> {
    Ok(background(kind).union(&learned(semantics)?))
}

/// The reference admissible encoding (guess rules, `defeated`,
/// `not_defended`, and two constraints).
pub fn aspartix_admissible() -> Program {
    load(ASPARTIX_ADMISSIBLE)
}

/// Raw fixture text, for display and diffing.
pub fn fixture_text(kind: Option<FrameworkKind>, semantics: Option<SemanticsId>) -> Option<&'static str> {
    match (kind, semantics) {
        (Some(FrameworkKind::Aaf), None) => Some(BACKGROUND_AAF),
        (Some(FrameworkKind::Baf), None) => Some(BACKGROUND_BAF),
        (Some(FrameworkKind::Vaf), None) => Some(BACKGROUND_VAF),
        (None, Some(SemanticsId::Stable)) => Some(STABLE),
        (None, Some(SemanticsId::Complete)) => Some(COMPLETE),
        (None, Some(SemanticsId::Admissible)) => Some(ADMISSIBLE),
        (None, Some(SemanticsId::Grounded)) => Some(GROUNDED),
        (None, Some(SemanticsId::Preferred)) => Some(PREFERRED),
        _ => None,
    }
}
