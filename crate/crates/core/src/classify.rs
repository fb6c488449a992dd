//! Six-way intent labelling.
//!
//! Rules are tried in a fixed order and the first one that fires decides
//! the label, so overlapping cues (an info-seeking verb that is also an
//! imperative, a 말고 clause that also contains -지) resolve the same way
//! every time.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use thiserror::Error;

use crate::analyze::Analysis;
use crate::lexicon::{EndingKind, Lexicon, WhKind};

/// Dataset labels 0..=5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntentLabel {
    YesNo = 0,
    Alternative = 1,
    Wh = 2,
    Prohibition = 3,
    Requirement = 4,
    StrongRequirement = 5,
}

impl IntentLabel {
    pub const ALL: [IntentLabel; 6] = [
        IntentLabel::YesNo,
        IntentLabel::Alternative,
        IntentLabel::Wh,
        IntentLabel::Prohibition,
        IntentLabel::Requirement,
        IntentLabel::StrongRequirement,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        IntentLabel::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            IntentLabel::YesNo => "yes_no",
            IntentLabel::Alternative => "alternative",
            IntentLabel::Wh => "wh_question",
            IntentLabel::Prohibition => "prohibition",
            IntentLabel::Requirement => "requirement",
            IntentLabel::StrongRequirement => "strong_requirement",
        }
    }

    pub fn is_question(self) -> bool {
        self.code() <= 2
    }

    pub fn question_type(self) -> Result<QuestionType, ClassifyError> {
        match self {
            IntentLabel::YesNo => Ok(QuestionType::YesNo),
            IntentLabel::Alternative => Ok(QuestionType::Alternative),
            IntentLabel::Wh => Ok(QuestionType::Wh),
            _ => Err(ClassifyError::WrongSuperType),
        }
    }

    pub fn negativeness(self) -> Result<Negativeness, ClassifyError> {
        match self {
            IntentLabel::Prohibition => Ok(Negativeness::Prohibition),
            IntentLabel::Requirement => Ok(Negativeness::Requirement),
            IntentLabel::StrongRequirement => Ok(Negativeness::StrongRequirement),
            _ => Err(ClassifyError::WrongSuperType),
        }
    }
}

impl fmt::Display for IntentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuestionType {
    YesNo,
    Alternative,
    Wh,
}

impl QuestionType {
    pub fn name(self) -> &'static str {
        match self {
            QuestionType::YesNo => "yes_no",
            QuestionType::Alternative => "alternative",
            QuestionType::Wh => "wh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Negativeness {
    Prohibition,
    Requirement,
    StrongRequirement,
}

impl Negativeness {
    pub fn code(self) -> &'static str {
        match self {
            Negativeness::Prohibition => "PH",
            Negativeness::Requirement => "REQ",
            Negativeness::StrongRequirement => "SR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("unclassifiable")]
    Unclassifiable,
    #[error("label belongs to the other super-type")]
    WrongSuperType,
}

/// The decision rules, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    InfoSeeking,
    WhInterrogative,
    ParallelClauses,
    YesNoInterrogative,
    MalgoCoordination,
    DoubleNegation,
    Prohibition,
    Requirement,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::InfoSeeking => "info-seeking",
            Rule::WhInterrogative => "wh-interrogative",
            Rule::ParallelClauses => "parallel-clauses",
            Rule::YesNoInterrogative => "yes-no-interrogative",
            Rule::MalgoCoordination => "malgo-coordination",
            Rule::DoubleNegation => "double-negation",
            Rule::Prohibition => "prohibition",
            Rule::Requirement => "requirement",
        }
    }
}

/// A piece of evidence: which cue was seen and where (byte span in the
/// normalized text).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evidence {
    pub cue: &'static str,
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: IntentLabel,
    pub rule: Rule,
    /// Present exactly when `label` is `Wh`.
    pub wh: Option<WhKind>,
    pub evidence: Vec<Evidence>,
}

/// Clause segments of an alternative question: the option spans between
/// repeated predicates or disjunctions.
pub(crate) fn alternative_segments(lex: &Lexicon, a: &Analysis) -> Option<Vec<Range<usize>>> {
    let p = a.predicate;
    let tokens = a.tokens();
    let pred = tokens[p].surface.as_str();
    let mut segments = Vec::new();
    let mut start = 0;
    for (i, t) in tokens[..p].iter().enumerate() {
        let repeated = t.surface == pred;
        let disjunction = Lexicon::contains(&lex.disjunctions, &t.surface);
        if repeated || disjunction {
            segments.push(start..i);
            start = i + 1;
        }
    }
    if segments.is_empty() {
        return None;
    }
    segments.push(start..p);
    Some(segments)
}

fn token_span(a: &Analysis, range: Range<usize>) -> (usize, usize) {
    let tokens = a.tokens();
    let first = &tokens[range.start];
    let last = &tokens[range.end - 1];
    (first.offset, last.offset + last.surface.len())
}

fn ending_evidence(a: &Analysis) -> Option<Evidence> {
    let m = a.ending.as_ref()?;
    if let Some(c) = a.cue_at {
        return Some(Evidence {
            cue: "ending:declarative-cue",
            span: token_span(a, c..a.predicate + 1),
        });
    }
    let t = &a.tokens()[a.predicate];
    let cue = match m.kind {
        EndingKind::Interrogative => "ending:interrogative",
        EndingKind::Imperative => "ending:imperative",
        EndingKind::DeclarativeCue => "ending:declarative-cue",
    };
    Some(Evidence {
        cue,
        span: (t.offset + m.head.len(), t.offset + t.surface.len()),
    })
}

/// Labels an analyzed utterance.
pub fn classify(lex: &Lexicon, a: &Analysis) -> Result<Classification, ClassifyError> {
    let mut evidence = Vec::new();
    let ending_kind = a.ending.as_ref().map(|m| m.kind);
    let questioning = matches!(
        ending_kind,
        Some(EndingKind::Interrogative) | Some(EndingKind::DeclarativeCue)
    );
    let wh_evidence = |hit: &crate::analyze::WhHit| Evidence {
        cue: "wh",
        span: hit.span,
    };

    let done = |label, rule, wh, evidence| {
        Ok(Classification {
            label,
            rule,
            wh,
            evidence,
        })
    };

    // (1) info-seeking imperative
    if let Some(info) = a.info_at {
        evidence.push(Evidence {
            cue: "info-verb",
            span: token_span(a, info..a.predicate + 1),
        });
        if let Some(hit) = a.wh.filter(|w| w.start < info) {
            evidence.push(wh_evidence(&hit));
            return done(IntentLabel::Wh, Rule::InfoSeeking, Some(hit.kind), evidence);
        }
        // the quantifier needs a noun to range over
        if let Some(q) = a.quantifier.filter(|&q| q < info && info >= 2) {
            evidence.push(Evidence {
                cue: "quantifier",
                span: token_span(a, q..q + 1),
            });
            return done(
                IntentLabel::Wh,
                Rule::InfoSeeking,
                Some(WhKind::What),
                evidence,
            );
        }
        return done(IntentLabel::YesNo, Rule::InfoSeeking, None, evidence);
    }

    // (2) wh form with an interrogative ending or a want-to-know cue
    if let (Some(hit), true) = (a.wh, questioning) {
        evidence.push(wh_evidence(&hit));
        evidence.extend(ending_evidence(a));
        return done(
            IntentLabel::Wh,
            Rule::WhInterrogative,
            Some(hit.kind),
            evidence,
        );
    }

    // (3) parallel interrogative clauses or an explicit disjunction
    if ending_kind == Some(EndingKind::Interrogative) {
        if let Some(segments) = alternative_segments(lex, a) {
            if segments.iter().all(|s| !s.is_empty()) {
                for s in &segments {
                    evidence.push(Evidence {
                        cue: "option",
                        span: token_span(a, s.clone()),
                    });
                }
                evidence.extend(ending_evidence(a));
                return done(
                    IntentLabel::Alternative,
                    Rule::ParallelClauses,
                    None,
                    evidence,
                );
            }
        }
    }

    // (4) plain interrogative or want-to-know cue
    if questioning {
        evidence.extend(ending_evidence(a));
        return done(IntentLabel::YesNo, Rule::YesNoInterrogative, None, evidence);
    }

    let neg = &a.negation;
    let imperative = ending_kind == Some(EndingKind::Imperative);

    // (5) negated clause + 말고 + positive imperative
    if let (Some(m), true) = (neg.malgo, imperative) {
        let tokens = a.tokens();
        let negated = tokens[m].surface.chars().count() > 2
            || (m > 0
                && tokens[m - 1].surface.chars().count() >= 2
                && tokens[m - 1].surface.ends_with('지'));
        if negated && m < a.predicate {
            evidence.push(Evidence {
                cue: "malgo",
                span: token_span(a, m..m + 1),
            });
            evidence.extend(ending_evidence(a));
            return done(
                IntentLabel::StrongRequirement,
                Rule::MalgoCoordination,
                None,
                evidence,
            );
        }
    }

    // (6) negated conditional + danger predicate
    if let (true, Some(an), Some(cond), Some(danger)) = (
        neg.preverbal_an && neg.conditional_myen && neg.danger_pred,
        neg.preverbal_at,
        neg.conditional_at,
        neg.danger_at,
    ) {
        if an <= cond {
            evidence.push(Evidence {
                cue: "preverbal-negation",
                span: token_span(a, an..an + 1),
            });
            evidence.push(Evidence {
                cue: "conditional",
                span: token_span(a, cond..cond + 1),
            });
            evidence.push(Evidence {
                cue: "danger-predicate",
                span: token_span(a, danger..a.predicate + 1),
            });
            return done(
                IntentLabel::StrongRequirement,
                Rule::DoubleNegation,
                None,
                evidence,
            );
        }
    }

    // (7) prohibition
    if let Some(k) = neg.ci_ma_at {
        let end = (k + 2).min(a.tokens().len());
        evidence.push(Evidence {
            cue: "neg-imperative",
            span: token_span(a, k..end),
        });
        return done(IntentLabel::Prohibition, Rule::Prohibition, None, evidence);
    }
    if let (Some(k), true) = (neg.ci_anh_at, imperative) {
        evidence.push(Evidence {
            cue: "neg-suffix",
            span: token_span(a, k..k + 1),
        });
        evidence.extend(ending_evidence(a));
        return done(IntentLabel::Prohibition, Rule::Prohibition, None, evidence);
    }
    if neg.conditional_myen && neg.danger_pred {
        if let (Some(cond), Some(danger)) = (neg.conditional_at, neg.danger_at) {
            evidence.push(Evidence {
                cue: "conditional",
                span: token_span(a, cond..cond + 1),
            });
            evidence.push(Evidence {
                cue: "danger-predicate",
                span: token_span(a, danger..a.predicate + 1),
            });
            return done(IntentLabel::Prohibition, Rule::Prohibition, None, evidence);
        }
    }

    // (8) plain imperative, request or wish
    if imperative {
        evidence.extend(ending_evidence(a));
        return done(IntentLabel::Requirement, Rule::Requirement, None, evidence);
    }

    Err(ClassifyError::Unclassifiable)
}
