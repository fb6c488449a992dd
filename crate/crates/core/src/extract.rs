//! Argument extraction: turns a classified utterance into a nominalized
//! phrase.
//!
//! | label            | shape                         |
//! |------------------|-------------------------------|
//! | yes/no           | `content 여부`, `…는지 여부`   |
//! | alternative      | `A B 중 올 것`                |
//! | wh               | `content 온 사람`             |
//! | prohibition      | `밖에 나가지 않기`            |
//! | (strong) requirement | `지금 팔기`, `확인하기`   |
//!
//! Extraction is purely extractive: every content word comes from the
//! input, only the nominalizing material is added.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use thiserror::Error;

use crate::analyze::{detect_ending, is_past_stem, Analysis, EndingMatch};
use crate::classify::{alternative_segments, Classification, IntentLabel, Rule};
use crate::hangul::{self, tail};
use crate::lexicon::{ArgumentCategory, AuxKind, EndingClass, Lexicon, WhKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("no content left to extract")]
    ExtractionFailed,
    #[error("could not align the options of an alternative question")]
    OptionsNotFound,
    #[error("no contraction rule for `{0}`")]
    UnsupportedContraction(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    pub text: String,
    pub category: ArgumentCategory,
    pub source_label: IntentLabel,
    /// Set when a past stem had no contraction rule and `은` was attached
    /// to the raw stem instead.
    pub fallback_adnominal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tense {
    Past,
    NonPast,
}

/// Category an intent label nominalizes to.
pub fn category_for(label: IntentLabel, wh: Option<WhKind>) -> ArgumentCategory {
    match label {
        IntentLabel::YesNo => ArgumentCategory::Whether,
        IntentLabel::Alternative => ArgumentCategory::Choice,
        IntentLabel::Wh => ArgumentCategory::from_wh(wh.unwrap_or(WhKind::What)),
        IntentLabel::Prohibition => ArgumentCategory::Prohibition,
        IntentLabel::Requirement | IntentLabel::StrongRequirement => ArgumentCategory::Requirement,
    }
}

// --- morphology -------------------------------------------------------

fn last_char(s: &str) -> Option<char> {
    s.chars().last()
}

fn replace_last(s: &str, c: char) -> String {
    let mut out: String = s
        .chars()
        .take(s.chars().count().saturating_sub(1))
        .collect();
    out.push(c);
    out
}

fn drop_last(s: &str) -> &str {
    match s.char_indices().last() {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

/// Undoes the past-tense contraction on the last syllable: `왔` -> `오`,
/// `먹었` -> `먹`. `None` if the stem is not past or has no rule.
pub fn uncontract(lex: &Lexicon, stem: &str) -> Option<String> {
    let last = last_char(stem)?;
    if hangul::tail_of(last) != Some(tail::SSANGSIOS) {
        return None;
    }
    let head = drop_last(stem);
    if matches!(last, '었' | '았' | '였') && !head.is_empty() {
        return Some(head.to_string());
    }
    lex.contraction(last).map(|to| {
        let mut out = head.to_string();
        out.push_str(to);
        out
    })
}

/// Attaches the past adnominal ㄴ/은.
fn attach_n(stem: &str) -> String {
    match last_char(stem).and_then(|c| hangul::decompose(c).ok()) {
        Some(j) if j.tail == tail::NONE || j.tail == tail::RIEUL => {
            let c = hangul::compose(j.with_tail(tail::NIEUN)).unwrap_or('은');
            replace_last(stem, c)
        }
        _ => {
            let mut out = stem.to_string();
            out.push('은');
            out
        }
    }
}

/// Future adnominal ㄹ/을 (`오` -> `올`, `먹` -> `먹을`).
pub fn adnominal_future(stem: &str) -> String {
    match last_char(stem).and_then(|c| hangul::decompose(c).ok()) {
        Some(j) if j.tail == tail::NONE => {
            let c = hangul::compose(j.with_tail(tail::RIEUL)).unwrap_or('을');
            replace_last(stem, c)
        }
        Some(j) if j.tail == tail::RIEUL => stem.to_string(),
        _ => {
            let mut out = stem.to_string();
            out.push('을');
            out
        }
    }
}

/// ㄹ-final stems lose the ㄹ before 는 (`살` -> `사는`).
fn drop_rieul(stem: &str) -> String {
    match last_char(stem) {
        Some(c) if hangul::tail_of(c) == Some(tail::RIEUL) => {
            replace_last(stem, hangul::replace_tail(c, tail::NONE))
        }
        _ => stem.to_string(),
    }
}

/// Adnominal form of a predicate stem.
///
/// Past stems arrive contracted (`왔`, `먹었`); the contraction is undone
/// before ㄴ/은 is attached.
pub fn adnominalize(lex: &Lexicon, stem: &str, tense: Tense) -> Result<String, ExtractError> {
    match tense {
        Tense::Past => {
            let base = if is_past_stem(stem) {
                uncontract(lex, stem)
                    .ok_or_else(|| ExtractError::UnsupportedContraction(stem.to_string()))?
            } else {
                stem.to_string()
            };
            Ok(attach_n(&base))
        }
        Tense::NonPast => {
            let mut out = drop_rieul(stem);
            out.push('는');
            Ok(out)
        }
    }
}

fn neunji(stem: &str) -> String {
    let mut out = if is_past_stem(stem) {
        stem.to_string()
    } else {
        drop_rieul(stem)
    };
    out.push_str("는지");
    out
}

fn is_light_verb(lex: &Lexicon, lemma: &str) -> bool {
    Lexicon::contains(&lex.light_verbs, lemma)
}

/// `공부하` -> `Some("공부")`.
fn verbal_noun_of<'a>(lex: &Lexicon, lemma: &'a str) -> Option<&'a str> {
    lex.light_verbs.iter().find_map(|lv| {
        lemma
            .strip_suffix(lv.as_str())
            .filter(|head| !head.is_empty())
    })
}

fn lemma_of(lex: &Lexicon, stem: &str) -> String {
    uncontract(lex, stem).unwrap_or_else(|| stem.to_string())
}

/// Stem of a -면 clause (`안매면` with `strip_neg` -> `매`).
fn conditional_stem(lex: &Lexicon, surface: &str, strip_neg: bool) -> Option<String> {
    let head = lex
        .conditionals
        .iter()
        .filter_map(|p| p.split(surface).map(|s| (p.weight(), s.stem)))
        .max_by_key(|(w, _)| *w)
        .map(|(_, s)| s)?;
    let mut head = head.as_str();
    if strip_neg {
        for neg in &lex.neg_preverbal {
            if let Some(rest) = head.strip_prefix(neg.as_str()) {
                if !rest.is_empty() {
                    head = rest;
                    break;
                }
            }
        }
    }
    Some(lemma_of(lex, head))
}

/// Stem of a -지 eojeol (`나가지` -> `나가`).
fn ci_stem(s: &str) -> Option<&str> {
    s.strip_suffix('지').filter(|h| !h.is_empty())
}

// --- content selection --------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Question,
    Command,
}

/// Content words of `range`, functional material removed.
fn content(lex: &Lexicon, a: &Analysis, range: Range<usize>, mode: Mode) -> Vec<String> {
    let tokens = a.tokens();
    let mut out = Vec::new();
    let mut skip_next = false;
    for i in range.clone() {
        if skip_next {
            skip_next = false;
            continue;
        }
        let t = &tokens[i];
        let s = t.surface.as_str();
        if t.flags.is_vocative || t.flags.is_wh || t.flags.is_negator {
            continue;
        }
        if Lexicon::contains(&lex.pronouns, s)
            || Lexicon::contains(&lex.pronouns, &t.stem)
            || Lexicon::contains(&lex.fillers, s)
            || Lexicon::contains(&lex.disjunctions, s)
            || Lexicon::contains(&lex.malgo, s)
            || Lexicon::contains(&lex.neg_preverbal, s)
            || lex.quantifier(s).is_some()
            || lex.is_ending_surface(s)
            || lex.is_ending_surface(&t.stem)
        {
            continue;
        }
        match mode {
            Mode::Question => {
                if Lexicon::contains(&lex.context_adverbs, s) {
                    continue;
                }
                if Lexicon::contains(&lex.demonstratives, s) {
                    // a deictic noun phrase has no recoverable referent
                    skip_next = i + 1 < range.end;
                    continue;
                }
                out.push(t.stem.clone());
            }
            Mode::Command => {
                let mut word = t.stem.clone();
                if let Some(p) = &t.particle {
                    let keep = lex.particle(p).is_some_and(|p| !p.droppable);
                    if keep {
                        word.push_str(p);
                    }
                }
                out.push(word);
            }
        }
    }
    out
}

fn join(pieces: &[String]) -> String {
    pieces.join(" ")
}

// --- question predicates ----------------------------------------------

/// How the predicate of a question clause surfaces in the argument.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Predicate {
    /// The wh word itself is predicative (뭐야, 뭔 줄 아니).
    WhFinal,
    /// Noun + copula (도착이야).
    Nominal(String),
    /// Already adnominal before a bound noun (하는 거야, 올거야).
    Adnominal(String),
    /// Verb or adjective stem, possibly past (왔, 있, 막히).
    Verbal(String),
    /// Embedded question (오는지); keeps its surface in yes/no arguments.
    Embedded { surface: String, stem: String },
    /// Nothing recognisable; the eojeol is used as is.
    Bare(String),
}

/// Whether `c` closes an adnominal form (올, 온, 하는, 먹을).
fn is_adnominal_final(c: char) -> bool {
    matches!(c, '는' | '은' | '을')
        || matches!(hangul::tail_of(c), Some(t) if t == tail::NIEUN || t == tail::RIEUL)
}

/// Resolves the predicate ending at `p` into a `Predicate` and the index
/// where content stops.
fn question_predicate(lex: &Lexicon, a: &Analysis, p: usize) -> (Predicate, usize) {
    let tokens = a.tokens();
    let t = &tokens[p];
    if t.flags.is_wh {
        let start = a.wh.map(|w| w.start).unwrap_or(p);
        return (Predicate::WhFinal, start.min(p));
    }
    let m: Option<EndingMatch> = if p == a.predicate && a.cue_at.is_none() {
        a.ending.clone()
    } else {
        detect_ending(lex, t)
    };
    let Some(m) = m else {
        return (Predicate::Bare(t.stem.clone()), p);
    };
    if m.kind == crate::lexicon::EndingKind::DeclarativeCue {
        return (Predicate::Bare(t.surface.clone()), p);
    }

    // bound-noun constructions: 올거야, 하는 거야
    let stem = m.stem.as_str();
    if let Some(bound) = lex
        .bound_nouns
        .iter()
        .find(|b| stem.ends_with(b.as_str()) && b.as_str() != "줄" && b.as_str() != "수")
    {
        let head = &stem[..stem.len() - bound.len()];
        match last_char(head) {
            Some(c) if is_adnominal_final(c) => {
                return (Predicate::Adnominal(head.to_string()), p);
            }
            None if p >= 1 => {
                let prev = &tokens[p - 1];
                if last_char(&prev.surface).is_some_and(is_adnominal_final) && !prev.flags.is_wh {
                    return (Predicate::Adnominal(prev.surface.clone()), p - 1);
                }
            }
            _ => {}
        }
    }
    if m.embedded {
        if m.copula {
            return (Predicate::Nominal(m.stem), p);
        }
        return (
            Predicate::Embedded {
                surface: t.surface.clone(),
                stem: m.stem,
            },
            p,
        );
    }
    if m.copula {
        return (Predicate::Nominal(m.stem), p);
    }
    if m.stem.is_empty() {
        return (Predicate::Bare(t.surface.clone()), p);
    }
    (Predicate::Verbal(m.stem), p)
}

/// Index of the last eojeol of the question clause.
fn clause_predicate(a: &Analysis) -> Option<usize> {
    let end = a.content_end();
    if end == a.predicate + 1 {
        Some(a.predicate)
    } else {
        end.checked_sub(1)
    }
}

fn clause_start(a: &Analysis) -> usize {
    a.negation.malgo.map_or(0, |m| m + 1)
}

// --- per-label extraction ----------------------------------------------

pub fn extract_yesno(lex: &Lexicon, a: &Analysis) -> Result<Argument, ExtractError> {
    let start = clause_start(a);
    let p = clause_predicate(a).filter(|&p| p >= start);
    let mut pieces = Vec::new();
    if let Some(p) = p {
        let (pred, content_end) = question_predicate(lex, a, p);
        pieces = content(lex, a, start..content_end, Mode::Question);
        match pred {
            Predicate::Verbal(stem) => {
                let lemma = lemma_of(lex, &stem);
                if is_light_verb(lex, &lemma) && !pieces.is_empty() {
                    // 신청 했어 -> 신청
                } else if let Some(noun) = verbal_noun_of(lex, &lemma) {
                    pieces.push(noun.to_string());
                } else {
                    pieces.push(neunji(&stem));
                }
            }
            Predicate::Nominal(stem) => {
                let mut word = stem;
                word.push_str("인지");
                pieces.push(word);
            }
            Predicate::Adnominal(form) => {
                pieces.push(form);
                pieces.push("건지".to_string());
            }
            Predicate::Embedded { surface, .. } => pieces.push(surface),
            Predicate::Bare(word) => {
                if !lex.is_ending_surface(&word) {
                    pieces.push(word);
                }
            }
            Predicate::WhFinal => {}
        }
    }
    if pieces.is_empty() {
        return Err(ExtractError::ExtractionFailed);
    }
    pieces.push("여부".to_string());
    Ok(Argument {
        text: join(&pieces),
        category: ArgumentCategory::Whether,
        source_label: IntentLabel::YesNo,
        fallback_adnominal: false,
    })
}

pub fn extract_alternative(lex: &Lexicon, a: &Analysis) -> Result<Argument, ExtractError> {
    let segments = alternative_segments(lex, a).ok_or(ExtractError::OptionsNotFound)?;
    let options: Vec<String> = segments
        .into_iter()
        .map(|s| join(&content(lex, a, s, Mode::Question)))
        .filter(|o| !o.is_empty())
        .collect();
    if options.len() < 2 {
        return Err(ExtractError::OptionsNotFound);
    }
    let (pred, _) = question_predicate(lex, a, a.predicate);
    let mut fallback = false;
    let verb = match pred {
        Predicate::Adnominal(form) => form,
        Predicate::Verbal(stem) | Predicate::Embedded { stem, .. } => {
            if is_past_stem(&stem) {
                adnominalize(lex, &stem, Tense::Past).unwrap_or_else(|_| {
                    fallback = true;
                    let mut s = stem.clone();
                    s.push('은');
                    s
                })
            } else {
                adnominal_future(&stem)
            }
        }
        // no verb to reuse: the template's generic 할
        _ => "할".to_string(),
    };
    let mut text = options.join(" ");
    text.push_str(" 중 ");
    text.push_str(&verb);
    text.push_str(" 것");
    Ok(Argument {
        text,
        category: ArgumentCategory::Choice,
        source_label: IntentLabel::Alternative,
        fallback_adnominal: fallback,
    })
}

pub fn extract_wh(lex: &Lexicon, a: &Analysis, kind: WhKind) -> Result<Argument, ExtractError> {
    let noun = lex.wh_category(kind).primary().to_string();
    let start = clause_start(a);
    let mut fallback = false;

    // info-seeking with a quantifier: 일정을 모두 말해 -> 모든 일정
    if let (Some(info), None) = (a.info_at, a.wh.filter(|w| Some(w.start) < a.info_at)) {
        let q = a.quantifier.filter(|&q| q < info);
        let mut pieces = content(lex, a, start..info, Mode::Question);
        if let Some(det) = q.and_then(|q| lex.quantifier(&a.tokens()[q].surface)) {
            if pieces.is_empty() {
                return Err(ExtractError::ExtractionFailed);
            }
            let head = pieces.len() - 1;
            pieces.insert(head, det.to_string());
        }
        if pieces.is_empty() {
            return Err(ExtractError::ExtractionFailed);
        }
        return Ok(Argument {
            text: join(&pieces),
            category: ArgumentCategory::from_wh(kind),
            source_label: IntentLabel::Wh,
            fallback_adnominal: false,
        });
    }

    let p = clause_predicate(a)
        .filter(|&p| p >= start)
        .ok_or(ExtractError::ExtractionFailed)?;
    let (pred, content_end) = question_predicate(lex, a, p);
    let mut pieces = content(lex, a, start..content_end, Mode::Question);
    let drops_light_verb = matches!(kind, WhKind::How | WhKind::When);
    match pred {
        Predicate::WhFinal => {}
        Predicate::Nominal(stem) | Predicate::Bare(stem) => {
            if !stem.is_empty() && !lex.is_ending_surface(&stem) {
                pieces.push(stem);
            }
        }
        Predicate::Verbal(stem) | Predicate::Embedded { stem, .. } => {
            let lemma = lemma_of(lex, &stem);
            let noun_of = verbal_noun_of(lex, &lemma);
            if drops_light_verb && is_light_verb(lex, &lemma) && !pieces.is_empty() {
                // 송금 어떻게 해 -> 송금 방법
            } else if let (true, Some(vn)) = (drops_light_verb, noun_of) {
                pieces.push(vn.to_string());
            } else {
                let tense = if is_past_stem(&stem) {
                    Tense::Past
                } else {
                    Tense::NonPast
                };
                let adn = adnominalize(lex, &stem, tense).unwrap_or_else(|_| {
                    fallback = true;
                    let mut s = stem.clone();
                    s.push('은');
                    s
                });
                pieces.push(adn);
            }
        }
        Predicate::Adnominal(form) => {
            let light = drop_last(&form);
            let light_form = form.starts_with('하') && (light.is_empty() || light == "하");
            if !(drops_light_verb && light_form && !pieces.is_empty()) {
                pieces.push(form);
            }
        }
    }
    pieces.push(noun);
    Ok(Argument {
        text: join(&pieces),
        category: ArgumentCategory::from_wh(kind),
        source_label: IntentLabel::Wh,
        fallback_adnominal: fallback,
    })
}

/// `-기` nominalization of the required action ending at `p`.
fn requirement(
    lex: &Lexicon,
    a: &Analysis,
    start: usize,
    p: usize,
) -> Result<Vec<String>, ExtractError> {
    if p < start {
        return Err(ExtractError::ExtractionFailed);
    }
    let tokens = a.tokens();
    let m = if p == a.predicate {
        a.ending.clone()
    } else {
        detect_ending(lex, &tokens[p])
    };
    let m = m.ok_or(ExtractError::ExtractionFailed)?;

    let verb_noun = |noun: &str| {
        let mut s = noun.to_string();
        s.push_str("하기");
        s
    };
    let nominalize = |stem: &str| {
        let mut s = stem.to_string();
        s.push('기');
        s
    };

    match m.aux {
        Some(aux) if m.head.is_empty() => {
            // 확인 바랍니다, 열어 줘, 왔으면 좋겠어
            if p == start {
                return Err(ExtractError::ExtractionFailed);
            }
            let prev = &tokens[p - 1];
            let mut pieces = content(lex, a, start..p - 1, Mode::Command);
            let prev_ending = detect_ending(lex, prev);
            if aux == AuxKind::Wish {
                if let Some(stem) = conditional_stem(lex, &prev.surface, false) {
                    pieces.push(nominalize(&stem));
                    return Ok(pieces);
                }
            }
            match prev_ending {
                Some(pm) if informal_form(lex, &pm) => {
                    let lemma = lemma_of(lex, &pm.stem);
                    push_action(lex, &mut pieces, &lemma);
                }
                _ if aux == AuxKind::Benefactive => {
                    // 차 줘: 주 is the main verb
                    let mut pieces = content(lex, a, start..p, Mode::Command);
                    pieces.push(nominalize("주"));
                    return Ok(pieces);
                }
                _ => {
                    if lex.is_ending_surface(&prev.stem) {
                        return Err(ExtractError::ExtractionFailed);
                    }
                    pieces.push(verb_noun(&prev.stem));
                }
            }
            Ok(pieces)
        }
        Some(aux) => {
            // 확인바랍니다, 열어줘
            let mut pieces = content(lex, a, start..p, Mode::Command);
            let head_token = crate::analyze::Eojeol {
                surface: m.head.clone(),
                offset: 0,
                stem: m.head.clone(),
                particle: None,
                ending: None,
                flags: Default::default(),
            };
            match (aux, detect_ending(lex, &head_token)) {
                (AuxKind::Benefactive, Some(hm)) if informal_form(lex, &hm) => {
                    push_action(lex, &mut pieces, &lemma_of(lex, &hm.stem));
                }
                (AuxKind::Benefactive, _) => push_action(lex, &mut pieces, &m.stem),
                _ => pieces.push(verb_noun(&m.head)),
            }
            Ok(pieces)
        }
        None => {
            let mut pieces = content(lex, a, start..p, Mode::Command);
            if m.stem.is_empty() {
                return Err(ExtractError::ExtractionFailed);
            }
            push_action(lex, &mut pieces, &m.stem);
            Ok(pieces)
        }
    }
}

/// Whether an ending is the -아/어 connective form a benefactive attaches to.
fn informal_form(lex: &Lexicon, m: &EndingMatch) -> bool {
    lex.endings
        .iter()
        .any(|e| e.surface() == m.surface && e.class == EndingClass::Informal)
}

/// Appends `lemma` + 기, joining a bare light verb onto the preceding noun.
fn push_action(lex: &Lexicon, pieces: &mut Vec<String>, lemma: &str) {
    if is_light_verb(lex, lemma) {
        if let Some(last) = pieces.last_mut() {
            last.push_str(lemma);
            last.push('기');
            return;
        }
    }
    let mut s = lemma.to_string();
    s.push('기');
    pieces.push(s);
}

pub fn extract_command(
    lex: &Lexicon,
    a: &Analysis,
    c: &Classification,
) -> Result<Argument, ExtractError> {
    let neg = &a.negation;
    let tokens = a.tokens();
    // background clauses (…니까, …는데) before `until` are not part of the action
    let action_start = |until: usize| {
        let base = clause_start(a);
        let mut start = base;
        for (i, t) in tokens.iter().enumerate().take(until).skip(base) {
            let s = t.surface.as_str();
            if lex.connectives.iter().any(|p| p.split(s).is_some()) {
                start = i + 1;
            }
        }
        start
    };

    let (pieces, category) = match c.label {
        IntentLabel::Prohibition => {
            let (at, stem) = if let Some(k) = neg.ci_ma_at.or(neg.ci_anh_at) {
                let s = tokens[k].surface.as_str();
                let head = crate::analyze::attached_ci_ma(lex, s)
                    .or_else(|| crate::analyze::attached_ci_anh(lex, s))
                    .map_or(s, |len| &s[..len]);
                let stem = ci_stem(head).ok_or(ExtractError::ExtractionFailed)?;
                (k, stem.to_string())
            } else if let Some(cond) = neg.conditional_at {
                let stem = conditional_stem(lex, &tokens[cond].surface, false)
                    .ok_or(ExtractError::ExtractionFailed)?;
                (cond, stem)
            } else {
                return Err(ExtractError::ExtractionFailed);
            };
            let mut pieces = content(lex, a, action_start(at)..at, Mode::Command);
            let mut word = stem;
            word.push_str("지 않기");
            pieces.push(word);
            (pieces, ArgumentCategory::Prohibition)
        }
        IntentLabel::StrongRequirement if c.rule == Rule::DoubleNegation => {
            let cond = neg.conditional_at.ok_or(ExtractError::ExtractionFailed)?;
            let strip = neg.preverbal_at == Some(cond);
            let stem = conditional_stem(lex, &tokens[cond].surface, strip)
                .ok_or(ExtractError::ExtractionFailed)?;
            let mut pieces = content(lex, a, action_start(cond)..cond, Mode::Command);
            push_action(lex, &mut pieces, &stem);
            (pieces, ArgumentCategory::Requirement)
        }
        IntentLabel::Requirement | IntentLabel::StrongRequirement => {
            let p = a.predicate;
            let pieces = requirement(lex, a, action_start(p), p)?;
            (pieces, ArgumentCategory::Requirement)
        }
        _ => return Err(ExtractError::ExtractionFailed),
    };
    if pieces.is_empty() {
        return Err(ExtractError::ExtractionFailed);
    }
    Ok(Argument {
        text: join(&pieces),
        category,
        source_label: c.label,
        fallback_adnominal: false,
    })
}

/// Dispatches on the label.
pub fn extract(lex: &Lexicon, a: &Analysis, c: &Classification) -> Result<Argument, ExtractError> {
    match c.label {
        IntentLabel::YesNo => extract_yesno(lex, a),
        IntentLabel::Alternative => extract_alternative(lex, a),
        IntentLabel::Wh => extract_wh(lex, a, c.wh.unwrap_or(WhKind::What)),
        IntentLabel::Prohibition | IntentLabel::Requirement | IntentLabel::StrongRequirement => {
            extract_command(lex, a, c)
        }
    }
}

/// A violated argument invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractViolation {
    CategoryMismatch,
    BadSuffix,
    EndingLeak(String),
}

/// Checks the suffix-by-category contract and the no-ending-leak rule.
///
/// Wh arguments produced from a quantified info-seeking request
/// (`이번 주 모든 일정`) are headed by the requested noun rather than a
/// replacement noun; pass `quantified` for those.
pub fn check_contract(
    lex: &Lexicon,
    arg: &Argument,
    quantified: bool,
) -> Result<(), ContractViolation> {
    if category_for(arg.source_label, arg.category.wh_kind()) != arg.category {
        return Err(ContractViolation::CategoryMismatch);
    }
    let text = arg.text.as_str();
    let last = text.split(' ').next_back().unwrap_or("");
    let ok = match arg.category {
        ArgumentCategory::Prohibition => text.ends_with("지 않기"),
        ArgumentCategory::Requirement => text.ends_with('기'),
        ArgumentCategory::Whether => last == "여부" || text.ends_with('지'),
        ArgumentCategory::Choice => text.split(' ').any(|w| w == "중") && last == "것",
        _ => quantified || lex.is_wh_noun(last),
    };
    if !ok {
        return Err(ContractViolation::BadSuffix);
    }
    if let Some(w) = text.split(' ').find(|w| lex.is_ending_surface(w)) {
        return Err(ContractViolation::EndingLeak(w.to_string()));
    }
    Ok(())
}
