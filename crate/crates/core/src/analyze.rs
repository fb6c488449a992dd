//! Utterance normalization and eojeol-level feature extraction.
//!
//! Input is treated as an ASR transcript: punctuation carries no signal and
//! is removed, and the text is split on whitespace into eojeol. Each eojeol
//! is then split into a content stem and at most one particle or, for the
//! predicate, a sentence-final ending.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::hangul;
use crate::lexicon::{AuxKind, EndingClass, EndingKind, Lexicon, WhKind};

/// Characters stripped from input. Full-width forms are included because
/// they survive NFC.
pub const SENTENCE_PUNCTUATION: [char; 11] =
    ['.', '?', '!', ',', '…', '~', '．', '？', '！', '，', '～'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("utterance is empty")]
    EmptyUtterance,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EojeolFlags {
    pub is_vocative: bool,
    pub is_wh: bool,
    pub is_negator: bool,
}

/// One whitespace-delimited unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eojeol {
    pub surface: String,
    /// Byte offset of `surface` in the normalized text.
    pub offset: usize,
    pub stem: String,
    pub particle: Option<String>,
    pub ending: Option<String>,
    pub flags: EojeolFlags,
}

impl Eojeol {
    fn new(surface: &str, offset: usize) -> Self {
        Self {
            surface: surface.to_string(),
            offset,
            stem: surface.to_string(),
            particle: None,
            ending: None,
            flags: EojeolFlags::default(),
        }
    }

    pub fn span(&self) -> (usize, usize) {
        (self.offset, self.offset + self.surface.len())
    }

    pub fn syllables(&self) -> usize {
        self.surface.chars().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedUtterance {
    pub raw: String,
    pub text: String,
    pub tokens: Vec<Eojeol>,
}

impl NormalizedUtterance {
    pub fn surfaces(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }
}

pub fn normalize(raw: &str) -> Result<NormalizedUtterance, AnalyzeError> {
    let cleaned: String = raw
        .nfc()
        .map(|c| {
            if SENTENCE_PUNCTUATION.contains(&c) {
                ' '
            } else {
                c
            }
        })
        .collect();
    let mut text = String::with_capacity(cleaned.len());
    let mut tokens = Vec::new();
    for piece in cleaned.split_whitespace() {
        if !text.is_empty() {
            text.push(' ');
        }
        tokens.push(Eojeol::new(piece, text.len()));
        text.push_str(piece);
    }
    if tokens.is_empty() {
        return Err(AnalyzeError::EmptyUtterance);
    }
    Ok(NormalizedUtterance {
        raw: raw.to_string(),
        text,
        tokens,
    })
}

/// Splits the longest phonologically valid particle off `token`.
/// Single-syllable eojeol are left alone.
pub fn strip_josa(lex: &Lexicon, token: &Eojeol) -> Eojeol {
    let mut out = token.clone();
    if token.syllables() < 2 {
        return out;
    }
    for p in &lex.particles {
        let Some(stem) = token.surface.strip_suffix(p.surface.as_str()) else {
            continue;
        };
        let Some(last) = stem.chars().last() else {
            continue;
        };
        if p.condition.admits(last) {
            out.stem = stem.to_string();
            out.particle = Some(p.surface.clone());
            return out;
        }
    }
    out
}

/// A sentence-final ending found on a predicate eojeol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingMatch {
    pub kind: EndingKind,
    /// Table surface (`ㅂ니까`, `해`, `궁금`).
    pub surface: String,
    /// Eojeol text before the ending as written.
    pub head: String,
    /// Ending text as written.
    pub tail: String,
    /// Predicate stem with contractions of the ending undone (`말해` -> `말하`).
    pub stem: String,
    pub copula: bool,
    pub embedded: bool,
    pub aux: Option<AuxKind>,
    /// Mood came from tense (아/어, 해), not from the ending itself.
    pub informal: bool,
}

impl EndingMatch {
    /// Past stems carry a coda ㅆ on their last syllable (했, 왔, 먹었).
    pub fn is_past(&self) -> bool {
        is_past_stem(&self.stem)
    }
}

pub fn is_past_stem(stem: &str) -> bool {
    // 있 is existential, not a past marker
    if stem.ends_with('있') {
        return false;
    }
    stem.chars()
        .last()
        .and_then(hangul::tail_of)
        .is_some_and(|t| t == hangul::tail::SSANGSIOS)
}

/// Classifies the final ending of one eojeol by longest match.
pub fn detect_ending(lex: &Lexicon, token: &Eojeol) -> Option<EndingMatch> {
    let surface = token.surface.as_str();
    let mut best: Option<(usize, EndingMatch)> = None;
    for entry in &lex.endings {
        let found = if entry.class == EndingClass::DeclarativeCue {
            // single-piece cues match as a prefix (궁금해, 궁금하다)
            if entry.surface().contains(' ') || !surface.starts_with(entry.surface()) {
                None
            } else {
                Some(EndingMatch {
                    kind: EndingKind::DeclarativeCue,
                    surface: entry.surface().to_string(),
                    head: String::new(),
                    tail: surface.to_string(),
                    stem: String::new(),
                    copula: false,
                    embedded: false,
                    aux: None,
                    informal: false,
                })
            }
        } else {
            let split = entry.pattern.split(surface).or_else(|| {
                // whole-eojeol auxiliaries and light verbs (해, 줘, 바랍니다)
                (surface == entry.surface() && (entry.restore.is_some() || entry.aux.is_some()))
                    .then(|| crate::lexicon::SuffixSplit {
                        head: String::new(),
                        tail: surface.to_string(),
                        stem: String::new(),
                    })
            });
            split.map(|split| {
                let mut stem = split.stem;
                if let Some(restore) = &entry.restore {
                    stem.push_str(restore);
                }
                let kind = match entry.class {
                    EndingClass::Interrogative => EndingKind::Interrogative,
                    EndingClass::Imperative => EndingKind::Imperative,
                    EndingClass::DeclarativeCue => EndingKind::DeclarativeCue,
                    EndingClass::Informal => {
                        if is_past_stem(&stem) {
                            EndingKind::Interrogative
                        } else {
                            EndingKind::Imperative
                        }
                    }
                };
                EndingMatch {
                    kind,
                    surface: entry.surface().to_string(),
                    head: split.head,
                    tail: split.tail,
                    stem,
                    copula: entry.copula,
                    embedded: entry.embedded,
                    aux: entry.aux,
                    informal: entry.class == EndingClass::Informal,
                }
            })
        };
        if let Some(m) = found {
            let weight = entry.pattern.weight();
            if best.as_ref().is_none_or(|(w, _)| weight > *w) {
                best = Some((weight, m));
            }
        }
    }
    best.map(|(_, m)| m)
}

/// Negation and command-structure cues.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NegationProfile {
    /// 안/못 before a predicate (outside the danger predicate).
    pub preverbal_an: bool,
    pub suffix_ci_ma: bool,
    pub suffix_ci_anh: bool,
    /// Index of 말고 (or of an eojeol ending in -지말고).
    pub malgo: Option<usize>,
    pub danger_pred: bool,
    pub conditional_myen: bool,
    /// Eojeol carrying -지 in a -지 마 construction.
    pub ci_ma_at: Option<usize>,
    /// Eojeol carrying -지 in a -지 않 construction.
    pub ci_anh_at: Option<usize>,
    /// Last -면 clause before the danger predicate.
    pub conditional_at: Option<usize>,
    /// First eojeol of the danger predicate.
    pub danger_at: Option<usize>,
    /// Eojeol holding preverbal 안/못 (a standalone 안 or 안매면-style prefix).
    pub preverbal_at: Option<usize>,
}

/// A wh form located in the utterance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhHit {
    pub kind: WhKind,
    /// First eojeol of the form.
    pub start: usize,
    /// Number of eojeol spanned.
    pub len: usize,
    /// Byte span of the matched text in the normalized utterance.
    pub span: (usize, usize),
}

impl WhHit {
    pub fn covers(&self, idx: usize) -> bool {
        (self.start..self.start + self.len).contains(&idx)
    }
}

/// Everything classification and extraction need to know about an utterance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub utterance: NormalizedUtterance,
    /// Index of the final predicate eojeol (a right-dislocated vocative is skipped).
    pub predicate: usize,
    /// Ending of the predicate, with cues and verbs of knowing resolved.
    pub ending: Option<EndingMatch>,
    /// First eojeol of a want-to-know cue (알고 싶어, 궁금해).
    pub cue_at: Option<usize>,
    /// First eojeol of a knowledge wrapper (줄 아니, -지 알아).
    pub know_at: Option<usize>,
    /// First eojeol of an info-seeking verb (말해, 알려줘).
    pub info_at: Option<usize>,
    pub wh: Option<WhHit>,
    pub quantifier: Option<usize>,
    pub negation: NegationProfile,
}

impl Analysis {
    pub fn tokens(&self) -> &[Eojeol] {
        &self.utterance.tokens
    }

    pub fn text(&self) -> &str {
        &self.utterance.text
    }

    /// End (exclusive) of the clause that holds the content of the utterance:
    /// the cue, wrapper or info verb is excluded.
    pub fn content_end(&self) -> usize {
        [self.cue_at, self.know_at, self.info_at]
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(self.predicate + 1)
    }
}

fn vocative_candidate(lex: &Lexicon, token: &Eojeol) -> bool {
    if token.syllables() < 2 {
        return false;
    }
    lex.vocatives.iter().any(|v| {
        token
            .surface
            .strip_suffix(v.surface.as_str())
            .and_then(|stem| stem.chars().last())
            .is_some_and(|last| {
                v.condition.admits(last) && !Lexicon::contains(&lex.bound_nouns, &last.to_string())
            })
    })
}

fn ends_with_ci(s: &str) -> bool {
    s.chars().count() >= 2 && s.ends_with('지')
}

fn split_suffix_any(patterns: &[crate::lexicon::SuffixPattern], s: &str) -> bool {
    patterns.iter().any(|p| p.split(s).is_some())
}

/// Runs normalization and all eojeol-level detectors.
pub fn analyze(lex: &Lexicon, raw: &str) -> Result<Analysis, AnalyzeError> {
    let mut utterance = normalize(raw)?;
    let n = utterance.tokens.len();

    // predicate: the last eojeol, unless it is a vocative dislocated after a
    // finite predicate (어디 있니 로비야)
    let mut predicate = n - 1;
    if n >= 2
        && vocative_candidate(lex, &utterance.tokens[n - 1])
        && detect_ending(lex, &utterance.tokens[n - 2])
            .is_some_and(|m| m.kind != EndingKind::DeclarativeCue)
    {
        utterance.tokens[n - 1].flags.is_vocative = true;
        predicate = n - 2;
    }
    if predicate >= 2 && vocative_candidate(lex, &utterance.tokens[0]) {
        let first = &utterance.tokens[0];
        let is_wh = lex.lookup_wh(&[first.surface.as_str()]).is_some();
        if !is_wh && first.surface != utterance.tokens[predicate].surface {
            utterance.tokens[0].flags.is_vocative = true;
        }
    }

    let surfaces: Vec<String> = utterance.tokens.iter().map(|t| t.surface.clone()).collect();
    let end = predicate + 1;

    // particle stripping for non-predicate eojeol; an eojeol directly before
    // a bound noun is adnominal (하는 거야) and keeps its form
    for i in 0..end {
        let tok = &utterance.tokens[i];
        if i == predicate || tok.flags.is_vocative {
            continue;
        }
        let before_bound = surfaces
            .get(i + 1)
            .and_then(|s| s.chars().next())
            .is_some_and(|c| Lexicon::contains(&lex.bound_nouns, &c.to_string()));
        if before_bound {
            continue;
        }
        utterance.tokens[i] = strip_josa(lex, tok);
    }
    for i in end..n {
        // dislocated vocative
        let tok = &utterance.tokens[i];
        if let Some(v) = lex
            .vocatives
            .iter()
            .find(|v| tok.surface.ends_with(v.surface.as_str()))
        {
            let stem = tok.surface[..tok.surface.len() - v.surface.len()].to_string();
            utterance.tokens[i].stem = stem;
            utterance.tokens[i].particle = Some(v.surface.clone());
        }
    }
    if utterance.tokens[0].flags.is_vocative && predicate != 0 {
        let tok = &utterance.tokens[0];
        if let Some(v) = lex
            .vocatives
            .iter()
            .find(|v| tok.surface.ends_with(v.surface.as_str()))
        {
            let stem = tok.surface[..tok.surface.len() - v.surface.len()].to_string();
            utterance.tokens[0].stem = stem;
            utterance.tokens[0].particle = Some(v.surface.clone());
        }
    }

    // want-to-know cues spanning one or two eojeol
    let mut cue_at = None;
    for entry in lex
        .endings
        .iter()
        .filter(|e| e.class == EndingClass::DeclarativeCue)
    {
        let pieces: Vec<&str> = entry.surface().split(' ').collect();
        let k = pieces.len();
        if k > end {
            continue;
        }
        let start = end - k;
        let phrase_ok = pieces[..k - 1]
            .iter()
            .zip(&surfaces[start..end - 1])
            .all(|(p, s)| p == s)
            && surfaces[end - 1].starts_with(pieces[k - 1]);
        if phrase_ok && cue_at.is_none_or(|c| start < c) {
            cue_at = Some(start);
        }
    }

    let mut info_at = None;
    for phrase in &lex.info_verbs {
        let k = phrase.len();
        if k <= end && phrase.matches_exact(&surfaces[end - k..end]) {
            info_at = Some(end - k);
            break;
        }
    }

    // 뭔 줄 아니, 어딘지 알아, 오는지 아세요
    let mut know_at = None;
    if cue_at.is_none()
        && info_at.is_none()
        && predicate >= 1
        && Lexicon::contains(&lex.know_verbs, &surfaces[predicate])
    {
        let prev = &surfaces[predicate - 1];
        if Lexicon::contains(&lex.bound_nouns, prev) && prev == "줄" {
            know_at = Some(predicate - 1);
        } else if ends_with_ci(prev) || prev.ends_with('지') {
            know_at = Some(predicate);
        }
    }

    let mut ending = if let Some(c) = cue_at {
        Some(EndingMatch {
            kind: EndingKind::DeclarativeCue,
            surface: surfaces[c..end].join(" "),
            head: String::new(),
            tail: surfaces[c..end].join(" "),
            stem: String::new(),
            copula: false,
            embedded: false,
            aux: None,
            informal: false,
        })
    } else {
        detect_ending(lex, &utterance.tokens[predicate])
    };
    if Lexicon::contains(&lex.know_verbs, &surfaces[predicate]) {
        if let Some(m) = ending.as_mut() {
            m.kind = EndingKind::Interrogative;
        }
    }
    if let Some(m) = &ending {
        if cue_at.is_none() {
            let tok = &mut utterance.tokens[predicate];
            tok.stem = m.head.clone();
            tok.ending = Some(m.tail.clone());
        }
    }

    // wh forms, first occurrence wins
    let mut wh = None;
    for i in 0..end {
        if utterance.tokens[i].flags.is_vocative {
            continue;
        }
        if let Some(hit) = lex.lookup_wh(&surfaces[i..end]) {
            let last = &utterance.tokens[i + hit.tokens - 1];
            let start = utterance.tokens[i].offset;
            wh = Some(WhHit {
                kind: hit.kind,
                start: i,
                len: hit.tokens,
                span: (start, last.offset + hit.len),
            });
            for t in &mut utterance.tokens[i..i + hit.tokens] {
                t.flags.is_wh = true;
            }
            break;
        }
    }

    // 언제 출발해: a wh word asks, whatever the tense
    if let (Some(_), Some(m)) = (wh, ending.as_mut()) {
        if m.informal {
            m.kind = EndingKind::Interrogative;
        }
    }

    let quantifier = (0..end).find(|&i| lex.quantifier(&surfaces[i]).is_some());

    let negation = profile_negation_at(lex, &utterance, predicate);
    for idx in [
        negation.malgo,
        negation.ci_ma_at.map(|i| i + 1).filter(|&i| i < n),
        negation.preverbal_at,
    ]
    .into_iter()
    .flatten()
    {
        utterance.tokens[idx].flags.is_negator = true;
    }

    Ok(Analysis {
        utterance,
        predicate,
        ending,
        cue_at,
        know_at,
        info_at,
        wh,
        quantifier,
        negation,
    })
}

/// Negation cues over the whole utterance.
pub fn profile_negation(lex: &Lexicon, u: &NormalizedUtterance) -> NegationProfile {
    profile_negation_at(lex, u, u.tokens.len() - 1)
}

fn profile_negation_at(
    lex: &Lexicon,
    u: &NormalizedUtterance,
    predicate: usize,
) -> NegationProfile {
    let surfaces: Vec<&str> = u.tokens.iter().map(|t| t.surface.as_str()).collect();
    let end = predicate + 1;
    let mut p = NegationProfile::default();

    for phrase in &lex.danger {
        let k = phrase.len();
        if k <= end && phrase.matches_exact(&surfaces[end - k..end]) {
            p.danger_pred = true;
            p.danger_at = Some(end - k);
            break;
        }
    }
    let body_end = p.danger_at.unwrap_or(end);

    for (i, &s) in surfaces.iter().enumerate().take(body_end) {
        let is_neg_word = Lexicon::contains(&lex.neg_preverbal, s);
        if is_neg_word && i + 1 < body_end {
            p.preverbal_an = true;
            p.preverbal_at.get_or_insert(i);
            continue;
        }
        for neg in &lex.neg_preverbal {
            if let Some(rest) = s.strip_prefix(neg.as_str()) {
                if !rest.is_empty() && predicate_like(lex, rest) {
                    p.preverbal_an = true;
                    p.preverbal_at.get_or_insert(i);
                }
            }
        }
    }

    for (i, &s) in surfaces.iter().enumerate().take(body_end) {
        if i < predicate
            && !Lexicon::contains(&lex.disjunctions, s)
            && split_suffix_any(&lex.conditionals, s)
        {
            p.conditional_myen = true;
            p.conditional_at = Some(i);
        }
    }

    for i in 0..end {
        let s = surfaces[i];
        if ends_with_ci(s) {
            if let Some(next) = surfaces.get(i + 1) {
                if Lexicon::contains(&lex.neg_imperative, next) {
                    p.suffix_ci_ma = true;
                    p.ci_ma_at.get_or_insert(i);
                }
                if lex.neg_ci_anh.iter().any(|a| next.starts_with(a.as_str())) {
                    p.suffix_ci_anh = true;
                    p.ci_anh_at.get_or_insert(i);
                }
            }
        }
        if attached_ci_ma(lex, s).is_some() {
            p.suffix_ci_ma = true;
            p.ci_ma_at.get_or_insert(i);
        }
        if attached_ci_anh(lex, s).is_some() {
            p.suffix_ci_anh = true;
            p.ci_anh_at.get_or_insert(i);
        }
        if i + 1 < u.tokens.len() && p.malgo.is_none() {
            let attached = s.chars().count() > 3
                && lex
                    .malgo
                    .iter()
                    .any(|m| s.strip_suffix(m.as_str()).is_some_and(ends_with_ci));
            if Lexicon::contains(&lex.malgo, s) || attached {
                p.malgo = Some(i);
            }
        }
    }
    p
}

/// `가지마` -> byte length of the `가지` part.
pub(crate) fn attached_ci_ma(lex: &Lexicon, s: &str) -> Option<usize> {
    lex.neg_imperative.iter().find_map(|neg| {
        s.strip_suffix(neg.as_str())
            .filter(|head| ends_with_ci(head))
            .map(str::len)
    })
}

/// `늦지않게` -> byte length of the `늦지` part.
pub(crate) fn attached_ci_anh(lex: &Lexicon, s: &str) -> Option<usize> {
    lex.neg_ci_anh.iter().find_map(|anh| {
        let needle = alloc::format!("지{anh}");
        s.find(needle.as_str())
            .filter(|&at| at > 0)
            .map(|at| at + '지'.len_utf8())
    })
}

/// Whether `s` looks like an inflected predicate (carries a connective,
/// conditional or final ending, or -지/-고).
fn predicate_like(lex: &Lexicon, s: &str) -> bool {
    if s.chars().count() < 2 {
        return false;
    }
    split_suffix_any(&lex.conditionals, s)
        || split_suffix_any(&lex.connectives, s)
        || s.ends_with('지')
        || s.ends_with('고')
        || lex
            .endings
            .iter()
            .filter(|e| e.class != EndingClass::DeclarativeCue)
            .any(|e| e.pattern.split(s).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::builtin()
    }

    fn tok(s: &str) -> Eojeol {
        Eojeol::new(s, 0)
    }

    #[test]
    fn normalize_strips_question_mark() {
        let u = normalize("너 의료 봉사 신청 했어?").unwrap();
        assert_eq!(u.text, "너 의료 봉사 신청 했어");
        assert_eq!(u.tokens.len(), 5);
    }

    #[test]
    fn normalize_rejects_blank() {
        assert_eq!(normalize("   "), Err(AnalyzeError::EmptyUtterance));
        assert_eq!(normalize("?!"), Err(AnalyzeError::EmptyUtterance));
    }

    #[test]
    fn normalize_collapses_and_strips() {
        assert_eq!(normalize("지금  팔아!").unwrap().text, "지금 팔아");
        assert_eq!(
            normalize("\t버스로,택시로\n").unwrap().text,
            "버스로 택시로"
        );
    }

    #[test]
    fn normalize_composes_nfd_input() {
        // 한 as conjoining jamo
        let u = normalize("\u{1112}\u{1161}\u{11AB}국").unwrap();
        assert_eq!(u.text, "한국");
    }

    #[test]
    fn token_offsets_point_into_text() {
        let u = normalize("  오늘은   누구  왔니 ").unwrap();
        for t in &u.tokens {
            assert_eq!(&u.text[t.offset..t.offset + t.surface.len()], t.surface);
        }
    }

    #[test]
    fn strip_josa_examples() {
        let lex = lex();
        let t = strip_josa(&lex, &tok("오늘은"));
        assert_eq!(
            (t.stem.as_str(), t.particle.as_deref()),
            ("오늘", Some("은"))
        );
        let t = strip_josa(&lex, &tok("일정을"));
        assert_eq!(
            (t.stem.as_str(), t.particle.as_deref()),
            ("일정", Some("을"))
        );
        let t = strip_josa(&lex, &tok("버스"));
        assert_eq!((t.stem.as_str(), t.particle), ("버스", None));
        let t = strip_josa(&lex, &tok("버스로"));
        assert_eq!(
            (t.stem.as_str(), t.particle.as_deref()),
            ("버스", Some("로"))
        );
    }

    #[test]
    fn strip_josa_respects_batchim_condition() {
        let lex = lex();
        // 아이: 이 needs a batchim on 아
        assert_eq!(strip_josa(&lex, &tok("아이")).particle, None);
        // single syllables are never stripped
        assert_eq!(strip_josa(&lex, &tok("이")).particle, None);
        assert_eq!(strip_josa(&lex, &tok("밖에")).stem, "밖");
    }

    #[test]
    fn detect_ending_examples() {
        let lex = lex();
        let m = detect_ending(&lex, &tok("했어")).unwrap();
        assert_eq!(m.kind, EndingKind::Interrogative);
        assert_eq!(m.surface, "어");
        assert_eq!(m.stem, "했");

        let m = detect_ending(&lex, &tok("바랍니다")).unwrap();
        assert_eq!(m.kind, EndingKind::Imperative);
        assert_eq!(m.aux, Some(AuxKind::Request));

        assert_eq!(detect_ending(&lex, &tok("사과")), None);
    }

    #[test]
    fn detect_ending_longest_match() {
        let lex = lex();
        let m = detect_ending(&lex, &tok("도착이야")).unwrap();
        assert_eq!((m.surface.as_str(), m.stem.as_str()), ("이야", "도착"));
        assert!(m.copula);

        let m = detect_ending(&lex, &tok("먹을래")).unwrap();
        assert_eq!((m.surface.as_str(), m.stem.as_str()), ("을래", "먹"));
        let m = detect_ending(&lex, &tok("마실래")).unwrap();
        assert_eq!((m.surface.as_str(), m.stem.as_str()), ("ㄹ래", "마시"));
        let m = detect_ending(&lex, &tok("합니까")).unwrap();
        assert_eq!((m.surface.as_str(), m.stem.as_str()), ("ㅂ니까", "하"));
    }

    #[test]
    fn informal_ending_mood_follows_tense() {
        let lex = lex();
        assert_eq!(
            detect_ending(&lex, &tok("팔아")).unwrap().kind,
            EndingKind::Imperative
        );
        assert_eq!(
            detect_ending(&lex, &tok("먹었어")).unwrap().kind,
            EndingKind::Interrogative
        );
        let m = detect_ending(&lex, &tok("청소해")).unwrap();
        assert_eq!(
            (m.kind, m.stem.as_str()),
            (EndingKind::Imperative, "청소하")
        );
    }

    #[test]
    fn no_ending_on_negator_or_danger() {
        let lex = lex();
        assert_eq!(detect_ending(&lex, &tok("마")), None);
        assert_eq!(detect_ending(&lex, &tok("큰일나")), None);
    }

    #[test]
    fn negation_profile_prohibition() {
        let lex = lex();
        let u = normalize("태풍 오니까 밖에 나가지 마").unwrap();
        let p = profile_negation(&lex, &u);
        assert!(p.suffix_ci_ma);
        assert_eq!(p.ci_ma_at, Some(3));
        assert!(!p.preverbal_an && !p.danger_pred);
    }

    #[test]
    fn negation_profile_double_negation() {
        let lex = lex();
        let u = normalize("안전띠 안매면 큰일나").unwrap();
        let p = profile_negation(&lex, &u);
        assert!(p.preverbal_an && p.conditional_myen && p.danger_pred);
        assert_eq!(p.preverbal_at, Some(1));
        assert_eq!(p.conditional_at, Some(1));
    }

    #[test]
    fn negation_profile_requirement_is_clean() {
        let lex = lex();
        let u = normalize("인적사항 확인 바랍니다").unwrap();
        assert_eq!(profile_negation(&lex, &u), NegationProfile::default());
    }

    #[test]
    fn malgo_is_located() {
        let lex = lex();
        let u = normalize("욕심부리지 말고 지금 팔아").unwrap();
        assert_eq!(profile_negation(&lex, &u).malgo, Some(1));
        // a trailing 말고 is not a coordination
        let u = normalize("이거 말고").unwrap();
        assert_eq!(profile_negation(&lex, &u).malgo, None);
    }

    #[test]
    fn dislocated_vocative_is_skipped() {
        let lex = lex();
        let a = analyze(&lex, "어디 있니 로비야").unwrap();
        assert_eq!(a.predicate, 1);
        assert!(a.tokens()[2].flags.is_vocative);
        assert_eq!(a.tokens()[2].stem, "로비");
        assert_eq!(a.wh.unwrap().kind, WhKind::Where);
    }

    #[test]
    fn multi_token_wh_span() {
        let lex = lex();
        let a = analyze(&lex, "대구 몇 시에 도착이야").unwrap();
        let wh = a.wh.unwrap();
        assert_eq!((wh.kind, wh.start, wh.len), (WhKind::When, 1, 2));
        assert_eq!(&a.text()[wh.span.0..wh.span.1], "몇 시");
    }

    #[test]
    fn adnominal_before_bound_noun_is_kept() {
        let lex = lex();
        let a = analyze(&lex, "해외 송금 어떻게 하는 거야").unwrap();
        assert_eq!(a.tokens()[3].particle, None);
        assert_eq!(a.tokens()[4].ending.as_deref(), Some("야"));
    }

    #[test]
    fn reconstruction_holds_for_examples() {
        let lex = lex();
        for s in [
            "오늘은 누구 왔니",
            "스톡옵션이 뭔 줄 아니",
            "버스로 올거야 택시로 올거야",
        ] {
            let a = analyze(&lex, s).unwrap();
            for t in a.tokens() {
                let mut rebuilt = t.stem.clone();
                if let Some(p) = &t.particle {
                    rebuilt.push_str(p);
                }
                if let Some(e) = &t.ending {
                    rebuilt.push_str(e);
                }
                assert_eq!(rebuilt, t.surface);
            }
        }
    }

    #[test]
    fn wh_word_makes_informal_ending_ask() {
        let lex = Lexicon::builtin();
        let a = analyze(&lex, "언제 출발해").unwrap();
        assert_eq!(a.ending.unwrap().kind, EndingKind::Interrogative);
        let a = analyze(&lex, "빨리 출발해").unwrap();
        assert_eq!(a.ending.unwrap().kind, EndingKind::Imperative);
    }
}
