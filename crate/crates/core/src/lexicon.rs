//! Correspondence tables: particles, endings, negation cues, wh forms and
//! their replacement nouns.
//!
//! The tables are loaded from a line-oriented UTF-8 file
//! (`role<TAB>surface<TAB>attributes`). The built-in copy lives in
//! `data/lexicon.tsv` and is compiled into the crate.

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::hangul;

pub const BUILTIN_LEXICON: &str = include_str!("../data/lexicon.tsv");

/// Interrogative families, in the order the replacement-noun table lists them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WhKind {
    Who,
    What,
    Where,
    When,
    Why,
    How,
}

impl WhKind {
    pub const ALL: [WhKind; 6] = [
        WhKind::Who,
        WhKind::What,
        WhKind::Where,
        WhKind::When,
        WhKind::Why,
        WhKind::How,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WhKind::Who => "who",
            WhKind::What => "what",
            WhKind::Where => "where",
            WhKind::When => "when",
            WhKind::Why => "why",
            WhKind::How => "how",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        WhKind::ALL.into_iter().find(|k| k.name() == s)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for WhKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A wh family with its replacement nouns, primary noun first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhCategory {
    pub kind: WhKind,
    pub nouns: Vec<String>,
}

impl WhCategory {
    pub fn primary(&self) -> &str {
        &self.nouns[0]
    }
}

/// What an extracted argument nominalizes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArgumentCategory {
    Whether,
    Choice,
    Person,
    Meaning,
    Location,
    Time,
    Reason,
    Method,
    Prohibition,
    Requirement,
}

impl ArgumentCategory {
    pub const ALL: [ArgumentCategory; 10] = [
        ArgumentCategory::Whether,
        ArgumentCategory::Choice,
        ArgumentCategory::Person,
        ArgumentCategory::Meaning,
        ArgumentCategory::Location,
        ArgumentCategory::Time,
        ArgumentCategory::Reason,
        ArgumentCategory::Method,
        ArgumentCategory::Prohibition,
        ArgumentCategory::Requirement,
    ];

    /// Korean tag as used in annotated gold data.
    pub fn tag(self) -> &'static str {
        match self {
            ArgumentCategory::Whether => "여부",
            ArgumentCategory::Choice => "선택",
            ArgumentCategory::Person => "사람",
            ArgumentCategory::Meaning => "의미",
            ArgumentCategory::Location => "위치",
            ArgumentCategory::Time => "시간",
            ArgumentCategory::Reason => "이유",
            ArgumentCategory::Method => "방법",
            ArgumentCategory::Prohibition => "금지",
            ArgumentCategory::Requirement => "요구",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        ArgumentCategory::ALL.into_iter().find(|c| c.tag() == tag)
    }

    pub fn from_wh(kind: WhKind) -> Self {
        match kind {
            WhKind::Who => ArgumentCategory::Person,
            WhKind::What => ArgumentCategory::Meaning,
            WhKind::Where => ArgumentCategory::Location,
            WhKind::When => ArgumentCategory::Time,
            WhKind::Why => ArgumentCategory::Reason,
            WhKind::How => ArgumentCategory::Method,
        }
    }

    pub fn wh_kind(self) -> Option<WhKind> {
        match self {
            ArgumentCategory::Person => Some(WhKind::Who),
            ArgumentCategory::Meaning => Some(WhKind::What),
            ArgumentCategory::Location => Some(WhKind::Where),
            ArgumentCategory::Time => Some(WhKind::When),
            ArgumentCategory::Reason => Some(WhKind::Why),
            ArgumentCategory::Method => Some(WhKind::How),
            _ => None,
        }
    }

    pub fn is_command(self) -> bool {
        matches!(
            self,
            ArgumentCategory::Prohibition | ArgumentCategory::Requirement
        )
    }
}

impl fmt::Display for ArgumentCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Phonological condition on the syllable a particle attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchimCondition {
    Batchim,
    Open,
    OpenOrRieul,
    BatchimNotRieul,
    Any,
}

impl BatchimCondition {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "batchim" => BatchimCondition::Batchim,
            "open" => BatchimCondition::Open,
            "open_or_rieul" => BatchimCondition::OpenOrRieul,
            "batchim_not_rieul" => BatchimCondition::BatchimNotRieul,
            "any" => BatchimCondition::Any,
            _ => return None,
        })
    }

    /// Whether a particle with this condition may follow `stem_final`.
    /// Non-Hangul finals satisfy only `Any`.
    pub fn admits(self, stem_final: char) -> bool {
        if self == BatchimCondition::Any {
            return true;
        }
        let Some(tail) = hangul::tail_of(stem_final) else {
            return false;
        };
        match self {
            BatchimCondition::Batchim => tail != hangul::tail::NONE,
            BatchimCondition::Open => tail == hangul::tail::NONE,
            BatchimCondition::OpenOrRieul => {
                tail == hangul::tail::NONE || tail == hangul::tail::RIEUL
            }
            BatchimCondition::BatchimNotRieul => {
                tail != hangul::tail::NONE && tail != hangul::tail::RIEUL
            }
            BatchimCondition::Any => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Particle {
    pub surface: String,
    pub condition: BatchimCondition,
    /// Plain case markers (은/는, 이/가, 을/를) that command extraction drops.
    pub droppable: bool,
}

/// Ending classes as tabulated. `Informal` (반말 아/어) is resolved to a
/// mood by the analyzer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndingClass {
    Interrogative,
    Imperative,
    DeclarativeCue,
    Informal,
}

/// Sentence mood signalled by a final ending.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndingKind {
    Interrogative,
    Imperative,
    DeclarativeCue,
}

impl EndingKind {
    pub fn name(self) -> &'static str {
        match self {
            EndingKind::Interrogative => "interrogative",
            EndingKind::Imperative => "imperative",
            EndingKind::DeclarativeCue => "declarative-cue",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    /// 바랍니다, 부탁해: the action is the preceding (verbal) noun.
    Request,
    /// 줘, 주세요: attached to a preceding -아/어 verb.
    Benefactive,
    /// 좋겠어: attached to a preceding -면 clause.
    Wish,
}

/// A suffix whose first element may be a bare coda consonant, e.g. `ㅂ니까`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixPattern {
    pub surface: String,
    coda: Option<u8>,
    rest: Vec<char>,
}

/// Result of splitting a suffix off an eojeol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixSplit {
    /// Characters before the suffix as written (`합니까` -> `합`).
    pub head: String,
    /// The suffix as written (`합니까` -> `니까`).
    pub tail: String,
    /// Head with a coda-initial suffix's consonant removed (`합` -> `하`).
    pub stem: String,
}

impl SuffixPattern {
    pub fn new(surface: &str) -> Option<Self> {
        let mut chars = surface.chars();
        let first = chars.next()?;
        if hangul::is_compat_consonant(first) {
            let coda = hangul::tail_from_compat(first)?;
            Some(Self {
                surface: surface.to_owned(),
                coda: Some(coda),
                rest: chars.collect(),
            })
        } else {
            Some(Self {
                surface: surface.to_owned(),
                coda: None,
                rest: surface.chars().collect(),
            })
        }
    }

    /// Longest-match score; a bare coda counts as half a syllable.
    pub fn weight(&self) -> usize {
        self.rest.len() * 2 + usize::from(self.coda.is_some())
    }

    /// Splits the pattern off the end of `token`. Requires a non-empty stem.
    pub fn split(&self, token: &str) -> Option<SuffixSplit> {
        let chars: Vec<char> = token.chars().collect();
        if chars.len() < self.rest.len() || !chars.ends_with(&self.rest) {
            return None;
        }
        let head: Vec<char> = chars[..chars.len() - self.rest.len()].to_vec();
        match self.coda {
            None => {
                if head.is_empty() {
                    return None;
                }
                let head: String = head.into_iter().collect();
                Some(SuffixSplit {
                    stem: head.clone(),
                    head,
                    tail: self.rest.iter().collect(),
                })
            }
            Some(coda) => {
                let last = *head.last()?;
                if hangul::tail_of(last) != Some(coda) {
                    return None;
                }
                let mut stem = head.clone();
                *stem.last_mut()? = hangul::replace_tail(last, hangul::tail::NONE);
                Some(SuffixSplit {
                    head: head.into_iter().collect(),
                    tail: self.rest.iter().collect(),
                    stem: stem.into_iter().collect(),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingEntry {
    pub pattern: SuffixPattern,
    pub class: EndingClass,
    /// Syllable appended to the stem to undo a contraction (`해` -> `하`).
    pub restore: Option<String>,
    pub copula: bool,
    /// Embedded-question endings (-는지) that can head a 여부 phrase.
    pub embedded: bool,
    pub aux: Option<AuxKind>,
}

impl EndingEntry {
    pub fn surface(&self) -> &str {
        &self.pattern.surface
    }
}

/// A multi-eojeol surface such as `몇 시` or `안 돼`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub pieces: Vec<String>,
}

impl Phrase {
    fn new(surface: &str) -> Self {
        Self {
            pieces: surface.split(' ').map(ToString::to_string).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Exact match of every piece against `tokens[..len]`.
    pub fn matches_exact<S: AsRef<str>>(&self, tokens: &[S]) -> bool {
        tokens.len() >= self.pieces.len()
            && self.pieces.iter().zip(tokens).all(|(p, t)| p == t.as_ref())
    }

    /// All pieces but the last must be equal; the last is a prefix of its token.
    /// Returns the byte length matched inside the last token.
    pub fn matches_prefix<S: AsRef<str>>(&self, tokens: &[S]) -> Option<usize> {
        let n = self.pieces.len();
        if tokens.len() < n || n == 0 {
            return None;
        }
        let head_ok = self.pieces[..n - 1]
            .iter()
            .zip(tokens)
            .all(|(p, t)| p == t.as_ref());
        let last = &self.pieces[n - 1];
        if head_ok && tokens[n - 1].as_ref().starts_with(last.as_str()) {
            Some(last.len())
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhForm {
    pub phrase: Phrase,
    pub kind: WhKind,
}

/// A wh hit: the family and how much of the token sequence it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhMatch {
    pub kind: WhKind,
    /// Number of eojeol the form spans.
    pub tokens: usize,
    /// Byte length of the matched prefix inside the last spanned eojeol.
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: expected role<TAB>surface<TAB>attributes")]
    MissingColumn { line: usize },
    #[error("line {line}: unknown role `{role}`")]
    UnknownRole { line: usize, role: String },
    #[error("line {line}: bad attribute `{attr}`")]
    BadAttribute { line: usize, attr: String },
    #[error("line {line}: role `{role}` requires attribute `{attr}`")]
    MissingAttribute {
        line: usize,
        role: String,
        attr: &'static str,
    },
    #[error("line {line}: `{surface}` listed twice under `{role}`")]
    Duplicate {
        line: usize,
        role: String,
        surface: String,
    },
    #[error("line {line}: `{surface}` is both a {first} and a {second}")]
    RoleConflict {
        line: usize,
        surface: String,
        first: String,
        second: String,
    },
    #[error("wh category `{0}` has no replacement noun")]
    MissingWhNoun(WhKind),
    #[error("wh noun `{noun}` has a particle or ending attached")]
    InflectedWhNoun { noun: String },
    #[error("unknown particle `{0}`")]
    UnknownParticle(String),
}

/// The full set of tables. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    pub version: u32,
    pub particles: Vec<Particle>,
    pub vocatives: Vec<Particle>,
    pub endings: Vec<EndingEntry>,
    pub know_verbs: Vec<String>,
    pub bound_nouns: Vec<String>,
    pub neg_preverbal: Vec<String>,
    pub neg_imperative: Vec<String>,
    pub neg_ci_anh: Vec<String>,
    pub malgo: Vec<String>,
    pub danger: Vec<Phrase>,
    pub connectives: Vec<SuffixPattern>,
    pub conditionals: Vec<SuffixPattern>,
    pub disjunctions: Vec<String>,
    pub info_verbs: Vec<Phrase>,
    pub quantifiers: Vec<(String, String)>,
    pub wh_forms: Vec<WhForm>,
    pub wh_categories: Vec<WhCategory>,
    pub pronouns: Vec<String>,
    pub demonstratives: Vec<String>,
    pub context_adverbs: Vec<String>,
    pub fillers: Vec<String>,
    pub light_verbs: Vec<String>,
    pub contractions: Vec<(char, String)>,
}

/// Roles whose surfaces are eojeol suffixes and must not overlap.
const SUFFIX_ROLES: [&str; 4] = ["josa", "ending", "connective", "conditional"];

struct Attrs<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Attrs<'a> {
    fn parse(line: usize, raw: &'a str) -> Result<Self, LexiconError> {
        let raw = raw.trim();
        if raw.is_empty() || raw == "-" {
            return Ok(Self {
                line,
                pairs: Vec::new(),
            });
        }
        let mut pairs = Vec::new();
        for item in raw.split(',') {
            let (k, v) = item.split_once('=').ok_or(LexiconError::BadAttribute {
                line,
                attr: item.to_string(),
            })?;
            pairs.push((k.trim(), v.trim()));
        }
        Ok(Self { line, pairs })
    }

    fn get(&self, key: &str) -> Option<&'a str> {
        self.pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn require(&self, role: &str, key: &'static str) -> Result<&'a str, LexiconError> {
        self.get(key).ok_or(LexiconError::MissingAttribute {
            line: self.line,
            role: role.to_string(),
            attr: key,
        })
    }

    fn flag(&self, key: &str) -> Result<bool, LexiconError> {
        match self.get(key) {
            None | Some("no") => Ok(false),
            Some("yes") => Ok(true),
            Some(v) => Err(LexiconError::BadAttribute {
                line: self.line,
                attr: alloc::format!("{key}={v}"),
            }),
        }
    }

    fn bad(&self, key: &str, value: &str) -> LexiconError {
        LexiconError::BadAttribute {
            line: self.line,
            attr: alloc::format!("{key}={value}"),
        }
    }
}

impl Lexicon {
    /// Parses the shipped tables. They are validated by the test suite, so a
    /// failure here is a packaging bug.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_LEXICON).expect("built-in lexicon is valid")
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon {
            version: 0,
            particles: Vec::new(),
            vocatives: Vec::new(),
            endings: Vec::new(),
            know_verbs: Vec::new(),
            bound_nouns: Vec::new(),
            neg_preverbal: Vec::new(),
            neg_imperative: Vec::new(),
            neg_ci_anh: Vec::new(),
            malgo: Vec::new(),
            danger: Vec::new(),
            connectives: Vec::new(),
            conditionals: Vec::new(),
            disjunctions: Vec::new(),
            info_verbs: Vec::new(),
            quantifiers: Vec::new(),
            wh_forms: Vec::new(),
            wh_categories: Vec::new(),
            pronouns: Vec::new(),
            demonstratives: Vec::new(),
            context_adverbs: Vec::new(),
            fillers: Vec::new(),
            light_verbs: Vec::new(),
            contractions: Vec::new(),
        };
        let mut wh_nouns: Vec<(WhKind, u32, String)> = Vec::new();
        // (role, surface) pairs seen so far
        let mut seen: Vec<(String, String)> = Vec::new();

        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let raw_line = raw_line.trim_end_matches('\r');
            if raw_line.trim().is_empty() || raw_line.starts_with('#') {
                continue;
            }
            let mut cols = raw_line.split('\t');
            let (Some(role), Some(surface)) = (cols.next(), cols.next()) else {
                return Err(LexiconError::MissingColumn { line });
            };
            let attrs = Attrs::parse(line, cols.next().unwrap_or("-"))?;
            let role = role.trim();
            let surface = surface.trim();
            if surface.is_empty() {
                return Err(LexiconError::MissingColumn { line });
            }

            if seen.iter().any(|(r, s)| r == role && s == surface) {
                return Err(LexiconError::Duplicate {
                    line,
                    role: role.to_string(),
                    surface: surface.to_string(),
                });
            }
            if SUFFIX_ROLES.contains(&role) {
                if let Some((other, _)) = seen
                    .iter()
                    .find(|(r, s)| s == surface && r != role && SUFFIX_ROLES.contains(&r.as_str()))
                {
                    return Err(LexiconError::RoleConflict {
                        line,
                        surface: surface.to_string(),
                        first: other.clone(),
                        second: role.to_string(),
                    });
                }
            }
            seen.push((role.to_string(), surface.to_string()));

            let pattern = || {
                SuffixPattern::new(surface).ok_or(LexiconError::BadAttribute {
                    line,
                    attr: surface.to_string(),
                })
            };

            match role {
                "meta" => {
                    if surface == "version" {
                        let v = attrs.require(role, "value")?;
                        lex.version = v.parse().map_err(|_| attrs.bad("value", v))?;
                    }
                }
                "josa" | "vocative" => {
                    let cond = attrs.require(role, "cond")?;
                    let condition =
                        BatchimCondition::parse(cond).ok_or_else(|| attrs.bad("cond", cond))?;
                    let particle = Particle {
                        surface: surface.to_string(),
                        condition,
                        droppable: attrs.flag("drop")?,
                    };
                    if role == "josa" {
                        lex.particles.push(particle);
                    } else {
                        lex.vocatives.push(particle);
                    }
                }
                "ending" => {
                    let kind = attrs.require(role, "kind")?;
                    let class = match kind {
                        "interrogative" => EndingClass::Interrogative,
                        "imperative" => EndingClass::Imperative,
                        "declarative_cue" => EndingClass::DeclarativeCue,
                        "informal" => EndingClass::Informal,
                        _ => return Err(attrs.bad("kind", kind)),
                    };
                    let aux = match attrs.get("aux") {
                        None => None,
                        Some("request") => Some(AuxKind::Request),
                        Some("benefactive") => Some(AuxKind::Benefactive),
                        Some("wish") => Some(AuxKind::Wish),
                        Some(v) => return Err(attrs.bad("aux", v)),
                    };
                    lex.endings.push(EndingEntry {
                        pattern: pattern()?,
                        class,
                        restore: attrs.get("restore").map(ToString::to_string),
                        copula: attrs.flag("copula")?,
                        embedded: attrs.flag("embedded")?,
                        aux,
                    });
                }
                "know_verb" => lex.know_verbs.push(surface.to_string()),
                "bound_noun" => lex.bound_nouns.push(surface.to_string()),
                "neg_preverbal" => lex.neg_preverbal.push(surface.to_string()),
                "neg_imperative" => lex.neg_imperative.push(surface.to_string()),
                "neg_ci_anh" => lex.neg_ci_anh.push(surface.to_string()),
                "malgo" => lex.malgo.push(surface.to_string()),
                "danger" => lex.danger.push(Phrase::new(surface)),
                "connective" => lex.connectives.push(pattern()?),
                "conditional" => lex.conditionals.push(pattern()?),
                "disjunction" => lex.disjunctions.push(surface.to_string()),
                "info_verb" => lex.info_verbs.push(Phrase::new(surface)),
                "quantifier" => {
                    let det = attrs.require(role, "det")?;
                    lex.quantifiers.push((surface.to_string(), det.to_string()));
                }
                "wh" => {
                    let cat = attrs.require(role, "cat")?;
                    let kind = WhKind::parse(cat).ok_or_else(|| attrs.bad("cat", cat))?;
                    lex.wh_forms.push(WhForm {
                        phrase: Phrase::new(surface),
                        kind,
                    });
                }
                "wh_noun" => {
                    let cat = attrs.require(role, "cat")?;
                    let kind = WhKind::parse(cat).ok_or_else(|| attrs.bad("cat", cat))?;
                    let rank = attrs.require(role, "rank")?;
                    let rank: u32 = rank.parse().map_err(|_| attrs.bad("rank", rank))?;
                    wh_nouns.push((kind, rank, surface.to_string()));
                }
                "pronoun" => lex.pronouns.push(surface.to_string()),
                "demonstrative" => lex.demonstratives.push(surface.to_string()),
                "context_adverb" => lex.context_adverbs.push(surface.to_string()),
                "filler" => lex.fillers.push(surface.to_string()),
                "light_verb" => lex.light_verbs.push(surface.to_string()),
                "contraction" => {
                    let to = attrs.require(role, "to")?;
                    let mut chars = surface.chars();
                    let (Some(from), None) = (chars.next(), chars.next()) else {
                        return Err(attrs.bad("surface", surface));
                    };
                    lex.contractions.push((from, to.to_string()));
                }
                _ => {
                    return Err(LexiconError::UnknownRole {
                        line,
                        role: role.to_string(),
                    })
                }
            }
        }

        wh_nouns.sort_by_key(|(kind, rank, _)| (*kind, *rank));
        for kind in WhKind::ALL {
            let nouns: Vec<String> = wh_nouns
                .iter()
                .filter(|(k, _, _)| *k == kind)
                .map(|(_, _, n)| n.clone())
                .collect();
            if nouns.is_empty() {
                return Err(LexiconError::MissingWhNoun(kind));
            }
            lex.wh_categories.push(WhCategory { kind, nouns });
        }

        // longest surfaces first so that first-hit scans are longest-match
        lex.particles
            .sort_by_key(|p| core::cmp::Reverse(p.surface.chars().count()));
        lex.wh_forms.sort_by_key(|w| {
            core::cmp::Reverse((w.phrase.len(), w.phrase.pieces.concat().chars().count()))
        });
        lex.info_verbs.sort_by_key(|p| core::cmp::Reverse(p.len()));
        lex.danger.sort_by_key(|p| core::cmp::Reverse(p.len()));

        lex.check_wh_nouns()?;
        Ok(lex)
    }

    fn check_wh_nouns(&self) -> Result<(), LexiconError> {
        for noun in self.wh_categories.iter().flat_map(|c| &c.nouns) {
            let inflected = self.particles.iter().any(|p| {
                noun.strip_suffix(p.surface.as_str())
                    .and_then(|stem| stem.chars().last())
                    .is_some_and(|last| p.condition.admits(last))
            }) || self.endings.iter().any(|e| e.surface() == noun);
            if inflected || noun.contains(' ') {
                return Err(LexiconError::InflectedWhNoun { noun: noun.clone() });
            }
        }
        Ok(())
    }

    pub fn wh_category(&self, kind: WhKind) -> &WhCategory {
        &self.wh_categories[kind.index()]
    }

    pub fn is_wh_noun(&self, word: &str) -> bool {
        self.wh_categories
            .iter()
            .any(|c| c.nouns.iter().any(|n| n == word))
    }

    /// Finds the wh form starting at `tokens[0]`, trying multi-eojeol forms first.
    pub fn lookup_wh<S: AsRef<str>>(&self, tokens: &[S]) -> Option<WhMatch> {
        self.wh_forms.iter().find_map(|form| {
            form.phrase.matches_prefix(tokens).map(|len| WhMatch {
                kind: form.kind,
                tokens: form.phrase.len(),
                len,
            })
        })
    }

    pub fn particle(&self, surface: &str) -> Option<&Particle> {
        self.particles.iter().find(|p| p.surface == surface)
    }

    /// Whether `particle` may attach after a stem ending in `stem_final`.
    pub fn josa_valid(&self, stem_final: char, particle: &str) -> Result<bool, LexiconError> {
        self.particle(particle)
            .map(|p| p.condition.admits(stem_final))
            .ok_or_else(|| LexiconError::UnknownParticle(particle.to_string()))
    }

    pub fn is_ending_surface(&self, word: &str) -> bool {
        self.endings.iter().any(|e| e.surface() == word)
    }

    pub fn contraction(&self, syllable: char) -> Option<&str> {
        self.contractions
            .iter()
            .find(|(from, _)| *from == syllable)
            .map(|(_, to)| to.as_str())
    }

    pub fn quantifier(&self, word: &str) -> Option<&str> {
        self.quantifiers
            .iter()
            .find(|(q, _)| q == word)
            .map(|(_, det)| det.as_str())
    }

    pub(crate) fn contains(list: &[String], word: &str) -> bool {
        list.iter().any(|w| w == word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let lex = Lexicon::builtin();
        assert_eq!(lex.version, 1);
        assert_eq!(lex.wh_categories.len(), 6);
    }

    #[test]
    fn primary_wh_nouns() {
        let lex = Lexicon::builtin();
        let primary: Vec<&str> = WhKind::ALL
            .iter()
            .map(|k| lex.wh_category(*k).primary())
            .collect();
        assert_eq!(primary, ["사람", "의미", "위치", "시간", "이유", "방법"]);
        assert_eq!(lex.wh_category(WhKind::Who).nouns, ["사람", "정체"]);
        assert_eq!(lex.wh_category(WhKind::Where).nouns, ["위치", "장소"]);
        assert_eq!(
            lex.wh_category(WhKind::When).nouns,
            ["시간", "기간", "시각"]
        );
        assert_eq!(lex.wh_category(WhKind::How).nouns, ["방법", "대책"]);
    }

    #[test]
    fn lookup_wh_examples() {
        let lex = Lexicon::builtin();
        let hit = lex.lookup_wh(&["누구"]).unwrap();
        assert_eq!(hit.kind, WhKind::Who);
        assert_eq!((hit.tokens, hit.len), (1, "누구".len()));

        let hit = lex.lookup_wh(&["몇", "시에"]).unwrap();
        assert_eq!(hit.kind, WhKind::When);
        assert_eq!(hit.tokens, 2);

        assert_eq!(lex.lookup_wh(&["사과"]), None);
        // bare 몇 without a time noun is not a wh form
        assert_eq!(lex.lookup_wh(&["몇", "개"]), None);
    }

    #[test]
    fn josa_validity() {
        let lex = Lexicon::builtin();
        assert_eq!(lex.josa_valid('늘', "은"), Ok(true));
        assert_eq!(lex.josa_valid('스', "은"), Ok(false));
        assert_eq!(lex.josa_valid('스', "로"), Ok(true));
        assert_eq!(lex.josa_valid('울', "로"), Ok(true));
        assert_eq!(lex.josa_valid('울', "으로"), Ok(false));
        assert_eq!(lex.josa_valid('집', "으로"), Ok(true));
        assert_eq!(
            lex.josa_valid('스', "요"),
            Err(LexiconError::UnknownParticle("요".into()))
        );
    }

    #[test]
    fn coda_initial_suffix_split() {
        let p = SuffixPattern::new("ㅂ니까").unwrap();
        let split = p.split("합니까").unwrap();
        assert_eq!(split.head, "합");
        assert_eq!(split.tail, "니까");
        assert_eq!(split.stem, "하");
        assert!(p.split("하니까").is_none());
        assert!(p.split("니까").is_none());
    }

    #[test]
    fn rejects_unknown_role() {
        let err = Lexicon::parse("noun\t사과\t-\n").unwrap_err();
        assert_eq!(
            err,
            LexiconError::UnknownRole {
                line: 1,
                role: "noun".into()
            }
        );
    }

    #[test]
    fn rejects_particle_that_is_also_an_ending() {
        let text = alloc::format!("{BUILTIN_LEXICON}\njosa\t니\tcond=any\n");
        assert!(matches!(
            Lexicon::parse(&text),
            Err(LexiconError::RoleConflict { .. })
        ));
    }

    #[test]
    fn rejects_duplicates_and_bad_attributes() {
        let text = alloc::format!("{BUILTIN_LEXICON}\nwh\t왜\tcat=why\n");
        assert!(matches!(
            Lexicon::parse(&text),
            Err(LexiconError::Duplicate { .. })
        ));
        let text = alloc::format!("{BUILTIN_LEXICON}\nwh\t무어\tcat=which\n");
        assert!(matches!(
            Lexicon::parse(&text),
            Err(LexiconError::BadAttribute { .. })
        ));
    }

    #[test]
    fn missing_wh_noun_is_an_error() {
        let text: String = BUILTIN_LEXICON
            .lines()
            .filter(|l| !l.contains("cat=why,rank"))
            .flat_map(|l| [l, "\n"])
            .collect();
        assert_eq!(
            Lexicon::parse(&text),
            Err(LexiconError::MissingWhNoun(WhKind::Why))
        );
    }

    #[test]
    fn same_tables_same_lexicon() {
        assert_eq!(Lexicon::builtin(), Lexicon::parse(BUILTIN_LEXICON).unwrap());
    }

    #[test]
    fn category_tags_round_trip() {
        for c in ArgumentCategory::ALL {
            assert_eq!(ArgumentCategory::from_tag(c.tag()), Some(c));
        }
        for k in WhKind::ALL {
            assert_eq!(ArgumentCategory::from_wh(k).wh_kind(), Some(k));
        }
    }
}
