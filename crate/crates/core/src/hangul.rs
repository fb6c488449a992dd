//! Hangul syllable arithmetic.
//!
//! Precomposed syllables occupy U+AC00..=U+D7A3 and are laid out as
//! `0xAC00 + (lead * 21 + vowel) * 28 + tail`. Only that block is handled;
//! conjoining and compatibility jamo are rejected.

use thiserror::Error;

pub const SYLLABLE_BASE: u32 = 0xAC00;
pub const LEAD_COUNT: u8 = 19;
pub const VOWEL_COUNT: u8 = 21;
pub const TAIL_COUNT: u8 = 28;
pub const SYLLABLE_COUNT: u32 = (LEAD_COUNT as u32) * (VOWEL_COUNT as u32) * (TAIL_COUNT as u32);

/// Tail (final consonant) indices that the morphology rules care about.
pub mod tail {
    pub const NONE: u8 = 0;
    pub const NIEUN: u8 = 4;
    pub const RIEUL: u8 = 8;
    pub const MIEUM: u8 = 16;
    pub const BIEUP: u8 = 17;
    pub const SSANGSIOS: u8 = 20;
}

/// Vowel (medial) indices used by contraction rules.
pub mod vowel {
    pub const A: u8 = 0;
    pub const AE: u8 = 1;
    pub const EO: u8 = 4;
    pub const YEO: u8 = 6;
    pub const O: u8 = 8;
    pub const WA: u8 = 9;
    pub const U: u8 = 13;
    pub const WO: u8 = 14;
    pub const EU: u8 = 18;
    pub const I: u8 = 20;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum HangulError {
    #[error("U+{0:04X} is not a precomposed Hangul syllable")]
    NotHangulSyllable(u32),
    #[error("jamo index out of range: lead={lead}, vowel={vowel}, tail={tail}")]
    IndexOutOfRange { lead: u8, vowel: u8, tail: u8 },
}

/// Lead, vowel and tail indices of one syllable block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct JamoTriple {
    pub lead: u8,
    pub vowel: u8,
    pub tail: u8,
}

impl JamoTriple {
    pub const fn new(lead: u8, vowel: u8, tail: u8) -> Self {
        Self { lead, vowel, tail }
    }

    pub fn in_range(&self) -> bool {
        self.lead < LEAD_COUNT && self.vowel < VOWEL_COUNT && self.tail < TAIL_COUNT
    }

    pub fn with_tail(self, tail: u8) -> Self {
        Self { tail, ..self }
    }

    pub fn with_vowel(self, vowel: u8) -> Self {
        Self { vowel, ..self }
    }
}

pub fn is_syllable(ch: char) -> bool {
    (SYLLABLE_BASE..SYLLABLE_BASE + SYLLABLE_COUNT).contains(&(ch as u32))
}

pub fn decompose(ch: char) -> Result<JamoTriple, HangulError> {
    if !is_syllable(ch) {
        return Err(HangulError::NotHangulSyllable(ch as u32));
    }
    let offset = ch as u32 - SYLLABLE_BASE;
    let tail = (offset % TAIL_COUNT as u32) as u8;
    let vowel = ((offset / TAIL_COUNT as u32) % VOWEL_COUNT as u32) as u8;
    let lead = (offset / (TAIL_COUNT as u32 * VOWEL_COUNT as u32)) as u8;
    Ok(JamoTriple { lead, vowel, tail })
}

pub fn compose(j: JamoTriple) -> Result<char, HangulError> {
    if !j.in_range() {
        return Err(HangulError::IndexOutOfRange {
            lead: j.lead,
            vowel: j.vowel,
            tail: j.tail,
        });
    }
    let code = SYLLABLE_BASE
        + (j.lead as u32 * VOWEL_COUNT as u32 + j.vowel as u32) * TAIL_COUNT as u32
        + j.tail as u32;
    // every in-range triple lands inside the syllable block
    Ok(char::from_u32(code).expect("syllable block is valid scalar range"))
}

pub fn has_batchim(ch: char) -> Result<bool, HangulError> {
    decompose(ch).map(|j| j.tail != tail::NONE)
}

/// Tail index of a syllable, `None` for anything outside the block.
pub fn tail_of(ch: char) -> Option<u8> {
    decompose(ch).ok().map(|j| j.tail)
}

/// Replaces the tail of a syllable. Non-syllables come back unchanged.
pub fn replace_tail(ch: char, new_tail: u8) -> char {
    match decompose(ch) {
        Ok(j) => compose(j.with_tail(new_tail)).unwrap_or(ch),
        Err(_) => ch,
    }
}

/// Maps a compatibility consonant (ㄱ..ㅎ, U+3131..U+314E) to its tail index.
pub fn tail_from_compat(c: char) -> Option<u8> {
    // Compatibility consonants in code point order, with their tail index.
    // Lead-only consonants (ㄸ ㅃ ㅉ) have no tail form.
    const TABLE: [(char, u8); 30] = [
        ('ㄱ', 1),
        ('ㄲ', 2),
        ('ㄳ', 3),
        ('ㄴ', 4),
        ('ㄵ', 5),
        ('ㄶ', 6),
        ('ㄷ', 7),
        ('ㄸ', 0),
        ('ㄹ', 8),
        ('ㄺ', 9),
        ('ㄻ', 10),
        ('ㄼ', 11),
        ('ㄽ', 12),
        ('ㄾ', 13),
        ('ㄿ', 14),
        ('ㅀ', 15),
        ('ㅁ', 16),
        ('ㅂ', 17),
        ('ㅃ', 0),
        ('ㅄ', 18),
        ('ㅅ', 19),
        ('ㅆ', 20),
        ('ㅇ', 21),
        ('ㅈ', 22),
        ('ㅉ', 0),
        ('ㅊ', 23),
        ('ㅋ', 24),
        ('ㅌ', 25),
        ('ㅍ', 26),
        ('ㅎ', 27),
    ];
    TABLE
        .iter()
        .find(|(k, t)| *k == c && *t != 0)
        .map(|(_, t)| *t)
}

pub fn is_compat_consonant(c: char) -> bool {
    ('\u{3131}'..='\u{314E}').contains(&c)
}
