//! Dataset rows, label statistics, scoring and annotator agreement.
//!
//! Rows are tab separated, UTF-8, one per line, no header:
//!
//! ```text
//! label<TAB>utterance                 (labeled)
//! label<TAB>utterance<TAB>argument    (paired)
//! ```

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::analyze::SENTENCE_PUNCTUATION;
use crate::classify::IntentLabel;
use crate::lexicon::ArgumentCategory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Labeled,
    Paired,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: IntentLabel,
    pub utterance: String,
    pub gold_argument: Option<String>,
    /// Category tag split off the gold argument, as in `확인하기 (요구)`.
    pub gold_category: Option<ArgumentCategory>,
    /// 1-based.
    pub line_no: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadErrorKind {
    #[error("blank line")]
    BlankLine,
    #[error("label is not a number: {0:?}")]
    BadLabel(String),
    #[error("label out of range: {0}")]
    LabelOutOfRange(u64),
    #[error("expected {expected} columns, found {found}")]
    ColumnCount { expected: usize, found: usize },
    #[error("empty utterance")]
    EmptyUtterance,
    #[error("utterance contains sentence punctuation {0:?}")]
    Punctuation(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct LoadError {
    pub line: usize,
    pub kind: LoadErrorKind,
}

fn err(line: usize, kind: LoadErrorKind) -> LoadError {
    LoadError { line, kind }
}

/// Splits a trailing `(tag)` off a gold argument.
pub fn split_category(text: &str) -> (String, Option<ArgumentCategory>) {
    let t = text.trim();
    if let Some(body) = t.strip_suffix(')') {
        if let Some(open) = body.rfind('(') {
            if let Some(cat) = ArgumentCategory::from_tag(body[open + 1..].trim()) {
                return (body[..open].trim_end().to_string(), Some(cat));
            }
        }
    }
    (t.to_string(), None)
}

/// NFC plus single spaces between words.
pub fn normalize_text(s: &str) -> String {
    let nfc: String = s.nfc().collect();
    let mut out = String::with_capacity(nfc.len());
    for w in nfc.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(w);
    }
    out
}

/// Parses one row. `line_no` is 1-based.
pub fn parse_line(line: &str, line_no: usize, format: Format) -> Result<CorpusEntry, LoadError> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.trim().is_empty() {
        return Err(err(line_no, LoadErrorKind::BlankLine));
    }
    let cols: Vec<&str> = line.split('\t').collect();
    let expected = match format {
        Format::Labeled => 2,
        Format::Paired => 3,
    };
    if cols.len() != expected {
        return Err(err(
            line_no,
            LoadErrorKind::ColumnCount {
                expected,
                found: cols.len(),
            },
        ));
    }
    let raw_label = cols[0].trim();
    let code: u64 = raw_label
        .parse()
        .map_err(|_| err(line_no, LoadErrorKind::BadLabel(raw_label.to_string())))?;
    let label = u8::try_from(code)
        .ok()
        .and_then(IntentLabel::from_code)
        .ok_or(err(line_no, LoadErrorKind::LabelOutOfRange(code)))?;

    let utterance = normalize_text(cols[1]);
    if utterance.is_empty() {
        return Err(err(line_no, LoadErrorKind::EmptyUtterance));
    }
    if let Some(c) = utterance.chars().find(|c| SENTENCE_PUNCTUATION.contains(c)) {
        return Err(err(line_no, LoadErrorKind::Punctuation(c)));
    }

    let (gold_argument, gold_category) = match cols.get(2) {
        Some(g) => {
            let (text, cat) = split_category(g);
            let text = normalize_text(&text);
            ((!text.is_empty()).then_some(text), cat)
        }
        None => (None, None),
    };

    Ok(CorpusEntry {
        label,
        utterance,
        gold_argument,
        gold_category,
        line_no,
    })
}

/// Loads every row, keeping going past bad ones.
pub fn load<'a, I>(lines: I, format: Format) -> (Vec<CorpusEntry>, Vec<LoadError>)
where
    I: IntoIterator<Item = &'a str>,
{
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (i, line) in lines.into_iter().enumerate() {
        match parse_line(line, i + 1, format) {
            Ok(e) => entries.push(e),
            Err(e) => errors.push(e),
        }
    }
    (entries, errors)
}

/// Writes one entry back as a row, without the newline.
pub fn serialize(entry: &CorpusEntry, format: Format) -> String {
    let mut s = String::new();
    s.push_str(&entry.label.code().to_string());
    s.push('\t');
    s.push_str(&entry.utterance);
    if format == Format::Paired {
        s.push('\t');
        if let Some(g) = &entry.gold_argument {
            s.push_str(g);
        }
        if let Some(c) = entry.gold_category {
            if entry.gold_argument.is_some() {
                s.push(' ');
            }
            s.push('(');
            s.push_str(c.tag());
            s.push(')');
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("{predictions} predictions for {gold} gold rows")]
    LengthMismatch { predictions: usize, gold: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    /// Indexed by label code.
    pub counts: [usize; 6],
    /// Fractions of the whole corpus.
    pub portions: [f64; 6],
    pub total: usize,
}

impl CorpusStats {
    /// Fractions within each super-type (questions 0..=2, commands 3..=5),
    /// the way the published table reports them.
    pub fn super_type_portions(&self) -> [f64; 6] {
        let q: usize = self.counts[..3].iter().sum();
        let c: usize = self.counts[3..].iter().sum();
        let mut out = [0.0; 6];
        for (i, &n) in self.counts.iter().enumerate() {
            let denom = if i < 3 { q } else { c };
            if denom > 0 {
                out[i] = n as f64 / denom as f64;
            }
        }
        out
    }
}

pub fn stats(entries: &[CorpusEntry]) -> Result<CorpusStats, CorpusError> {
    if entries.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut counts = [0usize; 6];
    for e in entries {
        counts[e.label.code() as usize] += 1;
    }
    let total = entries.len();
    let mut portions = [0.0; 6];
    for (p, &n) in portions.iter_mut().zip(&counts) {
        *p = n as f64 / total as f64;
    }
    Ok(CorpusStats {
        counts,
        portions,
        total,
    })
}

/// Published instance counts, in label order.
pub const PUBLISHED_COUNTS: [usize; 6] = [5718, 227, 11924, 477, 12369, 122];
pub const PUBLISHED_TOTAL: usize = 30837;
/// Published percentages within each super-type.
pub const PUBLISHED_PERCENT: [f64; 6] = [31.99, 1.27, 66.73, 3.67, 95.38, 0.94];
/// Allowed gap on a percentage, in percentage points.
pub const PUBLISHED_TOLERANCE_PP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatField {
    Count(IntentLabel),
    Percent(IntentLabel),
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatDiff {
    pub field: StatField,
    pub expected: f64,
    pub actual: f64,
}

impl fmt::Display for StatDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            StatField::Count(l) => write!(f, "count[{}]", l.code())?,
            StatField::Percent(l) => write!(f, "percent[{}]", l.code())?,
            StatField::Total => f.write_str("total")?,
        }
        write!(f, ": expected {}, got {}", self.expected, self.actual)
    }
}

/// Differences between `s` and exact expected counts.
pub fn diff_counts(s: &CorpusStats, expected: &[usize; 6]) -> Vec<StatDiff> {
    let mut out = Vec::new();
    for (label, (&want, &got)) in IntentLabel::ALL.iter().zip(expected.iter().zip(&s.counts)) {
        if want != got {
            out.push(StatDiff {
                field: StatField::Count(*label),
                expected: want as f64,
                actual: got as f64,
            });
        }
    }
    let want_total: usize = expected.iter().sum();
    if want_total != s.total {
        out.push(StatDiff {
            field: StatField::Total,
            expected: want_total as f64,
            actual: s.total as f64,
        });
    }
    out
}

/// Differences against the published table: exact counts and
/// super-type percentages within [`PUBLISHED_TOLERANCE_PP`].
pub fn diff_published(s: &CorpusStats) -> Vec<StatDiff> {
    let mut out = diff_counts(s, &PUBLISHED_COUNTS);
    let portions = s.super_type_portions();
    for (i, label) in IntentLabel::ALL.iter().enumerate() {
        let got = portions[i] * 100.0;
        if (got - PUBLISHED_PERCENT[i]).abs() > PUBLISHED_TOLERANCE_PP + 1e-9 {
            out.push(StatDiff {
                field: StatField::Percent(*label),
                expected: PUBLISHED_PERCENT[i],
                actual: got,
            });
        }
    }
    out
}

/// One system output. `label` is `None` when the engine gave up.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Prediction {
    pub label: Option<IntentLabel>,
    pub argument: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub label_accuracy: f64,
    pub per_class: [ClassScores; 6],
    pub macro_f1: f64,
    /// Over rows that carry a gold argument; `None` when there are none.
    pub arg_exact: Option<f64>,
    pub arg_char_f1: Option<f64>,
    /// Share of rows that received any label.
    pub coverage: f64,
    pub rows: usize,
    pub arg_rows: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn bigrams(s: &str) -> BTreeMap<(char, char), usize> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut m = BTreeMap::new();
    for w in chars.windows(2) {
        *m.entry((w[0], w[1])).or_insert(0) += 1;
    }
    m
}

/// Character-bigram F1, whitespace ignored. Strings too short to have a
/// bigram score 1 when equal and 0 otherwise.
pub fn char_bigram_f1(predicted: &str, gold: &str) -> f64 {
    let p = bigrams(predicted);
    let g = bigrams(gold);
    let np: usize = p.values().sum();
    let ng: usize = g.values().sum();
    if np == 0 || ng == 0 {
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        return if np == ng && squash(predicted) == squash(gold) {
            1.0
        } else {
            0.0
        };
    }
    let overlap: usize = p
        .iter()
        .map(|(k, &n)| n.min(g.get(k).copied().unwrap_or(0)))
        .sum();
    f1(ratio(overlap, np), ratio(overlap, ng))
}

pub fn evaluate(
    predictions: &[Prediction],
    gold: &[CorpusEntry],
) -> Result<EvalReport, CorpusError> {
    if predictions.len() != gold.len() {
        return Err(CorpusError::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    if gold.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut tp = [0usize; 6];
    let mut predicted = [0usize; 6];
    let mut actual = [0usize; 6];
    let mut correct = 0;
    let mut covered = 0;
    let mut arg_rows = 0;
    let mut exact = 0;
    let mut bigram_sum = 0.0;

    for (p, g) in predictions.iter().zip(gold) {
        let gi = g.label.code() as usize;
        actual[gi] += 1;
        if let Some(l) = p.label {
            covered += 1;
            predicted[l.code() as usize] += 1;
            if l == g.label {
                correct += 1;
                tp[gi] += 1;
            }
        }
        if let Some(ga) = &g.gold_argument {
            arg_rows += 1;
            let ga = normalize_text(ga);
            if let Some(pa) = &p.argument {
                let pa = normalize_text(pa);
                if pa == ga {
                    exact += 1;
                }
                bigram_sum += char_bigram_f1(&pa, &ga);
            }
        }
    }

    let mut per_class = [ClassScores::default(); 6];
    for i in 0..6 {
        let precision = ratio(tp[i], predicted[i]);
        let recall = ratio(tp[i], actual[i]);
        per_class[i] = ClassScores {
            precision,
            recall,
            f1: f1(precision, recall),
            support: actual[i],
        };
    }
    let macro_f1 = per_class.iter().map(|c| c.f1).sum::<f64>() / 6.0;
    let rows = gold.len();
    Ok(EvalReport {
        label_accuracy: ratio(correct, rows),
        per_class,
        macro_f1,
        arg_exact: (arg_rows > 0).then(|| ratio(exact, arg_rows)),
        arg_char_f1: (arg_rows > 0).then(|| bigram_sum / arg_rows as f64),
        coverage: ratio(covered, rows),
        rows,
        arg_rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix has no items or no categories")]
    Empty,
    #[error("row {0} has a different number of categories")]
    Ragged(usize),
    #[error("row {row} sums to {sum}, expected {n}")]
    RowSum { row: usize, sum: u32, n: u32 },
    #[error("at least two annotators per item are needed")]
    TooFewAnnotators,
    #[error("chance agreement is 1, kappa is undefined")]
    DegenerateMatrix,
}

/// Items by categories; each cell counts the annotators who picked that
/// category for that item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationMatrix {
    rows: Vec<Vec<u32>>,
    n: u32,
}

impl AnnotationMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, MatrixError> {
        let width = rows.first().map(Vec::len).ok_or(MatrixError::Empty)?;
        if width == 0 {
            return Err(MatrixError::Empty);
        }
        let n: u32 = rows[0].iter().sum();
        if n < 2 {
            return Err(MatrixError::TooFewAnnotators);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(MatrixError::Ragged(i));
            }
            let sum: u32 = r.iter().sum();
            if sum != n {
                return Err(MatrixError::RowSum { row: i, sum, n });
            }
        }
        Ok(AnnotationMatrix { rows, n })
    }

    /// Builds the matrix from per-item label lists.
    pub fn from_labels(items: &[Vec<usize>], categories: usize) -> Result<Self, MatrixError> {
        let mut rows = Vec::with_capacity(items.len());
        for item in items {
            let mut row = alloc::vec![0u32; categories];
            for &c in item {
                if c >= categories {
                    return Err(MatrixError::Ragged(rows.len()));
                }
                row[c] += 1;
            }
            rows.push(row);
        }
        AnnotationMatrix::new(rows)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn annotators(&self) -> u32 {
        self.n
    }
}

pub fn fleiss_kappa(m: &AnnotationMatrix) -> Result<f64, MatrixError> {
    let n = m.n as f64;
    let items = m.rows.len() as f64;
    let width = m.rows[0].len();
    let mut column = alloc::vec![0.0f64; width];
    let mut p_bar = 0.0;
    for r in &m.rows {
        let sq: f64 = r.iter().map(|&c| (c as f64) * (c as f64)).sum();
        p_bar += (sq - n) / (n * (n - 1.0));
        for (acc, &c) in column.iter_mut().zip(r) {
            *acc += c as f64;
        }
    }
    p_bar /= items;
    let p_e: f64 = column
        .iter()
        .map(|&c| {
            let p = c / (items * n);
            p * p
        })
        .sum();
    let denom = 1.0 - p_e;
    if denom.abs() < 1e-12 {
        return Err(MatrixError::DegenerateMatrix);
    }
    Ok((p_bar - p_e) / denom)
}
