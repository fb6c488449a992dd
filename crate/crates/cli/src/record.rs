//! Output rows for `classify` and `extract`.

use serde::Serialize;

use saek_core::{Error as EngineError, Evidence, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceRecord {
    pub cue: &'static str,
    pub start: usize,
    pub end: usize,
}

impl From<&Evidence> for EvidenceRecord {
    fn from(e: &Evidence) -> Self {
        EvidenceRecord {
            cue: e.cue,
            start: e.span.0,
            end: e.span.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label_name: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question_type: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negativeness: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wh: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub argument: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub category: Option<&'static str>,
    pub evidence: Vec<EvidenceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Column order of `--format tsv`.
pub const TSV_COLUMNS: [&str; 9] = [
    "text",
    "label",
    "label_name",
    "question_type",
    "negativeness",
    "argument",
    "category",
    "evidence",
    "error",
];

impl OutputRecord {
    fn empty(text: &str) -> Self {
        OutputRecord {
            text: text.to_string(),
            label: None,
            label_name: None,
            question_type: None,
            negativeness: None,
            wh: None,
            rule: None,
            argument: None,
            category: None,
            evidence: Vec::new(),
            error: None,
        }
    }

    pub fn failed(text: &str, err: &EngineError) -> Self {
        OutputRecord {
            error: Some(err.to_string()),
            ..Self::empty(text)
        }
    }

    /// `with_argument` is false for `classify`, which leaves the argument
    /// fields out.
    pub fn from_outcome(text: &str, out: &Outcome, with_argument: bool) -> Self {
        let c = &out.classification;
        let mut r = Self::empty(text);
        r.label = Some(c.label.code());
        r.label_name = Some(c.label.name());
        r.question_type = c.label.question_type().ok().map(|q| q.name());
        r.negativeness = c.label.negativeness().ok().map(|n| n.code());
        r.wh = c.wh.map(|w| w.name());
        r.rule = Some(c.rule.id());
        r.evidence = c.evidence.iter().map(EvidenceRecord::from).collect();
        if with_argument {
            match &out.argument {
                Ok(a) => {
                    r.argument = Some(a.text.clone());
                    r.category = Some(a.category.tag());
                }
                Err(e) => r.error = Some(e.to_string()),
            }
        }
        r
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    pub fn to_tsv(&self) -> String {
        let evidence = self
            .evidence
            .iter()
            .map(|e| format!("{}@{}-{}", e.cue, e.start, e.end))
            .collect::<Vec<_>>()
            .join(";");
        let cols = [
            clean(&self.text),
            self.label.map(|l| l.to_string()).unwrap_or_default(),
            self.label_name.unwrap_or_default().to_string(),
            self.question_type.unwrap_or_default().to_string(),
            self.negativeness.unwrap_or_default().to_string(),
            self.argument.as_deref().map(clean).unwrap_or_default(),
            self.category.unwrap_or_default().to_string(),
            evidence,
            self.error.as_deref().map(clean).unwrap_or_default(),
        ];
        cols.join("\t")
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use saek_core::Engine;

    #[test]
    fn tabs_inside_text_are_flattened() {
        let engine = Engine::builtin();
        let err = engine.process("비가\t온다").unwrap_err();
        let r = OutputRecord::failed("비가\t온다", &err);
        let tsv = r.to_tsv();
        assert_eq!(tsv.split('\t').count(), TSV_COLUMNS.len());
        assert!(tsv.starts_with("비가 온다\t"));
    }

    #[test]
    fn command_record_has_no_question_type() {
        let engine = Engine::builtin();
        let out = engine.process("밖에 나가지 마").unwrap();
        let r = OutputRecord::from_outcome("밖에 나가지 마", &out, true);
        assert_eq!(r.question_type, None);
        assert_eq!(r.negativeness, Some("PH"));
        assert_eq!(r.category, Some("금지"));
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("question_type").is_none());
        assert!(json.get("wh").is_none());
    }
}
