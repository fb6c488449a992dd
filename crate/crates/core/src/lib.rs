//! Intent labelling and argument extraction for spoken Korean questions
//! and commands.
//!
//! The crate is `no_std` and only needs `alloc`. File IO and the command
//! line live in the `saek` crate.
//!
//! ```
//! use saek_core::{Engine, IntentLabel};
//!
//! let engine = Engine::builtin();
//! let out = engine.process("해외 송금 어떻게 하는 거야").unwrap();
//! assert_eq!(out.classification.label, IntentLabel::Wh);
//! assert_eq!(out.argument.unwrap().text, "해외 송금 방법");
//! ```

#![no_std]

extern crate alloc;

pub mod analyze;
pub mod classify;
pub mod corpus;
pub mod extract;
pub mod hangul;
pub mod lexicon;

pub use analyze::{analyze, normalize, Analysis, AnalyzeError, Eojeol, NormalizedUtterance};
pub use classify::{
    classify, Classification, ClassifyError, Evidence, IntentLabel, Negativeness, QuestionType,
    Rule,
};
pub use extract::{check_contract, extract, Argument, ContractViolation, ExtractError};
pub use lexicon::{ArgumentCategory, Lexicon, LexiconError, WhKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Result of running one utterance through the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub analysis: Analysis,
    pub classification: Classification,
    pub argument: Result<Argument, ExtractError>,
}

/// A lexicon plus the three pipeline stages.
#[derive(Debug, Clone)]
pub struct Engine {
    lexicon: Lexicon,
}

impl Engine {
    pub fn new(lexicon: Lexicon) -> Self {
        Engine { lexicon }
    }

    pub fn builtin() -> Self {
        Engine::new(Lexicon::builtin())
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn analyze(&self, text: &str) -> Result<Analysis, AnalyzeError> {
        analyze(&self.lexicon, text)
    }

    pub fn classify(&self, text: &str) -> Result<Classification, Error> {
        let a = self.analyze(text)?;
        Ok(classify(&self.lexicon, &a)?)
    }

    pub fn process(&self, text: &str) -> Result<Outcome, Error> {
        let analysis = self.analyze(text)?;
        let classification = classify(&self.lexicon, &analysis)?;
        let argument = extract(&self.lexicon, &analysis, &classification);
        Ok(Outcome {
            analysis,
            classification,
            argument,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_pairs() {
        let engine = Engine::builtin();
        let cases = [
            ("너 의료 봉사 신청 했어", 0, "의료 봉사 신청 여부"),
            ("버스로 올거야 택시로 올거야", 1, "버스 택시 중 올 것"),
            ("오늘은 누구 왔니", 2, "오늘 온 사람"),
            ("스톡옵션이 뭔 줄 아니", 2, "스톡옵션 의미"),
            ("어디 있니 로비야", 2, "있는 위치"),
            ("대구 몇 시에 도착이야", 2, "대구 도착 시간"),
            ("이 동네 갑자기 왜 이렇게 막히지", 2, "막히는 이유"),
            ("해외 송금 어떻게 하는 거야", 2, "해외 송금 방법"),
            ("태풍 오니까 밖에 나가지 마", 3, "밖에 나가지 않기"),
            ("안전띠 안매면 큰일나", 5, "안전띠 매기"),
            ("인적사항 확인 바랍니다", 4, "인적사항 확인하기"),
            ("이번 주 일정을 모두 말해", 2, "이번 주 모든 일정"),
            ("욕심부리지 말고 지금 팔아", 5, "지금 팔기"),
        ];
        for (text, label, arg) in cases {
            let out = engine.process(text).unwrap();
            assert_eq!(out.classification.label.code(), label, "{text}");
            assert_eq!(out.argument.unwrap().text, arg, "{text}");
        }
    }
}
