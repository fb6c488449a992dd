use proptest::prelude::*;
use unicode_normalization::UnicodeNormalization;

use saek_core::analyze::{normalize, strip_josa};
use saek_core::corpus::{self, AnnotationMatrix, CorpusEntry, Format};
use saek_core::hangul::{self, JamoTriple};
use saek_core::{check_contract, Engine, IntentLabel, Lexicon};

fn syllable() -> impl Strategy<Value = char> {
    (0xAC00u32..=0xD7A3).prop_map(|c| char::from_u32(c).unwrap())
}

fn hangul_word(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(syllable(), 1..=max).prop_map(|v| v.into_iter().collect())
}

/// Words drawn from the lexicon's own vocabulary, so generated sentences
/// hit the interesting rules instead of classifying as nothing.
fn vocab_word() -> impl Strategy<Value = String> {
    const WORDS: &[&str] = &[
        "밥",
        "먹었어",
        "오늘",
        "누구",
        "왔니",
        "어디",
        "있니",
        "뭐",
        "해",
        "줘",
        "마",
        "나가지",
        "말고",
        "지금",
        "팔아",
        "안",
        "안매면",
        "큰일나",
        "바랍니다",
        "확인",
        "버스로",
        "올거야",
        "택시로",
        "아니면",
        "왜",
        "막히지",
        "어떻게",
        "하는",
        "거야",
        "모두",
        "말해",
        "일정을",
        "몇",
        "시에",
        "도착이야",
        "알려줘",
        "않게",
        "좋겠어",
        "왔으면",
        "열어",
        "청소",
        "하지",
        "언제",
        "가",
        "먹을래",
        "사과야",
        "이거",
    ];
    prop_oneof![
        prop::sample::select(WORDS).prop_map(String::from),
        hangul_word(3),
    ]
}

fn sentence() -> impl Strategy<Value = String> {
    prop::collection::vec(vocab_word(), 1..6).prop_map(|v| v.join(" "))
}

fn label() -> impl Strategy<Value = IntentLabel> {
    (0u8..6).prop_map(|c| IntentLabel::from_code(c).unwrap())
}

fn entry() -> impl Strategy<Value = CorpusEntry> {
    (label(), sentence(), prop::option::of(sentence())).prop_map(|(label, utterance, gold)| {
        CorpusEntry {
            label,
            utterance,
            gold_argument: gold,
            gold_category: None,
            line_no: 0,
        }
    })
}

#[test]
fn jamo_round_trip_is_exhaustive() {
    for c in 0xAC00u32..=0xD7A3 {
        let ch = char::from_u32(c).unwrap();
        let t = hangul::decompose(ch).unwrap();
        assert_eq!(hangul::compose(t).unwrap(), ch);
    }
}

#[test]
fn decompose_agrees_with_nfd() {
    for c in (0xAC00u32..=0xD7A3).step_by(7) {
        let ch = char::from_u32(c).unwrap();
        let t = hangul::decompose(ch).unwrap();
        let nfd: Vec<u32> = ch.to_string().nfd().map(|c| c as u32).collect();
        assert_eq!(nfd[0], 0x1100 + t.lead as u32);
        assert_eq!(nfd[1], 0x1161 + t.vowel as u32);
        if t.tail == 0 {
            assert_eq!(nfd.len(), 2);
        } else {
            assert_eq!(nfd[2], 0x11A7 + t.tail as u32);
        }
    }
}

proptest! {
    #[test]
    fn compose_inverts_decompose(lead in 0u8..19, vowel in 0u8..21, tail in 0u8..28) {
        let t = JamoTriple::new(lead, vowel, tail);
        let c = hangul::compose(t).unwrap();
        prop_assert_eq!(hangul::decompose(c).unwrap(), t);
    }

    #[test]
    fn normalize_is_idempotent(s in sentence()) {
        let once = normalize(&s).unwrap();
        let twice = normalize(&once.text).unwrap();
        prop_assert_eq!(once.text, twice.text);
    }

    #[test]
    fn strip_josa_keeps_a_stem(s in hangul_word(5)) {
        let lex = Lexicon::builtin();
        let u = normalize(&s).unwrap();
        let t = strip_josa(&lex, &u.tokens[0]);
        prop_assert!(!t.stem.is_empty());
        let mut rebuilt = t.stem.clone();
        if let Some(p) = &t.particle {
            rebuilt.push_str(p);
        }
        prop_assert_eq!(rebuilt, s);
    }

    #[test]
    fn pipeline_never_panics(s in any::<String>()) {
        let engine = Engine::builtin();
        let _ = engine.process(&s);
    }

    #[test]
    fn classified_arguments_meet_contract(s in sentence()) {
        let engine = Engine::builtin();
        if let Ok(out) = engine.process(&s) {
            if let Ok(arg) = &out.argument {
                let quantified = out.analysis.quantifier.is_some();
                prop_assert_eq!(check_contract(engine.lexicon(), arg, quantified), Ok(()), "{}", s);
            }
            prop_assert_eq!(out.classification.wh.is_some(), out.classification.label == IntentLabel::Wh);
        }
    }

    #[test]
    fn stats_ignore_order(mut entries in prop::collection::vec(entry(), 1..40), seed in any::<u64>()) {
        let before = corpus::stats(&entries).unwrap();
        let n = entries.len();
        entries.rotate_left((seed as usize) % n);
        entries.reverse();
        let after = corpus::stats(&entries).unwrap();
        prop_assert_eq!(before.counts, after.counts);
        prop_assert_eq!(before.total, after.total);
        let sum: f64 = after.portions.iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn load_serialize_round_trip(entries in prop::collection::vec(entry(), 1..20)) {
        let lines: Vec<String> = entries.iter().map(|e| corpus::serialize(e, Format::Paired)).collect();
        let (loaded, errors) = corpus::load(lines.iter().map(String::as_str), Format::Paired);
        prop_assert!(errors.is_empty(), "{:?}", errors);
        for (i, (a, b)) in entries.iter().zip(&loaded).enumerate() {
            prop_assert_eq!(a.label, b.label);
            prop_assert_eq!(&a.utterance, &b.utterance);
            prop_assert_eq!(&a.gold_argument, &b.gold_argument);
            prop_assert_eq!(b.line_no, i + 1);
        }
        let again: Vec<String> = loaded.iter().map(|e| corpus::serialize(e, Format::Paired)).collect();
        prop_assert_eq!(lines, again);
    }

    #[test]
    fn kappa_ignores_column_order(
        items in prop::collection::vec(prop::collection::vec(0usize..4, 3), 2..12),
        perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
    ) {
        let m = AnnotationMatrix::from_labels(&items, 4).unwrap();
        let shuffled: Vec<Vec<u32>> = m
            .rows()
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        let m2 = AnnotationMatrix::new(shuffled).unwrap();
        match (corpus::fleiss_kappa(&m), corpus::fleiss_kappa(&m2)) {
            (Ok(a), Ok(b)) => prop_assert!((a - b).abs() < 1e-12),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn kappa_is_bounded_above(items in prop::collection::vec(prop::collection::vec(0usize..3, 4), 2..10)) {
        let m = AnnotationMatrix::from_labels(&items, 3).unwrap();
        if let Ok(k) = corpus::fleiss_kappa(&m) {
            prop_assert!(k <= 1.0 + 1e-12);
        }
    }
}
