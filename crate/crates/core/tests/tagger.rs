use slate_core::codec::{decode, encode_word_labels};
use slate_core::tagger::{
    predict_labels, sentences_from_regions, train_joint, train_sentence_classifier, Extractor, Invocations,
    JointExtractor, TaggerError, TrainConfig, TwoModelExtractor,
};
use slate_core::{LayoutMetadata, Label, Scheme, SentenceSpan, WritingRegion};

fn toy_corpus() -> Vec<WritingRegion> {
    let lb = |xs: &[usize]| LayoutMetadata { line_break_before: xs.iter().copied().collect(), bullet_before: xs.iter().copied().collect() };
    vec![
        WritingRegion::from_texts("a", "d1", "buy milk today . great meeting with ann . email bob".split(' '))
            .with_gold(vec![SentenceSpan::task(0, 4), SentenceSpan::nontask(4, 9), SentenceSpan::task(9, 11)])
            .with_layout(lb(&[4, 9])),
        WritingRegion::from_texts("b", "d1", "lovely weather . call mom".split(' '))
            .with_gold(vec![SentenceSpan::nontask(0, 3), SentenceSpan::task(3, 5)])
            .with_layout(lb(&[3])),
    ]
}

fn cfg() -> TrainConfig {
    TrainConfig { epochs: 5, seed: 7, ..Default::default() }
}

#[test]
fn joint_tagger_fits_training_data() {
    let corpus = toy_corpus();
    for scheme in [Scheme::SlateNti, Scheme::SlateBio, Scheme::SentenceBi] {
        let model = train_joint(&corpus, scheme, &cfg()).unwrap();
        for r in &corpus {
            let pred = predict_labels(&model, r);
            assert_eq!(pred, encode_word_labels(r, scheme).unwrap(), "{scheme} {}", r.region_id);
            assert!(decode(&pred).repairs.is_empty());
        }
    }
}

#[test]
fn training_is_deterministic() {
    let corpus = toy_corpus();
    let a = train_joint(&corpus, Scheme::SlateNti, &cfg()).unwrap();
    let b = train_joint(&corpus, Scheme::SlateNti, &cfg()).unwrap();
    assert_eq!(a, b);
    let bits = |m: &slate_core::tagger::TaggerModel| -> Vec<u64> {
        m.features.values().flatten().chain(m.transitions.iter().flatten()).map(|x| x.to_bits()).collect()
    };
    assert_eq!(bits(&a), bits(&b));
    let s = sentences_from_regions(&corpus);
    assert_eq!(train_sentence_classifier(&s, &cfg()).unwrap(), train_sentence_classifier(&s, &cfg()).unwrap());
}

#[test]
fn single_word_region_gets_a_beginning_label() {
    let model = train_joint(&toy_corpus(), Scheme::SlateNti, &cfg()).unwrap();
    for w in ["milk", "zzz", "."] {
        let r = WritingRegion::from_texts("x", "d", [w]);
        let l = predict_labels(&model, &r).labels()[0];
        assert!(l == Label::N || l == Label::T, "{w}: {l}");
    }
}

#[test]
fn unseen_text_decodes_without_repairs() {
    let corpus = toy_corpus();
    let text = "pick up kids . nice lunch today . send report to ann and bob".split(' ');
    let r = WritingRegion::from_texts("u", "d", text);
    for scheme in Scheme::ALL {
        let model = train_joint(&corpus, scheme, &cfg()).unwrap();
        assert!(decode(&predict_labels(&model, &r)).repairs.is_empty(), "{scheme}");
    }
}

#[test]
fn two_model_classifies_each_sentence_once() {
    let corpus = toy_corpus();
    let seg = train_joint(&corpus, Scheme::SentenceBi, &cfg()).unwrap();
    let cls = train_sentence_classifier(&sentences_from_regions(&corpus), &cfg()).unwrap();
    let two = TwoModelExtractor::new(&seg, &cls).unwrap();
    for r in &corpus {
        let mut calls = Invocations::default();
        let spans = two.extract(r, &mut calls);
        assert_eq!(spans.len(), r.gold_sentences.len());
        assert_eq!(calls.classifier, spans.len());
        assert_eq!(calls.joint, 0);
        assert!(calls.segmenter >= 1);
    }
}

#[test]
fn joint_extractor_counts_one_call_per_window() {
    let corpus = toy_corpus();
    let model = train_joint(&corpus, Scheme::SlateNti, &cfg()).unwrap();
    let joint = JointExtractor::new(&model).unwrap();
    let mut calls = Invocations::default();
    let spans = joint.extract(&corpus[0], &mut calls);
    assert_eq!(calls, Invocations { joint: 1, segmenter: 0, classifier: 0 });
    let got: Vec<_> = spans.iter().map(|s| (s.start, s.end, s.label)).collect();
    let want: Vec<_> = corpus[0].gold_sentences.iter().map(|s| (s.start, s.end, s.label)).collect();
    assert_eq!(got, want);
}

#[test]
fn scheme_checks() {
    let corpus = toy_corpus();
    let bi = train_joint(&corpus, Scheme::SentenceBi, &cfg()).unwrap();
    let nti = train_joint(&corpus, Scheme::SlateNti, &cfg()).unwrap();
    let cls = train_sentence_classifier(&sentences_from_regions(&corpus), &cfg()).unwrap();
    assert!(matches!(JointExtractor::new(&bi), Err(TaggerError::WrongScheme { .. })));
    assert!(matches!(TwoModelExtractor::new(&nti, &cls), Err(TaggerError::WrongScheme { .. })));
}

#[test]
fn bad_inputs_are_errors() {
    assert_eq!(train_joint(&[], Scheme::SlateNti, &cfg()), Err(TaggerError::EmptyCorpus));
    assert_eq!(train_sentence_classifier(&[], &cfg()), Err(TaggerError::EmptyCorpus));
    let bare = WritingRegion::from_texts("bare", "d", ["x"]);
    assert_eq!(train_joint(&[bare], Scheme::SlateNti, &cfg()), Err(TaggerError::Unannotated("bare".into())));
    let zero = TrainConfig { epochs: 0, ..cfg() };
    assert!(matches!(train_joint(&toy_corpus(), Scheme::SlateNti, &zero), Err(TaggerError::InvalidConfig(_))));
}
