mod common;

use handleknot::fixtures::cochran_orr_pattern;
use handleknot::freegroup::FreeWord;
use handleknot::obstructions::{analyze, combine_report, implication_edges, pattern_tests, Evidence, Level};
use handleknot::patterns::{
    classify_handlebody_pattern, classify_link_pattern, isthmus_word_test, rigid_obstruction, HandlebodyPattern, LinkPattern,
    PatternTag,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

fn evidence(level: Level) -> Evidence {
    Evidence {
        level,
        invariant: "test".into(),
        value: String::new(),
        citation: String::new(),
        conditional: false,
    }
}

fn levels_from_mask(mask: u8) -> Vec<Evidence> {
    Level::ALL
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, l)| evidence(l))
        .collect()
}

/// A pattern with determinant ±1: a Nielsen image of (t1, t2), sometimes
/// with a commutator spliced into w1.
fn rand_pattern(r: &mut StdRng) -> HandlebodyPattern {
    let (mut w1, w2) = common::rand_base_pair(r);
    if r.gen_bool(0.5) {
        let a = common::rand_word(r, 2, 3);
        let b = common::rand_word(r, 2, 3);
        w1 = w1.mul(&a.mul(&b).mul(&a.inverse()).mul(&b.inverse()));
    }
    let w0 = common::rand_word(r, 2, 4);
    HandlebodyPattern::new(w0, w1, w2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn handlebody_class_invariant_under_conjugation(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let h = rand_pattern(&mut r);
        let g1 = common::rand_word(&mut r, 2, 4);
        let g2 = common::rand_word(&mut r, 2, 4);
        let moved = HandlebodyPattern::new(
            g1.mul(&h.w0).mul(&g2.inverse()),
            h.link.w1().conjugate_by(&g1),
            h.link.w2().conjugate_by(&g2),
        )
        .unwrap();
        prop_assert_eq!(classify_handlebody_pattern(&h), classify_handlebody_pattern(&moved), "{:?} g1={} g2={}", h, g1, g2);
    }

    #[test]
    fn pattern_implications(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let h = rand_pattern(&mut r);
        let id = HandlebodyPattern::new(FreeWord::identity(2), h.link.w1().clone(), h.link.w2().clone()).unwrap();
        if classify_handlebody_pattern(&id) == PatternTag::Trivial {
            prop_assert_eq!(classify_link_pattern(&h.link), PatternTag::Trivial);
        }
        if rigid_obstruction(h.link.w1(), h.link.w2()) == PatternTag::Obstructed {
            prop_assert_eq!(classify_link_pattern(&h.link), PatternTag::NonTrivial);
        }
        let std = HandlebodyPattern::new(h.w0.clone(), FreeWord::generator(2, 1), FreeWord::generator(2, 2)).unwrap();
        if isthmus_word_test(&h.w0) {
            prop_assert_eq!(classify_handlebody_pattern(&std), PatternTag::Trivial);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn combine_report_idempotent(mask in any::<u8>()) {
        let r = combine_report(levels_from_mask(mask), vec!["w".into()]);
        prop_assert_eq!(combine_report(r.evidence.clone(), r.warnings.clone()), r.clone());
        let knotted: Vec<Evidence> = r.knotted_levels().into_iter().map(evidence).collect();
        prop_assert_eq!(combine_report(knotted, Vec::new()).knotted_levels(), r.knotted_levels());
    }

    #[test]
    fn combine_report_monotone(a in any::<u8>(), b in any::<u8>()) {
        let small = combine_report(levels_from_mask(a & b), Vec::new());
        let big = combine_report(levels_from_mask(a), Vec::new());
        for l in small.knotted_levels() {
            prop_assert!(big.knotted(l));
        }
    }
}

#[test]
fn only_cycle_is_level_four() {
    let edges = implication_edges();
    assert_eq!(edges.len(), 11);
    for &(a, b) in &edges {
        if edges.contains(&(b, a)) {
            assert!([a, b].contains(&Level::S4) && [a, b].contains(&Level::L4), "{a} <-> {b}");
        }
    }
    let reach = |from: Level| combine_report(vec![evidence(from)], Vec::new()).knotted_levels();
    for l in Level::ALL {
        for m in reach(l) {
            if m != l && reach(m).contains(&l) {
                assert!(l.k() == 4 && m.k() == 4, "{l} and {m} on a cycle");
            }
        }
    }
}

#[test]
fn pattern_evidence_is_conditional() {
    let ev = pattern_tests(&cochran_orr_pattern());
    assert!(!ev.is_empty());
    assert!(ev.iter().all(|e| e.conditional));
    let r = combine_report(ev, Vec::new());
    assert!(r.knotted(Level::L3) && r.knotted(Level::S3));
}

#[test]
fn link_pattern_determinant_checked() {
    let w = |l: &[i32]| FreeWord::from_letters(2, l).unwrap();
    assert!(LinkPattern::new(w(&[1, 1]), w(&[2])).is_err());
    assert!(LinkPattern::new(w(&[1, 2]), w(&[2])).is_ok());
}

#[test]
fn pattern_joins_diagram_report() {
    let d = handleknot::fixtures::build_family(handleknot::fixtures::Family::Gamma1, 3).unwrap();
    let r = analyze(&d, &[3], Some(&cochran_orr_pattern())).unwrap();
    assert_eq!(r.patterns.len(), 4);
    assert!(r.knotted(Level::L3));
}
