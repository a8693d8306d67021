mod common;

use qalt_core::bracket::kauffman_bracket;
use qalt_core::corpus;
use qalt_core::qacert::{self, certify_at, lemma33_verify, DEFAULT_BUDGET};
use qalt_core::tangle::{CrossingClass, Direction, Tangle, TangleSign};
use qalt_core::{Sign, SmoothingKind};

#[test]
fn closures_match_bracket_pairs() {
    for t in common::tangles(5) {
        let p = t.bracket_decompose().unwrap();
        assert_eq!(kauffman_bracket(&t.numerator()).unwrap(), p.numerator(), "{t}");
        assert_eq!(kauffman_bracket(&t.denominator()).unwrap(), p.denominator(), "{t}");
    }
}

#[test]
fn generated_tangles_are_reduced_connected_and_signed() {
    let pos = common::tangles(5).into_iter().filter(|t| t.sign() == TangleSign::Positive).count();
    assert_eq!(pos, 1 + 2 + 10 + 42 + 209);
    for t in common::tangles(5) {
        assert!(t.is_reduced() && t.is_connected() && t.is_alternating(), "{t}");
        assert!(matches!(t.sign(), TangleSign::Positive | TangleSign::Negative), "{t}");
        assert_eq!(Tangle::parse(&t.to_text()).unwrap(), t);
    }
}

/// Nontrivial crossings certify in both closures, trivial ones in exactly one.
#[test]
fn crossing_classes_match_closure_certification() {
    for t in common::tangles(4) {
        let (n, d) = (t.numerator(), t.denominator());
        for c in 0..t.crossing_count() {
            let qa = |l: &qalt_core::LinkDiagram| !l.is_split() && certify_at(l, c, DEFAULT_BUDGET).is_ok();
            let both = [qa(&n), qa(&d)];
            let expected = match t.classify_crossing(c).unwrap() {
                CrossingClass::Nontrivial => 2,
                CrossingClass::Trivial => 1,
                CrossingClass::Nugatory => 0,
            };
            assert_eq!(both.iter().filter(|&&b| b).count(), expected, "{t} @{c}");
        }
    }
}

#[test]
fn twist_smoothings_shorten_the_twist() {
    for n in 2..=6 {
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let t = Tangle::twist(n, dir, Sign::Positive).unwrap();
            assert!(t.is_twist());
            let shorter = Tangle::twist(n - 1, dir, Sign::Positive).unwrap().code();
            let hits = [SmoothingKind::Zero, SmoothingKind::Infinity]
                .iter()
                .filter(|&&k| t.smooth(0, k, true).unwrap().tangle.code() == shorter)
                .count();
            assert_eq!(hits, 1, "{n} {dir:?}");
        }
    }
}

/// Replacing a crossing of P(2,1,-3) by a five-crossing tangle gives ten
/// crossings with additive determinants at every tangle crossing.
#[test]
fn pretzel_extensions_are_additive() {
    let l = corpus::pretzel(&[2, 1, -3]);
    let c = common::qa_crossing(&l);
    let five: Vec<Tangle> = common::tangles(5).into_iter().filter(|t| t.crossing_count() == 5).collect();
    assert!(!five.is_empty());
    for t in five {
        let (d, image, shading) = qacert::extend(&l, c, &t).unwrap();
        assert_eq!(d.crossing_count(), 10);
        assert_eq!(image.len(), 5);
        let r = lemma33_verify(&l, c, &t, shading).unwrap();
        assert!(r.records.iter().all(|x| x.holds), "{t}");
        assert!(r.all_hold(), "{t}");
    }
}
