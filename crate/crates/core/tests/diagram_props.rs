mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use qalt_core::bracket::bracket;
use qalt_core::{LaurentPoly, LinkDiagram, SmoothingKind};

/// PD text with arcs renamed by `perm` and crossings listed in `order`.
fn relabeled_pd(d: &LinkDiagram, perm: &[u32], order: &[usize]) -> String {
    let pd = d.to_pd();
    let xs: Vec<&str> = pd.split_whitespace().filter(|t| t.starts_with('X')).collect();
    let loops = pd.split_whitespace().filter(|t| *t == "O").count();
    let mut out: Vec<String> = order
        .iter()
        .map(|&i| {
            let inner = &xs[i][2..xs[i].len() - 1];
            let arcs: Vec<String> = inner.split(',').map(|a| perm[a.parse::<usize>().unwrap() - 1].to_string()).collect();
            format!("X[{}]", arcs.join(","))
        })
        .collect();
    out.extend(std::iter::repeat_n("O".to_string(), loops));
    out.join(" ")
}

#[test]
fn canonical_key_ignores_relabeling() {
    for (name, d) in common::diagrams() {
        let n = d.crossing_count();
        let arcs = 2 * n;
        let strategy = (Just((1..=arcs as u32).collect::<Vec<_>>()).prop_shuffle(), Just((0..n).collect::<Vec<_>>()).prop_shuffle());
        let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
        let key = d.canonical_key();
        runner
            .run(&strategy, |(perm, order)| {
                let e = LinkDiagram::parse_pd(&relabeled_pd(&d, &perm, &order)).unwrap();
                prop_assert_eq!(e.canonical_key(), key.clone());
                prop_assert_eq!(e.writhe(), d.writhe());
                Ok(())
            })
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn mirror_is_an_involution() {
    for (name, d) in common::diagrams().into_iter().chain(common::extended()) {
        let m = d.mirror();
        assert_eq!(m.writhe(), -d.writhe(), "{name}");
        assert_eq!(m.mirror().canonical_key(), d.canonical_key(), "{name}");
        assert_eq!(m.mirror(), d, "{name}");
    }
}

#[test]
fn smoothing_conserves_arcs_and_changes_components_by_one() {
    for (name, d) in common::diagrams() {
        for c in 0..d.crossing_count() {
            let z = d.smooth(c, SmoothingKind::Zero).unwrap();
            let i = d.smooth(c, SmoothingKind::Infinity).unwrap();
            for s in [&z, &i] {
                assert_eq!(s.crossing_count() + 1, d.crossing_count());
                LinkDiagram::parse_pd(&s.to_pd()).unwrap();
            }
            let k = d.components() as i64;
            let dz = z.components() as i64 - k;
            let di = i.components() as i64 - k;
            assert!(dz.abs() <= 1 && di.abs() <= 1, "{name} @{c}: {dz} {di}");
            assert!(dz.abs() == 1 || di.abs() == 1, "{name} @{c}: {dz} {di}");
        }
    }
}

#[test]
fn reduce_r1_bracket_identity() {
    let kink = common::kink();
    for (name, d) in common::diagrams() {
        let kinked = d.connected_sum(&kink).connected_sum(&kink.mirror()).connected_sum(&kink);
        assert_eq!(kinked.crossing_count(), d.crossing_count() + 3, "{name}");
        let (r, w) = kinked.reduce_r1();
        assert!(r.crossing_count() <= d.crossing_count(), "{name}");
        assert_eq!(w, kinked.writhe() - r.writhe(), "{name}");
        let lhs = bracket(&kinked);
        let rhs = &LaurentPoly::twist_factor(w) * &bracket(&r);
        assert_eq!(lhs, rhs, "{name}");
    }
}
