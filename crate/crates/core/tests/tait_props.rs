mod common;

use qalt_core::bracket::determinant;
use qalt_core::qacert::det_laplacian;
use qalt_core::tait::{build_tait, Shading};
use qalt_core::Sign;
use num_bigint::BigInt;

#[test]
fn three_determinants_agree_under_both_shadings() {
    let all = common::diagrams().into_iter().chain(common::extended());
    for (name, d) in all.filter(|(_, d)| d.crossing_count() <= 14 && !d.is_split()) {
        let det = determinant(&d).unwrap();
        assert_eq!(det_laplacian(&d).unwrap(), det, "{name}");
        for s in [Shading::Class0, Shading::Class1] {
            let g = build_tait(&d, s).unwrap();
            assert_eq!(BigInt::from(g.det_from_trees().unwrap()), det, "{name} {s:?}");
            assert_eq!(g.det_from_laplacian().unwrap(), det, "{name} {s:?}");
        }
    }
}

#[test]
fn deletion_contraction_consistency() {
    for (name, d) in common::diagrams().into_iter().filter(|(_, d)| d.crossing_count() > 0) {
        let g = build_tait(&d, Shading::Class0).unwrap();
        let total = g.spanning_tree_counts().unwrap();
        for e in 0..g.edges.len() {
            let (with, without) = g.edge_split_counts(e).unwrap();
            let del = g.delete(e).unwrap().spanning_tree_counts().unwrap_or_default();
            assert_eq!(without, del, "{name} e{e}");
            if g.edges[e].u != g.edges[e].v {
                let shift = usize::from(g.edges[e].sign == Sign::Positive);
                assert_eq!(with, g.contract(e).unwrap().spanning_tree_counts().unwrap().shifted(shift), "{name} e{e}");
            }
            let n = total.s.len().max(with.s.len()).max(without.s.len());
            for v in 0..n {
                assert_eq!(total.get(v), with.get(v) + without.get(v), "{name} e{e} v{v}");
            }
        }
    }
}

#[test]
fn tree_counts_match_enumeration() {
    for (name, d) in common::diagrams().into_iter().filter(|(_, d)| (1..=10).contains(&d.crossing_count())) {
        for s in [Shading::Class0, Shading::Class1] {
            let g = build_tait(&d, s).unwrap();
            assert_eq!(g.spanning_tree_counts().unwrap(), g.enumerated_counts(), "{name} {s:?}");
        }
    }
}

/// At a quasi-alternating crossing the trees through the edge and the trees
/// avoiding it contribute alternating sums of the same nonzero sign.
#[test]
fn split_sums_share_sign_at_qa_crossings() {
    for (name, d) in common::diagrams().into_iter().filter(|(_, d)| d.crossing_count() > 0) {
        let c = common::qa_crossing(&d);
        let g = build_tait(&d, Shading::Class0).unwrap();
        let (with, without) = g.edge_split_counts(c).unwrap();
        let (a, b) = (with.alternating_sum, without.alternating_sum);
        assert!(a != 0 && b != 0 && a.signum() == b.signum(), "{name} @{c}: {a} {b}");
    }
}
