use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigInt;
use qalt_core::bracket::{self, bracket, kauffman_bracket};
use qalt_core::corpus::{self, CorpusEntry};
use qalt_core::qacert::{self, Certifier, DEFAULT_BUDGET};
use qalt_core::tait::{build_tait, Shading};
use qalt_core::tangle::{self, enumerate_alternating_tangles, CrossingClass, Direction, Tangle, TangleSign};
use qalt_core::{LaurentPoly, LinkDiagram, Sign, SmoothingKind, Var};
use qalt_verify::Criterion;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The bundled corpus as read from disk.
fn entries() -> Vec<CorpusEntry> {
    corpus::load_dir(&corpus_dir()).unwrap().into_iter().map(Result::unwrap).collect()
}

fn tangle_files() -> Vec<(PathBuf, Tangle)> {
    corpus::load_tangles(&corpus_dir().join("tangles")).unwrap().into_iter().map(|(p, t)| (p, t.unwrap())).collect()
}

fn both_signs(max: usize) -> Vec<Tangle> {
    let mut all = enumerate_alternating_tangles(max, Sign::Positive).unwrap();
    let neg: Vec<Tangle> = all.iter().map(Tangle::mirror).collect();
    all.extend(neg);
    all
}

fn qa_crossings(d: &LinkDiagram) -> Vec<usize> {
    (0..d.crossing_count()).filter(|&c| qacert::certify_at(d, c, DEFAULT_BUDGET).is_ok()).collect()
}

fn entry(name: &str) -> LinkDiagram {
    entries().into_iter().find(|e| e.meta.name == name).unwrap().diagram
}

/// Corpus diagrams plus extensions of 8_21 by the bundled tangle files and
/// one doubly extended 14-crossing diagram.
fn all_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = entries().into_iter().map(|e| (e.meta.name, e.diagram)).collect();
    let l = entry("knot_8_21");
    let c = qa_crossings(&l)[0];
    for (p, t) in tangle_files() {
        let (d, image, _) = qacert::extend(&l, c, &t).unwrap();
        if t.crossing_count() == 5 && !out.iter().any(|(n, _)| n.starts_with("14:")) {
            let three = enumerate_alternating_tangles(3, Sign::Positive).unwrap();
            let t3 = three.iter().find(|t| t.crossing_count() == 3).unwrap();
            let t3 = if qacert::extend(&d, image[0], t3).is_ok() { t3.clone() } else { t3.mirror() };
            let (d14, _, _) = qacert::extend(&d, image[0], &t3).unwrap();
            out.push((format!("14: 8_21 <- {} <- {t3}", p.display()), d14));
        }
        out.push((format!("8_21 <- {}", p.display()), d));
    }
    out
}

#[test]
fn criterion_1_bracket_axioms() {
    let mut c = Criterion::new(1, "bracket axioms and skein relation", "exact", secs(10));
    let one = LaurentPoly::one(Var::A);
    let delta = LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)]);
    c.check(bracket(&LinkDiagram::unknot()) == one, || "<O> != 1".into());
    let diagrams = all_diagrams();
    let mut crossings = 0;
    for (name, d) in &diagrams {
        let b = bracket(d);
        let with_loop = LinkDiagram::parse_pd(&format!("{} O", d.to_pd())).unwrap();
        c.check(bracket(&with_loop) == &delta * &b, || format!("{name}: loop rule"));
        for x in 0..d.crossing_count() {
            crossings += 1;
            let z = bracket(&d.smooth(x, SmoothingKind::Zero).unwrap());
            let i = bracket(&d.smooth(x, SmoothingKind::Infinity).unwrap());
            c.check(b == &z.shift(1) + &i.shift(-1), || format!("{name} @{x}: skein relation"));
        }
    }
    c.note(format!("{} diagrams up to {} crossings, skein checked at {crossings} crossings", diagrams.len(), diagrams.iter().map(|(_, d)| d.crossing_count()).max().unwrap()));
    c.finish();
}

#[test]
fn criterion_2_triple_determinant() {
    let mut c = Criterion::new(2, "|V(-1)| = spanning-tree det = Laplacian det, both shadings", "exact", secs(30));
    let diagrams: Vec<_> = all_diagrams().into_iter().filter(|(_, d)| d.crossing_count() <= 14).collect();
    for (name, d) in &diagrams {
        let det = bracket::determinant(d).unwrap();
        if d.is_split() {
            c.check(det == BigInt::from(0), || format!("{name}: split diagram with det {det}"));
            continue;
        }
        c.check(qacert::det_laplacian(d).unwrap() == det, || format!("{name}: Laplacian"));
        for s in [Shading::Class0, Shading::Class1] {
            let g = build_tait(d, s).unwrap();
            let trees = BigInt::from(g.det_from_trees().unwrap());
            c.check(trees == det, || format!("{name} {s:?}: trees {trees} vs {det}"));
            let lap = g.det_from_laplacian().unwrap();
            c.check(lap == det, || format!("{name} {s:?}: Laplacian {lap} vs {det}"));
        }
    }
    c.note(format!("{} diagrams, largest {} crossings", diagrams.len(), diagrams.iter().map(|(_, d)| d.crossing_count()).max().unwrap()));
    c.finish();
}

#[test]
fn criterion_3_alternating_baseline() {
    let mut c = Criterion::new(3, "reduced alternating prime: signs alternate, span = crossings, non-torus gap-free", "exact", secs(10));
    let mut n = 0;
    for e in entries() {
        let d = &e.diagram;
        if !(e.meta.alternating && e.meta.prime && d.is_alternating() && d.is_reduced() && !d.is_split()) {
            continue;
        }
        n += 1;
        let v = bracket::jones(d).unwrap();
        let g = v.gap_report().unwrap();
        let name = &e.meta.name;
        c.check(g.sign_alternating, || format!("{name}: signs {v}"));
        c.check(v.span().unwrap() == d.crossing_count() as i64, || format!("{name}: span {} vs {}", v.span().unwrap(), d.crossing_count()));
        if !e.meta.torus_2n {
            c.check(!g.has_gap(), || format!("{name}: gaps {:?}", g.gaps));
        }
    }
    c.note(format!("{n} diagrams"));
    c.finish();
}

#[test]
fn criterion_4_certification() {
    let mut c = Criterion::new(4, "certify unknot, alternating corpus, 8_20, 8_21 and verify", "exact, budget 100000 nodes each", secs(60));
    let mut total = 0;
    for e in entries() {
        let wanted = e.meta.name == "unknot" || e.meta.alternating || e.meta.name == "knot_8_20" || e.meta.name == "knot_8_21";
        if !wanted {
            continue;
        }
        let mut cert = Certifier::new(DEFAULT_BUDGET);
        let name = e.meta.name.clone();
        match cert.certify(&e.diagram) {
            Ok(x) => {
                c.check(qacert::verify_certificate(&x).is_ok(), || format!("{name}: verification"));
                c.check(cert.nodes_used() <= DEFAULT_BUDGET, || format!("{name}: {} nodes", cert.nodes_used()));
                if !e.meta.alternating {
                    c.note(format!("{name}: {} search nodes, certificate of {} nodes", cert.nodes_used(), x.root.size()));
                }
            }
            Err(err) => {
                c.check(false, || format!("{name}: {err}"));
            }
        }
        total += cert.nodes_used();
    }
    c.note(format!("{total} search nodes in total"));
    c.finish();
}

/// (name, diagram, crossings) for the additivity and certification suites.
fn product_bases() -> Vec<(String, LinkDiagram, Vec<usize>)> {
    let trefoil = entry("trefoil_left");
    let pretzel = entry("pretzel_2_1_m3");
    let k821 = entry("knot_8_21");
    vec![
        ("trefoil".into(), trefoil.clone(), qa_crossings(&trefoil)),
        ("P(2,1,-3)".into(), pretzel.clone(), qa_crossings(&pretzel)[..1].to_vec()),
        ("8_21".into(), k821.clone(), qa_crossings(&k821)[..1].to_vec()),
    ]
}

#[test]
fn criterion_5_additivity_suite() {
    let mut c = Criterion::new(5, "det additivity and x/y identities on extensions by tangles <= 5", "exact integers", secs(300));
    let tangles = both_signs(5);
    let mut cases = 0;
    for (name, l, crossings) in product_bases() {
        for &x in &crossings {
            for t in &tangles {
                cases += 1;
                let (_, _, shading) = qacert::extend(&l, x, t).unwrap();
                let r = qacert::lemma33_verify(&l, x, t, shading).unwrap();
                c.check(r.records.iter().all(|r| r.holds), || format!("{name} @{x} <- {t}: additivity"));
                c.check(r.total_identity, || format!("{name} @{x} <- {t}: det(L') = x det + y det"));
                c.check(r.records.iter().all(|r| r.contract_identity && r.delete_identity), || format!("{name} @{x} <- {t}: x_e/y_e"));
            }
        }
    }
    c.note(format!("{cases} (link, crossing, tangle) cases over {} tangles", tangles.len()));
    c.finish();
}

#[test]
fn criterion_6_theorem1_suite() {
    let mut c = Criterion::new(6, "certify_at succeeds at every tangle-image crossing", "exact, budget 100000 nodes per crossing", secs(900));
    let tangles = both_signs(5);
    let (mut crossings_checked, mut structural) = (0, 0);
    for (name, l, crossings) in product_bases() {
        for &x in &crossings {
            for t in &tangles {
                let (_, _, shading) = qacert::extend(&l, x, t).unwrap();
                let r = qacert::theorem1_verify(&l, x, t, shading, DEFAULT_BUDGET).unwrap();
                crossings_checked += r.results.len();
                structural += r.structural_failures;
                c.check(r.all_certified(), || format!("{name} @{x} <- {t}: {:?}", r.results));
            }
        }
    }
    c.note(format!("{crossings_checked} image crossings certified, {structural} structural failures"));
    c.finish();
}

fn a(terms: impl IntoIterator<Item = (i64, i64)>) -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, terms)
}

#[test]
fn criterion_7_tangle_properties() {
    let mut c = Criterion::new(7, "smoothing offsets, positive tangle coefficients, twist closed forms", "exact", secs(300));
    let tangles = both_signs(6);

    let (mut p41, mut p41_fail, mut literal) = (0, 0, 0);
    for t in tangles.iter().filter(|t| !t.is_twist()) {
        for x in 0..t.crossing_count() {
            if t.classify_crossing(x).unwrap() != CrossingClass::Nontrivial {
                continue;
            }
            let r = tangle::prop41_check(t, x).unwrap();
            p41 += 1;
            literal += usize::from(r.leading_trailing);
            if !c.check(r.passes, || format!("offsets {t} @{x}: F {:?} G {:?}", r.f, r.g)) {
                p41_fail += 1;
            }
        }
    }
    c.note(format!("offsets: {p41} nontrivial crossings, {p41_fail} outside {{2, 6}}; top-of-F/bottom-of-G reading holds at {literal}"));

    let (mut l43, mut l43_fail, mut weak) = (0, 0, 0);
    for t in tangles.iter().filter(|t| t.sign() == TangleSign::Positive) {
        let r = tangle::lemma43_check(t).unwrap();
        l43 += 1;
        let weak_ok = r.f_alternating && r.g_alternating && r.same_sign && !r.common_exponents.is_empty() && r.max_gap_f <= 8 && r.max_gap_g <= 8;
        weak += usize::from(weak_ok);
        if !c.check(r.passes, || format!("coefficients {t}: f = {}, g = {}", r.f, r.g)) {
            l43_fail += 1;
        }
    }
    c.note(format!("coefficients: {l43} positive tangles, {l43_fail} without an identical common term; shared-exponent reading holds for {weak}"));

    for n in 1..=10i64 {
        let alt = |k: i64| if k % 2 == 0 { 1 } else { -1 };
        let v = Tangle::twist(n as usize, Direction::Vertical, Sign::Positive).unwrap().bracket_decompose().unwrap();
        c.check(v.f == a([(n - 1, 1)]), || format!("vertical {n}: f = {}", v.f));
        c.check(v.g == a((0..n).map(|k| (n - 1 - 4 * k, alt(k)))), || format!("vertical {n}: g = {}", v.g));
        let h = Tangle::twist(n as usize, Direction::Horizontal, Sign::Positive).unwrap().bracket_decompose().unwrap();
        c.check(h.g == a([(1 - n, 1)]), || format!("horizontal {n}: g = {}", h.g));
        c.check(h.f == a((0..n).map(|k| (1 - n + 4 * k, alt(k)))), || format!("horizontal {n}: f = {}", h.f));
        for t in [Tangle::twist(n as usize, Direction::Vertical, Sign::Positive).unwrap(), Tangle::twist(n as usize, Direction::Horizontal, Sign::Positive).unwrap()] {
            let p = t.bracket_decompose().unwrap();
            c.check(kauffman_bracket(&t.numerator()).unwrap() == p.numerator(), || format!("twist {n}: numerator closure"));
            c.check(kauffman_bracket(&t.denominator()).unwrap() == p.denominator(), || format!("twist {n}: denominator closure"));
        }
    }
    c.finish();
}

#[test]
fn criterion_8_gap_preservation() {
    let mut c = Criterion::new(8, "gap-free bases stay gap-free; gap k bases stay within k", "exact", secs(300));
    let tangles = both_signs(5);
    let (mut free, mut gapped) = (0, 0);
    for e in entries().into_iter().filter(|e| e.meta.crossings > 0) {
        let l = &e.diagram;
        let Some(&x) = qa_crossings(l).first() else { continue };
        let base = bracket::jones(l).unwrap().gap_report().unwrap();
        if base.has_gap() {
            gapped += 1;
        } else {
            free += 1;
        }
        let mut worst = 0;
        for t in &tangles {
            let (_, _, shading) = qacert::extend(l, x, t).unwrap();
            let r = qacert::gap_preservation_verify(l, x, t, shading).unwrap();
            worst = worst.max(r.extended_max_gap);
            let ok = if base.has_gap() { r.extended_max_gap <= base.max_gap } else { r.extended_max_gap == 0 };
            c.check(ok && r.passes, || format!("{} @{x} <- {t}: base gap {}, extension gap {}", e.meta.name, base.max_gap, r.extended_max_gap));
        }
        if base.has_gap() {
            c.note(format!("{}: base max gap {}, extensions at most {worst}", e.meta.name, base.max_gap));
        }
    }
    c.check(free > 0 && gapped > 0, || "need both gap-free and gapped bases".into());
    c.note(format!("{free} gap-free bases, {gapped} gapped bases, {} tangles each", tangles.len()));
    c.finish();
}

#[test]
fn criterion_9_extensions_of_8_21_from_files() {
    let mut c = Criterion::new(9, "qalt extend on 8_21 with tangle files, then suites 5, 6, 8", "exact", secs(120));
    let link = corpus_dir().join("knot_8_21.pd");
    let l = corpus::read_diagram(&link).unwrap();
    let x = qa_crossings(&l)[0];
    let dir = tempfile::tempdir().unwrap();
    let mut sizes = Vec::new();
    for (path, t) in tangle_files().into_iter().filter(|(_, t)| t.crossing_count() >= 5) {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let out = dir.path().join(format!("{name}.pd"));
        let args = |cmd: &str| {
            vec!["qalt".to_string(), cmd.to_string(), link.display().to_string(), path.display().to_string(), "--crossing".into(), x.to_string()]
        };
        let mut extend = args("extend");
        extend.extend(["--out".to_string(), out.display().to_string()]);
        if !c.check(qalt_cli::run_args(extend) == 0, || format!("{name}: extend exit code")) {
            continue;
        }
        let d = corpus::read_diagram(&out).unwrap();
        let expected = l.crossing_count() - 1 + t.crossing_count();
        c.check(d.crossing_count() == expected, || format!("{name}: {} crossings", d.crossing_count()));
        sizes.push(d.crossing_count());
        let (lib, _, shading) = qacert::extend(&l, x, &t).unwrap();
        c.check(lib.canonical_key() == d.canonical_key(), || format!("{name}: file differs from library extension"));
        c.check(qacert::lemma33_verify(&l, x, &t, shading).unwrap().all_hold(), || format!("{name}: additivity"));
        c.check(qacert::theorem1_verify(&l, x, &t, shading, DEFAULT_BUDGET).unwrap().all_certified(), || format!("{name}: certification"));
        c.check(qacert::gap_preservation_verify(&l, x, &t, shading).unwrap().passes, || format!("{name}: gaps"));
        c.check(qalt_cli::run_args(args("verify-theorem1")) == 0, || format!("{name}: verify-theorem1 exit code"));
        c.check(qalt_cli::run_args(args("gapcheck")) == 0, || format!("{name}: gapcheck exit code"));
    }
    let thirteen = sizes.iter().filter(|&&n| n == 13).count();
    c.check(thirteen > 0, || "no 13-crossing extension".into());
    c.note(format!("{} extensions: {} with 12 crossings (5-crossing tangles), {thirteen} with 13 (6-crossing tangles)", sizes.len(), sizes.iter().filter(|&&n| n == 12).count()));
    c.finish();
}
