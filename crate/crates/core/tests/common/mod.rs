#![allow(dead_code)]

use std::path::{Path, PathBuf};

use qalt_core::corpus::{self, CorpusEntry};
use qalt_core::qacert;
use qalt_core::tangle::{enumerate_alternating_tangles, Tangle};
use qalt_core::{LinkDiagram, Sign};

pub fn entries() -> Vec<CorpusEntry> {
    corpus::builtin()
}

pub fn diagrams() -> Vec<(String, LinkDiagram)> {
    entries().into_iter().map(|e| (e.meta.name, e.diagram)).collect()
}

pub fn kink() -> LinkDiagram {
    LinkDiagram::parse_pd("X[1,1,2,2]").unwrap()
}

/// Positive and negative reduced connected alternating tangles.
pub fn tangles(max: usize) -> Vec<Tangle> {
    let mut all = enumerate_alternating_tangles(max, Sign::Positive).unwrap();
    let neg: Vec<Tangle> = all.iter().map(Tangle::mirror).collect();
    all.extend(neg);
    all
}

/// First crossing at which the diagram certifies.
pub fn qa_crossing(d: &LinkDiagram) -> usize {
    (0..d.crossing_count())
        .find(|&c| qacert::certify_at(d, c, qacert::DEFAULT_BUDGET).is_ok())
        .expect("diagram has a quasi-alternating crossing")
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The bundled tangle files.
pub fn tangle_files() -> Vec<(String, Tangle)> {
    corpus::load_tangles(&corpus_dir().join("tangles"))
        .unwrap()
        .into_iter()
        .map(|(p, t)| (p.file_stem().unwrap().to_string_lossy().into_owned(), t.unwrap()))
        .collect()
}

/// Extensions of 8_21 by the bundled 5- and 6-crossing tangles.
pub fn extended() -> Vec<(String, LinkDiagram)> {
    let l = corpus::braid_8_21().unwrap();
    let c = qa_crossing(&l);
    tangle_files()
        .into_iter()
        .filter(|(_, t)| t.crossing_count() >= 5)
        .map(|(name, t)| {
            let (d, _, _) = qacert::extend(&l, c, &t).unwrap();
            (format!("8_21 <- {name}"), d)
        })
        .collect()
}
