//! Standard diagrams: torus links, rational knots, pretzels, braid closures
//! of 8_20 and 8_21, and a few composites.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram, Sign};
use crate::tangle::{Direction, Tangle, TangleError};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: bad manifest: {source}")]
    Manifest { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Diagram { path: PathBuf, source: DiagramError },
    #[error("{path}: {source}")]
    Tangle { path: PathBuf, source: TangleError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusMeta {
    pub name: String,
    pub file: String,
    pub crossings: usize,
    pub components: usize,
    /// Determinant from knot tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_det: Option<u64>,
    pub alternating: bool,
    pub prime: bool,
    pub torus_2n: bool,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub meta: CorpusMeta,
    pub diagram: LinkDiagram,
}

/// Closure of the 2-braid `sigma_1^n`. Sign of `n` sets the handedness.
pub fn torus_2n(n: i32) -> LinkDiagram {
    let word = vec![n.signum(); n.unsigned_abs() as usize];
    LinkDiagram::from_braid(2, &word).expect("valid braid")
}

/// Rational tangle with continued-fraction coefficients, all positive:
/// a row of `a[0]` crossings, then alternately a column and a row added.
pub fn rational_tangle(coeffs: &[usize]) -> Tangle {
    let mut t = Tangle::twist(coeffs[0], Direction::Vertical, Sign::Positive).expect("n >= 1");
    for (i, &a) in coeffs.iter().enumerate().skip(1) {
        t = if i % 2 == 1 {
            t.stack(&Tangle::twist(a, Direction::Horizontal, Sign::Positive).expect("n >= 1"))
        } else {
            t.sum(&Tangle::twist(a, Direction::Vertical, Sign::Positive).expect("n >= 1"))
        };
    }
    t
}

/// Closure of a rational tangle chosen so the diagram is reduced.
pub fn rational_knot(coeffs: &[usize]) -> LinkDiagram {
    let t = rational_tangle(coeffs);
    let n = t.numerator();
    if n.is_reduced() { n } else { t.denominator() }
}

/// Pretzel link: columns of `|p|` crossings side by side, each column's
/// handedness given by the sign of `p`, closed by the numerator.
pub fn pretzel(columns: &[i32]) -> LinkDiagram {
    let col = |p: i32| {
        let s = if p > 0 { Sign::Positive } else { Sign::Negative };
        Tangle::twist(p.unsigned_abs() as usize, Direction::Horizontal, s).expect("nonzero column")
    };
    let mut t = col(columns[0]);
    for &p in &columns[1..] {
        t = t.sum(&col(p));
    }
    t.numerator()
}

pub fn braid_8_20() -> Result<LinkDiagram, DiagramError> {
    LinkDiagram::from_braid(3, &[1, 1, 1, -2, -1, -1, -1, -2])
}

pub fn braid_8_21() -> Result<LinkDiagram, DiagramError> {
    LinkDiagram::from_braid(3, &[1, 1, 1, 2, -1, -1, 2, 2])
}

pub fn trefoil() -> LinkDiagram {
    LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").expect("valid")
}

pub fn figure_eight() -> LinkDiagram {
    rational_knot(&[2, 2])
}

fn entry(name: &str, diagram: LinkDiagram, known_det: u64, prime: bool, torus_2n: bool) -> CorpusEntry {
    let meta = CorpusMeta {
        name: name.to_string(),
        file: format!("{name}.pd"),
        crossings: diagram.crossing_count(),
        components: diagram.components(),
        known_det: Some(known_det),
        alternating: diagram.is_alternating(),
        prime,
        torus_2n,
    };
    CorpusEntry { meta, diagram }
}

/// The bundled corpus.
pub fn builtin() -> Vec<CorpusEntry> {
    let mut out = vec![entry("unknot", LinkDiagram::unknot(), 1, true, false)];
    out.push(entry("trefoil_left", trefoil(), 3, true, true));
    out.push(entry("trefoil_right", trefoil().mirror(), 3, true, true));
    out.push(entry("hopf", torus_2n(2), 2, true, true));
    for n in 4..=7 {
        out.push(entry(&format!("torus_2_{n}"), torus_2n(n), n as u64, true, true));
    }
    out.push(entry("figure_eight", figure_eight(), 5, true, false));
    out.push(entry("knot_5_2", rational_knot(&[3, 2]), 7, true, false));
    out.push(entry("pretzel_2_1_m3", pretzel(&[2, 1, -3]), 7, true, false));
    out.push(entry("knot_6_2", rational_knot(&[3, 1, 2]), 11, true, false));
    out.push(entry("knot_7_4", rational_knot(&[3, 1, 3]), 15, true, false));
    out.push(entry("knot_8_20", braid_8_20().expect("valid braid"), 9, true, false));
    out.push(entry("knot_8_21", braid_8_21().expect("valid braid"), 15, true, false));
    out.push(entry("granny", trefoil().connected_sum(&trefoil()), 9, false, false));
    out.push(entry("square", trefoil().connected_sum(&trefoil().mirror()), 9, false, false));
    out.push(entry("trefoil_sum_figure_eight", trefoil().connected_sum(&figure_eight()), 15, false, false));
    out
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CorpusError + '_ {
    move |source| CorpusError::Io { path: path.to_path_buf(), source }
}

fn file_text(meta: &CorpusMeta, d: &LinkDiagram) -> String {
    let mut head = format!("# {}: crossings {}, components {}", meta.name, meta.crossings, meta.components);
    if let Some(det) = meta.known_det {
        head.push_str(&format!(", det {det}"));
    }
    format!("{head}\n{}\n", d.to_pd())
}

/// Writes one PD file per entry plus the manifest.
pub fn write_dir(dir: &Path, entries: &[CorpusEntry]) -> Result<(), CorpusError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for e in entries {
        let path = dir.join(&e.meta.file);
        fs::write(&path, file_text(&e.meta, &e.diagram)).map_err(io_err(&path))?;
    }
    let metas: Vec<&CorpusMeta> = entries.iter().map(|e| &e.meta).collect();
    let path = dir.join(MANIFEST);
    let json = serde_json::to_string_pretty(&metas).expect("metadata serializes");
    fs::write(&path, json + "\n").map_err(io_err(&path))
}

pub fn read_diagram(path: &Path) -> Result<LinkDiagram, CorpusError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    LinkDiagram::parse_pd(&text).map_err(|source| CorpusError::Diagram { path: path.to_path_buf(), source })
}

pub fn read_tangle(path: &Path) -> Result<Tangle, CorpusError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Tangle::parse(&text).map_err(|source| CorpusError::Tangle { path: path.to_path_buf(), source })
}

fn listing(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, CorpusError> {
    let mut out = Vec::new();
    for ent in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = ent.map_err(io_err(dir))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == ext) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// Entries of a corpus directory. With a manifest, its order and metadata
/// are used; otherwise every `.pd` file is loaded with inferred metadata.
/// Per-file failures are returned in place.
pub fn load_dir(dir: &Path) -> Result<Vec<Result<CorpusEntry, CorpusError>>, CorpusError> {
    let manifest = dir.join(MANIFEST);
    let metas: Vec<CorpusMeta> = if manifest.exists() {
        let text = fs::read_to_string(&manifest).map_err(io_err(&manifest))?;
        serde_json::from_str(&text).map_err(|source| CorpusError::Manifest { path: manifest.clone(), source })?
    } else {
        listing(dir, "pd")?
            .into_iter()
            .map(|p| {
                let file = p.file_name().unwrap().to_string_lossy().into_owned();
                let name = p.file_stem().unwrap().to_string_lossy().into_owned();
                CorpusMeta { name, file, crossings: 0, components: 0, known_det: None, alternating: false, prime: false, torus_2n: false }
            })
            .collect()
    };
    let inferred = !manifest.exists();
    Ok(metas
        .into_iter()
        .map(|mut meta| {
            let diagram = read_diagram(&dir.join(&meta.file))?;
            if inferred {
                meta.crossings = diagram.crossing_count();
                meta.components = diagram.components();
                meta.alternating = diagram.is_alternating();
            }
            Ok(CorpusEntry { meta, diagram })
        })
        .collect())
}

pub type LoadedTangle = (PathBuf, Result<Tangle, CorpusError>);

/// Tangle files (`.tangle`) of a directory, sorted by name.
pub fn load_tangles(dir: &Path) -> Result<Vec<LoadedTangle>, CorpusError> {
    Ok(listing(dir, "tangle")?.into_iter().map(|p| {
        let t = read_tangle(&p);
        (p, t)
    }).collect())
}
