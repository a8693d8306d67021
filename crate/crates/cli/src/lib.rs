//! Command-line front end: invariants, certification, extension and batch
//! suites over PD files.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qalt_core::bracket::{self, BracketError};
use qalt_core::corpus::{self, CorpusEntry, CorpusError};
use qalt_core::qacert::{self, CertifyError, Certifier, DEFAULT_BUDGET};
use qalt_core::tait::{build_tait, Shading, TaitError};
use qalt_core::tangle::{self, CrossingClass, Tangle, TangleError, TangleSign, GENERATION_LIMIT};
use qalt_core::{DiagramError, GapReport, LinkDiagram, PolyError, Sign};

mod report;

use report::*;

#[derive(Parser, Debug)]
#[command(name = "qalt", version, about = "Kauffman bracket, determinants and quasi-alternating certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file for the command's artifact (certificate, PD code, report).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Positive,
    Negative,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    InvariantAgreement,
    Prop41,
    Lemma43,
    Theorem1,
    ConjectureAudit,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Budget {
    /// Search node budget.
    #[arg(long, env = "QALT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(clap::Args, Debug, Clone)]
struct Extension {
    link: PathBuf,
    tangle: PathBuf,
    #[arg(long)]
    crossing: usize,
    /// Fix the checkerboard class (0 or 1) instead of choosing the one the
    /// tangle fits.
    #[arg(long)]
    shading: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket, Jones polynomial, determinants and gap report.
    Invariants { path: PathBuf },
    /// Search for a quasi-alternating certificate.
    Certify {
        path: PathBuf,
        /// Smooth this crossing at the root.
        #[arg(long)]
        crossing: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Replace a crossing by a tangle.
    Extend(Extension),
    /// Certify the extension at every crossing of the inserted tangle.
    VerifyTheorem1 {
        #[command(flatten)]
        ext: Extension,
        #[command(flatten)]
        budget: Budget,
    },
    /// Compare Jones gaps of a link and its extension.
    Gapcheck(Extension),
    /// Write reduced connected alternating tangles as files.
    GenTangles {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Positive)]
        sign: SignArg,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run a verification suite over a corpus directory.
    Batch {
        dir: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Use generated tangles up to this crossing count instead of tangle files.
        #[arg(long)]
        generate: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
}

/// Error carrying the process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    const PROPERTY: u8 = 1;
    const PARSE: u8 = 2;
    const INCONCLUSIVE: u8 = 3;
    const STRUCTURAL: u8 = 4;
    const TYPE_MISMATCH: u8 = 5;

    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        let code = match &e {
            CorpusError::Tangle { source: TangleError::TypeMismatch { .. }, .. } => Failure::TYPE_MISMATCH,
            _ => Failure::PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<TangleError> for Failure {
    fn from(e: TangleError) -> Self {
        let code = match e {
            TangleError::TypeMismatch { .. } => Failure::TYPE_MISMATCH,
            _ => Failure::PARSE,
        };
        let message = match &e {
            TangleError::TypeMismatch { tangle, edge } => format!(
                "{e}: a {tangle} tangle extends only a crossing whose Tait edge has the same sign, here {edge:?}"
            ),
            _ => e.to_string(),
        };
        Failure::new(code, message)
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        let code = match &e {
            CertifyError::Inconclusive { .. } => Failure::INCONCLUSIVE,
            CertifyError::Structural(_) => Failure::STRUCTURAL,
            CertifyError::Tangle(t) => return Failure::from(t.clone()),
            _ => Failure::PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

macro_rules! parse_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new(Failure::PARSE, e.to_string())
            }
        }
    )*};
}

parse_failure!(DiagramError, BracketError, TaitError, PolyError);

type Outcome = Result<u8, Failure>;

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Failure::PARSE } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Invariants { path } => cmd_invariants(cli, path),
        Command::Certify { path, crossing, budget } => cmd_certify(cli, path, *crossing, budget.budget),
        Command::Extend(ext) => cmd_extend(cli, ext),
        Command::VerifyTheorem1 { ext, budget } => cmd_verify_theorem1(cli, ext, budget.budget),
        Command::Gapcheck(ext) => cmd_gapcheck(cli, ext),
        Command::GenTangles { max, sign, out_dir } => cmd_gen_tangles(cli, *max, *sign, out_dir),
        Command::Batch { dir, suite, generate, budget } => cmd_batch(cli, dir, *suite, *generate, budget.budget),
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", path.display())))
}

/// Prints the text or JSON form and writes the JSON form to `--out`.
fn emit<T: Serialize + fmt::Display>(cli: &Cli, value: &T) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(value).expect("reports serialize");
    match cli.format {
        Format::Text => print!("{value}"),
        Format::Json => println!("{json}"),
    }
    if let Some(out) = &cli.out {
        write_out(out, &(json + "\n"))?;
    }
    Ok(())
}

fn invariants(d: &LinkDiagram, name: &str) -> Result<InvariantsReport, Failure> {
    let br = bracket::bracket(d);
    let jones = bracket::jones(d)?;
    let det_jones = jones.determinant();
    let tree_det = |s: Shading| -> Result<u128, Failure> { Ok(build_tait(d, s)?.det_from_trees()?) };
    let (det_trees, det_laplacian) = if d.is_split() {
        (0, 0.into())
    } else {
        let (t0, t1) = (tree_det(Shading::Class0)?, tree_det(Shading::Class1)?);
        if t0 != t1 {
            return Err(Failure::new(Failure::PROPERTY, format!("tree determinants differ between shadings: {t0} and {t1}")));
        }
        (t0, qacert::det_laplacian(d)?)
    };
    let agree = det_jones == det_laplacian && det_jones == det_trees.into();
    let gaps = jones.gap_report()?;
    let certification = (det_jones == 0.into()).then(|| "refused: det 0, not quasi-alternating".to_string());
    Ok(InvariantsReport {
        name: name.to_string(),
        crossings: d.crossing_count(),
        components: d.components(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        bracket: br.to_string(),
        jones: jones.to_string(),
        det_jones: det_jones.to_string(),
        det_trees: det_trees.to_string(),
        det_laplacian: det_laplacian.to_string(),
        det_agree: agree,
        span: jones.span()?,
        gaps,
        certification,
    })
}

fn cmd_invariants(cli: &Cli, path: &Path) -> Outcome {
    let d = corpus::read_diagram(path)?;
    let r = invariants(&d, &path.display().to_string())?;
    emit(cli, &r)?;
    Ok(if r.det_agree { 0 } else { Failure::PROPERTY })
}

fn cmd_certify(cli: &Cli, path: &Path, crossing: Option<usize>, budget: usize) -> Outcome {
    let d = corpus::read_diagram(path)?;
    let mut certifier = Certifier::new(budget);
    let cert = match crossing {
        Some(c) => certifier.certify_at(&d, c),
        None => certifier.certify(&d),
    }?;
    if let Err(v) = qacert::verify_certificate(&cert) {
        return Err(Failure::new(Failure::PROPERTY, format!("certificate failed verification: {v:?}")));
    }
    let json = cert.to_json();
    if let Some(out) = &cli.out {
        write_out(out, &(json.clone() + "\n"))?;
    }
    match cli.format {
        Format::Json => println!("{json}"),
        Format::Text => {
            println!("{}: quasi-alternating diagram", path.display());
            println!("det {}", cert.root.det);
            if let Some(c) = cert.root.crossing {
                println!("root crossing {c}");
            }
            println!("certificate nodes {}, depth {}, search nodes {}", cert.root.size(), cert.root.depth(), certifier.nodes_used());
            println!("certificate verified");
        }
    }
    Ok(0)
}

fn load_extension(ext: &Extension) -> Result<(LinkDiagram, Tangle, Shading), Failure> {
    let l = corpus::read_diagram(&ext.link)?;
    let t = corpus::read_tangle(&ext.tangle)?;
    let shading = match ext.shading {
        None => qacert::extend(&l, ext.crossing, &t)?.2,
        Some(0) => Shading::Class0,
        Some(1) => Shading::Class1,
        Some(k) => return Err(Failure::new(Failure::PARSE, format!("shading must be 0 or 1, got {k}"))),
    };
    Ok((l, t, shading))
}

fn cmd_extend(cli: &Cli, ext: &Extension) -> Outcome {
    let (l, t, shading) = load_extension(ext)?;
    let ins = tangle::insert(&l, ext.crossing, &t, shading)?;
    let pd = ins.diagram.to_pd();
    if let Some(out) = &cli.out {
        write_out(out, &format!("# extension of {} at crossing {}\n{pd}\n", ext.link.display(), ext.crossing))?;
    }
    let r = ExtendReport { pd, crossings: ins.diagram.crossing_count(), image: ins.image };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("serializes")),
        Format::Text => print!("{r}"),
    }
    Ok(0)
}

fn cmd_verify_theorem1(cli: &Cli, ext: &Extension, budget: usize) -> Outcome {
    let (l, t, shading) = load_extension(ext)?;
    let additivity = qacert::lemma33_verify(&l, ext.crossing, &t, shading)?;
    let theorem1 = qacert::theorem1_verify(&l, ext.crossing, &t, shading, budget)?;
    let code = if theorem1.structural_failures > 0 {
        Failure::STRUCTURAL
    } else if theorem1.inconclusive > 0 {
        Failure::INCONCLUSIVE
    } else if !additivity.all_hold() {
        Failure::PROPERTY
    } else {
        0
    };
    emit(cli, &Theorem1Output { additivity, theorem1 })?;
    Ok(code)
}

fn cmd_gapcheck(cli: &Cli, ext: &Extension) -> Outcome {
    let (l, t, shading) = load_extension(ext)?;
    let r = qacert::gap_preservation_verify(&l, ext.crossing, &t, shading)?;
    let passes = r.passes;
    emit(cli, &GapOutput(r))?;
    Ok(if passes { 0 } else { Failure::PROPERTY })
}

fn generated(max: usize, sign: SignArg) -> Result<Vec<Tangle>, Failure> {
    let mut out = Vec::new();
    if sign != SignArg::Negative {
        out.extend(tangle::enumerate_alternating_tangles(max, Sign::Positive)?);
    }
    if sign != SignArg::Positive {
        out.extend(tangle::enumerate_alternating_tangles(max, Sign::Negative)?);
    }
    Ok(out)
}

fn cmd_gen_tangles(cli: &Cli, max: usize, sign: SignArg, out_dir: &Path) -> Outcome {
    if max > GENERATION_LIMIT {
        return Err(Failure::new(Failure::PARSE, format!("max {max} exceeds the generation limit {GENERATION_LIMIT}")));
    }
    let tangles = generated(max, sign)?;
    fs::create_dir_all(out_dir).map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", out_dir.display())))?;
    let mut manifest = TangleManifest { max, sign: format!("{sign:?}").to_lowercase(), counts: vec![0; max + 1], total: 0, files: Vec::new() };
    for t in &tangles {
        let n = t.crossing_count();
        manifest.counts[n] += 1;
        let s = if t.sign() == TangleSign::Positive { "p" } else { "n" };
        let file = format!("t{n}{s}_{:05}.tangle", manifest.counts[n]);
        write_out(&out_dir.join(&file), &format!("# crossings {n}, {} tangle\n{}\n", t.sign(), t.to_text()))?;
        manifest.files.push(file);
    }
    manifest.total = tangles.len();
    let json = serde_json::to_string_pretty(&manifest).expect("serializes");
    write_out(&out_dir.join(corpus::MANIFEST), &(json.clone() + "\n"))?;
    match cli.format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{manifest}"),
    }
    Ok(0)
}

/// Tangles for batch suites: generated, or `.tangle` files in the
/// directory and its `tangles` subdirectory.
fn batch_tangles(dir: &Path, generate: Option<usize>, items: &mut Vec<BatchItem>) -> Result<Vec<(String, Tangle)>, Failure> {
    if let Some(max) = generate {
        if max > GENERATION_LIMIT {
            return Err(Failure::new(Failure::PARSE, format!("max {max} exceeds the generation limit {GENERATION_LIMIT}")));
        }
        return Ok(generated(max, SignArg::Both)?.into_iter().map(|t| (t.to_text(), t)).collect());
    }
    let mut out = Vec::new();
    for d in [dir.to_path_buf(), dir.join("tangles")] {
        if !d.is_dir() {
            continue;
        }
        for (path, t) in corpus::load_tangles(&d)? {
            match t {
                Ok(t) => out.push((path.display().to_string(), t)),
                Err(e) => items.push(BatchItem::error(path.display().to_string(), e.to_string())),
            }
        }
    }
    Ok(out)
}

fn batch_links(dir: &Path, items: &mut Vec<BatchItem>) -> Result<Vec<CorpusEntry>, Failure> {
    let mut out = Vec::new();
    for e in corpus::load_dir(dir)? {
        match e {
            Ok(e) => out.push(e),
            Err(e) => items.push(BatchItem::error(String::new(), e.to_string())),
        }
    }
    Ok(out)
}

fn agreement_item(e: &CorpusEntry) -> Result<BatchItem, Failure> {
    let r = invariants(&e.diagram, &e.meta.name)?;
    let mut problems = Vec::new();
    if !r.det_agree {
        problems.push(format!("dets differ: jones {}, trees {}, laplacian {}", r.det_jones, r.det_trees, r.det_laplacian));
    }
    if let Some(k) = e.meta.known_det {
        if r.det_jones != k.to_string() {
            problems.push(format!("det {} but tables give {k}", r.det_jones));
        }
    }
    if e.diagram.crossing_count() <= bracket::STATE_SUM_LIMIT
        && bracket::kauffman_bracket(&e.diagram)? != bracket::kauffman_bracket_skein(&e.diagram)
    {
        problems.push("state sum and skein recursion disagree".into());
    }
    Ok(if problems.is_empty() {
        BatchItem::pass(&e.meta.name, format!("det {}", r.det_jones))
    } else {
        BatchItem::fail(&e.meta.name, problems.join("; "))
    })
}

fn prop41_items(name: &str, t: &Tangle, items: &mut Vec<BatchItem>) -> Result<(), Failure> {
    if t.is_twist() || !matches!(t.sign(), TangleSign::Positive | TangleSign::Negative) {
        return Ok(());
    }
    for c in 0..t.crossing_count() {
        if t.classify_crossing(c)? != CrossingClass::Nontrivial {
            continue;
        }
        let r = tangle::prop41_check(t, c)?;
        let offsets = |o: Option<tangle::Offsets>| o.map_or("none".to_string(), |o| format!("top {} bottom {}", o.max, o.min));
        let detail = format!("crossing {c}: F {}, G {}", offsets(r.f), offsets(r.g));
        let item = format!("{name} @{c}");
        items.push(if r.passes { BatchItem::pass(item, detail) } else { BatchItem::fail(item, detail) });
    }
    Ok(())
}

fn lemma43_item(name: &str, t: &Tangle) -> Result<Option<BatchItem>, Failure> {
    let t = match t.sign() {
        TangleSign::Positive => t.clone(),
        TangleSign::Negative => t.mirror(),
        _ => return Ok(None),
    };
    let r = tangle::lemma43_check(&t)?;
    let detail = format!(
        "f = {}, g = {}, common terms {:?}, max gaps {} {}",
        r.f, r.g, r.common_terms, r.max_gap_f, r.max_gap_g
    );
    Ok(Some(if r.passes { BatchItem::pass(name, detail) } else { BatchItem::fail(name, detail) }))
}

/// Checks additivity and certification for every tangle at the first
/// quasi-alternating crossing of each certified knot with at most eight
/// crossings.
fn theorem1_items(links: &[CorpusEntry], tangles: &[(String, Tangle)], budget: usize, items: &mut Vec<BatchItem>) -> Result<(), Failure> {
    for e in links.iter().filter(|e| (1..=8).contains(&e.meta.crossings)) {
        let Some(c) = (0..e.diagram.crossing_count()).find(|&c| qacert::certify_at(&e.diagram, c, budget).is_ok()) else {
            items.push(BatchItem::skip(&e.meta.name, "no quasi-alternating crossing found"));
            continue;
        };
        for (tn, t) in tangles {
            let name = format!("{} @{c} <- {tn}", e.meta.name);
            let (_, _, shading) = match qacert::extend(&e.diagram, c, t) {
                Ok(x) => x,
                Err(err) => {
                    items.push(BatchItem::skip(name, err.to_string()));
                    continue;
                }
            };
            let a = qacert::lemma33_verify(&e.diagram, c, t, shading)?;
            let th = qacert::theorem1_verify(&e.diagram, c, t, shading, budget)?;
            let detail = format!(
                "{} crossings, additivity {}, certified {}/{}",
                a.records.len() + e.diagram.crossing_count() - 1,
                a.all_hold(),
                th.results.iter().filter(|r| r.is_ok()).count(),
                th.results.len()
            );
            items.push(if a.all_hold() && th.all_certified() { BatchItem::pass(name, detail) } else { BatchItem::fail(name, detail) });
        }
    }
    Ok(())
}

/// Jones sign alternation and gap freeness for certified prime diagrams
/// that are not (2,n)-torus diagrams. Failures are logged, not fatal.
fn audit_item(e: &CorpusEntry, budget: usize) -> Result<Option<BatchItem>, Failure> {
    if !e.meta.prime || e.meta.torus_2n || e.diagram.crossing_count() == 0 {
        return Ok(None);
    }
    if qacert::certify(&e.diagram, budget).is_err() {
        return Ok(Some(BatchItem::skip(&e.meta.name, "not certified")));
    }
    let g: GapReport = bracket::jones(&e.diagram)?.gap_report()?;
    Ok(Some(if g.strictly_alternating() {
        BatchItem::pass(&e.meta.name, "alternating signs, no gaps")
    } else {
        BatchItem::logged(&e.meta.name, format!("counter-evidence: sign alternating {}, gaps {:?}", g.sign_alternating, g.gaps))
    }))
}

fn cmd_batch(cli: &Cli, dir: &Path, suite: Suite, generate: Option<usize>, budget: usize) -> Outcome {
    let mut items = Vec::new();
    match suite {
        Suite::InvariantAgreement => {
            for e in batch_links(dir, &mut items)? {
                items.push(agreement_item(&e).unwrap_or_else(|f| BatchItem::error(&e.meta.name, f.message)));
            }
        }
        Suite::ConjectureAudit => {
            for e in batch_links(dir, &mut items)? {
                match audit_item(&e, budget) {
                    Ok(Some(i)) => items.push(i),
                    Ok(None) => {}
                    Err(f) => items.push(BatchItem::error(&e.meta.name, f.message)),
                }
            }
        }
        Suite::Prop41 => {
            for (name, t) in batch_tangles(dir, generate, &mut items)? {
                if let Err(f) = prop41_items(&name, &t, &mut items) {
                    items.push(BatchItem::error(name, f.message));
                }
            }
        }
        Suite::Lemma43 => {
            for (name, t) in batch_tangles(dir, generate, &mut items)? {
                match lemma43_item(&name, &t) {
                    Ok(Some(i)) => items.push(i),
                    Ok(None) => {}
                    Err(f) => items.push(BatchItem::error(name, f.message)),
                }
            }
        }
        Suite::Theorem1 => {
            let links = batch_links(dir, &mut items)?;
            let tangles = batch_tangles(dir, generate, &mut items)?;
            theorem1_items(&links, &tangles, budget, &mut items)?;
        }
    }
    let name = suite.to_possible_value().expect("suites have names").get_name().to_string();
    let summary = BatchSummary::new(name, items);
    let failed = summary.failed > 0 || summary.errors > 0;
    emit(cli, &summary)?;
    Ok(if failed { Failure::PROPERTY } else { 0 })
}
