//! Serializable command reports and their text forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use qalt_core::qacert::{AdditivityReport, GapPreservationReport, Theorem1Report, SCHEMA_VERSION};
use qalt_core::GapReport;

fn schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub name: String,
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub bracket: String,
    pub jones: String,
    pub det_jones: String,
    pub det_trees: String,
    pub det_laplacian: String,
    pub det_agree: bool,
    pub span: i64,
    pub gaps: GapReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
}

impl fmt::Display for InvariantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        writeln!(f, "crossings {}, components {}, writhe {}, alternating {}", self.crossings, self.components, self.writhe, self.alternating)?;
        writeln!(f, "bracket  {}", self.bracket)?;
        writeln!(f, "jones    {}", self.jones)?;
        writeln!(f, "det      {} (jones), {} (spanning trees), {} (laplacian), agreement = {}", self.det_jones, self.det_trees, self.det_laplacian, self.det_agree)?;
        writeln!(f, "span     {}", self.span)?;
        if self.gaps.has_gap() {
            let gaps: Vec<String> = self.gaps.gaps.iter().map(|g| format!("{} after q^{}", g.length, g.at)).collect();
            writeln!(f, "gaps     {}", gaps.join(", "))?;
        } else {
            writeln!(f, "gaps     none")?;
        }
        writeln!(f, "signs    {}", if self.gaps.sign_alternating { "alternating" } else { "not alternating" })?;
        if let Some(c) = &self.certification {
            writeln!(f, "qa       {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendReport {
    pub pd: String,
    pub crossings: usize,
    /// Crossings of the result that came from the tangle.
    pub image: Vec<usize>,
}

impl fmt::Display for ExtendReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.pd)?;
        writeln!(f, "crossings {}, tangle image {:?}", self.crossings, self.image)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Output {
    pub additivity: AdditivityReport,
    pub theorem1: Theorem1Report,
}

impl fmt::Display for Theorem1Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.additivity;
        writeln!(f, "{}", a.pd)?;
        writeln!(f, "det {} = {} det(L_contract) + {} det(L_delete): {}", a.det, a.x, a.y, a.total_identity)?;
        for (r, res) in a.records.iter().zip(&self.theorem1.results) {
            let cert = match res {
                Ok(n) => format!("certified ({n} nodes)"),
                Err(e) => e.clone(),
            };
            writeln!(
                f,
                "crossing {}: det {} = {} + {} ({}), x_e {}, y_e {}, identities {} {}, {cert}",
                r.crossing,
                r.det,
                r.det_zero,
                r.det_infinity,
                if r.holds { "additive" } else { "not additive" },
                r.x_e,
                r.y_e,
                r.contract_identity,
                r.delete_identity
            )?;
        }
        let all = a.all_hold() && self.theorem1.all_certified();
        writeln!(f, "{}", if all { "all pass" } else { "FAILED" })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapOutput(pub GapPreservationReport);

impl fmt::Display for GapOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.0;
        writeln!(f, "{}", r.pd)?;
        writeln!(f, "base max gap {}, extension max gap {}, bound {}", r.base_max_gap, r.extended_max_gap, r.bound)?;
        let verdict = match (r.base_max_gap, r.passes) {
            (0, true) => "no gap preserved",
            (_, true) => "gap bound preserved",
            _ => "gap bound violated",
        };
        writeln!(f, "{verdict}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleManifest {
    pub max: usize,
    pub sign: String,
    /// Number of tangles with each crossing count.
    pub counts: Vec<usize>,
    pub total: usize,
    pub files: Vec<String>,
}

impl fmt::Display for TangleManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.counts.iter().enumerate().skip(1) {
            writeln!(f, "{n} crossings: {c}")?;
        }
        writeln!(f, "total {}", self.total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skip,
    /// Recorded observation that does not fail the suite.
    Logged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchItem {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl BatchItem {
    fn with(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status, detail: detail.into() }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with(name, Status::Pass, detail)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with(name, Status::Fail, detail)
    }

    pub fn error(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with(name, Status::Error, detail)
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with(name, Status::Skip, detail)
    }

    pub fn logged(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::with(name, Status::Logged, detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    #[serde(default = "schema")]
    pub schema_version: u32,
    pub suite: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped: usize,
    pub logged: usize,
    pub items: Vec<BatchItem>,
}

impl BatchSummary {
    pub fn new(suite: String, items: Vec<BatchItem>) -> Self {
        let count = |s: Status| items.iter().filter(|i| i.status == s).count();
        Self {
            schema_version: SCHEMA_VERSION,
            suite,
            total: items.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            errors: count(Status::Error),
            skipped: count(Status::Skip),
            logged: count(Status::Logged),
            items,
        }
    }
}

impl fmt::Display for BatchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
                Status::Skip => "SKIP",
                Status::Logged => "LOG",
            };
            writeln!(f, "{tag:5} {} {}", i.name, i.detail)?;
        }
        writeln!(
            f,
            "{}: {} items, {} passed, {} failed, {} errors, {} skipped, {} logged",
            self.suite, self.total, self.passed, self.failed, self.errors, self.skipped, self.logged
        )
    }
}
