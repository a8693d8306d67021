//! Quasi-alternating certificates: search, independent verification, and
//! the determinant and gap checks for tangle replacement.
//!
//! Certification is per diagram. An inconclusive search says nothing about
//! the link, which may have other diagrams that certify.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bracket::{self, BracketError};
use crate::diagram::{DiagramError, DiagramKey, LinkDiagram, Sign, SmoothingKind};
use crate::poly::PolyError;
use crate::tait::{build_tait, Shading, TaitError};
use crate::tangle::{insert, Tangle, TangleError, TangleSign};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("inconclusive after {nodes} search nodes (budget {budget}); other diagrams of the link may still certify")]
    Inconclusive { nodes: usize, budget: usize },
    #[error("structural failure: {0}")]
    Structural(String),
    #[error("crossing index {index} out of range ({len} crossings)")]
    CrossingOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Tait(#[from] TaitError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| s.parse().map_err(D::Error::custom)).transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    UnknotBase,
    AlternatingBase,
    ConnectedSumBase,
    SmoothingNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub kind: NodeKind,
    /// Diagram as reached by the search.
    pub pd: String,
    /// Diagram after removing nugatory crossings and R2 bigons, when that
    /// changed it. The node kind refers to this diagram.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplified_pd: Option<String>,
    /// Hex digest of the canonical key of the working diagram.
    pub key: String,
    #[serde(with = "decimal")]
    pub det: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing: Option<usize>,
    #[serde(default, with = "decimal_opt", skip_serializing_if = "Option::is_none")]
    pub det_zero: Option<BigInt>,
    #[serde(default, with = "decimal_opt", skip_serializing_if = "Option::is_none")]
    pub det_infinity: Option<BigInt>,
    /// Smoothings `[L_0, L_inf]` or summands `[left, right]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertNode>,
}

impl CertNode {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(CertNode::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(CertNode::depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QACertificate {
    pub schema_version: u32,
    pub root: CertNode,
}

impl QACertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn key_digest(k: &DiagramKey) -> String {
    // FNV-1a over the key words.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in k.words() {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

/// Determinant through the weighted Tait-graph Laplacian.
pub fn det_laplacian(d: &LinkDiagram) -> Result<BigInt, TaitError> {
    if d.is_split() {
        return Ok(BigInt::zero());
    }
    if d.crossing_count() == 0 {
        return Ok(BigInt::one());
    }
    build_tait(d, Shading::Class0)?.det_from_laplacian()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Failure {
    Structural(String),
    Inconclusive,
    Budget,
}

/// Search state: budget, options and memo shared across calls.
pub struct Certifier {
    pub budget: usize,
    /// Accept reduced non-split alternating diagrams without recursion.
    pub alternating_base: bool,
    nodes: usize,
    memo: HashMap<DiagramKey, Result<CertNode, Failure>>,
}

impl Certifier {
    pub fn new(budget: usize) -> Self {
        Self { budget, alternating_base: true, nodes: 0, memo: HashMap::new() }
    }

    pub fn without_alternating_base(mut self) -> Self {
        self.alternating_base = false;
        self
    }

    pub fn nodes_used(&self) -> usize {
        self.nodes
    }

    fn fail(&self, f: Failure) -> CertifyError {
        match f {
            Failure::Structural(s) => CertifyError::Structural(s),
            _ => CertifyError::Inconclusive { nodes: self.nodes, budget: self.budget },
        }
    }

    pub fn certify(&mut self, d: &LinkDiagram) -> Result<QACertificate, CertifyError> {
        if d.is_split() {
            return Err(CertifyError::Structural("split diagram (det 0)".into()));
        }
        let depth = det_laplacian(d)?.try_into().unwrap_or(usize::MAX);
        let root = self.search(d, depth).map_err(|f| self.fail(f))?;
        Ok(QACertificate { schema_version: SCHEMA_VERSION, root })
    }

    /// Certificate whose root smooths crossing `c` of `d` as given.
    pub fn certify_at(&mut self, d: &LinkDiagram, c: usize) -> Result<QACertificate, CertifyError> {
        if c >= d.crossing_count() {
            return Err(CertifyError::CrossingOutOfRange { index: c, len: d.crossing_count() });
        }
        let det = det_laplacian(d)?;
        let d0 = d.smooth(c, SmoothingKind::Zero)?;
        let d1 = d.smooth(c, SmoothingKind::Infinity)?;
        let (e0, e1) = (det_laplacian(&d0)?, det_laplacian(&d1)?);
        if !(e0 >= BigInt::one() && e1 >= BigInt::one() && &e0 + &e1 == det) {
            return Err(CertifyError::Structural(format!(
                "det additivity fails at crossing {c}: det {det}, smoothings {e0} and {e1}"
            )));
        }
        self.nodes += 1;
        let depth: usize = det.clone().try_into().unwrap_or(usize::MAX);
        let c0 = self.search(&d0, depth).map_err(|f| self.fail(f))?;
        let c1 = self.search(&d1, depth).map_err(|f| self.fail(f))?;
        let root = CertNode {
            kind: NodeKind::SmoothingNode,
            pd: d.to_pd(),
            simplified_pd: None,
            key: key_digest(&d.canonical_key()),
            det,
            crossing: Some(c),
            det_zero: Some(e0),
            det_infinity: Some(e1),
            children: vec![c0, c1],
        };
        Ok(QACertificate { schema_version: SCHEMA_VERSION, root })
    }

    fn search(&mut self, d: &LinkDiagram, depth: usize) -> Result<CertNode, Failure> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Failure::Budget);
        }
        let (s, _) = d.simplify();
        let simplified_pd = (s.crossing_count() != d.crossing_count()).then(|| s.to_pd());
        let key = s.canonical_key();
        let node = |kind, det: BigInt| CertNode {
            kind,
            pd: d.to_pd(),
            simplified_pd: simplified_pd.clone(),
            key: key_digest(&key),
            det,
            crossing: None,
            det_zero: None,
            det_infinity: None,
            children: Vec::new(),
        };
        if s.is_split() {
            return Err(Failure::Structural("split diagram (det 0)".into()));
        }
        if s.crossing_count() == 0 {
            return Ok(node(NodeKind::UnknotBase, BigInt::one()));
        }
        if let Some(hit) = self.memo.get(&key) {
            return match hit {
                Ok(n) => {
                    let mut n = n.clone();
                    n.pd = d.to_pd();
                    n.simplified_pd = simplified_pd;
                    Ok(n)
                }
                Err(f) => Err(f.clone()),
            };
        }
        let det = det_laplacian(&s).map_err(|e| Failure::Structural(e.to_string()))?;
        if self.alternating_base && s.is_alternating() {
            let n = node(NodeKind::AlternatingBase, det);
            self.memo.insert(key, Ok(n.clone()));
            return Ok(n);
        }
        if depth == 0 {
            return Err(Failure::Inconclusive);
        }
        let result = self.search_uncached(&s, depth, &det, node(NodeKind::SmoothingNode, det.clone()));
        if result != Err(Failure::Budget) {
            self.memo.insert(key, result.clone());
        }
        result
    }

    fn search_uncached(
        &mut self,
        s: &LinkDiagram,
        depth: usize,
        det: &BigInt,
        template: CertNode,
    ) -> Result<CertNode, Failure> {
        if let Some(cs) = s.connected_sum_split() {
            let left = self.search(&cs.left, depth);
            if left == Err(Failure::Budget) {
                return left;
            }
            let right = self.search(&cs.right, depth);
            if right == Err(Failure::Budget) {
                return right;
            }
            if let (Ok(l), Ok(r)) = (left, right) {
                return Ok(CertNode { kind: NodeKind::ConnectedSumBase, children: vec![l, r], ..template });
            }
        }
        let mut candidates = Vec::new();
        for c in 0..s.crossing_count() {
            let d0 = s.smooth(c, SmoothingKind::Zero).expect("in range");
            let d1 = s.smooth(c, SmoothingKind::Infinity).expect("in range");
            let e0 = det_laplacian(&d0).map_err(|e| Failure::Structural(e.to_string()))?;
            let e1 = det_laplacian(&d1).map_err(|e| Failure::Structural(e.to_string()))?;
            if e0.is_positive() && e1.is_positive() && &(&e0 + &e1) == det {
                candidates.push(((&e0 - &e1).abs(), c, d0, d1, e0, e1));
            }
        }
        if candidates.is_empty() {
            return Err(Failure::Structural("no crossing satisfies det additivity".into()));
        }
        candidates.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (_, c, d0, d1, e0, e1) in candidates {
            let c0 = match self.search(&d0, depth - 1) {
                Ok(n) => n,
                Err(Failure::Budget) => return Err(Failure::Budget),
                Err(_) => continue,
            };
            let c1 = match self.search(&d1, depth - 1) {
                Ok(n) => n,
                Err(Failure::Budget) => return Err(Failure::Budget),
                Err(_) => continue,
            };
            return Ok(CertNode {
                crossing: Some(c),
                det_zero: Some(e0),
                det_infinity: Some(e1),
                children: vec![c0, c1],
                ..template
            });
        }
        Err(Failure::Inconclusive)
    }
}

pub fn certify(d: &LinkDiagram, budget: usize) -> Result<QACertificate, CertifyError> {
    Certifier::new(budget).certify(d)
}

pub fn certify_at(d: &LinkDiagram, c: usize, budget: usize) -> Result<QACertificate, CertifyError> {
    Certifier::new(budget).certify_at(d, c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub message: String,
}

/// Re-derives every node from its stored PD code, computing determinants
/// both from the Jones polynomial and from the Tait-graph Laplacian.
pub fn verify_certificate(cert: &QACertificate) -> Result<(), VerifyFailure> {
    let mut path = Vec::new();
    verify_node(&cert.root, &mut path).map_err(|message| VerifyFailure { path: path.clone(), message })
}

fn two_way_det(d: &LinkDiagram) -> Result<BigInt, String> {
    let j = bracket::determinant(d).map_err(|e| e.to_string())?;
    let l = det_laplacian(d).map_err(|e| e.to_string())?;
    if j != l {
        return Err(format!("determinant methods disagree: jones {j}, laplacian {l}"));
    }
    Ok(j)
}

fn verify_node(n: &CertNode, path: &mut Vec<usize>) -> Result<(), String> {
    let d = LinkDiagram::parse_pd(&n.pd).map_err(|e| format!("pd: {e}"))?;
    let working = match &n.simplified_pd {
        Some(p) => {
            let w = LinkDiagram::parse_pd(p).map_err(|e| format!("simplified pd: {e}"))?;
            if w.canonical_key() != d.simplify().0.canonical_key() {
                return Err("simplified diagram does not match R1/R2 simplification".into());
            }
            w
        }
        None => d,
    };
    if key_digest(&working.canonical_key()) != n.key {
        return Err("diagram key mismatch".into());
    }
    let det = two_way_det(&working)?;
    if det != n.det {
        return Err(format!("stored det {} but recomputed {det}", n.det));
    }
    if det.is_zero() {
        return Err("det 0".into());
    }
    match n.kind {
        NodeKind::UnknotBase => {
            if working.crossing_count() != 0 || working.free_loops() != 1 {
                return Err("unknot base is not a crossingless circle".into());
            }
            if !n.children.is_empty() {
                return Err("base node has children".into());
            }
        }
        NodeKind::AlternatingBase => {
            if !(working.is_alternating() && working.is_reduced() && !working.is_split()) {
                return Err("alternating base is not reduced, connected and alternating".into());
            }
            if !n.children.is_empty() {
                return Err("base node has children".into());
            }
        }
        NodeKind::ConnectedSumBase => {
            let cs = working.connected_sum_split().ok_or("not a connected sum")?;
            if n.children.len() != 2 {
                return Err("connected sum needs two summand certificates".into());
            }
            let keys = [cs.left.canonical_key(), cs.right.canonical_key()];
            for (i, child) in n.children.iter().enumerate() {
                let c = LinkDiagram::parse_pd(&child.pd).map_err(|e| format!("child pd: {e}"))?;
                if c.canonical_key() != keys[i] {
                    return Err(format!("summand {i} does not match the split"));
                }
            }
            if &n.children[0].det * &n.children[1].det != det {
                return Err("det is not the product of the summands".into());
            }
        }
        NodeKind::SmoothingNode => {
            let c = n.crossing.ok_or("smoothing node without crossing")?;
            if c >= working.crossing_count() || n.children.len() != 2 {
                return Err("malformed smoothing node".into());
            }
            let (e0, e1) = (n.det_zero.as_ref().ok_or("missing det_zero")?, n.det_infinity.as_ref().ok_or("missing det_infinity")?);
            if !(e0.is_positive() && e1.is_positive() && (e0 + e1) == det) {
                return Err(format!("det {det} != {e0} + {e1} with both >= 1"));
            }
            for (i, kind) in [SmoothingKind::Zero, SmoothingKind::Infinity].into_iter().enumerate() {
                let want = working.smooth(c, kind).map_err(|e| e.to_string())?;
                let child = &n.children[i];
                let got = LinkDiagram::parse_pd(&child.pd).map_err(|e| format!("child pd: {e}"))?;
                if got.canonical_key() != want.canonical_key() {
                    return Err(format!("child {i} is not the smoothing at crossing {c}"));
                }
                if &child.det != [e0, e1][i] {
                    return Err(format!("child {i} det {} but node records {}", child.det, [e0, e1][i]));
                }
                if child.det >= det {
                    return Err("determinant does not decrease".into());
                }
            }
        }
    }
    for (i, child) in n.children.iter().enumerate() {
        path.push(i);
        verify_node(child, path)?;
        path.pop();
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub crossing: usize,
    #[serde(with = "decimal")]
    pub det: BigInt,
    #[serde(with = "decimal")]
    pub det_zero: BigInt,
    #[serde(with = "decimal")]
    pub det_infinity: BigInt,
    pub holds: bool,
    pub x_e: u128,
    pub y_e: u128,
    /// `det(L'_contract) = x_e det(L_contract) + y_e det(L_delete)`.
    pub contract_identity: bool,
    /// `det(L'_delete) = (x - x_e) det(L_contract) + (y - y_e) det(L_delete)`.
    pub delete_identity: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdditivityReport {
    pub pd: String,
    pub image: Vec<usize>,
    pub x: u128,
    pub y: u128,
    #[serde(with = "decimal")]
    pub det: BigInt,
    /// `det(L') = x det(L_contract) + y det(L_delete)`.
    pub total_identity: bool,
    pub records: Vec<CrossingRecord>,
}

impl AdditivityReport {
    pub fn all_hold(&self) -> bool {
        self.total_identity && self.records.iter().all(|r| r.holds && r.contract_identity && r.delete_identity)
    }
}

/// Inserts `t` at `c` using the shading in which `t` extends `c`.
pub fn extend(l: &LinkDiagram, c: usize, t: &Tangle) -> Result<(LinkDiagram, Vec<usize>, Shading), CertifyError> {
    let shading = extension_shading(l, c, t)?;
    let ins = insert(l, c, t, shading)?;
    Ok((ins.diagram, ins.image, shading))
}

fn extension_shading(l: &LinkDiagram, c: usize, t: &Tangle) -> Result<Shading, CertifyError> {
    if c >= l.crossing_count() {
        return Err(CertifyError::CrossingOutOfRange { index: c, len: l.crossing_count() });
    }
    let want = match t.sign() {
        TangleSign::Positive => Sign::Positive,
        TangleSign::Negative => Sign::Negative,
        other => {
            return Err(TangleError::TypeMismatch { tangle: other, edge: build_tait(l, Shading::Class0)?.edges[c].sign }.into())
        }
    };
    let s = Shading::Class0;
    Ok(if build_tait(l, s)?.edges[c].sign == want { s } else { s.other() })
}

/// Checks the determinant identities for replacing `c` by `t`, smoothing
/// every tangle crossing of the result.
pub fn lemma33_verify(l: &LinkDiagram, c: usize, t: &Tangle, shading: Shading) -> Result<AdditivityReport, CertifyError> {
    let g = build_tait(l, shading)?;
    if c >= g.edges.len() {
        return Err(CertifyError::CrossingOutOfRange { index: c, len: g.edges.len() });
    }
    let sign = g.edges[c].sign;
    // The smoothing that contracts the Tait edge of a positive crossing is
    // the A-smoothing; for a negative one it is the other.
    let contract = if sign == Sign::Positive { SmoothingKind::Zero } else { SmoothingKind::Infinity };
    let det_l = det_laplacian(l)?;
    let dc = det_laplacian(&l.smooth(c, contract)?)?;
    let dd = det_laplacian(&l.smooth(c, contract.other())?)?;
    if !(dc.is_positive() && dd.is_positive() && &dc + &dd == det_l) {
        return Err(CertifyError::Structural(format!("crossing {c} is not quasi-alternating by determinants")));
    }
    let ins = insert(l, c, t, shading)?;
    let lp = ins.diagram;
    let tt = t.tait()?;
    let x = tt.graph.spanning_tree_counts()?.total();
    let almost = tt.graph.almost_spanning_counts(tt.u1, tt.u2)?;
    let y = almost.y;
    let det = det_laplacian(&lp)?;
    let big = |v: u128| BigInt::from(v);
    let total_identity = det == big(x) * &dc + big(y) * &dd;
    let mut records = Vec::new();
    for (i, &cp) in ins.image.iter().enumerate() {
        let e0 = det_laplacian(&lp.smooth(cp, SmoothingKind::Zero)?)?;
        let e1 = det_laplacian(&lp.smooth(cp, SmoothingKind::Infinity)?)?;
        let (with, _) = tt.graph.edge_split_counts(i)?;
        let x_e = with.total();
        let y_e = almost.per_edge[i];
        // Tangle crossings carry the sign of c, so the contracting smoothing
        // is the same kind as at c.
        let (ec, ed) = if contract == SmoothingKind::Zero { (&e0, &e1) } else { (&e1, &e0) };
        records.push(CrossingRecord {
            crossing: cp,
            holds: e0.is_positive() && e1.is_positive() && &e0 + &e1 == det,
            contract_identity: *ec == big(x_e) * &dc + big(y_e) * &dd,
            delete_identity: *ed == big(x - x_e) * &dc + big(y - y_e) * &dd,
            det: det.clone(),
            det_zero: e0,
            det_infinity: e1,
            x_e,
            y_e,
        });
    }
    Ok(AdditivityReport { pd: lp.to_pd(), image: ins.image, x, y, det, total_identity, records })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub pd: String,
    pub image: Vec<usize>,
    /// Per image crossing: certificate size, or the failure message.
    pub results: Vec<Result<usize, String>>,
    pub structural_failures: usize,
    pub inconclusive: usize,
}

impl Theorem1Report {
    pub fn all_certified(&self) -> bool {
        self.results.iter().all(|r| r.is_ok())
    }
}

/// Certifies the extended diagram at every crossing of the inserted tangle.
pub fn theorem1_verify(l: &LinkDiagram, c: usize, t: &Tangle, shading: Shading, budget: usize) -> Result<Theorem1Report, CertifyError> {
    let ins = insert(l, c, t, shading)?;
    let mut certifier = Certifier::new(budget);
    let mut results = Vec::new();
    let (mut structural_failures, mut inconclusive) = (0, 0);
    for &cp in &ins.image {
        certifier.nodes = 0;
        match certifier.certify_at(&ins.diagram, cp) {
            Ok(cert) => results.push(Ok(cert.root.size())),
            Err(e) => {
                match e {
                    CertifyError::Structural(_) => structural_failures += 1,
                    _ => inconclusive += 1,
                }
                results.push(Err(e.to_string()));
            }
        }
    }
    Ok(Theorem1Report { pd: ins.diagram.to_pd(), image: ins.image, results, structural_failures, inconclusive })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapPreservationReport {
    pub pd: String,
    pub base_max_gap: i64,
    pub extended_max_gap: i64,
    /// Largest gap allowed in the extension, in `q`-exponent units.
    pub bound: i64,
    pub passes: bool,
}

/// Compares the longest Jones gap of `l` with that of the extension.
pub fn gap_preservation_verify(l: &LinkDiagram, c: usize, t: &Tangle, shading: Shading) -> Result<GapPreservationReport, CertifyError> {
    let ins = insert(l, c, t, shading)?;
    let base = bracket::jones(l)?.gap_report()?;
    let ext = bracket::jones(&ins.diagram)?.gap_report()?;
    let bound = base.max_gap.max(crate::poly::GapReport::STEP);
    Ok(GapPreservationReport {
        pd: ins.diagram.to_pd(),
        base_max_gap: base.max_gap,
        extended_max_gap: ext.max_gap,
        bound,
        passes: ext.max_gap <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Direction;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn unknot_and_trefoil() {
        let u = certify(&LinkDiagram::unknot(), 100).unwrap();
        assert_eq!(u.root.kind, NodeKind::UnknotBase);
        verify_certificate(&u).unwrap();
        let t = certify(&trefoil(), 100).unwrap();
        assert_eq!(t.root.kind, NodeKind::AlternatingBase);
        verify_certificate(&t).unwrap();
        let deep = Certifier::new(1000).without_alternating_base().certify(&trefoil()).unwrap();
        assert_eq!(deep.root.kind, NodeKind::SmoothingNode);
        verify_certificate(&deep).unwrap();
    }

    #[test]
    fn certify_at_trefoil_and_curl() {
        for c in 0..3 {
            let cert = certify_at(&trefoil(), c, 100).unwrap();
            assert_eq!(cert.root.det, BigInt::from(3));
            let mut parts = [cert.root.det_zero.clone().unwrap(), cert.root.det_infinity.clone().unwrap()];
            parts.sort();
            assert_eq!(parts, [BigInt::from(1), BigInt::from(2)]);
            verify_certificate(&cert).unwrap();
        }
        let kink = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert!(matches!(certify_at(&kink, 0, 100), Err(CertifyError::Structural(_))));
        assert_eq!(certify(&kink, 100).unwrap().root.kind, NodeKind::UnknotBase);
        assert!(matches!(certify(&LinkDiagram::unlink(2), 100), Err(CertifyError::Structural(_))));
    }

    #[test]
    fn corruption_is_pinpointed() {
        let mut cert = Certifier::new(1000).without_alternating_base().certify(&trefoil()).unwrap();
        cert.root.children[1].det += 1;
        let err = verify_certificate(&cert).unwrap_err();
        assert!(err.path.is_empty() || err.path == vec![1]);
        let json = cert.to_json();
        assert_eq!(QACertificate::from_json(&json).unwrap(), cert);
    }

    #[test]
    fn lemma33_on_trefoil() {
        let l = trefoil();
        for t in [
            Tangle::crossing(Sign::Positive),
            Tangle::twist(2, Direction::Vertical, Sign::Positive).unwrap(),
            Tangle::twist(3, Direction::Horizontal, Sign::Negative).unwrap(),
        ] {
            let shading = extension_shading(&l, 0, &t).unwrap();
            let r = lemma33_verify(&l, 0, &t, shading).unwrap();
            assert!(r.all_hold(), "{r:?}");
            let th = theorem1_verify(&l, 0, &t, shading, DEFAULT_BUDGET).unwrap();
            assert!(th.all_certified());
            assert!(gap_preservation_verify(&l, 0, &t, shading).unwrap().passes);
        }
        let one = lemma33_verify(&l, 0, &Tangle::crossing(Sign::Positive), extension_shading(&l, 0, &Tangle::crossing(Sign::Positive)).unwrap()).unwrap();
        assert_eq!((one.x, one.y), (1, 1));
    }
}
