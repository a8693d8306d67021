//! Four-ended tangles: closures, classification, bracket decomposition,
//! insertion into a link crossing, and generation of alternating tangles.
//!
//! The boundary behaves as an extra vertex whose slots, counterclockwise,
//! are NE, SE, SW, NW. Its corners are then the E, S, W and N regions. The
//! W and E regions are shaded, so a crossing whose A-corners face W and E
//! (`X[1,2,3,4] B[4,3,1,2]`) is the positive one-crossing tangle.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{planar_map, Arc, ArcUnion, Crossing, DiagramError, LinkDiagram, Sign, SmoothingKind};
use crate::pd::{self, Token, TokenError};
use crate::planar::{dart, slot, vertex, Faces, PlanarMap};
use crate::poly::{LaurentPoly, PolyError, Var};
use crate::tait::{build_tait, normalized_colours, tait_from_map, Shading, TaitError, TaitGraph};

/// Largest tangle size accepted by the generator.
pub const GENERATION_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error("expected exactly one B[nw,ne,sw,se] boundary token, found {0}")]
    BoundaryTokens(usize),
    #[error("fragment has {0} free ends; a tangle has 4")]
    BoundaryEnds(usize),
    #[error("arc {arc} occurs {count} times")]
    ArcMultiplicity { arc: Arc, count: usize },
    #[error("tangle is not planar")]
    NonPlanar,
    #[error("tangle is not connected")]
    Disconnected,
    #[error("crossing index {index} out of range ({len} crossings)")]
    CrossingOutOfRange { index: usize, len: usize },
    #[error("tangle of sign {tangle} does not extend a crossing whose Tait edge is {edge:?}")]
    TypeMismatch { tangle: TangleSign, edge: Sign },
    #[error("tangle is not reduced")]
    Unreduced,
    #[error("tangle has no crossings")]
    Empty,
    #[error("link diagram: {0}")]
    Diagram(#[from] DiagramError),
    #[error("tait graph: {0}")]
    Tait(#[from] TaitError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generation is limited to {limit} crossings, asked for {asked}")]
    Bound { asked: usize, limit: usize },
    #[error("state sum limited to 20 crossings")]
    TooLarge,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Boundary positions in the order of the `B[...]` token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    NW,
    NE,
    SW,
    SE,
}

impl End {
    pub const ALL: [End; 4] = [End::NW, End::NE, End::SW, End::SE];

    fn index(self) -> usize {
        self as usize
    }

    /// Slot of the boundary vertex.
    fn boundary_slot(self) -> usize {
        match self {
            End::NE => 0,
            End::SE => 1,
            End::SW => 2,
            End::NW => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangleSign {
    Positive,
    Negative,
    Mixed,
    NonAlternating,
}

impl fmt::Display for TangleSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangleSign::Positive => "positive",
            TangleSign::Negative => "negative",
            TangleSign::Mixed => "mixed",
            TangleSign::NonAlternating => "non-alternating",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingClass {
    Nugatory,
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `f = A^-1 F`, `g = A G`.
    Positive,
    /// `f = A F`, `g = A^-1 G`.
    Negative,
    /// `f = F`, `g = G`.
    Raw,
}

/// `<T> = F <[0]> + G <[inf]>`, together with the normalized `f`, `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketPair {
    pub big_f: LaurentPoly,
    pub big_g: LaurentPoly,
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub normalization: Normalization,
}

impl BracketPair {
    fn new(big_f: LaurentPoly, big_g: LaurentPoly, normalization: Normalization) -> Self {
        let (f, g) = match normalization {
            Normalization::Positive => (big_f.shift(-1), big_g.shift(1)),
            Normalization::Negative => (big_f.shift(1), big_g.shift(-1)),
            Normalization::Raw => (big_f.clone(), big_g.clone()),
        };
        Self { big_f, big_g, f, g, normalization }
    }

    /// `<N(T)> = F delta + G`.
    pub fn numerator(&self) -> LaurentPoly {
        &(&self.big_f * &LaurentPoly::delta()) + &self.big_g
    }

    /// `<D(T)> = F + G delta`.
    pub fn denominator(&self) -> LaurentPoly {
        &self.big_f + &(&self.big_g * &LaurentPoly::delta())
    }
}

#[derive(Debug, Clone)]
pub struct TangleTait {
    pub graph: TaitGraph,
    /// Vertices of the W and E regions.
    pub u1: usize,
    pub u2: usize,
}

#[derive(Debug, Clone)]
pub struct SmoothedTangle {
    pub tangle: Tangle,
    /// `<original smoothing> = (-A^3)^twist <tangle>`.
    pub twist: i64,
    pub connected: bool,
}

#[derive(Debug, Clone)]
pub struct Inserted {
    pub diagram: LinkDiagram,
    /// Indices in `diagram` of the tangle's crossings, in tangle order.
    pub image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    /// Arc ids at NW, NE, SW, SE.
    boundary: [Arc; 4],
    loops: usize,
}

impl Tangle {
    /// Validated construction. Crossingless tangles are accepted; otherwise
    /// the fragment must be connected.
    pub fn new(crossings: Vec<Crossing>, boundary: [Arc; 4], loops: usize) -> Result<Self, TangleError> {
        let mut count: HashMap<Arc, usize> = HashMap::new();
        for x in &crossings {
            for a in x.slots {
                *count.entry(a).or_default() += 1;
            }
        }
        let ends = count.values().filter(|&&c| c == 1).count();
        let mut bcount: HashMap<Arc, usize> = HashMap::new();
        for a in boundary {
            *bcount.entry(a).or_default() += 1;
        }
        let declared = bcount.iter().filter(|(a, &c)| c == 1 && count.get(a) == Some(&1)).count();
        if ends != declared || ends + 2 * bcount.values().filter(|&&c| c == 2).count() != 4 {
            return Err(TangleError::BoundaryEnds(ends.max(declared)));
        }
        let t = Self { crossings, boundary, loops };
        let map = planar_map(&t.with_boundary_vertex()).map_err(|e| match e {
            DiagramError::ArcMultiplicity { arc, count } => TangleError::ArcMultiplicity { arc, count },
            other => TangleError::Diagram(other),
        })?;
        if !map.is_spherical(&map.faces()) {
            return Err(TangleError::NonPlanar);
        }
        if !t.crossings.is_empty() && !t.is_connected() {
            return Err(TangleError::Disconnected);
        }
        Ok(t)
    }

    fn unchecked(crossings: Vec<Crossing>, boundary: [Arc; 4], loops: usize) -> Self {
        Self { crossings, boundary, loops }
    }

    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let mut xs = Vec::new();
        let mut bs = Vec::new();
        let mut loops = 0;
        for t in pd::tokenize(text)? {
            match t.token {
                Token::X(s) => xs.push(Crossing::new(s)),
                Token::B(b) => bs.push(b),
                Token::Loop => loops += 1,
            }
        }
        if bs.len() != 1 {
            if bs.is_empty() {
                let mut count: HashMap<Arc, usize> = HashMap::new();
                for x in &xs {
                    for a in x.slots {
                        *count.entry(a).or_default() += 1;
                    }
                }
                let ends = count.values().filter(|&&c| c == 1).count();
                if ends != 4 {
                    return Err(TangleError::BoundaryEnds(ends));
                }
            }
            return Err(TangleError::BoundaryTokens(bs.len()));
        }
        Self::new(xs, bs[0], loops)
    }

    /// `[0]`: NW-NE and SW-SE joined.
    pub fn zero() -> Self {
        Self::unchecked(Vec::new(), [1, 1, 2, 2], 0)
    }

    /// `[inf]`: NW-SW and NE-SE joined.
    pub fn infinity() -> Self {
        Self::unchecked(Vec::new(), [1, 2, 1, 2], 0)
    }

    pub fn crossing(sign: Sign) -> Self {
        let t = Self::unchecked(vec![Crossing::new([1, 2, 3, 4])], [4, 3, 1, 2], 0);
        match sign {
            Sign::Positive => t,
            Sign::Negative => t.mirror(),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn boundary(&self) -> [Arc; 4] {
        self.boundary
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn check_index(&self, c: usize) -> Result<(), TangleError> {
        if c >= self.crossings.len() {
            return Err(TangleError::CrossingOutOfRange { index: c, len: self.crossings.len() });
        }
        Ok(())
    }

    fn with_boundary_vertex(&self) -> Vec<Crossing> {
        let b = self.boundary;
        let mut all = self.crossings.clone();
        let mut slots = [0; 4];
        for e in End::ALL {
            slots[e.boundary_slot()] = b[e.index()];
        }
        all.push(Crossing::new(slots));
        all
    }

    /// Map with the crossings followed by the boundary vertex.
    pub fn map(&self) -> PlanarMap {
        planar_map(&self.with_boundary_vertex()).expect("validated tangle")
    }

    fn boundary_dart(&self, e: End) -> usize {
        dart(self.crossings.len(), e.boundary_slot())
    }

    /// Canonical code rooted at the NE end; equal codes mean the tangles
    /// agree up to relabeling with boundary positions fixed.
    pub fn code(&self) -> Vec<u32> {
        let mut code = self.map().rooted_code(self.boundary_dart(End::NE));
        code.push(self.loops as u32);
        code
    }

    /// No free loops, every end meets a crossing, and the crossings form a
    /// connected graph. Crossingless tangles are two separate arcs.
    pub fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        if self.loops > 0 || n == 0 {
            return false;
        }
        let map = self.map();
        if End::ALL.iter().any(|&e| vertex(map.partner[self.boundary_dart(e)]) == n) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for k in 0..4 {
                let w = vertex(map.partner[dart(v, k)]);
                if w < n && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every arc between two crossings joins an over-slot to an under-slot.
    pub fn is_alternating(&self) -> bool {
        let n = self.crossings.len();
        let map = self.map();
        (0..4 * n).all(|d| {
            let p = map.partner[d];
            vertex(p) == n || slot(p) % 2 != slot(d) % 2
        })
    }

    fn closure(&self, pairs: [(End, End); 2]) -> LinkDiagram {
        let mut uf = ArcUnion::default();
        for (a, b) in pairs {
            uf.union(self.boundary[a.index()], self.boundary[b.index()]);
        }
        let raw: Vec<Crossing> = self.crossings.iter().map(|x| x.relabeled(|a| uf.root(a))).collect();
        let used: HashSet<Arc> = raw.iter().flat_map(|x| x.slots).collect();
        let roots: HashSet<Arc> = self.boundary.iter().map(|&a| uf.root(a)).collect();
        let loops = roots.iter().filter(|r| !used.contains(r)).count();
        LinkDiagram::rebuild(raw, &[], self.loops + loops)
    }

    /// N(T): NW-NE and SW-SE joined. Crossing order is preserved.
    pub fn numerator(&self) -> LinkDiagram {
        self.closure([(End::NW, End::NE), (End::SW, End::SE)])
    }

    /// D(T): NW-SW and NE-SE joined. Crossing order is preserved.
    pub fn denominator(&self) -> LinkDiagram {
        self.closure([(End::NW, End::SW), (End::NE, End::SE)])
    }

    pub fn classify_crossing(&self, c: usize) -> Result<CrossingClass, TangleError> {
        self.check_index(c)?;
        let n = self.numerator().is_nugatory(c)?;
        let d = self.denominator().is_nugatory(c)?;
        Ok(match (n, d) {
            (true, true) => CrossingClass::Nugatory,
            (false, false) => CrossingClass::Nontrivial,
            _ => CrossingClass::Trivial,
        })
    }

    /// No crossing is nugatory inside the disk: with the boundary counted
    /// as a vertex, opposite corners of every crossing lie in distinct
    /// regions. This rules out curls and cut crossings.
    pub fn is_reduced(&self) -> bool {
        let o = self.map().faces().of_corner;
        (0..self.crossings.len()).all(|c| o[dart(c, 0)] != o[dart(c, 2)] && o[dart(c, 1)] != o[dart(c, 3)])
    }

    fn shading(&self, map: &PlanarMap, faces: &Faces) -> Option<Vec<bool>> {
        let colours = map.face_colors(faces)?;
        let w = colours[faces.of_corner[self.boundary_dart_corner(End::SW)]];
        Some(colours.iter().map(|&c| c == w).collect())
    }

    /// Corner of the boundary vertex at the region counterclockwise after `e`.
    fn boundary_dart_corner(&self, e: End) -> usize {
        self.boundary_dart(e)
    }

    /// Tait graph with W and E regions shaded.
    pub fn tait(&self) -> Result<TangleTait, TangleError> {
        let map = self.map();
        let faces = map.faces();
        let shaded = self.shading(&map, &faces).ok_or(TangleError::Tait(TaitError::NotColourable))?;
        let graph = tait_from_map(&faces, &shaded, self.crossings.len());
        let index = |f: usize| (0..f).filter(|&g| shaded[g]).count();
        // Corner at SW slot is the W region, at NE slot the E region.
        let w = faces.of_corner[self.boundary_dart(End::SW)];
        let e = faces.of_corner[self.boundary_dart(End::NE)];
        Ok(TangleTait { graph, u1: index(w), u2: index(e) })
    }

    pub fn sign(&self) -> TangleSign {
        if self.crossings.is_empty() || !self.is_alternating() {
            return if self.crossings.is_empty() { TangleSign::Mixed } else { TangleSign::NonAlternating };
        }
        let Ok(t) = self.tait() else { return TangleSign::Mixed };
        let pos = t.graph.positive_edges();
        if pos == t.graph.edges.len() {
            TangleSign::Positive
        } else if pos == 0 {
            TangleSign::Negative
        } else {
            TangleSign::Mixed
        }
    }

    /// True iff the tangle's sign matches the Tait sign of the crossing.
    pub fn extends(&self, crossing_sign: Sign) -> bool {
        matches!(
            (self.sign(), crossing_sign),
            (TangleSign::Positive, Sign::Positive) | (TangleSign::Negative, Sign::Negative)
        )
    }

    pub fn mirror(&self) -> Self {
        Self::unchecked(self.crossings.iter().map(|x| x.rotated(1)).collect(), self.boundary, self.loops)
    }

    fn max_arc(&self) -> Arc {
        self.crossings.iter().flat_map(|x| x.slots).chain(self.boundary).max().unwrap_or(0)
    }

    /// Glues `other` after relabeling; `joins` pairs an end of `self` with an
    /// end of `other`, and `ends` names the resulting boundary.
    fn glue(&self, other: &Self, joins: [(End, End); 2], ends: [(bool, End); 4]) -> Self {
        let off = self.max_arc();
        let o = |a: Arc| a + off;
        let mut uf = ArcUnion::default();
        for (a, b) in joins {
            uf.union(self.boundary[a.index()], o(other.boundary[b.index()]));
        }
        let mut crossings: Vec<Crossing> = self.crossings.iter().map(|x| x.relabeled(|a| uf.root(a))).collect();
        crossings.extend(other.crossings.iter().map(|x| x.relabeled(|a| uf.root(o(a)))));
        let boundary = ends.map(|(first, e)| {
            if first { uf.root(self.boundary[e.index()]) } else { uf.root(o(other.boundary[e.index()])) }
        });
        let mut used: HashSet<Arc> = crossings.iter().flat_map(|x| x.slots).collect();
        used.extend(boundary);
        let mut roots: HashSet<Arc> = HashSet::new();
        for (a, b) in joins {
            roots.insert(uf.root(self.boundary[a.index()]));
            roots.insert(uf.root(o(other.boundary[b.index()])));
        }
        let loops = roots.iter().filter(|r| !used.contains(r)).count();
        Self::unchecked(crossings, boundary, self.loops + other.loops + loops)
    }

    /// Tangle sum: `self` on the left, `other` on the right.
    pub fn sum(&self, other: &Self) -> Self {
        self.glue(
            other,
            [(End::NE, End::NW), (End::SE, End::SW)],
            [(true, End::NW), (false, End::NE), (true, End::SW), (false, End::SE)],
        )
    }

    /// `self` stacked on top of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        self.glue(
            other,
            [(End::SW, End::NW), (End::SE, End::NE)],
            [(true, End::NW), (true, End::NE), (false, End::SW), (false, End::SE)],
        )
    }

    /// `n` crossings in a twist. A vertical twist is a row of crossings, so
    /// its strands wind about a vertical axis; a horizontal twist is a
    /// column.
    pub fn twist(n: usize, direction: Direction, sign: Sign) -> Result<Self, TangleError> {
        if n == 0 {
            return Err(TangleError::Precondition("twist needs n >= 1".into()));
        }
        let one = Self::crossing(Sign::Positive);
        let mut t = one.clone();
        for _ in 1..n {
            t = match direction {
                Direction::Vertical => t.sum(&one),
                Direction::Horizontal => t.stack(&one),
            };
        }
        Ok(match sign {
            Sign::Positive => t,
            Sign::Negative => t.mirror(),
        })
    }

    pub fn is_twist(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return false;
        }
        let code = self.code();
        [Direction::Vertical, Direction::Horizontal].iter().any(|&d| {
            [Sign::Positive, Sign::Negative]
                .iter()
                .any(|&s| Self::twist(n, d, s).map(|t| t.code() == code).unwrap_or(false))
        })
    }

    /// State sum over the tangle's crossings, split by boundary connectivity.
    pub fn bracket_decompose(&self) -> Result<BracketPair, TangleError> {
        let n = self.crossings.len();
        if n > 20 {
            return Err(TangleError::TooLarge);
        }
        let mut ids: HashMap<Arc, usize> = HashMap::new();
        let id = |a: Arc, ids: &mut HashMap<Arc, usize>| {
            let next = ids.len();
            *ids.entry(a).or_insert(next)
        };
        let arcs: Vec<[usize; 4]> = self.crossings.iter().map(|x| x.slots.map(|a| id(a, &mut ids))).collect();
        let ends: Vec<usize> = self.boundary.iter().map(|&a| id(a, &mut ids)).collect();
        let m = ids.len();
        let mut tally: HashMap<(bool, i64, usize), u64> = HashMap::new();
        let mut parent = vec![0; m];
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for state in 0..(1u64 << n) {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut comps = m;
            for (c, a) in arcs.iter().enumerate() {
                let kind = if state >> c & 1 == 0 { SmoothingKind::Zero } else { SmoothingKind::Infinity };
                for (p, q) in kind.pairs() {
                    let (ra, rb) = (find(&mut parent, a[p]), find(&mut parent, a[q]));
                    if ra != rb {
                        parent[ra] = rb;
                        comps -= 1;
                    }
                }
            }
            // Two components carry the boundary ends; the rest are loops.
            let horizontal = find(&mut parent, ends[0]) == find(&mut parent, ends[1]);
            let loops = comps - 2 + self.loops;
            let beta = state.count_ones() as i64;
            *tally.entry((horizontal, n as i64 - 2 * beta, loops)).or_default() += 1;
        }
        let mut f = LaurentPoly::zero(Var::A);
        let mut g = LaurentPoly::zero(Var::A);
        for ((horizontal, exp, loops), count) in tally {
            let term = &LaurentPoly::monomial(Var::A, exp, BigInt::from(count)) * &LaurentPoly::delta().pow(loops as u32);
            if horizontal {
                f += &term;
            } else {
                g += &term;
            }
        }
        let normalization = match self.sign() {
            TangleSign::Positive => Normalization::Positive,
            TangleSign::Negative => Normalization::Negative,
            _ => Normalization::Raw,
        };
        Ok(BracketPair::new(f, g, normalization))
    }

    /// Smooths crossing `c`; with `reduce`, curls are then removed.
    pub fn smooth(&self, c: usize, kind: SmoothingKind, reduce: bool) -> Result<SmoothedTangle, TangleError> {
        self.check_index(c)?;
        let x = self.crossings[c].slots;
        let mut uf = ArcUnion::default();
        for (p, q) in kind.pairs() {
            uf.union(x[p], x[q]);
        }
        let rest: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != c)
            .map(|(_, y)| y.relabeled(|a| uf.root(a)))
            .collect();
        let boundary = self.boundary.map(|a| uf.root(a));
        let mut used: HashSet<Arc> = rest.iter().flat_map(|y| y.slots).collect();
        used.extend(boundary);
        let roots: HashSet<Arc> = x.iter().map(|&a| uf.root(a)).collect();
        let loops = roots.iter().filter(|r| !used.contains(r)).count();
        let mut t = Self::unchecked(rest, boundary, self.loops + loops);
        let mut twist = 0;
        if reduce {
            let (r, w) = t.remove_kinks();
            t = r;
            twist = w;
        }
        let connected = t.is_connected();
        Ok(SmoothedTangle { tangle: t, twist, connected })
    }

    /// Removes Reidemeister-I curls: `<self> = (-A^3)^w <result>`.
    pub fn remove_kinks(&self) -> (Self, i64) {
        let mut t = self.clone();
        let mut w = 0;
        loop {
            let found = t.crossings.iter().enumerate().find_map(|(c, x)| {
                (0..4).find(|&k| x.slots[k] == x.slots[(k + 1) % 4]).map(|k| (c, k))
            });
            let Some((c, k)) = found else { return (t, w) };
            // A loop at slots 0-1 or 2-3 is closed off by the Zero smoothing.
            let (kind, dw) = if k % 2 == 0 { (SmoothingKind::Infinity, 1) } else { (SmoothingKind::Zero, -1) };
            t = t.smooth(c, kind, false).expect("index in range").tangle;
            w += dw;
        }
    }

    /// Tangle text: crossings, then the boundary token, then loops.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.slots[0], x.slots[1], x.slots[2], x.slots[3]))
            .collect();
        let b = self.boundary;
        parts.push(format!("B[{},{},{},{}]", b[0], b[1], b[2], b[3]));
        parts.extend(std::iter::repeat_n("O".to_string(), self.loops));
        parts.join(" ")
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Replaces crossing `c` of `d` by `t`, placing the tangle's W and E regions
/// in the corners of `c` that are shaded under `shading`.
pub fn insert(d: &LinkDiagram, c: usize, t: &Tangle, shading: Shading) -> Result<Inserted, TangleError> {
    if c >= d.crossing_count() {
        return Err(TangleError::CrossingOutOfRange { index: c, len: d.crossing_count() });
    }
    if t.crossing_count() == 0 {
        return Err(TangleError::Empty);
    }
    if !t.is_reduced() {
        return Err(TangleError::Unreduced);
    }
    let g = build_tait(d, shading)?;
    let edge = g.edges[c].sign;
    let sign = t.sign();
    if !t.extends(edge) {
        return Err(TangleError::TypeMismatch { tangle: sign, edge });
    }
    // Ends attached to slots 0..3 of c.
    let at_slot = match edge {
        Sign::Positive => [End::SW, End::SE, End::NE, End::NW],
        Sign::Negative => [End::NW, End::SW, End::SE, End::NE],
    };
    let x = d.crossings()[c].slots;
    let off = d.crossings().iter().flat_map(|y| y.slots).max().unwrap_or(0);
    let o = |a: Arc| a + off;
    let mut uf = ArcUnion::default();
    for k in 0..4 {
        uf.union(x[k], o(t.boundary[at_slot[k].index()]));
    }
    let mut raw: Vec<Crossing> = Vec::new();
    let mut hints = Vec::new();
    let dh = d.hints();
    for (i, y) in d.crossings().iter().enumerate() {
        if i != c {
            raw.push(y.relabeled(|a| uf.root(a)));
            hints.push(dh[i]);
        }
    }
    let start = raw.len();
    raw.extend(t.crossings.iter().map(|y| y.relabeled(|a| uf.root(o(a)))));
    let used: HashSet<Arc> = raw.iter().flat_map(|y| y.slots).collect();
    let roots: HashSet<Arc> = x.iter().map(|&a| uf.root(a)).collect();
    let loops = roots.iter().filter(|r| !used.contains(r)).count();
    let diagram = LinkDiagram::rebuild(raw, &hints, d.free_loops() + t.loops + loops);
    let image = (start..start + t.crossing_count()).collect();
    Ok(Inserted { diagram, image })
}

/// Adds a vertex joined to the given darts (cutting their edges) and keeps
/// the result if it is still spherical.
fn attach(map: &PlanarMap, assign: &[(usize, usize)], out: &mut Vec<PlanarMap>) {
    let v = map.vertex_count();
    let mut p = map.partner.clone();
    p.extend([0; 4]);
    for &(s, target) in assign {
        p[dart(v, s)] = target;
        p[target] = dart(v, s);
    }
    let cand = PlanarMap { partner: p };
    if cand.is_spherical(&cand.faces()) {
        out.push(cand);
    }
}

fn grow(map: &PlanarMap, out: &mut Vec<PlanarMap>) {
    let m = map.vertex_count();
    let faces = map.faces();
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); faces.count];
    for c in 0..map.partner.len() {
        sides[faces.of_corner[c]].push(dart(vertex(c), slot(c) + 1));
    }
    let v = m;
    let mut edges_done = HashSet::new();
    for face in &sides {
        for (i, &x) in face.iter().enumerate() {
            let xe = x.min(map.partner[x]);
            if edges_done.insert(xe) {
                // Curl inserted on edge x: slots s1, s2 joined to each other.
                let xp = map.partner[x];
                for s in 1..4 {
                    let rest: Vec<usize> = (1..4).filter(|&k| k != s).collect();
                    attach(map, &[(0, x), (s, xp), (rest[0], dart(v, rest[1]))], out);
                }
            }
            for &y in &face[i + 1..] {
                let (xp, yp) = (map.partner[x], map.partner[y]);
                if y == x || y == xp {
                    continue;
                }
                for perm in [[xp, y, yp], [xp, yp, y], [y, xp, yp], [y, yp, xp], [yp, xp, y], [yp, y, xp]] {
                    attach(map, &[(0, x), (1, perm[0]), (2, perm[1]), (3, perm[2])], out);
                }
            }
        }
    }
}

/// All rooted planar 4-valent maps with `1 + k` vertices for `k <= max`,
/// vertex 0 being the boundary with slots NE, SE, SW, NW. Level `k` holds
/// the maps with `k` crossings.
pub fn tangle_shadows(max: usize) -> Vec<Vec<PlanarMap>> {
    let zero = PlanarMap { partner: vec![3, 2, 1, 0] };
    let inf = PlanarMap { partner: vec![1, 0, 3, 2] };
    let mut levels = vec![vec![zero, inf]];
    for _ in 0..max {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        let mut cands = Vec::new();
        for m in levels.last().expect("nonempty") {
            cands.clear();
            grow(m, &mut cands);
            for c in cands.drain(..) {
                if seen.insert(c.rooted_shape(0)) {
                    next.push(c);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Turns a shadow (boundary at vertex 0) into a tangle of the given sign,
/// choosing over/under so every Tait edge has that sign.
fn shadow_to_tangle(map: &PlanarMap, sign: Sign) -> Option<Tangle> {
    let faces = map.faces();
    let colours = normalized_colours(map, &faces)?;
    let w = colours[faces.of_corner[dart(0, 2)]];
    let mut label = vec![0u32; map.partner.len()];
    let mut next = 1;
    for d in 0..map.partner.len() {
        if label[d] == 0 {
            label[d] = next;
            label[map.partner[d]] = next;
            next += 1;
        }
    }
    let n = map.vertex_count() - 1;
    let crossings = (1..=n)
        .map(|v| {
            let x = Crossing::new([0, 1, 2, 3].map(|k| label[dart(v, k)]));
            let corner0_shaded = colours[faces.of_corner[dart(v, 0)]] == w;
            let want_positive = sign == Sign::Positive;
            if corner0_shaded == want_positive { x.rotated(1) } else { x }
        })
        .collect();
    let b = |s: usize| label[dart(0, s)];
    Some(Tangle::unchecked(crossings, [b(3), b(0), b(2), b(1)], 0))
}

/// Reduced, connected, alternating tangles of the given sign with 1 to
/// `max` crossings, one per isomorphism class with labeled boundary.
pub fn enumerate_alternating_tangles(max: usize, sign: Sign) -> Result<Vec<Tangle>, TangleError> {
    if max > GENERATION_LIMIT {
        return Err(TangleError::Bound { asked: max, limit: GENERATION_LIMIT });
    }
    let levels = tangle_shadows(max);
    let mut out = Vec::new();
    for level in levels.iter().skip(1) {
        for m in level {
            if let Some(t) = shadow_to_tangle(m, sign) {
                if t.is_connected() && t.is_reduced() {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// Offsets `deg p1 - deg p2` at the top and bottom of two polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Offsets {
    pub max: i64,
    pub min: i64,
}

impl Offsets {
    fn of(p1: &LaurentPoly, p2: &LaurentPoly) -> Option<Self> {
        Some(Self { max: p1.max_degree()? - p2.max_degree()?, min: p1.min_degree()? - p2.min_degree()? })
    }

}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Prop41Report {
    pub crossing: usize,
    /// Both smoothings are already reduced.
    pub both_reduced: bool,
    /// Offsets between `F(T_0)` and `F(T_inf)`.
    pub f: Option<Offsets>,
    /// Offsets between `G(T_0)` and `G(T_inf)`.
    pub g: Option<Offsets>,
    /// Largest gap in `A F(T_0) + A^-1 F(T_inf)` and the same for `G`.
    pub combined_gap_f: i64,
    pub combined_gap_g: i64,
    /// Top offset of `F` and bottom offset of `G` both in {2, 6}.
    pub leading_trailing: bool,
    pub passes: bool,
}

/// Degree offsets between the decompositions of the two smoothings at a
/// nontrivial crossing of a non-twist alternating tangle. Negative tangles
/// are checked through their mirror. When both smoothings are reduced the
/// offsets must be exactly 2 at the top of `F` and the bottom of `G`;
/// otherwise `F` and `G` must both be shifted by 2 or 6 at the same end.
pub fn prop41_check(t: &Tangle, c: usize) -> Result<Prop41Report, TangleError> {
    t.check_index(c)?;
    let t = match t.sign() {
        TangleSign::Positive => t.clone(),
        TangleSign::Negative => t.mirror(),
        other => return Err(TangleError::Precondition(format!("tangle is {other}"))),
    };
    if t.is_twist() {
        return Err(TangleError::Precondition("twist tangle".into()));
    }
    if t.classify_crossing(c)? != CrossingClass::Nontrivial {
        return Err(TangleError::Precondition(format!("crossing {c} is not nontrivial")));
    }
    let s0 = t.smooth(c, SmoothingKind::Zero, false)?.tangle;
    let s1 = t.smooth(c, SmoothingKind::Infinity, false)?.tangle;
    let both_reduced = s0.is_reduced() && s1.is_reduced();
    let (p0, p1) = (s0.bracket_decompose()?, s1.bracket_decompose()?);
    let f = Offsets::of(&p0.big_f, &p1.big_f);
    let g = Offsets::of(&p0.big_g, &p1.big_g);
    let combined = |a: &LaurentPoly, b: &LaurentPoly| (&a.shift(1) + &b.shift(-1)).max_gap(4);
    let combined_gap_f = combined(&p0.big_f, &p1.big_f)?;
    let combined_gap_g = combined(&p0.big_g, &p1.big_g)?;
    let ok = |o: i64| o == 2 || o == 6;
    let leading_trailing = matches!((f, g), (Some(f), Some(g)) if ok(f.max) && ok(g.min));
    let passes = match (f, g) {
        (Some(f), Some(g)) if both_reduced => f.max == 2 && g.min == 2,
        (Some(f), Some(g)) => (ok(f.max) && ok(g.max)) || (ok(f.min) && ok(g.min)),
        _ => false,
    };
    Ok(Prop41Report { crossing: c, both_reduced, f, g, combined_gap_f, combined_gap_g, leading_trailing, passes })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Lemma43Report {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    /// Exponents agree mod 4 and the sign of `A^(e0 + 4k)` is `(-1)^k`
    /// times a fixed sign, so terms across a gap keep the parity pattern.
    pub f_alternating: bool,
    pub g_alternating: bool,
    /// `f` and `g` carry one common sign pattern.
    pub same_sign: bool,
    /// Exponents where `f` and `g` have the same nonzero coefficient.
    pub common_terms: Vec<i64>,
    /// Exponents nonzero in both.
    pub common_exponents: Vec<i64>,
    pub max_gap_f: i64,
    pub max_gap_g: i64,
    pub passes: bool,
}

pub fn lemma43_check(t: &Tangle) -> Result<Lemma43Report, TangleError> {
    if t.sign() != TangleSign::Positive {
        return Err(TangleError::Precondition("tangle is not positive".into()));
    }
    if !t.is_reduced() {
        return Err(TangleError::Unreduced);
    }
    let p = t.bracket_decompose()?;
    let (f, g) = (p.f, p.g);
    let f_alternating = f.signs_follow_degree(4)?;
    let g_alternating = g.signs_follow_degree(4)?;
    // Merge the sign patterns; they must agree where both are nonzero and
    // together still follow the degree.
    let mut signs = LaurentPoly::zero(Var::A);
    let mut agree = true;
    for (e, c) in f.terms().chain(g.terms()) {
        let unit = if *c > BigInt::from(0) { 1 } else { -1 };
        match signs.coeff(e) {
            x if x == BigInt::from(0) => signs.add_term(e, BigInt::from(unit)),
            x => agree &= x == BigInt::from(unit),
        }
    }
    let same_sign = agree && signs.signs_follow_degree(4)?;
    let common_terms: Vec<i64> = f.terms().filter(|(e, c)| g.coeff(*e) == **c).map(|(e, _)| e).collect();
    let common_exponents: Vec<i64> = f.terms().filter(|(e, _)| g.coeff(*e) != BigInt::from(0)).map(|(e, _)| e).collect();
    let max_gap_f = f.max_gap(4)?;
    let max_gap_g = g.max_gap(4)?;
    let passes = f_alternating && g_alternating && same_sign && !common_terms.is_empty() && max_gap_f <= 8 && max_gap_g <= 8;
    Ok(Lemma43Report { f, g, f_alternating, g_alternating, same_sign, common_terms, common_exponents, max_gap_f, max_gap_g, passes })
}
