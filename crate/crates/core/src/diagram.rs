//! Oriented link diagrams in PD form.
//!
//! A crossing lists four arc ids counterclockwise. Slots 0 and 2 belong to
//! the under-strand, slots 1 and 3 to the over-strand. Stored diagrams are
//! normalized so that slot 0 is the incoming under-strand; a crossing is
//! positive when the over-strand enters at slot 3.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pd::{self, Token, TokenError};
use crate::planar::{dart, slot, vertex, Faces, PlanarMap};

pub type Arc = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error("line {0}: boundary token B[...] is not allowed in a link diagram")]
    UnexpectedBoundary(usize),
    #[error("arc {arc} occurs {count} times (expected 2)")]
    ArcMultiplicity { arc: Arc, count: usize },
    #[error("inconsistent orientation at crossing {0}: under-strand does not enter at slot 0")]
    InconsistentOrientation(usize),
    #[error("PD code does not describe a planar diagram")]
    NonPlanar,
    #[error("empty diagram")]
    Empty,
    #[error("crossing index {index} out of range ({len} crossings)")]
    CrossingOutOfRange { index: usize, len: usize },
    #[error("braid generator {0} out of range")]
    BadGenerator(i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [Arc; 4],
}

impl Crossing {
    pub fn new(slots: [Arc; 4]) -> Self {
        Self { slots }
    }

    /// Slot `j` of the result is slot `j + r` of `self`.
    pub fn rotated(&self, r: usize) -> Self {
        let s = self.slots;
        Self { slots: [s[r % 4], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]] }
    }

    pub fn relabeled(&self, f: impl Fn(Arc) -> Arc) -> Self {
        Self { slots: self.slots.map(f) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// `Zero` is the A-smoothing (slots 0-1 and 2-3 joined), `Infinity` the
/// A^-1-smoothing (slots 0-3 and 1-2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SmoothingKind {
    Zero,
    Infinity,
}

impl SmoothingKind {
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            SmoothingKind::Zero => [(0, 1), (2, 3)],
            SmoothingKind::Infinity => [(0, 3), (1, 2)],
        }
    }

    pub fn other(self) -> Self {
        match self {
            SmoothingKind::Zero => SmoothingKind::Infinity,
            SmoothingKind::Infinity => SmoothingKind::Zero,
        }
    }
}

/// Opaque isomorphism key: equal for diagrams that differ only by arc
/// relabeling and crossing order. Orientation is ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramKey(Vec<u32>);

impl DiagramKey {
    pub fn words(&self) -> &[u32] {
        &self.0
    }
}

/// Orientation preference carried through diagram surgery.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Hint {
    pub under_in0: Option<bool>,
    pub over_in3: Option<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OrientMode {
    Strict,
    Prefer,
}

/// Small union-find keyed by arc id.
#[derive(Default)]
pub(crate) struct ArcUnion {
    parent: HashMap<Arc, Arc>,
}

impl ArcUnion {
    pub fn find(&mut self, a: Arc) -> Arc {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.parent.insert(a, r);
        r
    }

    pub fn root(&self, mut a: Arc) -> Arc {
        while let Some(&p) = self.parent.get(&a) {
            if p == a {
                break;
            }
            a = p;
        }
        a
    }

    pub fn union(&mut self, a: Arc, b: Arc) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// Dart adjacency implied by arc labels; every arc must occupy exactly two slots.
pub(crate) fn planar_map(crossings: &[Crossing]) -> Result<PlanarMap, DiagramError> {
    let mut ends: HashMap<Arc, Vec<usize>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (k, a) in x.slots.iter().enumerate() {
            ends.entry(*a).or_default().push(dart(c, k));
        }
    }
    let mut partner = vec![0; crossings.len() * 4];
    let mut arcs: Vec<_> = ends.into_iter().collect();
    arcs.sort();
    for (arc, ds) in arcs {
        if ds.len() != 2 {
            return Err(DiagramError::ArcMultiplicity { arc, count: ds.len() });
        }
        partner[ds[0]] = ds[1];
        partner[ds[1]] = ds[0];
    }
    Ok(PlanarMap { partner })
}

/// Strand components as sequences of entering darts, in an arbitrary
/// but deterministic direction.
fn trace_strands(map: &PlanarMap) -> Vec<Vec<usize>> {
    let nd = map.partner.len();
    let mut seen = vec![false; nd];
    let mut comps = Vec::new();
    for start in 0..nd {
        if slot(start) >= 2 || seen[start] {
            continue;
        }
        let mut entries = Vec::new();
        let mut d = start;
        loop {
            let exit = dart(vertex(d), slot(d) + 2);
            seen[d] = true;
            seen[exit] = true;
            entries.push(d);
            d = map.partner[exit];
            if d == start {
                break;
            }
        }
        comps.push(entries);
    }
    comps
}

fn orient(raw: Vec<Crossing>, hints: &[Hint], mode: OrientMode) -> Result<(Vec<Crossing>, Vec<Sign>), DiagramError> {
    let map = planar_map(&raw)?;
    let n = raw.len();
    let mut under_in = vec![0usize; n];
    let mut over_in = vec![1usize; n];
    for entries in trace_strands(&map) {
        let flip = match mode {
            OrientMode::Strict => match entries.iter().find(|&&d| slot(d).is_multiple_of(2)) {
                Some(&d) => slot(d) == 2,
                None => {
                    let d = entries[0];
                    let s = raw[vertex(d)].slots;
                    let (j, l) = (s[1], s[3]);
                    let want_in3 = j == l + 1 || l > j + 1;
                    (slot(d) == 3) != want_in3
                }
            },
            OrientMode::Prefer => {
                let mut best: Option<(usize, bool)> = None;
                for &d in &entries {
                    let c = vertex(d);
                    let wanted = if slot(d).is_multiple_of(2) {
                        hints.get(c).and_then(|h| h.under_in0).map(|in0| if in0 { 0 } else { 2 })
                    } else {
                        hints.get(c).and_then(|h| h.over_in3).map(|in3| if in3 { 3 } else { 1 })
                    };
                    if let Some(w) = wanted {
                        if best.is_none_or(|(bc, _)| c < bc) {
                            best = Some((c, slot(d) != w));
                        }
                    }
                }
                best.map(|(_, f)| f).unwrap_or(false)
            }
        };
        for &d in &entries {
            let e = if flip { dart(vertex(d), slot(d) + 2) } else { d };
            let c = vertex(e);
            if slot(e).is_multiple_of(2) {
                under_in[c] = slot(e);
            } else {
                over_in[c] = slot(e);
            }
        }
    }
    let mut crossings = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for c in 0..n {
        let (x, o) = if under_in[c] == 2 {
            if mode == OrientMode::Strict {
                return Err(DiagramError::InconsistentOrientation(c));
            }
            (raw[c].rotated(2), (over_in[c] + 2) % 4)
        } else {
            (raw[c], over_in[c])
        };
        crossings.push(x);
        signs.push(if o == 3 { Sign::Positive } else { Sign::Negative });
    }
    Ok((crossings, signs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    signs: Vec<Sign>,
    free_loops: usize,
}

/// The two halves of a connected-sum decomposition along arcs `arcs`.
#[derive(Debug, Clone)]
pub struct ConnectedSum {
    pub left: LinkDiagram,
    pub right: LinkDiagram,
    pub arcs: (Arc, Arc),
}

impl LinkDiagram {
    /// `k` crossingless unknotted circles.
    pub fn unlink(k: usize) -> Self {
        Self { crossings: Vec::new(), signs: Vec::new(), free_loops: k }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Builds a diagram from PD crossings whose slot 0 is the incoming
    /// under-strand.
    pub fn from_pd(crossings: &[[Arc; 4]], free_loops: usize) -> Result<Self, DiagramError> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let raw: Vec<Crossing> = crossings.iter().map(|s| Crossing::new(*s)).collect();
        let map = planar_map(&raw)?;
        if !map.is_spherical(&map.faces()) {
            return Err(DiagramError::NonPlanar);
        }
        let (crossings, signs) = orient(raw, &[], OrientMode::Strict)?;
        Ok(Self { crossings, signs, free_loops })
    }

    /// Rebuilds after surgery, keeping strand directions where the hints
    /// allow it.
    pub(crate) fn rebuild(raw: Vec<Crossing>, hints: &[Hint], free_loops: usize) -> Self {
        let (crossings, signs) = orient(raw, hints, OrientMode::Prefer).expect("surgery preserves arc multiplicity");
        Self { crossings, signs, free_loops }
    }

    pub(crate) fn hints(&self) -> Vec<Hint> {
        self.signs
            .iter()
            .map(|s| Hint { under_in0: Some(true), over_in3: Some(*s == Sign::Positive) })
            .collect()
    }

    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let mut xs = Vec::new();
        let mut loops = 0;
        for t in pd::tokenize(text)? {
            match t.token {
                Token::X(s) => xs.push(s),
                Token::Loop => loops += 1,
                Token::B(_) => return Err(DiagramError::UnexpectedBoundary(t.line)),
            }
        }
        Self::from_pd(&xs, loops)
    }

    /// PD text with arcs renumbered consecutively along each oriented
    /// component.
    pub fn to_pd(&self) -> String {
        let relabeled = self.sequential_labels();
        let mut parts: Vec<String> = relabeled
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x.slots[0], x.slots[1], x.slots[2], x.slots[3]))
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        parts.join(" ")
    }

    fn sequential_labels(&self) -> Vec<Crossing> {
        let map = self.map();
        let n = self.crossings.len();
        let mut label = vec![0u32; 4 * n];
        let mut visited = vec![false; 4 * n];
        let mut next = 1u32;
        for c in 0..n {
            for k in [0, self.over_in(c)] {
                let start = dart(c, k);
                if visited[start] {
                    continue;
                }
                let base = next;
                let mut d = start;
                let mut count = 0u32;
                loop {
                    visited[d] = true;
                    let exit = dart(vertex(d), slot(d) + 2);
                    let nd = map.partner[exit];
                    count += 1;
                    let l = if nd == start { base } else { base + count };
                    label[exit] = l;
                    label[nd] = l;
                    d = nd;
                    if d == start {
                        break;
                    }
                }
                next = base + count;
            }
        }
        (0..n)
            .map(|c| Crossing::new([label[dart(c, 0)], label[dart(c, 1)], label[dart(c, 2)], label[dart(c, 3)]]))
            .collect()
    }

    fn over_in(&self, c: usize) -> usize {
        if self.signs[c] == Sign::Positive { 3 } else { 1 }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn without_free_loops(&self) -> Self {
        Self { free_loops: 0, ..self.clone() }
    }

    pub fn map(&self) -> PlanarMap {
        planar_map(&self.crossings).expect("validated diagram")
    }

    pub fn faces(&self) -> Faces {
        self.map().faces()
    }

    fn check_index(&self, c: usize) -> Result<(), DiagramError> {
        if c >= self.crossings.len() {
            return Err(DiagramError::CrossingOutOfRange { index: c, len: self.crossings.len() });
        }
        Ok(())
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// Number of link components, free loops included.
    pub fn components(&self) -> usize {
        trace_strands(&self.map()).len() + self.free_loops
    }

    /// Connected pieces of the diagram: graph components plus free loops.
    pub fn pieces(&self) -> usize {
        self.map().vertex_components().1 + self.free_loops
    }

    pub fn is_split(&self) -> bool {
        self.pieces() > 1
    }

    pub fn is_alternating(&self) -> bool {
        trace_strands(&self.map()).iter().all(|entries| {
            let len = entries.len();
            (0..len).all(|i| slot(entries[i]) % 2 != slot(entries[(i + 1) % len]) % 2)
        })
    }

    pub fn smooth(&self, c: usize, kind: SmoothingKind) -> Result<Self, DiagramError> {
        self.check_index(c)?;
        let x = self.crossings[c].slots;
        let mut uf = ArcUnion::default();
        for (p, q) in kind.pairs() {
            uf.union(x[p], x[q]);
        }
        let mut rest = Vec::with_capacity(self.crossings.len() - 1);
        let mut hints = self.hints();
        hints.remove(c);
        for (i, y) in self.crossings.iter().enumerate() {
            if i != c {
                rest.push(y.relabeled(|a| uf.root(a)));
            }
        }
        let used: HashSet<Arc> = rest.iter().flat_map(|y| y.slots).collect();
        let roots: HashSet<Arc> = x.iter().map(|a| uf.find(*a)).collect();
        let loops = roots.iter().filter(|r| !used.contains(r)).count();
        Ok(Self::rebuild(rest, &hints, self.free_loops + loops))
    }

    /// True when opposite corners of `c` lie in one region, i.e. the crossing
    /// is a cut vertex of the projection.
    pub fn is_nugatory(&self, c: usize) -> Result<bool, DiagramError> {
        self.check_index(c)?;
        Ok(self.nugatory_with(&self.faces(), c))
    }

    fn nugatory_with(&self, faces: &Faces, c: usize) -> bool {
        let f = &faces.of_corner;
        f[dart(c, 0)] == f[dart(c, 2)] || f[dart(c, 1)] == f[dart(c, 3)]
    }

    fn is_kink(&self, c: usize) -> bool {
        let s = self.crossings[c].slots;
        (0..4).any(|k| s[k] == s[(k + 1) % 4])
    }

    /// Removes a nugatory crossing by its non-splitting smoothing.
    /// Returns the result and `w` with `<self> = (-A^3)^w <result>`.
    fn untwist(&self, c: usize) -> (Self, i64) {
        let zero = self.smooth(c, SmoothingKind::Zero).expect("index checked");
        if zero.pieces() > self.pieces() {
            (self.smooth(c, SmoothingKind::Infinity).expect("index checked"), 1)
        } else {
            (zero, -1)
        }
    }

    /// Strips all Reidemeister-I curls. `<self> = (-A^3)^w <reduced>`.
    pub fn reduce_r1(&self) -> (Self, i64) {
        let mut d = self.clone();
        let mut w = 0;
        while let Some(c) = (0..d.crossings.len()).find(|&c| d.is_kink(c)) {
            let (next, dw) = d.untwist(c);
            d = next;
            w += dw;
        }
        (d, w)
    }

    /// Removes every nugatory crossing (curls and larger lobes alike),
    /// tracking the bracket scaling as in [`reduce_r1`](Self::reduce_r1).
    pub fn remove_nugatory(&self) -> (Self, i64) {
        let mut d = self.clone();
        let mut w = 0;
        loop {
            let faces = d.faces();
            let Some(c) = (0..d.crossings.len()).find(|&c| d.nugatory_with(&faces, c)) else {
                return (d, w);
            };
            let (next, dw) = d.untwist(c);
            d = next;
            w += dw;
        }
    }

    /// Cancels one bigon whose two edges are each over (or each under) at
    /// both ends, if there is one. The bracket is unchanged.
    pub fn reduce_r2_once(&self) -> Option<Self> {
        let map = self.map();
        let faces = map.faces();
        let mut corners: Vec<Vec<usize>> = vec![Vec::new(); faces.count];
        for (c, &f) in faces.of_corner.iter().enumerate() {
            corners[f].push(c);
        }
        for face in corners.iter().filter(|f| f.len() == 2) {
            let (a, k) = (vertex(face[0]), slot(face[0]));
            if a == vertex(face[1]) {
                continue;
            }
            let over = if k % 2 == 1 { k } else { (k + 1) % 4 };
            let p = map.partner[dart(a, over)];
            if slot(p).is_multiple_of(2) {
                continue;
            }
            let b = vertex(p);
            let (xa, xb) = (self.crossings[a].slots, self.crossings[b].slots);
            let mut uf = ArcUnion::default();
            for k in 0..2 {
                uf.union(xa[k], xa[k + 2]);
                uf.union(xb[k], xb[k + 2]);
            }
            let mut rest = Vec::new();
            let mut hints = Vec::new();
            let h = self.hints();
            for (i, y) in self.crossings.iter().enumerate() {
                if i != a && i != b {
                    rest.push(y.relabeled(|z| uf.root(z)));
                    hints.push(h[i]);
                }
            }
            let used: HashSet<Arc> = rest.iter().flat_map(|y| y.slots).collect();
            let roots: HashSet<Arc> = xa.iter().chain(&xb).map(|z| uf.root(*z)).collect();
            let loops = roots.iter().filter(|r| !used.contains(r)).count();
            return Some(Self::rebuild(rest, &hints, self.free_loops + loops));
        }
        None
    }

    /// Removes nugatory crossings and cancels Reidemeister-II bigons until
    /// neither applies. Returns `w` with `<self> = (-A^3)^w <result>`.
    pub fn simplify(&self) -> (Self, i64) {
        let (mut d, mut w) = self.remove_nugatory();
        while let Some(next) = d.reduce_r2_once() {
            let (r, dw) = next.remove_nugatory();
            d = r;
            w += dw;
        }
        (d, w)
    }

    pub fn is_reduced(&self) -> bool {
        let faces = self.faces();
        !(0..self.crossings.len()).any(|c| self.nugatory_with(&faces, c))
    }

    pub fn mirror(&self) -> Self {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        let mut signs = Vec::with_capacity(self.crossings.len());
        for (x, s) in self.crossings.iter().zip(&self.signs) {
            match s {
                Sign::Positive => {
                    crossings.push(x.rotated(3));
                    signs.push(Sign::Negative);
                }
                Sign::Negative => {
                    crossings.push(x.rotated(1));
                    signs.push(Sign::Positive);
                }
            }
        }
        Self { crossings, signs, free_loops: self.free_loops }
    }

    pub fn canonical_key(&self) -> DiagramKey {
        let map = self.map();
        let (comp, ncomp) = map.vertex_components();
        let mut codes: Vec<Vec<u32>> = (0..ncomp)
            .map(|k| {
                (0..map.partner.len())
                    .filter(|&d| comp[vertex(d)] == k)
                    .map(|d| map.rooted_code(d))
                    .min()
                    .expect("components are nonempty")
            })
            .collect();
        codes.sort();
        let mut key = vec![self.free_loops as u32, ncomp as u32];
        for c in codes {
            key.push(c.len() as u32);
            key.extend(c);
        }
        DiagramKey(key)
    }

    /// Renumbers arcs and reorders crossings; used to check relabeling invariance.
    pub fn permuted(&self, order: &[usize], relabel: impl Fn(Arc) -> Arc) -> Self {
        Self {
            crossings: order.iter().map(|&i| self.crossings[i].relabeled(&relabel)).collect(),
            signs: order.iter().map(|&i| self.signs[i]).collect(),
            free_loops: self.free_loops,
        }
    }

    /// Finds a visible connected-sum decomposition: two arcs bounding the
    /// same pair of regions whose removal separates the crossings.
    pub fn connected_sum_split(&self) -> Option<ConnectedSum> {
        if self.free_loops > 0 || self.crossings.len() < 2 {
            return None;
        }
        let map = self.map();
        let faces = map.faces();
        let mut by_faces: HashMap<(usize, usize), Vec<Arc>> = HashMap::new();
        let mut seen = HashSet::new();
        for d in 0..map.partner.len() {
            let a = self.crossings[vertex(d)].slots[slot(d)];
            if !seen.insert(a) {
                continue;
            }
            let f1 = faces.of_corner[dart(vertex(d), slot(d) + 3)];
            let f2 = faces.of_corner[d];
            if f1 != f2 {
                by_faces.entry((f1.min(f2), f1.max(f2))).or_default().push(a);
            }
        }
        let mut groups: Vec<_> = by_faces.into_values().filter(|g| g.len() >= 2).collect();
        groups.iter_mut().for_each(|g| g.sort());
        groups.sort();
        for g in groups {
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    if let Some(cs) = self.split_at_arcs(g[i], g[j]) {
                        return Some(cs);
                    }
                }
            }
        }
        None
    }

    /// Cuts arcs `a` and `b` and closes each side; `None` unless both sides
    /// keep crossings.
    pub fn split_at_arcs(&self, a: Arc, b: Arc) -> Option<ConnectedSum> {
        let n = self.crossings.len();
        let mut side = vec![usize::MAX; n];
        let mut arc_users: HashMap<Arc, Vec<usize>> = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for s in x.slots {
                arc_users.entry(s).or_default().push(c);
            }
        }
        if !arc_users.contains_key(&a) || !arc_users.contains_key(&b) || a == b {
            return None;
        }
        side[0] = 0;
        let mut stack = vec![0];
        while let Some(c) = stack.pop() {
            for s in self.crossings[c].slots {
                if s == a || s == b {
                    continue;
                }
                for &o in &arc_users[&s] {
                    if side[o] == usize::MAX {
                        side[o] = 0;
                        stack.push(o);
                    }
                }
            }
        }
        let left: Vec<usize> = (0..n).filter(|&c| side[c] == 0).collect();
        let right: Vec<usize> = (0..n).filter(|&c| side[c] != 0).collect();
        if right.is_empty() {
            return None;
        }
        // Right side must itself be connected.
        let right_set: HashSet<usize> = right.iter().copied().collect();
        let mut reach = HashSet::from([right[0]]);
        let mut stack = vec![right[0]];
        while let Some(c) = stack.pop() {
            for s in self.crossings[c].slots {
                if s == a || s == b {
                    continue;
                }
                for &o in &arc_users[&s] {
                    if right_set.contains(&o) && reach.insert(o) {
                        stack.push(o);
                    }
                }
            }
        }
        if reach.len() != right.len() {
            return None;
        }
        let straddles = |arc: Arc| {
            let u = &arc_users[&arc];
            u.len() == 2 && side[u[0]] != side[u[1]]
        };
        if !straddles(a) || !straddles(b) {
            return None;
        }
        let mut uf = ArcUnion::default();
        uf.union(a, b);
        let hints = self.hints();
        let build = |idx: &[usize], uf: &ArcUnion| {
            let raw: Vec<Crossing> = idx.iter().map(|&c| self.crossings[c].relabeled(|s| uf.root(s))).collect();
            let h: Vec<Hint> = idx.iter().map(|&c| hints[c]).collect();
            Self::rebuild(raw, &h, 0)
        };
        let l = build(&left, &uf);
        let r = build(&right, &uf);
        Some(ConnectedSum { left: l, right: r, arcs: (a, b) })
    }

    /// Oriented connected sum, joined at the arcs entering crossing 0 of each
    /// summand.
    pub fn connected_sum(&self, other: &Self) -> Self {
        if self.crossings.is_empty() {
            return Self { free_loops: self.free_loops + other.free_loops - 1, ..other.clone() };
        }
        if other.crossings.is_empty() {
            return Self { free_loops: self.free_loops + other.free_loops - 1, ..self.clone() };
        }
        let offset = self.crossings.iter().flat_map(|x| x.slots).max().unwrap_or(0);
        let mut left = self.crossings.clone();
        let mut right: Vec<Crossing> = other.crossings.iter().map(|x| x.relabeled(|a| a + offset)).collect();
        let a = left[0].slots[0];
        let b = right[0].slots[0];
        left[0].slots[0] = b;
        right[0].slots[0] = a;
        let mut hints = self.hints();
        hints.extend(other.hints());
        left.extend(right);
        Self::rebuild(left, &hints, self.free_loops + other.free_loops)
    }

    /// Closure of a braid on `strands` strands. Generator `i > 0` is the
    /// positive crossing of strands `i` and `i+1`; `-i` its inverse.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        let mut cur: Vec<Arc> = (1..=strands as Arc).collect();
        let init = cur.clone();
        let mut next = strands as Arc + 1;
        let mut raw = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i >= strands {
                return Err(DiagramError::BadGenerator(g));
            }
            let (bl, br) = (cur[i - 1], cur[i]);
            let (tl, tr) = (next, next + 1);
            next += 2;
            raw.push(if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] });
            cur[i - 1] = tl;
            cur[i] = tr;
        }
        let mut uf = ArcUnion::default();
        let mut loops = 0;
        for p in 0..strands {
            if cur[p] == init[p] {
                loops += 1;
            } else {
                uf.union(cur[p], init[p]);
            }
        }
        let xs: Vec<[Arc; 4]> = raw.iter().map(|s| s.map(|a| uf.find(a))).collect();
        Self::from_pd(&xs, loops)
    }
}

impl std::fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    fn kinked() -> LinkDiagram {
        LinkDiagram::parse_pd("X[1,1,2,2]").unwrap()
    }

    #[test]
    fn parse_trefoil() {
        let t = trefoil();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.components(), 1);
        assert_eq!(t.writhe(), -3);
        assert_eq!(t.mirror().writhe(), 3);
    }

    #[test]
    fn parse_unknot_and_kink() {
        let u = LinkDiagram::parse_pd("O").unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.components(), 1);
        assert_eq!(u.writhe(), 0);
        let k = kinked();
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.writhe(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(LinkDiagram::parse_pd("X[1,2,2,3]"), Err(DiagramError::ArcMultiplicity { .. })));
        assert!(matches!(LinkDiagram::parse_pd(""), Err(DiagramError::Empty)));
        assert!(matches!(LinkDiagram::parse_pd("X[1,2,1"), Err(DiagramError::Token(_))));
        // Under-strand runs 2 -> 0 here: trefoil with one crossing rotated.
        assert!(matches!(
            LinkDiagram::parse_pd("X[2,5,1,4] X[3,6,4,1] X[5,2,6,3]"),
            Err(DiagramError::InconsistentOrientation(_))
        ));
        assert!(matches!(LinkDiagram::parse_pd("X[1,2,1,2]"), Err(DiagramError::NonPlanar)));
    }

    #[test]
    fn smoothing_kink() {
        let k = kinked();
        let z = k.smooth(0, SmoothingKind::Zero).unwrap();
        let i = k.smooth(0, SmoothingKind::Infinity).unwrap();
        assert_eq!((z.free_loops(), i.free_loops()), (2, 1));
        assert!(z.is_split() && !i.is_split());
        assert!(k.smooth(1, SmoothingKind::Zero).is_err());
    }

    #[test]
    fn smoothing_trefoil() {
        let t = trefoil();
        for c in 0..3 {
            let a = t.smooth(c, SmoothingKind::Zero).unwrap();
            let b = t.smooth(c, SmoothingKind::Infinity).unwrap();
            assert_eq!(a.crossing_count(), 2);
            let comps = [a.components(), b.components()];
            assert!(comps.contains(&1) && comps.contains(&2));
            let (one, two) = if a.components() == 1 { (a, b) } else { (b, a) };
            assert_eq!(one.reduce_r1().0.crossing_count(), 0);
            assert_eq!(two.reduce_r1().0.crossing_count(), 2);
        }
    }

    #[test]
    fn predicates() {
        let t = trefoil();
        assert!(t.is_alternating());
        assert!(!t.is_split());
        assert!(LinkDiagram::unknot().is_alternating());
        assert!(LinkDiagram::unlink(2).is_split());
        assert!(kinked().is_nugatory(0).unwrap());
        assert!((0..3).all(|c| !t.is_nugatory(c).unwrap()));
    }

    #[test]
    fn r1_reduction() {
        assert_eq!(kinked().reduce_r1(), (LinkDiagram::unknot(), 1));
        assert_eq!(trefoil().reduce_r1(), (trefoil(), 0));
        assert_eq!(kinked().mirror().reduce_r1().1, -1);
    }

    #[test]
    fn keys() {
        let t = trefoil();
        let relabeled = t.permuted(&[2, 0, 1], |a| a * 7 + 3);
        assert_eq!(t.canonical_key(), relabeled.canonical_key());
        assert_ne!(t.canonical_key(), t.mirror().canonical_key());
        assert_ne!(LinkDiagram::unknot().canonical_key(), kinked().canonical_key());
    }

    #[test]
    fn mirror_involution() {
        let t = trefoil();
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(LinkDiagram::unknot().mirror(), LinkDiagram::unknot());
    }

    #[test]
    fn pd_round_trip() {
        let t = trefoil().mirror();
        let back = LinkDiagram::parse_pd(&t.to_pd()).unwrap();
        assert_eq!(back.canonical_key(), t.canonical_key());
        assert_eq!(back.writhe(), t.writhe());
    }

    #[test]
    fn braid_trefoil() {
        let b = LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!(b.crossing_count(), 3);
        assert_eq!(b.writhe(), 3);
        assert!(b.is_alternating());
        assert_eq!(b.canonical_key(), trefoil().mirror().canonical_key());
    }

    #[test]
    fn granny_splits() {
        let t = trefoil();
        let g = t.connected_sum(&t);
        assert_eq!(g.crossing_count(), 6);
        assert!(!g.is_split());
        let cs = g.connected_sum_split().expect("composite");
        assert_eq!(cs.left.canonical_key(), t.canonical_key());
        assert_eq!(cs.right.canonical_key(), t.canonical_key());
        assert!(t.connected_sum_split().is_none());
    }

    #[test]
    fn r2_bigons_simplify_away() {
        let d = LinkDiagram::from_braid(2, &[1, -1]).unwrap();
        assert!(d.reduce_r2_once().is_some());
        let (s, _) = d.simplify();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.components(), 2);
        let d = LinkDiagram::from_braid(2, &[1, 1, -1]).unwrap();
        let (s, _) = d.simplify();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.components(), 1);
        assert!(trefoil().reduce_r2_once().is_none());
        assert_eq!(trefoil().simplify().0.crossing_count(), 3);
    }
}
