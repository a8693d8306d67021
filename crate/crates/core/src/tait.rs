//! Signed Tait graphs and spanning-tree determinants.
//!
//! Vertices are the shaded faces of a checkerboard colouring, one edge per
//! crossing. An edge is positive when the shaded corners at its crossing are
//! the A-corners (corners 1 and 3), so contracting a positive edge is the
//! `Zero` smoothing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{LinkDiagram, Sign};
use crate::planar::{dart, Faces, PlanarMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaitError {
    #[error("diagram is split")]
    Split,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("faces admit no checkerboard colouring")]
    NotColourable,
    #[error("edge {0} out of range")]
    InvalidEdge(usize),
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("marked vertices coincide")]
    SameVertex,
}

/// Which colour class of the checkerboard colouring is shaded. `Class0` is
/// the class containing corner 0 of crossing 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shading {
    Class0,
    Class1,
}

impl Shading {
    pub fn other(self) -> Self {
        match self {
            Shading::Class0 => Shading::Class1,
            Shading::Class1 => Shading::Class0,
        }
    }

    pub fn colour(self) -> u8 {
        match self {
            Shading::Class0 => 0,
            Shading::Class1 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaitEdge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
    pub crossing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaitGraph {
    pub vertex_count: usize,
    pub edges: Vec<TaitEdge>,
}

/// `s[v]` counts spanning trees with exactly `v` positive edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TreeCounts {
    pub s: Vec<u128>,
    pub alternating_sum: i128,
}

impl TreeCounts {
    fn from_poly(mut s: Vec<u128>) -> Self {
        while s.last() == Some(&0) {
            s.pop();
        }
        let alternating_sum = s
            .iter()
            .enumerate()
            .map(|(v, &c)| if v % 2 == 0 { c as i128 } else { -(c as i128) })
            .sum();
        Self { s, alternating_sum }
    }

    pub fn total(&self) -> u128 {
        self.s.iter().sum()
    }

    pub fn get(&self, v: usize) -> u128 {
        self.s.get(v).copied().unwrap_or(0)
    }

    /// The same trees with every positive-edge count raised by `k`.
    pub fn shifted(&self, k: usize) -> Self {
        let mut s = vec![0; k];
        s.extend_from_slice(&self.s);
        Self::from_poly(s)
    }

    pub fn det(&self) -> u128 {
        self.alternating_sum.unsigned_abs()
    }
}

/// Colour of every face, normalized so the face at corner 0 gets colour 0.
pub(crate) fn normalized_colours(map: &PlanarMap, faces: &Faces) -> Option<Vec<u8>> {
    let mut colours = map.face_colors(faces)?;
    if !colours.is_empty() && colours[faces.of_corner[0]] == 1 {
        colours.iter_mut().for_each(|c| *c = 1 - *c);
    }
    Some(colours)
}

/// Tait graph from a shaded-face predicate on a planar map whose first
/// `crossing_count` vertices are crossings. Corner `k` shaded at a crossing
/// means the edge joins the faces at corners `k` and `k+2`.
pub(crate) fn tait_from_map(faces: &Faces, shaded: &[bool], crossing_count: usize) -> TaitGraph {
    let mut index = vec![usize::MAX; faces.count];
    let mut vertex_count = 0;
    for f in 0..faces.count {
        if shaded[f] {
            index[f] = vertex_count;
            vertex_count += 1;
        }
    }
    let edges = (0..crossing_count)
        .map(|c| {
            let k = if shaded[faces.of_corner[dart(c, 0)]] { 0 } else { 1 };
            TaitEdge {
                u: index[faces.of_corner[dart(c, k)]],
                v: index[faces.of_corner[dart(c, k + 2)]],
                sign: if k == 1 { Sign::Positive } else { Sign::Negative },
                crossing: c,
            }
        })
        .collect();
    TaitGraph { vertex_count, edges }
}

pub fn build_tait(d: &LinkDiagram, shading: Shading) -> Result<TaitGraph, TaitError> {
    if d.is_split() {
        return Err(TaitError::Split);
    }
    if d.crossing_count() == 0 {
        return Ok(TaitGraph { vertex_count: 1, edges: Vec::new() });
    }
    let map = d.map();
    let faces = map.faces();
    let colours = normalized_colours(&map, &faces).ok_or(TaitError::NotColourable)?;
    let shaded: Vec<bool> = colours.iter().map(|&c| c == shading.colour()).collect();
    Ok(tait_from_map(&faces, &shaded, d.crossing_count()))
}

type Bundles = BTreeMap<(usize, usize), (u128, u128)>;

fn bundles_connected(n: usize, b: &Bundles) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in b.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

fn add_poly(a: &mut Vec<u128>, b: &[u128]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Multiplies by `p*x + q`.
fn mul_linear(a: &[u128], p: u128, q: u128) -> Vec<u128> {
    let mut out = vec![0; a.len() + 1];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c * q;
        out[i + 1] += c * p;
    }
    out
}

fn contract_bundles(n: usize, b: &Bundles, u: usize, v: usize) -> Bundles {
    let relabel = |w: usize| {
        let w = if w == v { u } else { w };
        if w > v { w - 1 } else { w }
    };
    let mut out = Bundles::new();
    for (&(a, c), &(p, q)) in b {
        let (a, c) = (relabel(a), relabel(c));
        if a == c {
            continue;
        }
        let e = out.entry((a.min(c), a.max(c))).or_insert((0, 0));
        e.0 += p;
        e.1 += q;
    }
    debug_assert!(out.keys().all(|&(a, c)| a < n - 1 && c < n - 1));
    out
}

fn tree_poly(n: usize, b: &Bundles) -> Vec<u128> {
    if n <= 1 {
        return vec![1];
    }
    if !bundles_connected(n, b) {
        return Vec::new();
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in b.keys() {
        degree[u] += 1;
        degree[v] += 1;
    }
    // Branch on a bundle at a vertex of least bundle-degree.
    let w = (0..n).min_by_key(|&w| degree[w]).expect("n > 1");
    let (&(u, v), &(p, q)) = b.iter().find(|((u, v), _)| *u == w || *v == w).expect("connected");
    let contracted = mul_linear(&tree_poly(n - 1, &contract_bundles(n, b, u, v)), p, q);
    if degree[w] == 1 {
        return contracted;
    }
    let mut deleted = b.clone();
    deleted.remove(&(u, v));
    let mut out = tree_poly(n, &deleted);
    add_poly(&mut out, &contracted);
    out
}

impl TaitGraph {
    pub fn new(vertex_count: usize, edges: Vec<TaitEdge>) -> Self {
        Self { vertex_count, edges }
    }

    fn bundles(&self) -> Bundles {
        let mut b = Bundles::new();
        for e in &self.edges {
            if e.u == e.v {
                continue;
            }
            let entry = b.entry((e.u.min(e.v), e.u.max(e.v))).or_insert((0, 0));
            match e.sign {
                Sign::Positive => entry.0 += 1,
                Sign::Negative => entry.1 += 1,
            }
        }
        b
    }

    pub fn is_connected(&self) -> bool {
        bundles_connected(self.vertex_count, &self.bundles())
    }

    pub fn positive_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.sign == Sign::Positive).count()
    }

    pub fn is_single_signed(&self) -> bool {
        self.edges.windows(2).all(|w| w[0].sign == w[1].sign)
    }

    pub fn loop_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].u == self.edges[i].v).collect()
    }

    fn check_edge(&self, e: usize) -> Result<(), TaitError> {
        if e >= self.edges.len() {
            return Err(TaitError::InvalidEdge(e));
        }
        Ok(())
    }

    pub fn delete(&self, e: usize) -> Result<Self, TaitError> {
        self.check_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Self { vertex_count: self.vertex_count, edges })
    }

    /// Identifies the endpoints of `e` and drops it; other edges keep their
    /// order and may become loops.
    pub fn contract(&self, e: usize) -> Result<Self, TaitError> {
        self.check_edge(e)?;
        let TaitEdge { u, v, .. } = self.edges[e];
        if u == v {
            return self.delete(e);
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone { w - 1 } else { w }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| TaitEdge { u: relabel(x.u), v: relabel(x.v), ..*x })
            .collect();
        Ok(Self { vertex_count: self.vertex_count - 1, edges })
    }

    /// Spanning-tree counts by positive-edge number, via deletion-contraction
    /// over parallel-edge bundles.
    pub fn spanning_tree_counts(&self) -> Result<TreeCounts, TaitError> {
        let b = self.bundles();
        if !bundles_connected(self.vertex_count, &b) {
            return Err(TaitError::Disconnected);
        }
        Ok(TreeCounts::from_poly(tree_poly(self.vertex_count, &b)))
    }

    /// Every spanning tree as a sorted list of edge indices. Exponential;
    /// intended for small graphs and as an oracle.
    pub fn enumerate_spanning_trees(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.vertex_count == 0 {
            return out;
        }
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        let mut chosen = Vec::new();
        self.backtrack(0, &mut parent, &mut chosen, &mut out);
        out
    }

    fn backtrack(&self, i: usize, parent: &mut Vec<usize>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() + 1 == self.vertex_count {
            out.push(chosen.clone());
            return;
        }
        if i == self.edges.len() || self.edges.len() - i < self.vertex_count - 1 - chosen.len() {
            return;
        }
        fn root(p: &[usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let e = self.edges[i];
        let (ru, rv) = (root(parent, e.u), root(parent, e.v));
        if ru != rv {
            parent[ru] = rv;
            chosen.push(i);
            self.backtrack(i + 1, parent, chosen, out);
            chosen.pop();
            parent[ru] = ru;
        }
        self.backtrack(i + 1, parent, chosen, out);
    }

    /// Tree counts from explicit enumeration; oracle for
    /// [`spanning_tree_counts`](Self::spanning_tree_counts).
    pub fn enumerated_counts(&self) -> TreeCounts {
        let mut s = Vec::new();
        for t in self.enumerate_spanning_trees() {
            let v = t.iter().filter(|&&i| self.edges[i].sign == Sign::Positive).count();
            if s.len() <= v {
                s.resize(v + 1, 0);
            }
            s[v] += 1;
        }
        TreeCounts::from_poly(s)
    }

    pub fn det_from_trees(&self) -> Result<u128, TaitError> {
        Ok(self.spanning_tree_counts()?.det())
    }

    /// |det| of the reduced Laplacian with weight -1 on positive edges and
    /// +1 on negative ones, by fraction-free elimination.
    pub fn det_from_laplacian(&self) -> Result<BigInt, TaitError> {
        let n = self.vertex_count;
        if n == 0 {
            return Err(TaitError::Disconnected);
        }
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for e in &self.edges {
            if e.u == e.v {
                continue;
            }
            let w = BigInt::from(-e.sign.value());
            m[e.u][e.u] += &w;
            m[e.v][e.v] += &w;
            m[e.u][e.v] -= &w;
            m[e.v][e.u] -= &w;
        }
        let mut a: Vec<Vec<BigInt>> = m.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
        Ok(bareiss_det(&mut a).abs())
    }

    /// Counts of spanning trees containing `e` and avoiding `e`, both indexed
    /// by positive-edge number in `self`.
    pub fn edge_split_counts(&self, e: usize) -> Result<(TreeCounts, TreeCounts), TaitError> {
        self.check_edge(e)?;
        self.spanning_tree_counts()?;
        let edge = self.edges[e];
        let with = if edge.u == edge.v {
            TreeCounts::default()
        } else {
            let shift = usize::from(edge.sign == Sign::Positive);
            self.contract(e)?.spanning_tree_counts()?.shifted(shift)
        };
        let del = self.delete(e)?;
        let without = del.spanning_tree_counts().unwrap_or_default();
        Ok((with, without))
    }

    /// Spanning 2-forests separating `u1` from `u2`: their number `y` and,
    /// per edge, how many contain it.
    pub fn almost_spanning_counts(&self, u1: usize, u2: usize) -> Result<AlmostSpanning, TaitError> {
        for u in [u1, u2] {
            if u >= self.vertex_count {
                return Err(TaitError::InvalidVertex(u));
            }
        }
        if u1 == u2 {
            return Err(TaitError::SameVertex);
        }
        let mut aux = self.clone();
        let marker = self.edges.len();
        aux.edges.push(TaitEdge { u: u1, v: u2, sign: Sign::Negative, crossing: usize::MAX });
        let mut y = 0;
        let mut per_edge = vec![0; self.edges.len()];
        for t in aux.enumerate_spanning_trees() {
            if !t.contains(&marker) {
                continue;
            }
            y += 1;
            for &i in t.iter().filter(|&&i| i != marker) {
                per_edge[i] += 1;
            }
        }
        Ok(AlmostSpanning { y, per_edge })
    }

    /// Debug dump: vertex count, then one `u v sign crossing` line per edge.
    pub fn dump(&self) -> String {
        let mut s = format!("{}\n", self.vertex_count);
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {} {}", e.u, e.v, e.sign.value(), e.crossing);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostSpanning {
    pub y: u128,
    pub per_edge: Vec<u128>,
}

/// Determinant of a square matrix by Bareiss elimination; consumes `a`.
pub fn bareiss_det(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// Convenience for callers that need a machine integer.
pub fn big_to_u128(b: &BigInt) -> u128 {
    b.to_u128().expect("nonnegative and small")
}
