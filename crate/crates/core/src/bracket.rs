//! Kauffman bracket by state sum and by memoized skein recursion, plus the
//! Jones polynomial and determinant built on it.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::{DiagramKey, LinkDiagram, SmoothingKind};
use crate::poly::{JonesPoly, LaurentPoly, PolyError, Var};

/// Largest crossing count accepted by the state sum.
pub const STATE_SUM_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("state sum limited to {limit} crossings, diagram has {crossings}")]
    TooLarge { crossings: usize, limit: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Bit `i` of a state selects the smoothing at crossing `i`: clear for the
/// A-smoothing, set for the A^-1-smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSummary {
    pub alpha: usize,
    pub beta: usize,
    pub loops: usize,
}

struct LoopCounter {
    arcs: Vec<[usize; 4]>,
    arc_count: usize,
    parent: Vec<usize>,
}

impl LoopCounter {
    fn new(d: &LinkDiagram) -> Self {
        let mut ids = HashMap::new();
        let arcs = d
            .crossings()
            .iter()
            .map(|x| {
                x.slots.map(|a| {
                    let next = ids.len();
                    *ids.entry(a).or_insert(next)
                })
            })
            .collect();
        let arc_count = ids.len();
        Self { arcs, arc_count, parent: vec![0; arc_count] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn loops(&mut self, state: u64) -> usize {
        for i in 0..self.arc_count {
            self.parent[i] = i;
        }
        let mut comps = self.arc_count;
        for c in 0..self.arcs.len() {
            let kind = if state >> c & 1 == 0 { SmoothingKind::Zero } else { SmoothingKind::Infinity };
            for (p, q) in kind.pairs() {
                let (a, b) = (self.arcs[c][p], self.arcs[c][q]);
                let (ra, rb) = (self.find(a), self.find(b));
                if ra != rb {
                    self.parent[ra] = rb;
                    comps -= 1;
                }
            }
        }
        comps
    }
}

pub fn state_summary(d: &LinkDiagram, state: u64) -> StateSummary {
    let n = d.crossing_count();
    let beta = (0..n).filter(|&c| state >> c & 1 == 1).count();
    let loops = LoopCounter::new(d).loops(state) + d.free_loops();
    StateSummary { alpha: n - beta, beta, loops }
}

/// `delta^k` with `delta = -A^2 - A^-2`.
fn delta_pow(k: usize) -> LaurentPoly {
    LaurentPoly::delta().pow(k as u32)
}

/// Sum over all `2^n` states of `A^(alpha-beta) delta^(loops-1)`.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, BracketError> {
    let n = d.crossing_count();
    if n > STATE_SUM_LIMIT {
        return Err(BracketError::TooLarge { crossings: n, limit: STATE_SUM_LIMIT });
    }
    if n == 0 {
        return Ok(delta_pow(d.free_loops().saturating_sub(1)));
    }
    let mut counter = LoopCounter::new(d);
    let mut tally: HashMap<(i64, usize), u64> = HashMap::new();
    for state in 0..(1u64 << n) {
        let beta = state.count_ones() as i64;
        let loops = counter.loops(state) + d.free_loops();
        *tally.entry((n as i64 - 2 * beta, loops)).or_default() += 1;
    }
    let mut by_loops: HashMap<usize, LaurentPoly> = HashMap::new();
    for ((exp, loops), count) in tally {
        by_loops.entry(loops).or_insert_with(|| LaurentPoly::zero(Var::A)).add_term(exp, BigInt::from(count));
    }
    let mut out = LaurentPoly::zero(Var::A);
    for (loops, p) in by_loops {
        out += &(&p * &delta_pow(loops - 1));
    }
    Ok(out)
}

/// Skein-relation evaluation, memoized on canonical keys of loop-free
/// diagrams.
#[derive(Default)]
pub struct SkeinEvaluator {
    memo: HashMap<DiagramKey, LaurentPoly>,
}

impl SkeinEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bracket(&mut self, d: &LinkDiagram) -> LaurentPoly {
        if d.crossing_count() == 0 {
            return delta_pow(d.free_loops().saturating_sub(1));
        }
        let loops = d.free_loops();
        let core = if loops == 0 { self.core(d) } else { self.core(&d.without_free_loops()) };
        &delta_pow(loops) * &core
    }

    fn core(&mut self, d: &LinkDiagram) -> LaurentPoly {
        let key = d.canonical_key();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let zero = d.smooth(0, SmoothingKind::Zero).expect("nonempty");
        let inf = d.smooth(0, SmoothingKind::Infinity).expect("nonempty");
        let p = &self.bracket(&zero).shift(1) + &self.bracket(&inf).shift(-1);
        self.memo.insert(key, p.clone());
        p
    }
}

pub fn kauffman_bracket_skein(d: &LinkDiagram) -> LaurentPoly {
    SkeinEvaluator::new().bracket(d)
}

/// State sum when small enough, skein recursion otherwise.
pub fn bracket(d: &LinkDiagram) -> LaurentPoly {
    match kauffman_bracket(d) {
        Ok(p) => p,
        Err(_) => kauffman_bracket_skein(d),
    }
}

pub fn jones(d: &LinkDiagram) -> Result<JonesPoly, BracketError> {
    Ok(JonesPoly::from_bracket(&bracket(d), d.writhe(), d.components())?)
}

pub fn determinant(d: &LinkDiagram) -> Result<BigInt, BracketError> {
    Ok(jones(d)?.determinant())
}

/// Span of the Jones polynomial in powers of `t`.
pub fn span(d: &LinkDiagram) -> Result<i64, BracketError> {
    Ok(jones(d)?.span()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn unlinks() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unknot()).unwrap(), LaurentPoly::one(Var::A));
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(2)).unwrap(), LaurentPoly::delta());
        assert_eq!(kauffman_bracket_skein(&LinkDiagram::unlink(3)), LaurentPoly::delta().pow(2));
    }

    #[test]
    fn kink_brackets() {
        let k = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        let expect = LaurentPoly::monomial(Var::A, 3, -1);
        assert_eq!(kauffman_bracket(&k).unwrap(), expect);
        assert_eq!(kauffman_bracket_skein(&k), expect);
        assert_eq!(kauffman_bracket(&k.mirror()).unwrap(), LaurentPoly::monomial(Var::A, -3, -1));
    }

    #[test]
    fn trefoil_bracket_and_jones() {
        let t = trefoil();
        let b = kauffman_bracket(&t).unwrap();
        assert_eq!(b, LaurentPoly::from_terms(Var::A, [(-5, -1), (3, -1), (7, 1)]));
        assert_eq!(kauffman_bracket_skein(&t), b);
        let v = jones(&t).unwrap();
        // Left-handed trefoil: -t^-4 + t^-3 + t^-1.
        assert_eq!(v.poly, LaurentPoly::from_terms(Var::Q, [(-8, -1), (-6, 1), (-2, 1)]));
        assert_eq!(determinant(&t).unwrap(), BigInt::from(3));
        assert_eq!(span(&t).unwrap(), 3);
        assert_eq!(jones(&t.mirror()).unwrap(), v.mirrored());
    }

    #[test]
    fn state_summary_counts() {
        let t = trefoil();
        let all_a = state_summary(&t, 0);
        assert_eq!((all_a.alpha, all_a.beta), (3, 0));
        let all_b = state_summary(&t, 0b111);
        assert_eq!(all_a.loops + all_b.loops, 5);
    }

    #[test]
    fn determinant_of_unlink() {
        assert_eq!(determinant(&LinkDiagram::unlink(2)).unwrap(), BigInt::from(0));
        assert_eq!(determinant(&LinkDiagram::unknot()).unwrap(), BigInt::from(1));
    }
}
