//! Sparse Laurent polynomials with big-integer coefficients.
//!
//! Brackets live in `Z[A, A^-1]`; Jones polynomials are stored in the
//! variable `q = t^(1/2)` so every exponent is an integer.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("odd A-exponent {0} after writhe normalization")]
    OddExponent(i64),
    #[error("step must be positive")]
    BadStep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    A,
    Q,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::Q => "q",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Exact Laurent polynomial. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        Self { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Var, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(var: Var, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms(Var::A, [(2, -1), (-2, -1)])
    }

    /// `(-A^3)^k` for any integer `k`.
    pub fn twist_factor(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(Var::A, 3 * k, sign)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by `var^by`.
    pub fn shift(&self, by: i64) -> Self {
        Self {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `var -> var^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluates at the imaginary unit, using `i^-1 = -i`.
    pub fn eval_gaussian(&self) -> Gaussian {
        let mut acc = Gaussian::zero();
        for (e, c) in &self.terms {
            let unit = match e.rem_euclid(4) {
                0 => Gaussian::new(1, 0),
                1 => Gaussian::new(0, 1),
                2 => Gaussian::new(-1, 0),
                _ => Gaussian::new(0, -1),
            };
            acc = acc + unit.scale(c);
        }
        acc
    }

    /// All exponents congruent modulo `step`, consecutive terms of opposite sign.
    pub fn is_alternating_poly(&self, step: i64) -> Result<bool, PolyError> {
        if step <= 0 {
            return Err(PolyError::BadStep);
        }
        if !self.same_residue(step) {
            return Ok(false);
        }
        Ok(self
            .terms
            .values()
            .zip(self.terms.values().skip(1))
            .all(|(a, b)| a.is_positive() != b.is_positive()))
    }

    /// Alternating with every intermediate power present.
    pub fn is_strictly_alternating(&self, step: i64) -> Result<bool, PolyError> {
        if !self.is_alternating_poly(step)? {
            return Ok(false);
        }
        Ok(self.consecutive_gaps().all(|g| g == step))
    }

    /// Signs follow the degree: `sign(c_e) = s * (-1)^((e - e_min)/step)`.
    /// Unlike [`is_alternating_poly`](Self::is_alternating_poly), terms
    /// separated by a gap of `2 * step` carry the same sign.
    pub fn signs_follow_degree(&self, step: i64) -> Result<bool, PolyError> {
        if step <= 0 {
            return Err(PolyError::BadStep);
        }
        if !self.same_residue(step) {
            return Ok(false);
        }
        let Some(lo) = self.min_degree() else { return Ok(true) };
        let base = self.terms[&lo].is_positive();
        Ok(self.terms.iter().all(|(e, c)| {
            let flips = ((e - lo) / step) % 2 == 1;
            c.is_positive() == (base != flips)
        }))
    }

    /// Largest exponent difference between consecutive support points;
    /// zero for a monomial.
    pub fn max_gap(&self, step: i64) -> Result<i64, PolyError> {
        if step <= 0 {
            return Err(PolyError::BadStep);
        }
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.consecutive_gaps().max().unwrap_or(0))
    }

    fn consecutive_gaps(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().zip(self.terms.keys().skip(1)).map(|(a, b)| b - a)
    }

    fn same_residue(&self, step: i64) -> bool {
        match self.min_degree() {
            None => true,
            Some(lo) => self.terms.keys().all(|e| (e - lo).rem_euclid(step) == 0),
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var != other.var {
            return Err(PolyError::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, sym: &str, exp_fmt: impl Fn(i64) -> String) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(sym)?;
            let ex = exp_fmt(*e);
            if !ex.is_empty() {
                write!(f, "^{ex}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, self.var.symbol(), |e| if e == 1 { String::new() } else { e.to_string() })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("polynomial variables must match")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.var, rhs.var, "polynomial variables must match");
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("polynomial variables must match")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Gaussian integer `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    /// `|z|` when `z` lies on a coordinate axis, i.e. `z = u * m` for a unit `u`.
    pub fn axis_magnitude(&self) -> Option<BigInt> {
        if self.im.is_zero() {
            Some(self.re.abs())
        } else if self.re.is_zero() {
            Some(self.im.abs())
        } else {
            None
        }
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Jones polynomial stored in `q = t^(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonesPoly {
    pub poly: LaurentPoly,
    pub components: usize,
}

impl JonesPoly {
    /// Normalizes a bracket by `(-A^3)^(-writhe)` and substitutes `A^4 = t^-1`.
    pub fn from_bracket(bracket: &LaurentPoly, writhe: i64, components: usize) -> Result<Self, PolyError> {
        if bracket.var != Var::A {
            return Err(PolyError::VariableMismatch(bracket.var, Var::A));
        }
        let normalized = bracket * &LaurentPoly::twist_factor(-writhe);
        let mut poly = LaurentPoly::zero(Var::Q);
        for (e, c) in normalized.terms() {
            if e.rem_euclid(2) != 0 {
                return Err(PolyError::OddExponent(e));
            }
            poly.add_term(-e / 2, c.clone());
        }
        Ok(Self { poly, components })
    }

    /// `|V(-1)|`, evaluated exactly as `q = i`.
    pub fn determinant(&self) -> BigInt {
        self.poly
            .eval_gaussian()
            .axis_magnitude()
            .expect("V(-1) is a unit multiple of an integer")
    }

    /// Width in powers of `t`.
    pub fn span(&self) -> Result<i64, PolyError> {
        match (self.poly.min_degree(), self.poly.max_degree()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) / 2),
            _ => Err(PolyError::ZeroPolynomial),
        }
    }

    /// `V(t^-1)`.
    pub fn mirrored(&self) -> Self {
        Self { poly: self.poly.invert_variable(), components: self.components }
    }

    pub fn gap_report(&self) -> Result<GapReport, PolyError> {
        GapReport::of(&self.poly)
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.render(f, "t", |e| {
            if e % 2 == 0 {
                let k = e / 2;
                if k == 1 { String::new() } else { k.to_string() }
            } else {
                format!("({e}/2)")
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    /// Exponent (in `q`) of the term just below the gap.
    pub at: i64,
    pub length: i64,
}

/// Support and sign analysis of a Jones polynomial, in `q`-exponent units
/// (one power of `t` is two units).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub span: i64,
    pub gaps: Vec<Gap>,
    /// Coefficient signs alternate with the power of `t`.
    pub sign_alternating: bool,
    /// Longest listed gap, or 0 when there is none.
    pub max_gap: i64,
}

impl GapReport {
    pub const STEP: i64 = 2;

    pub fn of(v: &LaurentPoly) -> Result<Self, PolyError> {
        let (Some(lo), Some(hi)) = (v.min_degree(), v.max_degree()) else {
            return Err(PolyError::ZeroPolynomial);
        };
        let exps: Vec<i64> = v.terms().map(|(e, _)| e).collect();
        let gaps: Vec<Gap> = exps
            .windows(2)
            .filter(|w| w[1] - w[0] > Self::STEP)
            .map(|w| Gap { at: w[0], length: w[1] - w[0] })
            .collect();
        let max_gap = gaps.iter().map(|g| g.length).max().unwrap_or(0);
        Ok(Self {
            span: hi - lo,
            sign_alternating: v.signs_follow_degree(Self::STEP)?,
            gaps,
            max_gap,
        })
    }

    pub fn has_gap(&self) -> bool {
        !self.gaps.is_empty()
    }

    /// `c_i c_{i+1} < 0` for every consecutive pair of powers.
    pub fn strictly_alternating(&self) -> bool {
        self.sign_alternating && !self.has_gap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::A, terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let p = a(&[(1, 1), (-1, 1)]);
        let q = a(&[(1, 1), (-1, -1)]);
        assert_eq!(&p * &q, a(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn additive_inverse_is_zero() {
        let p = a(&[(3, 5), (-7, -2)]);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn shift_one() {
        assert_eq!(LaurentPoly::one(Var::A).shift(4), a(&[(4, 1)]));
    }

    #[test]
    fn mismatched_variables() {
        let p = LaurentPoly::one(Var::A);
        let q = LaurentPoly::one(Var::Q);
        assert_eq!(p.try_add(&q), Err(PolyError::VariableMismatch(Var::A, Var::Q)));
        assert!(p.try_mul(&q).is_err());
    }

    #[test]
    fn gaussian_values() {
        let q = |t: &[(i64, i64)]| LaurentPoly::from_terms(Var::Q, t.iter().copied());
        assert_eq!(q(&[(0, 1)]).eval_gaussian(), Gaussian::new(1, 0));
        assert_eq!(q(&[(2, 1)]).eval_gaussian(), Gaussian::new(-1, 0));
        assert_eq!(q(&[(-2, 1), (2, 1)]).eval_gaussian(), Gaussian::new(-2, 0));
        assert_eq!(q(&[(-1, 1)]).eval_gaussian(), Gaussian::new(0, -1));
    }

    #[test]
    fn alternation_predicates() {
        assert!(a(&[(-3, -1), (1, 1)]).is_alternating_poly(4).unwrap());
        assert!(!a(&[(1, 1), (5, 1)]).is_alternating_poly(4).unwrap());
        assert!(!a(&[(1, 1), (3, -1)]).is_alternating_poly(4).unwrap());
        assert!(a(&[(-3, -1), (1, 1)]).is_strictly_alternating(4).unwrap());
        assert!(!a(&[(-1, 1), (7, -1)]).is_strictly_alternating(4).unwrap());
        assert!(a(&[(5, -2)]).is_strictly_alternating(4).unwrap());
        assert_eq!(a(&[(1, 1)]).is_alternating_poly(0), Err(PolyError::BadStep));
    }

    #[test]
    fn degree_signs() {
        // -A^-7 ... gap of eight keeps the sign.
        assert!(a(&[(-7, 1), (-3, -1), (5, -1)]).signs_follow_degree(4).unwrap());
        assert!(!a(&[(-7, 1), (-3, -1), (5, -1)]).is_alternating_poly(4).unwrap());
    }

    #[test]
    fn gaps() {
        assert_eq!(a(&[(-1, 1), (3, 1)]).max_gap(4), Ok(4));
        assert_eq!(a(&[(-1, 1), (7, 1)]).max_gap(4), Ok(8));
        assert_eq!(a(&[(2, 3)]).max_gap(4), Ok(0));
        assert_eq!(LaurentPoly::zero(Var::A).max_gap(4), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn jones_normalization() {
        let unknot = JonesPoly::from_bracket(&LaurentPoly::one(Var::A), 0, 1).unwrap();
        assert_eq!(unknot.poly, LaurentPoly::one(Var::Q));
        let kink = JonesPoly::from_bracket(&a(&[(3, -1)]), 1, 1).unwrap();
        assert_eq!(kink.poly, LaurentPoly::one(Var::Q));
        let kink = JonesPoly::from_bracket(&a(&[(-3, -1)]), -1, 1).unwrap();
        assert_eq!(kink.poly, LaurentPoly::one(Var::Q));
        assert_eq!(JonesPoly::from_bracket(&a(&[(1, 1)]), 0, 1), Err(PolyError::OddExponent(1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(a(&[(-3, -1), (1, 1)]).to_string(), "-A^-3 + A");
        assert_eq!(a(&[(0, 2), (4, -3)]).to_string(), "2 - 3*A^4");
        let v = JonesPoly { poly: LaurentPoly::from_terms(Var::Q, [(-1, 1), (2, -1), (4, 1)]), components: 2 };
        assert_eq!(v.to_string(), "t^(-1/2) - t + t^2");
    }

    #[test]
    fn unknot_gap_report() {
        let r = GapReport::of(&LaurentPoly::one(Var::Q)).unwrap();
        assert_eq!(r.span, 0);
        assert!(r.sign_alternating && !r.has_gap() && r.max_gap == 0);
    }
}
