use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::SeriesError;
use crate::ring::Ring;

/// Power series `c_0 + c_1 y + ... + c_D y^D` modulo `y^{D+1}`.
///
/// Binary operations on series of different caps truncate to the smaller
/// cap.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    /// Builds a series from its leading coefficients, padding with zeros of
    /// the ring of `proto` up to `cap` and dropping anything above it.
    pub fn from_coeffs(proto: &R, mut coeffs: Vec<R>, cap: usize) -> Self {
        coeffs.truncate(cap + 1);
        coeffs.resize(cap + 1, proto.zero_like());
        Self { coeffs }
    }

    pub fn from_ints(proto: &R, ints: &[i64], cap: usize) -> Self {
        let c = ints.iter().map(|&n| proto.from_int_like(n)).collect();
        Self::from_coeffs(proto, c, cap)
    }

    pub fn zero(proto: &R, cap: usize) -> Self {
        Self::from_coeffs(proto, Vec::new(), cap)
    }

    pub fn constant(c: R, cap: usize) -> Self {
        let proto = c.clone();
        Self::from_coeffs(&proto, vec![c], cap)
    }

    pub fn one(proto: &R, cap: usize) -> Self {
        Self::constant(proto.one_like(), cap)
    }

    /// `c y^k`.
    pub fn monomial(c: R, k: usize, cap: usize) -> Self {
        let mut s = Self::zero(&c, cap);
        if k <= cap {
            s.coeffs[k] = c;
        }
        s
    }

    /// The coordinate `y`.
    pub fn var(proto: &R, cap: usize) -> Self {
        Self::monomial(proto.one_like(), 1, cap)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn proto(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Self::from_coeffs(self.proto(), self.coeffs.clone(), cap)
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries::from_coeffs(proto, self.coeffs.iter().map(f).collect(), self.cap())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.proto(), self.cap());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplication by `y`; the cap grows by one so nothing is lost.
    pub fn mul_by_var(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(self.proto().zero_like());
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    /// Exact division by `y`: requires a vanishing constant term and lowers
    /// the cap by one.
    pub fn div_by_var(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByVar);
        }
        if self.coeffs.len() == 1 {
            return Ok(Self::zero(self.proto(), 0));
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Formal derivative; keeps the cap (the top coefficient becomes zero).
    pub fn derivative(&self) -> Self {
        let proto = self.proto().clone();
        let c = (1..self.coeffs.len())
            .map(|i| self.coeffs[i].clone() * proto.from_int_like(i as i64))
            .collect();
        Self::from_coeffs(&proto, c, self.cap())
    }

    /// `f(g)`; requires `g(0) = 0`. The result has the smaller of the caps.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if !g.coeffs[0].is_zero() {
            return Err(SeriesError::NonCompositionalArgument);
        }
        let cap = self.cap().min(g.cap());
        let g = g.truncate(cap);
        let mut acc = Self::constant(self.coeffs[cap].clone(), cap);
        for i in (0..cap).rev() {
            acc = &acc * &g;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0_inv = self.coeffs[0].try_inv().ok_or(SeriesError::NonUnitLeadingTerm)?;
        let mut out: Vec<R> = Vec::with_capacity(self.coeffs.len());
        out.push(c0_inv.clone());
        for n in 1..self.coeffs.len() {
            let mut s = self.proto().zero_like();
            for i in 1..=n {
                s = s + self.coeffs[i].clone() * out[n - i].clone();
            }
            out.push(-(s * c0_inv.clone()));
        }
        Ok(Self { coeffs: out })
    }

    /// Compositional inverse by Newton iteration `g <- g - (f(g) - y)/f'(g)`;
    /// requires `f(0) = 0` and `f'(0)` a unit.
    pub fn reverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonCompositionalArgument);
        }
        let cap = self.cap();
        let proto = self.proto().clone();
        if cap == 0 {
            return Ok(Self::zero(&proto, 0));
        }
        let slope_inv = self.coeffs[1].try_inv().ok_or(SeriesError::NonUnitLeadingTerm)?;
        let y = Self::var(&proto, cap);
        let deriv = self.derivative();
        let mut g = y.scale(&slope_inv);
        for _ in 0..=cap {
            let err = &self.compose(&g)? - &y;
            if err.is_zero() {
                return Ok(g);
            }
            let step = &err * &deriv.compose(&g)?.invert_unit()?;
            g = &g - &step;
        }
        Err(SeriesError::NonConvergent { iterations: cap + 1 })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let cap = self.cap().min(other.cap());
        Self {
            coeffs: (0..=cap).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }
}

impl<R: Ring> Add for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn add(self, rhs: Self) -> TruncSeries<R> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<R: Ring> Sub for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn sub(self, rhs: Self) -> TruncSeries<R> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<R: Ring> Neg for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn neg(self) -> TruncSeries<R> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Ring> Mul for &TruncSeries<R> {
    type Output = TruncSeries<R>;
    fn mul(self, rhs: Self) -> TruncSeries<R> {
        let cap = self.cap().min(rhs.cap());
        let mut out = vec![self.proto().zero_like(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(cap + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_string();
            let bracketed = if coeff.contains('+') {
                format!("({coeff})")
            } else {
                coeff
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => bracketed,
                (1, true) => "y".to_string(),
                (1, false) => format!("{bracketed}y"),
                (_, true) => format!("y^{i}"),
                (_, false) => format!("{bracketed}y^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<R: Ring> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(cap {}) {:?}", self.cap(), self.coeffs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Compose,
    Reverse,
    InvertUnit,
}

/// Uniform entry point for series arithmetic; unary operations ignore `g`.
pub fn series_ops<R: Ring>(
    f: &TruncSeries<R>,
    g: &TruncSeries<R>,
    op: SeriesOp,
) -> Result<TruncSeries<R>, SeriesError> {
    match op {
        SeriesOp::Add => Ok(f + g),
        SeriesOp::Mul => Ok(f * g),
        SeriesOp::Compose => f.compose(g),
        SeriesOp::Reverse => f.reverse(),
        SeriesOp::InvertUnit => f.invert_unit(),
    }
}
