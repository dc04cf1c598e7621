use std::collections::BTreeMap;
use std::fmt;

use super::{SeriesError, TruncSeries};
use crate::ring::Ring;

/// Sparse power series in `V` variables, truncated above total degree `cap`.
#[derive(Clone, PartialEq)]
pub struct MvSeries<R: Ring, const V: usize> {
    terms: BTreeMap<[u32; V], R>,
    cap: u32,
    zero: R,
}

pub type BiSeries<R> = MvSeries<R, 2>;

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<R: Ring, const V: usize> MvSeries<R, V> {
    pub fn zero(proto: &R, cap: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            cap,
            zero: proto.zero_like(),
        }
    }

    pub fn from_terms(proto: &R, terms: impl IntoIterator<Item = ([u32; V], R)>, cap: u32) -> Self {
        let mut s = Self::zero(proto, cap);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn constant(c: R, cap: u32) -> Self {
        let proto = c.clone();
        Self::from_terms(&proto, [([0; V], c)], cap)
    }

    pub fn var(proto: &R, i: usize, cap: u32) -> Self {
        let mut e = [0; V];
        e[i] = 1;
        Self::from_terms(proto, [(e, proto.one_like())], cap)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn proto(&self) -> &R {
        &self.zero
    }

    pub fn coeff(&self, e: &[u32; V]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; V], &R)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: [u32; V], c: R) {
        if total(&e) > self.cap || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| self.zero.clone());
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.cap.min(other.cap));
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            cap: self.cap,
            zero: self.zero.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_terms(
            &self.zero,
            self.terms.iter().map(|(e, c)| (*e, c.clone() * k.clone())),
            self.cap,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.zero, self.cap.min(other.cap));
        for (ea, a) in &self.terms {
            let da = total(ea);
            for (eb, b) in &other.terms {
                if da + total(eb) > out.cap {
                    continue;
                }
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn truncate(&self, cap: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(*e) <= cap)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            cap,
            zero: self.zero.clone(),
        }
    }

    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Partial derivative in variable `i`; keeps the cap.
    pub fn partial(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut d = *e;
            d[i] -= 1;
            (d, c.clone() * self.zero.from_int_like(e[i] as i64))
        });
        Self::from_terms(&self.zero, terms, self.cap)
    }

    /// Substitutes `images[i]` for variable `i`. Images must have vanishing
    /// constant terms so that truncation is respected.
    pub fn substitute<const W: usize>(&self, images: &[MvSeries<R, W>; V]) -> Result<MvSeries<R, W>, SeriesError> {
        if images.iter().any(|g| !g.coeff(&[0; W]).is_zero()) {
            return Err(SeriesError::NonCompositionalArgument);
        }
        let cap = images.iter().map(|g| g.cap).min().unwrap_or(self.cap).min(self.cap);
        let powers: Vec<Vec<MvSeries<R, W>>> = (0..V)
            .map(|i| {
                let mut pw = vec![MvSeries::constant(self.zero.one_like(), cap)];
                for k in 1..=self.max_exponent(i) {
                    let next = pw[k as usize - 1].mul(&images[i]);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = MvSeries::zero(&self.zero, cap);
        for (e, c) in &self.terms {
            let mut term = MvSeries::constant(c.clone(), cap);
            for i in 0..V {
                if e[i] > 0 {
                    term = term.mul(&powers[i][e[i] as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Substitutes univariate series for every variable.
    pub fn eval_univariate(&self, images: &[&TruncSeries<R>; V]) -> Result<TruncSeries<R>, SeriesError> {
        if images.iter().any(|g| !g.coeff(0).is_zero()) {
            return Err(SeriesError::NonCompositionalArgument);
        }
        let cap = images
            .iter()
            .map(|g| g.cap())
            .min()
            .unwrap_or(self.cap as usize)
            .min(self.cap as usize);
        let powers: Vec<Vec<TruncSeries<R>>> = (0..V)
            .map(|i| {
                let base = images[i].truncate(cap);
                let mut pw = vec![TruncSeries::one(&self.zero, cap)];
                for k in 1..=self.max_exponent(i) as usize {
                    let next = &pw[k - 1] * &base;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = TruncSeries::zero(&self.zero, cap);
        for (e, c) in &self.terms {
            let mut term = TruncSeries::constant(c.clone(), cap);
            for i in 0..V {
                if e[i] > 0 {
                    term = &term * &powers[i][e[i] as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Lowest-degree nonzero term (by total degree, then exponent order).
    pub fn leading_term(&self) -> Option<([u32; V], R)> {
        self.terms
            .iter()
            .min_by_key(|(e, _)| (total(*e), **e))
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> MvSeries<S, V> {
        MvSeries::from_terms(proto, self.terms.iter().map(|(e, c)| (*e, f(c))), self.cap)
    }
}

impl<R: Ring + fmt::Display, const V: usize> fmt::Display for MvSeries<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(e, _)| (total(*e), std::cmp::Reverse(**e)));
        let parts: Vec<String> = sorted
            .into_iter()
            .map(|(e, c)| {
                let mut mono = String::new();
                for (i, &k) in e.iter().enumerate() {
                    let name = NAMES.get(i).copied().unwrap_or("v");
                    match k {
                        0 => {}
                        1 => mono.push_str(name),
                        _ => mono.push_str(&format!("{name}^{k}")),
                    }
                }
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{c}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring, const V: usize> fmt::Debug for MvSeries<R, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvSeries(cap {}) {:?}", self.cap, self.terms)
    }
}
