use std::fmt;

use serde::{Deserialize, Serialize};

use super::{level_size, ProfiniteError};
use crate::arith::Fq;
use crate::linalg::Matrix;
use crate::ring::Ring;

/// Where a level-`N` function is defined: all of `Z/p^N` or its units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    All,
    Units,
}

/// Points of the domain in ascending residue order.
pub fn domain_points(p: u64, level: u32, domain: Domain) -> Vec<u64> {
    let size = p.pow(level);
    match domain {
        Domain::All => (0..size).collect(),
        Domain::Units => (0..size).filter(|m| m % p != 0).collect(),
    }
}

/// Base-`p` digits `m_0, ..., m_{N-1}` of `m mod p^N`.
pub fn digits_of(m: u64, p: u64, level: u32) -> Vec<u64> {
    let mut m = m;
    (0..level)
        .map(|_| {
            let d = m % p;
            m /= p;
            d
        })
        .collect()
}

/// A function on `Z/p^N` (or its units) with values in `R`, stored as a
/// dense table indexed by the ascending enumeration of the domain.
#[derive(Clone, PartialEq)]
pub struct LevelFn<R: Ring> {
    p: u64,
    level: u32,
    domain: Domain,
    values: Vec<R>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FnOp {
    Add,
    Sub,
    Mul,
}

impl<R: Ring> LevelFn<R> {
    pub fn from_fn(p: u64, level: u32, domain: Domain, mut f: impl FnMut(u64) -> R) -> Result<Self, ProfiniteError> {
        level_size(p, level)?;
        let values = domain_points(p, level, domain).into_iter().map(&mut f).collect();
        Ok(Self {
            p,
            level,
            domain,
            values,
        })
    }

    pub fn from_values(p: u64, level: u32, domain: Domain, values: Vec<R>) -> Result<Self, ProfiniteError> {
        level_size(p, level)?;
        let expected = domain_points(p, level, domain).len();
        if values.len() != expected {
            return Err(ProfiniteError::TableLength {
                expected,
                found: values.len(),
            });
        }
        Ok(Self {
            p,
            level,
            domain,
            values,
        })
    }

    pub fn constant(c: &R, p: u64, level: u32, domain: Domain) -> Result<Self, ProfiniteError> {
        Self::from_fn(p, level, domain, |_| c.clone())
    }

    /// The digit function `f_k(m) = m_k`.
    pub fn digit(proto: &R, p: u64, level: u32, domain: Domain, k: u32) -> Result<Self, ProfiniteError> {
        if k >= level {
            return Err(ProfiniteError::DigitOutOfRange { k, level });
        }
        Self::from_fn(p, level, domain, |m| {
            proto.from_int_like(digits_of(m, p, level)[k as usize] as i64)
        })
    }

    /// The indicator function of `{m : pred(m)}`.
    pub fn indicator(
        proto: &R,
        p: u64,
        level: u32,
        domain: Domain,
        pred: impl Fn(u64) -> bool,
    ) -> Result<Self, ProfiniteError> {
        Self::from_fn(p, level, domain, |m| {
            if pred(m) {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn points(&self) -> Vec<u64> {
        domain_points(self.p, self.level, self.domain)
    }

    pub fn proto(&self) -> &R {
        &self.values[0]
    }

    fn index_of(&self, m: u64) -> Option<usize> {
        let m = m % self.p.pow(self.level);
        match self.domain {
            Domain::All => Some(m as usize),
            Domain::Units if m.is_multiple_of(self.p) => None,
            Domain::Units => Some((m - m / self.p - 1) as usize),
        }
    }

    /// Value at `m mod p^N`; `None` off the domain.
    pub fn eval(&self, m: u64) -> Option<&R> {
        self.index_of(m).map(|i| &self.values[i])
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LevelFn<S> {
        LevelFn {
            p: self.p,
            level: self.level,
            domain: self.domain,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(R::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ProfiniteError> {
        if self.p != other.p {
            return Err(ProfiniteError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.level != other.level {
            return Err(ProfiniteError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        if self.domain != other.domain {
            return Err(ProfiniteError::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ProfiniteError> {
        fn_arith(self, other, FnOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ProfiniteError> {
        fn_arith(self, other, FnOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ProfiniteError> {
        fn_arith(self, other, FnOp::Mul)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn pow(&self, e: u64) -> Self {
        self.map(|v| v.pow(e))
    }

    /// Pointwise inverse, if every value is a unit.
    pub fn inv(&self) -> Option<Self> {
        let values = self.values.iter().map(R::try_inv).collect::<Option<Vec<_>>>()?;
        Some(Self { values, ..self.clone() })
    }

    /// Pullback along the reduction `Z/p^{N+1} -> Z/p^N`.
    pub fn pullback(&self) -> Result<Self, ProfiniteError> {
        let modulus = self.p.pow(self.level);
        Self::from_fn(self.p, self.level + 1, self.domain, |m| {
            self.eval(m % modulus).expect("reduction preserves the domain").clone()
        })
    }
}

/// Pointwise ring operations on tables of the same shape.
pub fn fn_arith<R: Ring>(f: &LevelFn<R>, g: &LevelFn<R>, op: FnOp) -> Result<LevelFn<R>, ProfiniteError> {
    f.check_compatible(g)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| match op {
            FnOp::Add => a.clone() + b.clone(),
            FnOp::Sub => a.clone() - b.clone(),
            FnOp::Mul => a.clone() * b.clone(),
        })
        .collect();
    Ok(LevelFn { values, ..f.clone() })
}

impl<R: Ring> fmt::Debug for LevelFn<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LevelFn(p={}, N={}, {:?}) {:?}",
            self.p, self.level, self.domain, self.values
        )
    }
}

/// A polynomial in the digit functions `f_0, ..., f_{N-1}` reduced by
/// `f_k^p = f_k`. The coefficient of `prod f_k^{e_k}` is stored at index
/// `sum e_k p^k`.
#[derive(Clone, PartialEq)]
pub struct MonomialForm<R: Ring> {
    p: u64,
    level: u32,
    coeffs: Vec<R>,
}

impl<R: Ring> MonomialForm<R> {
    pub fn zero(proto: &R, p: u64, level: u32) -> Result<Self, ProfiniteError> {
        let size = level_size(p, level)?;
        Ok(Self {
            p,
            level,
            coeffs: vec![proto.zero_like(); size],
        })
    }

    pub fn monomial(c: R, p: u64, level: u32, exponents: &[u64]) -> Result<Self, ProfiniteError> {
        let mut out = Self::zero(&c, p, level)?;
        if exponents.len() != level as usize || exponents.iter().any(|&e| e >= p) {
            return Err(ProfiniteError::ExponentOutOfRange);
        }
        let idx = exponents.iter().rev().fold(0u64, |acc, &e| acc * p + e);
        out.coeffs[idx as usize] = c;
        Ok(out)
    }

    pub fn one(proto: &R, p: u64, level: u32) -> Result<Self, ProfiniteError> {
        Self::monomial(proto.one_like(), p, level, &vec![0; level as usize])
    }

    /// The digit function `f_k` as a monomial.
    pub fn digit(proto: &R, p: u64, level: u32, k: u32) -> Result<Self, ProfiniteError> {
        if k >= level {
            return Err(ProfiniteError::DigitOutOfRange { k, level });
        }
        let mut e = vec![0; level as usize];
        e[k as usize] = 1;
        Self::monomial(proto.one_like(), p, level, &e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u64>, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (digits_of(i as u64, self.p, self.level), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ProfiniteError> {
        if self.p != other.p {
            return Err(ProfiniteError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.level != other.level {
            return Err(ProfiniteError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ProfiniteError> {
        self.check_compatible(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            ..self.clone()
        })
    }

    /// Product with exponents reduced by `f_k^p = f_k`.
    pub fn mul(&self, other: &Self) -> Result<Self, ProfiniteError> {
        self.check_compatible(other)?;
        let p = self.p;
        let mut out = Self::zero(&self.coeffs[0], p, self.level)?;
        for (ea, a) in self.terms() {
            for (eb, b) in other.terms() {
                let idx = ea.iter().zip(&eb).rev().fold(0u64, |acc, (&x, &y)| {
                    let mut e = x + y;
                    if e >= p {
                        e -= p - 1;
                    }
                    acc * p + e
                });
                let slot = &mut out.coeffs[idx as usize];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Ok(out)
    }

    /// Evaluates at every point of `Z/p^N`.
    pub fn to_fn(&self) -> Result<LevelFn<R>, ProfiniteError> {
        let proto = &self.coeffs[0];
        let vandermonde = digit_vandermonde(self.p);
        let values = apply_axes(proto, &self.coeffs, self.p, self.level, &vandermonde);
        LevelFn::from_values(self.p, self.level, Domain::All, values)
    }

    /// Expands a function on `Z/p^N` in the digit monomials. The
    /// coefficient ring must be an `F_p`-algebra.
    pub fn from_fn(f: &LevelFn<R>) -> Result<Self, ProfiniteError> {
        if f.domain() != Domain::All {
            return Err(ProfiniteError::DomainMismatch);
        }
        let proto = f.proto();
        require_fp_algebra(proto)?;
        let inverse = digit_vandermonde_inverse(f.p());
        let coeffs = apply_axes(proto, f.values(), f.p(), f.level(), &inverse);
        Ok(Self {
            p: f.p(),
            level: f.level(),
            coeffs,
        })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MonomialForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                let mono: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("f{i}") } else { format!("f{i}^{k}") })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{c}{mono}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<R: Ring> fmt::Debug for MonomialForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialForm(p={}, N={}) {:?}", self.p, self.level, self.coeffs)
    }
}

/// Either representation of a level-`N` function.
#[derive(Clone, Debug, PartialEq)]
pub enum FnRepr<R: Ring> {
    Table(LevelFn<R>),
    Monomial(MonomialForm<R>),
}

/// Converts a table into its monomial expansion and back.
pub fn monomial_convert<R: Ring>(x: &FnRepr<R>) -> Result<FnRepr<R>, ProfiniteError> {
    match x {
        FnRepr::Table(f) => MonomialForm::from_fn(f).map(FnRepr::Monomial),
        FnRepr::Monomial(m) => m.to_fn().map(FnRepr::Table),
    }
}

pub(crate) fn require_fp_algebra<R: Ring>(proto: &R) -> Result<(), ProfiniteError> {
    if proto.is_fp_algebra() {
        Ok(())
    } else {
        Err(ProfiniteError::CharacteristicMismatch {
            exponent: proto.char_exponent(),
        })
    }
}

/// `V[a][e] = a^e mod p`, with `0^0 = 1`.
fn digit_vandermonde(p: u64) -> Vec<Vec<i64>> {
    (0..p)
        .map(|a| (0..p).map(|e| crate::arith::pow_mod(a, e, p) as i64).collect())
        .collect()
}

fn digit_vandermonde_inverse(p: u64) -> Vec<Vec<i64>> {
    let field = Fq::new(p, 1).expect("odd prime");
    let z = field.zero();
    let v = digit_vandermonde(p);
    let m = Matrix::from_fn(&z, p as usize, p as usize, |i, j| z.from_int_like(v[i][j]));
    let inv = m.inverse().expect("Vandermonde matrix on distinct points");
    (0..p as usize)
        .map(|i| {
            (0..p as usize)
                .map(|j| inv.get(i, j).as_prime_field().expect("prime field") as i64)
                .collect()
        })
        .collect()
}

/// Applies the `p x p` integer matrix `mat` along every base-`p` digit axis
/// of a tensor of shape `p^N`.
fn apply_axes<R: Ring>(proto: &R, input: &[R], p: u64, level: u32, mat: &[Vec<i64>]) -> Vec<R> {
    let consts: Vec<Vec<R>> = mat
        .iter()
        .map(|row| row.iter().map(|&x| proto.from_int_like(x)).collect())
        .collect();
    let p = p as usize;
    let mut cur = input.to_vec();
    let mut stride = 1usize;
    for _ in 0..level {
        cur = (0..cur.len())
            .map(|idx| {
                let a = (idx / stride) % p;
                let base = idx - a * stride;
                consts[a].iter().enumerate().fold(proto.zero_like(), |acc, (e, c)| {
                    acc + c.clone() * cur[base + e * stride].clone()
                })
            })
            .collect();
        stride *= p;
    }
    cur
}
