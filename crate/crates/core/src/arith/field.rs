use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::padic::{check_odd_prime, prime_factors};
use super::{ArithError, PadicInt};
use crate::ring::Ring;

// Dense polynomials over F_p, coefficients low-degree first.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic `m`.
fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let deg = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
        }
        r.pop();
    }
    trim(r)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let lead_inv = super::padic::pow_mod(*b.last().unwrap(), p - 2, p);
    let monic: Vec<u64> = b.iter().map(|&c| c * lead_inv % p).collect();
    poly_rem_monic(a, &monic, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// `x^(p^k) mod m` for k = 0..=n.
fn frobenius_powers_of_x(m: &[u64], p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![poly_rem_monic(&[0, 1], m, p)];
    for _ in 0..n {
        let prev = out.last().unwrap().clone();
        let mut acc = vec![1u64];
        let mut base = prev;
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem_monic(&poly_mul(&acc, &base, p), m, p);
            }
            base = poly_rem_monic(&poly_mul(&base, &base, p), m, p);
            e >>= 1;
        }
        out.push(acc);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let xs = frobenius_powers_of_x(m, p, n);
    let x = poly_rem_monic(&[0, 1], m, p);
    if xs[n] != x {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|q| {
        let d = poly_sub(&xs[n / q as usize], &[0, 1], p);
        poly_gcd(m, &d, p).len() == 1
    })
}

/// Lexicographically least monic irreducible of degree `n` over F_p,
/// comparing coefficient vectors from the constant term upward.
pub fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
    let count = p.pow(n as u32);
    (0..count)
        .map(|idx| {
            let mut c = vec![0u64; n + 1];
            let mut rest = idx;
            for i in (0..n).rev() {
                c[i] = rest % p;
                rest /= p;
            }
            c[n] = 1;
            c
        })
        .find(|c| is_irreducible(c, p))
        .expect("an irreducible polynomial of every degree exists")
}

#[derive(Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
}

impl FieldCtx {
    pub fn modulus_id(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        format!("F_{}[x]/({})", self.p, terms.join("+"))
    }
}

/// Handle on the field `F_{p^n}` with its deterministic modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq(Arc<FieldCtx>);

impl Fq {
    pub fn new(p: u64, n: usize) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        if n == 0 {
            return Err(ArithError::ZeroDegree);
        }
        p.checked_pow(n as u32)
            .filter(|q| *q < (1 << 32))
            .ok_or(ArithError::FieldTooLarge { p, n })?;
        let modulus = least_irreducible(p, n);
        Ok(Fq(Arc::new(FieldCtx { p, n, modulus })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn order(&self) -> u64 {
        self.0.p.pow(self.0.n as u32)
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn modulus_id(&self) -> String {
        self.0.modulus_id()
    }

    pub fn elem(&self, coeffs: &[u64]) -> FqElem {
        let p = self.0.p;
        let reduced = poly_rem_monic(&trim(coeffs.iter().map(|c| c % p).collect()), &self.0.modulus, p);
        FqElem::from_trimmed(self.clone(), reduced)
    }

    pub fn zero(&self) -> FqElem {
        self.elem(&[])
    }

    pub fn one(&self) -> FqElem {
        self.elem(&[1])
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        self.elem(&[n.rem_euclid(self.0.p as i64) as u64])
    }

    /// The class of `x`.
    pub fn generator(&self) -> FqElem {
        self.elem(&[0, 1])
    }

    /// Element with the given lexicographic index (constant term most
    /// significant).
    pub fn element_at(&self, idx: u64) -> FqElem {
        let (p, n) = (self.0.p, self.0.n);
        let mut c = vec![0u64; n];
        let mut rest = idx;
        for i in (0..n).rev() {
            c[i] = rest % p;
            rest /= p;
        }
        self.elem(&c)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// The chosen `(p-1)`-st root of `(-1)^{n-1}`: 1 for odd `n`, otherwise
    /// the lexicographically least element of exact order `2(p-1)`.
    pub fn xi(&self) -> FqElem {
        if self.0.n % 2 == 1 {
            return self.one();
        }
        let target = 2 * (self.0.p - 1);
        self.elements()
            .find(|e| !e.is_zero() && e.multiplicative_order() == target)
            .expect("2(p-1) divides p^n - 1 for even n")
    }
}

/// Element of `F_{p^n}` as a polynomial of degree `< n` in the class of `x`.
#[derive(Clone)]
pub struct FqElem {
    field: Fq,
    coeffs: Vec<u64>,
}

impl FqElem {
    fn from_trimmed(field: Fq, coeffs: Vec<u64>) -> Self {
        Self { field, coeffs }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    /// Coefficient vector of length exactly `n`.
    pub fn coeffs(&self) -> Vec<u64> {
        let mut c = self.coeffs.clone();
        c.resize(self.field.degree(), 0);
        c
    }

    /// Some(c) when the element lies in the prime field.
    pub fn as_prime_field(&self) -> Option<u64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn lex_index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs().iter().fold(0, |acc, &c| acc * p + c)
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field.0, &other.field.0) || self.field == other.field,
            "operands from different fields"
        );
    }

    pub fn frobenius(&self) -> Self {
        Ring::pow(self, self.field.p())
    }

    pub fn multiplicative_order(&self) -> u64 {
        assert!(!self.is_zero(), "zero has no multiplicative order");
        let group = self.field.order() - 1;
        let mut order = group;
        for q in prime_factors(group) {
            while order.is_multiple_of(q) && Ring::pow(self, order / q).is_one() {
                order /= q;
            }
        }
        order
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field.0, &other.field.0) || self.field == other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for FqElem {}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_index().cmp(&other.lex_index())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p();
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = rhs.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        FqElem::from_trimmed(self.field, trim(c))
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let c = poly_sub(&self.coeffs, &rhs.coeffs, self.field.p());
        FqElem::from_trimmed(self.field, c)
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> Self {
        let p = self.field.p();
        let c = self.coeffs.iter().map(|&x| (p - x) % p).collect();
        FqElem::from_trimmed(self.field, c)
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p();
        let prod = poly_mul(&self.coeffs, &rhs.coeffs, p);
        let c = poly_rem_monic(&prod, self.field.modulus(), p);
        FqElem::from_trimmed(self.field, c)
    }
}

impl Ring for FqElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }

    fn from_padic_like(&self, a: &PadicInt) -> Self {
        assert_eq!(a.p(), self.field.p(), "p-adic embedding across different primes");
        self.field.elem(&[a.value() % a.p()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Ring::pow(self, self.field.order() - 2))
        }
    }

    fn prime(&self) -> u64 {
        self.field.p()
    }

    fn char_exponent(&self) -> u32 {
        1
    }
}

/// The chosen `xi` in `F_{p^n}` (see [`Fq::xi`]).
pub fn xi_select(p: u64, n: usize) -> Result<FqElem, ArithError> {
    Ok(Fq::new(p, n)?.xi())
}
