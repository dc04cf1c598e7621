use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::ArithError;
use crate::ring::Ring;

/// Largest modulus `p^M` accepted; products of two residues fit in `u128`.
pub const MAX_MODULUS: u64 = 1 << 63;

pub const DEFAULT_PRECISION: u32 = 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotOddPrime(p))
    }
}

/// `p^prec`, or an error when it would not fit the fixed-width backing store.
pub fn modulus_for(p: u64, prec: u32) -> Result<u64, ArithError> {
    if prec == 0 {
        return Err(ArithError::ZeroPrecision);
    }
    let mut m: u64 = 1;
    for _ in 0..prec {
        m = m
            .checked_mul(p)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(ArithError::PrecisionOverflow { p, precision: prec })?;
    }
    Ok(m)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Prime factors of `n`, ascending and without repetition.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&r| factors.iter().all(|&q| pow_mod(r, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// p-adic valuation of a fixed-precision element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    /// All known digits vanish; the true valuation is at least `precision`.
    Infinite {
        precision: u32,
    },
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite { .. } => None,
        }
    }
}

/// An element of `Z/p^M`, read as a p-adic integer known to `M` digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    modulus: u64,
    value: u64,
}

impl PadicInt {
    pub fn new(p: u64, prec: u32, value: i128) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        let modulus = modulus_for(p, prec)?;
        let value = value.rem_euclid(modulus as i128) as u64;
        Ok(Self {
            p,
            prec,
            modulus,
            value,
        })
    }

    pub fn zero(p: u64, prec: u32) -> Result<Self, ArithError> {
        Self::new(p, prec, 0)
    }

    pub fn one(p: u64, prec: u32) -> Result<Self, ArithError> {
        Self::new(p, prec, 1)
    }

    /// Little-endian base-`p` digits; the precision is the number of digits.
    pub fn from_digits(p: u64, digits: &[u64]) -> Result<Self, ArithError> {
        check_odd_prime(p)?;
        let prec = digits.len() as u32;
        let modulus = modulus_for(p, prec)?;
        let mut value = 0u64;
        for (i, &d) in digits.iter().enumerate().rev() {
            if d >= p {
                return Err(ArithError::DigitOutOfRange { digit: d, index: i, p });
            }
            value = value * p + d;
        }
        Ok(Self {
            p,
            prec,
            modulus,
            value,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical representative in `[0, p^M)`.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Representative in `(-p^M/2, p^M/2]`.
    pub fn signed_value(&self) -> i128 {
        let v = self.value as i128;
        if v > self.modulus as i128 / 2 {
            v - self.modulus as i128
        } else {
            v
        }
    }

    pub fn digits(&self) -> Vec<u64> {
        let mut v = self.value;
        (0..self.prec)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn digit(&self, i: u32) -> u64 {
        if i >= self.prec {
            return 0;
        }
        (self.value / self.p.pow(i)) % self.p
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.p)
    }

    pub fn valuation(&self) -> Valuation {
        if self.value == 0 {
            return Valuation::Infinite { precision: self.prec };
        }
        let mut v = self.value;
        let mut k = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            k += 1;
        }
        Valuation::Finite(k)
    }

    /// Reduction `Z/p^M -> Z/p^prec`; never extends precision.
    pub fn reduce(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec).max(1);
        let modulus = self.p.pow(prec);
        Self {
            p: self.p,
            prec,
            modulus,
            value: self.value % modulus,
        }
    }

    fn align(&self, other: &Self) -> Result<(Self, Self), ArithError> {
        if self.p != other.p {
            return Err(ArithError::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let prec = self.prec.min(other.prec);
        Ok((self.reduce(prec), other.reduce(prec)))
    }

    fn with_value(&self, value: u64) -> Self {
        Self { value, ..*self }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let (a, b) = self.align(other)?;
        let s = (a.value as u128 + b.value as u128) % a.modulus as u128;
        Ok(a.with_value(s as u64))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        let (a, b) = self.align(other)?;
        let s = (a.value as u128 + (a.modulus - b.value) as u128) % a.modulus as u128;
        Ok(a.with_value(s as u64))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let (a, b) = self.align(other)?;
        Ok(a.with_value(mul_mod(a.value, b.value, a.modulus)))
    }

    /// Inverse modulo `p^M` by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NonUnitInverse);
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.with_value(t0.rem_euclid(self.modulus as i128) as u64))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with_value(pow_mod(self.value, e, self.modulus))
    }

    /// `a^e` for a p-adic exponent, as the digit-wise product
    /// `prod_i (a^{p^i})^{e_i}`. The base must be a unit.
    pub fn pow_padic(&self, e: &PadicInt) -> Result<Self, ArithError> {
        if self.p != e.p {
            return Err(ArithError::PrimeMismatch {
                left: self.p,
                right: e.p,
            });
        }
        if !self.is_unit() {
            return Err(ArithError::NonUnitInverse);
        }
        let mut acc = self.with_value(1 % self.modulus);
        let mut frob = *self;
        for d in e.digits() {
            acc = acc * frob.pow(d);
            frob = frob.pow(self.p);
        }
        Ok(acc)
    }

    /// Signed integer power; negative exponents need a unit.
    pub fn pow_signed(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.prec)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("p-adic operands over different primes")
    }
}

impl Sub for PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("p-adic operands over different primes")
    }
}

impl Mul for PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("p-adic operands over different primes")
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;
    fn neg(self) -> Self {
        self.with_value((self.modulus - self.value) % self.modulus)
    }
}

impl Ring for PadicInt {
    fn zero_like(&self) -> Self {
        self.with_value(0)
    }

    fn one_like(&self) -> Self {
        self.with_value(1 % self.modulus)
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.with_value((n as i128).rem_euclid(self.modulus as i128) as u64)
    }

    fn from_padic_like(&self, a: &PadicInt) -> Self {
        assert_eq!(self.p, a.p, "p-adic embedding across different primes");
        self.with_value(a.value % self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }

    fn prime(&self) -> u64 {
        self.p
    }

    fn char_exponent(&self) -> u32 {
        self.prec
    }
}

/// A p-adic integer certified to be invertible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PadicUnit(PadicInt);

impl PadicUnit {
    pub fn new(a: PadicInt) -> Result<Self, ArithError> {
        if a.is_unit() {
            Ok(Self(a))
        } else {
            Err(ArithError::NonUnit(a.value))
        }
    }

    pub fn from_int(p: u64, prec: u32, value: i128) -> Result<Self, ArithError> {
        Self::new(PadicInt::new(p, prec, value)?)
    }

    pub fn as_int(&self) -> &PadicInt {
        &self.0
    }

    pub fn into_int(self) -> PadicInt {
        self.0
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn precision(&self) -> u32 {
        self.0.prec
    }

    pub fn value(&self) -> u64 {
        self.0.value
    }

    /// Residue modulo `p`, in `[1, p)`.
    pub fn residue(&self) -> u64 {
        self.0.value % self.0.p
    }

    pub fn inv(&self) -> Self {
        Self(self.0.inv().expect("certified unit"))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self(self.0.pow(e))
    }

    pub fn pow_signed(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }

    pub fn reduce(&self, prec: u32) -> Self {
        Self(self.0.reduce(prec))
    }

    /// Multiplicative order in `(Z/p^M)^x`.
    pub fn order(&self) -> u64 {
        let group_order = (self.0.p - 1) * self.0.p.pow(self.0.prec - 1);
        let mut order = group_order;
        for q in prime_factors(group_order) {
            while order.is_multiple_of(q) && self.pow(order / q).0.value == 1 {
                order /= q;
            }
        }
        order
    }
}

impl Mul for PadicUnit {
    type Output = PadicUnit;
    fn mul(self, rhs: Self) -> Self {
        PadicUnit(self.0 * rhs.0)
    }
}

impl From<PadicUnit> for PadicInt {
    fn from(u: PadicUnit) -> Self {
        u.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Sub,
    Mul,
    Inv,
    /// Power with exponent `b`: digit-wise for a unit base, the canonical
    /// representative of `b` otherwise.
    Pow,
}

/// Checked binary/unary arithmetic on `Z/p^M`. `Inv` ignores `b` apart from
/// the prime check.
pub fn padic_arith(a: &PadicInt, b: &PadicInt, op: PadicOp) -> Result<PadicInt, ArithError> {
    if a.p != b.p {
        return Err(ArithError::PrimeMismatch { left: a.p, right: b.p });
    }
    match op {
        PadicOp::Add => a.checked_add(b),
        PadicOp::Sub => a.checked_sub(b),
        PadicOp::Mul => a.checked_mul(b),
        PadicOp::Inv => a.inv(),
        PadicOp::Pow if a.is_unit() => a.pow_padic(b),
        PadicOp::Pow => Ok(a.pow(b.value)),
    }
}

/// Teichmuller lift: the `(p-1)`-st root of unity congruent to `a0` mod `p`.
pub fn teichmuller(p: u64, prec: u32, a0: u64) -> Result<PadicUnit, ArithError> {
    check_odd_prime(p)?;
    if a0.is_multiple_of(p) {
        return Err(ArithError::ZeroResidue);
    }
    let mut x = PadicInt::new(p, prec, (a0 % p) as i128)?;
    for _ in 0..prec {
        x = x.pow(p);
    }
    PadicUnit::new(x)
}

/// `g = omega(r)(1+p)` with `r` the smallest primitive root mod `p`; a
/// topological generator of `Z_p^x`.
pub fn generator_g(p: u64, prec: u32) -> Result<PadicUnit, ArithError> {
    let r = smallest_primitive_root(p);
    let omega = teichmuller(p, prec, r)?;
    let g = omega * PadicUnit::from_int(p, prec, 1 + p as i128)?;
    debug_assert_eq!(g.order(), (p - 1) * p.pow(prec - 1));
    Ok(g)
}

/// `zeta = omega(g mod p)`, the Teichmuller part of the generator.
pub fn zeta(p: u64, prec: u32) -> Result<PadicUnit, ArithError> {
    teichmuller(p, prec, smallest_primitive_root(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, prec: u32, v: i128) -> PadicInt {
        PadicInt::new(p, prec, v).unwrap()
    }

    #[test]
    fn inverse_mod_25() {
        assert_eq!(z(5, 2, 7).inv().unwrap().value(), 18);
        assert!(matches!(z(5, 2, 10).inv(), Err(ArithError::NonUnitInverse)));
    }

    #[test]
    fn arith_examples() {
        let a = z(5, 2, 13);
        assert_eq!(a + a.zero_like(), a);
        assert_eq!(padic_arith(&z(5, 2, 6), &z(5, 2, 4), PadicOp::Pow).unwrap().value(), 21);
        assert!(matches!(
            padic_arith(&z(5, 2, 6), &z(3, 2, 4), PadicOp::Add),
            Err(ArithError::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn mixed_precision_truncates() {
        let s = z(5, 3, 100) + z(5, 2, 3);
        assert_eq!(s.precision(), 2);
        assert_eq!(s.value(), 3);
    }

    #[test]
    fn valuations() {
        assert_eq!(z(5, 6, 1295).valuation(), Valuation::Finite(1));
        assert_eq!(z(7, 4, 1).valuation(), Valuation::Finite(0));
        assert_eq!(z(3, 4, 27).valuation(), Valuation::Finite(3));
        assert_eq!(z(3, 4, 81).valuation(), Valuation::Infinite { precision: 4 });
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(5, 2, 2).unwrap().value(), 7);
        assert_eq!(teichmuller(5, 2, 4).unwrap().value(), 24);
        assert_eq!(teichmuller(7, 5, 1).unwrap().value(), 1);
        assert!(matches!(teichmuller(5, 2, 10), Err(ArithError::ZeroResidue)));
    }

    #[test]
    fn teichmuller_is_root_of_unity() {
        for p in [3u64, 5, 7, 11] {
            for prec in 1..=16 {
                for a0 in 1..p {
                    let w = teichmuller(p, prec, a0).unwrap();
                    assert_eq!(w.pow(p - 1).value(), 1);
                    assert_eq!(w.residue(), a0);
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(generator_g(5, 2).unwrap().value(), 17);
        assert_eq!(generator_g(3, 1).unwrap().value(), 2);
        assert_eq!(generator_g(5, 1).unwrap().value(), 2);
    }

    #[test]
    fn generator_order_exhaustive() {
        for p in [3u64, 5, 7] {
            for prec in 1..=3 {
                let g = generator_g(p, prec).unwrap();
                let m = p.pow(prec);
                // brute force: count distinct powers
                let mut seen = std::collections::HashSet::new();
                let mut x = 1u64;
                loop {
                    if !seen.insert(x) {
                        break;
                    }
                    x = x * g.value() % m;
                }
                assert_eq!(seen.len() as u64, (p - 1) * p.pow(prec - 1));
                assert_eq!(g.order(), (p - 1) * p.pow(prec - 1));
            }
        }
    }

    #[test]
    fn digits_little_endian() {
        assert_eq!(z(5, 2, 17).digits(), vec![2, 3]);
        assert_eq!(PadicInt::from_digits(5, &[2, 3]).unwrap().value(), 17);
        assert!(PadicInt::from_digits(5, &[5]).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(PadicInt::new(4, 2, 1), Err(ArithError::NotOddPrime(4))));
        assert!(matches!(PadicInt::new(2, 2, 1), Err(ArithError::NotOddPrime(2))));
        assert!(PadicInt::new(3, 0, 1).is_err());
        assert!(matches!(
            PadicInt::new(101, 16, 1),
            Err(ArithError::PrecisionOverflow { .. })
        ));
    }

    #[test]
    fn padic_exponent_matches_integer_power() {
        let a = z(7, 5, 10);
        for e in [0i128, 1, 6, 48, 16806] {
            assert_eq!(a.pow_padic(&z(7, 5, e)).unwrap(), a.pow(e as u64));
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn unit_times_inverse_is_one(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
                                     prec in 1u32..12, v in any::<u64>()) {
            let a = PadicInt::new(p, prec, v as i128).unwrap();
            prop_assume!(a.is_unit());
            prop_assert_eq!((a * a.inv().unwrap()).value(), 1);
        }

        #[test]
        fn valuation_is_additive(p in prop::sample::select(vec![3u64, 5, 7]),
                                 a in 1u64..100_000, b in 1u64..100_000) {
            let x = PadicInt::new(p, 16, a as i128).unwrap();
            let y = PadicInt::new(p, 16, b as i128).unwrap();
            let (va, vb) = (x.valuation().finite().unwrap(), y.valuation().finite().unwrap());
            if va + vb < 16 {
                prop_assert_eq!((x * y).valuation(), Valuation::Finite(va + vb));
            }
        }
    }
}
