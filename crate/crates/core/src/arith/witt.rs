use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::padic::modulus_for;
use super::{ArithError, Fq, FqElem, PadicInt};
use crate::ring::Ring;

#[derive(Debug, PartialEq, Eq)]
struct WittCtx {
    field: Fq,
    prec: u32,
    modulus: u64,
}

/// Handle on `W(F_{p^n}) / p^M`, presented as `(Z/p^M)[x] / (f)` where `f`
/// is the integer lift of the residue field modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witt(Arc<WittCtx>);

impl Witt {
    pub fn new(p: u64, n: usize, prec: u32) -> Result<Self, ArithError> {
        let field = Fq::new(p, n)?;
        let modulus = modulus_for(p, prec)?;
        Ok(Witt(Arc::new(WittCtx { field, prec, modulus })))
    }

    pub fn residue_field(&self) -> &Fq {
        &self.0.field
    }

    pub fn precision(&self) -> u32 {
        self.0.prec
    }

    pub fn elem(&self, coeffs: &[i64]) -> WittTrunc {
        let m = self.0.modulus as i128;
        let c: Vec<u64> = coeffs.iter().map(|&x| (x as i128).rem_euclid(m) as u64).collect();
        WittTrunc::reduced(self.clone(), c)
    }

    pub fn zero(&self) -> WittTrunc {
        self.elem(&[])
    }

    pub fn one(&self) -> WittTrunc {
        self.elem(&[1])
    }

    /// Coefficient-wise lift of a residue field element (not Teichmuller).
    pub fn lift(&self, a: &FqElem) -> WittTrunc {
        let c: Vec<i64> = a.coeffs().iter().map(|&x| x as i64).collect();
        self.elem(&c)
    }
}

#[derive(Clone)]
pub struct WittTrunc {
    ring: Witt,
    coeffs: Vec<u64>,
}

impl WittTrunc {
    fn reduced(ring: Witt, mut c: Vec<u64>) -> Self {
        let m = ring.0.modulus;
        let f = ring.0.field.modulus().to_vec();
        let n = f.len() - 1;
        while c.len() > n {
            let lead = c.pop().unwrap();
            let shift = c.len() - n;
            for (i, &fi) in f[..n].iter().enumerate() {
                let sub = (lead as u128 * fi as u128 % m as u128) as u64;
                c[shift + i] = (c[shift + i] + m - sub) % m;
            }
        }
        c.resize(n, 0);
        Self { ring, coeffs: c }
    }

    pub fn ring(&self) -> &Witt {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Reduction modulo `p` onto the residue field.
    pub fn reduce(&self) -> FqElem {
        let p = self.ring.0.field.p();
        let c: Vec<u64> = self.coeffs.iter().map(|&x| x % p).collect();
        self.ring.0.field.elem(&c)
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring.0, &other.ring.0) || self.ring == other.ring,
            "operands from different Witt truncations"
        );
    }

    fn zip(self, rhs: Self, f: impl Fn(u64, u64, u64) -> u64) -> Self {
        self.check(&rhs);
        let m = self.ring.0.modulus;
        let c = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| f(a, b, m)).collect();
        Self {
            ring: self.ring,
            coeffs: c,
        }
    }
}

impl PartialEq for WittTrunc {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring.0, &other.ring.0) || self.ring == other.ring) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for WittTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?} mod p^{}", self.coeffs, self.ring.0.prec)
    }
}

impl Add for WittTrunc {
    type Output = WittTrunc;
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b, m| ((a as u128 + b as u128) % m as u128) as u64)
    }
}

impl Sub for WittTrunc {
    type Output = WittTrunc;
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b, m| ((a as u128 + (m - b) as u128) % m as u128) as u64)
    }
}

impl Neg for WittTrunc {
    type Output = WittTrunc;
    fn neg(self) -> Self {
        let m = self.ring.0.modulus;
        let c = self.coeffs.iter().map(|&a| (m - a) % m).collect();
        Self {
            ring: self.ring,
            coeffs: c,
        }
    }
}

impl Mul for WittTrunc {
    type Output = WittTrunc;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let m = self.ring.0.modulus as u128;
        let mut prod = vec![0u64; 2 * self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + a as u128 * b as u128 % m) % m) as u64;
            }
        }
        WittTrunc::reduced(self.ring, prod)
    }
}

impl Ring for WittTrunc {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }

    fn one_like(&self) -> Self {
        self.ring.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.ring.elem(&[n])
    }

    fn from_padic_like(&self, a: &PadicInt) -> Self {
        assert_eq!(a.p(), self.prime(), "p-adic embedding across different primes");
        let v = a.value() % self.ring.0.modulus;
        WittTrunc::reduced(self.ring.clone(), vec![v])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Newton iteration `x <- x(2 - ax)` from the residue field inverse.
    fn try_inv(&self) -> Option<Self> {
        let residue_inv = self.reduce().try_inv()?;
        let two = self.from_int_like(2);
        let mut x = self.ring.lift(&residue_inv);
        let mut correct = 1;
        while correct < self.ring.0.prec {
            x = x.clone() * (two.clone() - self.clone() * x);
            correct *= 2;
        }
        debug_assert!((x.clone() * self.clone()).is_one());
        Some(x)
    }

    fn prime(&self) -> u64 {
        self.ring.0.field.p()
    }

    fn char_exponent(&self) -> u32 {
        self.ring.0.prec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let w = Witt::new(3, 2, 4).unwrap();
        let vals: Vec<WittTrunc> = (0..20).map(|i| w.elem(&[i * 7 - 30, i * i - 11])).collect();
        for a in &vals {
            for b in &vals {
                assert_eq!((a.clone() + b.clone()).reduce(), a.reduce() + b.reduce());
                assert_eq!((a.clone() * b.clone()).reduce(), a.reduce() * b.reduce());
            }
        }
    }

    #[test]
    fn units_invert_exactly() {
        let w = Witt::new(5, 2, 6).unwrap();
        for i in 1..25 {
            let a = w.elem(&[i * 13 + 1, i]);
            match a.try_inv() {
                Some(inv) => assert!((a * inv).is_one()),
                None => assert!(a.reduce().is_zero()),
            }
        }
        assert!(w.elem(&[5, 10]).try_inv().is_none());
    }

    #[test]
    fn modulus_lift_vanishes() {
        let w = Witt::new(3, 2, 3).unwrap();
        let x = w.elem(&[0, 1]);
        // x^2 + 1 = 0 in the lift of F_9
        assert!((x.clone() * x + w.one()).is_zero());
    }
}
