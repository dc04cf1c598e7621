use std::fmt;

use super::{ArithError, Fq, FqElem};
use crate::ring::Ring;

/// `g(n) = (p^n - 1)/(p - 1) = 1 + p + ... + p^{n-1}`.
pub fn g_of(p: u64, n: usize) -> i64 {
    (0..n as u32).map(|i| p.pow(i) as i64).sum()
}

/// Homogeneous element `c * u^w` of `K_* = F_{p^n}[u^{+-1}]`.
///
/// A zero coefficient is treated as homogeneous of every weight, so zero may
/// be added to anything.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedKElem {
    coeff: FqElem,
    u_weight: i64,
}

impl GradedKElem {
    pub fn new(coeff: FqElem, u_weight: i64) -> Self {
        Self { coeff, u_weight }
    }

    pub fn scalar(coeff: FqElem) -> Self {
        Self::new(coeff, 0)
    }

    pub fn one(field: &Fq) -> Self {
        Self::new(field.one(), 0)
    }

    pub fn u_pow(field: &Fq, w: i64) -> Self {
        Self::new(field.one(), w)
    }

    /// `v_n = u^{p^n - 1}`.
    pub fn v_n(field: &Fq) -> Self {
        Self::u_pow(field, field.order() as i64 - 1)
    }

    /// `u^{g(n)}`.
    pub fn u_g(field: &Fq) -> Self {
        Self::u_pow(field, g_of(field.p(), field.degree()))
    }

    pub fn coeff(&self) -> &FqElem {
        &self.coeff
    }

    pub fn u_weight(&self) -> i64 {
        self.u_weight
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.coeff.clone() * other.coeff.clone(), self.u_weight + other.u_weight)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.u_weight != other.u_weight {
            return Err(ArithError::InhomogeneousSum {
                left: self.u_weight,
                right: other.u_weight,
            });
        }
        let sum = self.coeff.clone() + other.coeff.clone();
        Ok(Self::new(sum, self.u_weight))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.coeff.clone(), self.u_weight)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        let c = self.coeff.try_inv().ok_or(ArithError::NonUnitInverse)?;
        Ok(Self::new(c, -self.u_weight))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let c = self.coeff.pow_signed(e).ok_or(ArithError::NonUnitInverse)?;
        Ok(Self::new(c, self.u_weight * e))
    }
}

impl fmt::Debug for GradedKElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})u^{}", self.coeff, self.u_weight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedOp {
    Add,
    Sub,
    Mul,
}

pub fn graded_ops(x: &GradedKElem, y: &GradedKElem, op: GradedOp) -> Result<GradedKElem, ArithError> {
    match op {
        GradedOp::Add => x.add(y),
        GradedOp::Sub => x.sub(y),
        GradedOp::Mul => Ok(x.mul(y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_n_inverse() {
        let f = Fq::new(5, 2).unwrap();
        let v = GradedKElem::v_n(&f);
        assert_eq!(v.u_weight(), 24);
        let prod = graded_ops(&v, &v.inv().unwrap(), GradedOp::Mul).unwrap();
        assert_eq!(prod, GradedKElem::one(&f));
    }

    #[test]
    fn weight_bookkeeping() {
        let f = Fq::new(3, 2).unwrap();
        assert_eq!(g_of(3, 2), 4);
        let ug = GradedKElem::u_g(&f);
        assert_eq!(ug.mul(&ug).u_weight(), 8);
        assert_eq!(g_of(5, 3), 31);
    }

    #[test]
    fn inhomogeneous_sum_rejected() {
        let f = Fq::new(3, 1).unwrap();
        let a = GradedKElem::u_pow(&f, 1);
        let b = GradedKElem::u_pow(&f, 2);
        assert!(matches!(
            graded_ops(&a, &b, GradedOp::Add),
            Err(ArithError::InhomogeneousSum { left: 1, right: 2 })
        ));
        let zero = GradedKElem::new(f.zero(), 7);
        assert_eq!(a.add(&zero).unwrap(), a);
    }
}
