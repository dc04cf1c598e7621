use std::fmt;

use super::func::{require_fp_algebra, Domain, LevelFn};
use super::{level_size, ProfiniteError};
use crate::ring::Ring;
use crate::series::TruncSeries;

/// An element of the group ring `R[Z/p^N]`, stored as the coefficient of
/// each grouplike `h^m`.
#[derive(Clone, PartialEq)]
pub struct GroupRingElem<R: Ring> {
    p: u64,
    level: u32,
    coeffs: Vec<R>,
}

impl<R: Ring> GroupRingElem<R> {
    pub fn zero(proto: &R, p: u64, level: u32) -> Result<Self, ProfiniteError> {
        let size = level_size(p, level)?;
        Ok(Self {
            p,
            level,
            coeffs: vec![proto.zero_like(); size],
        })
    }

    pub fn from_coeffs(p: u64, level: u32, coeffs: Vec<R>) -> Result<Self, ProfiniteError> {
        let expected = level_size(p, level)?;
        if coeffs.len() != expected {
            return Err(ProfiniteError::TableLength {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { p, level, coeffs })
    }

    /// The grouplike `h^m`, `m` read mod `p^N`.
    pub fn basis(proto: &R, p: u64, level: u32, m: u64) -> Result<Self, ProfiniteError> {
        let mut out = Self::zero(proto, p, level)?;
        let idx = (m % p.pow(level)) as usize;
        out.coeffs[idx] = proto.one_like();
        Ok(out)
    }

    pub fn one(proto: &R, p: u64, level: u32) -> Result<Self, ProfiniteError> {
        Self::basis(proto, p, level, 0)
    }

    /// The topological generator `h`.
    pub fn h(proto: &R, p: u64, level: u32) -> Result<Self, ProfiniteError> {
        Self::basis(proto, p, level, 1)
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

    pub fn proto(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    fn modulus(&self) -> u64 {
        self.p.pow(self.level)
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

    pub fn sub(&self, other: &Self) -> Result<Self, ProfiniteError> {
        self.check_compatible(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            ..self.clone()
        }
    }

    /// Convolution product: `h^a h^b = h^{a+b}`.
    pub fn mul(&self, other: &Self) -> Result<Self, ProfiniteError> {
        self.check_compatible(other)?;
        let size = self.coeffs.len();
        let mut coeffs = vec![self.proto().zero_like(); size];
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let slot = &mut coeffs[(a + b) % size];
                *slot = slot.clone() + x.clone() * y.clone();
            }
        }
        Ok(Self { coeffs, ..self.clone() })
    }

    /// The action of `a` on `Z/p^N`, extended linearly: `h^m -> h^{a m}`.
    pub fn act(&self, a: u64) -> Self {
        let modulus = self.modulus();
        let mut coeffs = vec![self.proto().zero_like(); self.coeffs.len()];
        for (m, x) in self.coeffs.iter().enumerate() {
            let idx = ((a as u128 * m as u128) % modulus as u128) as usize;
            coeffs[idx] = coeffs[idx].clone() + x.clone();
        }
        Self { coeffs, ..self.clone() }
    }

    /// The comultiplication `h^m -> h^m (x) h^m`, as a `p^N x p^N` table
    /// indexed by pairs of grouplikes.
    pub fn coproduct(&self) -> Vec<Vec<R>> {
        let zero = self.proto().zero_like();
        (0..self.coeffs.len())
            .map(|i| {
                (0..self.coeffs.len())
                    .map(|j| if i == j { self.coeffs[i].clone() } else { zero.clone() })
                    .collect()
            })
            .collect()
    }

    /// Augmentation `h^m -> 1`.
    pub fn counit(&self) -> R {
        self.coeffs
            .iter()
            .cloned()
            .reduce(|a, b| a + b)
            .expect("nonempty group ring")
    }

    /// Pushforward along `Z/p^N -> Z/p^{N-1}`.
    pub fn pushforward(&self) -> Result<Self, ProfiniteError> {
        if self.level == 0 {
            return Err(ProfiniteError::LevelMismatch { left: 0, right: 0 });
        }
        let mut out = Self::zero(self.proto(), self.p, self.level - 1)?;
        let target = out.coeffs.len();
        for (m, x) in self.coeffs.iter().enumerate() {
            out.coeffs[m % target] = out.coeffs[m % target].clone() + x.clone();
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Debug for GroupRingElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElem(p={}, N={}) {:?}", self.p, self.level, self.coeffs)
    }
}

/// `<x, f> = sum_m x_m f(m)`, the pairing of `R[Z/p^N]` with
/// `C(Z/p^N, R)`.
pub fn pairing<R: Ring>(x: &GroupRingElem<R>, f: &LevelFn<R>) -> Result<R, ProfiniteError> {
    if x.p() != f.p() {
        return Err(ProfiniteError::PrimeMismatch {
            left: x.p(),
            right: f.p(),
        });
    }
    if x.level() != f.level() {
        return Err(ProfiniteError::LevelMismatch {
            left: x.level(),
            right: f.level(),
        });
    }
    if f.domain() != Domain::All {
        return Err(ProfiniteError::DomainMismatch);
    }
    Ok(x.coeffs()
        .iter()
        .zip(f.values())
        .map(|(a, b)| a.clone() * b.clone())
        .reduce(|a, b| a + b)
        .expect("nonempty group ring"))
}

/// `phi: R[Z/p^N] -> R[y]/(y^{p^N})`, `h^m -> (1+y)^m`. The result has cap
/// `p^N - 1`.
pub fn phi_iso<R: Ring>(x: &GroupRingElem<R>) -> Result<TruncSeries<R>, ProfiniteError> {
    let proto = x.proto();
    require_fp_algebra(proto)?;
    let cap = x.coeffs().len() - 1;
    let mut power = TruncSeries::one(proto, cap);
    let mut acc = TruncSeries::zero(proto, cap);
    for c in x.coeffs() {
        if !c.is_zero() {
            acc = &acc + &power.scale(c);
        }
        power = times_one_plus_y(&power);
    }
    Ok(acc)
}

/// `s (1 + y)` at the cap of `s`.
fn times_one_plus_y<R: Ring>(s: &TruncSeries<R>) -> TruncSeries<R> {
    &s.mul_by_var().truncate(s.cap()) + s
}

/// Inverse of [`phi_iso`]: `y^i -> (h - 1)^i`. The series must have cap
/// exactly `p^N - 1`.
pub fn phi_inverse<R: Ring>(s: &TruncSeries<R>, p: u64, level: u32) -> Result<GroupRingElem<R>, ProfiniteError> {
    let proto = s.proto();
    require_fp_algebra(proto)?;
    let size = level_size(p, level)?;
    if s.cap() + 1 != size {
        return Err(ProfiniteError::CapMismatch {
            expected: size - 1,
            found: s.cap(),
        });
    }
    let h_minus_one = GroupRingElem::h(proto, p, level)?.sub(&GroupRingElem::one(proto, p, level)?)?;
    let mut power = GroupRingElem::one(proto, p, level)?;
    let mut acc = GroupRingElem::zero(proto, p, level)?;
    for c in s.coeffs() {
        if !c.is_zero() {
            acc = acc.add(&power.scale(c))?;
        }
        power = power.mul(&h_minus_one)?;
    }
    Ok(acc)
}

/// The functional `m -> [y^j] (1+y)^m`, dual to `y^j` under `phi`.
pub fn dual_functional<R: Ring>(proto: &R, p: u64, level: u32, j: usize) -> Result<LevelFn<R>, ProfiniteError> {
    require_fp_algebra(proto)?;
    let size = level_size(p, level)?;
    let mut values = Vec::with_capacity(size);
    let mut power = TruncSeries::one(proto, size - 1);
    for _ in 0..size {
        values.push(if j < size {
            power.coeff(j).clone()
        } else {
            proto.zero_like()
        });
        power = times_one_plus_y(&power);
    }
    LevelFn::from_values(p, level, Domain::All, values)
}

/// `c_k`, the functional dual to `y^{p^k}`.
pub fn c_k<R: Ring>(proto: &R, p: u64, level: u32, k: u32) -> Result<LevelFn<R>, ProfiniteError> {
    dual_functional(proto, p, level, p.pow(k) as usize)
}
