use super::CannibalError;
use crate::adams::psi_fn;
use crate::arith::{FqElem, PadicUnit};
use crate::profinite::{Domain, LevelFn, ProfiniteError};
use crate::ring::Ring;

/// A solution `s` of `psi^r(s) = theta s` normalized by `s(1) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferSolution<R: Ring> {
    pub s: LevelFn<R>,
    /// `psi^r(s) = theta s` was re-checked pointwise.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TransferOutcome<R: Ring> {
    Solved(TransferSolution<R>),
    /// The product of `theta` over the orbit of `r` is not 1.
    NoSolution {
        orbit_product: R,
    },
}

impl<R: Ring> TransferOutcome<R> {
    pub fn solution(&self) -> Option<&TransferSolution<R>> {
        match self {
            TransferOutcome::Solved(s) => Some(s),
            TransferOutcome::NoSolution { .. } => None,
        }
    }
}

/// Solves `s(r x) = theta(x) s(x)` on `(Z/p^N)^x` by walking the orbit of
/// `1` under multiplication by `r`, which must generate the unit group.
pub fn solve_transfer<R: Ring>(theta: &LevelFn<R>, r: &PadicUnit) -> Result<TransferOutcome<R>, CannibalError> {
    if theta.domain() != Domain::Units {
        return Err(ProfiniteError::DomainMismatch.into());
    }
    let (p, level) = (theta.p(), theta.level());
    if r.p() != p {
        return Err(CannibalError::PrimeMismatch { left: r.p(), right: p });
    }
    for x in theta.points() {
        if theta.eval(x).and_then(R::try_inv).is_none() {
            return Err(CannibalError::NonInvertibleTheta(x));
        }
    }
    let modulus = p.pow(level);
    let r_res = r.value() % modulus;
    let count = theta.values().len();
    let index = |x: u64| (x - x / p - 1) as usize;

    let proto = theta.proto();
    let mut values: Vec<Option<R>> = vec![None; count];
    let mut x = 1u64;
    let mut s = proto.one_like();
    for _ in 0..count {
        if values[index(x)].is_some() {
            return Err(CannibalError::NotGenerator(r_res));
        }
        values[index(x)] = Some(s.clone());
        s = theta.eval(x).expect("unit").clone() * s;
        x = (x as u128 * r_res as u128 % modulus as u128) as u64;
    }
    if x != 1 {
        return Err(CannibalError::NotGenerator(r_res));
    }
    if !s.is_one() {
        return Ok(TransferOutcome::NoSolution { orbit_product: s });
    }
    let values = values.into_iter().map(|v| v.expect("orbit covers the units")).collect();
    let s = LevelFn::from_values(p, level, Domain::Units, values)?;
    let verified = psi_fn(r.as_int(), &s)? == theta.mul(&s)?;
    Ok(TransferOutcome::Solved(TransferSolution { s, verified }))
}

/// Searches every nowhere-vanishing `s` for a solution of
/// `psi^r(s) = theta s`. Exponential in the number of units; meant for
/// level one.
pub fn brute_force_solvable(theta: &LevelFn<FqElem>, r: &PadicUnit) -> Result<bool, CannibalError> {
    let field = theta.proto().field().clone();
    let units: Vec<FqElem> = field.elements().filter(|x| !x.is_zero()).collect();
    let count = theta.values().len();
    let mut choice = vec![0usize; count];
    loop {
        let s = LevelFn::from_values(
            theta.p(),
            theta.level(),
            Domain::Units,
            choice.iter().map(|&i| units[i].clone()).collect(),
        )?;
        if psi_fn(r.as_int(), &s)? == theta.mul(&s)? {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == count {
                return Ok(false);
            }
            choice[i] += 1;
            if choice[i] < units.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
