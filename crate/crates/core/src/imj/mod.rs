//! Image-of-J arithmetic: the generator `q = (1+p)^{p-1}` of `1 + pZ_p`,
//! the valuation identity `v_p(q^k - 1) = v_p(k) + 1` and the cyclic
//! orders `p^{s+1}` it produces.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{generator_g, ArithError, PadicInt, PadicUnit, Valuation};
use crate::cannibal::{theta, CannibalError};
use crate::ring::Ring;
use crate::series::{mult_fgl, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImjError {
    #[error("k must be nonzero")]
    ZeroK,
    #[error("precision {found} cannot resolve v_p(q^k - 1) for v_p(k) = {s}; need more than {}", s + 2)]
    PrecisionTooLow { s: u32, found: u32 },
    #[error("q does not generate 1 + pZ/p^{0}")]
    NotGenerator(u32),
    #[error("{} table entries failed, first at k = {first_k}: {first}", failed.len())]
    Table {
        failed: Vec<i64>,
        first_k: i64,
        first: Box<ImjError>,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Cannibal(#[from] CannibalError),
}

/// `(1+p)^{p-1} mod p^M`, checked to be `1 mod p` and of order `p^{M-1}`.
pub fn q_value(p: u64, precision: u32) -> Result<PadicUnit, ImjError> {
    let q = PadicUnit::from_int(p, precision, 1 + p as i128)?.pow(p - 1);
    if q.residue() != 1 || q.order() != p.pow(precision - 1) {
        return Err(ImjError::NotGenerator(precision));
    }
    Ok(q)
}

/// `k = p^s m` with `p` not dividing `m`.
fn split_k(p: u64, k: i64) -> (u32, i64) {
    let (mut s, mut m) = (0, k);
    while m % p as i64 == 0 {
        m /= p as i64;
        s += 1;
    }
    (s, m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImJReport {
    pub p: u64,
    pub k: i64,
    pub precision: u32,
    /// `v_p(k)`.
    pub s: u32,
    /// The part of `k` prime to `p`.
    pub m: i64,
    /// `s + 1`.
    pub order_exponent: u32,
    /// `p^{s+1}`, the order of the cokernel of `q^k - 1` on `Z_p`.
    pub order: u64,
    /// `q` as little-endian base-p digits.
    pub q: Vec<u64>,
    /// `v_p(q^k - 1)` computed at precision `M`.
    pub valuation: u32,
    pub pass: bool,
}

/// Computes `v_p(q^k - 1)` at precision `M` (default `v_p(k) + 4`) and
/// compares it with `v_p(k) + 1`.
pub fn imj_order(p: u64, k: i64, precision: Option<u32>) -> Result<ImJReport, ImjError> {
    crate::arith::check_odd_prime(p)?;
    if k == 0 {
        return Err(ImjError::ZeroK);
    }
    let (s, m) = split_k(p, k);
    let precision = precision.unwrap_or(s + 4);
    if precision <= s + 2 {
        return Err(ImjError::PrecisionTooLow { s, found: precision });
    }
    let q = q_value(p, precision)?;
    let diff = *q.pow_signed(k).as_int() - PadicInt::one(p, precision)?;
    let valuation = match diff.valuation() {
        Valuation::Finite(v) => v,
        Valuation::Infinite { .. } => return Err(ImjError::PrecisionTooLow { s, found: precision }),
    };
    Ok(ImJReport {
        p,
        k,
        precision,
        s,
        m,
        order_exponent: s + 1,
        order: p.pow(s + 1),
        q: q.as_int().digits(),
        valuation,
        pass: valuation == s + 1,
    })
}

/// One report per `k`, in the order given. Entries are evaluated in
/// parallel; every failing `k` is collected.
pub fn imj_table(p: u64, ks: &[i64], precision: Option<u32>) -> Result<Vec<ImJReport>, ImjError> {
    let results: Vec<Result<ImJReport, ImjError>> = ks.par_iter().map(|&k| imj_order(p, k, precision)).collect();
    let failed: Vec<i64> = ks
        .iter()
        .zip(&results)
        .filter(|(_, r)| r.is_err())
        .map(|(&k, _)| k)
        .collect();
    if let Some(&first_k) = failed.first() {
        let first = results
            .into_iter()
            .find_map(Result::err)
            .expect("a failure was recorded");
        return Err(ImjError::Table {
            failed,
            first_k,
            first: Box::new(first),
        });
    }
    Ok(results.into_iter().map(|r| r.expect("no failures")).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub p: u64,
    pub k: i64,
    pub precision: u32,
    /// `g^{k(p-1)}` as digits.
    pub g_power: Vec<u64>,
    /// `q^k` as digits.
    pub q_power: Vec<u64>,
    pub scalars_equal: bool,
    /// `theta_g` on a class of twist `k(p-1)` is `q^k theta_g` over `Z/p^M`.
    pub theta_twist: bool,
}

impl TwistReport {
    pub fn holds(&self) -> bool {
        self.scalars_equal && self.theta_twist
    }
}

/// `psi^g` acts on twist `k(p-1)` by `g^{k(p-1)}`; this should be `q^k`,
/// both as a scalar and through the twist rule of `theta`.
pub fn psi_q_twist_check(p: u64, k: i64, precision: u32, cap: usize) -> Result<TwistReport, ImjError> {
    let g = generator_g(p, precision)?;
    let q = q_value(p, precision)?;
    let twist = k * (p as i64 - 1);
    let g_power = g.pow_signed(twist);
    let q_power = q.pow_signed(k);

    let coeffs = PadicInt::zero(p, precision)?;
    let law = mult_fgl(coeffs.one_like(), cap)?;
    let base = theta(&law, g.as_int(), 0)?;
    let twisted = theta(&law, g.as_int(), twist)?;
    let theta_twist = twisted.series == base.series.scale(q_power.as_int());

    Ok(TwistReport {
        p,
        k,
        precision,
        g_power: g_power.as_int().digits(),
        q_power: q_power.as_int().digits(),
        scalars_equal: g_power == q_power,
        theta_twist,
    })
}
