//! Cannibalistic classes `theta_k = k^{-1} ((1+y)^k - 1) / y` with their
//! twist, sum and cocycle laws, the transfer equation `psi^r(s) = theta s`,
//! and the series shadow of the Euler-class restriction.

mod transfer;

pub use transfer::{brute_force_solvable, solve_transfer, TransferOutcome, TransferSolution};

use serde::Serialize;
use thiserror::Error;

use crate::adams::{psi_series, AdamsError};
use crate::arith::{ArithError, Fq, PadicInt, PadicUnit};
use crate::linalg::Matrix;
use crate::profinite::{phi_iso, GroupRingElem, ProfiniteError};
use crate::ring::Ring;
use crate::series::{mult_fgl, FormalGroupLaw, MvSeries, SeriesError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CannibalError {
    #[error("{0} is not a p-adic unit")]
    NonUnitK(u64),
    #[error("theta is not invertible at the point {0}")]
    NonInvertibleTheta(u64),
    #[error("{0} does not generate the unit group at this level")]
    NotGenerator(u64),
    #[error("parameter over p = {left} used with a ring over p = {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error(transparent)]
    Adams(#[from] AdamsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Profinite(#[from] ProfiniteError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `theta_k` of a class twisted `m` times, as a unit power series.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaClass<R: Ring> {
    pub k: PadicInt,
    pub twist: i64,
    pub series: TruncSeries<R>,
}

fn check_unit<R: Ring>(law: &FormalGroupLaw<R>, k: &PadicInt) -> Result<R, CannibalError> {
    if k.p() != law.proto().prime() {
        return Err(CannibalError::PrimeMismatch {
            left: k.p(),
            right: law.proto().prime(),
        });
    }
    if !k.is_unit() {
        return Err(CannibalError::NonUnitK(k.value()));
    }
    Ok(law.proto().from_padic_like(k))
}

/// `k^{-1} [k](y) / y`, which for the multiplicative law is
/// `k^{-1} ((1+y)^k - 1) / y`. The result has cap one less than the law.
fn untwisted<R: Ring>(law: &FormalGroupLaw<R>, k: &PadicInt) -> Result<TruncSeries<R>, CannibalError> {
    let k_r = check_unit(law, k)?;
    let k_inv = k_r.try_inv().ok_or(CannibalError::NonUnitK(k.value()))?;
    let a_series = law.a_series(k)?;
    Ok(a_series.div_by_var()?.scale(&k_inv))
}

/// `theta_k(G^m zeta) = k^m theta_k(zeta)`.
pub fn theta<R: Ring>(law: &FormalGroupLaw<R>, k: &PadicInt, m: i64) -> Result<ThetaClass<R>, CannibalError> {
    let base = untwisted(law, k)?;
    let k_r = check_unit(law, k)?;
    let factor = k_r.pow_signed(m).ok_or(CannibalError::NonUnitK(k.value()))?;
    Ok(ThetaClass {
        k: *k,
        twist: m,
        series: base.scale(&factor),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaLawsReport {
    pub k: u64,
    pub l: u64,
    pub cap: usize,
    /// The untwisted class has constant term 1.
    pub unit_constant: bool,
    /// `theta_k(zeta + xi) = theta_k(zeta) theta_k(xi)` in two variables.
    pub sum_law: bool,
    /// `theta_k(zeta)^{-1} = theta_k(-zeta)`.
    pub inverse_law: bool,
    /// `theta_k(G^m zeta) = k^m theta_k(zeta)` and twists add.
    pub twist_law: bool,
    /// `theta_{kl} = psi^k(theta_l) theta_k`.
    pub cocycle: bool,
}

impl ThetaLawsReport {
    pub fn holds(&self) -> bool {
        self.unit_constant && self.sum_law && self.inverse_law && self.twist_law && self.cocycle
    }
}

/// Checks the four laws of `theta` for units `k`, `l` with twist `m`, to the
/// cap of `law` minus one.
pub fn theta_laws_check<R: Ring>(
    law: &FormalGroupLaw<R>,
    k: &PadicInt,
    l: &PadicInt,
    m: i64,
) -> Result<ThetaLawsReport, CannibalError> {
    let proto = law.proto().clone();
    let theta_k = untwisted(law, k)?;
    let theta_l = untwisted(law, l)?;
    let cap = theta_k.cap();

    let unit_constant = theta_k.coeff(0).is_one() && theta_l.coeff(0).is_one();

    // Two classes with coordinates y1, y2 and Thom class y1 y2. psi^k acts
    // by y_i -> [k](y_i); dividing by (k y1)(k y2) gives theta_k of the sum.
    let kk = law.a_series(k)?;
    let cap2 = law.cap() as u32;
    let as_bi = |s: &TruncSeries<R>, var: usize| {
        MvSeries::<R, 2>::from_terms(
            &proto,
            s.coeffs().iter().enumerate().map(|(i, c)| {
                let mut e = [0u32; 2];
                e[var] = i as u32;
                (e, c.clone())
            }),
            cap2,
        )
    };
    let thom_image = as_bi(&kk, 0).mul(&as_bi(&kk, 1));
    let k_r = check_unit(law, k)?;
    let k_inv2 = (k_r.clone() * k_r.clone()).try_inv().expect("unit");
    let shifted = MvSeries::<R, 2>::from_terms(
        &proto,
        thom_image
            .terms()
            .filter(|(e, _)| e[0] >= 1 && e[1] >= 1)
            .map(|(e, c)| ([e[0] - 1, e[1] - 1], c.clone() * k_inv2.clone())),
        cap2 - 2,
    );
    let divisible = thom_image.terms().all(|(e, _)| e[0] >= 1 && e[1] >= 1);
    let product = as_bi(&theta_k, 0).mul(&as_bi(&theta_k, 1)).truncate(cap2 - 2);
    let sum_law = divisible && shifted == product;

    // theta_k(-zeta): Thom class of -zeta is y^{-1}, so theta_k(-zeta) =
    // k y / [k](y).
    let neg = kk.div_by_var()?.invert_unit()?.scale(&k_r);
    let inverse_law = (&neg * &theta_k).truncate(cap) == TruncSeries::one(&proto, cap);

    let twisted = theta(law, k, m)?;
    let twisted_other = theta(law, k, 1 - m)?;
    let twisted_sum = theta(law, k, 1)?;
    let scale = k_r.pow_signed(m).expect("unit");
    let twist_law = twisted.series == theta_k.scale(&scale)
        && &twisted.series * &twisted_other.series == &twisted_sum.series * &theta_k;

    let kl = k.checked_mul(l)?;
    let theta_kl = untwisted(law, &kl)?;
    // psi^k(theta_l)(y) = theta_l([k](y)); compose at the cap of theta_l.
    let psi_theta_l = theta_l.compose(&kk.truncate(cap))?;
    let cocycle = theta_kl == &psi_theta_l * &theta_k;

    Ok(ThetaLawsReport {
        k: k.value(),
        l: l.value(),
        cap,
        unit_constant,
        sum_law,
        inverse_law,
        twist_law,
        cocycle,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiPowerReport {
    pub r: u64,
    pub cap: usize,
    /// `psi^r(1+y) = (1+y)^r`.
    pub binomial: bool,
    /// `psi^r(j-1)/(j-1) = 1 + j + ... + j^{r-1}` with `j = 1+y`.
    pub geometric: bool,
    /// The constant term of the quotient is `r`, a unit.
    pub constant_is_unit: bool,
}

impl PsiPowerReport {
    pub fn holds(&self) -> bool {
        self.binomial && self.geometric && self.constant_is_unit
    }
}

pub fn psi_power_check<R: Ring>(law: &FormalGroupLaw<R>, r: u64) -> Result<PsiPowerReport, CannibalError> {
    let proto = law.proto().clone();
    let p = proto.prime();
    if r == 0 || r.is_multiple_of(p) {
        return Err(CannibalError::NonUnitK(r));
    }
    let cap = law.cap();
    let digits = (1..)
        .find(|&d| p.checked_pow(d).is_none_or(|pd| pd > r))
        .expect("finite");
    let r_padic = PadicInt::new(p, digits, r as i128)?;
    let j = TruncSeries::from_coeffs(&proto, vec![proto.one_like(), proto.one_like()], cap);
    let psi_j = psi_series(law, &r_padic, &j)?;
    let binomial = psi_j == j.pow(r);

    let j_minus_one = law.var();
    let quotient = psi_series(law, &r_padic, &j_minus_one)?.div_by_var()?;
    let mut geometric_sum = TruncSeries::zero(&proto, cap);
    let mut power = TruncSeries::one(&proto, cap);
    for _ in 0..r {
        geometric_sum = &geometric_sum + &power;
        power = &power * &j;
    }
    let geometric = quotient == geometric_sum.truncate(cap - 1);
    let constant = quotient.coeff(0).clone();
    Ok(PsiPowerReport {
        r,
        cap,
        binomial,
        geometric,
        constant_is_unit: constant == proto.from_int_like(r as i64) && constant.try_inv().is_some(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub p: u64,
    pub n: usize,
    pub cap: usize,
    /// `t(j - 1) = (1 + y) - 1 = y`.
    pub t_of_j_minus_one: bool,
    /// Multiplication by `y` from degree `< D` to degree `<= D` has rank `D`.
    pub injective: bool,
    /// Its image is spanned by `y, ..., y^D`.
    pub image_is_augmentation_ideal: bool,
}

impl EulerReport {
    pub fn holds(&self) -> bool {
        self.t_of_j_minus_one && self.injective && self.image_is_augmentation_ideal
    }
}

pub fn euler_restriction_check(p: u64, n: usize, cap: usize) -> Result<EulerReport, CannibalError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let j = TruncSeries::from_coeffs(&zero, vec![zero.one_like(), zero.one_like()], cap);
    let t_of_j_minus_one = &j - &TruncSeries::one(&zero, cap) == TruncSeries::var(&zero, cap);

    let columns: Vec<Vec<_>> = (0..cap)
        .map(|i| {
            TruncSeries::monomial(zero.one_like(), i, cap - 1)
                .mul_by_var()
                .coeffs()
                .to_vec()
        })
        .collect();
    let mult = Matrix::from_columns(&zero, cap + 1, &columns);
    let injective = mult.rank() == cap;
    let ideal: Vec<Vec<_>> = (1..=cap)
        .map(|i| TruncSeries::monomial(zero.one_like(), i, cap).coeffs().to_vec())
        .collect();
    let ideal_matrix = Matrix::from_columns(&zero, cap + 1, &ideal);
    let joint: Vec<Vec<_>> = columns.iter().chain(ideal.iter()).cloned().collect();
    let joint_matrix = Matrix::from_columns(&zero, cap + 1, &joint);
    let image_is_augmentation_ideal =
        ideal_matrix.rank() == cap && joint_matrix.rank() == cap && mult.row(0).iter().all(|x| x.is_zero());
    Ok(EulerReport {
        p,
        n,
        cap,
        t_of_j_minus_one,
        injective,
        image_is_augmentation_ideal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaConsistencyReport {
    pub p: u64,
    pub level: u32,
    pub r: u64,
    /// Some `x` solves `(h - 1) x = psi^r(h - 1)` in `F_{p^n}[Z/p^N]`.
    pub solvable: bool,
    /// `phi(x)` agrees with `r theta_r` below `y^{p^N - 1}`, where the
    /// ambiguity by the norm element lives.
    pub agrees: bool,
}

/// Compares the series class `theta_r` with the group-ring quotient
/// `psi^r(F) / F` for `F = phi^{-1}(y) = h - 1`. `F` is a zero divisor, so
/// the quotient is a solution of `F x = psi^r(F)`, defined up to the
/// annihilator of `F`.
pub fn theta_consistency_check(
    r: &PadicUnit,
    p: u64,
    n: usize,
    level: u32,
) -> Result<ThetaConsistencyReport, CannibalError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = p.pow(level);
    let r_res = r.value() % size;
    let one = GroupRingElem::one(&zero, p, level)?;
    let h = GroupRingElem::h(&zero, p, level)?;
    let f = h.sub(&one)?;
    let psi_f = f.act(r_res);

    let columns: Vec<Vec<_>> = (0..size)
        .map(|m| {
            let basis = GroupRingElem::basis(&zero, p, level, m)?;
            Ok(f.mul(&basis)?.coeffs().to_vec())
        })
        .collect::<Result<_, CannibalError>>()?;
    let mult = Matrix::from_columns(&zero, size as usize, &columns);
    let solution = mult.solve(psi_f.coeffs());
    let law = mult_fgl(zero.one_like(), size as usize - 1)?;
    let theta_r = theta(&law, r.as_int(), 0)?.series;
    let r_scalar = zero.from_padic_like(r.as_int());
    let expected = theta_r.scale(&r_scalar).truncate(size as usize - 2);
    let agrees = match &solution {
        Some(x) => {
            let x = GroupRingElem::from_coeffs(p, level, x.clone())?;
            phi_iso(&x)?.truncate(size as usize - 2) == expected
        }
        None => false,
    };
    Ok(ThetaConsistencyReport {
        p,
        level,
        r: r_res,
        solvable: solution.is_some(),
        agrees,
    })
}
