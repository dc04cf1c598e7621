use serde::Serialize;

use super::func::{digits_of, Domain, LevelFn, MonomialForm};
use super::group_ring::{c_k, pairing, phi_iso, GroupRingElem};
use super::{level_size, ProfiniteError};
use crate::arith::{g_of, Fq, FqElem, GradedKElem};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// `C(m, j) mod p` for all `m < rows`, `j < cols`, by Pascal's rule.
pub(crate) fn pascal_mod_p(p: u64, rows: usize, cols: usize) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; cols]; rows];
    for m in 0..rows {
        table[m][0] = 1;
        for j in 1..cols {
            if m > 0 {
                table[m][j] = (table[m - 1][j - 1] + table[m - 1][j]) % p;
            }
        }
    }
    table
}

#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub p: u64,
    pub level: u32,
    pub n: usize,
    pub checked: usize,
    /// `(m, k)` where `<c_k, (1+y)^m>` disagrees with the digit `m_k` or
    /// with `C(m, p^k) mod p`.
    pub mismatches: Vec<(u64, u32)>,
    pub holds: bool,
}

/// Exhaustively compares `<c_k, (1+y)^m>` with the base-`p` digit `m_k` and
/// with `C(m, p^k) mod p` over `F_{p^n}`.
pub fn phi_dual_check(p: u64, level: u32, n: usize) -> Result<DualReport, ProfiniteError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = level_size(p, level)?;
    let binom = pascal_mod_p(p, size, size);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for k in 0..level {
        let ck = c_k(&zero, p, level, k)?;
        let pk = p.pow(k) as usize;
        for m in 0..size as u64 {
            let x = GroupRingElem::basis(&zero, p, level, m)?;
            let paired = pairing(&x, &ck)?;
            let digit = field.from_int(digits_of(m, p, level)[k as usize] as i64);
            let binomial = field.from_int(binom[m as usize][pk] as i64);
            checked += 1;
            if paired != digit || paired != binomial {
                mismatches.push((m, k));
            }
        }
    }
    Ok(DualReport {
        p,
        level,
        n,
        checked,
        holds: mismatches.is_empty(),
        mismatches,
    })
}

/// Matrix of `<h^m, prod f_k^{e_k}>`, rows indexed by `m` and columns by
/// the monomial index.
pub fn pairing_matrix<R: Ring>(proto: &R, p: u64, level: u32) -> Result<Matrix<R>, ProfiniteError> {
    let size = level_size(p, level)?;
    let mut columns = Vec::with_capacity(size);
    for idx in 0..size as u64 {
        let exps = digits_of(idx, p, level);
        let mono = MonomialForm::monomial(proto.one_like(), p, level, &exps)?.to_fn()?;
        let mut col = Vec::with_capacity(size);
        for m in 0..size as u64 {
            col.push(pairing(&GroupRingElem::basis(proto, p, level, m)?, &mono)?);
        }
        columns.push(col);
    }
    Ok(Matrix::from_columns(proto, size, &columns))
}

/// Restriction of a function on `Z/p^N` to `(Z/p^N)^x`.
pub fn localize_units<R: Ring>(f: &LevelFn<R>) -> Result<LevelFn<R>, ProfiniteError> {
    if f.domain() != Domain::All {
        return Err(ProfiniteError::DomainMismatch);
    }
    LevelFn::from_fn(f.p(), f.level(), Domain::Units, |m| {
        f.eval(m).expect("unit in Z/p^N").clone()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizationReport {
    pub p: u64,
    pub level: u32,
    /// Dimension of the kernel of restriction.
    pub kernel_dim: usize,
    pub nonunit_count: usize,
    /// The kernel is exactly the span of the indicators of non-units.
    pub kernel_is_nonunit_ideal: bool,
    pub surjective: bool,
    pub f0_invertible_after: bool,
    pub f0_invertible_before: bool,
    /// The inverse of `f_0` is `x -> (x mod p)^{-1}`.
    pub f0_inverse_matches: bool,
}

/// Checks that restriction to units is the quotient by functions supported
/// on non-units and that it inverts `f_0`.
pub fn localization_check(p: u64, n: usize, level: u32) -> Result<LocalizationReport, ProfiniteError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = level_size(p, level)?;
    let units = super::func::domain_points(p, level, Domain::Units);

    let mut columns = Vec::with_capacity(size);
    for m in 0..size as u64 {
        let e = LevelFn::indicator(&zero, p, level, Domain::All, |x| x == m)?;
        columns.push(localize_units(&e)?.values().to_vec());
    }
    let restriction = Matrix::from_columns(&zero, units.len(), &columns);
    let kernel = restriction.nullspace();
    let nonunit_count = size - units.len();
    let supported_on_nonunits = kernel.iter().all(|v| {
        v.iter()
            .enumerate()
            .all(|(m, x)| (m as u64).is_multiple_of(p) || x.is_zero())
    });

    let f0 = LevelFn::digit(&zero, p, level, Domain::All, 0)?;
    let f0_units = localize_units(&f0)?;
    let expected_inverse = LevelFn::from_fn(p, level, Domain::Units, |m| {
        field.from_int((m % p) as i64).try_inv().expect("unit residue")
    })?;
    let inverse = f0_units.inv();
    Ok(LocalizationReport {
        p,
        level,
        kernel_dim: kernel.len(),
        nonunit_count,
        kernel_is_nonunit_ideal: kernel.len() == nonunit_count && supported_on_nonunits,
        surjective: restriction.rank() == units.len(),
        f0_invertible_after: inverse.is_some(),
        f0_invertible_before: f0.inv().is_some(),
        f0_inverse_matches: inverse.as_ref() == Some(&expected_inverse),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelCompatReport {
    pub p: u64,
    pub level: u32,
    pub pullback_multiplicative: bool,
    pub pushforward_multiplicative: bool,
    pub adjunction: bool,
    pub phi_compatible: bool,
    pub digits_compatible: bool,
    pub holds: bool,
}

/// Checks that `Z/p^{N+1} -> Z/p^N` intertwines pullback of functions,
/// pushforward of group-ring elements, the pairing and `phi`.
pub fn level_compat_check(p: u64, n: usize, level: u32) -> Result<LevelCompatReport, ProfiniteError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let lower = level_size(p, level)? as u64;
    let upper = level_size(p, level + 1)? as u64;

    let digit_fns: Vec<LevelFn<FqElem>> = (0..level)
        .map(|k| LevelFn::digit(&zero, p, level, Domain::All, k))
        .collect::<Result<_, _>>()?;
    let mut pullback_multiplicative = true;
    let mut digits_compatible = true;
    for (k, f) in digit_fns.iter().enumerate() {
        let up = f.pullback()?;
        digits_compatible &= up == LevelFn::digit(&zero, p, level + 1, Domain::All, k as u32)?;
        for g in &digit_fns {
            pullback_multiplicative &= f.mul(g)?.pullback()? == up.mul(&g.pullback()?)?;
        }
    }

    let mut pushforward_multiplicative = true;
    let mut phi_compatible = true;
    for a in 0..upper {
        let x = GroupRingElem::basis(&zero, p, level + 1, a)?;
        let pushed = x.pushforward()?;
        let truncated = phi_iso(&x)?.truncate(lower as usize - 1);
        phi_compatible &= phi_iso(&pushed)? == truncated;
        for b in (0..upper).step_by(p as usize) {
            let y = GroupRingElem::basis(&zero, p, level + 1, b)?;
            pushforward_multiplicative &= x.mul(&y)?.pushforward()? == pushed.mul(&y.pushforward()?)?;
        }
    }

    let mut adjunction = true;
    for a in 0..upper {
        let x = GroupRingElem::basis(&zero, p, level + 1, a)?;
        for m in 0..lower {
            let f = LevelFn::indicator(&zero, p, level, Domain::All, |t| t == m)?;
            adjunction &= pairing(&x.pushforward()?, &f)? == pairing(&x, &f.pullback()?)?;
        }
    }

    let holds =
        pullback_multiplicative && pushforward_multiplicative && adjunction && phi_compatible && digits_compatible;
    Ok(LevelCompatReport {
        p,
        level,
        pullback_multiplicative,
        pushforward_multiplicative,
        adjunction,
        phi_compatible,
        digits_compatible,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CNormEntry {
    pub k: u32,
    /// `xi^{p^k - 1} = (-1)^{k(n-1)}`, so both expressions for `c_k` agree.
    pub expressions_agree: bool,
    /// `c_k^p = c_k` with `c_k = xi^{-1} b_k u^{-p^k g(n)}`.
    pub idempotent_short_form: bool,
    /// `c_k^p = c_k` with `c_k = (-1)^{k(n-1)} xi^{-p^k} b_k u^{-p^k g(n)}`.
    pub idempotent_long_form: bool,
    /// The relation for `b_k` is homogeneous.
    pub relation_homogeneous: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CNormReport {
    pub p: u64,
    pub n: usize,
    pub entries: Vec<CNormEntry>,
    pub holds: bool,
}

/// Writing `c_k = a b_k u^{-w}` with `b_k` of u-weight `w = p^k g(n)` and
/// `b_k^p = (-1)^{n-1} v_n^{p^k} b_k`, one gets `c_k^p = F c_k` with
/// `F = a^{p-1} (-1)^{n-1} v_n^{p^k} u^{-(p-1) w}`. Returns whether `F = 1`.
fn idempotence_factor_is_one(field: &Fq, a: &FqElem, p: u64, n: usize, k: u32) -> Result<bool, ProfiniteError> {
    let w = p.pow(k) as i64 * g_of(p, n);
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let vn_power = GradedKElem::v_n(field).pow(p.pow(k) as i64)?;
    let factor = GradedKElem::scalar(a.pow(p - 1) * field.from_int(sign))
        .mul(&vn_power)
        .mul(&GradedKElem::u_pow(field, -(p as i64 - 1) * w));
    Ok(factor == GradedKElem::one(field))
}

/// Verifies, for `k <= k_max`, that the two stated expressions of `c_k`
/// agree and that `c_k^p = c_k` follows from the relation for `b_k`.
pub fn c_normalization_check(p: u64, n: usize, k_max: u32) -> Result<CNormReport, ProfiniteError> {
    let field = Fq::new(p, n)?;
    let xi = field.xi();
    let xi_inv = xi.try_inv().expect("xi is a unit");
    let g = g_of(p, n);
    let weight_vn = p.pow(n as u32) as i64 - 1;
    let mut entries = Vec::new();
    for k in 0..=k_max {
        let pk = p.pow(k);
        let sign_k = if (k as usize * (n - 1)).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let long_form = field.from_int(sign_k) * xi_inv.pow(pk);
        let w_b = pk as i64 * g;
        entries.push(CNormEntry {
            k,
            expressions_agree: xi.pow(pk - 1) == field.from_int(sign_k) && long_form == xi_inv,
            idempotent_short_form: idempotence_factor_is_one(&field, &xi_inv, p, n, k)?,
            idempotent_long_form: idempotence_factor_is_one(&field, &long_form, p, n, k)?,
            relation_homogeneous: p as i64 * w_b == pk as i64 * weight_vn + w_b,
        });
    }
    let holds = entries
        .iter()
        .all(|e| e.expressions_agree && e.idempotent_short_form && e.idempotent_long_form && e.relation_homogeneous);
    Ok(CNormReport { p, n, entries, holds })
}
