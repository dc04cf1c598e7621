//! Normalization of the periodic Honda p-series to the multiplicative one.
//!
//! The p-series of the coordinate `x` (u-weight `-g(n)`) is the monomial
//! `(-1)^{n-1} v_n^e x^p`. Changing coordinates to `y = xi x u^{g(n)}` gives
//! `[p](y) = xi u^{g(n)} [p](xi^{-1} u^{-g(n)} y)`, which should be exactly
//! `y^p` in weight zero.

use serde::{Deserialize, Serialize};

use super::{SeriesError, TruncSeries};
use crate::arith::{g_of, ArithError, Fq, FqElem, GradedKElem};
use crate::ring::Ring;

/// A truncated series whose coefficients are homogeneous elements of `K_*`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSeries {
    coeffs: Vec<GradedKElem>,
}

impl GradedSeries {
    pub fn zero(field: &Fq, cap: usize) -> Self {
        Self {
            coeffs: vec![GradedKElem::new(field.zero(), 0); cap + 1],
        }
    }

    pub fn monomial(c: GradedKElem, k: usize, cap: usize) -> Self {
        let mut s = Self::zero(c.coeff().field(), cap);
        if k <= cap {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn coeffs(&self) -> &[GradedKElem] {
        &self.coeffs
    }

    /// Linear substitution `x -> c x`: the degree-`i` coefficient is
    /// multiplied by `c^i`.
    pub fn substitute_scaled(&self, c: &GradedKElem) -> Result<Self, ArithError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| Ok(a.mul(&c.pow(i as i64)?)))
            .collect::<Result<_, ArithError>>()?;
        Ok(Self { coeffs })
    }

    pub fn scale(&self, c: &GradedKElem) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Nonzero terms as `(degree, coefficient, u-weight)`.
    pub fn nonzero_terms(&self) -> Vec<GradedTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| GradedTerm {
                degree: i,
                coeff: c.coeff().coeffs(),
                u_weight: c.u_weight(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTerm {
    pub degree: usize,
    pub coeff: Vec<u64>,
    pub u_weight: i64,
}

#[derive(Clone, Debug)]
pub struct HondaReport {
    pub p: u64,
    pub n: usize,
    pub xi: FqElem,
    pub g_n: i64,
    /// Exponent of `v_n` in the x-coordinate p-series.
    pub vn_exponent: i64,
    /// `(p-1) g(n) = p^n - 1`.
    pub weight_identity: bool,
    /// `xi^{p-1} = (-1)^{n-1}`.
    pub xi_identity: bool,
    /// The y-coordinate p-series, all of whose coefficients have weight 0.
    pub normalized: TruncSeries<FqElem>,
}

/// Exponent of `v_n` making `c x^p` homogeneous of the weight of `x`:
/// `e (p^n - 1) - p g(n) = -g(n)`.
pub fn homogeneous_vn_exponent(p: u64, n: usize) -> i64 {
    let g = g_of(p, n);
    let weight_vn = p.pow(n as u32) as i64 - 1;
    let needed = (p as i64 - 1) * g;
    debug_assert_eq!(needed % weight_vn, 0);
    needed / weight_vn
}

/// Normalizes the p-series with the `v_n` exponent forced by homogeneity.
pub fn honda_normalize(p: u64, n: usize, cap: usize) -> Result<HondaReport, SeriesError> {
    honda_normalize_with_exponent(p, n, cap, homogeneous_vn_exponent(p, n))
}

/// Normalizes `(-1)^{n-1} v_n^{vn_exponent} x^p`. Any exponent other than the
/// homogeneous one leaves a residual u-weight and fails.
pub fn honda_normalize_with_exponent(
    p: u64,
    n: usize,
    cap: usize,
    vn_exponent: i64,
) -> Result<HondaReport, SeriesError> {
    let field = Fq::new(p, n)?;
    let xi = field.xi();
    let g = g_of(p, n);
    let sign = if n % 2 == 1 { 1 } else { -1 };

    let vn = GradedKElem::v_n(&field).pow(vn_exponent)?;
    let lead = GradedKElem::scalar(field.from_int(sign)).mul(&vn);
    let x_series = GradedSeries::monomial(lead, p as usize, cap);

    let xi_graded = GradedKElem::scalar(xi.clone());
    let to_y = xi_graded.mul(&GradedKElem::u_pow(&field, g));
    let to_x = to_y.inv()?;
    let y_series = x_series.substitute_scaled(&to_x)?.scale(&to_y);

    let expected = GradedSeries::monomial(GradedKElem::one(&field), p as usize, cap);
    let weights_vanish = y_series.coeffs.iter().all(|c| c.is_zero() || c.u_weight() == 0);
    if !weights_vanish || y_series.nonzero_terms() != expected.nonzero_terms() {
        return Err(SeriesError::NormalizationFailure {
            residual: y_series.nonzero_terms(),
        });
    }

    let normalized = TruncSeries::from_coeffs(
        &field.zero(),
        y_series.coeffs.iter().map(|c| c.coeff().clone()).collect(),
        cap,
    );
    Ok(HondaReport {
        p,
        n,
        xi_identity: xi.pow(p - 1) == field.from_int(sign),
        weight_identity: (p as i64 - 1) * g == p.pow(n as u32) as i64 - 1,
        xi,
        g_n: g,
        vn_exponent,
        normalized,
    })
}
