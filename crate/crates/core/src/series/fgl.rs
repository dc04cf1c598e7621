use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BiSeries, MvSeries, SeriesError, TruncSeries};
use crate::arith::PadicInt;
use crate::ring::Ring;

pub const DEFAULT_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    Commutativity,
    Unitality,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Unitality => "unitality",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

/// A bivariate series checked to satisfy the formal group law axioms modulo
/// total degree `> cap`.
#[derive(Clone, Debug)]
pub struct FormalGroupLaw<R: Ring> {
    law: BiSeries<R>,
}

/// Checks commutativity, unitality and associativity, in that order,
/// reporting the first failure with the exponent of its lowest offending
/// term.
pub fn fgl_validate<R: Ring>(law: BiSeries<R>) -> Result<FormalGroupLaw<R>, SeriesError> {
    let fail = |axiom, e: &[u32]| SeriesError::AxiomFailure {
        axiom,
        degree: e.to_vec(),
    };

    let swapped = MvSeries::from_terms(
        law.proto(),
        law.terms().map(|(e, c)| ([e[1], e[0]], c.clone())),
        law.cap(),
    );
    if let Some((e, _)) = law.sub(&swapped).leading_term() {
        return Err(fail(Axiom::Commutativity, &e));
    }

    let proto = law.proto().clone();
    for (e, c) in law.terms() {
        let is_unit_term = *e == [1, 0] || *e == [0, 1];
        let on_axis = e[0] == 0 || e[1] == 0;
        if on_axis && !(is_unit_term && c.is_one()) {
            return Err(fail(Axiom::Unitality, e));
        }
    }
    for e in [[1u32, 0], [0, 1]] {
        if law.cap() >= 1 && !law.coeff(&e).is_one() {
            return Err(fail(Axiom::Unitality, &e));
        }
    }

    let cap = law.cap();
    let x = MvSeries::<R, 3>::var(&proto, 0, cap);
    let y = MvSeries::<R, 3>::var(&proto, 1, cap);
    let z = MvSeries::<R, 3>::var(&proto, 2, cap);
    let xy = law.substitute(&[x.clone(), y.clone()])?;
    let yz = law.substitute(&[y, z.clone()])?;
    let left = law.substitute(&[xy, z])?;
    let right = law.substitute(&[x, yz])?;
    if let Some((e, _)) = left.sub(&right).leading_term() {
        return Err(fail(Axiom::Associativity, &e));
    }

    Ok(FormalGroupLaw { law })
}

/// `F(x, y) = x + y + t x y`; `t` must be a unit.
pub fn mult_fgl<R: Ring>(t: R, cap: usize) -> Result<FormalGroupLaw<R>, SeriesError> {
    if t.try_inv().is_none() {
        return Err(SeriesError::NonUnitParameter);
    }
    fgl_validate(mult_law(&t, cap))
}

/// `F(x, y) = x + y`.
pub fn additive_fgl<R: Ring>(proto: &R, cap: usize) -> FormalGroupLaw<R> {
    let one = proto.one_like();
    let law = MvSeries::from_terms(proto, [([1, 0], one.clone()), ([0, 1], one)], cap as u32);
    fgl_validate(law).expect("the additive law is a formal group law")
}

/// Smallest `e` with `p^e >= d`.
pub(crate) fn ceil_log(p: u64, d: usize) -> u32 {
    let mut e = 0;
    let mut pe: u64 = 1;
    while pe < d as u64 {
        pe = pe.saturating_mul(p);
        e += 1;
    }
    e
}

impl<R: Ring> FormalGroupLaw<R> {
    pub fn law(&self) -> &BiSeries<R> {
        &self.law
    }

    pub fn cap(&self) -> usize {
        self.law.cap() as usize
    }

    pub fn proto(&self) -> &R {
        self.law.proto()
    }

    pub fn var(&self) -> TruncSeries<R> {
        TruncSeries::var(self.proto(), self.cap())
    }

    /// `a +_F b` for series without constant term.
    pub fn add(&self, a: &TruncSeries<R>, b: &TruncSeries<R>) -> Result<TruncSeries<R>, SeriesError> {
        self.law.eval_univariate(&[a, b])
    }

    /// The formal inverse `i(y)` with `F(y, i(y)) = 0`, by Newton iteration
    /// `i <- i - F(y, i) / F_2(y, i)`.
    pub fn inverse_series(&self) -> Result<TruncSeries<R>, SeriesError> {
        let y = self.var();
        let d2 = self.law.partial(1);
        let mut inv = -&y;
        for _ in 0..=self.cap() {
            let residual = self.add(&y, &inv)?;
            if residual.is_zero() {
                return Ok(inv);
            }
            let slope = d2.eval_univariate(&[&y, &inv])?.invert_unit()?;
            inv = &inv - &(&residual * &slope);
        }
        Err(SeriesError::NonConvergent {
            iterations: self.cap() + 1,
        })
    }

    /// `[m](y)`: `[0] = 0`, `[m] = F(y, [m-1])`, and `[-m] = i([m])`.
    pub fn n_series(&self, m: i64) -> Result<TruncSeries<R>, SeriesError> {
        let y = self.var();
        let mut acc = TruncSeries::zero(self.proto(), self.cap());
        for _ in 0..m.unsigned_abs() {
            acc = self.add(&y, &acc)?;
        }
        if m < 0 {
            acc = self.inverse_series()?.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn p_series(&self) -> Result<TruncSeries<R>, SeriesError> {
        self.n_series(self.proto().prime() as i64)
    }

    /// Iteration budget for the p-adic digit sum.
    pub fn a_series_budget(&self) -> usize {
        let p = self.proto().prime();
        (self.proto().char_exponent() + ceil_log(p, self.cap()) + 2) as usize
    }

    /// `[a](y) = [a_0](y) +_F [a_1]([p](y)) +_F [a_2]([p^2](y)) +_F ...`,
    /// summed until `[p^k](y)` vanishes at the working precision. Digits of
    /// `a` beyond its precision are read as zero.
    pub fn a_series(&self, a: &PadicInt) -> Result<TruncSeries<R>, SeriesError> {
        self.a_series_with_budget(a, self.a_series_budget())
    }

    pub fn a_series_with_budget(&self, a: &PadicInt, budget: usize) -> Result<TruncSeries<R>, SeriesError> {
        let p = self.proto().prime();
        if a.p() != p {
            return Err(SeriesError::PrimeMismatch { left: p, right: a.p() });
        }
        let digit_series: Vec<TruncSeries<R>> = (0..p as i64).map(|d| self.n_series(d)).collect::<Result<_, _>>()?;
        let p_series = self.add(&digit_series[1], &digit_series[p as usize - 1])?;
        let mut iterate = self.var();
        let mut acc = TruncSeries::zero(self.proto(), self.cap());
        for k in 0..=budget {
            if iterate.is_zero() {
                return Ok(acc);
            }
            let d = a.digit(k as u32) as usize;
            if d != 0 {
                let term = digit_series[d].compose(&iterate)?;
                acc = self.add(&acc, &term)?;
            }
            iterate = p_series.compose(&iterate)?;
        }
        Err(SeriesError::NonConvergent { iterations: budget })
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> Result<FormalGroupLaw<S>, SeriesError> {
        fgl_validate(self.law.map(proto, f))
    }
}

/// Result of comparing `phi(F_t(x, y))` with `F_1(phi x, phi y)` for
/// `phi(x) = t x`.
#[derive(Clone, Debug)]
pub struct ScaleIsoReport<R: Ring> {
    pub holds: bool,
    /// `phi` is invertible, so the homomorphism is an isomorphism.
    pub is_isomorphism: bool,
    pub residual: BiSeries<R>,
}

fn mult_law<R: Ring>(t: &R, cap: usize) -> BiSeries<R> {
    let one = t.one_like();
    MvSeries::from_terms(
        t,
        [([1, 0], one.clone()), ([0, 1], one), ([1, 1], t.clone())],
        cap as u32,
    )
}

/// Checks that `x -> t x` is a homomorphism from `x + y + t x y` to
/// `x + y + x y`, and an isomorphism when `t` is a unit.
pub fn scale_iso<R: Ring>(t: &R, cap: usize) -> Result<ScaleIsoReport<R>, SeriesError> {
    let twisted = mult_law(t, cap);
    let standard = mult_law(&t.one_like(), cap);
    let x = MvSeries::<R, 2>::var(t, 0, cap as u32);
    let y = MvSeries::<R, 2>::var(t, 1, cap as u32);
    let lhs = twisted.scale(t);
    let rhs = standard.substitute(&[x.scale(t), y.scale(t)])?;
    let residual = lhs.sub(&rhs);
    Ok(ScaleIsoReport {
        holds: residual.is_zero(),
        is_isomorphism: t.try_inv().is_some(),
        residual,
    })
}
