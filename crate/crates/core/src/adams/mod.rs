//! Adams operations in the series model (`y -> [a](y)`) and the function
//! model (translation by `a`), kernels of `psi^g - gamma`, the splitting
//! idempotent and the eigenspace decomposition of `psi^zeta` at level one.

mod split;

pub use split::{
    eigen_split, idempotent_pi, moore_reduction_check, psi_zeta_matrix, EigenSplit, MooreReport, SplittingIdempotent,
};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{generator_g, ArithError, Fq, FqElem, PadicInt, PadicUnit};
use crate::linalg::{proportional, Matrix};
use crate::profinite::{phi_iso, Domain, GroupRingElem, LevelFn, ProfiniteError};
use crate::ring::Ring;
use crate::series::{mult_fgl, FormalGroupLaw, SeriesError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdamsError {
    #[error("translation by the non-unit {0} does not preserve the units")]
    NonUnitTranslation(u64),
    #[error("operation parameter known to {found} digits, level {needed} needs more")]
    InsufficientPrecision { needed: u32, found: u32 },
    #[error("orbit of the generator closes up with weight {weight:?} instead of 1")]
    InconsistentOrbit { weight: Vec<u64> },
    #[error("{0} does not generate the unit group at this level")]
    NotGenerator(u64),
    #[error("operation over p = {left} applied to an object over p = {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Profinite(#[from] ProfiniteError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The model an Adams operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Model {
    Series,
    Function,
}

/// `psi^a` as a tagged parameter; composition multiplies parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdamsOp {
    pub a: PadicInt,
    pub model: Model,
}

impl AdamsOp {
    pub fn new(a: PadicInt, model: Model) -> Self {
        Self { a, model }
    }

    /// `psi^a o psi^b = psi^{ab}`.
    pub fn compose(&self, other: &Self) -> Result<Self, AdamsError> {
        Ok(Self {
            a: self.a.checked_mul(&other.a)?,
            model: self.model,
        })
    }

    pub fn apply_series<R: Ring>(
        &self,
        law: &FormalGroupLaw<R>,
        f: &TruncSeries<R>,
    ) -> Result<TruncSeries<R>, AdamsError> {
        psi_series(law, &self.a, f)
    }

    pub fn apply_fn<R: Ring>(&self, f: &LevelFn<R>) -> Result<LevelFn<R>, AdamsError> {
        psi_fn(&self.a, f)
    }
}

/// `psi^a f(y) = f([a](y))`.
pub fn psi_series<R: Ring>(
    law: &FormalGroupLaw<R>,
    a: &PadicInt,
    f: &TruncSeries<R>,
) -> Result<TruncSeries<R>, AdamsError> {
    let a_series = law.a_series(a)?;
    Ok(f.compose(&a_series)?)
}

/// `(psi^a f)(x) = f(a x)` at the level of `f`.
pub fn psi_fn<R: Ring>(a: &PadicInt, f: &LevelFn<R>) -> Result<LevelFn<R>, AdamsError> {
    if a.p() != f.p() {
        return Err(AdamsError::PrimeMismatch {
            left: a.p(),
            right: f.p(),
        });
    }
    if a.precision() < f.level() {
        return Err(AdamsError::InsufficientPrecision {
            needed: f.level(),
            found: a.precision(),
        });
    }
    if f.domain() == Domain::Units && !a.is_unit() {
        return Err(AdamsError::NonUnitTranslation(a.value()));
    }
    let modulus = f.p().pow(f.level()) as u128;
    let a = a.value() as u128 % modulus;
    Ok(LevelFn::from_fn(f.p(), f.level(), f.domain(), |x| {
        f.eval(((a * x as u128) % modulus) as u64)
            .expect("translation by a unit preserves the domain")
            .clone()
    })?)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwineReport {
    pub p: u64,
    pub level: u32,
    pub a: u64,
    pub checked: usize,
    /// Exponents `m` where `phi(a . h^m) != psi^a(phi(h^m))`.
    pub failures: Vec<u64>,
    pub holds: bool,
}

/// Compares `phi(a . h^m)` with `psi^a(phi(h^m))` for every `m < p^N`, over
/// `F_{p^n}` with the multiplicative law.
pub fn intertwine_check(a: &PadicUnit, p: u64, n: usize, level: u32) -> Result<IntertwineReport, AdamsError> {
    if a.p() != p {
        return Err(AdamsError::PrimeMismatch { left: a.p(), right: p });
    }
    if a.precision() < level {
        return Err(AdamsError::InsufficientPrecision {
            needed: level,
            found: a.precision(),
        });
    }
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = p.pow(level);
    let law = mult_fgl(zero.one_like(), size as usize - 1)?;
    let a_series = law.a_series(a.as_int())?;
    let residue = a.value() % size;
    let mut failures = Vec::new();
    for m in 0..size {
        let hm = GroupRingElem::basis(&zero, p, level, m)?;
        let lhs = phi_iso(&hm.act(residue))?;
        let rhs = phi_iso(&hm)?.compose(&a_series)?;
        if lhs != rhs {
            failures.push(m);
        }
    }
    Ok(IntertwineReport {
        p,
        level,
        a: residue,
        checked: size as usize,
        holds: failures.is_empty(),
        failures,
    })
}

/// A generator of the kernel of `psi^g - gamma` on functions on
/// `(Z/p^N)^x` with values in `F_{p^n}`, with its rank certificate.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub p: u64,
    pub n: usize,
    pub level: u32,
    pub gamma: PadicUnit,
    /// `gamma mod p`, the scalar by which `gamma` acts on values.
    pub gamma_residue: u64,
    pub generator: LevelFn<FqElem>,
    /// Dimension of the kernel found by elimination.
    pub nullity: usize,
    /// The kernel is one-dimensional and spanned by `generator`.
    pub certified: bool,
}

/// Matrix of a linear endomorphism of functions on the units, in the basis
/// of point indicators.
fn units_matrix(
    field: &Fq,
    p: u64,
    level: u32,
    op: impl Fn(&LevelFn<FqElem>) -> Result<LevelFn<FqElem>, AdamsError>,
) -> Result<Matrix<FqElem>, AdamsError> {
    let zero = field.zero();
    let points = crate::profinite::domain_points(p, level, Domain::Units);
    let mut columns = Vec::with_capacity(points.len());
    for &u in &points {
        let e = LevelFn::indicator(&zero, p, level, Domain::Units, |x| x == u)?;
        columns.push(op(&e)?.values().to_vec());
    }
    Ok(Matrix::from_columns(&zero, points.len(), &columns))
}

/// The function with `f(g^j) = gamma^j`, obtained by walking the orbit of
/// the generator `g`, together with a nullspace certificate.
pub fn kernel_psi_minus_gamma(gamma: &PadicUnit, p: u64, n: usize, level: u32) -> Result<KernelBasis, AdamsError> {
    if gamma.p() != p {
        return Err(AdamsError::PrimeMismatch {
            left: gamma.p(),
            right: p,
        });
    }
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let modulus = p.pow(level);
    let g = generator_g(p, level)?;
    let g_res = g.value() % modulus;
    let gamma_residue = gamma.residue();
    let c = field.from_int(gamma_residue as i64);

    let points = crate::profinite::domain_points(p, level, Domain::Units);
    let mut values: Vec<Option<FqElem>> = vec![None; points.len()];
    let index = |x: u64| (x - x / p - 1) as usize;
    let mut x = 1u64;
    let mut weight = field.one();
    for _ in 0..points.len() {
        if values[index(x)].is_some() {
            return Err(AdamsError::NotGenerator(g_res));
        }
        values[index(x)] = Some(weight.clone());
        x = (x as u128 * g_res as u128 % modulus as u128) as u64;
        weight = weight * c.clone();
    }
    if x != 1 {
        return Err(AdamsError::NotGenerator(g_res));
    }
    if !weight.is_one() {
        return Err(AdamsError::InconsistentOrbit {
            weight: weight.coeffs(),
        });
    }
    let values = values.into_iter().map(|v| v.expect("orbit covers the units")).collect();
    let generator = LevelFn::from_values(p, level, Domain::Units, values)?;

    let g_int = *g.as_int();
    let psi = units_matrix(&field, p, level, |f| psi_fn(&g_int, f))?;
    let operator = psi.sub(&Matrix::identity(&zero, points.len()).scale(&c));
    let kernel = operator.nullspace();
    let certified = kernel.len() == 1 && proportional(&kernel[0], generator.values()).is_some();
    Ok(KernelBasis {
        p,
        n,
        level,
        gamma: *gamma,
        gamma_residue,
        generator,
        nullity: kernel.len(),
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberProductReport {
    pub p: u64,
    pub level: u32,
    pub gamma: u64,
    pub sigma: u64,
    /// `generator(gamma) generator(sigma) = scalar generator(gamma sigma)`.
    pub scalar: Option<Vec<u64>>,
    pub holds: bool,
}

/// Checks that the product of kernel generators for `gamma` and `sigma`
/// generates the kernel for `gamma sigma`.
pub fn fiber_product_check(
    gamma: &PadicUnit,
    sigma: &PadicUnit,
    p: u64,
    n: usize,
    level: u32,
) -> Result<FiberProductReport, AdamsError> {
    let a = kernel_psi_minus_gamma(gamma, p, n, level)?;
    let b = kernel_psi_minus_gamma(sigma, p, n, level)?;
    let product_gamma = *gamma * *sigma;
    let c = kernel_psi_minus_gamma(&product_gamma, p, n, level)?;
    let product = a.generator.mul(&b.generator)?;
    let scalar = proportional(product.values(), c.generator.values());
    Ok(FiberProductReport {
        p,
        level,
        gamma: gamma.value(),
        sigma: sigma.value(),
        holds: scalar.is_some(),
        scalar: scalar.map(|s| s.coeffs()),
    })
}
