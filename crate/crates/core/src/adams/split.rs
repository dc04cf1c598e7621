use serde::Serialize;

use super::{psi_fn, units_matrix, AdamsError};
use crate::arith::{generator_g, zeta, Fq, FqElem, PadicInt};
use crate::linalg::Matrix;
use crate::profinite::{LevelFn, MonomialForm};
use crate::ring::Ring;

/// Matrix of `psi^zeta` on `C(Z/p, F_{p^n})` in the basis `1, c_0, ...,
/// c_0^{p-1}`, computed by translating function tables and re-expanding.
pub fn psi_zeta_matrix(p: u64, n: usize) -> Result<Matrix<FqElem>, AdamsError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let z = *zeta(p, 1)?.as_int();
    let mut columns = Vec::with_capacity(p as usize);
    for j in 0..p {
        let table = MonomialForm::monomial(zero.one_like(), p, 1, &[j])?.to_fn()?;
        let moved = psi_fn(&z, &table)?;
        columns.push(MonomialForm::from_fn(&moved)?.coeffs().to_vec());
    }
    Ok(Matrix::from_columns(&zero, p as usize, &columns))
}

fn zeta_in(field: &Fq, p: u64) -> Result<FqElem, AdamsError> {
    Ok(field.from_int(zeta(p, 1)?.residue() as i64))
}

/// The idempotent `pi = (p-1)^{-1} sum_k zeta^{-k} (psi^zeta)^k` with the
/// identities it satisfies.
#[derive(Clone, Debug)]
pub struct SplittingIdempotent {
    pub p: u64,
    pub n: usize,
    pub matrix: Matrix<FqElem>,
    pub psi_zeta: Matrix<FqElem>,
    pub idempotent: bool,
    pub rank: usize,
    pub trace: FqElem,
    /// `pi o psi^zeta = zeta pi`.
    pub intertwines: bool,
    /// `pi(c_0) = c_0` and `pi(c_0^j) = 0` for `j != 1`.
    pub image_is_c0: bool,
}

impl SplittingIdempotent {
    pub fn holds(&self) -> bool {
        self.idempotent && self.rank == 1 && self.trace.is_one() && self.intertwines && self.image_is_c0
    }
}

pub fn idempotent_pi(p: u64, n: usize) -> Result<SplittingIdempotent, AdamsError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = p as usize;
    let psi = psi_zeta_matrix(p, n)?;
    let z = zeta_in(&field, p)?;
    let z_inv = z.try_inv().expect("zeta is a unit");

    let mut sum = Matrix::zeros(&zero, size, size);
    let mut power = Matrix::identity(&zero, size);
    for k in 0..p - 1 {
        sum = sum.add(&power.scale(&z_inv.pow(k)));
        power = power.mul(&psi);
    }
    let scale = field.from_int(p as i64 - 1).try_inv().expect("p - 1 is prime to p");
    let pi = sum.scale(&scale);

    let image_is_c0 = (0..size).all(|j| {
        (0..size).all(|i| {
            let expected = if i == 1 && j == 1 { field.one() } else { field.zero() };
            *pi.get(i, j) == expected
        })
    });
    Ok(SplittingIdempotent {
        p,
        n,
        idempotent: pi.mul(&pi) == pi,
        rank: pi.rank(),
        trace: pi.trace(),
        intertwines: pi.mul(&psi) == pi.scale(&z),
        image_is_c0,
        psi_zeta: psi,
        matrix: pi,
    })
}

/// Eigenspaces of `psi^zeta` on the level-one function ring.
#[derive(Clone, Debug)]
pub struct EigenSplit {
    pub p: u64,
    pub n: usize,
    /// `zeta^k` for `k = 0, ..., p-2`.
    pub eigenvalues: Vec<FqElem>,
    pub multiplicities: Vec<usize>,
    /// Monomial exponents `j` of `c_0^j` spanning each eigenspace.
    pub eigenvectors: Vec<Vec<u64>>,
    /// `psi^zeta(c_0^j) = zeta^j c_0^j` for every `j`.
    pub diagonal_on_monomials: bool,
    pub total: usize,
}

impl EigenSplit {
    pub fn holds(&self) -> bool {
        let mut expected = vec![1; self.eigenvalues.len()];
        expected[0] = 2;
        self.diagonal_on_monomials && self.total == self.p as usize && self.multiplicities == expected
    }
}

pub fn eigen_split(p: u64, n: usize) -> Result<EigenSplit, AdamsError> {
    let field = Fq::new(p, n)?;
    let zero = field.zero();
    let size = p as usize;
    let psi = psi_zeta_matrix(p, n)?;
    let z = zeta_in(&field, p)?;
    let identity = Matrix::identity(&zero, size);

    let eigenvalues: Vec<FqElem> = (0..p - 1).map(|k| z.pow(k)).collect();
    let mut multiplicities = Vec::new();
    let mut eigenvectors = Vec::new();
    for lambda in &eigenvalues {
        let shifted = psi.sub(&identity.scale(lambda));
        let kernel = shifted.nullspace();
        multiplicities.push(kernel.len());
        let support: Vec<u64> = (0..p)
            .filter(|&j| kernel.iter().any(|v| !v[j as usize].is_zero()))
            .collect();
        eigenvectors.push(support);
    }
    let diagonal_on_monomials = (0..size).all(|j| {
        (0..size).all(|i| {
            let expected = if i == j { z.pow(j as u64) } else { field.zero() };
            *psi.get(i, j) == expected
        })
    });
    Ok(EigenSplit {
        p,
        n,
        total: multiplicities.iter().sum(),
        eigenvalues,
        multiplicities,
        eigenvectors,
        diagonal_on_monomials,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MooreReport {
    pub p: u64,
    pub g_residue: u64,
    pub zeta_residue: u64,
    /// Translation by `g` and by `zeta` agree on `C((Z/p)^x, F_{p^n})`.
    pub matrices_equal: bool,
}

pub fn moore_reduction_check(p: u64, n: usize) -> Result<MooreReport, AdamsError> {
    let field = Fq::new(p, n)?;
    let g = generator_g(p, 2)?;
    let z = zeta(p, 2)?;
    let translate = |a: PadicInt| units_matrix(&field, p, 1, move |f: &LevelFn<FqElem>| psi_fn(&a, f));
    let by_g = translate(*g.as_int())?;
    let by_zeta = translate(*z.as_int())?;
    Ok(MooreReport {
        p,
        g_residue: g.residue(),
        zeta_residue: z.residue(),
        matrices_equal: by_g == by_zeta,
    })
}
