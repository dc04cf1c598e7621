use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::{teichmuller, Fq, FqElem, PadicInt, Witt};
use crate::ring::Ring;

fn fp(p: u64) -> FqElem {
    Fq::new(p, 1).unwrap().zero()
}

fn series(proto: &FqElem, c: &[i64], cap: usize) -> TruncSeries<FqElem> {
    TruncSeries::from_ints(proto, c, cap)
}

/// `C(m, i) mod p` for `i <= cap` from Pascal's triangle.
fn binomial_row(m: u64, cap: usize, p: u64) -> Vec<i64> {
    let mut row = vec![0i64; cap + 1];
    row[0] = 1;
    for _ in 0..m {
        for i in (1..=cap).rev() {
            row[i] = (row[i] + row[i - 1]) % p as i64;
        }
    }
    row
}

#[test]
fn reverse_identity() {
    let z = fp(5);
    let y = TruncSeries::var(&z, 12);
    assert_eq!(y.reverse().unwrap(), y);
}

#[test]
fn invert_unit_geometric() {
    let z = fp(5);
    let f = series(&z, &[1, 1], 8);
    let expected = series(&z, &[1, 4, 1, 4, 1, 4, 1, 4, 1], 8);
    assert_eq!(series_ops(&f, &f, SeriesOp::InvertUnit).unwrap(), expected);
    let nonunit = series(&z, &[0, 1], 8);
    assert_eq!(nonunit.invert_unit(), Err(SeriesError::NonUnitLeadingTerm));
}

#[test]
fn compose_example() {
    let z = fp(7);
    let f = series(&z, &[0, 0, 1], 6);
    let g = series(&z, &[0, 1, 1], 6);
    assert_eq!(
        series_ops(&f, &g, SeriesOp::Compose).unwrap(),
        series(&z, &[0, 0, 1, 2, 1], 6)
    );
    let bad = series(&z, &[1, 1], 6);
    assert_eq!(f.compose(&bad), Err(SeriesError::NonCompositionalArgument));
}

#[test]
fn reverse_needs_unit_slope() {
    let z = PadicInt::new(3, 4, 0).unwrap();
    let f = TruncSeries::from_ints(&z, &[0, 3, 1], 5);
    assert_eq!(f.reverse(), Err(SeriesError::NonUnitLeadingTerm));
}

#[test]
fn reverse_round_trips_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..50 {
        let (p, prec) = [(3u64, 4u32), (5, 3), (7, 2)][trial % 3];
        let z = PadicInt::new(p, prec, 0).unwrap();
        let modulus = z.modulus() as i64;
        let mut c: Vec<i64> = (0..=20).map(|_| rng.gen_range(0..modulus)).collect();
        c[0] = 0;
        c[1] = rng.gen_range(1..p as i64);
        let f = TruncSeries::from_ints(&z, &c, 20);
        let g = f.reverse().unwrap();
        let y = TruncSeries::var(&z, 20);
        assert_eq!(f.compose(&g).unwrap(), y);
        assert_eq!(g.compose(&f).unwrap(), y);
    }
}

#[test]
fn validate_examples() {
    let z = fp(5);
    let one = z.one_like();
    let additive = MvSeries::from_terms(&z, [([1, 0], one.clone()), ([0, 1], one.clone())], 16);
    assert!(fgl_validate(additive).is_ok());

    let mult = MvSeries::from_terms(
        &z,
        [([1, 0], one.clone()), ([0, 1], one.clone()), ([1, 1], one.clone())],
        16,
    );
    assert!(fgl_validate(mult).is_ok());

    let skew = MvSeries::from_terms(
        &z,
        [([1, 0], one.clone()), ([0, 1], one.clone()), ([2, 0], one.clone())],
        16,
    );
    match fgl_validate(skew) {
        Err(SeriesError::AxiomFailure { axiom, degree }) => {
            assert_eq!(axiom, Axiom::Commutativity);
            assert_eq!(degree.iter().sum::<u32>(), 2);
        }
        other => panic!("expected commutativity failure, got {other:?}"),
    }

    let no_unit = MvSeries::from_terms(
        &z,
        [([1, 0], one.clone()), ([0, 1], one.clone()), ([0, 0], one.clone())],
        16,
    );
    assert!(matches!(
        fgl_validate(no_unit),
        Err(SeriesError::AxiomFailure {
            axiom: Axiom::Unitality,
            ..
        })
    ));

    // x + y + x^2 y^2 is commutative and unital but not associative
    let nonassoc = MvSeries::from_terms(&z, [([1, 0], one.clone()), ([0, 1], one.clone()), ([2, 2], one)], 16);
    match fgl_validate(nonassoc) {
        Err(SeriesError::AxiomFailure { axiom, degree }) => {
            assert_eq!(axiom, Axiom::Associativity);
            assert_eq!(degree.len(), 3);
        }
        other => panic!("expected associativity failure, got {other:?}"),
    }
}

#[test]
fn n_series_examples() {
    let f5 = mult_fgl(fp(5).one_like(), 16).unwrap();
    assert_eq!(f5.n_series(1).unwrap(), f5.var());
    assert_eq!(f5.n_series(2).unwrap(), series(&fp(5), &[0, 2, 1], 16));
    let f3 = mult_fgl(fp(3).one_like(), 16).unwrap();
    assert_eq!(f3.n_series(3).unwrap(), series(&fp(3), &[0, 0, 0, 1], 16));
    assert_eq!(f3.p_series().unwrap(), f3.n_series(3).unwrap());
}

#[test]
fn n_series_matches_binomial_oracle() {
    for p in [3u64, 5, 7] {
        let cap = 24;
        let law = mult_fgl(fp(p).one_like(), cap).unwrap();
        let y = law.var();
        let mut acc = TruncSeries::zero(&fp(p), cap);
        for m in 0..=p.pow(3) {
            let mut expected = binomial_row(m, cap, p);
            expected[0] = 0;
            assert_eq!(acc, series(&fp(p), &expected, cap), "p={p} m={m}");
            acc = law.add(&y, &acc).unwrap();
        }
        // spot-check the public entry point against the same oracle
        for m in [0u64, 1, p, p * p + 1, p.pow(3)] {
            let mut expected = binomial_row(m, cap, p);
            expected[0] = 0;
            assert_eq!(law.n_series(m as i64).unwrap(), series(&fp(p), &expected, cap));
        }
    }
}

#[test]
fn a_series_examples() {
    let z = fp(5);
    let law = mult_fgl(z.one_like(), 12).unwrap();
    let one = PadicInt::new(5, 4, 1).unwrap();
    assert_eq!(law.a_series(&one).unwrap(), law.var());

    let minus_one = PadicInt::new(5, 4, -1).unwrap();
    assert_eq!(minus_one.digits(), vec![4, 4, 4, 4]);
    let inv = series(&z, &[1, 1], 12).invert_unit().unwrap();
    let expected = &inv - &TruncSeries::one(&z, 12);
    assert_eq!(law.a_series(&minus_one).unwrap(), expected);

    let omega = teichmuller(5, 8, 2).unwrap();
    let w = law.a_series(omega.as_int()).unwrap();
    let mut it = law.var();
    for k in 1..=4 {
        it = w.compose(&it).unwrap();
        assert_eq!(it == law.var(), k == 4);
    }
}

#[test]
fn a_series_over_coefficient_precision() {
    // [a] over Z/p^3 depends only on a mod p^{3 + ceil(log_p D)}
    let z = PadicInt::new(3, 3, 0).unwrap();
    let law = mult_fgl(z.one_like(), 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = PadicInt::new(3, 8, rng.gen_range(0..6561)).unwrap();
        let b = PadicInt::new(3, 8, rng.gen_range(0..6561)).unwrap();
        let sa = law.a_series(&a).unwrap();
        let sb = law.a_series(&b).unwrap();
        assert_eq!(law.a_series(&(a + b)).unwrap(), law.add(&sa, &sb).unwrap());
        assert_eq!(law.a_series(&(a * b)).unwrap(), sa.compose(&sb).unwrap());
    }
}

#[test]
fn a_series_reduction_commutes() {
    let z = PadicInt::new(5, 3, 0).unwrap();
    let law = mult_fgl(z.from_int_like(2), 20).unwrap();
    let f5 = fp(5);
    let reduced_law = law.map(&f5, |c| f5.from_padic_like(c)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let a = PadicInt::new(5, 8, rng.gen_range(0..390_625)).unwrap();
        let lifted = law.a_series(&a).unwrap();
        let reduced = lifted.map(&f5, |c| f5.from_padic_like(c));
        assert_eq!(reduced, reduced_law.a_series(&a).unwrap());
    }
}

#[test]
fn a_series_budget_exhaustion() {
    let law = mult_fgl(fp(3).one_like(), 64).unwrap();
    let a = PadicInt::new(3, 8, 5).unwrap();
    assert_eq!(
        law.a_series_with_budget(&a, 1),
        Err(SeriesError::NonConvergent { iterations: 1 })
    );
    assert!(law.a_series(&a).is_ok());
    let wrong_prime = PadicInt::new(5, 8, 5).unwrap();
    assert!(matches!(
        law.a_series(&wrong_prime),
        Err(SeriesError::PrimeMismatch { .. })
    ));
}

#[test]
fn mult_fgl_examples() {
    let z = fp(3);
    let law = mult_fgl(z.one_like(), 10).unwrap();
    assert_eq!(law.law().terms().count(), 3);
    assert!(law.law().terms().all(|(_, c)| c.is_one()));
    assert_eq!(mult_fgl(z.zero_like(), 10).unwrap_err(), SeriesError::NonUnitParameter);

    // i(y) = -y / (1 + t y)
    for t in 1..5 {
        let z5 = fp(5);
        let t = z5.from_int_like(t);
        let law = mult_fgl(t.clone(), 12).unwrap();
        let inv = law.inverse_series().unwrap();
        let y = law.var();
        let expected = &(-&y) * &(&TruncSeries::one(&z5, 12) + &y.scale(&t)).invert_unit().unwrap();
        assert_eq!(inv, expected);
        assert!(law.add(&y, &inv).unwrap().is_zero());
    }

    let z25 = PadicInt::new(5, 2, 0).unwrap();
    let law = mult_fgl(z25.from_int_like(2), 16).unwrap();
    let five = law.n_series(5).unwrap();
    // ((1 + 2y)^5 - 1) / 2 = 5y + 20y^2 + 40y^3 + 40y^4 + 16y^5
    let expected = TruncSeries::from_ints(&z25, &[0, 5, 20, 40, 40, 16], 16);
    assert_eq!(five, expected);
    assert!(five.coeffs()[..5]
        .iter()
        .all(|c| c.valuation() != crate::arith::Valuation::Finite(0)));
    assert_eq!(five.coeff(5).valuation(), crate::arith::Valuation::Finite(0));
}

#[test]
fn integer_laws_hold_for_conjugated_law() {
    // A dense law: conjugate x + y + xy by a random coordinate change.
    let z = PadicInt::new(3, 3, 0).unwrap();
    let cap = 8;
    let phi = TruncSeries::from_ints(&z, &[0, 1, 5, 2, 7, 1, 0, 3, 4], cap);
    let phi_inv = phi.reverse().unwrap();
    let x = MvSeries::<PadicInt, 2>::var(&z, 0, cap as u32);
    let y = MvSeries::<PadicInt, 2>::var(&z, 1, cap as u32);
    let to_bi = |s: &TruncSeries<PadicInt>| {
        MvSeries::<PadicInt, 1>::from_terms(
            &z,
            s.coeffs().iter().enumerate().map(|(i, c)| ([i as u32], *c)),
            cap as u32,
        )
    };
    let mult = mult_fgl(z.one_like(), cap).unwrap();
    let inner = mult
        .law()
        .substitute(&[
            to_bi(&phi).substitute(&[x]).unwrap(),
            to_bi(&phi).substitute(&[y]).unwrap(),
        ])
        .unwrap();
    let conj = to_bi(&phi_inv).substitute(&[inner]).unwrap();
    let law = fgl_validate(conj).unwrap();
    for a in -4i64..=6 {
        for b in -4i64..=6 {
            let sa = law.n_series(a).unwrap();
            let sb = law.n_series(b).unwrap();
            assert_eq!(law.n_series(a + b).unwrap(), law.add(&sa, &sb).unwrap(), "a={a} b={b}");
            assert_eq!(law.n_series(a * b).unwrap(), sa.compose(&sb).unwrap(), "a={a} b={b}");
        }
    }
}

#[test]
fn integer_laws_up_to_twenty() {
    let z = PadicInt::new(5, 2, 0).unwrap();
    let law = mult_fgl(z.from_int_like(3), 24).unwrap();
    let series: Vec<_> = (0..=20).map(|m| law.n_series(m).unwrap()).collect();
    for a in 0..=20usize {
        for b in 0..=20usize {
            if a + b <= 20 {
                assert_eq!(series[a + b], law.add(&series[a], &series[b]).unwrap());
            }
            if a * b <= 20 {
                assert_eq!(series[a * b], series[a].compose(&series[b]).unwrap());
            }
        }
    }
}

#[test]
fn padic_laws_over_prime_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [3u64, 5] {
        let law = mult_fgl(fp(p).one_like(), 32).unwrap();
        let modulus = p.pow(8) as i128;
        for _ in 0..5 {
            let a = PadicInt::new(p, 8, rng.gen_range(0..modulus)).unwrap();
            let b = PadicInt::new(p, 8, rng.gen_range(0..modulus)).unwrap();
            let sa = law.a_series(&a).unwrap();
            let sb = law.a_series(&b).unwrap();
            assert_eq!(law.a_series(&(a + b)).unwrap(), law.add(&sa, &sb).unwrap());
            assert_eq!(law.a_series(&(a * b)).unwrap(), sa.compose(&sb).unwrap());
        }
    }
}

#[test]
fn honda_examples() {
    let r = honda_normalize(3, 1, 16).unwrap();
    assert!(r.xi.is_one());
    assert_eq!(r.g_n, 1);
    assert_eq!(r.normalized.to_string(), "y^3");

    let r = honda_normalize(3, 2, 16).unwrap();
    assert_eq!(r.g_n, 4);
    assert_eq!(r.xi.clone() * r.xi.clone(), r.xi.field().from_int(-1));
    assert_eq!(r.normalized.to_string(), "y^3");

    let r = honda_normalize(5, 3, 16).unwrap();
    assert_eq!(r.g_n, 31);
    assert_eq!(r.normalized.to_string(), "y^5");
    assert!(r.weight_identity && r.xi_identity);
}

#[test]
fn honda_all_small_cases() {
    for p in [3u64, 5, 7] {
        for n in 1..=4 {
            let r = honda_normalize(p, n, 64).unwrap();
            assert_eq!(r.vn_exponent, 1);
            let expected = TruncSeries::monomial(r.xi.one_like(), p as usize, 64);
            assert_eq!(r.normalized, expected);
        }
    }
}

#[test]
fn honda_inverse_vn_leaves_weight() {
    match honda_normalize_with_exponent(3, 2, 8, -1) {
        Err(SeriesError::NormalizationFailure { residual }) => {
            assert_eq!(residual.len(), 1);
            assert_eq!(residual[0].degree, 3);
            assert_eq!(residual[0].u_weight, -2 * 8);
        }
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn scale_iso_examples() {
    let z5 = fp(5);
    let r = scale_iso(&z5.one_like(), 16).unwrap();
    assert!(r.holds && r.is_isomorphism);
    let r = scale_iso(&z5.from_int_like(2), 16).unwrap();
    assert!(r.holds && r.is_isomorphism);
    let z27 = PadicInt::new(3, 3, 3).unwrap();
    let r = scale_iso(&z27, 16).unwrap();
    assert!(r.holds);
    assert!(!r.is_isomorphism);

    let w = Witt::new(3, 2, 4).unwrap();
    let t = w.elem(&[2, 1]);
    let r = scale_iso(&t, 12).unwrap();
    assert!(r.holds && r.is_isomorphism);
    assert!(mult_fgl(t, 12).is_ok());
}

#[test]
fn display_renders_terms() {
    let z = fp(5);
    assert_eq!(series(&z, &[1, 3], 2).to_string(), "1 + 3y");
    assert_eq!(TruncSeries::zero(&z, 3).to_string(), "0");
}
