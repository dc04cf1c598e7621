//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use morava_calc::adams::{eigen_split, fiber_product_check, idempotent_pi, intertwine_check, kernel_psi_minus_gamma};
use morava_calc::arith::{generator_g, Fq, FqElem, PadicInt, PadicUnit};
use morava_calc::cannibal::{brute_force_solvable, solve_transfer, theta_laws_check};
use morava_calc::imj::{imj_order, psi_q_twist_check};
use morava_calc::profinite::{
    c_normalization_check, domain_points, phi_dual_check, phi_iso, Domain, GroupRingElem, LevelFn,
};
use morava_calc::series::{honda_normalize, mult_fgl, TruncSeries};
use morava_calc::Ring;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn random_unit(rng: &mut ChaCha8Rng, p: u64, prec: u32) -> PadicInt {
    let modulus = p.pow(prec) as i128;
    loop {
        let v = rng.gen_range(1..modulus);
        if v % p as i128 != 0 {
            return PadicInt::new(p, prec, v).unwrap();
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for p in [3u64, 5, 7] {
        for n in 1..=4usize {
            let r = honda_normalize(p, n, 64).map_err(|e| format!("p={p} n={n}: {e}"))?;
            let zero = Fq::new(p, n).map_err(err)?.zero();
            let expected = TruncSeries::monomial(zero.one_like(), p as usize, 64);
            ensure(r.normalized == expected && r.weight_identity && r.xi_identity, || {
                format!("p={p} n={n}: got {}", r.normalized)
            })?;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, || format!("took {elapsed:.2}s"))
}

fn criterion_2() -> Outcome {
    for p in [3u64, 5] {
        let r = phi_dual_check(p, 3, 1).map_err(err)?;
        ensure(r.holds && r.checked == 3 * p.pow(3) as usize, || {
            format!("p={p}: mismatches {:?}", r.mismatches)
        })?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for p in [3u64, 5] {
        let zero = Fq::new(p, 1).map_err(err)?.zero();
        for level in 1..=2u32 {
            let size = p.pow(level);
            let images: Vec<_> = (0..size)
                .map(|m| phi_iso(&GroupRingElem::basis(&zero, p, level, m).unwrap()).unwrap())
                .collect();
            for a in 0..size {
                for b in 0..size {
                    let ha = GroupRingElem::basis(&zero, p, level, a).map_err(err)?;
                    let hb = GroupRingElem::basis(&zero, p, level, b).map_err(err)?;
                    let lhs = phi_iso(&ha.mul(&hb).map_err(err)?).map_err(err)?;
                    let rhs = &images[a as usize] * &images[b as usize];
                    ensure(lhs == rhs, || format!("p={p} N={level}: phi(h^{a} h^{b})"))?;
                }
            }
            for u in domain_points(p, level, Domain::Units) {
                let unit = PadicUnit::from_int(p, level, u as i128).map_err(err)?;
                let r = intertwine_check(&unit, p, 1, level).map_err(err)?;
                ensure(r.holds, || format!("p={p} N={level} a={u}: failures {:?}", r.failures))?;
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for p in [3u64, 5] {
        for level in 1..=2u32 {
            for u in domain_points(p, level, Domain::Units) {
                let gamma = PadicUnit::from_int(p, level, u as i128).map_err(err)?;
                let k = kernel_psi_minus_gamma(&gamma, p, 1, level).map_err(err)?;
                ensure(k.nullity == 1 && k.certified, || {
                    format!("p={p} N={level} gamma={u}: nullity {}", k.nullity)
                })?;
            }
            let one = PadicUnit::from_int(p, level, 1).map_err(err)?;
            let k = kernel_psi_minus_gamma(&one, p, 1, level).map_err(err)?;
            ensure(k.generator.values().iter().all(|v| v.is_one()), || {
                format!("p={p}: gamma=1 not constant")
            })?;
            let g = generator_g(p, level).map_err(err)?;
            let k = kernel_psi_minus_gamma(&g, p, 1, level).map_err(err)?;
            let field = Fq::new(p, 1).map_err(err)?;
            let f0 = LevelFn::from_fn(p, level, Domain::Units, |x| field.from_int((x % p) as i64)).map_err(err)?;
            ensure(k.generator == f0, || format!("p={p} N={level}: gamma=g is not f_0"))?;
        }
        for a in 1..p {
            for b in 1..p {
                let ga = PadicUnit::from_int(p, 1, a as i128).map_err(err)?;
                let gb = PadicUnit::from_int(p, 1, b as i128).map_err(err)?;
                let r = fiber_product_check(&ga, &gb, p, 1, 1).map_err(err)?;
                ensure(r.holds, || format!("p={p}: product law fails for {a}, {b}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for p in [3u64, 5, 7] {
        let pi = idempotent_pi(p, 1).map_err(err)?;
        ensure(pi.holds(), || format!("p={p}: {pi:?}"))?;
        let eig = eigen_split(p, 1).map_err(err)?;
        let mut expected = vec![1; p as usize - 1];
        expected[0] = 2;
        ensure(eig.holds() && eig.multiplicities == expected, || {
            format!("p={p}: multiplicities {:?}", eig.multiplicities)
        })?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for p in [3u64, 5] {
        let coeffs = PadicInt::zero(p, 2).map_err(err)?;
        let law = mult_fgl(coeffs.one_like(), 32).map_err(err)?;
        let fp = Fq::new(p, 1).map_err(err)?.zero();
        let law_fp = mult_fgl(fp.one_like(), 32).map_err(err)?;
        for _ in 0..10 {
            let k = random_unit(&mut rng, p, 8);
            let l = random_unit(&mut rng, p, 8);
            let m = rng.gen_range(-3..4);
            let r = theta_laws_check(&law, &k, &l, m).map_err(err)?;
            ensure(r.holds(), || format!("p={p} k={k} l={l} m={m}: {r:?}"))?;
            let r = theta_laws_check(&law_fp, &k, &l, m).map_err(err)?;
            ensure(r.holds(), || format!("F_{p} k={k} l={l} m={m}: {r:?}"))?;
        }
    }

    let configs = [(3u64, 1usize, 2u32), (5, 1, 2), (3, 2, 3), (7, 1, 1)];
    for trial in 0..100 {
        let (p, n, level) = configs[trial % configs.len()];
        let field = Fq::new(p, n).map_err(err)?;
        let r = generator_g(p, level).map_err(err)?;
        let s0 = LevelFn::from_fn(p, level, Domain::Units, |_| {
            field.element_at(rng.gen_range(1..field.order()))
        })
        .map_err(err)?;
        let moved = morava_calc::adams::psi_fn(r.as_int(), &s0).map_err(err)?;
        let theta = moved.mul(&s0.inv().expect("nowhere zero")).map_err(err)?;
        let out = solve_transfer(&theta, &r).map_err(err)?;
        let sol = out
            .solution()
            .ok_or_else(|| format!("trial {trial}: constructed instance unsolved"))?;
        let scale = s0.eval(1).expect("1 is a unit").clone();
        ensure(sol.verified && sol.s.scale(&scale) == s0, || {
            format!("trial {trial}: wrong solution")
        })?;
    }

    for p in [3u64, 5] {
        let field = Fq::new(p, 1).map_err(err)?;
        let units: Vec<FqElem> = field.elements().filter(|x| !x.is_zero()).collect();
        let r = generator_g(p, 1).map_err(err)?;
        let points = (p - 1) as u32;
        for code in 0..units.len().pow(points) {
            let mut c = code;
            let values = (0..points)
                .map(|_| {
                    let v = units[c % units.len()].clone();
                    c /= units.len();
                    v
                })
                .collect();
            let theta = LevelFn::from_values(p, 1, Domain::Units, values).map_err(err)?;
            let solved = solve_transfer(&theta, &r).map_err(err)?.solution().is_some();
            let brute = brute_force_solvable(&theta, &r).map_err(err)?;
            ensure(solved == brute, || format!("p={p}: criterion disagrees for {theta:?}"))?;
        }
    }
    Ok(())
}

/// `v_p(b^e - 1)` with u128 arithmetic modulo `p^12`.
fn valuation_oracle(p: u64, b: u128, e: u64) -> u32 {
    let modulus = (p as u128).pow(12);
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc * b % modulus;
    }
    let mut d = (acc + modulus - 1) % modulus;
    let mut v = 0;
    while d.is_multiple_of(p as u128) {
        d /= p as u128;
        v += 1;
    }
    v
}

fn criterion_7() -> Outcome {
    for p in [3u64, 5, 7] {
        let q = (1 + p as u128).pow(p as u32 - 1);
        for k in 1..=200i64 {
            let r = imj_order(p, k, None).map_err(err)?;
            let mut s = 0;
            let mut kk = k;
            while kk % p as i64 == 0 {
                kk /= p as i64;
                s += 1;
            }
            let oracle = valuation_oracle(p, q, k as u64);
            ensure(
                r.pass && r.valuation == s + 1 && oracle == s + 1 && r.order == p.pow(s + 1),
                || format!("p={p} k={k}: valuation {} oracle {oracle}", r.valuation),
            )?;
        }
        for k in 0..=50i64 {
            let r = psi_q_twist_check(p, k, 8, 16).map_err(err)?;
            ensure(r.holds(), || format!("p={p} k={k}: {r:?}"))?;
            let modulus = (p as u128).pow(8);
            let g = generator_g(p, 8).map_err(err)?.value() as u128;
            let mut lhs = 1u128;
            for _ in 0..k as u64 * (p - 1) {
                lhs = lhs * g % modulus;
            }
            let mut rhs = 1u128;
            for _ in 0..k {
                rhs = rhs * (q % modulus) % modulus;
            }
            ensure(lhs == rhs, || format!("p={p} k={k}: g^(k(p-1)) != q^k"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for p in [3u64, 5] {
        let zero = Fq::new(p, 1).map_err(err)?.zero();
        let law = mult_fgl(zero.one_like(), 32).map_err(err)?;
        for _ in 0..10 {
            let modulus = p.pow(8) as i128;
            let a = PadicInt::new(p, 8, rng.gen_range(0..modulus)).map_err(err)?;
            let b = PadicInt::new(p, 8, rng.gen_range(0..modulus)).map_err(err)?;
            let sa = law.a_series(&a).map_err(err)?;
            let sb = law.a_series(&b).map_err(err)?;
            let sum = law.a_series(&(a + b)).map_err(err)?;
            let prod = law.a_series(&(a * b)).map_err(err)?;
            ensure(sum == law.add(&sa, &sb).map_err(err)?, || {
                format!("p={p}: [a+b] for a={a} b={b}")
            })?;
            ensure(prod == sa.compose(&sb).map_err(err)?, || {
                format!("p={p}: [ab] for a={a} b={b}")
            })?;

            // independent oracle: (1+y)^a - 1 = prod_i (1 + y^{p^i})^{a_i} - 1
            let one = TruncSeries::one(&zero, 32);
            let mut expected = one.clone();
            for (i, d) in a.digits().into_iter().enumerate() {
                let pi = p.pow(i as u32) as usize;
                if pi > 32 {
                    break;
                }
                let factor = &one + &TruncSeries::monomial(zero.one_like(), pi, 32);
                expected = &expected * &factor.pow(d);
            }
            ensure(sa == &expected - &one, || {
                format!("p={p}: [a](y) for a={a} disagrees with binomials")
            })?;
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for p in [3u64, 5] {
        for n in 1..=4usize {
            let r = c_normalization_check(p, n, 5).map_err(err)?;
            ensure(r.holds && r.entries.len() == 6, || format!("p={p} n={n}: {r:?}"))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_morava-calc");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1");
    for cmd in [
        "aseries",
        "pseries",
        "fgl-check",
        "pairing",
        "phi",
        "kernel",
        "split",
        "theta",
        "transfer",
        "imj",
    ] {
        let run = || Command::new(bin).arg(cmd).output().map_err(err);
        let first = run()?;
        let second = run()?;
        ensure(first.status.success() && second.status.success(), || {
            format!("{cmd} failed")
        })?;
        ensure(first.stdout == second.stdout, || format!("{cmd}: runs differ"))?;
        let expected = std::fs::read(golden.join(format!("{cmd}_p3_n1.json"))).map_err(err)?;
        ensure(first.stdout == expected, || format!("{cmd}: differs from golden file"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("p-series normalizes to y^p in weight zero", criterion_1),
        ("Lucas duality <c_k, (1+y)^m> = m_k", criterion_2),
        ("phi multiplicative and equivariant", criterion_3),
        ("fibre kernels of psi^g - gamma", criterion_4),
        ("splitting idempotent and eigenspaces", criterion_5),
        ("theta laws, cocycle and transfer", criterion_6),
        ("image of J orders and q^k scalar", criterion_7),
        ("a-series sum and product laws", criterion_8),
        ("c_k normalization identities", criterion_9),
        ("CLI determinism against golden files", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
