//! Acceptance suite: each criterion runs in sequence against its time limit
//! and prints one PASS/FAIL line. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use binomat::laurent::unit_linear_sign;
use binomat::net::check_net_property;
use binomat::seq::{catalan_prefix, lucas_binom_mod2};
use binomat::{
    build_l, cf_expand, digital_points, mat_mul, stacked_rank_ok, star_discrepancy, t_value,
    ExactMatrix, Family, GeneratingSet, SequenceSpec, SeriesId,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{cofactor_det, paperfolding_by_words, pascal_rows};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn group_law() -> Check {
    const N: usize = 64;
    let windows: Vec<ExactMatrix> = (-10..=10).map(|a| Family::M1(a).leading(N)).collect();
    let w = |a: i64| &windows[(a + 10) as usize];
    let mut count = 0;
    for a in -5..=5i64 {
        for b in -5..=5i64 {
            let prod = mat_mul(w(a), w(b)).map_err(|e| e.to_string())?;
            // Upper triangular factors: the leading n x n block of the
            // product is the product of the leading blocks, so n = 64
            // covers every n <= 64. Small n are also run directly.
            ensure(
                w(a).is_upper_triangular() && w(b).is_upper_triangular(),
                || "not triangular".into(),
            )?;
            ensure(&prod == w(a + b), || {
                format!("M1({a}) M1({b}) != M1({}) at n = {N}", a + b)
            })?;
            for n in [1, 2, 3, 5, 8] {
                let small = mat_mul(&w(a).leading(n), &w(b).leading(n)).unwrap();
                ensure(small == w(a + b).leading(n), || {
                    format!("a={a} b={b} n={n}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs, n <= {N}"))
}

fn factorization() -> Check {
    const N: usize = 128;
    let m1 = Family::M1(1).leading(N);
    let signs: Vec<BigInt> = (0..N)
        .map(|i| {
            BigInt::from(if (i as u64).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            })
        })
        .collect();
    let d = ExactMatrix::diagonal(&signs);
    let lhs = mat_mul(&mat_mul(&m1.transpose(), &d).unwrap(), &m1).unwrap();
    // M2 entry (i, j) = binom(i + j, i) mod 2, from Pascal's triangle directly.
    let rows = pascal_rows(2 * N);
    let m2 = ExactMatrix::from_fn(N, N, |i, j| BigInt::from(rows[i + j][i].is_odd() as u8));
    for n in 1..=N {
        let direct = mat_mul(
            &mat_mul(&m1.leading(n).transpose(), &d.leading(n)).unwrap(),
            &m1.leading(n),
        )
        .unwrap();
        ensure(direct == m2.leading(n), || format!("mismatch at n = {n}"))?;
    }
    ensure(lhs == m2, || "mismatch at n = 128".into())?;
    ensure(m2 == Family::M2.leading(N), || {
        "M2 family disagrees with Pascal parity".into()
    })?;
    Ok(format!("n = 1..={N}"))
}

fn s2_sum(range: std::ops::Range<usize>) -> i64 {
    range.map(|i| i.count_ones() as i64).sum()
}

fn determinants() -> Check {
    let one = BigInt::one();
    let mut count = 0;
    for n in 1..=12 {
        for k in 0..=64 {
            for fam in [Family::P1(1), Family::P2] {
                let det = fam
                    .window(n, n, k)
                    .determinant()
                    .map_err(|e| e.to_string())?;
                ensure(det == one, || format!("det({fam}^({n},{k})) = {det}"))?;
                count += 1;
            }
        }
    }
    for n in 1..=64usize {
        let det = Family::M2.leading(n).determinant().unwrap();
        let want = if s2_sum(0..n) % 2 == 0 { 1 } else { -1 };
        ensure(det == BigInt::from(want), || {
            format!("det(M2^({n})) = {det}")
        })?;
        count += 1;
    }
    for a in [-3i64, -2, -1, 1, 2, 3] {
        for n in 1..=10usize {
            for k in 0..=32usize {
                let det = Family::M1(a).window(n, n, k).determinant().unwrap();
                let exp = s2_sum(k..k + n) - s2_sum(0..n);
                let mag = BigRational::from_integer(BigInt::from(a.abs())).pow(exp as i32);
                ensure(BigRational::from_integer(det.abs()) == mag, || {
                    format!("|det(M1({a})^({n},{k}))| = {} != {mag}", det.abs())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} determinants"))
}

fn hankel() -> Check {
    for n in 1..=40 {
        for fam in [Family::H1, Family::H2] {
            let det = fam.leading(n).determinant().unwrap();
            ensure(det.abs().is_one(), || format!("det({fam}^({n})) = {det}"))?;
        }
    }
    for k in 1..=6u32 {
        let n = (1usize << k) - 1;
        let h = Family::H2.leading(n);
        for i in 0..n {
            for j in 0..n {
                let v = h.get(i, j);
                match (i + j).cmp(&(n - 1)) {
                    std::cmp::Ordering::Equal => {
                        ensure(v.is_one(), || format!("anti-diagonal ({i},{j}) k={k}"))?
                    }
                    std::cmp::Ordering::Greater => {
                        ensure(v.is_zero(), || format!("below ({i},{j}) k={k}"))?
                    }
                    std::cmp::Ordering::Less => {}
                }
            }
        }
    }
    Ok("n <= 40, k <= 6".into())
}

fn qualification() -> Check {
    const M: usize = 8;
    let mut sets = 0;
    for p in [2u64, 3, 5] {
        let faure: Vec<Family> = (0..p as i64).map(Family::P1).collect();
        let prof = t_value(&GeneratingSet::from_families(p, &faure).unwrap(), M).unwrap();
        ensure(prof.per_m == vec![0; M], || {
            format!("Faure p={p}: {:?}", prof.per_m)
        })?;
        sets += 1;
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                if a == b {
                    continue;
                }
                let gs = GeneratingSet::from_families(p, &[Family::M1(a), Family::M1(b)]).unwrap();
                let prof = t_value(&gs, M).unwrap();
                ensure(prof.per_m == vec![0; M], || {
                    format!("M1({a}),M1({b}) mod {p}: {:?}", prof.per_m)
                })?;
                sets += 1;
            }
        }
    }
    let triple =
        GeneratingSet::from_families(3, &[Family::M1(0), Family::M1(1), Family::M1(2)]).unwrap();
    let stacked = ExactMatrix::from_rows(
        (0..3)
            .map(|i| {
                let w = triple.reduced_window(i, 3).unwrap();
                w[0].iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect(),
    )
    .unwrap();
    let want = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 2]]).unwrap();
    ensure(stacked == want, || format!("stacked rows\n{stacked}"))?;
    ensure(stacked.rank_mod_p(3).unwrap() == 2, || "rank != 2".into())?;
    ensure(!stacked_rank_ok(&triple, 3, 0, &[1, 1, 1]).unwrap(), || {
        "triple qualifies at m=3".into()
    })?;
    ensure(t_value(&triple, 3).unwrap().per_m[2] >= 1, || {
        "triple has t = 0 at m = 3".into()
    })?;
    Ok(format!(
        "{sets} generating sets through m = {M}; triple rank 2"
    ))
}

fn continued_fractions() -> Check {
    let signs = paperfolding_by_words(30);
    for which in [SeriesId::L1, SeriesId::L2] {
        let cf = cf_expand(&build_l(which, 61), 100).map_err(|e| e.to_string())?;
        ensure(cf.integer_part.is_zero(), || {
            format!("{which}: integer part {}", cf.integer_part)
        })?;
        let qs = &cf.partial_quotients;
        ensure(qs.len() >= 30, || {
            format!("{which}: only {} quotients", qs.len())
        })?;
        for (i, a) in qs.iter().take(30).enumerate() {
            let want = match which {
                SeriesId::L1 => 1,
                SeriesId::L2 => signs[i],
            };
            ensure(unit_linear_sign(a) == Some(want), || {
                format!("{which}: A_{} = {a}", i + 1)
            })?;
            if which == SeriesId::L1 {
                ensure(a.to_string() == "X", || {
                    format!("L1: A_{} prints as {a}", i + 1)
                })?;
            }
        }
    }
    Ok("L1, L2 from 61 coefficients, 30 quotients each".into())
}

fn digital_method() -> Check {
    let vdc = GeneratingSet::from_families(2, &[Family::P1(0)]).unwrap();
    let ps = digital_points(&vdc, 8, 3).unwrap();
    let want = [
        (0, 1),
        (1, 2),
        (1, 4),
        (3, 4),
        (1, 8),
        (5, 8),
        (3, 8),
        (7, 8),
    ];
    for (pt, &(n, d)) in ps.points.iter().zip(&want) {
        ensure(pt[0] == q(n, d), || format!("point {} != {n}/{d}", pt[0]))?;
    }
    let four = digital_points(&vdc, 4, 3).unwrap();
    let d = star_discrepancy(&four).unwrap();
    ensure(d == q(1, 4), || format!("D*(4) = {d}"))?;

    let mut boxed = 0;
    for p in [2u64, 3, 5] {
        let mut sets: Vec<Vec<Family>> = vec![(0..p as i64).map(Family::P1).collect()];
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                if a != b {
                    sets.push(vec![Family::M1(a), Family::M1(b)]);
                }
            }
        }
        for fams in sets {
            let gs = GeneratingSet::from_families(p, &fams).unwrap();
            let mut m = 1;
            while p.pow(m as u32) <= 729 {
                let pts = digital_points(&gs, p.pow(m as u32), m).unwrap();
                check_net_property(&pts, m, 0)
                    .map_err(|c| format!("{fams:?} p={p} m={m} box {c:?}"))?;
                boxed += 1;
                m += 1;
            }
        }
    }
    Ok(format!(
        "van der Corput exact, D* = 1/4, {boxed} net checks"
    ))
}

fn oracle_equivalences() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..200 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let det = ExactMatrix::from_i64_rows(&refs)
            .unwrap()
            .determinant()
            .unwrap();
        ensure(det == cofactor_det(&rows), || {
            format!("trial {t}: {rows:?}")
        })?;
    }
    let rows = pascal_rows(256);
    for (j, row) in rows.iter().enumerate() {
        for i in 0..=256usize {
            let exact = row.get(i).map_or(0, |c| c.is_odd() as u8);
            ensure(lucas_binom_mod2(i as u64, j as u64) == exact, || {
                format!("Lucas at ({i},{j})")
            })?;
        }
    }
    let limit = 1usize << 14;
    let catalan = catalan_prefix(limit / 2 + 1);
    let mod2 = SequenceSpec::CatalanInterspersedMod2.prefix(limit + 1);
    for k in 0..=limit {
        let exact_odd = k % 2 == 0 && catalan[k / 2].is_odd();
        // c_k is odd exactly on the anti-diagonals i + j = 2^r - 2.
        let closed = (k + 2).is_power_of_two();
        ensure(exact_odd == closed, || {
            format!("closed form fails at k = {k}")
        })?;
        ensure(mod2[k] == BigInt::from(closed as u8), || {
            format!("sequence disagrees at k = {k}")
        })?;
    }
    Ok("200 determinants, 257^2 parities, 2^14 + 1 Catalan parities".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 group law M1(a)M1(b) = M1(a+b)", 10, group_law),
        ("2 M1^T diag M1 = M2", 10, factorization),
        ("3 determinant formulas", 60, determinants),
        ("4 Hankel minors", 30, hankel),
        ("5 qualification", 30, qualification),
        ("6 continued fractions", 5, continued_fractions),
        ("7 digital method", 30, digital_method),
        ("8 oracle equivalences", 10, oracle_equivalences),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > Duration::from_secs(limit) => Err(format!(
                "{detail}; took {:.2}s, limit {limit}s",
                elapsed.as_secs_f64()
            )),
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "PASS criterion {name} [{:.2}s < {limit}s] {detail}",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL criterion {name} [{:.2}s] {why}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
