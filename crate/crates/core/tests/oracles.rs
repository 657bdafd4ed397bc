//! Library results checked against independent, deliberately naive oracles.

use binomat::family::h2_structure_entry;
use binomat::seq::{
    binomial, catalan, catalan_prefix, lucas_binom_mod2, paperfolding, s2, thue_morse,
};
use binomat::{ExactMatrix, Family, SequenceSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{cofactor_det, pascal_rows};

#[test]
fn bareiss_matches_cofactor_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = ExactMatrix::from_i64_rows(&refs).unwrap();
        assert_eq!(m.determinant().unwrap(), cofactor_det(&rows), "{rows:?}");
    }
}

#[test]
fn bareiss_matches_cofactor_with_zero_pivots() {
    let rows = vec![vec![0, 2, 1], vec![0, 0, 3], vec![4, 1, 1]];
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    assert_eq!(
        ExactMatrix::from_i64_rows(&refs)
            .unwrap()
            .determinant()
            .unwrap(),
        cofactor_det(&rows)
    );
}

#[test]
fn lucas_matches_binomial_parity() {
    let rows = pascal_rows(256);
    for (j, row) in rows.iter().enumerate() {
        for i in 0..=256usize {
            let exact = row.get(i).map_or(0, |c| c.is_odd() as u8);
            assert_eq!(lucas_binom_mod2(i as u64, j as u64), exact, "({i},{j})");
        }
    }
}

#[test]
fn binomial_matches_pascal_triangle() {
    let rows = pascal_rows(120);
    for (n, row) in rows.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            assert_eq!(&binomial(n as u64, k as u64), v);
        }
    }
}

#[test]
fn catalan_formulas_agree() {
    let prefix = catalan_prefix(513);
    for k in 0..=512u64 {
        // catalan() asserts the difference and quotient formulas agree.
        assert_eq!(catalan(k), prefix[k as usize], "k = {k}");
    }
}

#[test]
fn catalan_parity_closed_form() {
    // C_k is odd exactly when k + 1 is a power of two.
    let prefix = catalan_prefix((1 << 14) + 1);
    for (k, c) in prefix.iter().enumerate() {
        assert_eq!(c.is_odd(), (k + 1).is_power_of_two(), "k = {k}");
    }
}

#[test]
fn h2_matches_closed_form() {
    let terms = SequenceSpec::CatalanInterspersedMod2.prefix(4097);
    for i in 0..=2048usize {
        for j in 0..=2048usize {
            let v = &terms[i + j];
            let expected = BigInt::from(h2_structure_entry(i as u64, j as u64));
            assert_eq!(*v, expected, "({i},{j})");
        }
    }
}

#[test]
fn h2_entries_are_powers_of_two_anti_diagonals() {
    for i in 0..=600u64 {
        for j in 0..=600u64 {
            assert_eq!(h2_structure_entry(i, j) == 1, (i + j + 2).is_power_of_two());
        }
    }
}

#[test]
fn p1_mod_2_is_m1() {
    let n = 513;
    let p1 = Family::P1(1).leading(n);
    let m1 = Family::M1(1).leading(n);
    for i in 0..n {
        for j in 0..n {
            let parity = BigInt::from(p1.get(i, j).is_odd() as u8);
            assert_eq!(&parity, m1.get(i, j), "({i},{j})");
        }
    }
}

#[test]
fn thue_morse_by_doubling() {
    let mut t = vec![0u8];
    while t.len() < 4096 {
        let flipped: Vec<u8> = t.iter().map(|x| 1 - x).collect();
        t.extend(flipped);
    }
    for (i, &x) in t.iter().enumerate() {
        assert_eq!(thue_morse(i as u64), x);
        assert_eq!(s2(i as u64), (i as u64).count_ones());
    }
}

#[test]
fn paperfolding_matches_fold_rule() {
    // n = 2^k (2j+1) takes fold sign a_{k+1} times (-1)^j, folds a = (1, -1, -1, ...).
    let pf = paperfolding(5000);
    for (idx, &s) in pf.iter().enumerate() {
        let n = idx + 1;
        let k = n.trailing_zeros();
        let j = (n >> k) / 2;
        let fold = if k == 0 { 1 } else { -1 };
        let sign = if j % 2 == 0 { 1 } else { -1 };
        assert_eq!(s, fold * sign, "n = {n}");
    }
}

#[test]
fn m1_windows_match_entrywise_definition() {
    for a in [-3i64, -1, 2, 5] {
        let w = Family::M1(a).window(6, 9, 7);
        for i in 0..6usize {
            for j in 0..9usize {
                let col = j + 7;
                let expected = if i & !col == 0 {
                    BigInt::from(a).pow(col.count_ones() - i.count_ones())
                } else {
                    BigInt::zero()
                };
                assert_eq!(w.get(i, j), &expected);
            }
        }
    }
}

#[test]
fn hankel_h1_signs() {
    let h1 = Family::H1.leading(12);
    for i in 0..12 {
        for j in 0..12 {
            let k = i + j;
            let v = h1.get(i, j);
            if k % 2 == 1 {
                assert!(v.is_zero());
            } else {
                assert_eq!(v.abs(), catalan((k / 2) as u64));
                assert_eq!(v.is_negative(), (k / 2) % 2 == 1);
            }
        }
    }
}
