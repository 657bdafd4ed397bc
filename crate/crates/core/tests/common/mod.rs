//! Naive reference computations shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][c]) * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Pascal's triangle by addition, rows `0..=n`.
pub fn pascal_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = vec![BigInt::from(1); r + 1];
        for k in 1..r {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

/// `w_1 = (1)`, `w_{i+1} = w_i . (-1) . (-w_i reversed)`, truncated.
pub fn paperfolding_by_words(len: usize) -> Vec<i8> {
    let mut w = vec![1i8];
    while w.len() < len {
        let tail: Vec<i8> = w.iter().rev().map(|x| -x).collect();
        w.push(-1);
        w.extend(tail);
    }
    w.truncate(len);
    w
}
