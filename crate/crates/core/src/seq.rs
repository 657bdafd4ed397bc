//! Integer and sign sequences behind the matrix families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Binary sum of digits.
pub fn s2(n: u64) -> u32 {
    n.count_ones()
}

/// `t_i = s2(i) mod 2`.
pub fn thue_morse(i: u64) -> u8 {
    (s2(i) & 1) as u8
}

/// `(-1)^{t_i}`.
pub fn thue_morse_sign(i: u64) -> i8 {
    if thue_morse(i) == 0 {
        1
    } else {
        -1
    }
}

/// `binom(j, i) mod 2` by Lucas: odd iff the bits of `i` are a subset of the bits of `j`.
pub fn lucas_binom_mod2(i: u64, j: u64) -> u8 {
    u8::from(i & !j == 0)
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for step in 0..k {
        acc *= n - step;
        acc /= step + 1;
    }
    acc
}

/// `C_k`, computed as `binom(2k, k) - binom(2k, k-1)` and checked against
/// `binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigInt {
    let central = binomial(2 * k, k);
    let by_difference = if k == 0 {
        central.clone()
    } else {
        &central - binomial(2 * k, k - 1)
    };
    let (by_quotient, rem) = central.div_rem(&BigInt::from(k + 1));
    assert!(
        rem.is_zero() && by_quotient == by_difference,
        "Catalan formulas disagree at k = {k}"
    );
    by_difference
}

/// `C_0, ..., C_{len-1}` via `C_{k+1} = C_k * 2(2k+1) / (k+2)`.
pub fn catalan_prefix(len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigInt::one();
    for k in 0..len as u64 {
        out.push(c.clone());
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    out
}

/// `c_{2k} = (-1)^k C_k`, `c_{2k+1} = 0`; with `mod2`, `c_k mod 2` as a plain integer.
pub fn catalan_interspersed(k: u64, mod2: bool) -> BigInt {
    if k % 2 == 1 {
        return BigInt::zero();
    }
    let half = k / 2;
    let c = catalan(half);
    if mod2 {
        BigInt::from(u8::from(c.is_odd()))
    } else if half % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Prefix of the paperfolding sequence `F(1,-1,-1,-1,...)` produced by
/// `w_1 = (1)`, `w_{i+1} = w_i . (-1) . (-w_i reversed)`.
pub fn paperfolding(length: usize) -> Vec<i8> {
    let mut w = vec![1i8];
    while w.len() < length {
        let mut next = Vec::with_capacity(2 * w.len() + 1);
        next.extend_from_slice(&w);
        next.push(-1);
        next.extend(w.iter().rev().map(|&x| -x));
        w = next;
    }
    w.truncate(length.max(1));
    w
}

/// The sequences a Hankel family can be built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceSpec {
    ThueMorse,
    Catalan,
    CatalanInterspersed,
    CatalanInterspersedMod2,
    /// Indexed from 0 here: term `k` is `s_{k+1}`.
    Paperfolding,
}

impl SequenceSpec {
    pub const ALL: [SequenceSpec; 5] = [
        SequenceSpec::ThueMorse,
        SequenceSpec::Catalan,
        SequenceSpec::CatalanInterspersed,
        SequenceSpec::CatalanInterspersedMod2,
        SequenceSpec::Paperfolding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceSpec::ThueMorse => "thue_morse",
            SequenceSpec::Catalan => "catalan",
            SequenceSpec::CatalanInterspersed => "catalan_interspersed",
            SequenceSpec::CatalanInterspersedMod2 => "catalan_interspersed_mod2",
            SequenceSpec::Paperfolding => "paperfolding",
        }
    }

    pub fn term(self, k: u64) -> BigInt {
        match self {
            SequenceSpec::ThueMorse => BigInt::from(thue_morse(k)),
            SequenceSpec::Catalan => catalan(k),
            SequenceSpec::CatalanInterspersed => catalan_interspersed(k, false),
            SequenceSpec::CatalanInterspersedMod2 => catalan_interspersed(k, true),
            SequenceSpec::Paperfolding => {
                let len = usize::try_from(k + 1).expect("paperfolding index fits in memory");
                BigInt::from(paperfolding(len)[len - 1])
            }
        }
    }

    /// First `len` terms. Uses recurrences rather than repeated `term` calls.
    pub fn prefix(self, len: usize) -> Vec<BigInt> {
        match self {
            SequenceSpec::ThueMorse => (0..len as u64)
                .map(|i| BigInt::from(thue_morse(i)))
                .collect(),
            SequenceSpec::Catalan => catalan_prefix(len),
            SequenceSpec::CatalanInterspersed | SequenceSpec::CatalanInterspersedMod2 => {
                let mod2 = self == SequenceSpec::CatalanInterspersedMod2;
                let cats = catalan_prefix(len.div_ceil(2));
                (0..len)
                    .map(|k| {
                        if k % 2 == 1 {
                            return BigInt::zero();
                        }
                        let c = &cats[k / 2];
                        if mod2 {
                            BigInt::from(u8::from(c.is_odd()))
                        } else if (k / 2) % 2 == 1 {
                            -c
                        } else {
                            c.clone()
                        }
                    })
                    .collect()
            }
            SequenceSpec::Paperfolding => {
                if len == 0 {
                    return Vec::new();
                }
                paperfolding(len).into_iter().map(BigInt::from).collect()
            }
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        SequenceSpec::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| ParseError::UnknownSequence(s.to_string()))
    }
}
