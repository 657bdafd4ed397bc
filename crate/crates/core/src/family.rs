//! Entry generators for the Pascal, 0/1-Pascal and Hankel families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::matrix::{window, EntryGenerator, ExactMatrix};
use crate::seq::{binomial, lucas_binom_mod2, s2, SequenceSpec};

/// An infinite integer matrix indexed by `N0 x N0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `binom(j, i) a^{j-i}`; `P1(0)` is the identity.
    P1(i64),
    /// `binom(i + j, i)`.
    P2,
    /// `(binom(j, i) mod 2) a^{s2(j) - s2(i)}`; `M1(0)` is the identity.
    M1(i64),
    /// `binom(i + j, i) mod 2`.
    M2,
    /// `h_{i,j} = seq(i + j)`.
    Hankel(SequenceSpec),
}

impl Family {
    /// Catalan numbers interspersed with zeros and signs.
    pub const H1: Family = Family::Hankel(SequenceSpec::CatalanInterspersed);
    /// The same, reduced mod 2.
    pub const H2: Family = Family::Hankel(SequenceSpec::CatalanInterspersedMod2);

    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        let (iu, ju) = (i as u64, j as u64);
        match *self {
            Family::P1(0) | Family::M1(0) => kronecker(i, j),
            Family::P1(a) => {
                if i > j {
                    BigInt::zero()
                } else {
                    binomial(ju, iu) * BigInt::from(a).pow((j - i) as u32)
                }
            }
            Family::P2 => binomial(ju + iu, iu),
            Family::M1(a) => {
                if lucas_binom_mod2(iu, ju) == 0 {
                    BigInt::zero()
                } else {
                    // i is a bit-subset of j, so the exponent is nonnegative.
                    BigInt::from(a).pow(s2(ju) - s2(iu))
                }
            }
            Family::M2 => BigInt::from(lucas_binom_mod2(iu, iu + ju)),
            Family::Hankel(seq) => seq.term(iu + ju),
        }
    }

    /// `window(self, n, m, k)`.
    pub fn window(&self, n: usize, m: usize, k: usize) -> ExactMatrix {
        match *self {
            // Fill the Hankel window from one prefix instead of n*m term calls.
            Family::Hankel(seq) => {
                let needed = if n == 0 || m == 0 { 0 } else { n + k + m - 1 };
                let terms = seq.prefix(needed);
                ExactMatrix::from_fn(n, m, |i, j| terms[i + k + j].clone())
            }
            _ => window(self, n, m, k),
        }
    }

    /// Upper-left `n x n` window.
    pub fn leading(&self, n: usize) -> ExactMatrix {
        self.window(n, n, 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        matches!(self, Family::P1(_) | Family::M1(_))
    }
}

fn kronecker(i: usize, j: usize) -> BigInt {
    if i == j {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

impl EntryGenerator for Family {
    fn entry(&self, i: usize, j: usize) -> BigInt {
        Family::entry(self, i, j)
    }
}

/// Closed form of the `H2` entries: 1 iff `i + j + 2` is a power of two.
pub fn h2_structure_entry(i: u64, j: u64) -> u8 {
    u8::from((i + j + 2).is_power_of_two())
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::P1(a) => write!(f, "P1:a={a}"),
            Family::P2 => f.write_str("P2"),
            Family::M1(a) => write!(f, "M1:a={a}"),
            Family::M2 => f.write_str("M2"),
            &Family::H1 => f.write_str("H1"),
            &Family::H2 => f.write_str("H2"),
            Family::Hankel(seq) => write!(f, "Hankel:{seq}"),
        }
    }
}

impl FromStr for Family {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "P2" => return Ok(Family::P2),
            "M2" => return Ok(Family::M2),
            "H1" => return Ok(Family::H1),
            "H2" => return Ok(Family::H2),
            // Bare P1/M1 mean a = 1.
            "P1" => return Ok(Family::P1(1)),
            "M1" => return Ok(Family::M1(1)),
            _ => {}
        }
        if let Some(seq) = s.strip_prefix("Hankel:") {
            return Ok(Family::Hankel(seq.parse()?));
        }
        let (head, param) = s
            .split_once(':')
            .ok_or_else(|| ParseError::UnknownFamily(s.to_string()))?;
        let a = param
            .trim()
            .strip_prefix("a=")
            .and_then(|v| v.trim().parse::<i64>().ok())
            .ok_or_else(|| ParseError::BadParameter(s.to_string()))?;
        match head.trim() {
            "P1" => Ok(Family::P1(a)),
            "M1" => Ok(Family::M1(a)),
            _ => Err(ParseError::UnknownFamily(s.to_string())),
        }
    }
}
