//! Truncated formal Laurent series over Q in descending powers of X, and
//! their simple continued fraction expansions `[A_0; A_1, A_2, ...]` with
//! polynomial partial quotients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{ParseError, SeriesError};
use crate::seq::SequenceSpec;

/// Polynomial over Q, coefficients in ascending degree. Never has a zero
/// leading coefficient; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_ints(&[1])
    }

    /// `c * X`.
    pub fn linear(c: i64) -> Self {
        Poly::from_ints(&[0, c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

fn format_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

// Highest degree first, terms joined by " + ": "X", "-1*X", "X^2 + -1*X + 1".
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let power = match d {
                    0 => String::new(),
                    1 => "X".to_string(),
                    _ => format!("X^{d}"),
                };
                match (d, c.is_one()) {
                    (0, _) => format_coeff(c),
                    (_, true) => power,
                    _ => format!("{}*{power}", format_coeff(c)),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `sum_i coeffs[i] * X^(start_exponent - i)`, known for `precision()` terms.
/// Coefficients of exponents above `start_exponent` are exactly zero;
/// those below the last known exponent are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    start_exponent: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentSeries {
    pub fn new(start_exponent: i64, coeffs: Vec<BigRational>) -> Self {
        LaurentSeries {
            start_exponent,
            coeffs,
        }
    }

    pub fn from_ints(start_exponent: i64, coeffs: &[i64]) -> Self {
        LaurentSeries::new(
            start_exponent,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn start_exponent(&self) -> i64 {
        self.start_exponent
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Lowest exponent whose coefficient is known.
    pub fn last_known_exponent(&self) -> i64 {
        self.start_exponent - self.coeffs.len() as i64 + 1
    }

    /// Coefficient of `X^e`, or `None` when it is beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e > self.start_exponent {
            return Some(BigRational::zero());
        }
        let idx = usize::try_from(self.start_exponent - e).ok()?;
        self.coeffs.get(idx).cloned()
    }

    /// Drops leading zero coefficients. `None` if every known coefficient is zero.
    fn normalized(&self) -> Option<LaurentSeries> {
        let lead = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some(LaurentSeries {
            start_exponent: self.start_exponent - lead as i64,
            coeffs: self.coeffs[lead..].to_vec(),
        })
    }

    /// Terms with nonnegative exponent, or `None` when some of them are unknown.
    pub fn polynomial_part(&self) -> Option<Poly> {
        if self.start_exponent < 0 {
            return Some(Poly::zero());
        }
        if self.last_known_exponent() > 0 {
            return None;
        }
        let top = self.start_exponent as usize;
        let mut asc = vec![BigRational::zero(); top + 1];
        for (i, c) in self.coeffs.iter().take(top + 1).enumerate() {
            asc[top - i] = c.clone();
        }
        Some(Poly::new(asc))
    }

    /// Terms with negative exponent, starting at `X^-1`.
    pub fn fractional_part(&self) -> LaurentSeries {
        if self.start_exponent < 0 {
            return self.clone();
        }
        let skip = (self.start_exponent + 1) as usize;
        LaurentSeries {
            start_exponent: -1,
            coeffs: self.coeffs.iter().skip(skip).cloned().collect(),
        }
    }

    /// `1 / self` to the same number of known terms after normalization.
    pub fn inverse(&self) -> Result<LaurentSeries, SeriesError> {
        let s = self.normalized().ok_or(SeriesError::ZeroSeries)?;
        let a = &s.coeffs;
        let inv_lead = a[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(a.len());
        b.push(inv_lead.clone());
        for n in 1..a.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !a[k].is_zero() {
                    acc += &a[k] * &b[n - k];
                }
            }
            b.push(-(acc * &inv_lead));
        }
        Ok(LaurentSeries {
            start_exponent: -s.start_exponent,
            coeffs: b,
        })
    }

    /// Expansion of `num / den` with `terms` coefficients from `X^(deg num - deg den)` down.
    pub fn from_ratio(num: &Poly, den: &Poly, terms: usize) -> Result<LaurentSeries, SeriesError> {
        let dd = den.degree().ok_or(SeriesError::ZeroSeries)?;
        let Some(nd) = num.degree() else {
            return Ok(LaurentSeries::new(0, vec![BigRational::zero(); terms]));
        };
        let start = nd as i64 - dd as i64;
        // Long division in descending powers; `rem[i]` is the coefficient of X^(nd - i).
        let mut rem: Vec<BigRational> = (0..nd + 1 + terms + dd)
            .map(|i| num.coeff_desc(nd, i))
            .collect();
        let den_desc: Vec<BigRational> = (0..=dd).map(|i| den.coeff(dd - i)).collect();
        let lead_inv = den_desc[0].recip();
        let mut out = Vec::with_capacity(terms);
        for i in 0..terms {
            let q = &rem[i] * &lead_inv;
            if !q.is_zero() {
                for (k, d) in den_desc.iter().enumerate() {
                    let delta = &q * d;
                    rem[i + k] -= delta;
                }
            }
            out.push(q);
        }
        Ok(LaurentSeries::new(start, out))
    }

    /// Coefficient of `X^e`, treating unknown coefficients as an error.
    pub fn known_coeff(&self, e: i64) -> BigRational {
        self.coeff(e).expect("coefficient within known precision")
    }
}

impl Poly {
    /// Coefficient of `X^(top - i)`, zero below degree 0.
    fn coeff_desc(&self, top: usize, i: usize) -> BigRational {
        top.checked_sub(i)
            .map_or_else(BigRational::zero, |d| self.coeff(d))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*X^{}", format_coeff(c), self.start_exponent - i as i64))
            .collect();
        if terms.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&terms.join(" + "))?;
        }
        write!(f, " + O(X^{})", self.last_known_exponent() - 1)
    }
}

/// Which Catalan-derived series to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesId {
    /// `sum c_k X^(-k-1)`.
    L1,
    /// `sum (c_k mod 2) X^(-k-1)`.
    L2,
}

impl FromStr for SeriesId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L1" | "l1" => Ok(SeriesId::L1),
            "L2" | "l2" => Ok(SeriesId::L2),
            _ => Err(ParseError::UnknownSeries(s.to_string())),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesId::L1 => "L1",
            SeriesId::L2 => "L2",
        })
    }
}

/// The first `num_coeffs` terms of `L1` or `L2`.
pub fn build_l(which: SeriesId, num_coeffs: usize) -> LaurentSeries {
    let seq = match which {
        SeriesId::L1 => SequenceSpec::CatalanInterspersed,
        SeriesId::L2 => SequenceSpec::CatalanInterspersedMod2,
    };
    LaurentSeries::new(
        -1,
        seq.prefix(num_coeffs)
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfExpansion {
    pub integer_part: Poly,
    pub partial_quotients: Vec<Poly>,
    /// Set when expansion stopped because the next quotient could not be
    /// certified from the known coefficients.
    pub exhausted_precision: bool,
}

/// Expands `s` until `max_quotients` quotients are produced or the remaining
/// precision no longer determines the next one.
pub fn cf_expand(s: &LaurentSeries, max_quotients: usize) -> Result<CfExpansion, SeriesError> {
    if s.coeffs.iter().all(Zero::is_zero) {
        return Err(SeriesError::ZeroSeries);
    }
    let Some(integer_part) = s.polynomial_part() else {
        return Ok(CfExpansion {
            integer_part: Poly::zero(),
            partial_quotients: Vec::new(),
            exhausted_precision: true,
        });
    };
    let mut rest = s.fractional_part();
    let mut quotients = Vec::new();
    let mut exhausted = false;
    while quotients.len() < max_quotients {
        let Ok(inv) = rest.inverse() else {
            exhausted = true;
            break;
        };
        match inv.polynomial_part() {
            Some(q) => {
                quotients.push(q);
                rest = inv.fractional_part();
            }
            None => {
                exhausted = true;
                break;
            }
        }
    }
    Ok(CfExpansion {
        integer_part,
        partial_quotients: quotients,
        exhausted_precision: exhausted,
    })
}

/// Convergent `P/Q` of `[A_0; A_1, ..., A_upto]`.
pub fn convergent(cf: &CfExpansion, upto: usize) -> Result<(Poly, Poly), SeriesError> {
    if upto > cf.partial_quotients.len() {
        return Err(SeriesError::ConvergentOutOfRange {
            requested: upto,
            available: cf.partial_quotients.len(),
        });
    }
    let (mut p_prev, mut p) = (Poly::one(), cf.integer_part.clone());
    let (mut q_prev, mut q) = (Poly::zero(), Poly::one());
    for a in &cf.partial_quotients[..upto] {
        let p_next = a.mul(&p).add(&p_prev);
        let q_next = a.mul(&q).add(&q_prev);
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Ok((p, q))
}

/// `Some(c)` when `poly == c * X` for an integer `c`.
pub fn linear_coefficient(poly: &Poly) -> Option<BigInt> {
    if poly.degree() != Some(1) || !poly.coeff(0).is_zero() {
        return None;
    }
    let c = poly.coeff(1);
    c.is_integer().then(|| c.to_integer())
}

/// Sign of `c` in a quotient `c * X`, for `c = +-1`.
pub fn unit_linear_sign(poly: &Poly) -> Option<i8> {
    let c = linear_coefficient(poly)?;
    if c.abs().is_one() {
        Some(if c.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}
