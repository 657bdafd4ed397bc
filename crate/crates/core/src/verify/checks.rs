//! One routine per identity. Every routine sweeps a deterministic grid and
//! never stops early: failures are collected in the report.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::report::{sign_char, Outcome, ReportBuilder, VerificationReport};
use crate::family::{h2_structure_entry, Family};
use crate::laurent::{build_l, cf_expand, convergent, unit_linear_sign, LaurentSeries, SeriesId};
use crate::matrix::{ExactMatrix, RationalMatrix};
use crate::net::{check_net_property, digital_points, t_value, GeneratingSet};
use crate::seq::{paperfolding, s2, thue_morse, thue_morse_sign};

const TRIANGULAR_TRUNCATION: &str =
    "factors are upper triangular, so entry (i,j) of a product only involves indices l <= j inside the window";

/// `window(P1,n)^T window(P1,n) == window(P2,n)` for `n = 1..=n_max`.
pub fn check_gram(n_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "gram",
        "P1^T P1 = P2",
        "entry (i,j) of P1^T P1 sums over l <= min(i,j), all inside the n x n window",
        format!("n = 1..={n_max}"),
    );
    let p1 = Family::P1(1).leading(n_max);
    let p2 = Family::P2.leading(n_max);
    let ns: Vec<usize> = (1..=n_max).collect();
    rb.sweep(
        &ns,
        |n| format!("n={n}"),
        |&n| {
            let w = p1.leading(n);
            let lhs = w.transpose().mul(&w).expect("square");
            Outcome::matrices(&p2.leading(n), &lhs)
        },
    );
    rb.finish()
}

/// `window(P1,n)^a == window(P1(a),n)` for nonzero `a` in `a_range` and `n = 1..=n_max`.
pub fn check_pascal_power(a_range: (i64, i64), n_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "pascal-power",
        "P1^a = (binom(j,i) a^(j-i)) = P1(a) for a != 0",
        TRIANGULAR_TRUNCATION,
        format!(
            "a in [{}, {}] without 0, n = 1..={n_max}",
            a_range.0, a_range.1
        ),
    );
    let base = Family::P1(1).leading(n_max);
    let targets: BTreeMap<i64, ExactMatrix> = nonzero(a_range)
        .map(|a| (a, Family::P1(a).leading(n_max)))
        .collect();
    let grid: Vec<(i64, usize)> = nonzero(a_range)
        .flat_map(|a| (1..=n_max).map(move |n| (a, n)))
        .collect();
    rb.sweep(
        &grid,
        |(a, n)| format!("a={a}, n={n}"),
        |&(a, n)| match base.leading(n).pow(a) {
            Ok(pow) => Outcome::matrices(&targets[&a].leading(n), &pow),
            Err(e) => Outcome::Fail {
                expected: "a power".into(),
                actual: e.to_string(),
            },
        },
    );
    rb.finish()
}

fn nonzero(range: (i64, i64)) -> impl Iterator<Item = i64> {
    (range.0..=range.1).filter(|&a| a != 0)
}

/// Which parametrized family a group-law check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    P1,
    M1,
}

impl GroupFamily {
    fn at(self, a: i64) -> Family {
        match self {
            GroupFamily::P1 => Family::P1(a),
            GroupFamily::M1 => Family::M1(a),
        }
    }
}

/// All pairs `(a, b)` with both in `range`.
pub fn all_pairs(range: (i64, i64)) -> Vec<(i64, i64)> {
    (range.0..=range.1)
        .flat_map(|a| (range.0..=range.1).map(move |b| (a, b)))
        .collect()
}

/// `window(F(a),n) window(F(b),n) == window(F(a+b),n)`.
pub fn check_group_law(
    family: GroupFamily,
    pairs: &[(i64, i64)],
    n_max: usize,
) -> VerificationReport {
    let (id, statement) = match family {
        GroupFamily::P1 => ("pascal-group-law", "P1(a) P1(b) = P1(a+b)"),
        GroupFamily::M1 => ("m1-group-law", "M1(a) M1(b) = M1(a+b)"),
    };
    let mut rb = ReportBuilder::new(
        id,
        statement,
        TRIANGULAR_TRUNCATION,
        format!("{} pairs (a,b), n = 1..={n_max}", pairs.len()),
    );
    let mut cache: BTreeMap<i64, ExactMatrix> = BTreeMap::new();
    for &(a, b) in pairs {
        for x in [a, b, a + b] {
            cache
                .entry(x)
                .or_insert_with(|| family.at(x).leading(n_max));
        }
    }
    let grid: Vec<(i64, i64, usize)> = pairs
        .iter()
        .flat_map(|&(a, b)| (1..=n_max).map(move |n| (a, b, n)))
        .collect();
    rb.sweep(
        &grid,
        |(a, b, n)| format!("a={a}, b={b}, n={n}"),
        |&(a, b, n)| {
            let lhs = cache[&a]
                .leading(n)
                .mul(&cache[&b].leading(n))
                .expect("square");
            Outcome::matrices(&cache[&(a + b)].leading(n), &lhs)
        },
    );
    rb.finish()
}

/// `window(M1,n)^T diag((-1)^{t_i}) window(M1,n) == window(M2,n)`.
pub fn check_m2_factorization(n_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "m2-factorization",
        "M1^T diag((-1)^t_i) M1 = M2",
        "entry (i,j) of the product sums over l <= min(i,j), all inside the n x n window",
        format!("n = 1..={n_max}"),
    );
    let m1 = Family::M1(1).leading(n_max);
    let m2 = Family::M2.leading(n_max);
    let signs: Vec<BigInt> = (0..n_max as u64)
        .map(|i| BigInt::from(thue_morse_sign(i)))
        .collect();
    let ns: Vec<usize> = (1..=n_max).collect();
    rb.sweep(
        &ns,
        |n| format!("n={n}"),
        |&n| {
            let w = m1.leading(n);
            let d = ExactMatrix::diagonal(&signs[..n]);
            let lhs = w
                .transpose()
                .mul(&d)
                .and_then(|x| x.mul(&w))
                .expect("square");
            Outcome::matrices(&m2.leading(n), &lhs)
        },
    );
    rb.finish()
}

/// Which determinant statement to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetFormula {
    /// `det(P1^(n,k)) = 1`.
    P1Windows,
    /// `det(P2^(n)) = 1`.
    P2Leading,
    /// `det(P2^(n,k)) = 1`.
    P2Windows,
    /// `det(M2^(n)) = prod_{i<n} (-1)^{s2(i)}`.
    M2Leading,
    /// `|det(M1(a)^(n,k))| = prod_{i<n} |a|^{s2(i+k) - s2(i)}`, sign observed.
    M1Windows,
}

/// Sweep sizes for [`check_det_formulas`]; `k_max` and `a_values` are
/// ignored by formulas that do not use them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetGrid {
    pub n_max: usize,
    pub k_max: usize,
    pub a_values: Vec<i64>,
}

pub fn check_det_formulas(which: DetFormula, grid: &DetGrid) -> VerificationReport {
    let n_max = grid.n_max;
    let k_max = grid.k_max;
    match which {
        DetFormula::P1Windows | DetFormula::P2Windows => {
            let (id, statement, fam) = if which == DetFormula::P1Windows {
                ("det-p1-windows", "det(P1^(n,k)) = 1", Family::P1(1))
            } else {
                ("det-p2-windows", "det(P2^(n,k)) = 1", Family::P2)
            };
            let mut rb = ReportBuilder::new(
                id,
                statement,
                "each determinant is of a finite window",
                format!("n = 1..={n_max}, k = 0..={k_max}"),
            );
            let big = fam.window(n_max, n_max + k_max, 0);
            let points: Vec<(usize, usize)> = (1..=n_max)
                .flat_map(|n| (0..=k_max).map(move |k| (n, k)))
                .collect();
            rb.sweep(
                &points,
                |(n, k)| format!("n={n}, k={k}"),
                |&(n, k)| det_outcome(&big.submatrix(0, k, n, n), &BigInt::one()),
            );
            rb.finish()
        }
        DetFormula::P2Leading => {
            let mut rb = ReportBuilder::new(
                "det-p2-leading",
                "det(P2^(n)) = 1",
                "each determinant is of a finite window",
                format!("n = 1..={n_max}"),
            );
            let big = Family::P2.leading(n_max);
            let ns: Vec<usize> = (1..=n_max).collect();
            rb.sweep(
                &ns,
                |n| format!("n={n}"),
                |&n| det_outcome(&big.leading(n), &BigInt::one()),
            );
            rb.finish()
        }
        DetFormula::M2Leading => {
            let mut rb = ReportBuilder::new(
                "det-m2-leading",
                "det(M2^(n)) = prod_{i<n} (-1)^s2(i)",
                "each determinant is of a finite window",
                format!("n = 1..={n_max}"),
            );
            let big = Family::M2.leading(n_max);
            let ns: Vec<usize> = (1..=n_max).collect();
            let observed = rb.sweep(
                &ns,
                |n| format!("n={n}"),
                |&n| {
                    let expected: i64 = (0..n as u64)
                        .map(|i| i64::from(thue_morse_sign(i)))
                        .product();
                    match big.leading(n).determinant() {
                        Ok(d) if d == BigInt::from(expected) => {
                            Outcome::Observed(sign_char(expected < 0).to_string())
                        }
                        Ok(d) => Outcome::Fail {
                            expected: expected.to_string(),
                            actual: d.to_string(),
                        },
                        Err(e) => Outcome::Fail {
                            expected: expected.to_string(),
                            actual: e.to_string(),
                        },
                    }
                },
            );
            rb.observe(
                format!("sign of det(M2^(n)), n = 1..={n_max}"),
                concat_values(&observed),
            );
            rb.finish()
        }
        DetFormula::M1Windows => {
            let a_values: Vec<i64> = grid.a_values.iter().copied().filter(|&a| a != 0).collect();
            let mut rb = ReportBuilder::new(
                "det-m1-windows",
                "|det(M1(a)^(n,k))| = prod_{i<n} |a|^(s2(i+k)-s2(i)); sign recorded",
                "each determinant is of a finite window",
                format!("a in {a_values:?}, n = 1..={n_max}, k = 0..={k_max}"),
            );
            let bigs: BTreeMap<i64, ExactMatrix> = a_values
                .iter()
                .map(|&a| (a, Family::M1(a).window(n_max, n_max + k_max, 0)))
                .collect();
            let points: Vec<(i64, usize, usize)> = a_values
                .iter()
                .flat_map(|&a| (1..=n_max).flat_map(move |n| (0..=k_max).map(move |k| (a, n, k))))
                .collect();
            let observed = rb.sweep(
                &points,
                |(a, n, k)| format!("a={a}, n={n}, k={k}"),
                |&(a, n, k)| {
                    let expected = m1_window_det_magnitude(a, n, k);
                    match bigs[&a].submatrix(0, k, n, n).determinant() {
                        Ok(d) if BigRational::from_integer(d.abs()) == expected => {
                            Outcome::Observed(sign_char(d.is_negative()).to_string())
                        }
                        Ok(d) => Outcome::Fail {
                            expected: format!("+-{expected}"),
                            actual: d.to_string(),
                        },
                        Err(e) => Outcome::Fail {
                            expected: format!("+-{expected}"),
                            actual: e.to_string(),
                        },
                    }
                },
            );
            // One sign string over k per (a, n).
            let mut idx = 0;
            for &a in &a_values {
                for n in 1..=n_max {
                    let row: String = observed[idx..idx + k_max + 1]
                        .iter()
                        .map(|(_, v)| v.as_str())
                        .collect();
                    idx += k_max + 1;
                    rb.observe(
                        format!("sign of det(M1({a})^({n},k)), k = 0..={k_max}"),
                        row,
                    );
                }
            }
            rb.finish()
        }
    }
}

/// `prod_{i<n} |a|^{s2(i+k) - s2(i)}` as an exact rational.
pub fn m1_window_det_magnitude(a: i64, n: usize, k: usize) -> BigRational {
    let exponent: i64 = (0..n as u64)
        .map(|i| i64::from(s2(i + k as u64)) - i64::from(s2(i)))
        .sum();
    let base = BigInt::from(a.unsigned_abs());
    let power = base.pow(exponent.unsigned_abs() as u32);
    if exponent >= 0 {
        BigRational::from_integer(power)
    } else {
        BigRational::new(BigInt::one(), power)
    }
}

fn det_outcome(m: &ExactMatrix, expected: &BigInt) -> Outcome {
    match m.determinant() {
        Ok(d) => Outcome::expect_eq(expected.clone(), d),
        Err(e) => Outcome::Fail {
            expected: expected.to_string(),
            actual: e.to_string(),
        },
    }
}

fn concat_values(observed: &[(String, String)]) -> String {
    observed.iter().map(|(_, v)| v.as_str()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HankelId {
    H1,
    H2,
}

impl HankelId {
    pub fn family(self) -> Family {
        match self {
            HankelId::H1 => Family::H1,
            HankelId::H2 => Family::H2,
        }
    }
}

/// `|det(H^(n))| = 1` for `n = 1..=n_max`, signs recorded. For `H2` also
/// checks that `H2^(2^k - 1)` has ones on the anti-diagonal and zeros below it.
pub fn check_hankel_minors(which: HankelId, n_max: usize) -> VerificationReport {
    let id = match which {
        HankelId::H1 => "hankel-h1",
        HankelId::H2 => "hankel-h2",
    };
    let statement = match which {
        HankelId::H1 => "det(H1^(n)) = +-1",
        HankelId::H2 => "det(H2^(n)) = +-1; H2^(2^k-1) anti-triangular with unit anti-diagonal",
    };
    let mut rb = ReportBuilder::new(
        id,
        statement,
        "leading principal minors are determinants of finite windows",
        format!("n = 1..={n_max}"),
    );
    let big = which.family().leading(n_max);
    let ns: Vec<usize> = (1..=n_max).collect();
    let observed = rb.sweep(
        &ns,
        |n| format!("n={n}"),
        |&n| match big.leading(n).determinant() {
            Ok(d) if d.abs().is_one() => Outcome::Observed(sign_char(d.is_negative()).to_string()),
            Ok(d) => Outcome::Fail {
                expected: "+-1".into(),
                actual: d.to_string(),
            },
            Err(e) => Outcome::Fail {
                expected: "+-1".into(),
                actual: e.to_string(),
            },
        },
    );
    rb.observe(
        format!("sign of det({}^(n)), n = 1..={n_max}", which.family()),
        concat_values(&observed),
    );
    if which == HankelId::H2 {
        let sizes: Vec<usize> = (1..usize::BITS)
            .map(|k| (1usize << k) - 1)
            .take_while(|&s| s <= n_max)
            .collect();
        rb.sweep(
            &sizes,
            |s| format!("anti-diagonal size {s}"),
            |&s| {
                let w = big.leading(s);
                anti_triangular_outcome(&w)
            },
        );
        // Independent closed form for the entries.
        let closed = ExactMatrix::from_fn(n_max, n_max, |i, j| {
            BigInt::from(h2_structure_entry(i as u64, j as u64))
        });
        rb.sweep(
            &[n_max],
            |n| format!("closed form n={n}"),
            |_| Outcome::matrices(&closed, &big),
        );
    }
    rb.finish()
}

/// Ones on `i + j = s - 1`, zeros on `i + j > s - 1`.
fn anti_triangular_outcome(w: &ExactMatrix) -> Outcome {
    let s = w.rows();
    for i in 0..s {
        for j in 0..s {
            let want = match (i + j + 1).cmp(&s) {
                std::cmp::Ordering::Equal => Some(BigInt::one()),
                std::cmp::Ordering::Greater => Some(BigInt::zero()),
                std::cmp::Ordering::Less => None,
            };
            if let Some(want) = want {
                if w.get(i, j) != &want {
                    return Outcome::Fail {
                        expected: format!("entry ({i},{j}) = {want}"),
                        actual: format!("entry ({i},{j}) = {}", w.get(i, j)),
                    };
                }
            }
        }
    }
    Outcome::Pass
}

/// LDU of `window(M2,n)`: `D_i = (-1)^{t_i}`, integral unit-triangular
/// factors and exact reconstruction.
pub fn check_ldu_m2(n_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "ldu-m2",
        "window(M2,n) = L diag((-1)^t_i) U with L = U^T = window(M1,n)^T",
        "LDU of a finite window; D_i are ratios of consecutive leading minors",
        format!("n = 1..={n_max}"),
    );
    let m2 = Family::M2.leading(n_max);
    let m1 = Family::M1(1).leading(n_max);
    let ns: Vec<usize> = (1..=n_max).collect();
    rb.sweep(
        &ns,
        |n| format!("n={n}"),
        |&n| {
            let a = m2.leading(n);
            let f = match a.ldu() {
                Ok(f) => f,
                Err(e) => {
                    return Outcome::Fail {
                        expected: "LDU factors".into(),
                        actual: e.to_string(),
                    }
                }
            };
            let want_d: Vec<BigRational> = (0..n as u64)
                .map(|i| BigRational::from_integer(thue_morse_sign(i).into()))
                .collect();
            if f.d != want_d {
                return Outcome::Fail {
                    expected: format!("{want_d:?}"),
                    actual: format!("{:?}", f.d),
                };
            }
            if f.reconstruct() != a.to_rational() {
                return Outcome::Fail {
                    expected: "L D U = A".into(),
                    actual: "reconstruction differs".into(),
                };
            }
            // Uniqueness of LDU plus the factorization M1^T D M1 = M2 pins U.
            let u_expected: RationalMatrix = m1.leading(n).to_rational();
            if f.u != u_expected || f.l != u_expected.transpose() {
                return Outcome::Fail {
                    expected: "U = window(M1,n), L = U^T".into(),
                    actual: "different unit-triangular factors".into(),
                };
            }
            Outcome::Pass
        },
    );
    rb.finish()
}

/// LDU of `window(H,n)` for `H1`, `H2`: exists, `D` entries are `+-1`,
/// reconstruction is exact and `L = U^T`.
pub fn check_ldu_hankel(n_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "ldu-hankel",
        "H1 and H2 have LDU decompositions with D entries +-1 and L = U^T",
        "LDU of a finite window; D_i are ratios of consecutive leading minors",
        format!("H in {{H1, H2}}, n = {n_max}"),
    );
    let points = [HankelId::H1, HankelId::H2];
    let observed = rb.sweep(
        &points,
        |h| format!("{}", h.family()),
        |h| {
            let a = h.family().leading(n_max);
            match a.ldu() {
                Ok(f) => {
                    let unit =
                        f.d.iter()
                            .all(|d| d.is_integer() && d.to_integer().abs().is_one());
                    if !unit {
                        return Outcome::Fail {
                            expected: "D entries +-1".into(),
                            actual: format!("{:?}", f.d),
                        };
                    }
                    if f.reconstruct() != a.to_rational() || f.l != f.u.transpose() {
                        return Outcome::Fail {
                            expected: "L D U = A with L = U^T".into(),
                            actual: "mismatch".into(),
                        };
                    }
                    Outcome::Observed(f.d.iter().map(|d| sign_char(d.is_negative())).collect())
                }
                Err(e) => Outcome::Fail {
                    expected: "LDU factors".into(),
                    actual: e.to_string(),
                },
            }
        },
    );
    for (label, signs) in observed {
        rb.observe(format!("D signs of {label}^({n_max})"), signs);
    }
    rb.finish()
}

/// Continued fraction of `L1` (all quotients `X`) or `L2` (quotients `s_i X`
/// with `s` the paperfolding sequence) from `coeffs` known coefficients.
/// Also checks that every convergent reproduces the series to the
/// best-approximation order.
pub fn check_continued_fraction(which: SeriesId, coeffs: usize) -> VerificationReport {
    let target = coeffs / 2;
    let (id, statement) = match which {
        SeriesId::L1 => ("cf-l1", "L1 = [0; X, X, X, ...]"),
        SeriesId::L2 => (
            "cf-l2",
            "L2 = [0; s_1 X, s_2 X, ...] with s the paperfolding sequence",
        ),
    };
    let mut rb = ReportBuilder::new(
        id,
        statement,
        "only quotients determined by the known coefficients are emitted",
        format!("{coeffs} coefficients, {target} quotients"),
    );
    let series = build_l(which, coeffs);
    let cf = match cf_expand(&series, target) {
        Ok(cf) => cf,
        Err(e) => {
            rb.sweep(
                &[()],
                |_| "expansion".into(),
                |_| Outcome::Fail {
                    expected: "expansion".into(),
                    actual: e.to_string(),
                },
            );
            return rb.finish();
        }
    };
    rb.sweep(
        &[()],
        |_| "quotient count".into(),
        |_| Outcome::expect_eq(target, cf.partial_quotients.len()),
    );
    let expected_signs: Vec<i8> = match which {
        SeriesId::L1 => vec![1; target],
        SeriesId::L2 => paperfolding(target.max(1))[..target].to_vec(),
    };
    let idx: Vec<usize> = (0..cf.partial_quotients.len().min(target)).collect();
    rb.sweep(
        &idx,
        |i| format!("A_{}", i + 1),
        |&i| {
            let q = &cf.partial_quotients[i];
            match unit_linear_sign(q) {
                Some(s) if s == expected_signs[i] => Outcome::Pass,
                _ => Outcome::Fail {
                    expected: if expected_signs[i] > 0 {
                        "X".into()
                    } else {
                        "-1*X".into()
                    },
                    actual: q.to_string(),
                },
            }
        },
    );
    let ks: Vec<usize> = (1..=cf.partial_quotients.len()).collect();
    rb.sweep(
        &ks,
        |k| format!("convergent {k}"),
        |&k| reconstruction_outcome(&series, &cf, k),
    );
    rb.finish()
}

/// The expansion of convergent `k` matches `series` through exponent
/// `-(deg Q_k + deg Q_{k-1} + 1)`, as far as the series is known.
pub(crate) fn reconstruction_outcome(
    series: &LaurentSeries,
    cf: &crate::laurent::CfExpansion,
    k: usize,
) -> Outcome {
    let (p, q) = convergent(cf, k).expect("k within range");
    let (_, q_prev) = convergent(cf, k - 1).expect("k within range");
    let dq = q.degree().unwrap_or(0) as i64;
    let dq_prev = q_prev.degree().unwrap_or(0) as i64;
    let through = -(dq + dq_prev + 1);
    let lowest = through.max(series.last_known_exponent());
    let top = series.start_exponent().max(0);
    let terms = (top - lowest + 1) as usize;
    let approx = match LaurentSeries::from_ratio(&p, &q, terms + 1) {
        Ok(s) => s,
        Err(e) => {
            return Outcome::Fail {
                expected: "convergent series".into(),
                actual: e.to_string(),
            }
        }
    };
    for e in (lowest..=top).rev() {
        let want = series.coeff(e).unwrap_or_else(BigRational::zero);
        let got = approx.coeff(e).unwrap_or_else(BigRational::zero);
        if want != got {
            return Outcome::Fail {
                expected: format!("coefficient of X^{e} = {want}"),
                actual: format!("{got}"),
            };
        }
    }
    Outcome::Pass
}

/// Qualification of `{P1(0), ..., P1(p-1)} mod p` for each prime: t = 0 at
/// every depth `m <= m_max`, and the net property of the first `p^m` points
/// whenever `p^m <= box_limit`.
pub fn check_faure(primes: &[u64], m_max: usize, box_limit: u64) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "faure-t0",
        "P1(0), ..., P1(p-1) mod p generate a (0,p)-sequence",
        "the digital method at depth m reads only the m x m windows",
        format!("p in {primes:?}, m = 1..={m_max}, boxes for p^m <= {box_limit}"),
    );
    let sets: Vec<(String, GeneratingSet)> = primes
        .iter()
        .map(|&p| {
            let fams: Vec<Family> = (0..p as i64).map(Family::P1).collect();
            (
                format!("p={p}"),
                GeneratingSet::from_families(p, &fams).expect("prime"),
            )
        })
        .collect();
    qualification_sweep(&mut rb, &sets, m_max, box_limit);
    rb.finish()
}

/// `{M1(a), M1(b)} mod p` for all `a != b` in `[0, p)`: t = 0 through `m_max`,
/// plus box counting as in [`check_faure`].
pub fn check_m1_pairs(primes: &[u64], m_max: usize, box_limit: u64) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "m1-pairs-t0",
        "M1(a), M1(b) mod p with a != b mod p generate a (0,2)-sequence",
        "the digital method at depth m reads only the m x m windows",
        format!("p in {primes:?}, a != b in [0,p), m = 1..={m_max}, boxes for p^m <= {box_limit}"),
    );
    let sets: Vec<(String, GeneratingSet)> = primes
        .iter()
        .flat_map(|&p| {
            (0..p as i64).flat_map(move |a| {
                (0..p as i64).filter(move |&b| b != a).map(move |b| {
                    (
                        format!("p={p}, a={a}, b={b}"),
                        GeneratingSet::from_families(p, &[Family::M1(a), Family::M1(b)])
                            .expect("prime"),
                    )
                })
            })
        })
        .collect();
    qualification_sweep(&mut rb, &sets, m_max, box_limit);
    rb.finish()
}

fn qualification_sweep(
    rb: &mut ReportBuilder,
    sets: &[(String, GeneratingSet)],
    m_max: usize,
    box_limit: u64,
) {
    rb.sweep(
        sets,
        |(label, _)| label.clone(),
        |(_, gs)| match t_value(gs, m_max) {
            Ok(profile) if profile.t == 0 => Outcome::Pass,
            Ok(profile) => Outcome::Fail {
                expected: "t = 0 at every m".into(),
                actual: format!("per-m t {:?}", profile.per_m),
            },
            Err(e) => Outcome::Fail {
                expected: "t-value".into(),
                actual: e.to_string(),
            },
        },
    );
    let boxes: Vec<(String, &GeneratingSet, usize)> = sets
        .iter()
        .flat_map(|(label, gs)| {
            (1..=m_max)
                .take_while(move |&m| {
                    gs.p()
                        .checked_pow(m as u32)
                        .is_some_and(|pm| pm <= box_limit)
                })
                .map(move |m| (label.clone(), gs, m))
        })
        .collect();
    rb.sweep(
        &boxes,
        |(label, _, m)| format!("{label}, boxes at m={m}"),
        |&(_, gs, m)| net_outcome(gs, m, 0),
    );
}

/// Box counting for the first `p^m` points at quality `t`.
pub(crate) fn net_outcome(gs: &GeneratingSet, m: usize, t: usize) -> Outcome {
    let n = gs.p().pow(m as u32);
    match digital_points(gs, n, m) {
        Ok(ps) => match check_net_property(&ps, m, t) {
            Ok(_) => Outcome::Pass,
            Err(comp) => Outcome::Fail {
                expected: format!("{} points per elementary box", gs.p().pow(t as u32)),
                actual: format!("unequal counts for composition {comp:?}"),
            },
        },
        Err(e) => Outcome::Fail {
            expected: "points".into(),
            actual: e.to_string(),
        },
    }
}

/// `{M1(0), M1(1), M1(2)} mod 3` is not a (0,3)-sequence: at `m = 3` and
/// composition `(1,1,1)` the stacked rows `(1,0,0), (1,1,1), (1,2,2)` have rank 2.
pub fn check_m1_triple() -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "m1-triple-mod3",
        "M1(0), M1(1), M1(2) mod 3 fail t = 0 at m = 3",
        "the digital method at depth m reads only the m x m windows",
        "p = 3, m = 3, composition (1,1,1)".to_string(),
    );
    let gs = GeneratingSet::from_families(3, &[Family::M1(0), Family::M1(1), Family::M1(2)])
        .expect("prime");
    rb.sweep(
        &[()],
        |_| "stacked rows".into(),
        |_| {
            let rows: Vec<Vec<BigInt>> = (0..3)
                .map(|i| {
                    gs.reduced_window(i, 3).expect("window")[0]
                        .iter()
                        .map(|&x| BigInt::from(x))
                        .collect()
                })
                .collect();
            let stacked = ExactMatrix::from_rows(rows).expect("rectangular");
            let want = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 2]])
                .expect("rectangular");
            Outcome::matrices(&want, &stacked)
        },
    );
    rb.sweep(
        &[()],
        |_| "rank mod 3".into(),
        |_| {
            let stacked = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 2]])
                .expect("rectangular");
            Outcome::expect_eq(2, stacked.rank_mod_p(3).expect("prime"))
        },
    );
    rb.sweep(
        &[()],
        |_| "t at m=3".into(),
        |_| match t_value(&gs, 3) {
            Ok(profile) if profile.per_m[2] >= 1 => {
                Outcome::Observed(format!("{:?}", profile.per_m))
            }
            Ok(profile) => Outcome::Fail {
                expected: "t >= 1 at m = 3".into(),
                actual: format!("{:?}", profile.per_m),
            },
            Err(e) => Outcome::Fail {
                expected: "t-value".into(),
                actual: e.to_string(),
            },
        },
    )
    .into_iter()
    .for_each(|(p, v)| rb.observe(format!("per-m t, {p}"), v));
    rb.finish()
}

/// The identity generating matrix gives the van der Corput sequence: t = 0
/// at every depth and radical-inverse coordinates.
pub fn check_van_der_corput(primes: &[u64], m_max: usize) -> VerificationReport {
    let mut rb = ReportBuilder::new(
        "van-der-corput",
        "the identity generator yields the radical-inverse (0,1)-sequence",
        "the digital method at depth m reads only the m x m windows",
        format!("p in {primes:?}, m = 1..={m_max}"),
    );
    let sets: Vec<(u64, GeneratingSet)> = primes
        .iter()
        .map(|&p| {
            (
                p,
                GeneratingSet::from_families(p, &[Family::P1(0)]).expect("prime"),
            )
        })
        .collect();
    rb.sweep(
        &sets,
        |(p, _)| format!("p={p} t-value"),
        |(_, gs)| match t_value(gs, m_max) {
            Ok(profile) => Outcome::expect_eq(0, profile.t),
            Err(e) => Outcome::Fail {
                expected: "t-value".into(),
                actual: e.to_string(),
            },
        },
    );
    rb.sweep(
        &sets,
        |(p, _)| format!("p={p} radical inverse"),
        |(p, gs)| {
            let n = p.pow(m_max as u32);
            let ps = match digital_points(gs, n, m_max) {
                Ok(ps) => ps,
                Err(e) => {
                    return Outcome::Fail {
                        expected: "points".into(),
                        actual: e.to_string(),
                    }
                }
            };
            for (idx, pt) in ps.points.iter().enumerate() {
                let want = radical_inverse(idx as u64, *p);
                if pt[0] != want {
                    return Outcome::Fail {
                        expected: format!("point {idx} = {want}"),
                        actual: pt[0].to_string(),
                    };
                }
            }
            Outcome::Pass
        },
    );
    rb.finish()
}

/// Radical inverse of `n` in base `p`, computed digit by digit.
pub fn radical_inverse(mut n: u64, p: u64) -> BigRational {
    let mut acc = BigRational::zero();
    let mut scale = BigRational::new(BigInt::one(), BigInt::from(p));
    while n > 0 {
        acc += &scale * BigRational::from_integer(BigInt::from(n % p));
        scale /= BigRational::from_integer(BigInt::from(p));
        n /= p;
    }
    acc
}

/// Thue-Morse signs as `+`/`-`.
pub fn thue_morse_signs(n: usize) -> String {
    (0..n as u64)
        .map(|i| sign_char(thue_morse(i) == 1))
        .collect()
}
