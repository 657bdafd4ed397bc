//! Digital (t,s)-sequences over F_p: the stacked-rank qualification test,
//! t-values, point generation by the digital method, exact star discrepancy
//! and net-property box counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{MatrixError, NetError};
use crate::family::Family;
use crate::matrix::{is_prime, rank_mod_p_rows, ExactMatrix};

/// One generating matrix, either a family window or an explicit matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixSource {
    Family(Family),
    Explicit { label: String, matrix: ExactMatrix },
}

impl fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSource::Family(fam) => write!(f, "{fam}"),
            MatrixSource::Explicit { label, .. } => f.write_str(label),
        }
    }
}

impl Serialize for MatrixSource {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Generating matrices `C_1, ..., C_s` reduced mod `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingSet {
    p: u64,
    matrices: Vec<MatrixSource>,
}

impl GeneratingSet {
    pub fn new(p: u64, matrices: Vec<MatrixSource>) -> Result<Self, NetError> {
        if !is_prime(p) {
            return Err(MatrixError::NotPrime(p).into());
        }
        if matrices.is_empty() {
            return Err(NetError::EmptyGeneratingSet);
        }
        Ok(GeneratingSet { p, matrices })
    }

    pub fn from_families(p: u64, families: &[Family]) -> Result<Self, NetError> {
        GeneratingSet::new(
            p,
            families.iter().copied().map(MatrixSource::Family).collect(),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[MatrixSource] {
        &self.matrices
    }

    /// `window(C_i, m, m, 0)` reduced mod p, as rows of residues.
    pub fn reduced_window(&self, index: usize, m: usize) -> Result<Vec<Vec<u64>>, NetError> {
        let window = match &self.matrices[index] {
            MatrixSource::Family(fam) => fam.window(m, m, 0),
            MatrixSource::Explicit { matrix, .. } => {
                if matrix.rows() < m || matrix.cols() < m {
                    return Err(NetError::ExplicitTooSmall {
                        index,
                        rows: matrix.rows(),
                        cols: matrix.cols(),
                        m,
                    });
                }
                matrix.submatrix(0, 0, m, m)
            }
        };
        let p = BigInt::from(self.p);
        Ok(window
            .iter_rows()
            .map(|r| {
                r.iter()
                    .map(|x| x.mod_floor(&p).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect())
    }

    fn reduced_windows(&self, m: usize) -> Result<Vec<Vec<Vec<u64>>>, NetError> {
        (0..self.dimension())
            .map(|i| self.reduced_window(i, m))
            .collect()
    }
}

fn stacked_rank_full(windows: &[Vec<Vec<u64>>], m: usize, composition: &[usize], p: u64) -> bool {
    let mut stack: Vec<Vec<u64>> = composition
        .iter()
        .zip(windows)
        .flat_map(|(&d, w)| w[..d].iter().cloned())
        .collect();
    let want = stack.len();
    rank_mod_p_rows(&mut stack, m, p) == want
}

/// Whether the `(m - t) x m` stack of the first `d_i` rows of each
/// `C_i^{(m)}` has full row rank over F_p.
pub fn stacked_rank_ok(
    gs: &GeneratingSet,
    m: usize,
    t: usize,
    composition: &[usize],
) -> Result<bool, NetError> {
    if t > m {
        return Err(NetError::TExceedsM { t, m });
    }
    if composition.len() != gs.dimension() {
        return Err(NetError::CompositionLength {
            expected: gs.dimension(),
            got: composition.len(),
        });
    }
    let total: usize = composition.iter().sum();
    if total != m - t {
        return Err(NetError::CompositionSum {
            expected: m - t,
            got: total,
        });
    }
    let windows = gs.reduced_windows(m)?;
    Ok(stacked_rank_full(&windows, m, composition, gs.p))
}

/// All `parts`-tuples of nonnegative integers summing to `total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Minimal t at each depth `m = 1..=m_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TValueProfile {
    pub p: u64,
    pub dims: Vec<String>,
    pub per_m: Vec<usize>,
    /// `max(per_m)`.
    pub t: usize,
}

/// Minimal t per depth, by exhaustive enumeration of compositions.
pub fn t_value(gs: &GeneratingSet, m_max: usize) -> Result<TValueProfile, NetError> {
    let mut per_m = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let windows = gs.reduced_windows(m)?;
        let t = (0..=m)
            .find(|&t| {
                compositions(m - t, gs.dimension())
                    .par_iter()
                    .all(|c| stacked_rank_full(&windows, m, c, gs.p))
            })
            .expect("t = m always qualifies");
        per_m.push(t);
    }
    Ok(TValueProfile {
        p: gs.p,
        dims: gs.matrices.iter().map(ToString::to_string).collect(),
        t: per_m.iter().copied().max().unwrap_or(0),
        per_m,
    })
}

/// Points of a digital sequence, coordinates exact in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub p: u64,
    pub dimension: usize,
    pub points: Vec<Vec<BigRational>>,
}

impl PointSet {
    pub fn new(p: u64, dimension: usize, points: Vec<Vec<BigRational>>) -> Self {
        PointSet {
            p,
            dimension,
            points,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The first `n` points of the digital sequence at depth `m`: digits of the
/// index (least significant first) times `C_i^{(m)}` mod p, read as
/// `sum y_r p^{-r-1}`.
pub fn digital_points(gs: &GeneratingSet, n: u64, m: usize) -> Result<PointSet, NetError> {
    let p = gs.p;
    let capacity = BigInt::from(p).pow(m as u32);
    if BigInt::from(n) > capacity {
        return Err(NetError::TooManyPoints {
            n,
            capacity: capacity.to_string(),
        });
    }
    let windows = gs.reduced_windows(m)?;
    let denom = capacity;
    let points = (0..n)
        .into_par_iter()
        .map(|idx| {
            let digits = base_p_digits(idx, p, m);
            windows
                .iter()
                .map(|w| {
                    let mut numer = BigInt::zero();
                    for row in w {
                        let y = row.iter().zip(&digits).fold(0u64, |acc, (&c, &d)| {
                            ((acc as u128 + c as u128 * d as u128) % p as u128) as u64
                        });
                        numer = numer * p + y;
                    }
                    BigRational::new(numer, denom.clone())
                })
                .collect()
        })
        .collect();
    Ok(PointSet::new(p, gs.dimension(), points))
}

fn base_p_digits(mut n: u64, p: u64, m: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(m);
    for _ in 0..m {
        digits.push(n % p);
        n /= p;
    }
    digits
}

/// Exact star discrepancy for `s = 1` (sorted-points formula) or `s = 2`
/// (exhaustive over the critical grid).
pub fn star_discrepancy(ps: &PointSet) -> Result<BigRational, NetError> {
    star_discrepancy_points(ps.dimension, &ps.points)
}

/// [`star_discrepancy`] on bare points of the given dimension.
pub fn star_discrepancy_points(
    dimension: usize,
    points: &[Vec<BigRational>],
) -> Result<BigRational, NetError> {
    if points.is_empty() {
        return Err(NetError::EmptyPointSet);
    }
    match dimension {
        1 => Ok(star_discrepancy_1d(
            &points.iter().map(|pt| pt[0].clone()).collect::<Vec<_>>(),
        )),
        2 => Ok(star_discrepancy_grid(points)),
        s => Err(NetError::UnsupportedDimension(s)),
    }
}

/// `max_i max((i+1)/N - x_(i), x_(i) - i/N)` over the sorted points.
pub fn star_discrepancy_1d(xs: &[BigRational]) -> BigRational {
    let mut sorted = xs.to_vec();
    sorted.sort();
    let n = BigInt::from(sorted.len());
    sorted
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let lo = BigRational::new(BigInt::from(i), n.clone());
            let hi = BigRational::new(BigInt::from(i + 1), n.clone());
            std::cmp::max(&hi - x, x - &lo)
        })
        .max()
        .expect("nonempty")
}

/// Star discrepancy in any dimension by checking every anchored box whose
/// corner has coordinates in `{point coordinates} ∪ {1}`. Open boxes bound
/// the deficit, closed boxes the excess. Cost grows like `N^(s+1)`.
pub fn star_discrepancy_grid(points: &[Vec<BigRational>]) -> BigRational {
    let n = points.len();
    let s = points.first().map_or(0, Vec::len);
    let big_n = BigRational::from_integer(BigInt::from(n));
    let axes: Vec<Vec<BigRational>> = (0..s)
        .map(|d| {
            let mut v: Vec<BigRational> = points.iter().map(|pt| pt[d].clone()).collect();
            v.push(BigRational::one());
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let mut best = BigRational::zero();
    let mut corner_idx = vec![0usize; s];
    loop {
        let corner: Vec<&BigRational> = corner_idx
            .iter()
            .enumerate()
            .map(|(d, &k)| &axes[d][k])
            .collect();
        let volume: BigRational = corner.iter().fold(BigRational::one(), |acc, c| acc * *c);
        let open = points
            .iter()
            .filter(|pt| pt.iter().zip(&corner).all(|(x, c)| x < *c))
            .count();
        let closed = points
            .iter()
            .filter(|pt| pt.iter().zip(&corner).all(|(x, c)| x <= *c))
            .count();
        let deficit = &volume - BigRational::from_integer(open.into()) / &big_n;
        let excess = BigRational::from_integer(closed.into()) / &big_n - &volume;
        best = best.max(deficit).max(excess);

        let mut d = 0;
        loop {
            if d == s {
                return best;
            }
            corner_idx[d] += 1;
            if corner_idx[d] < axes[d].len() {
                break;
            }
            corner_idx[d] = 0;
            d += 1;
        }
    }
}

/// Checks the net property of `points` at depth `m` with quality `t`: for
/// every composition `(d_1..d_s)` of `m - t`, each elementary box
/// `prod [a_i p^{-d_i}, (a_i+1) p^{-d_i})` holds exactly `p^t` points.
/// Returns the number of compositions checked, or the first failing one.
pub fn check_net_property(ps: &PointSet, m: usize, t: usize) -> Result<usize, Vec<usize>> {
    let p = ps.p;
    let p_big = BigInt::from(p);
    let comps = compositions(m - t, ps.dimension);
    let expected = p.pow(t as u32) as usize;
    for comp in &comps {
        let cells: usize = comp.iter().map(|&d| p.pow(d as u32) as usize).product();
        let mut counts = vec![0usize; cells];
        for pt in &ps.points {
            let mut cell = 0usize;
            for (x, &d) in pt.iter().zip(comp) {
                let scale = p_big.pow(d as u32);
                let a = (x.numer() * &scale).div_floor(x.denom());
                cell = cell * scale.to_usize().expect("small")
                    + a.to_usize().expect("coordinate in [0,1)");
            }
            counts[cell] += 1;
        }
        if counts.iter().any(|&c| c != expected) {
            return Err(comp.clone());
        }
    }
    Ok(comps.len())
}

impl PointSet {
    /// Every coordinate lies in `[0,1)` with denominator dividing `p^m`.
    pub fn is_well_formed(&self, m: usize) -> bool {
        let pm = BigInt::from(self.p).pow(m as u32);
        self.points.iter().all(|pt| {
            pt.len() == self.dimension
                && pt.iter().all(|x| {
                    !x.is_negative() && x < &BigRational::one() && pm.is_multiple_of(x.denom())
                })
        })
    }
}
