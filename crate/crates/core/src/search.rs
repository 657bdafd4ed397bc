//! Exploration harness for a third generating matrix `C` next to
//! `M1(0), M1(1)` mod p. Candidate strategies are trait objects registered
//! by name. Results are data; nothing here claims optimality.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::NetError;
use crate::family::Family;
use crate::matrix::ExactMatrix;
use crate::net::{t_value, GeneratingSet, MatrixSource};

/// Produces candidate third matrices of at least `size x size`.
pub trait CandidateGenerator: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn candidates(&self, p: u64, size: usize, budget: usize, seed: u64) -> Vec<MatrixSource>;
}

/// Unit upper triangular matrices with entries drawn uniformly from `[0, p)`.
pub struct RandomUnitriangular;

impl CandidateGenerator for RandomUnitriangular {
    fn name(&self) -> &'static str {
        "random"
    }
    fn description(&self) -> &'static str {
        "random unit upper triangular matrices over F_p (seeded)"
    }
    fn candidates(&self, p: u64, size: usize, budget: usize, seed: u64) -> Vec<MatrixSource> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget)
            .map(|idx| {
                let matrix = ExactMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => BigInt::from(1),
                    std::cmp::Ordering::Less => BigInt::from(rng.gen_range(0..p)),
                    std::cmp::Ordering::Greater => BigInt::from(0),
                });
                MatrixSource::Explicit {
                    label: format!("random#{idx}"),
                    matrix,
                }
            })
            .collect()
    }
}

/// Every unit upper triangular matrix over F_p of the given size, in
/// lexicographic order of the strictly-upper entries, up to the budget.
pub struct ExhaustiveUnitriangular;

impl CandidateGenerator for ExhaustiveUnitriangular {
    fn name(&self) -> &'static str {
        "exhaustive"
    }
    fn description(&self) -> &'static str {
        "all unit upper triangular matrices over F_p, lexicographic, truncated to the budget"
    }
    fn candidates(&self, p: u64, size: usize, budget: usize, _seed: u64) -> Vec<MatrixSource> {
        let slots: Vec<(usize, usize)> = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .collect();
        let mut digits = vec![0u64; slots.len()];
        let mut out = Vec::new();
        while out.len() < budget {
            let mut matrix = ExactMatrix::identity(size);
            for (&(i, j), &d) in slots.iter().zip(&digits) {
                *matrix.get_mut(i, j) = BigInt::from(d);
            }
            out.push(MatrixSource::Explicit {
                label: format!("exhaustive#{}", out.len()),
                matrix,
            });
            // Odometer increment, last slot fastest.
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
            }
        }
        out
    }
}

/// `M1(a)` for `a = 2, 3, ...`.
pub struct M1Family;

impl CandidateGenerator for M1Family {
    fn name(&self) -> &'static str {
        "m1-family"
    }
    fn description(&self) -> &'static str {
        "M1(a) for a = 2, 3, ..."
    }
    fn candidates(&self, _p: u64, _size: usize, budget: usize, _seed: u64) -> Vec<MatrixSource> {
        (0..budget as i64)
            .map(|i| MatrixSource::Family(Family::M1(i + 2)))
            .collect()
    }
}

/// `P1(a)` for `a = 0, 1, 2, ...`.
pub struct P1Family;

impl CandidateGenerator for P1Family {
    fn name(&self) -> &'static str {
        "p1-family"
    }
    fn description(&self) -> &'static str {
        "P1(a) for a = 0, 1, 2, ..."
    }
    fn candidates(&self, _p: u64, _size: usize, budget: usize, _seed: u64) -> Vec<MatrixSource> {
        (0..budget as i64)
            .map(|a| MatrixSource::Family(Family::P1(a)))
            .collect()
    }
}

#[derive(Default)]
pub struct GeneratorRegistry {
    entries: Vec<Box<dyn CandidateGenerator>>,
}

impl GeneratorRegistry {
    pub fn builtin() -> Self {
        let mut reg = GeneratorRegistry::default();
        reg.register(RandomUnitriangular);
        reg.register(ExhaustiveUnitriangular);
        reg.register(M1Family);
        reg.register(P1Family);
        reg
    }

    pub fn register(&mut self, generator: impl CandidateGenerator + 'static) {
        assert!(
            self.get(generator.name()).is_none(),
            "generator {} registered twice",
            generator.name()
        );
        self.entries.push(Box::new(generator));
    }

    pub fn get(&self, name: &str) -> Option<&dyn CandidateGenerator> {
        self.entries
            .iter()
            .find(|g| g.name() == name)
            .map(|g| g.as_ref())
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn CandidateGenerator, NetError> {
        self.get(name)
            .ok_or_else(|| NetError::UnknownGenerator(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CandidateGenerator> {
        self.entries.iter().map(|g| g.as_ref())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub candidate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ExactMatrix>,
    pub per_m: Vec<usize>,
    pub t: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub m_max: usize,
    pub generator: String,
    pub results: Vec<Candidate>,
    /// Smallest t observed at each depth over all candidates; empty when
    /// no candidate was evaluated.
    pub best_per_m: Vec<usize>,
}

/// Evaluates `budget` candidates `C` from `generator` as the third matrix of
/// `{M1(0), M1(1), C}` mod p, depths `1..=m_max`.
pub fn search_third_matrix(
    p: u64,
    m_max: usize,
    generator: &dyn CandidateGenerator,
    budget: usize,
    seed: u64,
) -> Result<SearchReport, NetError> {
    let mut results = Vec::with_capacity(budget);
    for cand in generator.candidates(p, m_max, budget, seed) {
        let matrix = match &cand {
            MatrixSource::Explicit { matrix, .. } => Some(matrix.clone()),
            MatrixSource::Family(_) => None,
        };
        let label = cand.to_string();
        let gs = GeneratingSet::new(
            p,
            vec![
                MatrixSource::Family(Family::M1(0)),
                MatrixSource::Family(Family::M1(1)),
                cand,
            ],
        )?;
        let profile = t_value(&gs, m_max)?;
        results.push(Candidate {
            candidate: label,
            matrix,
            per_m: profile.per_m,
            t: profile.t,
        });
    }
    let best_per_m = if results.is_empty() {
        Vec::new()
    } else {
        (0..m_max)
            .map(|i| results.iter().map(|r| r.per_m[i]).min().expect("nonempty"))
            .collect()
    };
    Ok(SearchReport {
        p,
        m_max,
        generator: generator.name().to_string(),
        results,
        best_per_m,
    })
}
