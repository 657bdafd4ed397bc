//! Machine checks of the matrix identities, each behind the [`Identity`]
//! trait and registered by name in an [`IdentityRegistry`].

mod checks;
mod report;

pub use checks::*;
pub use report::{Failure, Observation, Status, VerificationReport};

use crate::laurent::SeriesId;

/// Optional overrides for an identity's default grid. `n_max` is the window
/// size, series length or depth, depending on the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepParams {
    pub n_max: Option<usize>,
    pub a_range: Option<(i64, i64)>,
    pub k_max: Option<usize>,
}

pub trait Identity: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, params: &SweepParams) -> VerificationReport;
}

pub const DEFAULT_A_RANGE: (i64, i64) = (-5, 5);
pub const DEFAULT_PRIMES: [u64; 3] = [2, 3, 5];
/// Largest `p^m` for which net-property box counting runs.
pub const BOX_COUNT_LIMIT: u64 = 729;

struct Gram;

impl Identity for Gram {
    fn id(&self) -> &'static str {
        "gram"
    }
    fn description(&self) -> &'static str {
        "P1^T P1 = P2"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_gram(params.n_max.unwrap_or(64))
    }
}

struct PascalPower;

impl Identity for PascalPower {
    fn id(&self) -> &'static str {
        "pascal-power"
    }
    fn description(&self) -> &'static str {
        "P1^a = P1(a)"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_pascal_power(
            params.a_range.unwrap_or(DEFAULT_A_RANGE),
            params.n_max.unwrap_or(64),
        )
    }
}

struct GroupLaw {
    family: GroupFamily,
}

impl Identity for GroupLaw {
    fn id(&self) -> &'static str {
        match self.family {
            GroupFamily::P1 => "pascal-group-law",
            GroupFamily::M1 => "m1-group-law",
        }
    }
    fn description(&self) -> &'static str {
        match self.family {
            GroupFamily::P1 => "P1(a) P1(b) = P1(a+b)",
            GroupFamily::M1 => "M1(a) M1(b) = M1(a+b)",
        }
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        let n_default = match self.family {
            GroupFamily::P1 => 64,
            GroupFamily::M1 => 64,
        };
        let pairs = all_pairs(params.a_range.unwrap_or(DEFAULT_A_RANGE));
        check_group_law(self.family, &pairs, params.n_max.unwrap_or(n_default))
    }
}

struct M2Factorization;

impl Identity for M2Factorization {
    fn id(&self) -> &'static str {
        "m2-factorization"
    }
    fn description(&self) -> &'static str {
        "M1^T diag((-1)^t_i) M1 = M2"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_m2_factorization(params.n_max.unwrap_or(128))
    }
}

struct Determinant {
    which: DetFormula,
}

impl Identity for Determinant {
    fn id(&self) -> &'static str {
        match self.which {
            DetFormula::P1Windows => "det-p1-windows",
            DetFormula::P2Leading => "det-p2-leading",
            DetFormula::P2Windows => "det-p2-windows",
            DetFormula::M2Leading => "det-m2-leading",
            DetFormula::M1Windows => "det-m1-windows",
        }
    }
    fn description(&self) -> &'static str {
        match self.which {
            DetFormula::P1Windows => "det(P1^(n,k)) = 1",
            DetFormula::P2Leading => "det(P2^(n)) = 1",
            DetFormula::P2Windows => "det(P2^(n,k)) = 1",
            DetFormula::M2Leading => "det(M2^(n)) = prod (-1)^s2(i)",
            DetFormula::M1Windows => "|det(M1(a)^(n,k))| = prod |a|^(s2(i+k)-s2(i))",
        }
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        let (n_default, k_default) = match self.which {
            DetFormula::P1Windows | DetFormula::P2Windows => (12, 64),
            DetFormula::P2Leading | DetFormula::M2Leading => (64, 0),
            DetFormula::M1Windows => (10, 32),
        };
        let (lo, hi) = params.a_range.unwrap_or(DEFAULT_A_RANGE);
        let grid = DetGrid {
            n_max: params.n_max.unwrap_or(n_default),
            k_max: params.k_max.unwrap_or(k_default),
            a_values: (lo..=hi).filter(|&a| a != 0).collect(),
        };
        check_det_formulas(self.which, &grid)
    }
}

struct HankelMinors {
    which: HankelId,
}

impl Identity for HankelMinors {
    fn id(&self) -> &'static str {
        match self.which {
            HankelId::H1 => "hankel-h1",
            HankelId::H2 => "hankel-h2",
        }
    }
    fn description(&self) -> &'static str {
        match self.which {
            HankelId::H1 => "det(H1^(n)) = +-1",
            HankelId::H2 => "det(H2^(n)) = +-1 and anti-triangular H2^(2^k-1)",
        }
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_hankel_minors(self.which, params.n_max.unwrap_or(40))
    }
}

struct LduM2;

impl Identity for LduM2 {
    fn id(&self) -> &'static str {
        "ldu-m2"
    }
    fn description(&self) -> &'static str {
        "LDU of M2 has D_i = (-1)^t_i"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_ldu_m2(params.n_max.unwrap_or(32))
    }
}

struct LduHankel;

impl Identity for LduHankel {
    fn id(&self) -> &'static str {
        "ldu-hankel"
    }
    fn description(&self) -> &'static str {
        "H1, H2 have LDU with D entries +-1"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_ldu_hankel(params.n_max.unwrap_or(40))
    }
}

struct ContinuedFraction {
    which: SeriesId,
}

impl Identity for ContinuedFraction {
    fn id(&self) -> &'static str {
        match self.which {
            SeriesId::L1 => "cf-l1",
            SeriesId::L2 => "cf-l2",
        }
    }
    fn description(&self) -> &'static str {
        match self.which {
            SeriesId::L1 => "L1 = [0; X, X, ...]",
            SeriesId::L2 => "L2 = [0; s_1 X, s_2 X, ...], s paperfolding",
        }
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_continued_fraction(self.which, params.n_max.unwrap_or(61))
    }
}

struct Faure;

impl Identity for Faure {
    fn id(&self) -> &'static str {
        "faure-t0"
    }
    fn description(&self) -> &'static str {
        "P1(0..p-1) mod p qualify for a (0,p)-sequence"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_faure(&DEFAULT_PRIMES, params.n_max.unwrap_or(8), BOX_COUNT_LIMIT)
    }
}

struct M1Pairs;

impl Identity for M1Pairs {
    fn id(&self) -> &'static str {
        "m1-pairs-t0"
    }
    fn description(&self) -> &'static str {
        "M1(a), M1(b) mod p, a != b, qualify for a (0,2)-sequence"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_m1_pairs(&DEFAULT_PRIMES, params.n_max.unwrap_or(8), BOX_COUNT_LIMIT)
    }
}

struct M1Triple;

impl Identity for M1Triple {
    fn id(&self) -> &'static str {
        "m1-triple-mod3"
    }
    fn description(&self) -> &'static str {
        "M1(0), M1(1), M1(2) mod 3 are not a (0,3)-sequence"
    }
    fn run(&self, _params: &SweepParams) -> VerificationReport {
        check_m1_triple()
    }
}

struct VanDerCorput;

impl Identity for VanDerCorput {
    fn id(&self) -> &'static str {
        "van-der-corput"
    }
    fn description(&self) -> &'static str {
        "identity generator gives the radical-inverse (0,1)-sequence"
    }
    fn run(&self, params: &SweepParams) -> VerificationReport {
        check_van_der_corput(&DEFAULT_PRIMES, params.n_max.unwrap_or(6))
    }
}

/// Named identities in registration order.
#[derive(Default)]
pub struct IdentityRegistry {
    entries: Vec<Box<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every built-in identity.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        reg.register(Gram);
        reg.register(PascalPower);
        reg.register(GroupLaw {
            family: GroupFamily::P1,
        });
        reg.register(GroupLaw {
            family: GroupFamily::M1,
        });
        reg.register(M2Factorization);
        for which in [
            DetFormula::P2Leading,
            DetFormula::P1Windows,
            DetFormula::P2Windows,
            DetFormula::M2Leading,
            DetFormula::M1Windows,
        ] {
            reg.register(Determinant { which });
        }
        reg.register(HankelMinors {
            which: HankelId::H1,
        });
        reg.register(HankelMinors {
            which: HankelId::H2,
        });
        reg.register(LduM2);
        reg.register(LduHankel);
        reg.register(ContinuedFraction {
            which: SeriesId::L1,
        });
        reg.register(ContinuedFraction {
            which: SeriesId::L2,
        });
        reg.register(Faure);
        reg.register(M1Pairs);
        reg.register(M1Triple);
        reg.register(VanDerCorput);
        reg
    }

    /// Adds an identity. Panics on a duplicate id.
    pub fn register(&mut self, identity: impl Identity + 'static) {
        assert!(
            self.get(identity.id()).is_none(),
            "identity {} registered twice",
            identity.id()
        );
        self.entries.push(Box::new(identity));
    }

    pub fn get(&self, id: &str) -> Option<&dyn Identity> {
        self.entries
            .iter()
            .find(|e| e.id() == id)
            .map(|e| e.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.entries.iter().map(|e| e.as_ref())
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id()).collect()
    }

    /// Runs every identity with `params` applied to each.
    pub fn run_all(&self, params: &SweepParams) -> Vec<VerificationReport> {
        self.entries.iter().map(|e| e.run(params)).collect()
    }
}
