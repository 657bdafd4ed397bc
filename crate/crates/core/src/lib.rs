//! Exact-arithmetic laboratory for Pascal matrices, their mod-2 analogues and
//! Catalan-Hankel matrices: window construction, determinants, LDU, rank over
//! F_p, identity verification, continued fractions of formal Laurent series
//! and digital (t,s)-sequences.

pub mod error;
pub mod family;
pub mod laurent;
pub mod matrix;
pub mod net;
pub mod search;
pub mod seq;
pub mod verify;

pub use error::{MatrixError, NetError, ParseError, SeriesError};
pub use family::{h2_structure_entry, Family};
pub use laurent::{build_l, cf_expand, convergent, CfExpansion, LaurentSeries, Poly, SeriesId};
pub use matrix::{
    mat_mul, window, EntryGenerator, ExactMatrix, LduFactors, Matrix, RationalMatrix,
};
pub use net::{
    digital_points, stacked_rank_ok, star_discrepancy, t_value, GeneratingSet, MatrixSource,
    PointSet,
};
pub use seq::SequenceSpec;
pub use verify::{Identity, IdentityRegistry, SweepParams, VerificationReport};
