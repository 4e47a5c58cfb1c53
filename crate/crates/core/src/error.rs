use thiserror::Error;

/// Errors surfaced by constructors and operations.
///
/// Every variant carries a human-readable detail string; CLI layers map
/// these onto exit codes.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ground set: {0}")]
    InvalidGroundSet(String),
    #[error("unknown point: {0}")]
    UnknownPoint(String),
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("not a member of the σ-algebra: {0}")]
    NotMeasurable(String),
    #[error("function is not in the positive cone: {0}")]
    NotInPositiveCone(String),
    #[error("decomposition impossible: {0}")]
    DecompositionImpossible(String),
    #[error("ideal side mismatch: {0}")]
    SideMismatch(String),
    #[error("filter is improper: {0}")]
    ImproperFilter(String),
    #[error("congruence is not cancellative: {0}")]
    NotCancellative(String),
    #[error("congruence is not a z-congruence: {0}")]
    NotZCongruence(String),
    #[error("congruence is not maximal: {0}")]
    NotMaximal(String),
    #[error("σ-algebra does not separate points: {0}")]
    NotTMeasurable(String),
    #[error("map is not a homeomorphism of measurable spaces: {0}")]
    NotHomeomorphism(String),
    #[error("descriptor is not induced by an atom bijection: {0}")]
    NotRepresentable(String),
    #[error("class is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
}
