//! Exact scalars, sparse polynomials and truncated series.

pub mod biseries;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;

pub use biseries::{clear_denominators, BiSeries, ClearedPair, LinearFactor, RationalTerm, UvPoly, Window};
pub use linalg::{jacobian_rank, rank};
pub use poly::{MultiPoly, Var};
pub use rational::{int, rat, Rational};
pub use ring::{RingElem, Scalar};
pub use series::{geometric, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("relation window is empty: order {order} is below the denominator degree {degree}")]
    EmptyWindow { order: usize, degree: usize },
    #[error("a term's denominator does not divide the common denominator")]
    DenominatorMismatch,
    #[error("terms have different truncation orders")]
    OrderMismatch,
    #[error("relation has no terms")]
    EmptyRelation,
}
