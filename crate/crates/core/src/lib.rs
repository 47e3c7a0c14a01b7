//! Exact counting of Dyck paths with forbidden peak heights, valley heights
//! and run lengths, plus discovery of the algebraic equation and linear
//! recurrence satisfied by the counting sequence.

pub mod bipoly;
pub mod catalan;
pub mod dp;
pub mod elimination;
pub mod error;
pub mod guess;
pub mod intset;
pub mod linalg;
pub mod mpoly;
pub mod oracle;
pub mod recurrence;
pub mod restriction;
pub mod scalar;
pub mod series;
pub mod symbolic;
pub mod upoly;

pub use bipoly::BivariatePoly;
pub use catalan::{CatalanLinear, RationalInCatalan};
pub use elimination::EliminationResult;
pub use error::{Error, ParseSetError, Result};
pub use guess::FitConfig;
pub use intset::{IntSet, Progression};
pub use mpoly::MPoly;
pub use recurrence::RecurrenceOperator;
pub use restriction::{RestrictionSpec, Sequence};
pub use scalar::{Field, Fp, Ring};
pub use symbolic::{EquationSystem, StateLabel};

use num_bigint::BigInt;

/// Integer-coefficient univariate polynomial.
pub type IntPoly = upoly::UPoly<BigInt>;
/// Truncated power series with integer coefficients.
pub type IntSeries = series::Series<BigInt>;
