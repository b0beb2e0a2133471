//! Symbolic variational calculus on jet bundles in adapted coordinates.

pub mod error;
pub mod forms;
pub mod hilbert_einstein;
pub mod jetchart;
pub mod linalg;
pub mod multiindex;
pub mod symexpr;
pub mod random;
pub mod suites;
pub mod text;
pub mod varcalc;

pub use error::{Error, Result};
pub use multiindex::MultiIndex;
pub use symexpr::{CheckMode, Rational, ScalarExpr, Symbol};
