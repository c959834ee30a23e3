//! Exact convolution algebras on truncated power series and arithmetical
//! functions, with checkers for the Lambek-Carlitz-type characterizations of
//! exponential-type series and completely multiplicative functions.
//!
//! All scalars are exact rationals ([`Rational`]); all series are truncated
//! ([`TruncatedSeries`]) and all functions are tabulated on a finite range
//! ([`ArithFun`], [`BinomialArithFun`]). Nothing is silently zero-extended.

pub mod arithfun;
pub mod bintype;
pub mod characterize;
pub mod error;
pub mod exactnum;
pub mod oracle;
pub mod sampling;
pub mod series;

pub use arithfun::{ArithFun, ArithmeticFunction, Builtin, Classification, Factorization};
pub use bintype::{BinomialArithFun, BinomialType, Family};
pub use characterize::{CheckReport, SuiteOptions, SuiteVerdict, TrialConfig, Variant, Witness};
pub use error::{Error, Result};
pub use exactnum::Rational;
pub use series::TruncatedSeries;
