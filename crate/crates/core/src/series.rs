//! Dense truncated formal power series over [`Rational`].
//!
//! A series of order `N` stores `a_0..=a_N`. Binary operations work to the
//! smaller of the two orders and the result carries that order; nothing is
//! ever padded with zeros.

use serde::{Deserialize, Serialize};

use crate::bintype::BinomialType;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SeriesFile", into = "SeriesFile")]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

/// Wire form: `{"order": N, "coeffs": ["a0", ...]}` with exactly `N+1` entries.
#[derive(Serialize, Deserialize)]
struct SeriesFile {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TryFrom<SeriesFile> for TruncatedSeries {
    type Error = Error;

    fn try_from(file: SeriesFile) -> Result<Self> {
        if file.coeffs.len() != file.order + 1 {
            return Err(Error::Invalid(format!(
                "series of order {} needs {} coefficients, found {}",
                file.order,
                file.order + 1,
                file.coeffs.len()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: file.coeffs,
        })
    }
}

impl From<TruncatedSeries> for SeriesFile {
    fn from(s: TruncatedSeries) -> Self {
        SeriesFile {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

/// Outcome of [`equals_to_order`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Agreement {
    Equal,
    MismatchAt(usize),
}

impl Agreement {
    pub fn is_equal(self) -> bool {
        self == Agreement::Equal
    }
}

impl TruncatedSeries {
    /// Takes `a_0..=a_N`; the vector must be non-empty.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("a series needs at least a_0".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn try_from_fn(order: usize, f: impl FnMut(usize) -> Result<Rational>) -> Result<Self> {
        Ok(TruncatedSeries {
            coeffs: (0..=order).map(f).collect::<Result<_>>()?,
        })
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `sum_n X^n`.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::one())
    }

    /// `sum_n X^n / B(n)`, the preimage of the all-ones function under `eta_M`.
    pub fn reciprocal_weights(b: &BinomialType, order: usize) -> Result<Self> {
        Self::try_from_fn(order, |n| b.b(n)?.recip())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n as u64,
            min: 0,
            max: self.order() as u64,
        })
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooSmall {
                order: self.order(),
                required: order,
                reason: "cannot extend a truncated series".into(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Replaces `a_n`.
    pub fn with_coeff(&self, n: usize, value: Rational) -> Result<Self> {
        self.coeff(n)?;
        let mut out = self.clone();
        out.coeffs[n] = value;
        Ok(out)
    }

    /// `a_n -> w(n) a_n`.
    pub fn weighted(&self, mut w: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| w(n) * a)
                .collect(),
        }
    }
}

fn common_order(f: &TruncatedSeries, g: &TruncatedSeries) -> usize {
    f.order().min(g.order())
}

pub fn add(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::from_fn(common_order(f, g), |n| &f.coeffs[n] + &g.coeffs[n])
}

pub fn sub(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::from_fn(common_order(f, g), |n| &f.coeffs[n] - &g.coeffs[n])
}

pub fn scale(c: &Rational, f: &TruncatedSeries) -> TruncatedSeries {
    f.weighted(|_| c.clone())
}

/// Cauchy product `c_n = sum_{k<=n} a_k b_{n-k}`.
pub fn cauchy_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries::from_fn(common_order(f, g), |n| {
        (0..=n).map(|k| &f.coeffs[k] * &g.coeffs[n - k]).sum()
    })
}

/// B-weighted Hadamard product: coefficient `n` is `B(n) a_n b_n`.
pub fn odot(b: &BinomialType, f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = common_order(f, g);
    b.require_order(order)?;
    TruncatedSeries::try_from_fn(order, |n| Ok(b.b(n)? * &f.coeffs[n] * &g.coeffs[n]))
}

/// Compares `a_n` and `b_n` for `n <= up_to`, reporting the smallest mismatch.
pub fn equals_to_order(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    up_to: usize,
) -> Result<Agreement> {
    let available = common_order(f, g);
    if up_to > available {
        return Err(Error::OrderTooSmall {
            order: available,
            required: up_to,
            reason: "comparison beyond the recorded order".into(),
        });
    }
    Ok((0..=up_to)
        .find(|&n| f.coeffs[n] != g.coeffs[n])
        .map_or(Agreement::Equal, Agreement::MismatchAt))
}
