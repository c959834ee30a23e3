//! Binomial types `B(0..=N)`, their convolution algebra on `0..=N`, and the
//! embeddings of power series into arithmetical functions.
//!
//! A binomial type is a parameter table with `B(0) = B(1) = 1` and no zero
//! entries. From it come the ℓ-binomials `B(m) / (B(k) B(m-k))`, the numbers
//! `t(n) = sum_k (n k)_ℓ`, the weighted convolution
//! `(f * g)(m) = sum_k (m k)_ℓ f(k) g(m-k)` and the isomorphism
//! `eta_M(F)(m) = a_m B(m)` from truncated series onto that algebra.
//!
//! Custom tables are accepted whether or not they arise from an actual
//! combinatorial structure; everything downstream is purely algebraic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arithfun::{self, ArithFun, ArithmeticFunction, Classification};
use crate::error::{Error, Result};
use crate::exactnum::{self, Rational};
use crate::series::TruncatedSeries;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    /// `B(n) = n!`
    Factorial,
    /// `B(n) = 1`
    Ones,
    /// `B(n) = [n]_q!`
    QFactorial(Rational),
    Custom,
}

impl FromStr for Family {
    type Err = Error;

    /// `factorial`, `ones` or `q:<rational>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(q) = s.strip_prefix("q:") {
            return Ok(Family::QFactorial(q.parse()?));
        }
        match s {
            "factorial" => Ok(Family::Factorial),
            "ones" => Ok(Family::Ones),
            "custom" => Err(Error::InvalidBinomialType(
                "custom types need an explicit table".into(),
            )),
            _ => Err(Error::InvalidBinomialType(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Factorial => write!(f, "factorial"),
            Family::Ones => write!(f, "ones"),
            Family::QFactorial(q) => write!(f, "q:{q}"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BinomialTypeFile", into = "BinomialTypeFile")]
pub struct BinomialType {
    name: String,
    family: Family,
    table: Vec<Rational>,
}

/// `{"family": ..., "q": "2", "N": 16, "B": [...]}`; `q` only for
/// `q_factorial`, `B` only for `custom`.
#[derive(Serialize, Deserialize)]
struct BinomialTypeFile {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<Rational>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<Rational>>,
}

impl TryFrom<BinomialTypeFile> for BinomialType {
    type Error = Error;

    fn try_from(file: BinomialTypeFile) -> Result<Self> {
        let need_n = || {
            file.n
                .ok_or_else(|| Error::InvalidBinomialType("missing \"N\"".into()))
        };
        let unexpected_table = || {
            if file.b.is_some() {
                Err(Error::InvalidBinomialType(
                    "\"B\" is only allowed for the custom family".into(),
                ))
            } else {
                Ok(())
            }
        };
        match file.family.as_str() {
            "factorial" => {
                unexpected_table()?;
                BinomialType::factorial(need_n()?)
            }
            "ones" => {
                unexpected_table()?;
                BinomialType::ones(need_n()?)
            }
            "q_factorial" => {
                unexpected_table()?;
                let q = file
                    .q
                    .clone()
                    .ok_or_else(|| Error::InvalidBinomialType("q_factorial needs \"q\"".into()))?;
                BinomialType::q_factorial(q, need_n()?)
            }
            "custom" => {
                let table = file.b.ok_or_else(|| {
                    Error::InvalidBinomialType("custom family needs \"B\"".into())
                })?;
                if let Some(n) = file.n {
                    if n + 1 != table.len() {
                        return Err(Error::InvalidBinomialType(format!(
                            "N = {n} but B has {} entries",
                            table.len()
                        )));
                    }
                }
                BinomialType::custom("custom", table)
            }
            other => Err(Error::InvalidBinomialType(format!(
                "unknown family {other:?}"
            ))),
        }
    }
}

impl From<BinomialType> for BinomialTypeFile {
    fn from(b: BinomialType) -> Self {
        let n = Some(b.max_index());
        match b.family {
            Family::Factorial => BinomialTypeFile {
                family: "factorial".into(),
                q: None,
                n,
                b: None,
            },
            Family::Ones => BinomialTypeFile {
                family: "ones".into(),
                q: None,
                n,
                b: None,
            },
            Family::QFactorial(q) => BinomialTypeFile {
                family: "q_factorial".into(),
                q: Some(q),
                n,
                b: None,
            },
            Family::Custom => BinomialTypeFile {
                family: "custom".into(),
                q: None,
                n,
                b: Some(b.table),
            },
        }
    }
}

impl BinomialType {
    /// Tabulates a named family on `0..=n` (`n >= 1`).
    pub fn make(family: Family, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidBinomialType("N must be at least 1".into()));
        }
        let table: Vec<Rational> = match &family {
            Family::Factorial => (0..=n).map(|i| exactnum::factorial(i as u32)).collect(),
            Family::Ones => vec![Rational::one(); n + 1],
            Family::QFactorial(q) => {
                exactnum::check_q(n as u32, q)
                    .map_err(|e| Error::InvalidBinomialType(e.to_string()))?;
                (0..=n)
                    .map(|i| exactnum::q_factorial(i as u32, q))
                    .collect()
            }
            Family::Custom => {
                return Err(Error::InvalidBinomialType(
                    "custom types need an explicit table".into(),
                ))
            }
        };
        Ok(BinomialType {
            name: family.to_string(),
            family,
            table,
        })
    }

    pub fn factorial(n: usize) -> Result<Self> {
        Self::make(Family::Factorial, n)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::make(Family::Ones, n)
    }

    pub fn q_factorial(q: Rational, n: usize) -> Result<Self> {
        Self::make(Family::QFactorial(q), n)
    }

    /// An explicit table `B(0..=N)`; requires `B(0) = B(1) = 1` and no zeros.
    pub fn custom(name: impl Into<String>, table: Vec<Rational>) -> Result<Self> {
        if table.len() < 2 {
            return Err(Error::InvalidBinomialType(
                "table must cover at least B(0) and B(1)".into(),
            ));
        }
        for (i, v) in table.iter().enumerate().take(2) {
            if !v.is_one() {
                return Err(Error::InvalidBinomialType(format!(
                    "B({i}) must be 1, found {v}"
                )));
            }
        }
        if let Some(i) = table.iter().position(Rational::is_zero) {
            return Err(Error::InvalidBinomialType(format!("B({i}) is zero")));
        }
        Ok(BinomialType {
            name: name.into(),
            family: Family::Custom,
            table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    /// Largest tabulated index `N`.
    pub fn max_index(&self) -> usize {
        self.table.len() - 1
    }

    pub fn b(&self, n: usize) -> Result<&Rational> {
        self.table.get(n).ok_or(Error::OutOfRange {
            index: n as u64,
            min: 0,
            max: self.max_index() as u64,
        })
    }

    pub(crate) fn require_order(&self, order: usize) -> Result<()> {
        if order > self.max_index() {
            return Err(Error::InvalidBinomialType(format!(
                "B is tabulated to {} but order {order} is required",
                self.max_index()
            )));
        }
        Ok(())
    }

    /// `(m k)_ℓ = B(m) / (B(k) B(m-k))`.
    pub fn ell_binomial(&self, m: usize, k: usize) -> Result<Rational> {
        if k > m {
            return Err(Error::OutOfRange {
                index: k as u64,
                min: 0,
                max: m as u64,
            });
        }
        let bm = self.b(m)?;
        bm.checked_div(&(self.b(k)? * self.b(m - k)?))
    }

    /// `t(n) = sum_{k=0}^n (n k)_ℓ`.
    pub fn t_number(&self, n: usize) -> Result<Rational> {
        (0..=n).map(|k| self.ell_binomial(n, k)).sum()
    }
}

/// Arithmetical function on `0..=N`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "BinomialFunctionFile", into = "BinomialFunctionFile")]
pub struct BinomialArithFun {
    values: Vec<Rational>,
}

/// `{"bound": N, "values": ["f0", ..., "fN"]}`.
#[derive(Serialize, Deserialize)]
struct BinomialFunctionFile {
    bound: usize,
    values: Vec<Rational>,
}

impl TryFrom<BinomialFunctionFile> for BinomialArithFun {
    type Error = Error;

    fn try_from(file: BinomialFunctionFile) -> Result<Self> {
        if file.values.len() != file.bound + 1 {
            return Err(Error::Invalid(format!(
                "function on 0..={} needs {} values, found {}",
                file.bound,
                file.bound + 1,
                file.values.len()
            )));
        }
        BinomialArithFun::new(file.values)
    }
}

impl From<BinomialArithFun> for BinomialFunctionFile {
    fn from(f: BinomialArithFun) -> Self {
        BinomialFunctionFile {
            bound: f.bound(),
            values: f.values,
        }
    }
}

impl BinomialArithFun {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("needs at least f(0)".into()));
        }
        Ok(BinomialArithFun { values })
    }

    pub fn from_fn(bound: usize, f: impl FnMut(usize) -> Rational) -> Self {
        BinomialArithFun {
            values: (0..=bound).map(f).collect(),
        }
    }

    /// `1` at 0, `0` elsewhere.
    pub fn delta(bound: usize) -> Self {
        Self::from_fn(bound, |m| {
            if m == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, m: usize) -> Result<&Rational> {
        self.values.get(m).ok_or(Error::OutOfRange {
            index: m as u64,
            min: 0,
            max: self.bound() as u64,
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn pointwise_mul(&self, other: &BinomialArithFun) -> Result<BinomialArithFun> {
        same_bound(self, other)?;
        Ok(BinomialArithFun {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

fn same_bound(f: &BinomialArithFun, g: &BinomialArithFun) -> Result<usize> {
    if f.bound() != g.bound() {
        return Err(Error::BoundMismatch {
            left: f.bound() as u64,
            right: g.bound() as u64,
        });
    }
    Ok(f.bound())
}

/// `(f * g)(m) = sum_k (m k)_ℓ f(k) g(m-k)`.
pub fn m_convolution(
    b: &BinomialType,
    f: &BinomialArithFun,
    g: &BinomialArithFun,
) -> Result<BinomialArithFun> {
    let bound = same_bound(f, g)?;
    b.require_order(bound)?;
    let values = (0..=bound)
        .map(|m| {
            (0..=m)
                .map(|k| Ok(b.ell_binomial(m, k)? * &f.values[k] * &g.values[m - k]))
                .sum::<Result<Rational>>()
        })
        .collect::<Result<Vec<_>>>()?;
    BinomialArithFun::new(values)
}

/// `eta_M(F)(m) = a_m B(m)`.
pub fn eta_m(b: &BinomialType, f: &TruncatedSeries) -> Result<BinomialArithFun> {
    b.require_order(f.order())?;
    BinomialArithFun::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(m, a)| Ok(a * b.b(m)?))
            .collect::<Result<_>>()?,
    )
}

/// Inverse of [`eta_m`]: `a_m = f(m) / B(m)`.
pub fn eta_m_inv(b: &BinomialType, f: &BinomialArithFun) -> Result<TruncatedSeries> {
    b.require_order(f.bound())?;
    TruncatedSeries::try_from_fn(f.bound(), |m| f.values[m].checked_div(b.b(m)?))
}

/// Largest `omega(m)` over `1 <= m <= bound`: the number of leading primes
/// whose product stays within `bound`.
pub fn max_omega_upto(bound: u64) -> usize {
    let mut product = 1u64;
    let mut count = 0;
    let mut p = 2u64;
    loop {
        if is_small_prime(p) {
            match product.checked_mul(p) {
                Some(next) if next <= bound => {
                    product = next;
                    count += 1;
                }
                _ => return count,
            }
        }
        p += 1;
    }
}

fn is_small_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `omega(m)! a_{omega(m)}`, the value of `eta(F)` at any `m` with the given
/// number of distinct prime factors.
pub fn eta_value_for_omega(f: &TruncatedSeries, omega: usize) -> Result<Rational> {
    Ok(exactnum::factorial(omega as u32) * f.coeff(omega)?)
}

/// `eta(F)` viewed lazily on `1..=bound`; values are computed on demand.
#[derive(Clone, Copy, Debug)]
pub struct EtaView<'a> {
    series: &'a TruncatedSeries,
    bound: u64,
}

impl<'a> EtaView<'a> {
    pub fn new(series: &'a TruncatedSeries, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Invalid("bound must be at least 1".into()));
        }
        let required = max_omega_upto(bound);
        if series.order() < required {
            return Err(Error::OrderTooSmall {
                order: series.order(),
                required,
                reason: format!("some m <= {bound} has omega(m) = {required}"),
            });
        }
        Ok(EtaView { series, bound })
    }
}

impl ArithmeticFunction for EtaView<'_> {
    fn bound(&self) -> u64 {
        self.bound
    }

    fn value(&self, n: u64) -> Result<Rational> {
        if n == 0 || n > self.bound {
            return Err(Error::OutOfRange {
                index: n,
                min: 1,
                max: self.bound,
            });
        }
        eta_value_for_omega(self.series, arithfun::omega(n)? as usize)
    }
}

/// `eta(F)(m) = omega(m)! a_{omega(m)}` tabulated on `1..=bound`.
pub fn eta(f: &TruncatedSeries, bound: u64) -> Result<ArithFun> {
    let view = EtaView::new(f, bound)?;
    ArithFun::try_from_fn(bound, |m| view.value(m))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BinomialKind {
    Multiplicative,
    Additive,
}

impl FromStr for BinomialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binomial_multiplicative" => Ok(BinomialKind::Multiplicative),
            "binomial_additive" => Ok(BinomialKind::Additive),
            _ => Err(Error::Invalid(format!("unknown binomial kind {s:?}"))),
        }
    }
}

/// Checks `f(m+n) = f(m) f(n)` (or `f(m) + f(n)`) for all `0 <= m <= n`
/// with `m + n <= bound`.
pub fn binomial_classify(f: &BinomialArithFun, kind: BinomialKind) -> Classification {
    let bound = f.bound();
    let v = &f.values;
    let mut witness = None;
    'outer: for m in 0..=bound / 2 {
        for n in m..=bound - m {
            let rhs = match kind {
                BinomialKind::Multiplicative => &v[m] * &v[n],
                BinomialKind::Additive => &v[m] + &v[n],
            };
            if v[m + n] != rhs {
                witness = Some((m as u64, n as u64));
                break 'outer;
            }
        }
    }
    Classification {
        holds: witness.is_none(),
        witness,
        vacuous: kind == BinomialKind::Multiplicative && v.iter().all(Rational::is_zero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfun::{builtin, unitary_conv, unitary_conv_at, Builtin};
    use crate::series::cauchy_mul;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn exp(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |n| exactnum::factorial(n as u32).recip().unwrap())
    }

    #[test]
    fn make_examples() {
        assert_eq!(
            BinomialType::factorial(5).unwrap().table(),
            &ints(&[1, 1, 2, 6, 24, 120])[..]
        );
        assert_eq!(BinomialType::ones(4).unwrap().table(), &ints(&[1; 5])[..]);
        assert_eq!(
            BinomialType::q_factorial(r("2"), 3).unwrap().table(),
            &ints(&[1, 1, 3, 21])[..]
        );
    }

    #[test]
    fn construction_errors() {
        assert!(BinomialType::factorial(0).is_err());
        let err = BinomialType::q_factorial(r("-1"), 4).unwrap_err();
        assert!(err.to_string().contains("[2]_q"), "{err}");
        assert!(BinomialType::custom("x", ints(&[2, 1, 3]))
            .unwrap_err()
            .to_string()
            .contains("B(0)"));
        assert!(BinomialType::custom("x", ints(&[1, 2, 3]))
            .unwrap_err()
            .to_string()
            .contains("B(1)"));
        assert!(BinomialType::custom("x", ints(&[1, 1, 0, 4]))
            .unwrap_err()
            .to_string()
            .contains("B(2)"));
        assert!(BinomialType::custom("x", ints(&[1, 1, 5, 4])).is_ok());
    }

    #[test]
    fn ell_binomial_examples() {
        let fact = BinomialType::factorial(6).unwrap();
        assert_eq!(fact.ell_binomial(4, 2).unwrap(), r("6"));
        let ones = BinomialType::ones(6).unwrap();
        for m in 0..=6 {
            for k in 0..=m {
                assert_eq!(ones.ell_binomial(m, k).unwrap(), r("1"));
            }
        }
        let q2 = BinomialType::q_factorial(r("2"), 6).unwrap();
        assert_eq!(q2.ell_binomial(4, 2).unwrap(), r("35"));
        assert_eq!(
            q2.ell_binomial(4, 2).unwrap(),
            exactnum::gaussian_binomial(4, 2, &r("2")).unwrap()
        );
        assert!(fact.ell_binomial(7, 2).is_err());
        assert!(fact.ell_binomial(2, 3).is_err());
    }

    #[test]
    fn ell_binomial_symmetry_and_integrality() {
        for b in [
            BinomialType::factorial(12).unwrap(),
            BinomialType::q_factorial(r("2"), 12).unwrap(),
            BinomialType::q_factorial(r("3"), 12).unwrap(),
            BinomialType::q_factorial(r("2/5"), 12).unwrap(),
        ] {
            let integral = !matches!(b.family(), Family::QFactorial(q) if !q.is_integer());
            for m in 0..=12 {
                for k in 0..=m {
                    let v = b.ell_binomial(m, k).unwrap();
                    assert_eq!(v, b.ell_binomial(m, m - k).unwrap());
                    if integral {
                        assert!(v.is_integer() && !v.is_negative() && !v.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn t_number_examples() {
        assert_eq!(
            BinomialType::factorial(5).unwrap().t_number(5).unwrap(),
            r("32")
        );
        assert_eq!(BinomialType::ones(4).unwrap().t_number(4).unwrap(), r("5"));
        let q2 = BinomialType::q_factorial(r("2"), 3).unwrap();
        assert_eq!(q2.t_number(3).unwrap(), r("16"));
        assert_eq!(
            q2.t_number(3).unwrap(),
            exactnum::galois_number(3, &r("2")).unwrap()
        );
        for n in 0..=16 {
            let b = BinomialType::factorial(16).unwrap();
            assert_eq!(b.t_number(n).unwrap(), Rational::from(1u64 << n));
        }
    }

    #[test]
    fn m_convolution_examples() {
        let fact = BinomialType::factorial(8).unwrap();
        let f = BinomialArithFun::new(ints(&[3, -1, 4, 1, -5, 9, 2, 6, 5])).unwrap();
        let delta = BinomialArithFun::delta(8);
        assert_eq!(m_convolution(&fact, &delta, &f).unwrap(), f);
        assert_eq!(m_convolution(&fact, &f, &delta).unwrap(), f);

        let all_ones = BinomialArithFun::from_fn(8, |_| Rational::one());
        let c = m_convolution(&fact, &all_ones, &all_ones).unwrap();
        for m in 0..=8 {
            assert_eq!(c.at(m).unwrap(), &Rational::from(1u64 << m));
        }

        let ones = BinomialType::ones(8).unwrap();
        let g = BinomialArithFun::new(ints(&[1, 2, 0, -1, 3, 1, 1, 0, 2])).unwrap();
        let c = m_convolution(&ones, &f, &g).unwrap();
        for m in 0..=8 {
            let cauchy: Rational = (0..=m).map(|k| &f.values()[k] * &g.values()[m - k]).sum();
            assert_eq!(c.at(m).unwrap(), &cauchy);
        }

        let short = BinomialArithFun::delta(5);
        assert!(matches!(
            m_convolution(&fact, &f, &short),
            Err(Error::BoundMismatch { .. })
        ));
    }

    #[test]
    fn eta_m_examples() {
        for b in [
            BinomialType::factorial(10).unwrap(),
            BinomialType::ones(10).unwrap(),
            BinomialType::q_factorial(r("3"), 10).unwrap(),
        ] {
            let inv = TruncatedSeries::reciprocal_weights(&b, 10).unwrap();
            let all_ones = BinomialArithFun::from_fn(10, |_| Rational::one());
            assert_eq!(eta_m(&b, &inv).unwrap(), all_ones);
            assert_eq!(eta_m_inv(&b, &all_ones).unwrap(), inv);
            assert_eq!(
                eta_m(&b, &TruncatedSeries::zero(10)).unwrap(),
                BinomialArithFun::from_fn(10, |_| Rational::zero())
            );
            assert_eq!(
                eta_m_inv(&b, &BinomialArithFun::from_fn(10, |_| Rational::zero())).unwrap(),
                TruncatedSeries::zero(10)
            );
        }
        let fact = BinomialType::factorial(10).unwrap();
        assert_eq!(
            eta_m(&fact, &exp(10)).unwrap(),
            BinomialArithFun::from_fn(10, |_| Rational::one())
        );
        assert!(eta_m(&fact, &exp(11)).is_err());
    }

    #[test]
    fn eta_examples() {
        let zeta = builtin(Builtin::Zeta, 210).unwrap();
        assert_eq!(eta(&exp(4), 210).unwrap(), zeta);

        let f = TruncatedSeries::new(vec![r("7/3"), r("1"), r("5"), r("2")]).unwrap();
        let e = eta(&f, 12).unwrap();
        assert_eq!(e.at(1).unwrap(), &r("7/3"));
        assert_eq!(e.at(12).unwrap(), &r("10"));

        // 30 = 2*3*5 needs a_3
        let err = eta(&f.truncate(2).unwrap(), 30).unwrap_err();
        assert!(
            matches!(err, Error::OrderTooSmall { required: 3, .. }),
            "{err}"
        );
        assert!(eta(&f.truncate(2).unwrap(), 29).is_ok());
    }

    #[test]
    fn max_omega_values() {
        assert_eq!(max_omega_upto(1), 0);
        assert_eq!(max_omega_upto(5), 1);
        assert_eq!(max_omega_upto(6), 2);
        assert_eq!(max_omega_upto(30029), 5);
        assert_eq!(max_omega_upto(30030), 6);
        assert_eq!(max_omega_upto(u64::MAX), 15);
    }

    #[test]
    fn binomial_classify_examples() {
        let c = r("3/2");
        let pow = BinomialArithFun::from_fn(10, |m| c.pow(m as u32));
        assert!(binomial_classify(&pow, BinomialKind::Multiplicative).holds);
        let lin = BinomialArithFun::from_fn(10, |m| Rational::from(m) * &c);
        assert!(binomial_classify(&lin, BinomialKind::Additive).holds);
        let fact = BinomialType::factorial(10).unwrap();
        let bf = BinomialArithFun::new(fact.table().to_vec()).unwrap();
        let v = binomial_classify(&bf, BinomialKind::Multiplicative);
        assert_eq!((v.holds, v.witness), (false, Some((1, 1))));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-6i64..=6, 1i64..=4), order + 1).prop_map(|v| {
            TruncatedSeries::new(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n, d).unwrap())
                    .collect(),
            )
            .unwrap()
        })
    }

    fn families() -> impl Strategy<Value = BinomialType> {
        prop_oneof![
            Just(BinomialType::factorial(10).unwrap()),
            Just(BinomialType::ones(10).unwrap()),
            Just(BinomialType::q_factorial(r("2"), 10).unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eta_m_is_homomorphism(b in families(), f in arb_series(10), g in arb_series(10)) {
            let lhs = eta_m(&b, &cauchy_mul(&f, &g)).unwrap();
            let rhs = m_convolution(&b, &eta_m(&b, &f).unwrap(), &eta_m(&b, &g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(eta_m_inv(&b, &eta_m(&b, &f).unwrap()).unwrap(), f.clone());
            let ef = eta_m(&b, &f).unwrap();
            prop_assert_eq!(eta_m(&b, &eta_m_inv(&b, &ef).unwrap()).unwrap(), ef);
        }

        #[test]
        fn odot_pulls_back_to_pointwise(b in families(), f in arb_series(10), g in arb_series(10)) {
            let lhs = eta_m(&b, &crate::series::odot(&b, &f, &g).unwrap()).unwrap();
            let rhs = eta_m(&b, &f).unwrap().pointwise_mul(&eta_m(&b, &g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eta_is_unitary_homomorphism(f in arb_series(5), g in arb_series(5), m in 1u64..=2310) {
            let fg = cauchy_mul(&f, &g);
            let prod = EtaView::new(&fg, 2310).unwrap();
            let ef = EtaView::new(&f, 2310).unwrap();
            let eg = EtaView::new(&g, 2310).unwrap();
            prop_assert_eq!(prod.value(m).unwrap(), unitary_conv_at(&ef, &eg, m).unwrap());
        }
    }

    #[test]
    fn eta_tabulated_homomorphism() {
        let f = TruncatedSeries::new(vec![r("2"), r("-1/3"), r("4"), r("1/2")]).unwrap();
        let g = TruncatedSeries::new(vec![r("1/5"), r("3"), r("-2"), r("7")]).unwrap();
        let bound = 200;
        let lhs = eta(&cauchy_mul(&f, &g), bound).unwrap();
        let rhs = unitary_conv(&eta(&f, bound).unwrap(), &eta(&g, bound).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_schema() {
        let q = BinomialType::q_factorial(r("2"), 4).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"family":"q_factorial","q":"2","N":4}"#);
        assert_eq!(serde_json::from_str::<BinomialType>(&json).unwrap(), q);

        let c: BinomialType =
            serde_json::from_str(r#"{"family":"custom","B":["1","1","5","4"]}"#).unwrap();
        assert_eq!(c.max_index(), 3);
        assert!(
            serde_json::from_str::<BinomialType>(r#"{"family":"custom","N":5,"B":["1","1"]}"#)
                .is_err()
        );
        assert!(
            serde_json::from_str::<BinomialType>(r#"{"family":"q_factorial","N":5,"q":"-1"}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<BinomialType>(r#"{"family":"factorial"}"#).is_err());

        let f = BinomialArithFun::new(ints(&[1, 2, 3])).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"bound":2,"values":["1","2","3"]}"#);
        assert_eq!(serde_json::from_str::<BinomialArithFun>(&json).unwrap(), f);
    }
}
