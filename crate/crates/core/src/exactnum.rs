//! Exact rational scalars and the q-analog number kernel.
//!
//! [`Rational`] is the only scalar type in the crate. It is always kept in
//! canonical form (positive denominator, coprime parts) and never takes a
//! special value on division by zero: [`Rational::checked_div`] returns an
//! error instead.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Builds `numer/denom` in lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with an optional sign on either part.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseRational {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let (num, den) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("expected an integer"));
            }
            let t = t.strip_prefix('+').unwrap_or(t);
            t.parse::<BigInt>().map_err(|_| fail("expected an integer"))
        };
        let numer = parse_int(num)?;
        let denom = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(fail("zero denominator"));
        }
        Rational::new(numer, denom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(v)
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                self.0.$assign(&rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                self.0.$assign(rhs.0);
            }
        }
    };
}
binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    (1..=n).map(Rational::from).product()
}

/// `[i]_q = 1 + q + ... + q^(i-1)`. `i = 0` gives the empty sum.
pub fn q_integer(i: u32, q: &Rational) -> Rational {
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for _ in 0..i {
        sum += &term;
        term *= q;
    }
    sum
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32, q: &Rational) -> Rational {
    (1..=n).map(|i| q_integer(i, q)).product()
}

/// Smallest `i` in `1..=n` with `[i]_q = 0`, if any.
pub fn first_vanishing_q_integer(n: u32, q: &Rational) -> Option<u32> {
    (1..=n).find(|&i| q_integer(i, q).is_zero())
}

pub(crate) fn check_q(n: u32, q: &Rational) -> Result<()> {
    match first_vanishing_q_integer(n, q) {
        Some(i) => Err(Error::DegenerateQ {
            q: q.to_string(),
            index: i as usize,
        }),
        None => Ok(()),
    }
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`.
pub fn gaussian_binomial(n: u32, k: u32, q: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange {
            index: k as u64,
            min: 0,
            max: n as u64,
        });
    }
    check_q(n, q)?;
    let denom = q_factorial(k, q) * q_factorial(n - k, q);
    q_factorial(n, q).checked_div(&denom)
}

/// Galois number `G_n(q) = sum_k [n choose k]_q`.
pub fn galois_number(n: u32, q: &Rational) -> Result<Rational> {
    let mut total = Rational::zero();
    for k in 0..=n {
        total += gaussian_binomial(n, k, q)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), r("1"));
        assert_eq!(factorial(5), r("120"));
        let mut acc = 1u64;
        for i in 1..=10 {
            acc *= i;
        }
        assert_eq!(factorial(10), Rational::from(acc));
        assert_eq!(acc, 3_628_800);
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(1, &r("17/3")), r("1"));
        assert_eq!(q_integer(3, &r("2")), r("7"));
        assert_eq!(q_integer(4, &r("1")), r("4"));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0, &r("2")), r("1"));
        assert_eq!(q_factorial(3, &r("2")), r("21"));
        assert_eq!(q_factorial(4, &r("1")), r("24"));
    }

    #[test]
    fn q_factorial_at_one_is_factorial() {
        for n in 0..=30 {
            assert_eq!(q_factorial(n, &Rational::one()), factorial(n));
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 0, &r("7")).unwrap(), r("1"));
        assert_eq!(gaussian_binomial(4, 2, &r("2")).unwrap(), r("35"));
        assert_eq!(gaussian_binomial(3, 1, &r("3")).unwrap(), r("13"));
        assert!(matches!(
            gaussian_binomial(2, 3, &r("2")),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn degenerate_q_names_the_factor() {
        // [2]_{-1} = 1 - 1 = 0
        let err = gaussian_binomial(3, 1, &r("-1")).unwrap_err();
        assert_eq!(
            err,
            Error::DegenerateQ {
                q: "-1".into(),
                index: 2
            }
        );
        // q = -1 is fine as long as n < 2
        assert_eq!(gaussian_binomial(1, 1, &r("-1")).unwrap(), r("1"));
    }

    #[test]
    fn galois_numbers() {
        assert_eq!(galois_number(0, &r("5")).unwrap(), r("1"));
        assert_eq!(galois_number(2, &r("2")).unwrap(), r("5"));
        assert_eq!(galois_number(3, &r("2")).unwrap(), r("16"));
    }

    #[test]
    fn gaussian_binomial_symmetry() {
        for q in ["2", "3", "1/2", "-2/3", "5"] {
            let q = r(q);
            for n in 0..=12 {
                for k in 0..=n {
                    assert_eq!(
                        gaussian_binomial(n, k, &q).unwrap(),
                        gaussian_binomial(n, n - k, &q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn gaussian_binomial_integral_for_integer_q() {
        for q in 2..=5i64 {
            let q = Rational::from(q);
            for n in 0..=12 {
                for k in 0..=n {
                    let v = gaussian_binomial(n, k, &q).unwrap();
                    assert!(v.is_integer() && !v.is_negative() && !v.is_zero());
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(r("6/4").to_string(), "3/2");
        assert_eq!(r("-6/3").to_string(), "-2");
        assert_eq!(r("+5").to_string(), "5");
        assert_eq!(r("3/-6").to_string(), "-1/2");
        assert_eq!(r(" 0/7 ").to_string(), "0");
        for bad in ["1/0", "", "a", "1/", "/2", "1.5", "--1", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(r("1").checked_div(&r("0")), Err(Error::DivisionByZero));
        assert_eq!(r("0").recip(), Err(Error::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn serde_string_format() {
        let v = vec![r("1/2"), r("-3"), r("0")];
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/2","-3","0"]"#);
        let back: Vec<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<Rational>(r#""2/0""#).is_err());
    }

    fn canonical(x: &Rational) -> bool {
        use num_integer::Integer;
        x.denom() > &BigInt::zero() && x.numer().gcd(x.denom()).is_one()
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn canonical_form_closed(a in small_rational(), b in small_rational()) {
            prop_assert!(canonical(&(&a + &b)));
            prop_assert!(canonical(&(&a - &b)));
            prop_assert!(canonical(&(&a * &b)));
            match a.checked_div(&b) {
                Ok(q) => prop_assert!(canonical(&q)),
                Err(e) => {
                    prop_assert!(b.is_zero());
                    prop_assert_eq!(e, Error::DivisionByZero);
                }
            }
        }

        #[test]
        fn display_parse_roundtrip(a in small_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }

    #[test]
    fn canonical_form_long_chain() {
        // 1000+ mixed operations on a running accumulator
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut acc = Rational::one();
        for _ in 0..1200 {
            let x = Rational::new(rng.random_range(-9i64..=9), rng.random_range(1i64..=9)).unwrap();
            acc = match rng.random_range(0..4) {
                0 => &acc + &x,
                1 => &acc - &x,
                2 => &acc * &x,
                _ => acc.checked_div(&x).unwrap_or(acc),
            };
            assert!(canonical(&acc));
            if acc.numer().bits() > 256 {
                acc = Rational::one();
            }
        }
    }
}
