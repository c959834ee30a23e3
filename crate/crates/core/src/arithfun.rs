//! Arithmetical functions on `1..=M` with Dirichlet and unitary convolution.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Largest argument accepted by [`factorize`].
pub const MAX_FACTORIZABLE: u64 = i64::MAX as u64;

/// Anything that can be evaluated on `1..=bound`.
///
/// Convolutions evaluated pointwise (`*_conv_at`) only touch the divisors of
/// the requested argument, which is what makes lazily defined functions such
/// as [`crate::bintype::EtaView`] usable at large bounds.
pub trait ArithmeticFunction {
    fn bound(&self) -> u64;
    fn value(&self, n: u64) -> Result<Rational>;
}

/// A tabulated arithmetical function. Values outside `1..=bound` are errors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "FunctionFile", into = "FunctionFile")]
pub struct ArithFun {
    // values[n - 1] = f(n)
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct FunctionFile {
    bound: u64,
    values: Vec<Rational>,
}

impl TryFrom<FunctionFile> for ArithFun {
    type Error = Error;

    fn try_from(file: FunctionFile) -> Result<Self> {
        if file.values.len() as u64 != file.bound {
            return Err(Error::Invalid(format!(
                "function with bound {} needs {} values, found {}",
                file.bound,
                file.bound,
                file.values.len()
            )));
        }
        ArithFun::new(file.values)
    }
}

impl From<ArithFun> for FunctionFile {
    fn from(f: ArithFun) -> Self {
        FunctionFile {
            bound: f.bound(),
            values: f.values,
        }
    }
}

impl ArithFun {
    /// `values[i]` is `f(i + 1)`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("bound must be at least 1".into()));
        }
        Ok(ArithFun { values })
    }

    pub fn from_fn(bound: u64, mut f: impl FnMut(u64) -> Rational) -> Self {
        assert!(bound >= 1, "bound must be at least 1");
        ArithFun {
            values: (1..=bound).map(&mut f).collect(),
        }
    }

    pub fn try_from_fn(bound: u64, f: impl FnMut(u64) -> Result<Rational>) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Invalid("bound must be at least 1".into()));
        }
        Ok(ArithFun {
            values: (1..=bound).map(f).collect::<Result<_>>()?,
        })
    }

    pub fn zero(bound: u64) -> Self {
        Self::from_fn(bound, |_| Rational::zero())
    }

    pub fn bound(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn at(&self, n: u64) -> Result<&Rational> {
        if n == 0 || n > self.bound() {
            return Err(Error::OutOfRange {
                index: n,
                min: 1,
                max: self.bound(),
            });
        }
        Ok(&self.values[(n - 1) as usize])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    fn get(&self, n: u64) -> &Rational {
        &self.values[(n - 1) as usize]
    }
}

impl ArithmeticFunction for ArithFun {
    fn bound(&self) -> u64 {
        ArithFun::bound(self)
    }

    fn value(&self, n: u64) -> Result<Rational> {
        self.at(n).cloned()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    m: u64,
    prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `(p, e)` pairs in increasing prime order.
    pub fn prime_powers(&self) -> &[(u64, u32)] {
        &self.prime_powers
    }

    pub fn omega(&self) -> u32 {
        self.prime_powers.len() as u32
    }

    pub fn big_omega(&self) -> u32 {
        self.prime_powers.iter().map(|&(_, e)| e).sum()
    }

    /// The `2^omega` unitary divisors, i.e. products of full prime powers.
    pub fn unitary_divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.prime_powers {
            let pe = p.pow(e);
            let extra: Vec<u64> = divs.iter().map(|d| d * pe).collect();
            divs.extend(extra);
        }
        divs.sort_unstable();
        divs
    }
}

/// Trial-division factorization, supported for `1 <= m <= 2^63 - 1`.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::Invalid("cannot factorize 0".into()));
    }
    if m > MAX_FACTORIZABLE {
        return Err(Error::Unsupported(m));
    }
    let mut rest = m;
    let mut prime_powers = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        prime_powers.push((rest, 1));
    }
    Ok(Factorization { m, prime_powers })
}

/// Number of distinct prime factors.
pub fn omega(m: u64) -> Result<u32> {
    Ok(factorize(m)?.omega())
}

/// Number of prime factors counted with multiplicity.
pub fn big_omega(m: u64) -> Result<u32> {
    Ok(factorize(m)?.big_omega())
}

fn same_bound(f: &ArithFun, g: &ArithFun) -> Result<u64> {
    if f.bound() != g.bound() {
        return Err(Error::BoundMismatch {
            left: f.bound(),
            right: g.bound(),
        });
    }
    Ok(f.bound())
}

/// `(f *_D g)(n) = sum_{d | n} f(d) g(n/d)` on the common bound.
pub fn dirichlet_conv(f: &ArithFun, g: &ArithFun) -> Result<ArithFun> {
    let bound = same_bound(f, g)?;
    let mut out = vec![Rational::zero(); bound as usize];
    for d in 1..=bound {
        let fd = f.get(d);
        if fd.is_zero() {
            continue;
        }
        for e in 1..=bound / d {
            out[(d * e - 1) as usize] += fd * g.get(e);
        }
    }
    ArithFun::new(out)
}

/// Unitary convolution: the divisor sum restricted to `gcd(d, n/d) = 1`.
pub fn unitary_conv(f: &ArithFun, g: &ArithFun) -> Result<ArithFun> {
    let bound = same_bound(f, g)?;
    let mut out = vec![Rational::zero(); bound as usize];
    for d in 1..=bound {
        let fd = f.get(d);
        if fd.is_zero() {
            continue;
        }
        for e in 1..=bound / d {
            if d.gcd(&e) == 1 {
                out[(d * e - 1) as usize] += fd * g.get(e);
            }
        }
    }
    ArithFun::new(out)
}

fn check_point<F: ArithmeticFunction + ?Sized>(f: &F, n: u64) -> Result<()> {
    if n == 0 || n > f.bound() {
        return Err(Error::OutOfRange {
            index: n,
            min: 1,
            max: f.bound(),
        });
    }
    Ok(())
}

/// Dirichlet convolution evaluated at a single `n`.
pub fn dirichlet_conv_at<F, G>(f: &F, g: &G, n: u64) -> Result<Rational>
where
    F: ArithmeticFunction + ?Sized,
    G: ArithmeticFunction + ?Sized,
{
    check_point(f, n)?;
    check_point(g, n)?;
    let mut total = Rational::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            total += f.value(d)? * g.value(e)?;
            if e != d {
                total += f.value(e)? * g.value(d)?;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// Unitary convolution evaluated at a single `n`.
pub fn unitary_conv_at<F, G>(f: &F, g: &G, n: u64) -> Result<Rational>
where
    F: ArithmeticFunction + ?Sized,
    G: ArithmeticFunction + ?Sized,
{
    check_point(f, n)?;
    check_point(g, n)?;
    let mut total = Rational::zero();
    for d in factorize(n)?.unitary_divisors() {
        total += f.value(d)? * g.value(n / d)?;
    }
    Ok(total)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointwiseOp {
    Mul,
    Add,
}

pub fn pointwise(op: PointwiseOp, f: &ArithFun, g: &ArithFun) -> Result<ArithFun> {
    same_bound(f, g)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| match op {
            PointwiseOp::Mul => a * b,
            PointwiseOp::Add => a + b,
        })
        .collect();
    ArithFun::new(values)
}

pub fn scale(c: &Rational, f: &ArithFun) -> ArithFun {
    ArithFun {
        values: f.values.iter().map(|v| c * v).collect(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Builtin {
    Zeta,
    Tau,
    IdentityEps,
    NthPower(u32),
    BigOmega,
    SmallOmega,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s
            .strip_prefix("nth_power:")
            .or_else(|| s.strip_prefix("power:"))
        {
            let k = k
                .parse()
                .map_err(|_| Error::Invalid(format!("bad exponent in {s:?}")))?;
            return Ok(Builtin::NthPower(k));
        }
        match s {
            "zeta" => Ok(Builtin::Zeta),
            "tau" => Ok(Builtin::Tau),
            "eps" | "identity_eps" => Ok(Builtin::IdentityEps),
            "big_omega" => Ok(Builtin::BigOmega),
            "small_omega" | "omega" => Ok(Builtin::SmallOmega),
            _ => Err(Error::Invalid(format!("unknown builtin function {s:?}"))),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Zeta => write!(f, "zeta"),
            Builtin::Tau => write!(f, "tau"),
            Builtin::IdentityEps => write!(f, "identity_eps"),
            Builtin::NthPower(k) => write!(f, "nth_power:{k}"),
            Builtin::BigOmega => write!(f, "big_omega"),
            Builtin::SmallOmega => write!(f, "small_omega"),
        }
    }
}

/// Tabulates a named function on `1..=bound`.
pub fn builtin(name: Builtin, bound: u64) -> Result<ArithFun> {
    match name {
        Builtin::Zeta => Ok(ArithFun::from_fn(bound, |_| Rational::one())),
        Builtin::Tau => {
            let zeta = builtin(Builtin::Zeta, bound)?;
            dirichlet_conv(&zeta, &zeta)
        }
        Builtin::IdentityEps => Ok(ArithFun::from_fn(bound, |n| {
            if n == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })),
        Builtin::NthPower(k) => Ok(ArithFun::from_fn(bound, |n| Rational::from(n).pow(k))),
        Builtin::BigOmega => ArithFun::try_from_fn(bound, |n| Ok(big_omega(n)?.into())),
        Builtin::SmallOmega => ArithFun::try_from_fn(bound, |n| Ok(omega(n)?.into())),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithKind {
    CompletelyMultiplicative,
    Multiplicative,
    CompletelyAdditive,
    Additive,
}

impl FromStr for ArithKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "completely_multiplicative" => Ok(ArithKind::CompletelyMultiplicative),
            "multiplicative" => Ok(ArithKind::Multiplicative),
            "completely_additive" => Ok(ArithKind::CompletelyAdditive),
            "additive" => Ok(ArithKind::Additive),
            _ => Err(Error::Invalid(format!("unknown kind {s:?}"))),
        }
    }
}

impl ArithKind {
    fn coprime_only(self) -> bool {
        matches!(self, ArithKind::Multiplicative | ArithKind::Additive)
    }

    fn additive(self) -> bool {
        matches!(self, ArithKind::CompletelyAdditive | ArithKind::Additive)
    }
}

/// Verdict of a functional-equation sweep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub holds: bool,
    /// Smallest violating `(m, n)` in lexicographic order.
    pub witness: Option<(u64, u64)>,
    /// The function is identically zero, so the multiplicative equations hold vacuously.
    pub vacuous: bool,
}

/// Checks `f(mn) = f(m) f(n)` (or `f(m) + f(n)`) for all `m <= n` with
/// `mn <= bound`, restricted to coprime pairs for the non-complete kinds.
/// `f(1) = 1` is not required separately.
pub fn classify(f: &ArithFun, kind: ArithKind) -> Classification {
    let bound = f.bound();
    let mut witness = None;
    'outer: for m in 1..=bound {
        if m * m > bound {
            break;
        }
        for n in m..=bound / m {
            if kind.coprime_only() && m.gcd(&n) != 1 {
                continue;
            }
            let lhs = f.get(m * n);
            let rhs = if kind.additive() {
                f.get(m) + f.get(n)
            } else {
                f.get(m) * f.get(n)
            };
            if *lhs != rhs {
                witness = Some((m, n));
                break 'outer;
            }
        }
    }
    Classification {
        holds: witness.is_none(),
        witness,
        vacuous: !kind.additive() && f.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(m: u64) -> Vec<(u64, u32)> {
        factorize(m).unwrap().prime_powers().to_vec()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(pp(1), vec![]);
        assert_eq!(pp(12), vec![(2, 2), (3, 1)]);
        assert_eq!(pp(30), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(pp(97), vec![(97, 1)]);
        assert!(factorize(0).is_err());
        assert_eq!(factorize(u64::MAX), Err(Error::Unsupported(u64::MAX)));
        // 2^62 is inside the supported range
        assert_eq!(pp(1 << 62), vec![(2, 62)]);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(1).unwrap(), 0);
        assert_eq!(omega(12).unwrap(), 2);
        assert_eq!(omega(30030).unwrap(), 6);
        assert_eq!(big_omega(12).unwrap(), 3);
    }

    #[test]
    fn dirichlet_examples() {
        let zeta = builtin(Builtin::Zeta, 12).unwrap();
        let tau = dirichlet_conv(&zeta, &zeta).unwrap();
        assert_eq!(tau.at(6).unwrap(), &Rational::from(4));
        assert_eq!(tau.at(12).unwrap(), &Rational::from(6));
        let f = builtin(Builtin::NthPower(3), 12).unwrap();
        let eps = builtin(Builtin::IdentityEps, 12).unwrap();
        assert_eq!(dirichlet_conv(&f, &eps).unwrap(), f);
        assert_eq!(dirichlet_conv(&eps, &f).unwrap(), f);
    }

    #[test]
    fn unitary_examples() {
        let zeta = builtin(Builtin::Zeta, 30).unwrap();
        let u = unitary_conv(&zeta, &zeta).unwrap();
        assert_eq!(u.at(1).unwrap(), &Rational::from(1));
        assert_eq!(u.at(12).unwrap(), &Rational::from(4));
        assert_eq!(u.at(30).unwrap(), &Rational::from(8));
        for m in 1..=30 {
            let expected = Rational::from(1u64 << omega(m).unwrap());
            assert_eq!(u.at(m).unwrap(), &expected);
        }
    }

    #[test]
    fn bound_mismatch() {
        let a = ArithFun::zero(5);
        let b = ArithFun::zero(6);
        assert_eq!(
            dirichlet_conv(&a, &b),
            Err(Error::BoundMismatch { left: 5, right: 6 })
        );
        assert!(unitary_conv(&a, &b).is_err());
        assert!(pointwise(PointwiseOp::Mul, &a, &b).is_err());
    }

    #[test]
    fn out_of_range_is_error() {
        let f = builtin(Builtin::Zeta, 5).unwrap();
        assert!(f.at(0).is_err());
        assert!(f.at(6).is_err());
        assert!(dirichlet_conv_at(&f, &f, 6).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let f = builtin(Builtin::NthPower(1), 10).unwrap();
        let zeta = builtin(Builtin::Zeta, 10).unwrap();
        assert_eq!(pointwise(PointwiseOp::Mul, &f, &zeta).unwrap(), f);
        assert_eq!(
            pointwise(PointwiseOp::Add, &f, &ArithFun::zero(10)).unwrap(),
            f
        );
        let tau = builtin(Builtin::Tau, 10).unwrap();
        let ft = pointwise(PointwiseOp::Mul, &f, &tau).unwrap();
        assert_eq!(ft.at(4).unwrap(), &Rational::from(12));
    }

    #[test]
    fn builtin_examples() {
        assert_eq!(
            builtin(Builtin::Zeta, 5).unwrap().values(),
            &vec![Rational::one(); 5][..]
        );
        assert_eq!(
            builtin(Builtin::Tau, 5).unwrap().at(4).unwrap(),
            &Rational::from(3)
        );
        assert_eq!(
            builtin(Builtin::BigOmega, 12).unwrap().at(12).unwrap(),
            &Rational::from(3)
        );
        assert_eq!("power:2".parse::<Builtin>().unwrap(), Builtin::NthPower(2));
        assert_eq!("eps".parse::<Builtin>().unwrap(), Builtin::IdentityEps);
        assert!("bogus".parse::<Builtin>().is_err());
    }

    #[test]
    fn classify_examples() {
        let sq = builtin(Builtin::NthPower(2), 100).unwrap();
        assert!(classify(&sq, ArithKind::CompletelyMultiplicative).holds);

        let tau = builtin(Builtin::Tau, 100).unwrap();
        let c = classify(&tau, ArithKind::CompletelyMultiplicative);
        assert_eq!((c.holds, c.witness), (false, Some((2, 2))));
        assert!(classify(&tau, ArithKind::Multiplicative).holds);

        let big = builtin(Builtin::BigOmega, 100).unwrap();
        assert!(classify(&big, ArithKind::CompletelyAdditive).holds);
        let small = builtin(Builtin::SmallOmega, 100).unwrap();
        let c = classify(&small, ArithKind::CompletelyAdditive);
        assert_eq!((c.holds, c.witness), (false, Some((2, 2))));
        assert!(classify(&small, ArithKind::Additive).holds);
    }

    #[test]
    fn zero_function_is_vacuously_multiplicative() {
        let c = classify(&ArithFun::zero(50), ArithKind::CompletelyMultiplicative);
        assert!(c.holds && c.vacuous);
        let c = classify(
            &builtin(Builtin::Zeta, 50).unwrap(),
            ArithKind::Multiplicative,
        );
        assert!(c.holds && !c.vacuous);
    }

    #[test]
    fn lazy_and_tabulated_agree() {
        let zeta = builtin(Builtin::Zeta, 60).unwrap();
        let f = builtin(Builtin::NthPower(2), 60).unwrap();
        let d = dirichlet_conv(&f, &zeta).unwrap();
        let u = unitary_conv(&f, &zeta).unwrap();
        for n in 1..=60 {
            assert_eq!(&dirichlet_conv_at(&f, &zeta, n).unwrap(), d.at(n).unwrap());
            assert_eq!(&unitary_conv_at(&f, &zeta, n).unwrap(), u.at(n).unwrap());
        }
    }

    #[test]
    fn json_schema() {
        let f = builtin(Builtin::Tau, 4).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"bound":4,"values":["1","2","2","3"]}"#);
        assert_eq!(serde_json::from_str::<ArithFun>(&json).unwrap(), f);
        assert!(serde_json::from_str::<ArithFun>(r#"{"bound":2,"values":["1"]}"#).is_err());
        assert!(serde_json::from_str::<ArithFun>(r#"{"bound":0,"values":[]}"#).is_err());
    }

    fn arb_fun(bound: u64) -> impl Strategy<Value = ArithFun> {
        prop::collection::vec((-4i64..=4, 1i64..=3), bound as usize).prop_map(|v| {
            ArithFun::new(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n, d).unwrap())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn convolutions_commutative_associative(
            (f, g, h) in (1u64..=200).prop_flat_map(|m| (arb_fun(m), arb_fun(m), arb_fun(m)))
        ) {
            for conv in [dirichlet_conv, unitary_conv] {
                prop_assert_eq!(conv(&f, &g).unwrap(), conv(&g, &f).unwrap());
                prop_assert_eq!(
                    conv(&conv(&f, &g).unwrap(), &h).unwrap(),
                    conv(&f, &conv(&g, &h).unwrap()).unwrap()
                );
                let eps = builtin(Builtin::IdentityEps, f.bound()).unwrap();
                prop_assert_eq!(&conv(&f, &eps).unwrap(), &f);
                prop_assert_eq!(&conv(&eps, &f).unwrap(), &f);
            }
        }

        #[test]
        fn completely_multiplicative_distributes(
            k in 0u32..=3,
            (g, h) in (1u64..=120).prop_flat_map(|m| (arb_fun(m), arb_fun(m)))
        ) {
            let f = builtin(Builtin::NthPower(k), g.bound()).unwrap();
            let lhs = pointwise(PointwiseOp::Mul, &f, &dirichlet_conv(&g, &h).unwrap()).unwrap();
            let rhs = dirichlet_conv(
                &pointwise(PointwiseOp::Mul, &f, &g).unwrap(),
                &pointwise(PointwiseOp::Mul, &f, &h).unwrap(),
            ).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
