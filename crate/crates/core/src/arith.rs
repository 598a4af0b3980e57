//! Exact integer arithmetic: big integers, dense polynomials in `q`,
//! binomials, Gaussian binomials and Catalan numbers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// An integer extended by negative infinity, used for degrees of the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedInt {
    NegInfinity,
    Finite(i64),
}

impl ExtendedInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtendedInt::NegInfinity => None,
            ExtendedInt::Finite(v) => Some(v),
        }
    }

    pub fn is_neg_infinity(self) -> bool {
        matches!(self, ExtendedInt::NegInfinity)
    }

    /// `self + k`; negative infinity absorbs.
    pub fn plus(self, k: i64) -> Self {
        match self {
            ExtendedInt::NegInfinity => ExtendedInt::NegInfinity,
            ExtendedInt::Finite(v) => ExtendedInt::Finite(v + k),
        }
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        ExtendedInt::Finite(v)
    }
}

impl PartialOrd for ExtendedInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedInt::*;
        match (self, other) {
            (NegInfinity, NegInfinity) => Ordering::Equal,
            (NegInfinity, Finite(_)) => Ordering::Less,
            (Finite(_), NegInfinity) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::NegInfinity => f.write_str("-inf"),
            ExtendedInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtendedInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedInt::NegInfinity => s.serialize_str("-inf"),
            ExtendedInt::Finite(v) => s.serialize_i64(*v),
        }
    }
}

/// Parses a decimal integer with optional sign.
pub fn parse_bigint(text: &str) -> Result<BigInt> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|e| Error::parse("integer", format!("{text:?}: {e}")))
}

/// Exact JSON number for a big integer.
pub fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    let n: serde_json::Number = v
        .to_string()
        .parse()
        .expect("decimal integer is a valid JSON number");
    serde_json::Value::Number(n)
}

/// Serde adapter writing a big integer as an exact JSON number.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    bigint_to_json(v).serialize(s)
}

pub fn serialize_opt_bigint<S: Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(bigint_to_json).serialize(s)
}

pub fn serialize_bigints<S: Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(bigint_to_json))
}

/// Dense polynomial in `q` with big-integer coefficients, indexed by exponent.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 + q + ... + q^(k-1)`; zero for `k = 0`.
    pub fn q_integer(k: usize) -> Self {
        Self::from_coeffs(vec![BigInt::one(); k])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> ExtendedInt {
        match self.coeffs.len() {
            0 => ExtendedInt::NegInfinity,
            len => ExtendedInt::Finite(len as i64 - 1),
        }
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn trailing_degree(&self) -> ExtendedInt {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(ExtendedInt::NegInfinity, |i| ExtendedInt::Finite(i as i64))
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `(q - 1)^k`.
    pub fn q_minus_one_pow(k: usize) -> Self {
        let base = Self::from_i64s(&[-1, 1]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// Exponent to coefficient map, keys in increasing order.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.to_string(), bigint_to_json(c)))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let abs = c.abs();
            match exp {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if exp == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i);
                let b = rhs.coeffs.get(i);
                match (a, b) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                }
            })
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}

/// Ordinary binomial coefficient; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    // Running product stays integral: after step i it equals C(a-b+i, i).
    (1..=b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - b + i) / BigInt::from(i))
}

/// `binomial(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    let (quot, rem) = binomial(2 * n, n).div_rem(&BigInt::from(n + 1));
    debug_assert!(rem.is_zero());
    quot
}

/// Gaussian binomial coefficient as a polynomial in `q`, via
/// `[a, b] = [a-1, b-1] + q^b [a-1, b]`.
pub fn q_binomial(a: u64, b: u64) -> Result<IntPolynomial> {
    if b > a {
        return Err(Error::invalid(format!(
            "q-binomial needs a >= b, got a={a}, b={b}"
        )));
    }
    let b = b as usize;
    // row[j] holds [i, j] for the current i.
    let mut row = vec![IntPolynomial::one()];
    for i in 1..=a as usize {
        let width = i.min(b);
        let mut next = Vec::with_capacity(width + 1);
        for j in 0..=width {
            let upper = if j >= 1 { row[j - 1].clone() } else { IntPolynomial::zero() };
            let same = row.get(j).map(|p| p.shift(j)).unwrap_or_default();
            next.push(&upper + &same);
        }
        row = next;
    }
    Ok(row.swap_remove(b))
}

/// Gaussian binomial evaluated at an integer `q >= 2` through the product
/// `prod_{i<b} (q^a - q^i) / (q^b - q^i)`.
pub fn q_binomial_eval(a: u64, b: u64, q: &BigInt) -> Result<BigInt> {
    if b > a {
        return Err(Error::invalid(format!(
            "q-binomial needs a >= b, got a={a}, b={b}"
        )));
    }
    if *q < BigInt::from(2) {
        return Err(Error::invalid(format!("q-binomial needs q >= 2, got {q}")));
    }
    let pow = |e: u64| num_traits::pow(q.clone(), e as usize);
    let qa = pow(a);
    let qb = pow(b);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut qi = BigInt::one();
    for _ in 0..b {
        num *= &qa - &qi;
        den *= &qb - &qi;
        qi *= q;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

/// Converts to `u128` when it fits; used for budget arithmetic.
pub(crate) fn to_u128_saturating(v: &BigInt) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}
