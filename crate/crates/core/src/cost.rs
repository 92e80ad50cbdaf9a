//! Exact cost values: arbitrary-precision rationals plus a `+inf` sentinel.
//!
//! `+inf` only ever marks a forbidden co-selection; it is never negated and
//! absorbs every addition.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CopicError;

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Rational),
    Inf,
}

impl Cost {
    pub fn zero() -> Self {
        Cost::Finite(Rational::zero())
    }

    pub fn int(v: i64) -> Self {
        Cost::Finite(Rational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Cost::Finite(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Cost::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cost::Finite(v) if v.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Cost::Finite(v) if v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Cost::Finite(v) => v.is_positive(),
            Cost::Inf => true,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Cost::Finite(v) if v.is_integer())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Inf => None,
        }
    }

    /// Unwraps a finite value; panics on `+inf`. Callers check finiteness first.
    pub fn value(&self) -> &Rational {
        self.finite().expect("finite cost expected")
    }

    pub fn scale(&self, factor: &Rational) -> Cost {
        match self {
            Cost::Finite(v) => Cost::Finite(v * factor),
            Cost::Inf => {
                assert!(!factor.is_negative(), "cannot negate +inf");
                if factor.is_zero() {
                    Cost::zero()
                } else {
                    Cost::Inf
                }
            }
        }
    }

    pub fn min(self, other: Cost) -> Cost {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Lossy conversion, only used for display of approximation ratios.
    pub fn to_f64(&self) -> f64 {
        match self {
            Cost::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Cost::Inf => f64::INFINITY,
        }
    }
}

impl Default for Cost {
    fn default() -> Self {
        Cost::zero()
    }
}

impl From<i64> for Cost {
    fn from(v: i64) -> Self {
        Cost::int(v)
    }
}

impl From<Rational> for Cost {
    fn from(v: Rational) -> Self {
        Cost::Finite(v)
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Inf) => Ordering::Less,
            (Cost::Inf, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Inf, Cost::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cost {
    type Output = Cost;
    fn add(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Inf,
        }
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        &self + &rhs
    }
}

impl Add<&Cost> for Cost {
    type Output = Cost;
    fn add(self, rhs: &Cost) -> Cost {
        &self + rhs
    }
}

impl AddAssign<&Cost> for Cost {
    fn add_assign(&mut self, rhs: &Cost) {
        match (&mut *self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => *a += b,
            _ => *self = Cost::Inf,
        }
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self += &rhs;
    }
}

/// Subtraction is only defined between finite values.
impl Sub for &Cost {
    type Output = Cost;
    fn sub(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a - b),
            (Cost::Inf, Cost::Finite(_)) => Cost::Inf,
            _ => panic!("subtracting +inf is undefined"),
        }
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        &self - &rhs
    }
}

impl Neg for &Cost {
    type Output = Cost;
    fn neg(self) -> Cost {
        match self {
            Cost::Finite(a) => Cost::Finite(-a),
            Cost::Inf => panic!("+inf has no negation"),
        }
    }
}

impl Neg for Cost {
    type Output = Cost;
    fn neg(self) -> Cost {
        -&self
    }
}

impl Mul<&Rational> for &Cost {
    type Output = Cost;
    fn mul(self, rhs: &Rational) -> Cost {
        self.scale(rhs)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        let mut acc = Cost::zero();
        for c in iter {
            acc += &c;
        }
        acc
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        let mut acc = Cost::zero();
        for c in iter {
            acc += c;
        }
        acc
    }
}

/// Accepts `inf`/`+inf`, decimals such as `-3.5`, `2`, `.25`, and fractions `p/q`.
impl FromStr for Cost {
    type Err = CopicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CopicError::ParseCost(s.to_string());
        let t = s.trim();
        if t == "inf" || t == "+inf" {
            return Ok(Cost::Inf);
        }
        if let Some((n, d)) = t.split_once('/') {
            let num: BigInt = n.trim().parse().map_err(|_| err())?;
            let den: BigInt = d.trim().parse().map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            return Ok(Cost::Finite(Rational::new(num, den)));
        }
        let (negative, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(err());
        }
        let mut all = String::with_capacity(int_part.len() + frac_part.len());
        all.push_str(int_part);
        all.push_str(frac_part);
        let num: BigInt = if all.is_empty() {
            BigInt::zero()
        } else {
            all.parse().map_err(|_| err())?
        };
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let mut v = Rational::new(num, den);
        if negative {
            v = -v;
        }
        Ok(Cost::Finite(v))
    }
}

/// Terminating decimals print in decimal form, everything else as `p/q`.
impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Inf => write!(f, "inf"),
            Cost::Finite(v) => write!(f, "{}", format_rational(v)),
        }
    }
}

fn format_rational(v: &Rational) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    let den = v.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut rest = den.clone();
    let mut twos = 0usize;
    let mut fives = 0usize;
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", v.numer(), v.denom());
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (v.numer() * &scale) / &den;
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        int_part,
        frac_part
    )
}
