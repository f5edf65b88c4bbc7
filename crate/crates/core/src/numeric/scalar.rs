use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A number on one of two paths: an exact rational or an f64.
///
/// Exact with exact stays exact. Anything touching a float becomes a float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(x) => Scalar::Float(x.abs()),
        }
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float(x) => {
                if *x == 0.0 {
                    0
                } else if *x > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn recip(&self) -> Scalar {
        Scalar::int(1) / self.clone()
    }

    /// Square root of a nonnegative value; stays exact for squares of rationals.
    pub fn sqrt(&self) -> Scalar {
        if let Scalar::Exact(r) = self {
            if !r.is_negative() {
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                if &n * &n == *r.numer() && &d * &d == *r.denom() {
                    return Scalar::Exact(BigRational::new(n, d));
                }
            }
        }
        Scalar::Float(self.to_f64().sqrt())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Rationals render as `p/q` (or `p`), floats with 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(x) => render_f64(*x),
        }
    }
}

pub fn render_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "exact division by zero");
                Scalar::Exact(a / b)
            }
            (a, b) => Scalar::Float(a.to_f64() / b.to_f64()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// `3`, `-2/5` parse exactly; anything with a decimal point or exponent is a float.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a number: {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Scalar::Exact(BigRational::new(n, d)));
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(Scalar::Exact(BigRational::from_integer(n)));
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        Ok(Scalar::Float(x))
    }
}

/// Float comparison policy shared by every check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_tol: 1e-9, rel_tol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self, Error> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be strictly positive".into()));
        }
        Ok(Tolerance { abs_tol, rel_tol })
    }

    pub fn uniform(tol: f64) -> Result<Self, Error> {
        Tolerance::new(tol, tol)
    }

    pub fn close_f64(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.abs_tol + self.rel_tol * x.abs().max(y.abs())
    }

    /// Exact pairs compare exactly and ignore the tolerance.
    pub fn close(&self, x: &Scalar, y: &Scalar) -> bool {
        match (x, y) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.close_f64(x.to_f64(), y.to_f64()),
        }
    }
}
