use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Scalar;

/// Arithmetic shared by `Scalar`, `f64` and dual numbers over either.
///
/// Model maps are written once against this trait so the same code runs
/// exactly, in floating point, and under forward-mode differentiation.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_scalar(s: &Scalar) -> Self;

    fn zero() -> Self {
        Self::from_scalar(&Scalar::int(0))
    }
    fn one() -> Self {
        Self::from_scalar(&Scalar::int(1))
    }
    fn from_int(n: i64) -> Self {
        Self::from_scalar(&Scalar::int(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_scalar(&Scalar::ratio(n, d))
    }

    /// True when every component is an exact rational.
    fn is_exact(&self) -> bool;
    /// The same value moved onto the float path.
    fn to_approx(&self) -> Self;
    /// Absolute value of the primal part, as f64 (used for pivoting and norms).
    fn magnitude(&self) -> f64;
    /// Exact test for zero: every component exactly zero.
    fn is_zero_exact(&self) -> bool;
    /// Largest absolute value over all components (primal and tangent).
    fn max_abs_component(&self) -> f64;
    /// Sign of the primal part (-1, 0, 1); exact on the rational path.
    fn sign(&self) -> i32;
    /// Primal part as f64.
    fn primal(&self) -> f64;
}

impl Field for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn is_exact(&self) -> bool {
        Scalar::is_exact(self)
    }
    fn to_approx(&self) -> Self {
        self.to_float()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
    fn max_abs_component(&self) -> f64 {
        self.to_f64().abs()
    }
    fn sign(&self) -> i32 {
        self.signum()
    }
    fn primal(&self) -> f64 {
        self.to_f64()
    }
}

impl Field for f64 {
    fn from_scalar(s: &Scalar) -> Self {
        s.to_f64()
    }
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn to_approx(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_zero_exact(&self) -> bool {
        *self == 0.0
    }
    fn max_abs_component(&self) -> f64 {
        self.abs()
    }
    fn sign(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn primal(&self) -> f64 {
        *self
    }
}

/// Dual number `re + eps·ε` with ε² = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<F> {
    pub re: F,
    pub eps: F,
}

impl<F: Field> Dual<F> {
    pub fn new(re: F, eps: F) -> Self {
        Dual { re, eps }
    }
    pub fn constant(re: F) -> Self {
        Dual { re, eps: F::zero() }
    }
    pub fn variable(re: F) -> Self {
        Dual { re, eps: F::one() }
    }
}

impl<F: Field> Add for Dual<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual { re: self.re + o.re, eps: self.eps + o.eps }
    }
}

impl<F: Field> Sub for Dual<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual { re: self.re - o.re, eps: self.eps - o.eps }
    }
}

impl<F: Field> Mul for Dual<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual { re: self.re * o.re, eps }
    }
}

impl<F: Field> Div for Dual<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let re = self.re.clone() / o.re.clone();
        let eps = (self.eps * o.re.clone() - self.re * o.eps) / (o.re.clone() * o.re);
        Dual { re, eps }
    }
}

impl<F: Field> Neg for Dual<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual { re: -self.re, eps: -self.eps }
    }
}

impl<F: Field> Field for Dual<F> {
    fn from_scalar(s: &Scalar) -> Self {
        Dual::constant(F::from_scalar(s))
    }
    fn is_exact(&self) -> bool {
        self.re.is_exact() && self.eps.is_exact()
    }
    fn to_approx(&self) -> Self {
        Dual { re: self.re.to_approx(), eps: self.eps.to_approx() }
    }
    fn magnitude(&self) -> f64 {
        self.re.magnitude()
    }
    fn is_zero_exact(&self) -> bool {
        self.re.is_zero_exact() && self.eps.is_zero_exact()
    }
    fn max_abs_component(&self) -> f64 {
        self.re.max_abs_component().max(self.eps.max_abs_component())
    }
    fn sign(&self) -> i32 {
        self.re.sign()
    }
    fn primal(&self) -> f64 {
        self.re.primal()
    }
}
