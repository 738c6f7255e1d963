//! Exact arithmetic over Q and over quadratic extensions Q(sqrt(d)).
//!
//! Every scalar in this crate is a [`QuadScalar`]: an element `a + b*sqrt(d)`
//! of a fixed quadratic field, with `a`, `b` arbitrary-precision rationals.
//! A pure-rational context is modeled by an absent discriminant, in which
//! case the radical coefficient is pinned to zero. There is no floating
//! point anywhere: equality, zero tests and keying are exact.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Arbitrary-precision rational. Always stored reduced with positive
/// denominator, so equal values have identical representations.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("invalid field discriminant {0}: must be squarefree and not 0 or 1")]
    BadDiscriminant(i64),
    #[error("operands belong to different field contexts")]
    MixedField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("a rational field context cannot carry a radical part")]
    RadicalUnavailable,
}

/// Discriminants are validated by trial division, so their magnitude is
/// capped; everything in range `(-2^31, 2^31)` is accepted when squarefree.
const MAX_DISCRIMINANT_ABS: u64 = i32::MAX as u64;

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p: u64 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// The ambient field: Q when `d` is absent, Q(sqrt(d)) otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldContext {
    d: Option<i64>,
}

impl FieldContext {
    /// The pure-rational context Q.
    pub fn rational() -> Self {
        FieldContext { d: None }
    }

    /// The context Q(sqrt(d)) for a squarefree integer d outside {0, 1}.
    pub fn quadratic(d: i64) -> Result<Self, NumError> {
        if d == 0 || d == 1 || d.unsigned_abs() > MAX_DISCRIMINANT_ABS || !is_squarefree(d) {
            return Err(NumError::BadDiscriminant(d));
        }
        Ok(FieldContext { d: Some(d) })
    }

    pub fn discriminant(&self) -> Option<i64> {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    fn d_as_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.d.unwrap_or(0)))
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "Q"),
            Some(d) => write!(f, "Q(s({d}))"),
        }
    }
}

/// An element `a + b*sqrt(d)` of a fixed quadratic field, exact.
///
/// The representation is unique given `(a, b, d)`, so derived equality and
/// hashing are the field equality. The derived ordering is the lexicographic
/// order on `(a, b)`; it is a canonical structural order used for
/// deterministic sorting, not a numeric order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    ctx: FieldContext,
}

impl QuadScalar {
    /// Builds `a + b*sqrt(d)`. A nonzero `b` requires a quadratic context.
    pub fn new(ctx: FieldContext, a: Rational, b: Rational) -> Result<Self, NumError> {
        if ctx.is_rational() && !b.is_zero() {
            return Err(NumError::RadicalUnavailable);
        }
        Ok(QuadScalar { a, b, ctx })
    }

    pub fn from_rational(ctx: FieldContext, a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero(), ctx }
    }

    pub fn from_int(ctx: FieldContext, n: i64) -> Self {
        Self::from_rational(ctx, rat_int(n))
    }

    /// The element sqrt(d) itself.
    pub fn radical(ctx: FieldContext) -> Result<Self, NumError> {
        Self::new(ctx, Rational::zero(), Rational::one())
    }

    pub fn zero(ctx: FieldContext) -> Self {
        Self::from_int(ctx, 0)
    }

    pub fn one(ctx: FieldContext) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check_ctx(&self, other: &Self) -> Result<(), NumError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(NumError::MixedField)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumError> {
        self.check_ctx(other)?;
        Ok(QuadScalar {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            ctx: self.ctx,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.check_ctx(other)?;
        Ok(QuadScalar {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            ctx: self.ctx,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumError> {
        self.check_ctx(other)?;
        let d = self.ctx.d_as_rational();
        Ok(QuadScalar {
            a: &self.a * &other.a + &self.b * &other.b * &d,
            b: &self.a * &other.b + &self.b * &other.a,
            ctx: self.ctx,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, NumError> {
        self.check_ctx(other)?;
        if other.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        // x / y = x * conj(y) / norm(y), with norm(y) a nonzero rational
        // because d is squarefree (sqrt(d) is irrational).
        let n = other.norm();
        let conj = other.conjugate();
        let prod = self.try_mul(&conj)?;
        Ok(QuadScalar {
            a: prod.a / &n,
            b: prod.b / &n,
            ctx: self.ctx,
        })
    }

    /// The Galois conjugate `a - b*sqrt(d)`; an involutive field automorphism
    /// (the identity on a rational context).
    pub fn conjugate(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            ctx: self.ctx,
        }
    }

    /// The field norm `x * conj(x) = a^2 - d*b^2`, always rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.ctx.d_as_rational()
    }

    pub fn inverse(&self) -> Result<Self, NumError> {
        Self::one(self.ctx).try_div(self)
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let d = self.ctx.d.expect("nonzero radical part implies quadratic context");
        if self.b.is_negative() {
            write!(f, "{}-{}*s({})", self.a, -self.b.clone(), d)
        } else {
            write!(f, "{}+{}*s({})", self.a, self.b, d)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                self.$checked(rhs).expect("field context mismatch or division by zero")
            }
        }
        impl $trait for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            ctx: self.ctx,
        }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}
