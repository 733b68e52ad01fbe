//! Exact coefficient fields: ℚ, ℚ(q) and real quadratic fields ℚ(√D).
//!
//! A computation lives in exactly one field. [`Scalar`] tags every value with
//! its field; the `checked_*` methods report a mismatch, while the operator
//! impls assume both sides were validated at construction time and panic
//! otherwise.

mod quadratic;
mod ratfunc;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use quadratic::{squarefree_decompose, QuadraticFieldElement};
pub use ratfunc::{RationalFunction, UniPoly};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldKind, FieldKind),
    #[error("quadratic fields with different radicands: {0} vs {1}")]
    RadicandMismatch(u64, u64),
    #[error("{0} is not a valid radicand for a real quadratic field")]
    NotQuadratic(u64),
}

/// Which coefficient field a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    RationalFunctions,
    Quadratic(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::RationalFunctions => write!(f, "Q(q)"),
            FieldKind::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl Serialize for FieldKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A coefficient tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rational),
    RationalFunction(RationalFunction),
    Quadratic(QuadraticFieldElement),
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rationals,
            Scalar::RationalFunction(_) => FieldKind::RationalFunctions,
            Scalar::Quadratic(x) => FieldKind::Quadratic(x.radicand()),
        }
    }

    pub fn zero(field: FieldKind) -> Scalar {
        Scalar::from_rational(field, Rational::zero())
    }

    pub fn one(field: FieldKind) -> Scalar {
        Scalar::from_rational(field, Rational::one())
    }

    pub fn from_int(field: FieldKind, n: i64) -> Scalar {
        Scalar::from_rational(field, Rational::from_int(n))
    }

    /// Embeds a rational into `field`.
    pub fn from_rational(field: FieldKind, r: Rational) -> Scalar {
        match field {
            FieldKind::Rationals => Scalar::Rational(r),
            FieldKind::RationalFunctions => Scalar::RationalFunction(RationalFunction::constant(r)),
            FieldKind::Quadratic(d) => {
                Scalar::Quadratic(QuadraticFieldElement::from_rational(&r, d).expect("valid radicand"))
            }
        }
    }

    /// The parameter `q` of ℚ(q).
    pub fn q() -> Scalar {
        Scalar::RationalFunction(RationalFunction::q())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RationalFunction(r) => r.is_zero(),
            Scalar::Quadratic(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RationalFunction(r) => r.is_one(),
            Scalar::Quadratic(x) => x.is_one(),
        }
    }

    /// Rational value if the scalar lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::RationalFunction(r) => r.as_constant(),
            Scalar::Quadratic(x) => x.as_rational(),
        }
    }

    /// Whether the rendered form starts with a minus sign.
    pub fn looks_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::RationalFunction(r) => r.looks_negative(),
            Scalar::Quadratic(x) => {
                if x.p().sign() == num_bigint::Sign::NoSign {
                    x.s().sign() == num_bigint::Sign::Minus
                } else {
                    x.p().sign() == num_bigint::Sign::Minus
                }
            }
        }
    }

    fn mismatch(&self, other: &Scalar) -> FieldError {
        match (self, other) {
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => {
                FieldError::RadicandMismatch(a.radicand(), b.radicand())
            }
            _ => FieldError::FieldMismatch(self.kind(), other.kind()),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(Scalar::RationalFunction(a.add(b)))
            }
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => Ok(Scalar::Quadratic(a.checked_add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(Scalar::RationalFunction(a.mul(b)))
            }
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => Ok(Scalar::Quadratic(a.checked_mul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.inv()?),
            Scalar::RationalFunction(r) => Scalar::RationalFunction(r.inv()?),
            Scalar::Quadratic(x) => Scalar::Quadratic(x.inv()?),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if self.kind() != other.kind() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.kind());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::RationalFunction(r) => Scalar::RationalFunction(r.neg()),
            Scalar::Quadratic(x) => Scalar::Quadratic(x.neg()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::RationalFunction(r) => write!(f, "{r}"),
            Scalar::Quadratic(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
