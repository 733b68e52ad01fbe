use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::FieldError;

/// The value `(p + s*sqrt(D)) / q` in the real quadratic field ℚ(√D).
///
/// `D` is squarefree and greater than one, `q > 0` and `gcd(p, s, q) = 1`.
/// Elements with `s = 0` are the rationals embedded in the field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticFieldElement {
    p: BigInt,
    s: BigInt,
    q: BigInt,
    d: u64,
}

/// Splits `n` as `k^2 * m` with `m` squarefree.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut f = 2u64;
    while f * f <= n {
        while n.is_multiple_of(f * f) {
            n /= f * f;
            square *= f;
        }
        f += 1;
    }
    (square, n)
}

impl QuadraticFieldElement {
    /// Builds `(p + s*sqrt(radicand))/q`, pulling square factors out of the
    /// radicand so the stored `D` is squarefree.
    pub fn new(
        p: impl Into<BigInt>,
        s: impl Into<BigInt>,
        q: impl Into<BigInt>,
        radicand: u64,
    ) -> Result<Self, FieldError> {
        let (k, d) = squarefree_decompose(radicand);
        if d <= 1 {
            return Err(FieldError::NotQuadratic(radicand));
        }
        let q = q.into();
        if q.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(p.into(), s.into() * BigInt::from(k), q, d))
    }

    pub fn from_rational(r: &Rational, d: u64) -> Result<Self, FieldError> {
        Self::new(r.numer().clone(), 0, r.denom().clone(), d)
    }

    pub fn from_int(n: i64, d: u64) -> Result<Self, FieldError> {
        Self::new(n, 0, 1, d)
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_d(d: u64) -> Result<Self, FieldError> {
        Self::new(0, 1, 1, d)
    }

    fn normalized(mut p: BigInt, mut s: BigInt, mut q: BigInt, d: u64) -> Self {
        if q.is_negative() {
            p = -p;
            s = -s;
            q = -q;
        }
        let g = p.gcd(&s).gcd(&q);
        if !g.is_one() && !g.is_zero() {
            p /= &g;
            s /= &g;
            q /= &g;
        }
        QuadraticFieldElement { p, s, q, d }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.s.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.s.is_zero() && self.p == self.q
    }

    pub fn is_irrational(&self) -> bool {
        !self.s.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.s.is_zero() {
            Some(Rational::new(self.p.clone(), self.q.clone()).unwrap())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(FieldError::RadicandMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(Self::normalized(
            &self.p * &other.q + &other.p * &self.q,
            &self.s * &other.q + &other.s * &self.q,
            &self.q * &other.q,
            self.d,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let d = BigInt::from(self.d);
        Ok(Self::normalized(
            &self.p * &other.p + &self.s * &other.s * d,
            &self.p * &other.s + &self.s * &other.p,
            &self.q * &other.q,
            self.d,
        ))
    }

    pub fn neg(&self) -> Self {
        QuadraticFieldElement { p: -&self.p, s: -&self.s, q: self.q.clone(), d: self.d }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_add(&other.neg())
    }

    /// Galois conjugate `(p - s*sqrt(D))/q`.
    pub fn conjugate(&self) -> Self {
        QuadraticFieldElement { p: self.p.clone(), s: -&self.s, q: self.q.clone(), d: self.d }
    }

    /// Field norm `x * conj(x)` as a rational.
    pub fn norm(&self) -> Rational {
        let num = &self.p * &self.p - &self.s * &self.s * BigInt::from(self.d);
        Rational::new(num, &self.q * &self.q).unwrap()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // 1/((p + s√D)/q) = q(p - s√D)/(p² - s²D)
        let den = &self.p * &self.p - &self.s * &self.s * BigInt::from(self.d);
        Ok(Self::normalized(&self.q * &self.p, -(&self.q * &self.s), den, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&other.inv()?)
    }

    /// Exact sign of `x + y*sqrt(d)` for integers `x`, `y`.
    pub fn sign_of(x: &BigInt, y: &BigInt, d: u64) -> Ordering {
        let sx = x.sign();
        let sy = y.sign();
        use num_bigint::Sign::*;
        match (sx, sy) {
            (NoSign, NoSign) => Ordering::Equal,
            (NoSign, Plus) | (Plus, NoSign) | (Plus, Plus) => Ordering::Greater,
            (NoSign, Minus) | (Minus, NoSign) | (Minus, Minus) => Ordering::Less,
            (Plus, Minus) => (x * x).cmp(&(y * y * BigInt::from(d))),
            (Minus, Plus) => (y * y * BigInt::from(d)).cmp(&(x * x)),
        }
    }

    pub fn signum(&self) -> Ordering {
        Self::sign_of(&self.p, &self.s, self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        // (p + s√D)/q - a/b has the sign of (b p - a q) + b s √D.
        let x = r.denom() * &self.p - r.numer() * &self.q;
        let y = r.denom() * &self.s;
        Self::sign_of(&x, &y, self.d)
    }

    pub fn floor(&self) -> BigInt {
        let r = (&self.s * &self.s * BigInt::from(self.d)).sqrt();
        if self.s.is_zero() {
            return self.p.div_floor(&self.q);
        }
        if self.s.is_positive() {
            (&self.p + r).div_floor(&self.q)
        } else {
            (&self.p - r - BigInt::one()).div_floor(&self.q)
        }
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        Self::normalized(&self.p + n * &self.q, self.s.clone(), self.q.clone(), self.d)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        (p + s * (self.d as f64).sqrt()) / q
    }
}

impl PartialOrd for QuadraticFieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d && self.is_irrational() && other.is_irrational() {
            return None;
        }
        if self.d != other.d {
            let (a, b) = (self, other);
            return match (a.as_rational(), b.as_rational()) {
                (Some(r), _) => Some(b.cmp_rational(&r).reverse()),
                (_, Some(r)) => Some(a.cmp_rational(&r)),
                _ => None,
            };
        }
        Some(self.checked_sub(other).ok()?.signum())
    }
}

impl serde::Serialize for QuadraticFieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for QuadraticFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = |s: &BigInt| -> String {
            if s.is_one() {
                format!("sqrt({})", self.d)
            } else if *s == -BigInt::one() {
                format!("-sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", s, self.d)
            }
        };
        let body = if self.s.is_zero() {
            self.p.to_string()
        } else if self.p.is_zero() {
            surd(&self.s)
        } else if self.s.is_negative() {
            format!("{} - {}", self.p, surd(&-&self.s))
        } else {
            format!("{} + {}", self.p, surd(&self.s))
        };
        if self.q.is_one() {
            write!(f, "{body}")
        } else if self.s.is_zero() || self.p.is_zero() {
            write!(f, "{body}/{}", self.q)
        } else {
            write!(f, "({body})/{}", self.q)
        }
    }
}
