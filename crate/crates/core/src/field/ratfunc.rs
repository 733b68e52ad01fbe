use std::fmt;

use super::rational::Rational;
use super::FieldError;

/// Dense univariate polynomial in `q` over ℚ, little-endian coefficients,
/// never carrying trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (k, b) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = &rem[shift + k] - &(&c * b);
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Rational::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// An element of ℚ(q) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    numer: UniPoly,
    denom: UniPoly,
}

impl RationalFunction {
    pub fn new(numer: UniPoly, denom: UniPoly) -> Result<Self, FieldError> {
        if denom.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(numer, denom))
    }

    fn normalized(numer: UniPoly, denom: UniPoly) -> Self {
        if numer.is_zero() {
            return RationalFunction::zero();
        }
        if denom.degree() == Some(0) {
            let inv = denom.coeffs()[0].inv().unwrap();
            return RationalFunction { numer: numer.scale(&inv), denom: UniPoly::one() };
        }
        let g = UniPoly::gcd(&numer, &denom);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (numer, denom)
        } else {
            (numer.div_rem(&g).0, denom.div_rem(&g).0)
        };
        let lead_inv = d.leading().unwrap().inv().unwrap();
        if !lead_inv.is_one() {
            n = n.scale(&lead_inv);
            d = d.scale(&lead_inv);
        }
        RationalFunction { numer: n, denom: d }
    }

    pub fn zero() -> Self {
        RationalFunction { numer: UniPoly::zero(), denom: UniPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { numer: UniPoly::constant(c), denom: UniPoly::one() }
    }

    /// The transcendental parameter `q`.
    pub fn q() -> Self {
        RationalFunction { numer: UniPoly::monomial(Rational::one(), 1), denom: UniPoly::one() }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction { numer: p, denom: UniPoly::one() }
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    /// Constant value when the function does not depend on `q`.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.numer.degree(), self.denom.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.numer.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Sign of the leading numerator coefficient; used only for rendering.
    pub fn looks_negative(&self) -> bool {
        self.numer.leading().is_some_and(Rational::is_negative)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.denom == other.denom {
            return Self::normalized(self.numer.add(&other.numer), self.denom.clone());
        }
        Self::normalized(
            self.numer.mul(&other.denom).add(&other.numer.mul(&self.denom)),
            self.denom.mul(&other.denom),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        Self::normalized(self.numer.mul(&other.numer), self.denom.mul(&other.denom))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(self.denom.clone(), self.numer.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.denom.eval(at);
        if d.is_zero() {
            return None;
        }
        Some(&self.numer.eval(at) / &d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            return write!(f, "{}", self.numer);
        }
        let wrap = |p: &UniPoly| {
            let atomic = p.term_count() == 1 && !p.leading().unwrap().is_negative()
                && ((p.degree() == Some(0) && p.leading().unwrap().is_integer())
                    || p.leading().unwrap().is_one());
            if atomic {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        if self.looks_negative() {
            write!(f, "-{}/{}", wrap(&self.numer.neg()), wrap(&self.denom))
        } else {
            write!(f, "{}/{}", wrap(&self.numer), wrap(&self.denom))
        }
    }
}
