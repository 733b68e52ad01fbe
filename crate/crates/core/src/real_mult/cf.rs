//! Continued fractions of real quadratic irrationals by exact floor-and-invert.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::QuadraticFieldElement;

/// `θ = [preperiod; period, period, ...]`. An empty period means no repeat
/// was seen within `window` terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CFExpansion {
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
    pub window: usize,
}

/// Terms to try before giving up; generous next to the Lagrange bound.
pub fn default_window(t: &QuadraticFieldElement) -> usize {
    let d = t.radicand() as f64;
    let q = t.q().to_f64().unwrap_or(f64::MAX).abs().max(1.0);
    (64.0 + 8.0 * d.sqrt() * (d.ln() + q.ln() + 2.0)).min(1e6) as usize
}

pub fn cf_expand(theta: &QuadraticFieldElement, max_terms: usize) -> Result<CFExpansion> {
    if !theta.is_irrational() {
        return Err(Error::RationalInput);
    }
    let mut seen: HashMap<QuadraticFieldElement, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut x = theta.clone();
    for i in 0..max_terms {
        if let Some(&j) = seen.get(&x) {
            return Ok(CFExpansion { preperiod: terms[..j].to_vec(), period: terms[j..].to_vec(), window: i });
        }
        seen.insert(x.clone(), i);
        let a = x.floor();
        terms.push(a.to_i64().ok_or(Error::Overflow("partial quotient"))?);
        x = x.add_int(&-a).inv()?;
    }
    Ok(CFExpansion { preperiod: terms, period: Vec::new(), window: max_terms })
}

impl CFExpansion {
    /// Exact value of the periodic expansion in ℚ(√D).
    pub fn value(&self, radicand: u64) -> Result<QuadraticFieldElement> {
        if self.period.is_empty() {
            return Err(Error::Precondition("expansion has no period".into()));
        }
        // The tail y satisfies y = (A y + B)/(C y + D); take the root above 1.
        let [[a, b], [c, d]] = big_matrix(&self.period);
        let disc = (&d - &a) * (&d - &a) + BigInt::from(4) * &b * &c;
        let rd = BigInt::from(radicand);
        let k = (&disc / &rd).sqrt();
        if &k * &k * &rd != disc {
            return Err(Error::Field(crate::field::FieldError::NotQuadratic(radicand)));
        }
        let tail = QuadraticFieldElement::new(&a - &d, k, BigInt::from(2) * &c, radicand)?;
        let mut x = tail;
        for &t in self.preperiod.iter().rev() {
            x = x.inv()?.add_int(&BigInt::from(t));
        }
        Ok(x)
    }
}

pub(crate) fn big_matrix(terms: &[i64]) -> [[BigInt; 2]; 2] {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let mut m = [[one.clone(), zero.clone()], [zero, one]];
    for &t in terms {
        let t = BigInt::from(t);
        m = [[&m[0][0] * &t + &m[0][1], m[0][0].clone()], [&m[1][0] * &t + &m[1][1], m[1][0].clone()]];
    }
    m
}
