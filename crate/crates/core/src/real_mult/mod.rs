//! SL(2, Z) acting on θ and on charges, continued fractions of quadratic
//! irrationals, and Hilbert functions of the algebras `A_{F,G}`.
//!
//! Convention: a matrix acts on the column `(deg, rank)` of a charge. The
//! slope `deg/rank` then moves by the same fractional-linear map that acts on
//! θ, so "F fixes θ" and "the orbit slopes of F converge to θ" concern one
//! matrix. Example: `F = [[1,1],[1,2]]` sends `(deg, rank) = (0, 1)` to
//! `(1, 2)`, the charge `2:1` of slope 1/2, and fixes `(√5 - 1)/2`.

mod cf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldError, QuadraticFieldElement, Rational};
use crate::heart::{hom_dim_stable, slope, stable_p, Charge, Slope, Theta};

pub use cf::{cf_expand, default_window, CFExpansion};

/// Integer matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SL2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

fn overflow() -> Error {
    Error::Overflow("charge coordinates")
}

impl SL2Matrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular(format!("[[{a},{b}],[{c},{d}]] has determinant {det}")));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        SL2Matrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// Translation `θ -> θ + 1`.
    pub fn g() -> Self {
        Self::raw(1, 1, 0, 1)
    }

    /// `θ -> -1/θ`.
    pub fn h() -> Self {
        Self::raw(0, 1, -1, 0)
    }

    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Self) -> Self {
        SL2Matrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// `(deg, rank) -> (a deg + b rank, c deg + d rank)`.
    pub fn act_on_charge(&self, z: Charge) -> Result<Charge> {
        let (deg, rank) = (BigInt::from(z.deg()), BigInt::from(z.rank()));
        let nd = (&self.a * &deg + &self.b * &rank).to_i64().ok_or_else(overflow)?;
        let nr = (&self.c * &deg + &self.d * &rank).to_i64().ok_or_else(overflow)?;
        Charge::new(nr, nd)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for SL2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Entries beyond i64 are written as strings.
        let e = |x: &BigInt| match x.to_i64() {
            Some(v) => Entry::Int(v),
            None => Entry::Big(x.to_string()),
        };
        [[e(&self.a), e(&self.b)], [e(&self.c), e(&self.d)]].serialize(s)
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Big(String),
}

/// `(aθ + b) / (cθ + d)`.
pub fn mobius_act(g: &SL2Matrix, theta: &Theta) -> Result<Theta> {
    let [a, b, c, d] = [g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone()];
    match theta {
        Theta::Rational(r) => {
            let num = &(&Rational::from_int(a) * r) + &Rational::from_int(b);
            let den = &(&Rational::from_int(c) * r) + &Rational::from_int(d);
            if den.is_zero() {
                return Err(Error::Field(FieldError::DivisionByZero));
            }
            Ok(Theta::Rational(&num / &den))
        }
        Theta::Quadratic(t) => {
            let rd = t.radicand();
            let lift = |n: BigInt| QuadraticFieldElement::new(n, 0, 1, rd).expect("valid radicand");
            let num = lift(a).checked_mul(t)?.checked_add(&lift(b))?;
            let den = lift(c).checked_mul(t)?.checked_add(&lift(d))?;
            Ok(Theta::from(num.checked_div(&den)?))
        }
    }
}

/// `-1/θ`.
pub fn minus_inverse(theta: &Theta) -> Result<Theta> {
    match theta {
        Theta::Rational(r) => Ok(Theta::Rational(-r.inv()?)),
        Theta::Quadratic(t) => Ok(Theta::from(t.inv()?.neg())),
    }
}

/// A generator of SL(2, Z) raised to an integer power.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WordLetter {
    pub generator: char,
    pub exponent: i64,
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}^{}", self.generator, self.exponent)
        }
    }
}

impl Serialize for WordLetter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Product of the letters, leftmost first.
pub fn replay_word(word: &[WordLetter]) -> Result<SL2Matrix> {
    word.iter().try_fold(SL2Matrix::identity(), |acc, l| {
        let gen = match l.generator {
            'g' => SL2Matrix::g(),
            'h' => SL2Matrix::h(),
            other => return Err(Error::Precondition(format!("unknown generator {other}"))),
        };
        Ok(acc.mul(&gen.pow(l.exponent)))
    })
}

fn theta_floor(theta: &Theta) -> BigInt {
    match theta {
        Theta::Rational(r) => r.floor(),
        Theta::Quadratic(t) => t.floor(),
    }
}

/// `θ - floor(θ)` together with the translation word that produces it.
pub fn morita_reduce(theta: &Theta) -> Result<(Theta, Vec<WordLetter>)> {
    if let Theta::Rational(_) = theta {
        return Err(Error::RationalInput);
    }
    let fl = theta_floor(theta);
    if fl.is_zero() {
        return Ok((theta.clone(), Vec::new()));
    }
    let exponent = (-&fl).to_i64().ok_or_else(overflow)?;
    let word = vec![WordLetter { generator: 'g', exponent }];
    let reduced = mobius_act(&replay_word(&word)?, theta)?;
    Ok((reduced, word))
}

fn mat_mul(x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// A hyperbolic matrix with positive eigenvalues fixing θ, built from the continued-fraction period.
pub fn fixing_matrix(theta: &Theta) -> Result<SL2Matrix> {
    let Theta::Quadratic(t) = theta else {
        return Err(Error::RationalInput);
    };
    let cf = cf_expand(t, cf::default_window(t))?;
    if cf.period.is_empty() {
        return Err(Error::NotFixing);
    }
    // Products of [[a,1],[1,0]] have determinant (-1)^len.
    let pre = cf::big_matrix(&cf.preperiod);
    let mut per = cf::big_matrix(&cf.period);
    if cf.period.len() % 2 == 1 {
        per = mat_mul(&per, &per);
    }
    let det = BigInt::from(if cf.preperiod.len() % 2 == 0 { 1 } else { -1 });
    let pre_inv = [
        [&det * &pre[1][1], -&det * &pre[0][1]],
        [-&det * &pre[1][0], &det * &pre[0][0]],
    ];
    let [[a, b], [c, d]] = mat_mul(&mat_mul(&pre, &per), &pre_inv);
    let mut g = SL2Matrix::new(a, b, c, d)?;
    if g.trace().is_negative() {
        g = g.mul(&g);
    }
    if mobius_act(&g, theta)? != *theta || g.trace() <= BigInt::from(2) {
        return Err(Error::NotFixing);
    }
    Ok(g)
}

/// Whether the eigenvalues of `g` are real and lie in ℚ(√radicand).
pub fn eigenvalues_in(g: &SL2Matrix, radicand: u64) -> bool {
    let disc = g.trace() * g.trace() - BigInt::from(4);
    let rd = BigInt::from(radicand);
    if !disc.is_positive() || !(&disc % &rd).is_zero() {
        return false;
    }
    let k = (&disc / &rd).sqrt();
    &k * &k * rd == disc
}

/// Which normalization of θ a report refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaLabel {
    #[default]
    AsGiven,
    MoritaReduced,
    MinusInverse,
}

#[derive(Clone, Debug, Serialize)]
pub struct RmAlgebraReport {
    #[serde(rename = "F")]
    pub f: SL2Matrix,
    #[serde(rename = "G_charge")]
    pub g_charge: Charge,
    pub theta: Theta,
    pub theta_label: ThetaLabel,
    pub orbit: Vec<Charge>,
    /// `dim A_1, ..., dim A_{n_max}`.
    pub dims: Vec<u64>,
    pub slopes: Vec<Slope>,
    pub recurrence_checked: bool,
}

impl RmAlgebraReport {
    pub fn with_label(mut self, label: ThetaLabel) -> Self {
        self.theta_label = label;
        self
    }
}

/// Hilbert function of `A_{F,G} = (+)_n Hom(G, F^n G)` on the charge level.
pub fn rm_hilbert(f: &SL2Matrix, g: Charge, theta: &Theta, n_max: u32) -> Result<RmAlgebraReport> {
    if !stable_p(g) {
        return Err(Error::NotStable { rank: g.rank(), deg: g.deg() });
    }
    if mobius_act(f, theta)? != *theta {
        return Err(Error::NotFixing);
    }
    if f.trace() <= BigInt::from(2) {
        return Err(Error::Precondition(format!("{f} does not have two distinct positive eigenvalues")));
    }
    let mut orbit = Vec::with_capacity(n_max as usize);
    let mut z = g;
    for _ in 0..n_max {
        z = f.act_on_charge(z).map_err(|_| Error::SlopeOrder(format!("orbit of {g} leaves the positive cone")))?;
        if !stable_p(z) {
            return Err(Error::NotStable { rank: z.rank(), deg: z.deg() });
        }
        orbit.push(z);
    }
    let slopes: Vec<Slope> = orbit.iter().map(|z| slope(*z)).collect();
    let increasing = slopes.windows(2).all(|w| w[0] < w[1]);
    let decreasing = slopes.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::SlopeOrder("orbit slopes are not strictly monotone".into()));
    }
    let sides: Vec<_> = slopes.iter().map(|s| theta.compare_slope(s)).collect();
    if sides.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::SlopeOrder("orbit slopes lie on both sides of theta".into()));
    }
    let base = slope(g);
    if slopes.iter().any(|s| *s <= base) {
        return Err(Error::SlopeOrder(format!("an orbit slope does not exceed the slope {base} of G")));
    }
    let dims = orbit.iter().map(|z| hom_dim_stable(g, *z).map(|(h, _)| h)).collect::<Result<Vec<u64>>>()?;
    let tr = f.trace();
    let recurrence_checked = dims
        .windows(3)
        .all(|w| BigInt::from(w[2]) == &tr * BigInt::from(w[1]) - BigInt::from(w[0]));
    Ok(RmAlgebraReport {
        f: f.clone(),
        g_charge: g,
        theta: theta.clone(),
        theta_label: ThetaLabel::AsGiven,
        orbit,
        dims,
        slopes,
        recurrence_checked,
    })
}

/// Distance `|μ - θ|` as a float, for convergence diagnostics only.
pub fn slope_distance(s: &Slope, theta: &Theta) -> f64 {
    match s {
        Slope::Finite(r) => (r.to_f64() - theta.to_f64()).abs(),
        Slope::Infinite => f64::INFINITY,
    }
}
