//! Charge-level model of coherent sheaves on an elliptic curve and of the
//! heart of the t-structure attached to a real parameter θ.
//!
//! Objects are multisets of semistable charges `(rank, deg)`. Slopes are exact
//! rationals with torsion at +∞, and every comparison against θ is an exact
//! sign test, so quadratic irrational θ never passes through floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{QuadraticFieldElement, Rational};

/// Class `(rank, deg)` of a coherent sheaf; torsion classes have rank 0 and positive length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Charge {
    rank: i64,
    deg: i64,
}

impl Charge {
    pub fn new(rank: i64, deg: i64) -> Result<Self> {
        if rank < 0 || (rank == 0 && deg <= 0) {
            return Err(Error::InvalidCharge { rank, deg });
        }
        Ok(Charge { rank, deg })
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.rank, self.deg)
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `deg / rank`, with +∞ for torsion.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => write!(f, "+inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn slope(z: Charge) -> Slope {
    if z.rank == 0 {
        Slope::Infinite
    } else {
        Slope::Finite(Rational::new(z.deg, z.rank).expect("positive rank"))
    }
}

/// A finite real parameter, rational or quadratic irrational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Theta {
    Rational(Rational),
    Quadratic(QuadraticFieldElement),
}

impl Theta {
    /// Sign of `mu - theta`.
    pub fn compare_slope(&self, mu: &Slope) -> Ordering {
        match (mu, self) {
            (Slope::Infinite, _) => Ordering::Greater,
            (Slope::Finite(r), Theta::Rational(t)) => r.cmp(t),
            (Slope::Finite(r), Theta::Quadratic(t)) => t.cmp_rational(r).reverse(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Theta::Rational(r) => r.to_f64(),
            Theta::Quadratic(q) => q.to_f64(),
        }
    }
}

impl From<Rational> for Theta {
    fn from(r: Rational) -> Self {
        Theta::Rational(r)
    }
}

impl From<QuadraticFieldElement> for Theta {
    fn from(q: QuadraticFieldElement) -> Self {
        match q.as_rational() {
            Some(r) => Theta::Rational(r),
            None => Theta::Quadratic(q),
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Rational(r) => write!(f, "{r}"),
            Theta::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A multiset of semistable factors; the empty class models the zero object.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct SheafClass {
    factors: BTreeMap<Charge, u32>,
}

impl SheafClass {
    pub fn empty() -> Self {
        SheafClass::default()
    }

    pub fn new(factors: impl IntoIterator<Item = (Charge, u32)>) -> Result<Self> {
        let mut out = SheafClass::empty();
        for (z, m) in factors {
            if m == 0 {
                return Err(Error::Precondition(format!("factor {z} has multiplicity 0")));
            }
            out.add(z, m);
        }
        Ok(out)
    }

    pub fn from_charges(charges: impl IntoIterator<Item = Charge>) -> Self {
        let mut out = SheafClass::empty();
        for z in charges {
            out.add(z, 1);
        }
        out
    }

    fn add(&mut self, z: Charge, m: u32) {
        *self.factors.entry(z).or_insert(0) += m;
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Distinct charges with multiplicities, in charge order.
    pub fn factors(&self) -> impl Iterator<Item = (Charge, u32)> + '_ {
        self.factors.iter().map(|(z, m)| (*z, *m))
    }

    /// Total class as a sum of charges.
    pub fn total(&self) -> (i64, i64) {
        self.factors().fold((0, 0), |(r, d), (z, m)| (r + z.rank * m as i64, d + z.deg * m as i64))
    }

    pub fn mu_min(&self) -> Option<Slope> {
        self.factors.keys().map(|z| slope(*z)).min()
    }

    pub fn mu_max(&self) -> Option<Slope> {
        self.factors.keys().map(|z| slope(*z)).max()
    }
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "EMPTY");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(z, m)| if m == 1 { z.to_string() } else { format!("{z}*{m}") })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for SheafClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_empty() {
            return s.serialize_str("EMPTY");
        }
        s.collect_seq(self.factors().map(|(z, m)| FactorEntry { charge: z, multiplicity: m }))
    }
}

#[derive(Serialize)]
struct FactorEntry {
    charge: Charge,
    multiplicity: u32,
}

/// Harder–Narasimhan layers by strictly increasing slope.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HNFiltration {
    pub layers: Vec<HNLayer>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HNLayer {
    pub slope: Slope,
    pub factors: SheafClass,
}

impl HNFiltration {
    pub fn mu_min(&self) -> Option<&Slope> {
        self.layers.first().map(|l| &l.slope)
    }

    pub fn mu_max(&self) -> Option<&Slope> {
        self.layers.last().map(|l| &l.slope)
    }
}

pub fn hn(f: &SheafClass) -> HNFiltration {
    let mut by_slope: BTreeMap<Slope, SheafClass> = BTreeMap::new();
    for (z, m) in f.factors() {
        by_slope.entry(slope(z)).or_default().add(z, m);
    }
    HNFiltration { layers: by_slope.into_iter().map(|(slope, factors)| HNLayer { slope, factors }).collect() }
}

/// `(t, q)`: the factors of slope above θ and the rest.
pub fn torsion_split(f: &SheafClass, theta: &Theta) -> (SheafClass, SheafClass) {
    let mut t = SheafClass::empty();
    let mut q = SheafClass::empty();
    for (z, m) in f.factors() {
        if theta.compare_slope(&slope(z)) == Ordering::Greater {
            t.add(z, m);
        } else {
            q.add(z, m);
        }
    }
    (t, q)
}

/// A two-term complex with `H^{-1}` in slopes at most θ and `H^0` in slopes above θ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HeartObject {
    pub shifted: SheafClass,
    pub plain: SheafClass,
    pub theta: Theta,
}

pub fn in_heart(k: &HeartObject) -> bool {
    let above = |z: Charge| k.theta.compare_slope(&slope(z)) == Ordering::Greater;
    k.shifted.factors().all(|(z, _)| !above(z)) && k.plain.factors().all(|(z, _)| above(z))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HomVanishing {
    CertainZero,
    Unknown,
}

/// `Hom(F, G) = 0` is certain when every factor of `F` out-slopes every factor of `G`.
pub fn hom_vanishes(f: &SheafClass, g: &SheafClass) -> HomVanishing {
    match (f.mu_min(), g.mu_max()) {
        (Some(a), Some(b)) if a > b => HomVanishing::CertainZero,
        (None, _) | (_, None) => HomVanishing::CertainZero,
        _ => HomVanishing::Unknown,
    }
}

/// `chi(z1, z2) = rank1 * deg2 - deg1 * rank2`.
pub fn euler_pairing(z1: Charge, z2: Charge) -> i64 {
    z1.rank * z2.deg - z1.deg * z2.rank
}

/// Stable charges: coprime `(rank, deg)` with positive rank, or the point class `(0, 1)`.
pub fn stable_p(z: Charge) -> bool {
    if z.rank == 0 {
        z.deg == 1
    } else {
        z.rank.gcd(&z.deg) == 1
    }
}

/// `(dim Hom, dim Ext^1)` between stable objects with the given charges.
pub fn hom_dim_stable(z1: Charge, z2: Charge) -> Result<(u64, u64)> {
    for z in [z1, z2] {
        if !stable_p(z) {
            return Err(Error::NotStable { rank: z.rank, deg: z.deg });
        }
    }
    if z1 == z2 {
        return Ok((1, 1));
    }
    let chi = euler_pairing(z1, z2);
    Ok(match slope(z1).cmp(&slope(z2)) {
        Ordering::Less => (chi as u64, 0),
        Ordering::Greater => (0, (-chi) as u64),
        Ordering::Equal => (0, 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(r: i64, d: i64) -> Charge {
        Charge::new(r, d).unwrap()
    }

    fn half() -> Theta {
        Theta::Rational(Rational::new(1, 2).unwrap())
    }

    fn golden_conjugate() -> Theta {
        Theta::Quadratic(QuadraticFieldElement::new(-1, 1, 2, 5).unwrap())
    }

    #[test]
    fn slopes() {
        assert_eq!(slope(z(1, 0)), Slope::Finite(Rational::zero()));
        assert_eq!(slope(z(2, 1)), Slope::Finite(Rational::new(1, 2).unwrap()));
        assert_eq!(slope(z(0, 3)), Slope::Infinite);
        assert!(Slope::Infinite > slope(z(1, 1000)));
        assert!(Charge::new(0, 0).is_err());
        assert!(Charge::new(0, -1).is_err());
        assert!(Charge::new(-1, 2).is_err());
    }

    #[test]
    fn harder_narasimhan_layers() {
        let f = SheafClass::from_charges([z(1, 0), z(1, 1)]);
        let h = hn(&f);
        assert_eq!(h.layers.len(), 2);
        assert_eq!(h.mu_min(), Some(&slope(z(1, 0))));
        assert_eq!(h.mu_max(), Some(&slope(z(1, 1))));
        let ss = SheafClass::new([(z(2, 1), 3)]).unwrap();
        assert_eq!(hn(&ss).layers.len(), 1);
        let mixed = SheafClass::from_charges([z(1, 0), z(2, 0), z(0, 1)]);
        let h = hn(&mixed);
        assert_eq!(h.layers.len(), 2);
        assert_eq!(h.layers[0].factors, SheafClass::from_charges([z(1, 0), z(2, 0)]));
        assert_eq!(h.layers[1].slope, Slope::Infinite);
    }

    #[test]
    fn splits_at_theta() {
        let f = SheafClass::from_charges([z(1, 0), z(1, 1)]);
        let (t, q) = torsion_split(&f, &half());
        assert_eq!(t, SheafClass::from_charges([z(1, 1)]));
        assert_eq!(q, SheafClass::from_charges([z(1, 0)]));
        let (t, q) = torsion_split(&f, &Theta::Rational(Rational::from_int(-1_000_000)));
        assert_eq!((t, q.is_empty()), (f.clone(), true));
        let g = SheafClass::from_charges([z(1, 0), z(2, 1)]);
        let (t, q) = torsion_split(&g, &golden_conjugate());
        assert!(t.is_empty());
        assert_eq!(q, g);
    }

    #[test]
    fn heart_membership() {
        let obj = |shifted: &[Charge], plain: &[Charge]| HeartObject {
            shifted: SheafClass::from_charges(shifted.iter().copied()),
            plain: SheafClass::from_charges(plain.iter().copied()),
            theta: half(),
        };
        assert!(in_heart(&obj(&[z(1, 0)], &[])));
        assert!(!in_heart(&obj(&[], &[z(1, 0)])));
        assert!(in_heart(&obj(&[z(1, 0)], &[z(0, 1)])));
    }

    #[test]
    fn hom_vanishing() {
        let a = SheafClass::from_charges([z(1, 1)]);
        let b = SheafClass::from_charges([z(1, 0)]);
        assert_eq!(hom_vanishes(&a, &b), HomVanishing::CertainZero);
        assert_eq!(hom_vanishes(&b, &a), HomVanishing::Unknown);
    }

    #[test]
    fn euler_pairing_values() {
        assert_eq!(euler_pairing(z(1, 0), z(1, 7)), 7);
        assert_eq!(euler_pairing(z(2, 1), z(2, 1)), 0);
        assert_eq!(euler_pairing(z(2, 1), z(3, 2)), 1);
    }

    #[test]
    fn stability() {
        assert!(stable_p(z(1, -4)));
        assert!(!stable_p(z(2, 4)));
        assert!(stable_p(z(0, 1)));
        assert!(!stable_p(z(0, 2)));
    }

    #[test]
    fn stable_hom_dimensions() {
        assert_eq!(hom_dim_stable(z(1, 0), z(1, 3)).unwrap(), (3, 0));
        assert_eq!(hom_dim_stable(z(1, 1), z(1, 0)).unwrap(), (0, 1));
        assert_eq!(hom_dim_stable(z(2, 1), z(2, 1)).unwrap(), (1, 1));
        assert_eq!(hom_dim_stable(z(1, 0), z(0, 1)).unwrap(), (1, 0));
        assert!(hom_dim_stable(z(2, 4), z(1, 0)).is_err());
    }
}
