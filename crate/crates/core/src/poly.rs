//! Noncommutative polynomials over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::word::{Letter, MonomialOrder, Word};

/// The ambient free algebra `k{x_1, ..., x_n}`: field, generator symbols,
/// weights and the monomial order used for leading terms and rendering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeAlgebra {
    field: FieldKind,
    symbols: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl FreeAlgebra {
    pub fn new(field: FieldKind, generators: Vec<(String, u32)>) -> Result<Arc<Self>> {
        let order = MonomialOrder::deglex(generators.len());
        Self::with_order(field, generators, order)
    }

    pub fn with_order(
        field: FieldKind,
        generators: Vec<(String, u32)>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if order.n_gens() != generators.len() {
            return Err(Error::DimensionMismatch { expected: generators.len(), got: order.n_gens() });
        }
        if generators.len() > Letter::MAX as usize {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        let mut symbols = Vec::with_capacity(generators.len());
        let mut weights = Vec::with_capacity(generators.len());
        for (s, w) in generators {
            if w == 0 {
                return Err(Error::InvalidPresentation(format!("generator {s} has weight 0")));
            }
            if symbols.contains(&s) {
                return Err(Error::InvalidPresentation(format!("duplicate generator {s}")));
            }
            symbols.push(s);
            weights.push(w);
        }
        Ok(Arc::new(FreeAlgebra { field, symbols, weights, order }))
    }

    /// Unit-weight generators named by `symbols`.
    pub fn unit(field: FieldKind, symbols: &[&str]) -> Arc<Self> {
        Self::new(field, symbols.iter().map(|s| (s.to_string(), 1)).collect()).expect("valid alphabet")
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn n_gens(&self) -> usize {
        self.symbols.len()
    }

    pub fn index_of(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol).map(|i| i as Letter)
    }

    pub fn word(&self, letters: &[Letter]) -> Word {
        Word::new(letters.to_vec(), &self.weights)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let sym = &self.symbols[letters[i] as usize];
            if j - i == 1 {
                parts.push(sym.clone());
            } else {
                parts.push(format!("{sym}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_int(self.field, n)
    }
}

/// Element of a free algebra: a finite map from words to nonzero scalars.
#[derive(Clone, Debug)]
pub struct NcPolynomial {
    ring: Arc<FreeAlgebra>,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for NcPolynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for NcPolynomial {}

impl NcPolynomial {
    pub fn zero(ring: &Arc<FreeAlgebra>) -> Self {
        NcPolynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<FreeAlgebra>, c: Scalar) -> Result<Self> {
        Self::term(ring, Word::empty(), c)
    }

    pub fn one(ring: &Arc<FreeAlgebra>) -> Self {
        Self::monomial(ring, &[])
    }

    /// `c * w`; fails if `c` is not in the ring's field.
    pub fn term(ring: &Arc<FreeAlgebra>, w: Word, c: Scalar) -> Result<Self> {
        if c.kind() != ring.field {
            return Err(crate::field::FieldError::FieldMismatch(c.kind(), ring.field).into());
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Ok(NcPolynomial { ring: ring.clone(), terms })
    }

    pub fn monomial(ring: &Arc<FreeAlgebra>, letters: &[Letter]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(ring.word(letters), Scalar::one(ring.field));
        NcPolynomial { ring: ring.clone(), terms }
    }

    pub fn generator(ring: &Arc<FreeAlgebra>, g: Letter) -> Self {
        Self::monomial(ring, &[g])
    }

    /// Sums `(word, coefficient)` pairs, dropping zeros.
    pub fn from_terms(ring: &Arc<FreeAlgebra>, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (w, c) in terms {
            if c.kind() != ring.field {
                return Err(crate::field::FieldError::FieldMismatch(c.kind(), ring.field).into());
            }
            p.add_term(w, &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<FreeAlgebra> {
        &self.ring
    }

    pub fn field(&self) -> FieldKind {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Terms in the storage order (degree, then letter index).
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// Terms sorted descending by the ring's monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        if !self.ring.order.is_identity() {
            v.sort_by(|a, b| self.ring.order.compare(a.0, b.0));
        }
        v.reverse();
        v
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    /// In-place `self += c * w`.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Leading term under the ring's order.
    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        if self.ring.order.is_identity() {
            self.terms.iter().next_back()
        } else {
            self.terms.iter().max_by(|a, b| self.ring.order.compare(a.0, b.0))
        }
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        if self.ring.order.is_identity() {
            return self.terms.pop_last();
        }
        let w = self.leading_term()?.0.clone();
        let c = self.terms.remove(&w)?;
        Some((w, c))
    }

    /// Largest degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Word::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, NcPolynomial> {
        let mut out: BTreeMap<u32, NcPolynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree()).or_insert_with(|| Self::zero(&self.ring)).terms.insert(w.clone(), c.clone());
        }
        out
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else if self.ring.field != other.ring.field {
            Err(crate::field::FieldError::FieldMismatch(self.ring.field, other.ring.field).into())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NcPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        NcPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Free-algebra product: bilinear extension of concatenation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        NcPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exp {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Rewrites the polynomial into another ring with the same field and alphabet size.
    pub fn with_ring(&self, ring: &Arc<FreeAlgebra>) -> Self {
        NcPolynomial { ring: ring.clone(), terms: self.terms.clone() }
    }
}

impl std::ops::Add for &NcPolynomial {
    type Output = NcPolynomial;
    fn add(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

/// Wraps a coefficient in parentheses when it is a sum at top level.
pub(crate) fn coefficient_factor(s: &str) -> String {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return format!("({s})"),
            _ => {}
        }
    }
    s.to_string()
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.looks_negative();
            let mag = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = self.ring.render_word(w);
            if w.is_empty() {
                write!(f, "{}", coefficient_factor(&mag.to_string()))?;
            } else if mag.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{}*{word}", coefficient_factor(&mag.to_string()))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use proptest::prelude::*;

    fn xy() -> Arc<FreeAlgebra> {
        FreeAlgebra::unit(FieldKind::RationalFunctions, &["x", "y"])
    }

    #[test]
    fn free_products_do_not_commute() {
        let r = xy();
        let x = NcPolynomial::generator(&r, 0);
        let y = NcPolynomial::generator(&r, 1);
        assert_eq!((&x * &y).to_string(), "x*y");
        assert_ne!(&x * &y, &y * &x);
    }

    #[test]
    fn bilinear_expansion() {
        let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]);
        let x = NcPolynomial::generator(&r, 0);
        let y = NcPolynomial::generator(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "-y^2 + y*x - x*y + x^2");
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn degrees_add() {
        let r = xy();
        let xy_ = NcPolynomial::monomial(&r, &[0, 1]);
        let x = NcPolynomial::generator(&r, 0);
        assert_eq!((&xy_ * &x).degree(), Some(3));
    }

    #[test]
    fn renders_quantum_relation() {
        let r = xy();
        let q = Scalar::q();
        let p = NcPolynomial::from_terms(
            &r,
            [(r.word(&[1, 0]), Scalar::one(r.field())), (r.word(&[0, 1]), -&q)],
        )
        .unwrap();
        assert_eq!(p.to_string(), "y*x - q*x*y");
    }

    #[test]
    fn compound_coefficients_are_parenthesized() {
        let r = xy();
        let c = &Scalar::q() + &Scalar::one(r.field());
        let p = NcPolynomial::term(&r, r.word(&[0]), c).unwrap();
        assert_eq!(p.to_string(), "(q + 1)*x");
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = NcPolynomial::generator(&xy(), 0);
        let b = NcPolynomial::generator(&FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]), 0);
        assert!(a.checked_mul(&b).is_err());
        let c = NcPolynomial::generator(&FreeAlgebra::unit(FieldKind::RationalFunctions, &["x", "z"]), 0);
        assert_eq!(a.checked_add(&c), Err(Error::AlphabetMismatch));
    }

    fn arb_poly(ring: Arc<FreeAlgebra>) -> impl Strategy<Value = NcPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u16..2, 0..3), -3i64..4), 0..4).prop_map(
            move |terms| {
                NcPolynomial::from_terms(
                    &ring,
                    terms.into_iter().map(|(l, c)| (ring.word(&l), Scalar::Rational(Rational::from_int(c)))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_distributive(
            a in arb_poly(FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"])),
            b in arb_poly(FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"])),
            c in arb_poly(FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"])),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn homogeneous_decomposition_recovers(a in arb_poly(FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]))) {
            let parts = a.homogeneous_components();
            let mut sum = NcPolynomial::zero(a.ring());
            for p in parts.values() {
                prop_assert!(p.is_homogeneous());
                sum = &sum + p;
            }
            prop_assert_eq!(sum, a);
        }
    }
}
