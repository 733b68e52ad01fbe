//! Twisted homogeneous coordinate rings of concrete triples.
//!
//! On `P^1` a section of `O(nk)` is a polynomial of degree at most `nk` in
//! the affine coordinate `u`. An automorphism `u -> (au + b)/(cu + d)` pulls
//! a section back with the homogenizing factor `(cu + d)^{nk}`, which keeps
//! the result polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldError, FieldKind, Scalar};
use crate::linalg::{self, Matrix, Vector};
use crate::poly::FreeAlgebra;
use crate::presentation::{free_words_desc, new_relations, AlgebraPresentation};
use crate::word::{Letter, Word};

/// `u -> (a u + b) / (c u + d)` with `ad - bc != 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct P1Automorphism {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
}

impl P1Automorphism {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let field = a.kind();
        if let Some(x) = [&b, &c, &d].into_iter().find(|x| x.kind() != field) {
            return Err(mismatch(field, x.kind()));
        }
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(P1Automorphism { a, b, c, d })
    }

    pub fn identity(field: FieldKind) -> Self {
        let (z, o) = (Scalar::zero(field), Scalar::one(field));
        P1Automorphism { a: o.clone(), b: z.clone(), c: z, d: o }
    }

    /// `u -> lambda u`.
    pub fn scaling(lambda: Scalar) -> Result<Self> {
        let field = lambda.kind();
        Self::new(lambda, Scalar::zero(field), Scalar::zero(field), Scalar::one(field))
    }

    pub fn field(&self) -> FieldKind {
        self.a.kind()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Matrix product `self * other`, the map `u -> self(other(u))`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = |x: &Scalar, y: &Scalar, z: &Scalar, w: &Scalar| &(x * y) + &(z * w);
        P1Automorphism {
            a: m(&self.a, &other.a, &self.b, &other.c),
            b: m(&self.a, &other.b, &self.b, &other.d),
            c: m(&self.c, &other.a, &self.d, &other.c),
            d: m(&self.c, &other.b, &self.d, &other.d),
        }
    }

    pub fn inverse(&self) -> Self {
        P1Automorphism { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Value at a point of the affine line; `None` at the pole.
    pub fn apply(&self, u: &Scalar) -> Option<Scalar> {
        let den = &(&self.c * u) + &self.d;
        (&(&self.a * u) + &self.b).checked_div(&den).ok()
    }
}

impl fmt::Display for P1Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u -> ({}*u + {})/({}*u + {})", self.a, self.b, self.c, self.d)
    }
}

/// A section of `O(k)^{level}` as a polynomial in `u` of degree at most `level * k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Section {
    level: u32,
    line_degree: u32,
    coeffs: Vec<Scalar>,
}

impl Section {
    pub fn new(level: u32, line_degree: u32, mut coeffs: Vec<Scalar>) -> Result<Self> {
        if line_degree == 0 {
            return Err(Error::Precondition("line degree must be positive".into()));
        }
        let Some(field) = coeffs.first().map(Scalar::kind) else {
            return Err(Error::Precondition("a section needs a coefficient field".into()));
        };
        let len = (level * line_degree + 1) as usize;
        while coeffs.len() > len && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > len {
            return Err(Error::DegreeExceedsCutoff { degree: coeffs.len() as u32 - 1, cutoff: len as u32 - 1 });
        }
        if let Some(c) = coeffs.iter().find(|c| c.kind() != field) {
            return Err(mismatch(field, c.kind()));
        }
        coeffs.resize(len, Scalar::zero(field));
        Ok(Section { level, line_degree, coeffs })
    }

    /// `u^i` at the given level of `O(1)`.
    pub fn monomial(field: FieldKind, level: u32, i: u32) -> Result<Self> {
        Self::monomial_of_degree(field, level, 1, i)
    }

    pub fn monomial_of_degree(field: FieldKind, level: u32, line_degree: u32, i: u32) -> Result<Self> {
        let mut c = vec![Scalar::zero(field); i as usize + 1];
        c[i as usize] = Scalar::one(field);
        Self::new(level, line_degree, c)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn line_degree(&self) -> u32 {
        self.line_degree
    }

    pub fn field(&self) -> FieldKind {
        self.coeffs[0].kind()
    }

    /// Coefficients of `1, u, ..., u^{level * k}`.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Dimension of the section space at this level.
    pub fn space_dim(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn mismatch(a: FieldKind, b: FieldKind) -> Error {
    Error::Field(FieldError::FieldMismatch(a, b))
}

fn poly_mul(a: &[Scalar], b: &[Scalar], field: FieldKind) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn poly_pow(a: &[Scalar], e: u32, field: FieldKind) -> Vec<Scalar> {
    (0..e).fold(vec![Scalar::one(field)], |acc, _| poly_mul(&acc, a, field))
}

/// `(cu + d)^{N} g((au + b)/(cu + d))` with `N = level * k`.
pub fn section_twist(g: &Section, sigma: &P1Automorphism) -> Result<Section> {
    let field = g.field();
    if sigma.field() != field {
        return Err(mismatch(field, sigma.field()));
    }
    let top = g.coeffs.len() as u32 - 1;
    let num = [sigma.b.clone(), sigma.a.clone()];
    let den = [sigma.d.clone(), sigma.c.clone()];
    let mut out = vec![Scalar::zero(field); g.coeffs.len()];
    for (i, gi) in g.coeffs.iter().enumerate() {
        if gi.is_zero() {
            continue;
        }
        let term = poly_mul(&poly_pow(&num, i as u32, field), &poly_pow(&den, top - i as u32, field), field);
        for (k, t) in term.iter().enumerate() {
            out[k] = &out[k] + &(gi * t);
        }
    }
    Section::new(g.level, g.line_degree, out)
}

fn product(f: &Section, g: &Section) -> Result<Section> {
    if f.line_degree != g.line_degree {
        return Err(Error::Precondition("sections of different line bundles".into()));
    }
    if f.field() != g.field() {
        return Err(mismatch(f.field(), g.field()));
    }
    Section::new(f.level + g.level, f.line_degree, poly_mul(&f.coeffs, &g.coeffs, f.field()))
}

/// `f * g = f sigma^m(g)` for `f` at level `m`.
pub fn thcr_multiply(f: &Section, g: &Section, sigma: &P1Automorphism) -> Result<Section> {
    product(f, &section_twist(g, &sigma.pow(f.level as i64))?)
}

/// Product in `Gamma_h` with `a * b = s^n(a) b` for `b` at level `n`.
pub fn gamma_h_multiply(a: &Section, b: &Section, s: &P1Automorphism) -> Result<Section> {
    product(&section_twist(a, &s.pow(b.level as i64))?, b)
}

/// Generator names for the level-one sections `1, u, ..., u^k`.
fn generator_names(k: u32) -> Vec<String> {
    if k == 1 {
        vec!["x".into(), "y".into()]
    } else {
        (0..=k).map(|i| format!("x{i}")).collect()
    }
}

/// Presentation of the twisted coordinate ring of `(P^1, sigma, O(1))` through degree `d_max`.
pub fn thcr_presentation(sigma: &P1Automorphism, d_max: u32) -> Result<AlgebraPresentation> {
    thcr_presentation_with_degree(sigma, 1, d_max)
}

/// As `thcr_presentation`, for the line bundle `O(k)`.
///
/// Generators are the level-one sections `u^i`. They are declared in reverse,
/// so the last one has the lowest precedence and `x*y - q*y*x` prints as such.
pub fn thcr_presentation_with_degree(sigma: &P1Automorphism, k: u32, d_max: u32) -> Result<AlgebraPresentation> {
    if d_max < 2 {
        return Err(Error::Precondition("d_max must be at least 2".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("line degree must be positive".into()));
    }
    let field = sigma.field();
    let names = generator_names(k);
    let n = names.len();
    // Declaration order is reversed; the letter for u^i is n - 1 - i.
    let decl: Vec<(String, u32)> = names.iter().rev().map(|s| (s.clone(), 1)).collect();
    let ring: Arc<FreeAlgebra> = FreeAlgebra::new(field, decl)?;
    let section_of = |l: Letter| Section::monomial_of_degree(field, 1, k, (n - 1 - l as usize) as u32);
    let gens: Vec<Section> = (0..n as Letter).map(section_of).collect::<Result<_>>()?;

    let mut images: Vec<(Vec<Letter>, Section)> =
        vec![(Vec::new(), Section::new(0, k, vec![Scalar::one(field)])?)];
    let mut relations = Vec::new();
    for s in 1..=d_max {
        let power = sigma.pow(s as i64 - 1);
        let twisted: Vec<Section> = gens.iter().map(|g| section_twist(g, &power)).collect::<Result<_>>()?;
        let mut next = Vec::with_capacity(images.len() * n);
        for (letters, img) in &images {
            for (g, t) in twisted.iter().enumerate() {
                let mut l = letters.clone();
                l.push(g as Letter);
                next.push((l, product(img, t)?));
            }
        }
        images = next;
        if s < 2 {
            continue;
        }
        let words = free_words_desc(&ring, s);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows: Vec<Vector> = vec![Vec::new(); words.len()];
        for (letters, img) in &images {
            rows[index[&ring.word(letters)]] = img.coeffs.clone();
        }
        let kernel = linalg::left_kernel(field, &rows);
        relations.extend(new_relations(&ring, &relations, s, &words, &index, &kernel));
    }
    let name = if sigma.is_identity() { "P1".to_string() } else { "P1_twisted".to_string() };
    AlgebraPresentation::new(name, ring, relations)
}

/// `(X, sigma, L)` with `X` two points swapped by `s` and `L` of fiber ranks `r1`, `r2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TwoPointTriple {
    r1: u32,
    r2: u32,
}

impl TwoPointTriple {
    pub fn new(r1: u32, r2: u32) -> Result<Self> {
        if r1 == 0 && r2 == 0 {
            return Err(Error::Precondition("r1 + r2 must be at least 1".into()));
        }
        Ok(TwoPointTriple { r1, r2 })
    }

    pub fn ranks(&self) -> (u32, u32) {
        (self.r1, self.r2)
    }
}

/// `dim A_n = dim Hom(V, s^n V)` for `n <= n_max`, as module maps over `k x k`.
pub fn two_point_hilbert(t: TwoPointTriple, n_max: u32) -> Vec<u64> {
    let v = [t.r1 as u64, t.r2 as u64];
    (0..=n_max)
        .map(|n| {
            let sv = if n % 2 == 0 { v } else { [v[1], v[0]] };
            v[0] * sv[0] + v[1] * sv[1]
        })
        .collect()
}

/// The automorphism as a 2x2 matrix on `(u, 1)`.
pub fn as_matrix(sigma: &P1Automorphism) -> Matrix {
    Matrix::from_rows(sigma.field(), vec![vec![sigma.a.clone(), sigma.b.clone()], vec![sigma.c.clone(), sigma.d.clone()]])
        .expect("square matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::presentation::{build, same_relation_span};
    use proptest::prelude::*;

    fn q_scaling() -> P1Automorphism {
        P1Automorphism::scaling(Scalar::q()).unwrap()
    }

    fn rat(n: i64) -> Scalar {
        Scalar::from_int(FieldKind::Rationals, n)
    }

    #[test]
    fn twisting_sections() {
        let u = Section::monomial(FieldKind::RationalFunctions, 1, 1).unwrap();
        let t = section_twist(&u, &q_scaling()).unwrap();
        assert_eq!(t.coeffs(), &[Scalar::zero(FieldKind::RationalFunctions), Scalar::q()]);
        let id = P1Automorphism::identity(FieldKind::RationalFunctions);
        assert_eq!(section_twist(&u, &id).unwrap(), u);
        let flip = P1Automorphism::new(rat(0), rat(1), rat(1), rat(0)).unwrap();
        let u = Section::monomial(FieldKind::Rationals, 1, 1).unwrap();
        assert_eq!(section_twist(&u, &flip).unwrap(), Section::monomial(FieldKind::Rationals, 1, 0).unwrap());
    }

    #[test]
    fn quantum_products() {
        let f = FieldKind::RationalFunctions;
        let x = Section::monomial(f, 1, 0).unwrap();
        let y = Section::monomial(f, 1, 1).unwrap();
        let s = q_scaling();
        let xy = thcr_multiply(&x, &y, &s).unwrap();
        let yx = thcr_multiply(&y, &x, &s).unwrap();
        assert_eq!(xy.coeffs()[1], Scalar::q());
        assert_eq!(yx.coeffs()[1], Scalar::one(f));
        let yy = thcr_multiply(&y, &y, &s).unwrap();
        assert_eq!(yy.coeffs()[2], Scalar::q());
        let id = P1Automorphism::identity(f);
        assert_eq!(thcr_multiply(&x, &y, &id).unwrap(), thcr_multiply(&y, &x, &id).unwrap());
    }

    #[test]
    fn presentation_of_twisted_line() {
        let p = thcr_presentation(&q_scaling(), 5).unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].to_string(), "x*y - q*y*x");
        let sys = build(&p, 8).unwrap();
        assert_eq!(sys.hilbert_function(8).unwrap(), (1..=9).collect::<Vec<u128>>());
    }

    #[test]
    fn untwisted_line_is_commutative() {
        let p = thcr_presentation(&P1Automorphism::identity(FieldKind::Rationals), 4).unwrap();
        let r = p.ring();
        let (x, y) = (r.index_of("x").unwrap(), r.index_of("y").unwrap());
        let comm = &crate::poly::NcPolynomial::monomial(r, &[x, y]) - &crate::poly::NcPolynomial::monomial(r, &[y, x]);
        assert!(same_relation_span(p.relations(), &[comm]));
        let sys = build(&p, 7).unwrap();
        assert_eq!(sys.hilbert_function(7).unwrap(), (1..=8).collect::<Vec<u128>>());
    }

    #[test]
    fn non_diagonal_automorphism_keeps_dimensions() {
        let sigma = P1Automorphism::new(rat(1), rat(1), rat(0), rat(1)).unwrap();
        let p = thcr_presentation(&sigma, 5).unwrap();
        let sys = build(&p, 5).unwrap();
        assert_eq!(sys.hilbert_function(5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let p2 = thcr_presentation_with_degree(&sigma, 2, 4).unwrap();
        let sys = build(&p2, 4).unwrap();
        assert_eq!(sys.hilbert_function(4).unwrap(), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn gamma_h_agrees_after_relabeling() {
        // Level-m sections of Gamma_h map to B by twisting with sigma^m.
        let f = FieldKind::Rationals;
        let sigma = P1Automorphism::new(rat(2), rat(1), rat(1), rat(1)).unwrap();
        let s = sigma.inverse();
        let phi = |a: &Section| section_twist(a, &sigma.pow(a.level() as i64)).unwrap();
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for i in 0..=m {
                for j in 0..=n {
                    let a = Section::monomial(f, m, i).unwrap();
                    let b = Section::monomial(f, n, j).unwrap();
                    let lhs = phi(&gamma_h_multiply(&a, &b, &s).unwrap());
                    let rhs = thcr_multiply(&phi(&a), &phi(&b), &sigma).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn two_point_dimensions() {
        let d = |a, b| two_point_hilbert(TwoPointTriple::new(a, b).unwrap(), 5);
        assert_eq!(d(1, 0), vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(d(1, 1), vec![2; 6]);
        assert_eq!(d(2, 1), vec![5, 4, 5, 4, 5, 4]);
        assert!(TwoPointTriple::new(0, 0).is_err());
    }

    #[test]
    fn composition_matches_matrices() {
        let a = P1Automorphism::new(rat(2), rat(1), rat(1), rat(1)).unwrap();
        let b = P1Automorphism::new(rat(0), rat(1), rat(-1), rat(3)).unwrap();
        let m = as_matrix(&a).mul(&as_matrix(&b)).unwrap();
        assert_eq!(as_matrix(&a.compose(&b)), m);
        let u = Scalar::from_rational(FieldKind::Rationals, Rational::new(5, 7).unwrap());
        assert_eq!(a.compose(&b).apply(&u), b.apply(&u).and_then(|v| a.apply(&v)));
        assert!(P1Automorphism::new(rat(1), rat(2), rat(2), rat(4)).is_err());
    }

    fn arb_sigma() -> impl Strategy<Value = P1Automorphism> {
        (-3i64..4, -3i64..4, -3i64..4, -3i64..4)
            .prop_filter("invertible", |(a, b, c, d)| a * d != b * c)
            .prop_map(|(a, b, c, d)| P1Automorphism::new(rat(a), rat(b), rat(c), rat(d)).unwrap())
    }

    fn arb_section(level: u32) -> impl Strategy<Value = Section> {
        proptest::collection::vec(-5i64..6, level as usize + 1)
            .prop_map(move |c| Section::new(level, 1, c.into_iter().map(rat).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn multiplication_is_associative(
            sigma in arb_sigma(),
            f in arb_section(1),
            g in arb_section(2),
            h in arb_section(1),
        ) {
            let left = thcr_multiply(&thcr_multiply(&f, &g, &sigma).unwrap(), &h, &sigma).unwrap();
            let right = thcr_multiply(&f, &thcr_multiply(&g, &h, &sigma).unwrap(), &sigma).unwrap();
            prop_assert_eq!(left.level(), 4);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn twisting_is_an_action(s in arb_sigma(), t in arb_sigma(), g in arb_section(2)) {
            let lhs = section_twist(&section_twist(&g, &s).unwrap(), &t).unwrap();
            prop_assert_eq!(lhs, section_twist(&g, &s.compose(&t)).unwrap());
        }

        #[test]
        fn two_point_is_periodic(r1 in 0u32..6, r2 in 1u32..6) {
            let d = two_point_hilbert(TwoPointTriple::new(r1, r2).unwrap(), 12);
            for n in 0..11 {
                prop_assert_eq!(d[n + 2], d[n]);
            }
        }
    }
}
