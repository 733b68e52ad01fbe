//! Graded endomorphisms of a free algebra given by a matrix on degree-one generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::poly::{FreeAlgebra, NcPolynomial};
use crate::word::Word;

/// `sigma(x_j) = sum_i matrix[i][j] * x_i`: column `j` is the image of generator `j`.
///
/// With this convention the matrix of `sigma ∘ tau` is `sigma.matrix * tau.matrix`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedEndomorphism {
    matrix: Matrix,
}

impl GradedEndomorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), got: matrix.ncols() });
        }
        Ok(GradedEndomorphism { matrix })
    }

    pub fn identity(field: crate::field::FieldKind, n: usize) -> Self {
        GradedEndomorphism { matrix: Matrix::identity(field, n) }
    }

    /// Diagonal scaling `x_i -> d_i x_i`.
    pub fn diagonal(entries: Vec<Scalar>) -> Result<Self> {
        let field = entries.first().map(Scalar::kind).ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        Ok(GradedEndomorphism { matrix: m })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.determinant().is_ok_and(|d| !d.is_zero())
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(GradedEndomorphism { matrix: self.matrix.inverse()? })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(GradedEndomorphism { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        Ok(GradedEndomorphism { matrix: self.matrix.pow(exp)? })
    }

    /// Image of generator `g` as a linear combination of generators.
    pub fn image_of_generator(&self, ring: &Arc<FreeAlgebra>, g: usize) -> NcPolynomial {
        let mut p = NcPolynomial::zero(ring);
        for i in 0..self.dim() {
            p.add_term(ring.word(&[i as u16]), self.matrix.get(i, g));
        }
        p
    }

    fn check(&self, ring: &Arc<FreeAlgebra>) -> Result<()> {
        if ring.n_gens() != self.dim() {
            return Err(Error::DimensionMismatch { expected: ring.n_gens(), got: self.dim() });
        }
        if ring.field() != self.matrix.field() {
            return Err(crate::field::FieldError::FieldMismatch(self.matrix.field(), ring.field()).into());
        }
        if let Some(g) = ring.weights().iter().position(|&w| w != 1) {
            return Err(Error::NotWeightOne(ring.symbols()[g].clone()));
        }
        Ok(())
    }

    pub fn apply_word(&self, ring: &Arc<FreeAlgebra>, w: &Word) -> Result<NcPolynomial> {
        self.check(ring)?;
        let images: Vec<NcPolynomial> = (0..self.dim()).map(|g| self.image_of_generator(ring, g)).collect();
        Ok(w.letters().iter().fold(NcPolynomial::one(ring), |acc, &l| &acc * &images[l as usize]))
    }

    /// Extends the matrix multiplicatively and linearly to `p`.
    pub fn apply(&self, p: &NcPolynomial) -> Result<NcPolynomial> {
        let ring = p.ring();
        self.check(ring)?;
        let images: Vec<NcPolynomial> = (0..self.dim()).map(|g| self.image_of_generator(ring, g)).collect();
        let mut out = NcPolynomial::zero(ring);
        for (w, c) in p.iter() {
            let img = w.letters().iter().fold(NcPolynomial::one(ring), |acc, &l| &acc * &images[l as usize]);
            out = &out + &img.scale(c);
        }
        Ok(out)
    }
}

/// Free-function form of [`GradedEndomorphism::apply`].
pub fn apply_endomorphism(sigma: &GradedEndomorphism, p: &NcPolynomial) -> Result<NcPolynomial> {
    sigma.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldKind, Rational};
    use proptest::prelude::*;

    fn ring() -> Arc<FreeAlgebra> {
        FreeAlgebra::unit(FieldKind::RationalFunctions, &["x", "y"])
    }

    fn diag_q1() -> GradedEndomorphism {
        GradedEndomorphism::diagonal(vec![Scalar::q(), Scalar::one(FieldKind::RationalFunctions)]).unwrap()
    }

    #[test]
    fn identity_fixes_everything() {
        let r = ring();
        let p = &NcPolynomial::monomial(&r, &[1, 0, 1]) + &NcPolynomial::monomial(&r, &[0]);
        let id = GradedEndomorphism::identity(r.field(), 2);
        assert_eq!(apply_endomorphism(&id, &p).unwrap(), p);
    }

    #[test]
    fn diagonal_scales_by_x_count() {
        let r = ring();
        let s = diag_q1();
        let xy = NcPolynomial::monomial(&r, &[0, 1]);
        assert_eq!(s.apply(&xy).unwrap(), xy.scale(&Scalar::q()));
        let yxy = NcPolynomial::monomial(&r, &[1, 0, 1]);
        assert_eq!(s.apply(&yxy).unwrap(), yxy.scale(&Scalar::q()));
    }

    #[test]
    fn rejects_wrong_size_or_weight() {
        let s = diag_q1();
        let r3 = FreeAlgebra::unit(FieldKind::RationalFunctions, &["x", "y", "z"]);
        assert!(s.apply(&NcPolynomial::generator(&r3, 0)).is_err());
        let heavy = FreeAlgebra::new(FieldKind::RationalFunctions, vec![("x".into(), 1), ("y".into(), 2)]).unwrap();
        assert!(matches!(s.apply(&NcPolynomial::generator(&heavy, 0)), Err(Error::NotWeightOne(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = GradedEndomorphism> {
        proptest::collection::vec(-3i64..4, 4).prop_map(|v| {
            let f = FieldKind::Rationals;
            let rows = vec![
                vec![Scalar::from_int(f, v[0]), Scalar::from_int(f, v[1])],
                vec![Scalar::from_int(f, v[2]), Scalar::from_int(f, v[3])],
            ];
            GradedEndomorphism::new(Matrix::from_rows(f, rows).unwrap()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn composition_matches_sequential_application(
            s in arb_matrix(), t in arb_matrix(),
            letters in proptest::collection::vec(0u16..2, 0..5), c in -5i64..5,
        ) {
            let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]);
            let p = NcPolynomial::term(&r, r.word(&letters), Scalar::Rational(Rational::from_int(c))).unwrap();
            let lhs = s.compose(&t).unwrap().apply(&p).unwrap();
            let rhs = s.apply(&t.apply(&p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn multiplicative(s in arb_matrix(), a in proptest::collection::vec(0u16..2, 0..4), b in proptest::collection::vec(0u16..2, 0..4)) {
            let r = FreeAlgebra::unit(FieldKind::Rationals, &["x", "y"]);
            let pa = NcPolynomial::monomial(&r, &a);
            let pb = NcPolynomial::monomial(&r, &b);
            let lhs = s.apply(&(&pa * &pb)).unwrap();
            let rhs = &s.apply(&pa).unwrap() * &s.apply(&pb).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
