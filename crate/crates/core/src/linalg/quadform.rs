//! Quadratic forms by symmetric Gram matrix. Characteristic is never 2, so
//! forms and symmetric bilinear forms determine each other.

use super::field::{div, Field, Scalar};
use super::matrix::Matrix;
use super::poly::HomPoly;
use super::subspace::LinSubspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    gram: Matrix,
}

impl QuadForm {
    pub fn from_gram(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Dimension("Gram matrix is not symmetric".into()));
        }
        Ok(QuadForm { gram })
    }

    /// From a degree-2 polynomial: `G_ii = c_ii`, `G_ij = c_ij / 2`.
    pub fn from_poly(q: &HomPoly) -> Self {
        assert_eq!(q.degree(), 2, "quadratic polynomial expected");
        let f = q.field();
        let n = q.nvars();
        let two = f.int(2);
        let mut gram = Matrix::zero(f, n, n);
        for (m, c) in q.terms() {
            let idx: Vec<usize> = m
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                gram.set(i, i, c.clone());
            } else {
                let h = div(c, &two);
                gram.set(i, j, h.clone());
                gram.set(j, i, h);
            }
        }
        QuadForm { gram }
    }

    pub fn to_poly(&self) -> HomPoly {
        let f = self.field();
        let n = self.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut m = vec![0; n];
                m[i] += 1;
                m[j] += 1;
                let c = if i == j {
                    self.gram.get(i, i).clone()
                } else {
                    self.gram.get(i, j) * &f.int(2)
                };
                terms.push((m, c));
            }
        }
        HomPoly::from_terms(f, n, 2, terms)
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        super::matrix::dot(x, &self.gram.mul_vec(x), self.field())
    }

    /// Gram matrix `B^T G B` for the stored basis `B` of `s`.
    pub fn restrict(&self, s: &LinSubspace) -> Result<QuadForm> {
        if s.ambient() != self.dim() {
            return Err(Error::Dimension(format!(
                "subspace of a {}-space restricted to a form on a {}-space",
                s.ambient(),
                self.dim()
            )));
        }
        let b = Matrix::from_cols(self.field(), self.dim(), s.basis());
        Ok(QuadForm {
            gram: b.transpose().mul(&self.gram).mul(&b),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: Field, terms: &[(&[u32], i64)]) -> QuadForm {
        QuadForm::from_poly(&HomPoly::from_terms(
            f,
            terms[0].0.len(),
            2,
            terms.iter().map(|(m, c)| (m.to_vec(), f.int(*c))),
        ))
    }

    #[test]
    fn hyperbolic_and_cone_ranks() {
        for f in [Field::Rational, Field::Prime(11)] {
            // x2 x5 - x3 x4 in coordinates (x2, x3, x4, x5)
            let smooth = q(f, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]);
            assert_eq!(smooth.rank(), 4);
            // x2 x4 - x3^2
            let cone = q(f, &[(&[1, 0, 1, 0], 1), (&[0, 2, 0, 0], -1)]);
            assert_eq!(cone.rank(), 3);
        }
    }

    #[test]
    fn restriction_to_ruling_line_vanishes() {
        let f = Field::Rational;
        let smooth = q(f, &[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]);
        // the line x2 = x3 = 0 lies on the quadric
        let line = LinSubspace::coordinate(f, 4, &[2, 3]);
        assert!(smooth.restrict(&line).unwrap().is_zero());
        let other = LinSubspace::coordinate(f, 4, &[0, 3]);
        assert_eq!(smooth.restrict(&other).unwrap().rank(), 2);
    }

    #[test]
    fn poly_round_trip() {
        let f = Field::Prime(7);
        let form = q(f, &[(&[2, 0, 0], 3), (&[0, 1, 1], 5), (&[1, 0, 1], 1)]);
        assert_eq!(QuadForm::from_poly(&form.to_poly()), form);
        assert_eq!(form.eval(&f.vector(&[1, 1, 1])), f.int(9));
    }

    #[test]
    fn asymmetric_gram_rejected() {
        let f = Field::Rational;
        assert!(QuadForm::from_gram(Matrix::from_ints(f, 2, 2, &[1, 2, 3, 4])).is_err());
    }
}
