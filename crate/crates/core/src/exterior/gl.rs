//! The action of `GL(V)` on vectors, covectors and two-tensors.
//!
//! `g` acts on `V` by `v -> g v` and on `Λ²V` by `g ^ g`, i.e. on Gram
//! matrices by `G -> g G gᵀ`. On the dual side it acts by the inverse
//! transpose, so the pairing between the two sides is invariant.

use super::tensor::{Side, TwoTensor, DIM};
use crate::error::{Error, Result};
use crate::linalg::{Field, LinSubspace, Matrix, Scalar};
use crate::random::{self, Rng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl6 {
    g: Matrix,
    ginv: Matrix,
}

impl Gl6 {
    pub fn new(g: Matrix) -> Result<Self> {
        if (g.rows(), g.cols()) != (DIM, DIM) {
            return Err(Error::Dimension("GL6 element must be 6x6".into()));
        }
        let ginv = g
            .inverse()
            .ok_or_else(|| Error::Precondition("matrix is not invertible".into()))?;
        Ok(Gl6 { g, ginv })
    }

    pub fn identity(field: Field) -> Self {
        Gl6 {
            g: Matrix::identity(field, DIM),
            ginv: Matrix::identity(field, DIM),
        }
    }

    /// Uniformly random entries (small integers over `Q`), redrawn until invertible.
    pub fn random(field: Field, rng: &mut Rng) -> Self {
        loop {
            let data = random::vector(field, DIM * DIM, rng);
            let g = Matrix::new(field, DIM, DIM, data).expect("6x6");
            if let Ok(x) = Gl6::new(g) {
                return x;
            }
        }
    }

    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.ginv
    }

    pub fn inverse(&self) -> Gl6 {
        Gl6 {
            g: self.ginv.clone(),
            ginv: self.g.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Gl6) -> Gl6 {
        Gl6 {
            g: self.g.mul(&other.g),
            ginv: other.ginv.mul(&self.ginv),
        }
    }

    pub fn vector(&self, side: Side, v: &[Scalar]) -> Vec<Scalar> {
        match side {
            Side::V => self.g.mul_vec(v),
            Side::Dual => self.ginv.vec_mul(v),
        }
    }

    pub fn tensor(&self, w: &TwoTensor) -> TwoTensor {
        let g = w.gram();
        let moved = match w.side() {
            Side::V => self.g.mul(&g).mul(&self.g.transpose()),
            Side::Dual => self.ginv.transpose().mul(&g).mul(&self.ginv),
        };
        TwoTensor::from_gram(w.side(), &moved)
    }

    /// Image of a subspace of `V` (or `V*`).
    pub fn subspace(&self, side: Side, s: &LinSubspace) -> LinSubspace {
        LinSubspace::span(
            s.field(),
            DIM,
            s.basis().iter().map(|b| self.vector(side, b)),
        )
    }

    /// Image of a subspace of `Λ²V` (or `Λ²V*`).
    pub fn tensor_subspace(&self, side: Side, s: &LinSubspace) -> LinSubspace {
        LinSubspace::span(
            s.field(),
            15,
            s.basis().iter().map(|b| {
                let t = TwoTensor::new(side, b.clone()).expect("15 coordinates");
                self.tensor(&t).into_coords()
            }),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.g.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::tensor::{pairing, wedge2};

    #[test]
    fn pairing_is_invariant() {
        let f = Field::Prime(11);
        let mut rng = random::rng(3);
        let g = Gl6::random(f, &mut rng);
        let a = TwoTensor::new(Side::V, random::vector(f, 15, &mut rng)).unwrap();
        let b = TwoTensor::new(Side::Dual, random::vector(f, 15, &mut rng)).unwrap();
        assert_eq!(
            pairing(&g.tensor(&a), &g.tensor(&b)).unwrap(),
            pairing(&a, &b).unwrap()
        );
    }

    #[test]
    fn wedge_is_equivariant() {
        let f = Field::Rational;
        let mut rng = random::rng(4);
        let g = Gl6::random(f, &mut rng);
        let x = random::vector(f, 6, &mut rng);
        let y = random::vector(f, 6, &mut rng);
        let lhs = g.tensor(&wedge2(Side::V, &x, &y));
        let rhs = wedge2(Side::V, &g.vector(Side::V, &x), &g.vector(Side::V, &y));
        assert_eq!(lhs, rhs);
        let back = g.inverse().tensor(&lhs);
        assert_eq!(back, wedge2(Side::V, &x, &y));
    }

    #[test]
    fn kernels_move_with_the_form() {
        let f = Field::Prime(13);
        let mut rng = random::rng(5);
        let g = Gl6::random(f, &mut rng);
        let w = TwoTensor::from_terms(f, Side::Dual, &[(1, 0, 2), (1, 1, 3)]);
        let k = crate::exterior::tensor::form_kernel(&w);
        assert_eq!(
            crate::exterior::tensor::form_kernel(&g.tensor(&w)),
            g.subspace(Side::V, &k)
        );
    }
}
