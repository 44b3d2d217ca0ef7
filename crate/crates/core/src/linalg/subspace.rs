//! Linear subspaces of a coordinate space, stored by their reduced row
//! echelon basis. Two values are equal as subspaces iff they are equal as
//! structs.

use serde_json::json;

use super::field::{Field, Scalar};
use super::matrix::{is_zero_vec, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinSubspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl LinSubspace {
    /// Span of arbitrary vectors (dependent or zero vectors allowed).
    pub fn span<I>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        for r in &rows {
            assert_eq!(
                r.len(),
                ambient,
                "vector length differs from ambient dimension"
            );
        }
        let (basis, pivots) = Matrix::from_rows(field, ambient, &rows).rref();
        LinSubspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        LinSubspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        LinSubspace::span(
            field,
            ambient,
            (0..ambient).map(|i| field.unit_vector(ambient, i)),
        )
    }

    /// Span of a subset of the coordinate vectors.
    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Self {
        LinSubspace::span(
            field,
            ambient,
            indices.iter().map(|&i| field.unit_vector(ambient, i)),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, &self.basis)
    }

    /// Reduces `v` modulo the subspace: the result vanishes on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let f = out[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x = &*x - &(&f * y);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in the stored basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = self.field.zero_vector(self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(row) {
                *x = &*x + &(c * y);
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &LinSubspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &LinSubspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &LinSubspace) -> Result<LinSubspace> {
        self.check_ambient(other)?;
        Ok(LinSubspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    pub fn intersect(&self, other: &LinSubspace) -> Result<LinSubspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// The annihilator under the standard coordinate pairing.
    pub fn annihilator(&self) -> LinSubspace {
        if self.basis.is_empty() {
            return LinSubspace::full(self.field, self.ambient);
        }
        self.basis_matrix().kernel()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<serde_json::Value> = self
            .basis
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(Scalar::to_json).collect()))
            .collect();
        json!({ "ambient": self.ambient, "basis": basis })
    }

    /// Parses `{"ambient": n, "basis": [...]}`; the basis is re-echelonised.
    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<LinSubspace> {
        let ambient = v
            .get("ambient")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("subspace needs an integer \"ambient\"".into()))?
            as usize;
        let rows = v
            .get("basis")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| Error::Parse("subspace needs a \"basis\" array".into()))?
            .iter()
            .map(|r| field.vector_from_json(r))
            .collect::<Result<Vec<_>>>()?;
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::Parse(format!(
                "basis vector of length {} in ambient dimension {ambient}",
                r.len()
            )));
        }
        Ok(LinSubspace::span(field, ambient, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: Field, n: usize, i: usize) -> Vec<Scalar> {
        f.unit_vector(n, i)
    }

    #[test]
    fn intersect_coordinate_lines() {
        let f = Field::Rational;
        let a = LinSubspace::coordinate(f, 6, &[0, 1]);
        let b = LinSubspace::coordinate(f, 6, &[1, 2]);
        assert_eq!(
            a.intersect(&b).unwrap(),
            LinSubspace::coordinate(f, 6, &[1])
        );
    }

    #[test]
    fn annihilator_of_hyperplane() {
        let f = Field::Prime(7);
        let h = LinSubspace::coordinate(f, 6, &[0, 1, 2, 3, 4]);
        assert_eq!(h.annihilator(), LinSubspace::coordinate(f, 6, &[5]));
        assert_eq!(
            LinSubspace::zero(f, 6).annihilator(),
            LinSubspace::full(f, 6)
        );
    }

    #[test]
    fn sum_of_kernel_planes() {
        let f = Field::Rational;
        let a = LinSubspace::coordinate(f, 6, &[4, 5]);
        let b = LinSubspace::coordinate(f, 6, &[2, 3]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s, LinSubspace::coordinate(f, 6, &[2, 3, 4, 5]));
    }

    #[test]
    fn canonical_basis_is_spanning_set_independent() {
        let f = Field::Rational;
        let v1 = f.vector(&[1, 2, 0, 3]);
        let v2 = f.vector(&[0, 1, 1, 1]);
        let a = LinSubspace::span(f, 4, [v1.clone(), v2.clone()]);
        let b = LinSubspace::span(
            f,
            4,
            [
                super::super::matrix::add_vecs(&v1, &v2),
                super::super::matrix::scale(&v2, &f.int(-5)),
                f.zero_vector(4),
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = Field::Rational;
        let a = LinSubspace::coordinate(f, 4, &[0]);
        let b = LinSubspace::coordinate(f, 5, &[0]);
        assert!(a.intersect(&b).is_err());
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::Prime(11);
        let s = LinSubspace::span(f, 4, [f.vector(&[1, 1, 0, 0]), f.vector(&[0, 0, 1, 2])]);
        let v = f.vector(&[3, 3, 5, 10]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&e(f, 4, 0)).is_none());
    }

    #[test]
    fn json_shape() {
        let f = Field::Rational;
        let s = LinSubspace::span(f, 3, [vec![f.ratio(1, 2), f.int(1), f.zero()]]);
        let j = s.to_json();
        assert_eq!(j, json!({"ambient": 3, "basis": [["1", "2", "0"]]}));
        assert_eq!(LinSubspace::from_json(f, &j).unwrap(), s);
    }
}
