//! Dense matrices over a [`Field`] with exact elimination.
//!
//! Over `Q` elimination is fraction-free (Bareiss): each row is cleared of
//! denominators and the forward pass keeps every entry an integer minor of the
//! input, dividing exactly by the previous pivot. Over `F_p` plain Gaussian
//! elimination is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{div, Field, Scalar};
use super::subspace::LinSubspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Row-major constructor. A matrix may have zero rows (the empty spanning
    /// set) but always has at least one column.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if cols == 0 {
            return Err(Error::Dimension("matrix needs at least one column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "entry {bad} is not in {field}"
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            field,
            data,
        }
    }

    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            field,
            data: entries.iter().map(|&e| field.int(e)).collect(),
        }
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| dot(self.row(r), v, self.field))
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len());
        let mut out = self.field.zero_vector(self.cols);
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = &*o + &(x * self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Reduced row echelon form: nonzero rows only, plus pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let Echelon { rows, pivots } = self.echelon();
        let mut rows = rows;
        // normalise pivots and clear above
        for (i, &pc) in pivots.iter().enumerate() {
            let inv = rows[i][pc].inv().expect("pivot is nonzero");
            for x in rows[i].iter_mut() {
                *x = &*x * &inv;
            }
            for k in 0..i {
                let f = rows[k][pc].clone();
                if f.is_zero() {
                    continue;
                }
                let pivot_row = rows[i].clone();
                for (x, y) in rows[k].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        (rows, pivots)
    }

    /// Right kernel `{x : M x = 0}` in canonical form.
    pub fn kernel(&self) -> LinSubspace {
        let (rref, pivots) = self.rref();
        let n = self.cols;
        let mut basis = Vec::new();
        let mut is_pivot = vec![None; n];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        for free in 0..n {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = self.field.zero_vector(n);
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rref[i][free];
            }
            basis.push(v);
        }
        LinSubspace::span(self.field, n, basis)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = self.row(r).to_vec();
            row.extend(self.field.unit_vector(n, r));
            aug.push(row);
        }
        let (rref, pivots) = Matrix::from_rows(self.field, 2 * n, &aug).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let data = rref.iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Matrix {
            rows: n,
            cols: n,
            field: self.field,
            data,
        })
    }

    /// Some solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.push(b[r].clone());
            aug.push(row);
        }
        let (rref, pivots) = Matrix::from_rows(self.field, self.cols + 1, &aug).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = self.field.zero_vector(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rref[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| {
                    serde_json::Value::Array(self.row(r).iter().map(Scalar::to_json).collect())
                })
                .collect(),
        )
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Matrix> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?
            .iter()
            .map(|r| field.vector_from_json(r))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            Field::Prime(_) => gauss_echelon(self),
            Field::Rational => bareiss_echelon(self),
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn gauss_echelon(m: &Matrix) -> Echelon {
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Fraction-free forward elimination over `Q`.
fn bareiss_echelon(m: &Matrix) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = m.row_vecs().iter().map(|r| clear_denominators(r)).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c..m.cols {
                let num = &pivot * &row[j] - &f * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            for x in row[..c].iter_mut() {
                *x = BigInt::zero();
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| Scalar::Q(BigRational::from_integer(x)))
                .collect()
        })
        .collect();
    Echelon { rows, pivots }
}

fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .map(|x| x.as_rational().expect("rational entry").denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    row.iter()
        .map(|x| {
            let q = x.as_rational().expect("rational entry");
            q.numer() * (&lcm / q.denom())
        })
        .collect()
}

/// Scales a vector so that its first nonzero entry is 1.
pub fn normalize_projective(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().expect("nonzero");
    Some(v.iter().map(|x| x * &inv).collect())
}

pub fn scale(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * s).collect()
}

pub fn add_vecs(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vecs(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s*b`.
pub fn axpy(a: &[Scalar], s: &Scalar, b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + &(s * y)).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `a / b` entrywise ratio if `a` is a scalar multiple of `b` (b nonzero).
pub fn proportionality(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let lambda = div(&a[k], &b[k]);
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == &lambda * y)
        .then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_of_zero_and_identity() {
        for f in [q(), Field::Prime(7)] {
            assert_eq!(Matrix::zero(f, 6, 6).rank(), 0);
            assert_eq!(Matrix::identity(f, 6).rank(), 6);
            assert!(Matrix::identity(f, 6).kernel().is_zero());
        }
    }

    #[test]
    fn bareiss_handles_rank_deficiency() {
        let m = Matrix::from_ints(q(), 3, 4, &[0, 2, 4, 6, 0, 1, 2, 3, 1, 0, 0, 1]);
        assert_eq!(m.rank(), 2);
        let (rref, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rref[1], q().vector(&[0, 1, 2, 3]));
        assert_eq!(m.kernel().dim(), 2);
    }

    #[test]
    fn rational_entries() {
        let f = q();
        let m = Matrix::new(
            f,
            2,
            2,
            vec![f.ratio(1, 2), f.ratio(1, 3), f.ratio(3, 2), f.int(1)],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        let inv = Matrix::from_ints(f, 2, 2, &[2, 1, 1, 1]).inverse().unwrap();
        assert_eq!(inv, Matrix::from_ints(f, 2, 2, &[1, -1, -1, 2]));
    }

    #[test]
    fn solve_and_inconsistency() {
        let f = Field::Prime(11);
        let m = Matrix::from_ints(f, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let x = m.solve(&f.vector(&[2, 3])).unwrap();
        assert_eq!(m.mul_vec(&x), f.vector(&[2, 3]));
        let sing = Matrix::from_ints(f, 2, 2, &[1, 1, 1, 1]);
        assert!(sing.solve(&f.vector(&[0, 1])).is_none());
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::new(q(), 2, 2, q().vector(&[1, 2, 3])).is_err());
        assert!(Matrix::new(q(), 1, 1, vec![Field::Prime(5).one()]).is_err());
    }
}
