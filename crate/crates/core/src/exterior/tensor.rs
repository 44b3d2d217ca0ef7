//! Two-tensors of a six-dimensional space and their wedge products.
//!
//! Coordinates are indexed by the pairs `(i, j)`, `i < j`, in the order
//! `01 02 03 04 05 12 13 14 15 23 24 25 34 35 45`. Four-tensors are stored in
//! the same 15 slots, keyed by the complementary pair: the slot of `(m, n)`
//! holds `sign(i j k l m n) * [coefficient of e_i^e_j^e_k^e_l]`, so that
//! `(F ^ tau) = sum_(m,n) F_mn tau_mn * e_012345`.

use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{Field, LinSubspace, Matrix, Scalar};

pub const DIM: usize = 6;
pub const PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Slot of the pair `{i, j}` (unordered, distinct).
pub fn pair_index(i: usize, j: usize) -> usize {
    assert!(i != j && i < DIM && j < DIM, "bad pair ({i}, {j})");
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .expect("pair in range")
}

/// Which space a two-tensor lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Λ²V`, points of `P^14`.
    V,
    /// `Λ²V*`, skew forms on `V`.
    Dual,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::V => Side::Dual,
            Side::Dual => Side::V,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::V => "V",
            Side::Dual => "V*",
        }
    }

    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "V" => Ok(Side::V),
            "V*" => Ok(Side::Dual),
            other => Err(Error::Parse(format!("unknown side {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTensor {
    side: Side,
    coords: Vec<Scalar>,
}

impl TwoTensor {
    pub fn new(side: Side, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != PAIRS.len() {
            return Err(Error::Dimension(format!(
                "two-tensor needs 15 coordinates, got {}",
                coords.len()
            )));
        }
        let f = coords[0].field();
        if coords.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch(
                "two-tensor coordinates in different fields".into(),
            ));
        }
        Ok(TwoTensor { side, coords })
    }

    pub fn zero(field: Field, side: Side) -> Self {
        TwoTensor {
            side,
            coords: field.zero_vector(15),
        }
    }

    /// `e_i ^ e_j` (or `f_i ^ f_j` on the dual side).
    pub fn unit(field: Field, side: Side, i: usize, j: usize) -> Self {
        let mut t = TwoTensor::zero(field, side);
        let s = if i < j { field.one() } else { field.int(-1) };
        t.coords[pair_index(i, j)] = s;
        t
    }

    /// Sum of signed unit tensors, e.g. `[(1, 0, 2), (1, 1, 3)]` for `e02 + e13`.
    pub fn from_terms(field: Field, side: Side, terms: &[(i64, usize, usize)]) -> Self {
        terms
            .iter()
            .fold(TwoTensor::zero(field, side), |acc, &(c, i, j)| {
                acc.add(&TwoTensor::unit(field, side, i, j).scale(&field.int(c)))
            })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    /// Coefficient of `e_i ^ e_j` with antisymmetry.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            return self.field().zero();
        }
        let c = &self.coords[pair_index(i, j)];
        if i < j {
            c.clone()
        } else {
            -c
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &TwoTensor) -> TwoTensor {
        assert_eq!(self.side, other.side, "side mismatch");
        TwoTensor {
            side: self.side,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TwoTensor) -> TwoTensor {
        self.add(&other.scale(&self.field().int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> TwoTensor {
        TwoTensor {
            side: self.side,
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Reads the upper triangle of a skew 6x6 matrix.
    pub fn from_gram(side: Side, g: &Matrix) -> TwoTensor {
        assert_eq!((g.rows(), g.cols()), (DIM, DIM));
        TwoTensor {
            side,
            coords: PAIRS.iter().map(|&(i, j)| g.get(i, j).clone()).collect(),
        }
    }

    /// Skew Gram matrix `G[i][j] = ω_ij`.
    pub fn gram(&self) -> Matrix {
        let f = self.field();
        let mut g = Matrix::zero(f, DIM, DIM);
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            g.set(i, j, self.coords[k].clone());
            g.set(j, i, -&self.coords[k]);
        }
        g
    }

    /// Evaluates the bilinear form `ω(x, y) = xᵀ G y`.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = self.field();
        let mut acc = f.zero();
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            let c = &self.coords[k];
            if c.is_zero() {
                continue;
            }
            let m = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            acc = &acc + &(c * &m);
        }
        acc
    }

    /// Contraction `ι_v ω = ω(v, ·)` as a vector of the other side.
    pub fn contract(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.gram().vec_mul(v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "side": self.side.as_str(),
            "coords": self.coords.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<TwoTensor> {
        let side = v
            .get("side")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| Error::Parse("two-tensor needs a \"side\"".into()))?;
        let coords = v
            .get("coords")
            .ok_or_else(|| Error::Parse("two-tensor needs \"coords\"".into()))?;
        TwoTensor::new(Side::parse(side)?, field.vector_from_json(coords)?)
    }
}

impl fmt::Display for TwoTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.side {
            Side::V => 'e',
            Side::Dual => 'f',
        };
        let terms: Vec<String> = PAIRS
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| format!("{c}*{letter}{i}{j}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `x ^ y`.
pub fn wedge2(side: Side, x: &[Scalar], y: &[Scalar]) -> TwoTensor {
    assert_eq!((x.len(), y.len()), (DIM, DIM));
    let coords = PAIRS
        .iter()
        .map(|&(i, j)| &(&x[i] * &y[j]) - &(&x[j] * &y[i]))
        .collect();
    TwoTensor { side, coords }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTensor {
    side: Side,
    coords: Vec<Scalar>,
}

impl FourTensor {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Coefficient of `self ^ tau` on `e_0 ^ ... ^ e_5`.
    pub fn wedge_top(&self, tau: &TwoTensor) -> Result<Scalar> {
        if tau.side != self.side {
            return Err(Error::Precondition(
                "wedge of tensors from different sides".into(),
            ));
        }
        Ok(crate::linalg::matrix::dot(
            &self.coords,
            &tau.coords,
            tau.field(),
        ))
    }
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// `ω ^ σ` in `Λ⁴`, in the complementary-pair convention.
pub fn wedge22(a: &TwoTensor, b: &TwoTensor) -> Result<FourTensor> {
    if a.side != b.side {
        return Err(Error::Precondition(
            "wedge of tensors from different sides".into(),
        ));
    }
    let f = a.field();
    let mut coords = f.zero_vector(15);
    for (slot, &(m, n)) in PAIRS.iter().enumerate() {
        let q: Vec<usize> = (0..DIM).filter(|&x| x != m && x != n).collect();
        let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
        let c = &(&(&(&a.get(i, j) * &b.get(k, l)) - &(&a.get(i, k) * &b.get(j, l)))
            + &(&a.get(i, l) * &b.get(j, k)))
            + &(&(&(&a.get(j, k) * &b.get(i, l)) - &(&a.get(j, l) * &b.get(i, k)))
                + &(&a.get(k, l) * &b.get(i, j)));
        let sign = perm_sign(&[i, j, k, l, m, n]);
        coords[slot] = &c * &f.int(sign);
    }
    Ok(FourTensor {
        side: a.side,
        coords,
    })
}

/// Coefficient of `ω ^ ω ^ ω` on the top form; equals `6 Pf(ω)`.
pub fn triple_wedge(w: &TwoTensor) -> Scalar {
    wedge22(w, w)
        .and_then(|ww| ww.wedge_top(w))
        .expect("same side")
}

/// Coefficient of `a ^ b ^ c` on the top form.
pub fn wedge_top3(a: &TwoTensor, b: &TwoTensor, c: &TwoTensor) -> Result<Scalar> {
    wedge22(a, b)?.wedge_top(c)
}

/// `ω ^ ω = 0`, i.e. rank at most two.
pub fn is_decomposable(w: &TwoTensor) -> bool {
    wedge22(w, w).expect("same side").is_zero()
}

/// The natural pairing `Λ²V × Λ²V* → k`, `<e_ij, f_kl> = δ`.
pub fn pairing(a: &TwoTensor, b: &TwoTensor) -> Result<Scalar> {
    if a.side == b.side {
        return Err(Error::Precondition(
            "pairing needs tensors from opposite sides".into(),
        ));
    }
    Ok(crate::linalg::matrix::dot(&a.coords, &b.coords, a.field()))
}

pub fn form_rank(w: &TwoTensor) -> usize {
    w.gram().rank()
}

pub fn form_kernel(w: &TwoTensor) -> LinSubspace {
    w.gram().kernel()
}

/// A subspace of `Λ²` (ambient 15) viewed as tensors of the given side.
pub fn tensors_of(side: Side, s: &LinSubspace) -> Vec<TwoTensor> {
    s.basis()
        .iter()
        .map(|b| TwoTensor {
            side,
            coords: b.clone(),
        })
        .collect()
}

/// `Λ²S` for a subspace `S` of the six-space.
pub fn exterior_square(side: Side, s: &LinSubspace) -> LinSubspace {
    let b = s.basis();
    let mut gens = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            gens.push(wedge2(side, &b[i], &b[j]).into_coords());
        }
    }
    LinSubspace::span(s.field(), 15, gens)
}

/// `S ^ T = span{s ^ t}`.
pub fn wedge_spaces(side: Side, s: &LinSubspace, t: &LinSubspace) -> LinSubspace {
    let mut gens = Vec::new();
    for a in s.basis() {
        for b in t.basis() {
            gens.push(wedge2(side, a, b).into_coords());
        }
    }
    LinSubspace::span(s.field(), 15, gens)
}
