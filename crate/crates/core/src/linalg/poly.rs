//! Homogeneous polynomials with dense coefficient vectors.
//!
//! Monomials of a fixed degree are listed in lexicographic order of their
//! exponent vectors, largest first: `x0^d, x0^(d-1) x1, ..., x_{n-1}^d`.

use std::collections::HashMap;

use super::field::{div, Field, Scalar};
use super::matrix::{is_zero_vec, Matrix};

/// Exponent vectors of all degree-`degree` monomials in `nvars` variables.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// `x0^2*x3` style key for a monomial.
pub fn monomial_key(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn eval_monomial(exps: &[u32], point: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.one();
    for (e, x) in exps.iter().zip(point) {
        for _ in 0..*e {
            acc = &acc * x;
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    field: Field,
    nvars: usize,
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl HomPoly {
    pub fn zero(field: Field, nvars: usize, degree: u32) -> Self {
        let n = monomials(nvars, degree).len();
        HomPoly {
            field,
            nvars,
            degree,
            coeffs: field.zero_vector(n),
        }
    }

    pub fn from_coeffs(field: Field, nvars: usize, degree: u32, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(
            coeffs.len(),
            monomials(nvars, degree).len(),
            "coefficient count"
        );
        HomPoly {
            field,
            nvars,
            degree,
            coeffs,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` terms; repeated
    /// monomials accumulate.
    pub fn from_terms<I>(field: Field, nvars: usize, degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mons = monomials(nvars, degree);
        let index: HashMap<Vec<u32>, usize> = mons
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut coeffs = field.zero_vector(mons.len());
        for (m, c) in terms {
            let i = index[&m];
            coeffs[i] = &coeffs[i] + &c;
        }
        HomPoly {
            field,
            nvars,
            degree,
            coeffs,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Scalar)> {
        monomials(self.nvars, self.degree)
            .into_iter()
            .zip(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (m, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c * &eval_monomial(&m, point, self.field));
        }
        acc
    }

    /// The partial derivatives, evaluated at `point`.
    pub fn gradient_at(&self, point: &[Scalar]) -> Vec<Scalar> {
        let mut grad = self.field.zero_vector(self.nvars);
        if self.degree == 0 {
            return grad;
        }
        for (m, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            for (i, g) in grad.iter_mut().enumerate() {
                if m[i] == 0 {
                    continue;
                }
                let mut d = m.clone();
                d[i] -= 1;
                let factor = c * &self.field.int(m[i] as i64);
                *g = &*g + &(&factor * &eval_monomial(&d, point, self.field));
            }
        }
        grad
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::new();
        for (a, ca) in self.terms() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.terms() {
                if cb.is_zero() {
                    continue;
                }
                let m: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                terms.push((m, ca * cb));
            }
        }
        HomPoly::from_terms(self.field, self.nvars, self.degree + other.degree, terms)
    }

    pub fn scale(&self, s: &Scalar) -> HomPoly {
        HomPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    /// Substitutes `x = sum_j t_j * columns[j]`, giving a polynomial in the `t_j`.
    pub fn compose_linear(&self, columns: &[Vec<Scalar>]) -> HomPoly {
        let new_vars = columns.len();
        // linear form in the new variables for each old variable
        let forms: Vec<Vec<Scalar>> = (0..self.nvars)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let mut acc: HashMap<Vec<u32>, Scalar> = HashMap::new();
        for (m, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mut prod: HashMap<Vec<u32>, Scalar> = HashMap::new();
            prod.insert(vec![0; new_vars], c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    prod = multiply_by_linear(&prod, &forms[i]);
                }
            }
            for (k, v) in prod {
                let slot = acc.entry(k).or_insert_with(|| self.field.zero());
                *slot = &*slot + &v;
            }
        }
        HomPoly::from_terms(self.field, new_vars, self.degree, acc)
    }

    /// `Some(lambda)` with `self = lambda * other`, when `other` is nonzero.
    pub fn ratio_to(&self, other: &HomPoly) -> Option<Scalar> {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let lambda = div(&self.coeffs[k], &other.coeffs[k]);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == &lambda * b)
            .then_some(lambda)
    }

    /// Scalar multiple of `self` whose first nonzero coefficient is 1.
    pub fn monic(&self) -> HomPoly {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Coefficients keyed by monomial, in lexicographic monomial order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in self.terms() {
            map.insert(monomial_key(&m), c.to_json());
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(
        field: Field,
        nvars: usize,
        degree: u32,
        v: &serde_json::Value,
    ) -> crate::error::Result<HomPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| crate::error::Error::Parse("polynomial must be an object".into()))?;
        let mons = monomials(nvars, degree);
        let coeffs = mons
            .iter()
            .map(|m| match obj.get(&monomial_key(m)) {
                Some(c) => field.scalar_from_json(c),
                None => Ok(field.zero()),
            })
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(HomPoly {
            field,
            nvars,
            degree,
            coeffs,
        })
    }
}

fn multiply_by_linear(
    poly: &HashMap<Vec<u32>, Scalar>,
    form: &[Scalar],
) -> HashMap<Vec<u32>, Scalar> {
    let mut out: HashMap<Vec<u32>, Scalar> = HashMap::new();
    for (m, c) in poly {
        for (j, a) in form.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut k = m.clone();
            k[j] += 1;
            let v = c * a;
            match out.get_mut(&k) {
                Some(slot) => *slot = &*slot + &v,
                None => {
                    out.insert(k, v);
                }
            }
        }
    }
    out
}

/// Basis of the degree-`degree` forms vanishing at every point (a linear
/// system in the monomial coefficients). Points are given in homogeneous
/// coordinates; all must have the same length.
pub fn interpolate_poly(field: Field, points: &[Vec<Scalar>], degree: u32) -> Vec<HomPoly> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let nvars = first.len();
    let mons = monomials(nvars, degree);
    let rows: Vec<Vec<Scalar>> = points
        .iter()
        .map(|pt| mons.iter().map(|m| eval_monomial(m, pt, field)).collect())
        .collect();
    let kernel = Matrix::from_rows(field, mons.len(), &rows).kernel();
    kernel
        .basis()
        .iter()
        .map(|c| HomPoly::from_coeffs(field, nvars, degree, c.clone()))
        .collect()
}
