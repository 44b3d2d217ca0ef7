//! Binary forms `f(s, t)`, used to decide common projective roots exactly.

use super::field::{div, Field, Scalar};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UniPoly(Vec<Scalar>);

impl UniPoly {
    fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = div(&r[k], &lead);
            for i in 0..=dd {
                r[k - dd + i] = &r[k - dd + i] - &(&f * &d.0[i]);
            }
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn gcd(a: UniPoly, b: UniPoly) -> UniPoly {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Whether the binary forms share a root in `P^1` over the algebraic closure.
///
/// Each form is given by its coefficients `[c_0, ..., c_d]` of
/// `sum_k c_k s^(d-k) t^k`. An all-zero family counts as having common roots.
pub fn binary_forms_have_common_root(field: Field, forms: &[Vec<Scalar>]) -> bool {
    let nonzero: Vec<&Vec<Scalar>> = forms
        .iter()
        .filter(|f| f.iter().any(|c| !c.is_zero()))
        .collect();
    if nonzero.is_empty() {
        return true;
    }
    // root at s = 0, i.e. the point (0 : 1): the t^d coefficient vanishes
    if nonzero
        .iter()
        .all(|f| f.last().is_some_and(Scalar::is_zero))
    {
        return true;
    }
    // affine roots: set s = 1, polynomial in t
    let g = nonzero
        .iter()
        .map(|f| UniPoly::new(f.to_vec()))
        .fold(UniPoly::new(vec![field.zero()]), UniPoly::gcd);
    g.degree().is_some_and(|d| d >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_roots() {
        let f = Field::Rational;
        // s^2 - t^2 and s t - t^2 share (1:1)
        let a = f.vector(&[1, 0, -1]);
        let b = f.vector(&[0, 1, -1]);
        assert!(binary_forms_have_common_root(f, &[a.clone(), b]));
        // s^2 + t^2 and s t: no common root (s t forces s=0 or t=0)
        let c = f.vector(&[1, 0, 1]);
        let d = f.vector(&[0, 1, 0]);
        assert!(!binary_forms_have_common_root(f, &[c, d]));
        // s^2 and s t share (0:1)
        assert!(binary_forms_have_common_root(
            f,
            &[f.vector(&[1, 0, 0]), f.vector(&[0, 1, 0])]
        ));
        assert!(binary_forms_have_common_root(f, &[f.vector(&[0, 0, 0])]));
    }

    #[test]
    fn irreducible_over_fp_still_counts() {
        // s^2 + t^2 over F_7 has no rational root but is its own common factor
        let f = Field::Prime(7);
        let a = f.vector(&[1, 0, 1]);
        let b = f.vector(&[2, 0, 2]);
        assert!(binary_forms_have_common_root(f, &[a, b]));
    }
}
