//! The pair `(X, Y)`: a codimension-five linear section `X` of `G(2,6)` and
//! the cubic `Y` cut on the annihilating `P^4` by the Pfaffian.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{
    decompose, form_kernel, is_decomposable, tangent_space, wedge2, wedge_top3, Gl6, GrassLine,
    GrassPoint, Side, TwoTensor,
};
use crate::linalg::{monomials, Field, HomPoly, LinSubspace, Matrix, Scalar};
use crate::random;
use crate::scan::fast::{residues, Zp};
use crate::scan::projective_points;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Random members of `U5` tested for decomposability over `Q`.
    pub q_samples: usize,
    /// Consecutive seeds tried after the requested one.
    pub max_reseeds: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            q_samples: 10_000,
            max_reseeds: 32,
        }
    }
}

/// Outcome of the check that no member of `U5` is decomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub exhaustive: bool,
    pub tested: u64,
    pub witness: Option<TwoTensor>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldPair {
    seed: u64,
    field: Field,
    w10: LinSubspace,
    u5: LinSubspace,
    sigma: Vec<TwoTensor>,
    cubic: HomPoly,
}

/// Result of [`build_threefold`]: the pair plus the seed search record.
#[derive(Clone, Debug)]
pub struct Built {
    pub pair: ThreefoldPair,
    pub requested_seed: u64,
    pub reseeds: u32,
    pub certificate: Certificate,
}

fn random_w10(field: Field, seed: u64) -> LinSubspace {
    let mut rng = random::rng(seed);
    loop {
        let rows: Vec<Vec<Scalar>> = (0..10)
            .map(|_| random::vector(field, 15, &mut rng))
            .collect();
        let w = LinSubspace::span(field, 15, rows);
        if w.dim() == 10 {
            return w;
        }
    }
}

/// Builds the pair for `seed`, moving on to `seed + 1, ...` while the
/// genericity certificate fails.
pub fn build_threefold(seed: u64, field: Field, opts: &BuildOptions) -> Result<Built> {
    let mut last = String::new();
    for k in 0..=opts.max_reseeds {
        let s = seed.wrapping_add(k as u64);
        let pair = ThreefoldPair::from_w10(s, random_w10(field, s))?;
        let certificate = pair.certificate(opts.q_samples);
        if certificate.passed() {
            return Ok(Built {
                pair,
                requested_seed: seed,
                reseeds: k,
                certificate,
            });
        }
        last = format!(
            "seed {s}: decomposable member {}",
            certificate.witness.expect("failed")
        );
    }
    Err(Error::SeedRejected {
        attempts: opts.max_reseeds + 1,
        reason: last,
    })
}

fn multinomial(exps: &[u32]) -> i64 {
    let fact = |n: u32| (1..=n as i64).product::<i64>();
    fact(exps.iter().sum()) / exps.iter().map(|&e| fact(e)).product::<i64>()
}

impl ThreefoldPair {
    /// Derives `U5` and the cubic from a given 10-dimensional `W10`, without
    /// any genericity check.
    pub fn from_w10(seed: u64, w10: LinSubspace) -> Result<ThreefoldPair> {
        if w10.ambient() != 15 || w10.dim() != 10 {
            return Err(Error::UnexpectedDimension {
                what: "W10".into(),
                expected: 10,
                found: w10.dim(),
            });
        }
        let field = w10.field();
        let u5 = w10.annihilator();
        let sigma: Vec<TwoTensor> = u5
            .basis()
            .iter()
            .map(|b| TwoTensor::new(Side::Dual, b.clone()).expect("15 coords"))
            .collect();
        let sixth = field.int(6).inv().expect("characteristic is not 2 or 3");
        let terms = monomials(5, 3).into_iter().map(|m| {
            let idx: Vec<usize> = m
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let t = wedge_top3(&sigma[idx[0]], &sigma[idx[1]], &sigma[idx[2]]).expect("same side");
            let c = &(&t * &field.int(multinomial(&m))) * &sixth;
            (m, c)
        });
        let cubic = HomPoly::from_terms(field, 5, 3, terms);
        Ok(ThreefoldPair {
            seed,
            field,
            w10,
            u5,
            sigma,
            cubic,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn w10(&self) -> &LinSubspace {
        &self.w10
    }

    pub fn u5(&self) -> &LinSubspace {
        &self.u5
    }

    /// The stored basis `σ_0..σ_4` of `U5`.
    pub fn sigma(&self) -> &[TwoTensor] {
        &self.sigma
    }

    pub fn cubic(&self) -> &HomPoly {
        &self.cubic
    }

    /// `sum u_i σ_i`.
    pub fn form_at(&self, u: &[Scalar]) -> TwoTensor {
        assert_eq!(u.len(), 5);
        TwoTensor::new(Side::Dual, self.u5.combine(u)).expect("15 coords")
    }

    /// Coordinates of a form of `U5` in the stored basis.
    pub fn u5_coords(&self, w: &TwoTensor) -> Option<Vec<Scalar>> {
        self.u5.coordinates(w.coords())
    }

    pub fn certificate(&self, q_samples: usize) -> Certificate {
        match self.field.modulus() {
            Some(p) => {
                let zp = Zp { p };
                let basis: Vec<Vec<u32>> = self.u5.basis().iter().map(|b| residues(b)).collect();
                let mut tested = 0;
                for u in projective_points(p, 5) {
                    tested += 1;
                    let mut t = [0u32; 15];
                    for (ui, b) in u.iter().zip(&basis) {
                        if *ui == 0 {
                            continue;
                        }
                        for k in 0..15 {
                            t[k] = zp.add(t[k], zp.mul(*ui, b[k]));
                        }
                    }
                    if zp.is_decomposable(&t) {
                        let coords = t.iter().map(|&x| self.field.residue(x)).collect();
                        let witness = Some(TwoTensor::new(Side::Dual, coords).expect("15 coords"));
                        return Certificate {
                            exhaustive: true,
                            tested,
                            witness,
                        };
                    }
                }
                Certificate {
                    exhaustive: true,
                    tested,
                    witness: None,
                }
            }
            None => {
                let mut rng = random::rng(self.seed ^ 0x5eed_cafe);
                for i in 0..q_samples {
                    let w = self.form_at(&random::nonzero_vector(self.field, 5, &mut rng));
                    if is_decomposable(&w) {
                        return Certificate {
                            exhaustive: false,
                            tested: i as u64 + 1,
                            witness: Some(w),
                        };
                    }
                }
                Certificate {
                    exhaustive: false,
                    tested: q_samples as u64,
                    witness: None,
                }
            }
        }
    }

    /// Conjugates the pair by `g`.
    pub fn transform(&self, g: &Gl6) -> ThreefoldPair {
        ThreefoldPair::from_w10(self.seed, g.tensor_subspace(Side::V, &self.w10))
            .expect("dimension preserved")
    }

    pub fn x_member(&self, w: &TwoTensor) -> Result<bool> {
        if w.is_zero() {
            return Err(Error::Precondition(
                "membership needs a nonzero tensor".into(),
            ));
        }
        Ok(self.w10.contains(w.coords()) && is_decomposable(w))
    }

    pub fn y_member(&self, u: &[Scalar]) -> Result<bool> {
        if u.len() != 5 || u.iter().all(Scalar::is_zero) {
            return Err(Error::Precondition(
                "membership needs a nonzero point of P^4".into(),
            ));
        }
        Ok(self.cubic.eval(u).is_zero())
    }

    /// Rows `ι_v σ_i`, a 5x6 matrix.
    pub fn palatini_map_y(&self, v: &[Scalar]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = self.sigma.iter().map(|s| s.contract(v)).collect();
        Matrix::from_rows(self.field, 6, &rows)
    }

    pub fn palatini_rank(&self, v: &[Scalar]) -> usize {
        self.palatini_map_y(v).rank()
    }

    pub fn w_member(&self, v: &[Scalar]) -> Result<bool> {
        if v.iter().all(Scalar::is_zero) {
            return Err(Error::Precondition(
                "membership needs a nonzero vector".into(),
            ));
        }
        Ok(self.palatini_rank(v) <= 4)
    }

    /// The map `y -> v^y mod W10` as a 5x6 matrix, in the coordinates of the
    /// non-pivot slots of `W10`'s echelon basis.
    pub fn palatini_map_x(&self, v: &[Scalar]) -> Matrix {
        let free: Vec<usize> = (0..15).filter(|k| !self.w10.pivots().contains(k)).collect();
        let cols: Vec<Vec<Scalar>> = (0..6)
            .map(|j| {
                let t = wedge2(Side::V, v, &self.field.unit_vector(6, j));
                let r = self.w10.reduce(t.coords());
                free.iter().map(|&k| r[k].clone()).collect()
            })
            .collect();
        Matrix::from_cols(self.field, 5, &cols)
    }

    pub fn x_lines_through(&self, v: &[Scalar]) -> Result<LinesThrough> {
        if v.iter().all(Scalar::is_zero) {
            return Err(Error::Precondition("needs a nonzero vector".into()));
        }
        let k = self.palatini_map_x(v).kernel();
        Ok(match k.dim() {
            0 | 1 => LinesThrough::None,
            2 => {
                let b = k.basis();
                LinesThrough::Point(decompose(&wedge2(Side::V, &b[0], &b[1]))?)
            }
            3 => LinesThrough::Vertex(GrassLine::new(
                Side::V,
                LinSubspace::span(self.field, 6, [v.to_vec()]),
                k,
            )?),
            _ => LinesThrough::Degenerate(k),
        })
    }

    /// The kernel plane `n_y` of the form at a point of `Y`.
    pub fn kernel_line(&self, u: &[Scalar]) -> Result<LinSubspace> {
        if !self.y_member(u)? {
            return Err(Error::Precondition("point is not on Y".into()));
        }
        let k = form_kernel(&self.form_at(u));
        if k.dim() != 2 {
            return Err(Error::UnexpectedDimension {
                what: "kernel at a point of Y".into(),
                expected: 2,
                found: k.dim(),
            });
        }
        Ok(k)
    }

    pub fn x_smooth_at(&self, p: &GrassPoint) -> bool {
        tangent_space(p)
            .intersect(&self.w10)
            .expect("same ambient")
            .dim()
            == 4
    }

    pub fn y_smooth_at(&self, u: &[Scalar]) -> bool {
        self.cubic.gradient_at(u).iter().any(|c| !c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed": self.seed,
            "field": self.field.to_string(),
            "w10": self.w10.to_json(),
            "u5": self.u5.to_json(),
            "cubic": self.cubic.to_json(),
        })
    }

    /// Rebuilds from `seed`, `field` and `w10`, and checks the stored `u5`
    /// and cubic against the recomputed ones.
    pub fn from_json(v: &serde_json::Value) -> Result<ThreefoldPair> {
        let field: Field = v
            .get("field")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| Error::Parse("pair needs a \"field\"".into()))?
            .parse()?;
        let seed = v
            .get("seed")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::Parse("pair needs an integer \"seed\"".into()))?;
        let w10 = LinSubspace::from_json(
            field,
            v.get("w10")
                .ok_or_else(|| Error::Parse("pair needs \"w10\"".into()))?,
        )?;
        let pair = ThreefoldPair::from_w10(seed, w10)?;
        if let Some(u5) = v.get("u5") {
            if LinSubspace::from_json(field, u5)? != pair.u5 {
                return Err(Error::Parse(
                    "\"u5\" is not the annihilator of \"w10\"".into(),
                ));
            }
        }
        if let Some(c) = v.get("cubic") {
            if HomPoly::from_json(field, 5, 3, c)? != pair.cubic {
                return Err(Error::Parse("\"cubic\" does not match \"u5\"".into()));
            }
        }
        Ok(pair)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinesThrough {
    /// `v` is not on `W`.
    None,
    /// `v` lies on exactly one line `ℓ_x`; the point `x` of `X`.
    Point(GrassPoint),
    /// `v` is a vertex: the lines of `X` through it form the pencil `v ^ K`.
    Vertex(GrassLine),
    /// Kernel of dimension at least four.
    Degenerate(LinSubspace),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::triple_wedge;

    fn f11() -> Field {
        Field::Prime(11)
    }

    #[test]
    fn dimensions_and_determinism() {
        let opts = BuildOptions::default();
        let a = build_threefold(1, f11(), &opts).unwrap();
        assert_eq!(a.pair.w10().dim(), 10);
        assert_eq!(a.pair.u5().dim(), 5);
        assert!(a.certificate.exhaustive);
        let b = build_threefold(1, f11(), &opts).unwrap();
        assert_eq!(a.pair.to_json().to_string(), b.pair.to_json().to_string());
        assert_eq!(ThreefoldPair::from_json(&a.pair.to_json()).unwrap(), a.pair);
    }

    #[test]
    fn cubic_is_a_sixth_of_the_triple_wedge() {
        for field in [f11(), Field::Rational] {
            let opts = BuildOptions {
                q_samples: 200,
                ..Default::default()
            };
            let pair = build_threefold(3, field, &opts).unwrap().pair;
            let mut rng = random::rng(99);
            let six = field.int(6);
            let mut nonzero = false;
            for _ in 0..20 {
                let u = random::vector(field, 5, &mut rng);
                let c = pair.cubic().eval(&u);
                nonzero |= !c.is_zero();
                assert_eq!(&c * &six, triple_wedge(&pair.form_at(&u)));
            }
            assert!(nonzero);
        }
    }

    #[test]
    fn membership_and_palatini_maps() {
        let f = f11();
        let pair = build_threefold(1, f, &BuildOptions::default())
            .unwrap()
            .pair;
        let mut rng = random::rng(5);
        // a random member of W10 is not decomposable
        let w = TwoTensor::new(
            Side::V,
            pair.w10().combine(&random::vector(f, 10, &mut rng)),
        )
        .unwrap();
        assert!(!pair.x_member(&w).unwrap());
        assert!(pair.x_member(&TwoTensor::zero(f, Side::V)).is_err());
        for _ in 0..30 {
            let v = random::nonzero_vector(f, 6, &mut rng);
            let r = pair.palatini_rank(&v);
            assert!(r <= 5);
            let k = pair.palatini_map_x(&v).kernel();
            assert!(k.contains(&v));
            assert_eq!(r <= 4, k.dim() >= 2);
        }
    }

    #[test]
    fn kernel_lines_lie_on_w() {
        let f = f11();
        let pair = build_threefold(1, f, &BuildOptions::default())
            .unwrap()
            .pair;
        let y = projective_points(11, 5)
            .map(|u| u.iter().map(|&x| f.residue(x)).collect::<Vec<_>>())
            .find(|u| pair.y_member(u).unwrap())
            .unwrap();
        assert!(pair.y_smooth_at(&y));
        let k = pair.kernel_line(&y).unwrap();
        for b in k.basis() {
            assert!(pair.w_member(b).unwrap());
            match pair.x_lines_through(b).unwrap() {
                LinesThrough::Point(x) => {
                    assert!(pair.x_member(x.tensor()).unwrap());
                    assert!(pair.x_smooth_at(&x));
                }
                LinesThrough::Vertex(line) => {
                    for t in line.pencil().basis() {
                        assert!(pair
                            .x_member(&TwoTensor::new(Side::V, t.clone()).unwrap())
                            .unwrap());
                    }
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn degenerate_w10_has_a_singular_point() {
        // W10 containing the tangent space at e0^e1 (dimension 9) plus one more vector
        let f = f11();
        let p = decompose(&TwoTensor::unit(f, Side::V, 0, 1)).unwrap();
        let mut gens = tangent_space(&p).basis().to_vec();
        gens.push(TwoTensor::from_terms(f, Side::V, &[(1, 2, 3), (1, 4, 5)]).into_coords());
        let pair = ThreefoldPair::from_w10(0, LinSubspace::span(f, 15, gens)).unwrap();
        assert!(pair.x_member(p.tensor()).unwrap());
        assert!(!pair.x_smooth_at(&p));
        assert!(!pair.certificate(0).passed());
    }
}
