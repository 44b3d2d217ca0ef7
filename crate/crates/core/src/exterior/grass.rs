//! Points, lines and plane sections of `G(2,6)`.

use serde_json::json;

use super::tensor::{is_decomposable, wedge2, wedge22, wedge_spaces, Side, TwoTensor, DIM};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vec, proportionality, scale};
use crate::linalg::{Field, LinSubspace, Matrix, QuadForm, Scalar};

/// A decomposable two-tensor together with the 2-plane it spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassPoint {
    tensor: TwoTensor,
    plane: LinSubspace,
}

impl GrassPoint {
    pub fn from_vectors(side: Side, x: &[Scalar], y: &[Scalar]) -> Result<GrassPoint> {
        decompose(&wedge2(side, x, y))
    }

    pub fn tensor(&self) -> &TwoTensor {
        &self.tensor
    }

    pub fn plane(&self) -> &LinSubspace {
        &self.plane
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "tensor": self.tensor.to_json(), "plane": self.plane.to_json() })
    }
}

/// The plane of a decomposable tensor, read off as the column space of its
/// Gram matrix.
pub fn decompose(w: &TwoTensor) -> Result<GrassPoint> {
    if w.is_zero() {
        return Err(Error::Precondition(
            "zero tensor is not a point of G(2,6)".into(),
        ));
    }
    if !is_decomposable(w) {
        return Err(Error::Precondition(format!("{w} is not decomposable")));
    }
    let g = w.gram();
    let plane = LinSubspace::span(w.field(), DIM, (0..DIM).map(|c| g.col(c)));
    debug_assert_eq!(plane.dim(), 2);
    Ok(GrassPoint {
        tensor: w.clone(),
        plane,
    })
}

/// Affine tangent space `x^V + y^V`, of dimension 9.
pub fn tangent_space(p: &GrassPoint) -> LinSubspace {
    wedge_spaces(
        p.tensor.side(),
        &p.plane,
        &LinSubspace::full(p.tensor.field(), DIM),
    )
}

/// A line of `G(2,6)`: the pencil `vertex ^ envelope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassLine {
    vertex: LinSubspace,
    envelope: LinSubspace,
    pencil: LinSubspace,
}

impl GrassLine {
    pub fn new(side: Side, vertex: LinSubspace, envelope: LinSubspace) -> Result<GrassLine> {
        if vertex.dim() != 1 || envelope.dim() != 3 || !vertex.is_subspace_of(&envelope) {
            return Err(Error::Precondition(
                "a line of G(2,6) needs a point inside a 3-space".into(),
            ));
        }
        let pencil = wedge_spaces(side, &vertex, &envelope);
        Ok(GrassLine {
            vertex,
            envelope,
            pencil,
        })
    }

    /// Recovers vertex and envelope from a 2-dimensional pencil of decomposable tensors.
    pub fn from_pencil(side: Side, pencil: &LinSubspace) -> Result<GrassLine> {
        if pencil.dim() != 2 {
            return Err(Error::UnexpectedDimension {
                what: "pencil".into(),
                expected: 2,
                found: pencil.dim(),
            });
        }
        let b = pencil.basis();
        let sum = TwoTensor::new(side, crate::linalg::matrix::add_vecs(&b[0], &b[1]))?;
        let p0 = decompose(&TwoTensor::new(side, b[0].clone())?)?;
        let p1 = decompose(&TwoTensor::new(side, b[1].clone())?)?;
        decompose(&sum)?;
        let vertex = p0.plane.intersect(&p1.plane)?;
        let envelope = p0.plane.sum(&p1.plane)?;
        let line = GrassLine::new(side, vertex, envelope)?;
        if &line.pencil != pencil {
            return Err(Error::CheckFailed("pencil is not a line of G(2,6)".into()));
        }
        Ok(line)
    }

    pub fn vertex(&self) -> &LinSubspace {
        &self.vertex
    }

    pub fn envelope(&self) -> &LinSubspace {
        &self.envelope
    }

    pub fn pencil(&self) -> &LinSubspace {
        &self.pencil
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertex": self.vertex.to_json(),
            "envelope": self.envelope.to_json(),
            "pencil": self.pencil.to_json(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConicTag {
    Smooth,
    LinePair,
    DoubleLine,
}

impl ConicTag {
    pub fn from_rank(rank: usize) -> Option<ConicTag> {
        match rank {
            3 => Some(ConicTag::Smooth),
            2 => Some(ConicTag::LinePair),
            1 => Some(ConicTag::DoubleLine),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConicTag::Smooth => "smooth",
            ConicTag::LinePair => "line_pair",
            ConicTag::DoubleLine => "double_line",
        }
    }
}

/// A plane of `Λ²V` cutting `G(2,6)` in a conic, with the conic's equation in
/// the coordinates of the plane's stored basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicData {
    pub plane: LinSubspace,
    pub form: QuadForm,
    pub tag: ConicTag,
}

impl ConicData {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "plane": self.plane.to_json(),
            "form": self.form.gram().to_json(),
            "tag": self.tag.as_str(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneSectionClass {
    ContainedInG,
    Conic(ConicData),
    FiniteScheme,
}

impl PlaneSectionClass {
    pub fn tag(&self) -> &'static str {
        match self {
            PlaneSectionClass::ContainedInG => "contained_in_G",
            PlaneSectionClass::Conic(c) => match c.tag {
                ConicTag::Smooth => "smooth_conic",
                ConicTag::LinePair => "line_pair",
                ConicTag::DoubleLine => "double_line",
            },
            PlaneSectionClass::FiniteScheme => "finite_scheme",
        }
    }
}

/// The linear system of ternary conics cut on `plane` by the 15 Plücker
/// quadrics, as a subspace of the 6-dimensional space of symmetric 3x3
/// matrices (upper triangle, row by row).
fn plucker_conic_system(plane: &LinSubspace) -> LinSubspace {
    let f = plane.field();
    let b: Vec<TwoTensor> = plane
        .basis()
        .iter()
        .map(|v| TwoTensor::new(Side::V, v.clone()).expect("15 coords"))
        .collect();
    let mut products = vec![vec![Vec::new(); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            products[i][j] = wedge22(&b[i], &b[j]).expect("same side").coords().to_vec();
        }
    }
    let gens = (0..15).map(|c| {
        let mut g = Vec::with_capacity(6);
        for i in 0..3 {
            for j in i..3 {
                g.push(products[i][j][c].clone());
            }
        }
        g
    });
    LinSubspace::span(f, 6, gens)
}

fn sym_from_upper(f: Field, u: &[Scalar]) -> Matrix {
    let mut m = Matrix::zero(f, 3, 3);
    let mut k = 0;
    for i in 0..3 {
        for j in i..3 {
            m.set(i, j, u[k].clone());
            m.set(j, i, u[k].clone());
            k += 1;
        }
    }
    m
}

pub fn classify_plane_section(plane: &LinSubspace) -> Result<PlaneSectionClass> {
    if plane.ambient() != 15 || plane.dim() != 3 {
        return Err(Error::UnexpectedDimension {
            what: "plane in P^14".into(),
            expected: 3,
            found: plane.dim(),
        });
    }
    let system = plucker_conic_system(plane);
    Ok(match system.dim() {
        0 => PlaneSectionClass::ContainedInG,
        1 => {
            let form = QuadForm::from_gram(sym_from_upper(plane.field(), &system.basis()[0]))?;
            let tag = ConicTag::from_rank(form.rank()).expect("nonzero conic");
            PlaneSectionClass::Conic(ConicData {
                plane: plane.clone(),
                form,
                tag,
            })
        }
        _ => PlaneSectionClass::FiniteScheme,
    })
}

/// A frame `e0..e3` with `plane = <e0^e1, e0^e2, e0^e3 + e1^e2>`, and the part
/// `u'` of `e3` outside `<e0, e1, e2>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleLineFrame {
    pub e: [Vec<Scalar>; 4],
    pub u_prime: Vec<Scalar>,
}

impl DoubleLineFrame {
    /// `<e0^e1, e0^e2, e0^e3 + e1^e2>`.
    pub fn plane(&self, side: Side) -> LinSubspace {
        let e = &self.e;
        let f = e[0][0].field();
        let third = wedge2(side, &e[0], &e[3]).add(&wedge2(side, &e[1], &e[2]));
        LinSubspace::span(
            f,
            15,
            [
                wedge2(side, &e[0], &e[1]).into_coords(),
                wedge2(side, &e[0], &e[2]).into_coords(),
                third.into_coords(),
            ],
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vecs: Vec<serde_json::Value> = self
            .e
            .iter()
            .map(|v| serde_json::Value::Array(v.iter().map(Scalar::to_json).collect()))
            .collect();
        json!({
            "e": vecs,
            "u_prime": self.u_prime.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn double_line_normal_form(plane: &LinSubspace) -> Result<DoubleLineFrame> {
    let class = classify_plane_section(plane)?;
    let conic = match class {
        PlaneSectionClass::Conic(ref c) if c.tag == ConicTag::DoubleLine => c,
        other => {
            return Err(Error::Classification {
                expected: "double_line".into(),
                found: other.tag().into(),
            })
        }
    };
    let f = plane.field();
    let side = Side::V;
    // the double line, as plane-coordinates killed by the rank-one conic
    let line_coords = conic.form.gram().kernel();
    let tensors: Vec<TwoTensor> = line_coords
        .basis()
        .iter()
        .map(|c| TwoTensor::new(side, plane.combine(c)).expect("15 coords"))
        .collect();
    let p1 = decompose(&tensors[0])?;
    let p2 = decompose(&tensors[1])?;
    let vertex = p1.plane.intersect(&p2.plane)?;
    if vertex.dim() != 1 {
        return Err(Error::CheckFailed(
            "double line is not a line of G(2,6)".into(),
        ));
    }
    let e0 = vertex.basis()[0].clone();
    let partner = |p: &GrassPoint, t: &TwoTensor| -> Result<Vec<Scalar>> {
        let cand = p
            .plane
            .basis()
            .iter()
            .find(|b| !vertex.contains(b))
            .expect("plane is 2-dimensional")
            .clone();
        let w = wedge2(side, &e0, &cand);
        let lambda = proportionality(t.coords(), w.coords())
            .ok_or_else(|| Error::CheckFailed("tensor not proportional to e0^x".into()))?;
        Ok(scale(&cand, &lambda))
    };
    let e1 = partner(&p1, &tensors[0])?;
    let e2 = partner(&p2, &tensors[1])?;
    let line_span = LinSubspace::span(f, 15, tensors.iter().map(|t| t.coords().to_vec()));
    let omega = plane
        .basis()
        .iter()
        .find(|b| !line_span.contains(b))
        .expect("plane is 3-dimensional")
        .clone();
    // solve omega = e0 ^ u + mu * e1 ^ e2 for (u, mu)
    let e12 = wedge2(side, &e1, &e2);
    let mut cols: Vec<Vec<Scalar>> = (0..DIM)
        .map(|j| wedge2(side, &e0, &f.unit_vector(DIM, j)).into_coords())
        .collect();
    cols.push(e12.into_coords());
    let sol = Matrix::from_cols(f, 15, &cols)
        .solve(&omega)
        .ok_or_else(|| Error::CheckFailed("no e0^u + mu e1^e2 decomposition".into()))?;
    let mu = sol[DIM].clone();
    if mu.is_zero() {
        return Err(Error::CheckFailed("plane degenerates into e0^V".into()));
    }
    let e3 = scale(&sol[..DIM], &mu.inv().expect("nonzero"));
    let base = LinSubspace::span(f, DIM, [e0.clone(), e1.clone(), e2.clone()]);
    if base.dim() != 3 || base.contains(&e3) {
        return Err(Error::CheckFailed("normal-form frame is dependent".into()));
    }
    let u_prime = base.reduce(&e3);
    debug_assert!(!is_zero_vec(&u_prime));
    let frame = DoubleLineFrame {
        e: [e0, e1, e2, e3],
        u_prime,
    };
    if &frame.plane(side) != plane {
        return Err(Error::CheckFailed(
            "normal-form frame does not reproduce the plane".into(),
        ));
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::gl::Gl6;
    use crate::random;

    fn span(f: Field, ts: &[TwoTensor]) -> LinSubspace {
        LinSubspace::span(f, 15, ts.iter().map(|t| t.coords().to_vec()))
    }

    fn t(f: Field, terms: &[(i64, usize, usize)]) -> TwoTensor {
        TwoTensor::from_terms(f, Side::V, terms)
    }

    #[test]
    fn decompose_examples() {
        let f = Field::Rational;
        let p = decompose(&t(f, &[(1, 0, 1)])).unwrap();
        assert_eq!(p.plane(), &LinSubspace::coordinate(f, 6, &[0, 1]));
        let p = decompose(&t(f, &[(1, 0, 1), (1, 0, 3)])).unwrap();
        assert_eq!(
            p.plane(),
            &LinSubspace::span(
                f,
                6,
                [f.vector(&[1, 0, 0, 0, 0, 0]), f.vector(&[0, 1, 0, 1, 0, 0])]
            )
        );
        let x = f.vector(&[1, 0, 1, 0, 0, 0]);
        let y = f.vector(&[0, 1, 0, 1, 0, 0]);
        let p = GrassPoint::from_vectors(Side::V, &x, &y).unwrap();
        assert_eq!(p.plane(), &LinSubspace::span(f, 6, [x, y]));
        assert!(decompose(&t(f, &[(1, 0, 1), (1, 2, 3)])).is_err());
    }

    #[test]
    fn tangent_space_at_e01() {
        let f = Field::Rational;
        let p = decompose(&t(f, &[(1, 0, 1)])).unwrap();
        let ts = tangent_space(&p);
        assert_eq!(ts.dim(), 9);
        assert!(ts.contains(p.tensor().coords()));
        let slots: Vec<usize> = (0..15).filter(|&k| k < 9).collect();
        assert_eq!(ts, LinSubspace::coordinate(f, 15, &slots));
    }

    #[test]
    fn plane_sections() {
        let f = Field::Rational;
        let contained = span(
            f,
            &[t(f, &[(1, 0, 1)]), t(f, &[(1, 0, 2)]), t(f, &[(1, 0, 3)])],
        );
        assert_eq!(
            classify_plane_section(&contained).unwrap(),
            PlaneSectionClass::ContainedInG
        );
        let smooth = span(
            f,
            &[
                t(f, &[(1, 0, 1)]),
                t(f, &[(1, 2, 3)]),
                t(f, &[(1, 0, 2), (1, 1, 3)]),
            ],
        );
        assert_eq!(
            classify_plane_section(&smooth).unwrap().tag(),
            "smooth_conic"
        );
        let double = span(
            f,
            &[
                t(f, &[(1, 0, 1)]),
                t(f, &[(1, 0, 2)]),
                t(f, &[(1, 0, 3), (1, 1, 2)]),
            ],
        );
        assert_eq!(
            classify_plane_section(&double).unwrap().tag(),
            "double_line"
        );
        let pair = span(
            f,
            &[t(f, &[(1, 0, 1)]), t(f, &[(1, 2, 3)]), t(f, &[(1, 0, 2)])],
        );
        assert_eq!(classify_plane_section(&pair).unwrap().tag(), "line_pair");
        let generic = span(
            f,
            &[
                t(f, &[(1, 0, 1), (1, 2, 3)]),
                t(f, &[(1, 2, 3), (1, 4, 5)]),
                t(f, &[(1, 0, 5)]),
            ],
        );
        assert_eq!(
            classify_plane_section(&generic).unwrap().tag(),
            "finite_scheme"
        );
    }

    #[test]
    fn double_line_frame_of_the_normal_form() {
        let f = Field::Rational;
        let plane = span(
            f,
            &[
                t(f, &[(1, 0, 1)]),
                t(f, &[(1, 0, 2)]),
                t(f, &[(1, 0, 3), (1, 1, 2)]),
            ],
        );
        let frame = double_line_normal_form(&plane).unwrap();
        assert_eq!(frame.plane(Side::V), plane);
        assert_eq!(
            LinSubspace::span(f, 6, [frame.e[0].clone()]),
            LinSubspace::coordinate(f, 6, &[0])
        );
        let smooth = span(
            f,
            &[
                t(f, &[(1, 0, 1)]),
                t(f, &[(1, 2, 3)]),
                t(f, &[(1, 0, 2), (1, 1, 3)]),
            ],
        );
        assert!(matches!(
            double_line_normal_form(&smooth),
            Err(Error::Classification { .. })
        ));
    }

    #[test]
    fn double_line_frame_of_conjugates() {
        for f in [Field::Rational, Field::Prime(11)] {
            let mut rng = random::rng(17);
            let plane = span(
                f,
                &[
                    t(f, &[(1, 0, 1)]),
                    t(f, &[(1, 0, 2)]),
                    t(f, &[(1, 0, 3), (1, 1, 2)]),
                ],
            );
            for _ in 0..5 {
                let g = Gl6::random(f, &mut rng);
                let moved = g.tensor_subspace(Side::V, &plane);
                let frame = double_line_normal_form(&moved).unwrap();
                assert_eq!(frame.plane(Side::V), moved);
                assert_eq!(
                    classify_plane_section(&frame.plane(Side::V)).unwrap().tag(),
                    "double_line"
                );
            }
        }
    }

    #[test]
    fn grass_line_from_pencil() {
        let f = Field::Prime(7);
        let pencil = span(f, &[t(f, &[(1, 0, 1)]), t(f, &[(1, 0, 2)])]);
        let line = GrassLine::from_pencil(Side::V, &pencil).unwrap();
        assert_eq!(line.vertex(), &LinSubspace::coordinate(f, 6, &[0]));
        assert_eq!(line.envelope(), &LinSubspace::coordinate(f, 6, &[0, 1, 2]));
        let bad = span(f, &[t(f, &[(1, 0, 1)]), t(f, &[(1, 2, 3)])]);
        assert!(GrassLine::from_pencil(Side::V, &bad).is_err());
    }
}
