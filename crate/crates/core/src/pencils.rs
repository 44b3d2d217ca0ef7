//! Pencils of skew forms and the A/B dichotomy for constant rank four.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{
    decompose, form_kernel, is_decomposable, wedge2, wedge22, wedge_spaces, wedge_top3, Gl6, Side,
    TwoTensor,
};
use crate::linalg::matrix::{add_vecs, axpy};
use crate::linalg::{
    binary_forms_have_common_root, interpolate_poly, Field, LinSubspace, Matrix, QuadForm, Scalar,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    span: LinSubspace,
    gens: [TwoTensor; 2],
}

impl Pencil {
    pub fn new(w0: TwoTensor, w1: TwoTensor) -> Result<Pencil> {
        if w0.side() != w1.side() {
            return Err(Error::Precondition(
                "pencil generators on different sides".into(),
            ));
        }
        let span = LinSubspace::span(w0.field(), 15, [w0.coords().to_vec(), w1.coords().to_vec()]);
        if span.dim() != 2 {
            return Err(Error::Precondition(
                "pencil generators are dependent".into(),
            ));
        }
        Ok(Pencil {
            span,
            gens: [w0, w1],
        })
    }

    /// A pencil whose generators are the echelon basis of `span`.
    pub fn from_span(side: Side, span: &LinSubspace) -> Result<Pencil> {
        if span.ambient() != 15 || span.dim() != 2 {
            return Err(Error::UnexpectedDimension {
                what: "pencil".into(),
                expected: 2,
                found: span.dim(),
            });
        }
        let b = span.basis();
        Pencil::new(
            TwoTensor::new(side, b[0].clone())?,
            TwoTensor::new(side, b[1].clone())?,
        )
    }

    pub fn side(&self) -> Side {
        self.gens[0].side()
    }

    pub fn field(&self) -> Field {
        self.gens[0].field()
    }

    pub fn span(&self) -> &LinSubspace {
        &self.span
    }

    pub fn gens(&self) -> &[TwoTensor; 2] {
        &self.gens
    }

    /// `s ω0 + t ω1`.
    pub fn member(&self, s: &Scalar, t: &Scalar) -> TwoTensor {
        self.gens[0].scale(s).add(&self.gens[1].scale(t))
    }

    pub fn transform(&self, g: &Gl6) -> Pencil {
        Pencil {
            span: g.tensor_subspace(self.side(), &self.span),
            gens: [g.tensor(&self.gens[0]), g.tensor(&self.gens[1])],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "generators": [self.gens[0].to_json(), self.gens[1].to_json()],
            "span": self.span.to_json(),
        })
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<Pencil> {
        let gens = v
            .get("generators")
            .and_then(serde_json::Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("pencil needs two \"generators\"".into()))?;
        Pencil::new(
            TwoTensor::from_json(field, &gens[0])?,
            TwoTensor::from_json(field, &gens[1])?,
        )
    }
}

fn check_basis(basis: &[Vec<Scalar>], n: usize) -> Result<Field> {
    if basis.len() != n || basis.iter().any(|b| b.len() != 6) {
        return Err(Error::Dimension(format!(
            "expected {n} vectors of length 6"
        )));
    }
    let f = basis[0][0].field();
    if LinSubspace::span(f, 6, basis.to_vec()).dim() != n {
        return Err(Error::Precondition("basis vectors are dependent".into()));
    }
    Ok(f)
}

/// `<b0^b2 + b1^b3, b0^b4 + b1^b5>`.
pub fn make_a_line(side: Side, basis: &[Vec<Scalar>]) -> Result<Pencil> {
    check_basis(basis, 6)?;
    let w = |i: usize, j: usize| wedge2(side, &basis[i], &basis[j]);
    Pencil::new(w(0, 2).add(&w(1, 3)), w(0, 4).add(&w(1, 5)))
}

/// `<b0^b2 + b1^b3, b0^b3 + b1^b4>`.
pub fn make_b_line(side: Side, basis: &[Vec<Scalar>]) -> Result<Pencil> {
    check_basis(basis, 5)?;
    let w = |i: usize, j: usize| wedge2(side, &basis[i], &basis[j]);
    Pencil::new(w(0, 2).add(&w(1, 3)), w(0, 3).add(&w(1, 4)))
}

pub fn standard_basis(field: Field) -> Vec<Vec<Scalar>> {
    (0..6).map(|i| field.unit_vector(6, i)).collect()
}

pub fn standard_a_line(field: Field, side: Side) -> Pencil {
    make_a_line(side, &standard_basis(field)).expect("standard basis")
}

pub fn standard_b_line(field: Field, side: Side) -> Pencil {
    make_b_line(side, &standard_basis(field)[..5]).expect("standard basis")
}

/// Coefficients `[s^3, s^2 t, s t^2, t^3]` of `triple_wedge(s ω0 + t ω1)`.
pub fn pfaffian_cubic(l: &Pencil) -> [Scalar; 4] {
    let [a, b] = &l.gens;
    let f = l.field();
    let t = |x: &TwoTensor, y: &TwoTensor, z: &TwoTensor| wedge_top3(x, y, z).expect("same side");
    let three = f.int(3);
    [
        t(a, a, a),
        &three * &t(a, a, b),
        &three * &t(a, b, b),
        t(b, b, b),
    ]
}

/// Why a pencil fails (or passes) the constant-rank-four test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank4Status {
    ConstantRank4,
    /// The Pfaffian cubic is not identically zero.
    CubicNonzero,
    /// Some member has rank at most two.
    MeetsGrassmannian,
}

pub fn rank4_status(l: &Pencil) -> Rank4Status {
    if pfaffian_cubic(l).iter().any(|c| !c.is_zero()) {
        return Rank4Status::CubicNonzero;
    }
    let [a, b] = &l.gens;
    let f = l.field();
    let aa = wedge22(a, a).expect("same side");
    let ab = wedge22(a, b).expect("same side");
    let bb = wedge22(b, b).expect("same side");
    let two = f.int(2);
    let quadrics: Vec<Vec<Scalar>> = (0..15)
        .map(|c| {
            vec![
                aa.coords()[c].clone(),
                &two * &ab.coords()[c],
                bb.coords()[c].clone(),
            ]
        })
        .collect();
    if binary_forms_have_common_root(f, &quadrics) {
        Rank4Status::MeetsGrassmannian
    } else {
        Rank4Status::ConstantRank4
    }
}

pub fn constant_rank4(l: &Pencil) -> bool {
    rank4_status(l) == Rank4Status::ConstantRank4
}

/// Sample parameters `t` for members `ω0 + t ω1`; `None` is the member `ω1`.
const QUADRIC_SAMPLES: [Option<i64>; 5] = [Some(0), Some(1), Some(2), Some(3), Some(4)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelQuadric {
    /// The 4-space swept by the member kernels.
    pub span: LinSubspace,
    /// The quadric in the coordinates of `span`'s stored basis.
    pub form: QuadForm,
    pub rank: usize,
}

fn member_at(l: &Pencil, t: Option<i64>) -> TwoTensor {
    let f = l.field();
    match t {
        Some(t) => l.member(&f.one(), &f.int(t)),
        None => l.gens[1].clone(),
    }
}

/// The quadric swept by the kernels of the members of a constant-rank-four
/// pencil. Each sampled kernel contributes three points (two basis vectors
/// and their sum) so that the interpolated quadric contains the whole line.
pub fn kernel_quadric(l: &Pencil) -> Result<KernelQuadric> {
    if !constant_rank4(l) {
        return Err(Error::Precondition(
            "pencil is not of constant rank four".into(),
        ));
    }
    let f = l.field();
    let mut kernels = Vec::new();
    for t in QUADRIC_SAMPLES.iter().copied().chain([None]) {
        let k = form_kernel(&member_at(l, t));
        if k.dim() != 2 {
            return Err(Error::UnexpectedDimension {
                what: "member kernel".into(),
                expected: 2,
                found: k.dim(),
            });
        }
        kernels.push(k);
    }
    let span = LinSubspace::span(f, 6, kernels.iter().flat_map(|k| k.basis().to_vec()));
    if span.dim() != 4 {
        return Err(Error::UnexpectedDimension {
            what: "kernel sweep".into(),
            expected: 4,
            found: span.dim(),
        });
    }
    let line_points = |k: &LinSubspace| -> Vec<Vec<Scalar>> {
        let b = k.basis();
        [b[0].clone(), b[1].clone(), add_vecs(&b[0], &b[1])]
            .iter()
            .map(|v| span.coordinates(v).expect("kernel inside its span"))
            .collect()
    };
    let (sample, check) = kernels.split_at(QUADRIC_SAMPLES.len());
    let points: Vec<Vec<Scalar>> = sample.iter().flat_map(line_points).collect();
    let sols = interpolate_poly(f, &points, 2);
    if sols.len() != 1 {
        return Err(Error::UnexpectedDimension {
            what: "quadrics through the kernels".into(),
            expected: 1,
            found: sols.len(),
        });
    }
    let poly = sols[0].monic();
    for p in check.iter().flat_map(line_points) {
        if !poly.eval(&p).is_zero() {
            return Err(Error::CheckFailed(
                "verification kernel is not on the interpolated quadric".into(),
            ));
        }
    }
    let form = QuadForm::from_poly(&poly);
    let rank = form.rank();
    Ok(KernelQuadric { span, form, rank })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PencilTag {
    A,
    B,
    MeetsGrassmannian,
    Other,
}

impl PencilTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PencilTag::A => "A",
            PencilTag::B => "B",
            PencilTag::MeetsGrassmannian => "meets_grassmannian",
            PencilTag::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilClass {
    pub tag: PencilTag,
    pub quadric_rank: Option<usize>,
    /// For B-lines, the point shared by all member kernels.
    pub witness: Option<LinSubspace>,
}

impl PencilClass {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "class": self.tag.as_str(),
            "quadric_rank": self.quadric_rank,
            "witness": self.witness.as_ref().map(|w| {
                w.basis()[0].iter().map(Scalar::to_json).collect::<Vec<_>>()
            }),
        })
    }
}

pub fn classify_pencil(l: &Pencil) -> Result<PencilClass> {
    match rank4_status(l) {
        Rank4Status::CubicNonzero => {
            return Ok(PencilClass {
                tag: PencilTag::Other,
                quadric_rank: None,
                witness: None,
            })
        }
        Rank4Status::MeetsGrassmannian => {
            return Ok(PencilClass {
                tag: PencilTag::MeetsGrassmannian,
                quadric_rank: None,
                witness: None,
            })
        }
        Rank4Status::ConstantRank4 => {}
    }
    let kq = kernel_quadric(l)?;
    let common = form_kernel(&l.gens[0]).intersect(&form_kernel(&l.gens[1]))?;
    let (tag, witness) = match kq.rank {
        4 => (PencilTag::A, None),
        3 => (PencilTag::B, Some(common.clone())),
        r => {
            return Err(Error::CheckFailed(format!(
                "kernel quadric of rank {r} on a constant-rank-four pencil"
            )))
        }
    };
    let by_kernels = if common.is_zero() {
        PencilTag::A
    } else {
        PencilTag::B
    };
    if by_kernels != tag || (tag == PencilTag::B && common.dim() != 1) {
        return Err(Error::CheckFailed(format!(
            "quadric rank {} disagrees with common kernel of dimension {}",
            kq.rank,
            common.dim()
        )));
    }
    Ok(PencilClass {
        tag,
        quadric_rank: Some(kq.rank),
        witness,
    })
}

/// The 2-plane `M` with `ℓ ⊂ M ^ (6-space)`, as a subspace of the space whose
/// vectors the pencil members are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentPlane {
    pub m: LinSubspace,
    pub sigma: TwoTensor,
}

pub fn tangent_plane_m(l: &Pencil) -> Result<TangentPlane> {
    let f = l.field();
    let side = l.side();
    let mut rows = Vec::with_capacity(30);
    let units: Vec<TwoTensor> = (0..15)
        .map(|k| TwoTensor::new(side, f.unit_vector(15, k)).expect("15 coords"))
        .collect();
    for w in &l.gens {
        let cols: Vec<Vec<Scalar>> = units
            .iter()
            .map(|u| wedge22(w, u).expect("same side").coords().to_vec())
            .collect();
        let m = Matrix::from_cols(f, 15, &cols);
        rows.extend(m.row_vecs());
    }
    let sols = Matrix::from_rows(f, 15, &rows).kernel();
    let sigma = match sols.dim() {
        0 => {
            return Err(Error::CheckFailed(
                "no tangent plane: the linear system has only the zero solution".into(),
            ))
        }
        1 => {
            let s = TwoTensor::new(side, sols.basis()[0].clone())?;
            if !is_decomposable(&s) {
                return Err(Error::CheckFailed(
                    "the unique solution is not decomposable".into(),
                ));
            }
            s
        }
        d => {
            let Some(p) = f.modulus() else {
                return Err(Error::CheckFailed(format!(
                    "{d}-dimensional solution space over Q"
                )));
            };
            let classes = decomposable_classes(&sols, side, p);
            if classes.len() != 1 {
                return Err(Error::CheckFailed(format!(
                    "{} decomposable solution classes in a {d}-dimensional solution space",
                    classes.len()
                )));
            }
            classes.into_iter().next().expect("one class")
        }
    };
    let m = decompose(&sigma)?.plane().clone();
    let tangent = wedge_spaces(side, &m, &LinSubspace::full(f, 6));
    if !l.span.is_subspace_of(&tangent) {
        return Err(Error::CheckFailed("pencil is not inside M ^ V".into()));
    }
    Ok(TangentPlane { m, sigma })
}

fn decomposable_classes(space: &LinSubspace, side: Side, p: u32) -> Vec<TwoTensor> {
    let f = space.field();
    let d = space.dim();
    let mut out = Vec::new();
    for coords in crate::scan::projective_points(p, d) {
        let c: Vec<Scalar> = coords.iter().map(|&x| f.residue(x)).collect();
        let t = TwoTensor::new(side, space.combine(&c)).expect("15 coords");
        if is_decomposable(&t) {
            out.push(t);
        }
    }
    out
}

/// Pairs of generators tried by the normal-form search, as coefficient rows.
const GENERATOR_CHOICES: [[i64; 4]; 4] = [[1, 0, 0, 1], [1, 1, 0, 1], [1, 0, 1, 1], [1, 2, 1, -1]];

/// `g` with `g · ℓ` equal to the standard A-line of the same side.
pub fn a_line_normal_form(l: &Pencil) -> Result<Gl6> {
    let class = classify_pencil(l)?;
    if class.tag != PencilTag::A {
        return Err(Error::Classification {
            expected: "A".into(),
            found: class.tag.as_str().into(),
        });
    }
    let f = l.field();
    let mut last = Error::CheckFailed("no generator choice succeeded".into());
    for c in GENERATOR_CHOICES {
        let w0 = l.member(&f.int(c[0]), &f.int(c[1]));
        let w1 = l.member(&f.int(c[2]), &f.int(c[3]));
        match normal_frame(&w0, &w1) {
            Ok(frame) => {
                let g = frame_to_gl(l.side(), frame)?;
                let moved = l.transform(&g);
                if moved.span == *standard_a_line(f, l.side()).span() {
                    return Ok(g);
                }
                last =
                    Error::CheckFailed("normal form does not reproduce the standard pencil".into());
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Columns of the new basis in which `w0 = f0^f2 + f1^f3`, `w1 = f0^f4 + f1^f5`.
fn normal_frame(w0: &TwoTensor, w1: &TwoTensor) -> Result<Vec<Vec<Scalar>>> {
    let f = w0.field();
    let k0 = form_kernel(w0);
    let k1 = form_kernel(w1);
    if k0.dim() != 2 || k1.dim() != 2 || !k0.intersect(&k1)?.is_zero() {
        return Err(Error::CheckFailed(
            "generator kernels are not disjoint planes".into(),
        ));
    }
    let vanishes_on =
        |w: &TwoTensor, k: &LinSubspace| w.eval(&k.basis()[0], &k.basis()[1]).is_zero();
    if !vanishes_on(w0, &k1) || !vanishes_on(w1, &k0) {
        return Err(Error::CheckFailed(
            "generators do not vanish on each other's kernels".into(),
        ));
    }
    let kk = k0.sum(&k1)?;
    let outside = |vs: &[Vec<Scalar>]| {
        LinSubspace::span(f, 6, kk.basis().iter().cloned().chain(vs.iter().cloned())).dim()
            == 4 + vs.len()
    };
    let candidates = |s: &LinSubspace| -> Vec<Vec<Scalar>> {
        let b = s.basis();
        let mut c = b.to_vec();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                c.push(add_vecs(&b[i], &b[j]));
            }
        }
        c
    };
    let e0 = candidates(&LinSubspace::full(f, 6))
        .into_iter()
        .find(|v| outside(std::slice::from_ref(v)))
        .ok_or_else(|| Error::CheckFailed("no e0 outside K0 + K1".into()))?;
    let s = Matrix::from_rows(f, 6, &[w0.contract(&e0), w1.contract(&e0)]).kernel();
    let e1 = candidates(&s)
        .into_iter()
        .find(|v| outside(&[e0.clone(), v.clone()]))
        .ok_or_else(|| Error::CheckFailed("no e1 outside K0 + K1".into()))?;
    let dual_pair =
        |k: &LinSubspace, a: &[Scalar], b: &[Scalar]| -> Result<(Vec<Scalar>, Vec<Scalar>)> {
            let kb = k.basis();
            let dot = |x: &[Scalar], y: &[Scalar]| crate::linalg::matrix::dot(x, y, f);
            let m = Matrix::from_rows(
                f,
                2,
                &[
                    vec![dot(a, &kb[0]), dot(a, &kb[1])],
                    vec![dot(b, &kb[0]), dot(b, &kb[1])],
                ],
            );
            let inv = m.inverse().ok_or_else(|| {
                Error::CheckFailed("functionals are dependent on a kernel".into())
            })?;
            let col = |j: usize| {
                axpy(
                    &crate::linalg::matrix::scale(&kb[0], inv.get(0, j)),
                    inv.get(1, j),
                    &kb[1],
                )
            };
            Ok((col(0), col(1)))
        };
    let (e2, e3) = dual_pair(&k1, &w0.contract(&e0), &w0.contract(&e1))?;
    let (e4, e5) = dual_pair(&k0, &w1.contract(&e0), &w1.contract(&e1))?;
    Ok(vec![e0, e1, e2, e3, e4, e5])
}

fn frame_to_gl(side: Side, cols: Vec<Vec<Scalar>>) -> Result<Gl6> {
    let f = cols[0][0].field();
    let p = Matrix::from_cols(f, 6, &cols);
    match side {
        Side::Dual => {
            let ginv = p
                .inverse()
                .ok_or_else(|| Error::CheckFailed("normal-form frame is singular".into()))?;
            Gl6::new(ginv)
        }
        Side::V => Gl6::new(p.transpose()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn fields() -> [Field; 2] {
        [Field::Rational, Field::Prime(11)]
    }

    #[test]
    fn standard_lines_are_constant_rank_four() {
        for f in fields() {
            assert!(constant_rank4(&standard_a_line(f, Side::Dual)));
            assert!(constant_rank4(&standard_b_line(f, Side::Dual)));
        }
    }

    #[test]
    fn rank_failures() {
        let f = Field::Rational;
        let t = |terms: &[(i64, usize, usize)]| TwoTensor::from_terms(f, Side::V, terms);
        let l = Pencil::new(t(&[(1, 0, 1)]), t(&[(1, 2, 3)])).unwrap();
        assert_eq!(rank4_status(&l), Rank4Status::MeetsGrassmannian);
        assert_eq!(
            classify_pencil(&l).unwrap().tag,
            PencilTag::MeetsGrassmannian
        );
        let l = Pencil::new(t(&[(1, 0, 1), (1, 2, 3), (1, 4, 5)]), t(&[(1, 0, 1)])).unwrap();
        assert_eq!(rank4_status(&l), Rank4Status::CubicNonzero);
        assert_eq!(classify_pencil(&l).unwrap().tag, PencilTag::Other);
    }

    #[test]
    fn kernel_quadric_of_standard_a_line() {
        let f = Field::Rational;
        let kq = kernel_quadric(&standard_a_line(f, Side::Dual)).unwrap();
        assert_eq!(kq.span, LinSubspace::coordinate(f, 6, &[2, 3, 4, 5]));
        assert_eq!(kq.rank, 4);
        // x2 x5 - x3 x4 in coordinates (x2, x3, x4, x5)
        let expected = crate::linalg::HomPoly::from_terms(
            f,
            4,
            2,
            [(vec![1, 0, 0, 1], f.one()), (vec![0, 1, 1, 0], f.int(-1))],
        );
        assert!(kq.form.to_poly().ratio_to(&expected).is_some());
    }

    #[test]
    fn kernel_quadric_of_standard_b_line() {
        let f = Field::Prime(7);
        let kq = kernel_quadric(&standard_b_line(f, Side::Dual)).unwrap();
        assert_eq!(kq.span, LinSubspace::coordinate(f, 6, &[2, 3, 4, 5]));
        assert_eq!(kq.rank, 3);
        let expected = crate::linalg::HomPoly::from_terms(
            f,
            4,
            2,
            [(vec![1, 0, 1, 0], f.one()), (vec![0, 2, 0, 0], f.int(-1))],
        );
        assert!(kq.form.to_poly().ratio_to(&expected).is_some());
    }

    #[test]
    fn classification_of_normal_forms() {
        let f = Field::Rational;
        let a = classify_pencil(&standard_a_line(f, Side::Dual)).unwrap();
        assert_eq!((a.tag, a.quadric_rank), (PencilTag::A, Some(4)));
        let b = classify_pencil(&standard_b_line(f, Side::Dual)).unwrap();
        assert_eq!((b.tag, b.quadric_rank), (PencilTag::B, Some(3)));
        assert_eq!(b.witness, Some(LinSubspace::coordinate(f, 6, &[5])));
    }

    #[test]
    fn permuted_basis_is_still_an_a_line() {
        let f = Field::Prime(11);
        let e = standard_basis(f);
        let perm: Vec<Vec<Scalar>> = [1, 0, 3, 2, 5, 4].iter().map(|&i| e[i].clone()).collect();
        let l = make_a_line(Side::Dual, &perm).unwrap();
        assert_eq!(classify_pencil(&l).unwrap().tag, PencilTag::A);
        assert!(make_a_line(Side::Dual, &e[..5]).is_err());
    }

    #[test]
    fn tangent_plane_of_normal_forms() {
        let f = Field::Rational;
        let m01 = LinSubspace::coordinate(f, 6, &[0, 1]);
        assert_eq!(
            tangent_plane_m(&standard_a_line(f, Side::Dual)).unwrap().m,
            m01
        );
        assert_eq!(
            tangent_plane_m(&standard_b_line(f, Side::Dual)).unwrap().m,
            m01
        );
    }

    #[test]
    fn normal_form_of_standard_a_line_is_identity() {
        let f = Field::Rational;
        let g = a_line_normal_form(&standard_a_line(f, Side::Dual)).unwrap();
        assert_eq!(g, Gl6::identity(f));
        assert!(matches!(
            a_line_normal_form(&standard_b_line(f, Side::Dual)),
            Err(Error::Classification { .. })
        ));
    }

    #[test]
    fn normal_form_recovers_conjugates() {
        for f in fields() {
            let mut rng = random::rng(23);
            for side in [Side::Dual, Side::V] {
                let std = standard_a_line(f, side);
                for _ in 0..4 {
                    let h = Gl6::random(f, &mut rng);
                    let l = std.transform(&h);
                    let g = a_line_normal_form(&l).unwrap();
                    assert_eq!(l.transform(&g).span(), std.span());
                    let tp = tangent_plane_m(&l).unwrap();
                    let m01 = LinSubspace::coordinate(f, 6, &[0, 1]);
                    assert_eq!(tp.m, h.subspace(side, &m01));
                }
            }
        }
    }
}
