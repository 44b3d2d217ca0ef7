//! Projection of `G(2,6) ∩ ℓ⊥` from the plane of singular points `π` onto a
//! copy of `G(2,5)` in `P^9`, and the induced map on `X`.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{
    classify_plane_section, decompose, exterior_square, pair_index, pairing, wedge2, Gl6,
    GrassPoint, PlaneSectionClass, Side, TwoTensor,
};
use crate::fano_pair::ThreefoldPair;
use crate::linalg::{Field, LinSubspace, Matrix, Scalar};
use crate::pencils::{a_line_normal_form, Pencil};
use crate::scan::{lift, scan_sextic, ScanOptions};

/// Names of the ten coordinates of `P^9`, in order.
pub const COORD_NAMES: [&str; 10] = ["X", "Y", "Z", "T", "U01", "U03", "U05", "U13", "U15", "U35"];

/// Pairs of `{1..5}` indexing the Plücker coordinates of `G(2,5)`, zero-based.
pub const DELTA_PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

#[derive(Clone, Debug)]
pub struct ProjectionContext {
    line: Pencil,
    g: Gl6,
    center: LinSubspace,
    perp: LinSubspace,
}

impl ProjectionContext {
    pub fn line(&self) -> &Pencil {
        &self.line
    }

    /// Basis change taking the line to its normal form.
    pub fn normalizer(&self) -> &Gl6 {
        &self.g
    }

    pub fn center(&self) -> &LinSubspace {
        &self.center
    }

    /// `ℓ⊥` inside `Λ²V`.
    pub fn perp(&self) -> &LinSubspace {
        &self.perp
    }

    pub fn field(&self) -> Field {
        self.line.field()
    }

    /// The singular point of the section by the hyperplane of parameter
    /// `(s, t)`.
    pub fn conic_point(&self, s: &Scalar, t: &Scalar) -> Result<GrassPoint> {
        let f = self.field();
        let mut x = f.zero_vector(6);
        let mut y = f.zero_vector(6);
        x[2] = t.clone();
        x[4] = -s.clone();
        y[3] = t.clone();
        y[5] = -s.clone();
        let back = self.g.inverse();
        GrassPoint::from_vectors(
            Side::V,
            &back.vector(Side::V, &x),
            &back.vector(Side::V, &y),
        )
    }

    /// The member of `ℓ` whose section is singular at `conic_point(s, t)`.
    pub fn conic_form(&self, s: &Scalar, t: &Scalar) -> TwoTensor {
        let f = self.field();
        let s = s.clone();
        let t = t.clone();
        let mut w = TwoTensor::zero(f, Side::Dual);
        for (c, i, j) in [(s.clone(), 0, 2), (s, 1, 3), (t.clone(), 0, 4), (t, 1, 5)] {
            w = w.add(&TwoTensor::unit(f, Side::Dual, i, j).scale(&c));
        }
        self.g.inverse().tensor(&w)
    }

    /// Coordinates in `P^9` of any `ω` in `Λ²V`, without the membership checks.
    pub fn coordinates(&self, w: &TwoTensor) -> Vec<Scalar> {
        let n = self.g.tensor(w);
        let p = |i, j| n.coords()[pair_index(i, j)].clone();
        vec![
            p(2, 4),
            p(1, 4),
            -p(1, 2),
            p(2, 5) + p(3, 4),
            p(0, 1),
            p(0, 3),
            p(0, 5),
            p(1, 3),
            p(1, 5),
            p(3, 5),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "line": self.line.to_json(),
            "normalizer": self.g.to_json(),
            "center": self.center.to_json(),
        })
    }
}

/// Normalizes an A-line and sets up the conic, its plane and `ℓ⊥`.
pub fn make_context(l: &Pencil) -> Result<ProjectionContext> {
    if l.side() != Side::Dual {
        return Err(Error::Precondition(
            "the line must be a pencil of forms".into(),
        ));
    }
    let f = l.field();
    let g = a_line_normal_form(l)?;
    let back = g.inverse();
    let std_center = LinSubspace::span(
        f,
        15,
        [
            TwoTensor::unit(f, Side::V, 2, 3),
            TwoTensor::from_terms(f, Side::V, &[(1, 2, 5), (-1, 3, 4)]),
            TwoTensor::unit(f, Side::V, 4, 5),
        ]
        .into_iter()
        .map(TwoTensor::into_coords),
    );
    let center = back.tensor_subspace(Side::V, &std_center);
    let perp = l.span().annihilator();
    let ctx = ProjectionContext {
        line: l.clone(),
        g,
        center,
        perp,
    };

    let samples = [(1, 0), (0, 1), (1, 1)];
    let conic_span = LinSubspace::span(
        f,
        15,
        samples
            .iter()
            .map(|&(s, t)| {
                ctx.conic_point(&f.int(s), &f.int(t))
                    .map(|q| q.tensor().coords().to_vec())
            })
            .collect::<Result<Vec<_>>>()?,
    );
    if conic_span != ctx.center || !ctx.center.is_subspace_of(&ctx.perp) {
        return Err(Error::CheckFailed(
            "conic does not span the center inside ℓ⊥".into(),
        ));
    }
    if matches!(
        classify_plane_section(&ctx.center)?,
        PlaneSectionClass::ContainedInG
    ) {
        return Err(Error::CheckFailed("center plane lies in G(2,6)".into()));
    }
    let rows: Vec<Vec<Scalar>> = ctx
        .perp
        .basis()
        .iter()
        .map(|b| ctx.coordinates(&TwoTensor::new(Side::V, b.clone()).expect("15 coordinates")))
        .collect();
    if Matrix::from_rows(f, 10, &rows).rank() != 10 {
        return Err(Error::CheckFailed(
            "coordinate functionals are dependent on ℓ⊥".into(),
        ));
    }
    for b in ctx.center.basis() {
        let c = ctx.coordinates(&TwoTensor::new(Side::V, b.clone()).expect("15 coordinates"));
        if !c.iter().all(Scalar::is_zero) {
            return Err(Error::CheckFailed(
                "coordinate functionals do not vanish on the center".into(),
            ));
        }
    }
    Ok(ctx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G25Point {
    pub coords: Vec<Scalar>,
    pub delta: Vec<Scalar>,
}

impl G25Point {
    pub fn new(coords: Vec<Scalar>) -> Result<G25Point> {
        if coords.len() != 10 {
            return Err(Error::Dimension(format!(
                "expected 10 coordinates, got {}",
                coords.len()
            )));
        }
        let delta = to_plucker(&coords);
        Ok(G25Point { coords, delta })
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = five_equations_residual(self);
        let js = |v: &[Scalar]| v.iter().map(Scalar::to_json).collect::<Vec<_>>();
        json!({
            "coords": js(&self.coords),
            "delta": js(&self.delta),
            "residuals": js(&r.corrected),
            "variant_residuals": {
                "XU05+YU35-TU15": r.sign_variant.to_json(),
                "U01U35-U01U15+U05U13": r.index_variant.to_json(),
            },
        })
    }
}

/// Residuals of the five quadrics, and of two sign/index variants that
/// disagree with the substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuals {
    pub corrected: [Scalar; 5],
    pub sign_variant: Scalar,
    pub index_variant: Scalar,
}

impl Residuals {
    pub fn vanish(&self) -> bool {
        self.corrected.iter().all(Scalar::is_zero)
    }
}

pub fn five_equations_residual(pt: &G25Point) -> Residuals {
    let [x, y, z, t, u01, u03, u05, u13, u15, u35] = pt.coords.as_slice() else {
        unreachable!("G25Point holds ten coordinates")
    };
    let corrected = [
        x.clone() * u01 + y.clone() * u13 + z.clone() * u15,
        x.clone() * u03 + z.clone() * u35 + t.clone() * u13,
        x.clone() * u05 - y.clone() * u35 + t.clone() * u15,
        y.clone() * u03 + z.clone() * u05 - t.clone() * u01,
        u01.clone() * u35 - u03.clone() * u15 + u05.clone() * u13,
    ];
    let sign_variant = x.clone() * u05 + y.clone() * u35 - t.clone() * u15;
    let index_variant = u01.clone() * u35 - u01.clone() * u15 + u05.clone() * u13;
    Residuals {
        corrected,
        sign_variant,
        index_variant,
    }
}

/// `(Δ12, Δ13, Δ14, Δ15, Δ23, Δ24, Δ25, Δ34, Δ35, Δ45)`.
pub fn to_plucker(c: &[Scalar]) -> Vec<Scalar> {
    vec![
        c[4].clone(),
        c[5].clone(),
        c[7].clone(),
        c[2].clone(),
        c[6].clone(),
        c[8].clone(),
        -c[1].clone(),
        c[9].clone(),
        -c[3].clone(),
        c[0].clone(),
    ]
}

fn delta_index(a: usize, b: usize) -> usize {
    DELTA_PAIRS
        .iter()
        .position(|&q| q == (a, b))
        .expect("a < b < 5")
}

/// `Δab·Δcd − Δac·Δbd + Δad·Δbc` for each 4-subset of `{1..5}`.
pub fn plucker_relations(delta: &[Scalar]) -> Vec<Scalar> {
    let d = |a, b| delta[delta_index(a, b)].clone();
    let mut out = Vec::with_capacity(5);
    for skip in (0..5).rev() {
        let q: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
        let (a, b, c, e) = (q[0], q[1], q[2], q[3]);
        out.push(d(a, b) * d(c, e) - d(a, c) * d(b, e) + d(a, e) * d(b, c));
    }
    out
}

pub fn g25_member(pt: &G25Point) -> bool {
    plucker_relations(&pt.delta).iter().all(Scalar::is_zero)
}

/// Projects `ω` in `ℓ⊥` away from the center.
pub fn project(ctx: &ProjectionContext, w: &TwoTensor) -> Result<G25Point> {
    if w.side() != Side::V {
        return Err(Error::Precondition("projection acts on Λ²V".into()));
    }
    for gen in ctx.line.gens() {
        if !pairing(gen, w)?.is_zero() {
            return Err(Error::Precondition("tensor is not in ℓ⊥".into()));
        }
    }
    let coords = ctx.coordinates(w);
    if coords.iter().all(Scalar::is_zero) {
        return Err(Error::CenterHit(
            "tensor lies in the plane of the conic".into(),
        ));
    }
    G25Point::new(coords)
}

/// Image of a point of `X`, checked to land on `G(2,5)`.
pub fn restrict_to_x(
    ctx: &ProjectionContext,
    pair: &ThreefoldPair,
    x: &GrassPoint,
) -> Result<G25Point> {
    if !ctx.line.span().is_subspace_of(pair.u5()) {
        return Err(Error::Precondition("line is not inside U5".into()));
    }
    if !pair.x_member(x.tensor())? {
        return Err(Error::Precondition("point is not on X".into()));
    }
    let pt = project(ctx, x.tensor())?;
    if !g25_member(&pt) {
        return Err(Error::CheckFailed(
            "image of a point of X is off G(2,5)".into(),
        ));
    }
    Ok(pt)
}

/// The 2-plane of the abstract 5-space whose Plücker coordinates are `Δ`.
pub fn bundle_fiber(pt: &G25Point) -> Result<LinSubspace> {
    let f = pt.field();
    let mut m = Matrix::zero(f, 5, 5);
    for (k, &(a, b)) in DELTA_PAIRS.iter().enumerate() {
        m.set(a, b, pt.delta[k].clone());
        m.set(b, a, -pt.delta[k].clone());
    }
    let cols = LinSubspace::span(f, 5, (0..5).map(|c| m.col(c)));
    if cols.dim() != 2 {
        return Err(Error::UnexpectedDimension {
            what: "bundle fiber".into(),
            expected: 2,
            found: cols.dim(),
        });
    }
    Ok(cols)
}

/// Fiber of the pulled-back bundle at a point of `X`.
pub fn fiber_at(
    ctx: &ProjectionContext,
    pair: &ThreefoldPair,
    x: &GrassPoint,
) -> Result<LinSubspace> {
    bundle_fiber(&restrict_to_x(ctx, pair, x)?)
}

/// The splitting `V = A ⊕ B` adapted to the line, with `ℓ ⊂ Λ²A⊥ ⊕ Λ²B⊥`.
pub fn segre_context(ctx: &ProjectionContext) -> Result<(LinSubspace, LinSubspace)> {
    let f = ctx.field();
    let back = ctx.g.inverse();
    let a = back.subspace(Side::V, &LinSubspace::coordinate(f, 6, &[0, 2, 4]));
    let b = back.subspace(Side::V, &LinSubspace::coordinate(f, 6, &[1, 3, 5]));
    let target = exterior_square(Side::Dual, &a.annihilator())
        .sum(&exterior_square(Side::Dual, &b.annihilator()))?;
    if !ctx.line.span().is_subspace_of(&target) {
        return Err(Error::CheckFailed("line is not inside Λ²A⊥ ⊕ Λ²B⊥".into()));
    }
    Ok((a, b))
}

/// Points `a ^ b` of `X` with `a ∈ A`, `b ∈ B`, over the pair's prime field.
pub fn sextic_points(
    pair: &ThreefoldPair,
    a: &LinSubspace,
    b: &LinSubspace,
    opts: &ScanOptions,
) -> Result<Vec<GrassPoint>> {
    let report = scan_sextic(pair, a, b, opts)?;
    let f = pair.field();
    report
        .inventory
        .unwrap_or_default()
        .iter()
        .map(|t| decompose(&TwoTensor::new(Side::V, lift(f, t))?))
        .collect()
}

/// Chart of `G(2,6) ∩ ℓ⊥` for the standard A-line: from
/// `(α1, α3, α5, β1, β3, β5)`, the tensor `u ^ w` with `u = e2 + Σ α_i e_i`,
/// `w = e4 + Σ β_i e_i` (`i ∈ {0,1,3,5}`, `α0`, `β0` fixed by `ℓ⊥`), and its
/// expected image in `P^9`.
pub fn chart(r: &[Scalar]) -> (TwoTensor, Vec<Scalar>) {
    let f = r[0].field();
    let (a1, a3, a5, b1, b3, b5) = (&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]);
    let d = |x: &Scalar, y: &Scalar, u: &Scalar, v: &Scalar| x.clone() * v - y.clone() * u;
    let d13 = d(a1, a3, b1, b3);
    let d15 = d(a1, a5, b1, b5);
    let d35 = d(a3, a5, b3, b5);
    let a0 = -d15.clone();
    let b0 = d13.clone();
    let u = vec![
        a0.clone(),
        a1.clone(),
        f.one(),
        a3.clone(),
        f.zero(),
        a5.clone(),
    ];
    let w = vec![
        b0.clone(),
        b1.clone(),
        f.zero(),
        b3.clone(),
        f.one(),
        b5.clone(),
    ];
    let expected = vec![
        f.one(),
        a1.clone(),
        b1.clone(),
        a3.clone() + b5,
        d(&a0, a1, &b0, b1),
        d(&a0, a3, &b0, b3),
        d(&a0, a5, &b0, b5),
        d13,
        d15,
        d35,
    ];
    (wedge2(Side::V, &u, &w), expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::tangent_space;
    use crate::linalg::matrix::dot;
    use crate::pencils::standard_a_line;
    use crate::random;

    fn fields() -> [Field; 2] {
        [Field::Rational, Field::Prime(11)]
    }

    fn chart_point(f: Field, rng: &mut random::Rng) -> (TwoTensor, Vec<Scalar>) {
        chart(&random::vector(f, 6, rng))
    }

    #[test]
    fn standard_context_has_the_expected_conic() {
        for f in fields() {
            let ctx = make_context(&standard_a_line(f, Side::Dual)).unwrap();
            let q = ctx.conic_point(&f.int(2), &f.int(3)).unwrap();
            let expected =
                TwoTensor::from_terms(f, Side::V, &[(9, 2, 3), (-6, 2, 5), (6, 3, 4), (4, 4, 5)]);
            assert!(
                crate::linalg::matrix::proportionality(q.tensor().coords(), expected.coords())
                    .is_some()
            );
            assert!(matches!(
                classify_plane_section(ctx.center()).unwrap(),
                PlaneSectionClass::Conic(_)
            ));
        }
    }

    #[test]
    fn conic_points_are_singular_points_of_their_sections() {
        for f in fields() {
            let mut rng = random::rng(4);
            let l = standard_a_line(f, Side::Dual).transform(&Gl6::random(f, &mut rng));
            let ctx = make_context(&l).unwrap();
            for (s, t) in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 3), (-3, 5)] {
                let (s, t) = (f.int(s), f.int(t));
                let q = ctx.conic_point(&s, &t).unwrap();
                let form = ctx.conic_form(&s, &t);
                assert!(l.span().contains(form.coords()));
                for v in tangent_space(&q).basis() {
                    assert!(dot(form.coords(), v, f).is_zero());
                }
            }
        }
    }

    #[test]
    fn chart_points_match_the_parametrized_image() {
        for f in fields() {
            let ctx = make_context(&standard_a_line(f, Side::Dual)).unwrap();
            let mut rng = random::rng(31);
            let mut variant_fail = (0, 0);
            for _ in 0..200 {
                let (w, expected) = chart_point(f, &mut rng);
                let pt = project(&ctx, &w).unwrap();
                assert_eq!(pt.coords, expected);
                let r = five_equations_residual(&pt);
                assert!(r.vanish());
                assert!(g25_member(&pt));
                variant_fail.0 += !r.sign_variant.is_zero() as usize;
                variant_fail.1 += !r.index_variant.is_zero() as usize;
            }
            assert!(variant_fail.0 > 0 && variant_fail.1 > 0);
        }
    }

    #[test]
    fn center_and_off_perp_inputs_are_rejected() {
        let f = Field::Prime(11);
        let ctx = make_context(&standard_a_line(f, Side::Dual)).unwrap();
        assert!(matches!(
            project(&ctx, &TwoTensor::unit(f, Side::V, 2, 3)),
            Err(Error::CenterHit(_))
        ));
        assert!(matches!(
            project(&ctx, &TwoTensor::unit(f, Side::V, 0, 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn projection_is_linear() {
        let f = Field::Rational;
        let ctx = make_context(&standard_a_line(f, Side::Dual)).unwrap();
        let mut rng = random::rng(8);
        let (a, _) = chart_point(f, &mut rng);
        let (b, _) = chart_point(f, &mut rng);
        let sum = ctx.coordinates(&a.add(&b));
        let parts: Vec<Scalar> = ctx
            .coordinates(&a)
            .into_iter()
            .zip(ctx.coordinates(&b))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(sum, parts);
    }

    #[test]
    fn decomposable_delta_is_a_member_and_random_is_not() {
        let f = Field::Rational;
        let mut rng = random::rng(12);
        let x = random::vector(f, 5, &mut rng);
        let y = random::vector(f, 5, &mut rng);
        let delta: Vec<Scalar> = DELTA_PAIRS
            .iter()
            .map(|&(a, b)| x[a].clone() * &y[b] - x[b].clone() * &y[a])
            .collect();
        assert!(plucker_relations(&delta).iter().all(Scalar::is_zero));
        let coords = vec![
            delta[9].clone(),
            -delta[6].clone(),
            delta[3].clone(),
            -delta[8].clone(),
            delta[0].clone(),
            delta[1].clone(),
            delta[4].clone(),
            delta[2].clone(),
            delta[5].clone(),
            delta[7].clone(),
        ];
        let pt = G25Point::new(coords).unwrap();
        assert_eq!(pt.delta, delta);
        assert!(g25_member(&pt));
        let fiber = bundle_fiber(&pt).unwrap();
        assert!(fiber.contains(&x) && fiber.contains(&y));
        let noise = G25Point::new(random::vector(f, 10, &mut rng)).unwrap();
        assert!(!g25_member(&noise));
    }

    #[test]
    fn conjugated_line_gives_conjugated_context() {
        let f = Field::Prime(11);
        let std = make_context(&standard_a_line(f, Side::Dual)).unwrap();
        let mut rng = random::rng(19);
        let h = Gl6::random(f, &mut rng);
        let ctx = make_context(&std.line().transform(&h)).unwrap();
        assert_eq!(*ctx.center(), h.tensor_subspace(Side::V, std.center()));
        let (a, b) = segre_context(&ctx).unwrap();
        assert_eq!(a.sum(&b).unwrap().dim(), 6);
        for _ in 0..20 {
            let (w, _) = chart_point(f, &mut rng);
            let pt = project(&ctx, &h.tensor(&w)).unwrap();
            assert!(five_equations_residual(&pt).vanish() && g25_member(&pt));
        }
    }
}
