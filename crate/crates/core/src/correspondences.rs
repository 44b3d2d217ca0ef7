//! Lines of `X` against B-lines of `Y`, conics of `X` against lines of `Y`,
//! and the splitting of the Palatini quartic along a line of `Y`.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exterior::{
    classify_plane_section, decompose, exterior_square, wedge_spaces, ConicData, ConicTag,
    GrassLine, PlaneSectionClass, Side, TwoTensor,
};
use crate::fano_pair::ThreefoldPair;
use crate::linalg::matrix::add_vecs;
use crate::linalg::{interpolate_poly, HomPoly, LinSubspace, QuadForm, Scalar};
use crate::pencils::{
    classify_pencil, kernel_quadric, pfaffian_cubic, tangent_plane_m, Pencil, PencilTag,
};
use crate::scan::{lift, projective_points, FastPair};

/// A conic of `X`: its envelope `L` (a 4-space of `V`) and the plane section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XConic {
    pub envelope: LinSubspace,
    pub conic: ConicData,
}

impl XConic {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.conic.to_json();
        v["envelope"] = self.envelope.to_json();
        v
    }
}

fn expect_dim(what: &str, s: &LinSubspace, expected: usize) -> Result<()> {
    if s.dim() != expected {
        return Err(Error::UnexpectedDimension {
            what: what.into(),
            expected,
            found: s.dim(),
        });
    }
    Ok(())
}

fn cubic_vanishes_on(l: &Pencil) -> bool {
    pfaffian_cubic(l).iter().all(Scalar::is_zero)
}

pub fn check_x_line(pair: &ThreefoldPair, line: &GrassLine) -> Result<()> {
    if !line.pencil().is_subspace_of(pair.w10()) {
        return Err(Error::Precondition(
            "line is not inside the span of X".into(),
        ));
    }
    Ok(())
}

/// `Λ²H ∩ U5` for the hyperplane `H` annihilating the vertex.
pub fn x_line_to_b_line(pair: &ThreefoldPair, line: &GrassLine) -> Result<Pencil> {
    let h = line.vertex().annihilator();
    let meet = exterior_square(Side::Dual, &h).intersect(pair.u5())?;
    expect_dim("Λ²H ∩ U5", &meet, 2)?;
    let pencil = Pencil::from_span(Side::Dual, &meet)?;
    if !cubic_vanishes_on(&pencil) {
        return Err(Error::CheckFailed(
            "cubic does not vanish on the image pencil".into(),
        ));
    }
    let class = classify_pencil(&pencil)?;
    if class.tag != PencilTag::B {
        return Err(Error::Classification {
            expected: "B".into(),
            found: class.tag.as_str().into(),
        });
    }
    Ok(pencil)
}

fn check_inside_u5(pair: &ThreefoldPair, l: &Pencil) -> Result<()> {
    if l.side() != Side::Dual || !l.span().is_subspace_of(pair.u5()) {
        return Err(Error::Precondition(
            "pencil is not a line of the P^4 spanned by Y".into(),
        ));
    }
    Ok(())
}

/// `v ^ V ∩ W10` for the common kernel point `v` of a B-line.
pub fn b_line_to_x_line(pair: &ThreefoldPair, l: &Pencil) -> Result<GrassLine> {
    check_inside_u5(pair, l)?;
    let class = classify_pencil(l)?;
    let witness = match (class.tag, class.witness) {
        (PencilTag::B, Some(w)) => w,
        (tag, _) => {
            return Err(Error::Classification {
                expected: "B".into(),
                found: tag.as_str().into(),
            })
        }
    };
    let f = pair.field();
    let pv = wedge_spaces(Side::V, &witness, &LinSubspace::full(f, 6));
    let meet = pv.intersect(pair.w10())?;
    expect_dim("v^V ∩ W10", &meet, 2)?;
    let line = GrassLine::from_pencil(Side::V, &meet)?;
    if line.vertex() != &witness {
        return Err(Error::CheckFailed(
            "vertex of the recovered line differs from the kernel witness".into(),
        ));
    }
    Ok(line)
}

/// Recomputes the envelope from the points of the conic when three
/// independent ones are found over a prime field.
fn envelope_from_points(conic: &ConicData) -> Option<LinSubspace> {
    let f = conic.plane.field();
    let p = f.modulus()?;
    let mut pts = Vec::new();
    let mut planes = Vec::new();
    for c in projective_points(p, 3) {
        let c = lift(f, &c);
        if !conic.form.eval(&c).is_zero() {
            continue;
        }
        let t = TwoTensor::new(Side::V, conic.plane.combine(&c)).expect("15 coords");
        if let Ok(x) = decompose(&t) {
            pts.push(c);
            planes.push(x.plane().clone());
        }
    }
    if LinSubspace::span(f, 3, pts).dim() < 3 {
        return None;
    }
    planes
        .into_iter()
        .reduce(|a, b| a.sum(&b).expect("same ambient"))
}

/// `ann(Λ²L) ∩ U5`.
pub fn x_conic_to_y_line(pair: &ThreefoldPair, q: &XConic) -> Result<Pencil> {
    expect_dim("conic envelope", &q.envelope, 4)?;
    if !q.conic.plane.is_subspace_of(pair.w10()) {
        return Err(Error::Precondition(
            "conic plane is not inside the span of X".into(),
        ));
    }
    let lam = exterior_square(Side::V, &q.envelope);
    if !q.conic.plane.is_subspace_of(&lam) {
        return Err(Error::Precondition("conic plane is not inside Λ²L".into()));
    }
    if let Some(env) = envelope_from_points(&q.conic) {
        if env != q.envelope {
            return Err(Error::CheckFailed(
                "conic points span a different envelope".into(),
            ));
        }
    }
    let meet = lam.annihilator().intersect(pair.u5())?;
    expect_dim("ann(Λ²L) ∩ U5", &meet, 2)?;
    let pencil = Pencil::from_span(Side::Dual, &meet)?;
    if !cubic_vanishes_on(&pencil) {
        return Err(Error::CheckFailed(
            "cubic does not vanish on the image pencil".into(),
        ));
    }
    let class = classify_pencil(&pencil)?;
    if !matches!(class.tag, PencilTag::A | PencilTag::B) {
        return Err(Error::Classification {
            expected: "A or B".into(),
            found: class.tag.as_str().into(),
        });
    }
    Ok(pencil)
}

/// `Λ²(M^⊥) ∩ W10` for the tangent plane `M` of the pencil.
pub fn y_line_to_x_conic(pair: &ThreefoldPair, l: &Pencil) -> Result<XConic> {
    check_inside_u5(pair, l)?;
    let class = classify_pencil(l)?;
    if !matches!(class.tag, PencilTag::A | PencilTag::B) {
        return Err(Error::Classification {
            expected: "A or B".into(),
            found: class.tag.as_str().into(),
        });
    }
    let m = tangent_plane_m(l)?.m;
    let envelope = m.annihilator();
    expect_dim("envelope", &envelope, 4)?;
    let plane = exterior_square(Side::V, &envelope).intersect(pair.w10())?;
    expect_dim("Λ²L ∩ W10", &plane, 3)?;
    match classify_plane_section(&plane)? {
        PlaneSectionClass::Conic(conic) => Ok(XConic { envelope, conic }),
        other => Err(Error::Classification {
            expected: "conic".into(),
            found: other.tag().into(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub pencil_class: PencilTag,
    pub conic_tag: ConicTag,
    pub conic_points: usize,
    pub kernel_quadric: HomPoly,
    pub sweep_quadric: HomPoly,
    pub lambda: Scalar,
    pub sweep_rank: usize,
    pub quadrics_distinct: bool,
    /// Points of `P(span)` on `W` versus zeros of the product.
    pub w_points_in_span: usize,
    pub product_matches_w: bool,
}

impl SplittingReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "class": self.pencil_class.as_str(),
            "conic_tag": self.conic_tag.as_str(),
            "conic_points": self.conic_points,
            "kernel_quadric": self.kernel_quadric.to_json(),
            "sweep_quadric": self.sweep_quadric.to_json(),
            "lambda": self.lambda.to_json(),
            "sweep_rank": self.sweep_rank,
            "quadrics_distinct": self.quadrics_distinct,
            "w_points_in_span": self.w_points_in_span,
            "product_matches_w": self.product_matches_w,
        })
    }
}

/// Checks that the quartic restricted to the kernel 3-space of `l` is a
/// multiple of the kernel quadric times the quadric swept by the lines of
/// the corresponding conic.
pub fn quartic_splitting_check(
    pair: &ThreefoldPair,
    l: &Pencil,
    quartic: &HomPoly,
) -> Result<SplittingReport> {
    let f = pair.field();
    let p = f
        .modulus()
        .ok_or_else(|| Error::Precondition("splitting check needs a prime field".into()))?;
    let class = classify_pencil(l)?;
    let kq = kernel_quadric(l)?;
    let span = &kq.span;
    let xc = y_line_to_x_conic(pair, l)?;
    let conic = &xc.conic;
    let mut sweep = Vec::new();
    let mut conic_points = 0;
    for c in projective_points(p, 3) {
        let c = lift(f, &c);
        if !conic.form.eval(&c).is_zero() {
            continue;
        }
        conic_points += 1;
        let x = decompose(&TwoTensor::new(Side::V, conic.plane.combine(&c))?)?;
        let b = x.plane().basis();
        for v in [b[0].clone(), b[1].clone(), add_vecs(&b[0], &b[1])] {
            let coords = span.coordinates(&v).ok_or_else(|| {
                Error::CheckFailed("a line of the conic leaves the kernel 3-space".into())
            })?;
            sweep.push(coords);
        }
    }
    let sols = interpolate_poly(f, &sweep, 2);
    if sols.len() != 1 {
        return Err(Error::UnexpectedDimension {
            what: "quadrics through the conic sweep".into(),
            expected: 1,
            found: sols.len(),
        });
    }
    let sweep_quadric = sols[0].monic();
    let kernel_poly = kq.form.to_poly().monic();
    let columns: Vec<Vec<Scalar>> = span.basis().to_vec();
    let restricted = quartic.compose_linear(&columns);
    let product = kernel_poly.mul(&sweep_quadric);
    let lambda = restricted
        .ratio_to(&product)
        .filter(|x| !x.is_zero())
        .ok_or_else(|| {
            Error::CheckFailed("restricted quartic is not a multiple of the two quadrics".into())
        })?;
    let quadrics_distinct = sweep_quadric.ratio_to(&kernel_poly).is_none();
    let sweep_rank = QuadForm::from_poly(&sweep_quadric).rank();
    let fast = FastPair::new(pair)?;
    let mut w_points_in_span = 0;
    let mut product_matches_w = true;
    for c in projective_points(p, 4) {
        let cs = lift(f, &c);
        let v = crate::scan::fast::residues(&span.combine(&cs));
        let on_w = fast.palatini_y_rank(&v) <= 4;
        w_points_in_span += on_w as usize;
        product_matches_w &= on_w == product.eval(&cs).is_zero();
    }
    Ok(SplittingReport {
        pencil_class: class.tag,
        conic_tag: conic.tag,
        conic_points,
        kernel_quadric: kernel_poly,
        sweep_quadric,
        lambda,
        sweep_rank,
        quadrics_distinct,
        w_points_in_span,
        product_matches_w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano_pair::{build_threefold, BuildOptions};
    use crate::linalg::Field;
    use crate::scan::{scan_w_and_x, scan_y, y_lines, ScanOptions};

    #[test]
    fn round_trips_at_p7() {
        let f = Field::Prime(7);
        let pair = build_threefold(1, f, &BuildOptions::default())
            .unwrap()
            .pair;
        let opts = ScanOptions::default();
        let wx = scan_w_and_x(&pair, &opts).unwrap();
        for line in &wx.lines {
            let b = x_line_to_b_line(&pair, line).unwrap();
            assert_eq!(&b_line_to_x_line(&pair, &b).unwrap(), line);
        }
        let y = scan_y(&pair, &opts).unwrap();
        let lines = y_lines(&pair, &y.points, &opts).unwrap();
        let mut done = 0;
        for [a, b] in lines.iter().take(8) {
            let u0 = pair.form_at(&lift(f, a));
            let u1 = pair.form_at(&lift(f, b));
            let l = Pencil::new(u0, u1).unwrap();
            let xc = y_line_to_x_conic(&pair, &l).unwrap();
            assert!(xc.conic.plane.is_subspace_of(pair.w10()));
            assert_eq!(x_conic_to_y_line(&pair, &xc).unwrap().span(), l.span());
            done += 1;
        }
        assert!(done > 0);
    }

    #[test]
    fn fabricated_inputs_are_rejected() {
        let f = Field::Prime(7);
        let pair = build_threefold(1, f, &BuildOptions::default())
            .unwrap()
            .pair;
        let line = GrassLine::new(
            Side::V,
            LinSubspace::coordinate(f, 6, &[0]),
            LinSubspace::coordinate(f, 6, &[0, 1, 2]),
        )
        .unwrap();
        assert!(matches!(
            x_line_to_b_line(&pair, &line),
            Err(Error::UnexpectedDimension { .. })
        ));
        assert!(check_x_line(&pair, &line).is_err());
        let std_b = crate::pencils::standard_b_line(f, Side::Dual);
        assert!(matches!(
            b_line_to_x_line(&pair, &std_b),
            Err(Error::Precondition(_))
        ));
    }
}
