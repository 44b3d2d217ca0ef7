use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use super::engine::{chunks, effective_workers, map_ordered};
use super::fast::{residues, FastPoly, Zp};
use super::proj::{canonical, projective_count, projective_points};
use crate::error::{Error, Result};
use crate::exterior::{GrassLine, Side};
use crate::fano_pair::ThreefoldPair;
use crate::linalg::{interpolate_poly, Field, HomPoly, LinSubspace, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    X,
    Y,
    W,
    #[serde(rename = "gammaW")]
    GammaW,
    Sextic,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub p: u32,
    pub target: Target,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inventory: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
    #[serde(skip)]
    pub workers: usize,
}

impl ScanReport {
    fn new(
        p: u32,
        target: Target,
        count: u64,
        inventory: Vec<Vec<u32>>,
        started: Instant,
        workers: usize,
    ) -> Self {
        ScanReport {
            p,
            target,
            count,
            inventory: Some(inventory),
            flags: Vec::new(),
            seconds: started.elapsed().as_secs_f64(),
            workers: effective_workers(workers),
        }
    }

    pub fn without_inventory(mut self) -> Self {
        self.inventory = None;
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Word-sized copy of a pair over `F_p`.
pub struct FastPair {
    zp: Zp,
    grams: Vec<[u32; 36]>,
    w_rows: Vec<[u32; 15]>,
    w_pivots: Vec<usize>,
    w_free: Vec<usize>,
    cubic: FastPoly,
}

impl FastPair {
    pub fn new(pair: &ThreefoldPair) -> Result<FastPair> {
        let p = pair
            .field()
            .modulus()
            .ok_or_else(|| Error::Precondition("scans need a prime field".into()))?;
        let grams = pair
            .sigma()
            .iter()
            .map(|s| {
                let g = s.gram();
                let mut out = [0; 36];
                for i in 0..6 {
                    for j in 0..6 {
                        out[6 * i + j] = g.get(i, j).residue().expect("residue");
                    }
                }
                out
            })
            .collect();
        let w_rows = pair
            .w10()
            .basis()
            .iter()
            .map(|b| residues(b).try_into().expect("15"))
            .collect();
        let w_pivots = pair.w10().pivots().to_vec();
        let w_free = (0..15).filter(|k| !w_pivots.contains(k)).collect();
        Ok(FastPair {
            zp: Zp { p },
            grams,
            w_rows,
            w_pivots,
            w_free,
            cubic: FastPoly::new(pair.cubic()),
        })
    }

    pub fn p(&self) -> u32 {
        self.zp.p
    }

    /// The 5x6 matrix with rows `ι_v σ_i`.
    fn palatini_y(&self, v: &[u32]) -> [u32; 30] {
        let zp = self.zp;
        let mut m = [0; 30];
        for (i, g) in self.grams.iter().enumerate() {
            for (a, &va) in v.iter().enumerate() {
                if va == 0 {
                    continue;
                }
                for b in 0..6 {
                    m[6 * i + b] = zp.add(m[6 * i + b], zp.mul(va, g[6 * a + b]));
                }
            }
        }
        m
    }

    pub fn palatini_y_rank(&self, v: &[u32]) -> usize {
        let mut m = self.palatini_y(v);
        self.zp.rank(&mut m, 5, 6)
    }

    /// Kernel of `y -> v^y mod W10`.
    pub fn palatini_x_kernel(&self, v: &[u32]) -> Vec<Vec<u32>> {
        let zp = self.zp;
        let mut m = [0u32; 30];
        for j in 0..6 {
            let mut e = [0u32; 6];
            e[j] = 1;
            let mut t = zp.wedge(v, &e);
            for (row, &pc) in self.w_rows.iter().zip(&self.w_pivots) {
                let f = t[pc];
                if f == 0 {
                    continue;
                }
                for k in 0..15 {
                    t[k] = zp.sub(t[k], zp.mul(f, row[k]));
                }
            }
            for (i, &k) in self.w_free.iter().enumerate() {
                m[6 * i + j] = t[k];
            }
        }
        zp.kernel(&mut m, 5, 6)
    }

    /// `σ_i(a, b)` for all `i`.
    pub fn pairings(&self, a: &[u32], b: &[u32]) -> [u32; 5] {
        let zp = self.zp;
        let mut out = [0; 5];
        for (i, g) in self.grams.iter().enumerate() {
            let mut acc = 0;
            for x in 0..6 {
                if a[x] == 0 {
                    continue;
                }
                for y in 0..6 {
                    acc = zp.add(acc, zp.mul(a[x], zp.mul(g[6 * x + y], b[y])));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn cubic(&self, u: &[u32]) -> u32 {
        self.cubic.eval(u)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    /// 0 means one worker per core.
    pub workers: usize,
}

#[derive(Clone, Debug)]
pub struct YScan {
    pub report: ScanReport,
    /// Points of `Y(F_p)` in canonical order.
    pub points: Vec<Vec<u32>>,
}

pub fn scan_y(pair: &ThreefoldPair, opts: &ScanOptions) -> Result<YScan> {
    let started = Instant::now();
    let fp = FastPair::new(pair)?;
    let p = fp.p();
    let parts = map_ordered(&chunks(p, 5), opts.workers, |c| {
        let mut hits = Vec::new();
        c.for_each(p, 5, |u| {
            if fp.cubic(u) == 0 {
                hits.push(u.to_vec());
            }
        });
        hits
    });
    let points: Vec<Vec<u32>> = parts.into_iter().flatten().collect();
    let mut report = ScanReport::new(
        p,
        Target::Y,
        points.len() as u64,
        points.clone(),
        started,
        opts.workers,
    );
    if points.len() as u64 == projective_count(p, 5) {
        report
            .flags
            .push("cubic vanishes on all of P^4: certificate breach".into());
    }
    Ok(YScan { report, points })
}

/// A vertex of `W` together with the lines of `X` through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub vertex: Vec<u32>,
    pub kernel: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct WxScan {
    pub w: ScanReport,
    pub x: ScanReport,
    pub gamma_w: ScanReport,
    /// Canonical points of `W(F_p)`.
    pub w_points: Vec<Vec<u32>>,
    /// Canonical tensors of `X(F_p)`, sorted.
    pub x_points: Vec<Vec<u32>>,
    pub vertices: Vec<VertexRecord>,
    /// One line of `X` per vertex with a 3-dimensional kernel.
    pub lines: Vec<GrassLine>,
}

#[derive(Default)]
struct WxPart {
    w: Vec<Vec<u32>>,
    x: Vec<Vec<u32>>,
    vertices: Vec<VertexRecord>,
    failure: Option<(Vec<u32>, usize, usize)>,
}

fn points_of_span(zp: Zp, basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    projective_points(zp.p, basis.len())
        .map(|c| {
            let mut v = vec![0; basis[0].len()];
            for (ci, b) in c.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = zp.add(*x, zp.mul(*ci, *y));
                }
            }
            v
        })
        .collect()
}

/// One pass over `P^5(F_p)`: `W` by the rank of the forms map, `X` and the
/// vertices by the kernel of the tensor map, and the two criteria compared
/// at every point.
pub fn scan_w_and_x(pair: &ThreefoldPair, opts: &ScanOptions) -> Result<WxScan> {
    let started = Instant::now();
    let fp = FastPair::new(pair)?;
    let zp = fp.zp;
    let p = zp.p;
    let parts = map_ordered(&chunks(p, 6), opts.workers, |c| {
        let mut part = WxPart::default();
        c.for_each(p, 6, |v| {
            if part.failure.is_some() {
                return;
            }
            let r = fp.palatini_y_rank(v);
            let k = fp.palatini_x_kernel(v);
            if (k.len() >= 2) != (r <= 4) {
                part.failure = Some((v.to_vec(), r, k.len()));
                return;
            }
            if r <= 4 {
                part.w.push(v.to_vec());
            }
            match k.len() {
                2 => part
                    .x
                    .push(canonical(&zp.wedge(&k[0], &k[1]), p).expect("nonzero")),
                d if d >= 3 => {
                    for u in points_of_span(zp, &k) {
                        let t = zp.wedge(v, &u);
                        if let Some(c) = canonical(&t, p) {
                            part.x.push(c);
                        }
                    }
                    part.vertices.push(VertexRecord {
                        vertex: v.to_vec(),
                        kernel: k,
                    });
                }
                _ => {}
            }
        });
        part
    });
    let mut w_points = Vec::new();
    let mut x_set = BTreeSet::new();
    let mut vertices = Vec::new();
    for part in parts {
        if let Some((v, r, k)) = part.failure {
            return Err(Error::CheckFailed(format!(
                "W cross-check fails at {v:?}: forms rank {r}, tensor kernel dimension {k}"
            )));
        }
        w_points.extend(part.w);
        x_set.extend(part.x);
        vertices.extend(part.vertices);
    }
    let x_points: Vec<Vec<u32>> = x_set.into_iter().collect();
    let field = pair.field();
    let to_scalars = |v: &[u32]| -> Vec<Scalar> { v.iter().map(|&x| field.residue(x)).collect() };
    let mut lines = Vec::new();
    let mut flags = Vec::new();
    for rec in &vertices {
        if rec.kernel.len() == 3 {
            let vertex = LinSubspace::span(field, 6, [to_scalars(&rec.vertex)]);
            let env = LinSubspace::span(field, 6, rec.kernel.iter().map(|k| to_scalars(k)));
            lines.push(GrassLine::new(Side::V, vertex, env)?);
        } else {
            flags.push(format!(
                "vertex {:?} has a {}-dimensional kernel",
                rec.vertex,
                rec.kernel.len()
            ));
        }
    }
    let w = ScanReport::new(
        p,
        Target::W,
        w_points.len() as u64,
        w_points.clone(),
        started,
        opts.workers,
    );
    let x = ScanReport::new(
        p,
        Target::X,
        x_points.len() as u64,
        x_points.clone(),
        started,
        opts.workers,
    );
    let mut gamma_w = ScanReport::new(
        p,
        Target::GammaW,
        vertices.len() as u64,
        vertices.iter().map(|r| r.vertex.clone()).collect(),
        started,
        opts.workers,
    );
    gamma_w.flags = flags;
    Ok(WxScan {
        w,
        x,
        gamma_w,
        w_points,
        x_points,
        vertices,
        lines,
    })
}

#[derive(Clone, Debug)]
pub struct QuarticReport {
    pub quartic: HomPoly,
    pub sample_size: usize,
    /// The quartic vanishes exactly on the scanned `W` points.
    pub zeros_match_w: bool,
    pub gradient_zero_on_vertices: bool,
    pub gradient_nonzero_somewhere: bool,
}

impl QuarticReport {
    pub fn passed(&self) -> bool {
        self.zeros_match_w && self.gradient_zero_on_vertices && self.gradient_nonzero_somewhere
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quartic": self.quartic.to_json(),
            "sample_size": self.sample_size,
            "zeros_match_w": self.zeros_match_w,
            "gradient_zero_on_vertices": self.gradient_zero_on_vertices,
            "gradient_nonzero_somewhere": self.gradient_nonzero_somewhere,
        })
    }
}

/// Interpolates the quartic through the scanned `W` points from an evenly
/// spaced sample (doubling it until the solution space is a single line),
/// then checks it against the whole of `P^5(F_p)`.
pub fn interpolate_w(
    pair: &ThreefoldPair,
    scan: &WxScan,
    initial_sample: usize,
    opts: &ScanOptions,
) -> Result<QuarticReport> {
    let field = pair.field();
    let p = field
        .modulus()
        .ok_or_else(|| Error::Precondition("needs a prime field".into()))?;
    let to_scalars = |v: &[u32]| -> Vec<Scalar> { v.iter().map(|&x| field.residue(x)).collect() };
    let all = &scan.w_points;
    if all.is_empty() {
        return Err(Error::Precondition("no W points to interpolate".into()));
    }
    let mut size = initial_sample.max(1).min(all.len());
    let (quartic, sample_size) = loop {
        let step = all.len() as f64 / size as f64;
        let sample: Vec<Vec<Scalar>> = (0..size)
            .map(|i| to_scalars(&all[(i as f64 * step) as usize]))
            .collect();
        let sols = interpolate_poly(field, &sample, 4);
        match sols.len() {
            1 => break (sols[0].monic(), size),
            0 => {
                return Err(Error::UnexpectedDimension {
                    what: "quartics through W".into(),
                    expected: 1,
                    found: 0,
                })
            }
            d if size == all.len() => {
                return Err(Error::UnexpectedDimension {
                    what: "quartics through W".into(),
                    expected: 1,
                    found: d,
                })
            }
            _ => size = (size * 2).min(all.len()),
        }
    };
    let fast = FastPoly::new(&quartic);
    let w_set: BTreeSet<&Vec<u32>> = all.iter().collect();
    let mismatches: u64 = map_ordered(&chunks(p, 6), opts.workers, |c| {
        let mut bad = 0u64;
        c.for_each(p, 6, |v| {
            if (fast.eval(v) == 0) != w_set.contains(&v.to_vec()) {
                bad += 1;
            }
        });
        bad
    })
    .into_iter()
    .sum();
    let zero_grad = |v: &[u32]| {
        quartic
            .gradient_at(&to_scalars(v))
            .iter()
            .all(Scalar::is_zero)
    };
    let gradient_zero_on_vertices = scan.vertices.iter().all(|r| zero_grad(&r.vertex));
    let vertex_set: BTreeSet<&Vec<u32>> = scan.vertices.iter().map(|r| &r.vertex).collect();
    let gradient_nonzero_somewhere = all
        .iter()
        .filter(|v| !vertex_set.contains(v))
        .any(|v| !zero_grad(v));
    Ok(QuarticReport {
        quartic,
        sample_size,
        zeros_match_w: mismatches == 0,
        gradient_zero_on_vertices,
        gradient_nonzero_somewhere,
    })
}

/// Points `([a], [b])` of `P(A) x P(B)` with `a ^ b` in `W10`; the inventory
/// holds the canonical tensors `a ^ b`.
pub fn scan_sextic(
    pair: &ThreefoldPair,
    a: &LinSubspace,
    b: &LinSubspace,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    let started = Instant::now();
    if a.dim() != 3 || b.dim() != 3 || a.sum(b)?.dim() != 6 {
        return Err(Error::Precondition(
            "A and B must be complementary 3-spaces".into(),
        ));
    }
    let fp = FastPair::new(pair)?;
    let zp = fp.zp;
    let p = zp.p;
    let pa = points_of_span(
        zp,
        &a.basis().iter().map(|v| residues(v)).collect::<Vec<_>>(),
    );
    let pb = points_of_span(
        zp,
        &b.basis().iter().map(|v| residues(v)).collect::<Vec<_>>(),
    );
    let parts = map_ordered(&pa, opts.workers, |x| {
        pb.iter()
            .filter(|y| fp.pairings(x, y).iter().all(|&c| c == 0))
            .map(|y| canonical(&zp.wedge(x, y), p).expect("A and B are disjoint"))
            .collect::<Vec<_>>()
    });
    let mut inv: Vec<Vec<u32>> = parts.into_iter().flatten().collect();
    inv.sort();
    Ok(ScanReport::new(
        p,
        Target::Sextic,
        inv.len() as u64,
        inv,
        started,
        opts.workers,
    ))
}

/// Lines of `Y(F_p)`, found as pairs of points whose pencil lies on the
/// cubic; each line is returned once, as the canonical echelon basis of its
/// 2-dimensional span in `F_p^5`, sorted.
pub fn y_lines(
    pair: &ThreefoldPair,
    y_points: &[Vec<u32>],
    opts: &ScanOptions,
) -> Result<Vec<[Vec<u32>; 2]>> {
    let fp = FastPair::new(pair)?;
    let zp = fp.zp;
    let idx: Vec<usize> = (0..y_points.len()).collect();
    let parts = map_ordered(&idx, opts.workers, |&i| {
        let mut found = Vec::new();
        let a = &y_points[i];
        for b in &y_points[i + 1..] {
            let plus: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| zp.add(x, y)).collect();
            if fp.cubic(&plus) != 0 {
                continue;
            }
            let minus: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| zp.sub(x, y)).collect();
            if fp.cubic(&minus) != 0 {
                continue;
            }
            let mut m: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
            zp.echelon(&mut m, 2, 5);
            found.push([m[..5].to_vec(), m[5..].to_vec()]);
        }
        found
    });
    let set: BTreeSet<[Vec<u32>; 2]> = parts.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// `u32` vector to exact scalars.
pub fn lift(field: Field, v: &[u32]) -> Vec<Scalar> {
    v.iter().map(|&x| field.residue(x)).collect()
}
