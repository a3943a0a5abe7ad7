//! Numerical realization of diagrams as piecewise curves tangent to the
//! symmetric contact structure `ker(dz + r² dθ)`.
//!
//! Horizontal arcs become near-horizontal arcs on the cylinder `r = r1`
//! following the characteristic foliation `dz/dθ = -r1²`; vertical arcs
//! become near-vertical arcs on `r = r2` with slope `-r2²`; corners become
//! radial connectors at constant `(θ, z)`, on which the contact form
//! vanishes identically. Corner coordinates are solved so consecutive pieces
//! meet exactly, making the per-segment contact residual vanish to rounding.

use crate::diagram::{HorizArc, RectDiagram, Sweep, VertDir};
use std::f64::consts::{PI, TAU};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentTag {
    NearHorizontal,
    NearVertical,
    Radial,
}

impl fmt::Display for SegmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SegmentTag::NearHorizontal => "near_horizontal",
            SegmentTag::NearVertical => "near_vertical",
            SegmentTag::Radial => "radial",
        })
    }
}

/// One sample in cylindrical coordinates; θ is unwrapped (radians along the
/// traversal, not reduced mod 2π). `piece` groups samples of one arc or
/// connector; residuals are only evaluated between samples of one piece.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
    pub tag: SegmentTag,
    pub piece: usize,
}

/// Sampled piecewise curve in cylindrical coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendrianCurve {
    pub samples: Vec<CurveSample>,
    pub closed: bool,
}

impl LegendrianCurve {
    pub fn piece_count(&self, tag: SegmentTag) -> usize {
        let mut count = 0;
        let mut last_piece = usize::MAX;
        for s in &self.samples {
            if s.tag == tag && s.piece != last_piece {
                count += 1;
                last_piece = s.piece;
            }
        }
        count
    }
}

/// Per-segment contact residual report. The residual of a tagged segment is
/// the discrete line integral of `dz + r² dθ` accumulated over its sample
/// chords, normalized by the segment's polyline length, taking the better of
/// two quadratures per chord: the midpoint-r² rule (exact on the foliation
/// parameterizations `embed` produces) and the exact straight-chord integral
/// `Δz + r₀r₁ sin Δθ`. Straight-chord integrals are preserved by any affine
/// map that preserves the contact form, which keeps the residual stable
/// under [`half_space_shift`]; the accumulation telescopes, so coordinate
/// rounding only enters at segment endpoints.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ContactReport {
    pub max_residual: f64,
    pub max_near_horizontal: f64,
    pub max_near_vertical: f64,
    pub max_radial: f64,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("need 0 < r1 < r2, got r1 = {r1}, r2 = {r2}")]
    BadRadii { r1: f64, r2: f64 },
    #[error("need at least 2 samples per arc, got {0}")]
    TooFewSamples(usize),
    #[error("embedding handles one component at a time; diagram has {0}")]
    MultiComponent(usize),
    #[error("r2 = {r2} too small for grid size {n}: near-vertical angular drift would cross a column gap")]
    RadiusTooSmallForGrid { r2: f64, n: usize },
    #[error("diagram wraps past θ = 0 (row {row}); apply rotate_theta first")]
    WrappingDiagram { row: usize },
    #[error("front polyline is not rectilinear alternating: {0}")]
    BadFront(String),
    #[error("curve has fewer than 2 samples")]
    DegenerateCurve,
}

fn cart(s: &CurveSample) -> [f64; 3] {
    [s.r * s.theta.cos(), s.r * s.theta.sin(), s.z]
}

/// Discrete contact residual; see [`ContactReport`].
pub fn contact_residual(c: &LegendrianCurve) -> Result<ContactReport, GeometryError> {
    if c.samples.len() < 2 {
        return Err(GeometryError::DegenerateCurve);
    }
    let mut report = ContactReport::default();
    let mut state: Option<(usize, SegmentTag, f64, f64, f64)> = None; // piece, tag, foliation Σ, chord Σ, length Σ
    let flush = |report: &mut ContactReport, st: Option<(usize, SegmentTag, f64, f64, f64)>| {
        let Some((_, tag, foliation, chord, len)) = st else {
            return;
        };
        if len == 0.0 {
            return;
        }
        let residual = foliation.abs().min(chord.abs()) / len;
        report.max_residual = report.max_residual.max(residual);
        let slot = match tag {
            SegmentTag::NearHorizontal => &mut report.max_near_horizontal,
            SegmentTag::NearVertical => &mut report.max_near_vertical,
            SegmentTag::Radial => &mut report.max_radial,
        };
        *slot = slot.max(residual);
    };
    for pair in c.samples.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.piece != b.piece {
            flush(&mut report, state.take());
            continue;
        }
        let pa = cart(a);
        let pb = cart(b);
        let len =
            ((pb[0] - pa[0]).powi(2) + (pb[1] - pa[1]).powi(2) + (pb[2] - pa[2]).powi(2)).sqrt();
        let dz = b.z - a.z;
        let dtheta = b.theta - a.theta;
        let r_mid = 0.5 * (a.r + b.r);
        let foliation = dz + r_mid * r_mid * dtheta;
        let chord = dz + a.r * b.r * dtheta.sin();
        match &mut state {
            Some((piece, _, f, ch, l)) if *piece == a.piece => {
                *f += foliation;
                *ch += chord;
                *l += len;
            }
            _ => {
                flush(&mut report, state.take());
                state = Some((a.piece, a.tag, foliation, chord, len));
            }
        }
    }
    flush(&mut report, state.take());
    Ok(report)
}

struct CornerCoord {
    theta: f64,
    z: f64,
}

/// Realizes a one-component diagram as a closed piecewise curve.
///
/// z-rank `i` sits near `z = i` and θ-rank `j` near `θ = 2π(j - ½)/n`, so a
/// non-wrapping diagram stays clear of θ = 0. Corner positions are corrected
/// by a fixed-point pass so every piece lies exactly on its model (foliation
/// arcs on the two cylinders, radial connectors at the corners).
pub fn embed(
    d: &RectDiagram,
    r1: f64,
    r2: f64,
    samples_per_arc: usize,
) -> Result<LegendrianCurve, GeometryError> {
    if !(r1 > 0.0 && r1 < r2) || !r2.is_finite() {
        return Err(GeometryError::BadRadii { r1, r2 });
    }
    if samples_per_arc < 2 {
        return Err(GeometryError::TooFewSamples(samples_per_arc));
    }
    let comps = d.components();
    if comps != 1 {
        return Err(GeometryError::MultiComponent(comps));
    }
    let n = d.n();
    // largest near-vertical angular drift: full z-range over r2²
    if (n as f64) / (r2 * r2) >= PI / (n as f64) {
        return Err(GeometryError::RadiusTooSmallForGrid { r2, n });
    }

    let beta = |col: usize| TAU * (col as f64 - 0.5) / (n as f64);
    let zeta = |row: usize| row as f64;
    let verticals = d.verticals();

    // Signed angular extent of each row with the tail-corner drift folded
    // in. The drift of column j's to-corner is -Δz_j/r2², and Δz_j depends
    // on the head-corner z of its from-row, which depends on that row's
    // extent; the coupling contracts by (r1/r2)² so a short fixed-point
    // iteration settles it.
    let r1sq = r1 * r1;
    let r2sq = r2 * r2;
    let base_extent: Vec<f64> = d
        .rows()
        .iter()
        .map(|a| {
            let raw = beta(a.head_col) - beta(a.tail_col);
            match a.sweep {
                Sweep::Plus => raw.rem_euclid(TAU),
                Sweep::Minus => raw.rem_euclid(TAU) - TAU,
            }
        })
        .collect();
    let mut extent = base_extent.clone();
    for _ in 0..64 {
        // eta[j]: θ drift of column j's to-corner relative to beta(j)
        let mut eta = vec![0.0; n + 1];
        for v in &verticals {
            let z_from = zeta(v.from_row) - r1sq * extent[v.from_row - 1];
            let dz = zeta(v.to_row) - z_from;
            eta[v.col] = -dz / r2sq;
        }
        for (i, a) in d.rows().iter().enumerate() {
            extent[i] = base_extent[i] - eta[a.tail_col];
        }
    }

    let mut eta = vec![0.0; n + 1];
    for v in &verticals {
        let z_from = zeta(v.from_row) - r1sq * extent[v.from_row - 1];
        eta[v.col] = -(zeta(v.to_row) - z_from) / r2sq;
    }

    // Exact corner coordinates in a fixed fundamental domain of θ.
    let tail_corner = |a: &HorizArc| CornerCoord {
        theta: beta(a.tail_col) + eta[a.tail_col],
        z: zeta(a.z_rank),
    };
    let head_corner = |a: &HorizArc| CornerCoord {
        theta: beta(a.head_col),
        z: zeta(a.z_rank) - r1sq * extent[a.z_rank - 1],
    };

    let mut samples = Vec::new();
    let mut piece = 0;
    let mut push_piece = |samples: &mut Vec<CurveSample>,
                          tag: SegmentTag,
                          point: &dyn Fn(f64) -> (f64, f64, f64)| {
        for k in 0..samples_per_arc {
            let t = k as f64 / (samples_per_arc - 1) as f64;
            let (r, theta, z) = point(t);
            samples.push(CurveSample {
                r,
                theta,
                z,
                tag,
                piece,
            });
        }
        piece += 1;
    };

    // Traverse the single component starting from row 1's tail corner,
    // carrying the unwrapped θ of the running corner across pieces.
    let mut z_rank = 1usize;
    let mut cur_theta = tail_corner(d.row(1).unwrap()).theta;
    loop {
        let arc = *d.row(z_rank).unwrap();
        let ext = extent[z_rank - 1];
        let z0 = tail_corner(&arc).z;

        // near-horizontal arc on r = r1, exact foliation parameterization
        let theta0 = cur_theta;
        push_piece(&mut samples, SegmentTag::NearHorizontal, &|t| {
            let dth = ext * t;
            (r1, theta0 + dth, z0 - r1sq * dth)
        });

        // radial connector out to r2 at the head corner
        let theta_head = theta0 + ext;
        let zc = head_corner(&arc).z;
        push_piece(&mut samples, SegmentTag::Radial, &|t| {
            (r1 + (r2 - r1) * t, theta_head, zc)
        });

        // near-vertical arc on r = r2 to the next tail corner
        let v = verticals[arc.head_col - 1];
        debug_assert_eq!(v.from_row, z_rank);
        let next_rank = v.to_row;
        let zn = tail_corner(d.row(next_rank).unwrap()).z;
        let dz_total = zn - zc;
        push_piece(&mut samples, SegmentTag::NearVertical, &|t| {
            let dz = dz_total * t;
            (r2, theta_head - dz / r2sq, zc + dz)
        });

        // radial connector back to r1 at the next tail corner
        let theta_next = theta_head - dz_total / r2sq;
        push_piece(&mut samples, SegmentTag::Radial, &|t| {
            (r2 + (r1 - r2) * t, theta_next, zn)
        });

        cur_theta = theta_next;
        z_rank = next_rank;
        if z_rank == 1 {
            break;
        }
    }

    Ok(LegendrianCurve {
        samples,
        closed: true,
    })
}

/// Pointwise image of the curve under `(x, y, z) ↦ (x+K, y+K, z+K(x−y))`,
/// converted back to cylindrical coordinates with θ unwrapped along each
/// piece. The map preserves `dz + x dy − y dx`, so contact residuals carry
/// over; for K beyond the curve's extent the image lies in the half-space
/// `y > 0`.
pub fn half_space_shift(c: &LegendrianCurve, k: f64) -> LegendrianCurve {
    let mut samples = Vec::with_capacity(c.samples.len());
    let mut prev: Option<(usize, f64)> = None; // (piece, unwrapped θ')
    for s in &c.samples {
        let [x, y, z] = cart(s);
        let x2 = x + k;
        let y2 = y + k;
        let z2 = z + k * (x - y);
        let r = (x2 * x2 + y2 * y2).sqrt();
        let raw = y2.atan2(x2);
        let theta = match prev {
            Some((piece, prev_theta)) if piece == s.piece => {
                let mut dt = raw - prev_theta.rem_euclid(TAU);
                while dt > PI {
                    dt -= TAU;
                }
                while dt < -PI {
                    dt += TAU;
                }
                prev_theta + dt
            }
            _ => raw,
        };
        prev = Some((s.piece, theta));
        samples.push(CurveSample {
            r,
            theta,
            z: z2,
            tag: s.tag,
            piece: s.piece,
        });
    }
    LegendrianCurve {
        samples,
        closed: c.closed,
    }
}

/// CSV export with header `r,theta,z,tag`.
pub fn curve_to_csv(c: &LegendrianCurve) -> String {
    let mut out = String::from("r,theta,z,tag\n");
    for s in &c.samples {
        out.push_str(&format!("{},{},{},{}\n", s.r, s.theta, s.z, s.tag));
    }
    out
}

/// Vertex of a front polyline; cusp vertices carry the orientation of their
/// vertical arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrontVertex {
    pub x: f64,
    pub z: f64,
    pub cusp: Option<VertDir>,
}

/// Closed rectilinear front, rotated 45° so horizontal arcs become slope +1
/// segments and vertical arcs slope -1 segments; cusps sit exactly where the
/// x-motion reverses. One loop per link component.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontPolyline {
    pub loops: Vec<Vec<FrontVertex>>,
}

impl FrontPolyline {
    pub fn cusp_count(&self) -> usize {
        self.loops
            .iter()
            .flat_map(|l| l.iter())
            .filter(|v| v.cusp.is_some())
            .count()
    }
}

/// Front projection of a non-wrapping diagram: corner `(row, col)` maps to
/// `(col - row, col + row)`; exactly the census cusps become front cusps.
pub fn front_from_diagram(d: &RectDiagram) -> Result<FrontPolyline, GeometryError> {
    for a in d.rows() {
        if d.wraps_seam(a) {
            return Err(GeometryError::WrappingDiagram { row: a.z_rank });
        }
    }
    let n = d.n();
    let verticals = d.verticals();
    let mut tail_row_of_col = vec![0usize; n + 1];
    for a in d.rows() {
        tail_row_of_col[a.tail_col] = a.z_rank;
    }

    let vertex = |row: usize, col: usize, cusp: Option<VertDir>| {
        let (theta, z) = (col as f64, row as f64);
        FrontVertex {
            x: theta - z,
            z: theta + z,
            cusp,
        }
    };

    let mut seen = vec![false; n + 1];
    let mut loops = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut vertices = Vec::new();
        let mut z = start;
        while !seen[z] {
            seen[z] = true;
            let arc = d.row(z).unwrap();
            let vin = verticals[arc.tail_col - 1];
            let tail_cusp = (vin.dir.theta_motion() != arc.sweep.sign()).then_some(vin.dir);
            vertices.push(vertex(z, arc.tail_col, tail_cusp));
            let vout = verticals[arc.head_col - 1];
            let head_cusp = (arc.sweep.sign() != vout.dir.theta_motion()).then_some(vout.dir);
            vertices.push(vertex(z, arc.head_col, head_cusp));
            z = tail_row_of_col[arc.head_col];
        }
        loops.push(vertices);
    }
    Ok(FrontPolyline { loops })
}

/// Rebuilds a diagram from a rectilinear front: vertices map back through
/// `θ = (x + z)/2, z = (z - x)/2`, distinct levels are rank-compressed, and
/// traversal order fixes orientations. Inverse of [`front_from_diagram`] up
/// to rank relabeling.
pub fn diagram_from_front(front: &FrontPolyline) -> Result<RectDiagram, GeometryError> {
    let mut thetas = Vec::new();
    let mut zs = Vec::new();
    let mut loops = Vec::new();
    for vertices in &front.loops {
        if vertices.len() < 4 || vertices.len() % 2 != 0 {
            return Err(GeometryError::BadFront(format!(
                "loop with {} vertices; need an even count of at least 4",
                vertices.len()
            )));
        }
        let pts: Vec<(f64, f64)> = vertices
            .iter()
            .map(|v| ((v.x + v.z) / 2.0, (v.z - v.x) / 2.0))
            .collect();
        for &(t, z) in &pts {
            thetas.push(t);
            zs.push(z);
        }
        loops.push(pts);
    }
    let rank_of = |values: &mut Vec<f64>| {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        values.clone()
    };
    let theta_levels = rank_of(&mut thetas);
    let z_levels = rank_of(&mut zs);
    let rank = |levels: &[f64], v: f64| -> Result<usize, GeometryError> {
        levels
            .iter()
            .position(|&l| (l - v).abs() < 1e-9)
            .map(|i| i + 1)
            .ok_or_else(|| GeometryError::BadFront("inconsistent vertex levels".into()))
    };

    let mut rows = Vec::new();
    for pts in &loops {
        let m = pts.len();
        for i in 0..m {
            let (t0, z0) = pts[i];
            let (t1, z1) = pts[(i + 1) % m];
            let horizontal = (z1 - z0).abs() < 1e-9;
            let vertical = (t1 - t0).abs() < 1e-9;
            if horizontal == vertical {
                return Err(GeometryError::BadFront(
                    "segments must alternate horizontal/vertical".into(),
                ));
            }
            if horizontal {
                rows.push(HorizArc {
                    z_rank: rank(&z_levels, z0)?,
                    tail_col: rank(&theta_levels, t0)?,
                    head_col: rank(&theta_levels, t1)?,
                    sweep: if t1 > t0 { Sweep::Plus } else { Sweep::Minus },
                });
            }
        }
    }
    RectDiagram::from_rows(rows)
        .map_err(|report| GeometryError::BadFront(format!("reconstruction invalid: {report}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_unknot_braided, gen_unknot_rect};
    use crate::invariants::corner_census;

    fn sample(r: f64, theta: f64, z: f64, tag: SegmentTag) -> CurveSample {
        CurveSample {
            r,
            theta,
            z,
            tag,
            piece: 0,
        }
    }

    #[test]
    fn embed_e2_piece_counts() {
        let c = embed(&gen_unknot_braided(), 0.1, 10.0, 64).unwrap();
        assert!(c.closed);
        assert_eq!(c.piece_count(SegmentTag::NearHorizontal), 2);
        assert_eq!(c.piece_count(SegmentTag::NearVertical), 2);
        assert_eq!(c.piece_count(SegmentTag::Radial), 4);
    }

    #[test]
    fn embed_residual_is_machine_zero() {
        for d in [gen_unknot_rect(), gen_unknot_braided()] {
            let c = embed(&d, 0.1, 10.0, 256).unwrap();
            let report = contact_residual(&c).unwrap();
            assert!(
                report.max_residual < 1e-12,
                "residual {}",
                report.max_residual
            );
        }
    }

    #[test]
    fn embed_rejects_bad_radii_and_multicomponent() {
        let d = gen_unknot_braided();
        assert!(matches!(
            embed(&d, 10.0, 0.1, 8),
            Err(GeometryError::BadRadii { .. })
        ));
        let two = RectDiagram::from_rows(vec![
            HorizArc::new(1, 1, 2, Sweep::Plus),
            HorizArc::new(2, 2, 1, Sweep::Minus),
            HorizArc::new(3, 3, 4, Sweep::Plus),
            HorizArc::new(4, 4, 3, Sweep::Minus),
        ])
        .unwrap();
        assert!(matches!(
            embed(&two, 0.1, 10.0, 8),
            Err(GeometryError::MultiComponent(2))
        ));
    }

    #[test]
    fn shift_preserves_residual_and_moves_to_half_space() {
        let c = embed(&gen_unknot_braided(), 0.1, 10.0, 2048).unwrap();
        let before = contact_residual(&c).unwrap().max_residual;
        let shifted = half_space_shift(&c, 100.0);
        let after = contact_residual(&shifted).unwrap().max_residual;
        assert!(
            (after - before).abs() < 1e-9,
            "drift {}",
            (after - before).abs()
        );
        for s in &shifted.samples {
            assert!(s.r * s.theta.sin() > 0.0, "sample not in y > 0");
        }
    }

    #[test]
    fn shift_with_k_zero_is_identity() {
        let c = embed(&gen_unknot_rect(), 0.1, 10.0, 16).unwrap();
        let shifted = half_space_shift(&c, 0.0);
        for (a, b) in c.samples.iter().zip(&shifted.samples) {
            assert!((a.r - b.r).abs() < 1e-12);
            assert!((a.z - b.z).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_formula_on_origin() {
        let c = LegendrianCurve {
            samples: vec![
                sample(0.0, 0.0, 0.0, SegmentTag::Radial),
                sample(1.0, 0.0, 0.0, SegmentTag::Radial),
            ],
            closed: false,
        };
        let shifted = half_space_shift(&c, 5.0);
        let s = &shifted.samples[0];
        let (x, y, z) = (s.r * s.theta.cos(), s.r * s.theta.sin(), s.z);
        assert!((x - 5.0).abs() < 1e-12 && (y - 5.0).abs() < 1e-12 && z.abs() < 1e-12);
    }

    #[test]
    fn front_of_e1_and_roundtrip() {
        let e1 = gen_unknot_rect();
        let front = front_from_diagram(&e1).unwrap();
        assert_eq!(front.loops.len(), 1);
        assert_eq!(front.cusp_count(), 2);
        let ups = front.loops[0]
            .iter()
            .filter(|v| v.cusp == Some(VertDir::Up))
            .count();
        assert_eq!(ups, 1);
        let back = diagram_from_front(&front).unwrap();
        assert_eq!(back, e1);
    }

    #[test]
    fn front_rejects_wrapping_diagram() {
        assert!(matches!(
            front_from_diagram(&gen_unknot_braided()),
            Err(GeometryError::WrappingDiagram { row: 2 })
        ));
    }

    #[test]
    fn front_cusps_match_census() {
        let mut corpus = vec![gen_unknot_rect()];
        for q in crate::moves::Quadrant::ALL {
            corpus.push(crate::moves::stabilize(&gen_unknot_rect(), (1, 1), q).unwrap());
        }
        for d in corpus {
            if d.rows().iter().any(|a| d.wraps_seam(a)) {
                continue;
            }
            let (u, dn) = corner_census(&d);
            let front = front_from_diagram(&d).unwrap();
            assert_eq!(front.cusp_count() as u64, u + dn);
        }
    }

    #[test]
    fn residual_detects_violation() {
        // constant z with Δθ = 0.5 at r = 1: the better interpolant is the
        // straight chord, whose integral is r0*r1*sin(Δθ)
        let c = LegendrianCurve {
            samples: vec![
                sample(1.0, 0.0, 0.0, SegmentTag::NearHorizontal),
                sample(1.0, 0.5, 0.0, SegmentTag::NearHorizontal),
            ],
            closed: false,
        };
        let report = contact_residual(&c).unwrap();
        let chord_len = 2.0 * (0.25f64).sin();
        let expected = (0.5f64).sin() / chord_len;
        assert!((report.max_residual - expected).abs() < 1e-12);
        assert!(report.max_residual > 0.1);
    }
}
