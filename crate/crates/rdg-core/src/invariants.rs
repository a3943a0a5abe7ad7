//! Crossings, writhe, winding number, corner census, and the classical
//! invariants derived from them:
//!
//! ```text
//! tb  = ω - (d + u)/2          rot = n + (d - u)/2
//! sl₊ = tb - rot               sl₋ = tb + rot
//! ```
//!
//! where ω is the algebraic crossing number on the cylinder, n the algebraic
//! winding number around the z-axis, and u/d count up/down corners (the
//! corners where the θ-direction of motion reverses, i.e. the front cusps).
//! On braided diagrams d = 0 and sl₊ = ω - n exactly.

use crate::diagram::{HorizArc, RectDiagram, VertArc};
use thiserror::Error;

/// A transverse double point of the projection: the vertical arc at `col`
/// passes over the horizontal arc at `row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
}

fn crossing_sign(under: &HorizArc, over: &VertArc) -> i64 {
    // Sign of det[over-tangent; under-tangent] in the (θ, z) plane seen from
    // outside the cylinder, which is the right-handed crossing convention.
    // With over = (0, v) and under = (s, 0) this is -s·v; the all-positive
    // braid word σ₁^3 then closes to writhe +3.
    -under.sweep.sign() * over.dir.sign()
}

/// All crossings: pairs where the column lies strictly inside the row's
/// angular support and the row lies strictly inside the column's vertical
/// support.
pub fn crossings(d: &RectDiagram) -> Vec<Crossing> {
    let mut out = Vec::new();
    for v in d.verticals() {
        for arc in d.rows() {
            if v.covers_row_strictly(arc.z_rank) && d.covers_col_strictly(arc, v.col) {
                out.push(Crossing {
                    row: arc.z_rank,
                    col: v.col,
                    sign: crossing_sign(arc, &v),
                });
            }
        }
    }
    out
}

/// Algebraic crossing number ω.
pub fn writhe(d: &RectDiagram) -> i64 {
    crossings(d).iter().map(|c| c.sign).sum()
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum WindingError {
    #[error("θ* = {0} coincides with a column level (columns sit at integer ranks); pick a generic position")]
    NonGeneric(f64),
}

/// Signed count of horizontal arcs covering the generic angular position
/// `theta_star`, given in θ-rank units (column `j` sits at `j`; any
/// non-integer position is generic). The result does not depend on the
/// choice of gap.
pub fn winding_at(d: &RectDiagram, theta_star: f64) -> Result<i64, WindingError> {
    if !theta_star.is_finite() || theta_star.fract() == 0.0 {
        return Err(WindingError::NonGeneric(theta_star));
    }
    let n = d.n() as f64;
    let t = theta_star.rem_euclid(n);
    let mut total = 0;
    for arc in d.rows() {
        let (start, ext) = match arc.sweep {
            crate::diagram::Sweep::Plus => (
                arc.tail_col as f64,
                (arc.head_col + d.n() - arc.tail_col) % d.n(),
            ),
            crate::diagram::Sweep::Minus => (
                arc.head_col as f64,
                (arc.tail_col + d.n() - arc.head_col) % d.n(),
            ),
        };
        let dist = (t - start).rem_euclid(n);
        if dist < ext as f64 {
            total += arc.sweep.sign();
        }
    }
    Ok(total)
}

/// Winding number at the default generic position (the gap before column 1).
pub fn winding(d: &RectDiagram) -> i64 {
    winding_at(d, 0.5).expect("0.5 is generic")
}

/// Counts up and down corners. A corner is a cusp iff the θ-motion of its
/// incoming and outgoing arcs disagree, where a horizontal arc moves by its
/// sweep sign and a vertical arc moves forward in θ exactly when it is
/// oriented down. A cusp is up/down by its vertical arc's orientation.
pub fn corner_census(d: &RectDiagram) -> (u64, u64) {
    let verts = d.verticals();
    let vert_of = |col: usize| &verts[col - 1];
    let mut up = 0;
    let mut down = 0;
    for arc in d.rows() {
        // tail corner: vertical in, horizontal out
        let vin = vert_of(arc.tail_col);
        if vin.dir.theta_motion() != arc.sweep.sign() {
            match vin.dir {
                crate::diagram::VertDir::Up => up += 1,
                crate::diagram::VertDir::Down => down += 1,
            }
        }
        // head corner: horizontal in, vertical out
        let vout = vert_of(arc.head_col);
        if arc.sweep.sign() != vout.dir.theta_motion() {
            match vout.dir {
                crate::diagram::VertDir::Up => up += 1,
                crate::diagram::VertDir::Down => down += 1,
            }
        }
    }
    (up, down)
}

/// The full invariant bundle of a diagram. For multi-component links the
/// values are totals. `rot` is always integral on valid diagrams: every
/// component reverses θ-direction an even number of times, so `d - u` and
/// `d + u` share parity and both halves are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub omega: i64,
    pub winding: i64,
    pub up: u64,
    pub down: u64,
    pub tb: i64,
    pub rot: i64,
    pub sl_plus: i64,
    pub sl_minus: i64,
}

impl InvariantReport {
    pub fn compute(d: &RectDiagram) -> InvariantReport {
        let omega = writhe(d);
        let winding = winding(d);
        let (up, down) = corner_census(d);
        let cusps = (down + up) as i64;
        debug_assert!(cusps % 2 == 0, "cusp count must be even on valid diagrams");
        let tb = omega - cusps / 2;
        let rot = winding + (down as i64 - up as i64) / 2;
        InvariantReport {
            omega,
            winding,
            up,
            down,
            tb,
            rot,
            sl_plus: tb - rot,
            sl_minus: tb + rot,
        }
    }
}

pub fn thurston_bennequin(d: &RectDiagram) -> i64 {
    InvariantReport::compute(d).tb
}

pub fn rotation(d: &RectDiagram) -> i64 {
    InvariantReport::compute(d).rot
}

pub fn self_linking_plus(d: &RectDiagram) -> i64 {
    InvariantReport::compute(d).sl_plus
}

pub fn self_linking_minus(d: &RectDiagram) -> i64 {
    InvariantReport::compute(d).sl_minus
}
