//! Elementary moves on rectangular diagrams and their effect on the
//! Legendrian/transverse invariants.
//!
//! Every move is a total function returning a fresh diagram or a typed
//! rejection; nothing mutates in place. Classification is always computed by
//! applying the move and differencing invariant reports, never hard-coded.

use crate::diagram::{HorizArc, RectDiagram, Sweep};
use crate::invariants::InvariantReport;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Placement of the small square inserted by a stabilization, named by the
/// compass position of the fresh row/column pair relative to the corner:
/// N/S selects the side of the corner's row, E/W the side of its column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SE, Quadrant::SW];

    fn north(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::NW)
    }

    fn east(self) -> bool {
        matches!(self, Quadrant::NE | Quadrant::SE)
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrant::NE => "NE",
            Quadrant::NW => "NW",
            Quadrant::SE => "SE",
            Quadrant::SW => "SW",
        })
    }
}

impl FromStr for Quadrant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NE" | "ne" => Ok(Quadrant::NE),
            "NW" | "nw" => Ok(Quadrant::NW),
            "SE" | "se" => Ok(Quadrant::SE),
            "SW" | "sw" => Ok(Quadrant::SW),
            other => Err(format!("unknown quadrant {other:?} (want NE|NW|SE|SW)")),
        }
    }
}

/// One elementary move. `Destabilize` is addressed by the elbow corner where
/// the two unit arcs of a notch meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Flip {
        row: usize,
    },
    HCommute {
        row: usize,
    },
    VCommute {
        col: usize,
    },
    Stabilize {
        row: usize,
        col: usize,
        quadrant: Quadrant,
    },
    Destabilize {
        row: usize,
        col: usize,
    },
    RotateTheta {
        k: usize,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Flip { row } => write!(f, "flip:{row}"),
            Move::HCommute { row } => write!(f, "hc:{row}"),
            Move::VCommute { col } => write!(f, "vc:{col}"),
            Move::Stabilize { row, col, quadrant } => write!(f, "stab:{row},{col},{quadrant}"),
            Move::Destabilize { row, col } => write!(f, "destab:{row},{col}"),
            Move::RotateTheta { k } => write!(f, "rot:{k}"),
        }
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| format!("malformed move literal {s:?} (want kind:args)"))?;
        let nums = |want: usize| -> Result<Vec<usize>, String> {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() < want {
                return Err(format!(
                    "move {kind:?} wants {want} argument(s), got {args:?}"
                ));
            }
            parts[..want]
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| format!("bad integer {p:?} in {s:?}"))
                })
                .collect()
        };
        match kind {
            "flip" => Ok(Move::Flip { row: nums(1)?[0] }),
            "hc" => Ok(Move::HCommute { row: nums(1)?[0] }),
            "vc" => Ok(Move::VCommute { col: nums(1)?[0] }),
            "rot" => Ok(Move::RotateTheta { k: nums(1)?[0] }),
            "destab" => {
                let v = nums(2)?;
                Ok(Move::Destabilize {
                    row: v[0],
                    col: v[1],
                })
            }
            "stab" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 3 {
                    return Err(format!("stab wants row,col,quadrant, got {args:?}"));
                }
                let row = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad row in {s:?}"))?;
                let col = parts[1]
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad col in {s:?}"))?;
                let quadrant = parts[2].trim().parse()?;
                Ok(Move::Stabilize { row, col, quadrant })
            }
            other => Err(format!("unknown move kind {other:?}")),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("z-rank {0} out of range")]
    RowOutOfRange(usize),
    #[error("θ-rank {0} out of range")]
    ColOutOfRange(usize),
    #[error("no corner at (row {row}, col {col})")]
    NotACorner { row: usize, col: usize },
    #[error("arcs at ranks {a} and {b} interleave; commutation rejected")]
    Interleaved { a: usize, b: usize },
    #[error("arcs at ranks {a} and {b} share an endpoint level; commutation rejected")]
    SharedEndpoint { a: usize, b: usize },
    #[error("no 2x2 notch at (row {row}, col {col})")]
    NoNotch { row: usize, col: usize },
    #[error("rotation offset {k} out of range 0..{n}")]
    RotationOutOfRange { k: usize, n: usize },
}

/// Negates the sweep of one row: its angular support is replaced by the
/// complementary cyclic interval while both endpoints and the z-level stay
/// put (the arc passes across the axis).
pub fn flip(d: &RectDiagram, z_rank: usize) -> Result<RectDiagram, MoveError> {
    if z_rank == 0 || z_rank > d.n() {
        return Err(MoveError::RowOutOfRange(z_rank));
    }
    let mut rows = d.rows().to_vec();
    rows[z_rank - 1].sweep = rows[z_rank - 1].sweep.flipped();
    Ok(RectDiagram::from_rows(rows).expect("flip preserves validity"))
}

fn interleave_check(d: &RectDiagram, a: &HorizArc, b: &HorizArc) -> Result<(), MoveError> {
    let cols = [a.tail_col, a.head_col, b.tail_col, b.head_col];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if cols[i] == cols[j] {
                return Err(MoveError::SharedEndpoint {
                    a: a.z_rank,
                    b: b.z_rank,
                });
            }
        }
    }
    let inside_tail = d.covers_col_strictly(a, b.tail_col);
    let inside_head = d.covers_col_strictly(a, b.head_col);
    if inside_tail != inside_head {
        return Err(MoveError::Interleaved {
            a: a.z_rank,
            b: b.z_rank,
        });
    }
    Ok(())
}

/// Exchanges the z-ranks of the rows at `z_rank` and `z_rank + 1`, allowed
/// when their angular supports are disjoint or nested with all four endpoint
/// columns distinct.
pub fn h_commute(d: &RectDiagram, z_rank: usize) -> Result<RectDiagram, MoveError> {
    if z_rank == 0 || z_rank + 1 > d.n() {
        return Err(MoveError::RowOutOfRange(z_rank));
    }
    let a = *d.row(z_rank).unwrap();
    let b = *d.row(z_rank + 1).unwrap();
    interleave_check(d, &a, &b)?;
    let mut rows = d.rows().to_vec();
    rows[z_rank - 1] = HorizArc { z_rank, ..b };
    rows[z_rank] = HorizArc {
        z_rank: z_rank + 1,
        ..a
    };
    Ok(RectDiagram::from_rows(rows).expect("commutation preserves validity"))
}

/// Exchanges the θ-ranks of the cyclically adjacent columns `col` and
/// `col mod n + 1`, allowed when the two vertical supports are disjoint or
/// nested with all four endpoint rows distinct.
pub fn v_commute(d: &RectDiagram, col: usize) -> Result<RectDiagram, MoveError> {
    let n = d.n();
    if col == 0 || col > n {
        return Err(MoveError::ColOutOfRange(col));
    }
    let c2 = col % n + 1;
    let va = d.vertical_at(col).unwrap();
    let vb = d.vertical_at(c2).unwrap();
    let rows_involved = [va.from_row, va.to_row, vb.from_row, vb.to_row];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if rows_involved[i] == rows_involved[j] {
                return Err(MoveError::SharedEndpoint { a: col, b: c2 });
            }
        }
    }
    let inside = |z: usize| va.covers_row_strictly(z);
    if inside(vb.from_row) != inside(vb.to_row) {
        return Err(MoveError::Interleaved { a: col, b: c2 });
    }
    let swap = |c: usize| {
        if c == col {
            c2
        } else if c == c2 {
            col
        } else {
            c
        }
    };
    let rows = d
        .rows()
        .iter()
        .map(|a| HorizArc {
            z_rank: a.z_rank,
            tail_col: swap(a.tail_col),
            head_col: swap(a.head_col),
            sweep: a.sweep,
        })
        .collect();
    Ok(RectDiagram::from_rows(rows).expect("commutation preserves validity"))
}

/// Replaces the corner at `(row, col)` by three corners around a fresh unit
/// square placed in the given quadrant; the grid grows by one. The elbow of
/// the resulting notch sits at [`stabilization_witness`], which is where
/// [`destabilize`] undoes it.
pub fn stabilize(
    d: &RectDiagram,
    corner: (usize, usize),
    quadrant: Quadrant,
) -> Result<RectDiagram, MoveError> {
    let (rz, ct) = corner;
    if rz == 0 || rz > d.n() {
        return Err(MoveError::RowOutOfRange(rz));
    }
    if ct == 0 || ct > d.n() {
        return Err(MoveError::ColOutOfRange(ct));
    }
    let corner_row = *d.row(rz).unwrap();
    let is_tail = corner_row.tail_col == ct;
    let is_head = corner_row.head_col == ct;
    if !is_tail && !is_head {
        return Err(MoveError::NotACorner { row: rz, col: ct });
    }

    let new_row_rank = if quadrant.north() { rz + 1 } else { rz };
    let new_col_rank = if quadrant.east() { ct + 1 } else { ct };

    let shift_row = |z: usize| if z >= new_row_rank { z + 1 } else { z };
    let shift_col = |c: usize| if c >= new_col_rank { c + 1 } else { c };

    let corner_row_rank = shift_row(rz);
    let c_star = shift_col(ct);

    let mut rows: Vec<HorizArc> = d
        .rows()
        .iter()
        .map(|a| HorizArc {
            z_rank: shift_row(a.z_rank),
            tail_col: shift_col(a.tail_col),
            head_col: shift_col(a.head_col),
            sweep: a.sweep,
        })
        .collect();

    for a in &mut rows {
        if a.z_rank == corner_row_rank {
            if is_head {
                a.head_col = new_col_rank;
            } else {
                a.tail_col = new_col_rank;
            }
        }
    }

    // Unit arc on the fresh row, taking the short way between the fresh
    // column and the corner's (shifted) column.
    let tiny = if is_head {
        HorizArc {
            z_rank: new_row_rank,
            tail_col: new_col_rank,
            head_col: c_star,
            sweep: if quadrant.east() {
                Sweep::Minus
            } else {
                Sweep::Plus
            },
        }
    } else {
        HorizArc {
            z_rank: new_row_rank,
            tail_col: c_star,
            head_col: new_col_rank,
            sweep: if quadrant.east() {
                Sweep::Plus
            } else {
                Sweep::Minus
            },
        }
    };
    rows.push(tiny);

    Ok(RectDiagram::from_rows(rows).expect("stabilization preserves validity"))
}

/// Elbow coordinates of the notch created by `stabilize(d, corner, quadrant)`
/// in the enlarged diagram.
pub fn stabilization_witness(corner: (usize, usize), quadrant: Quadrant) -> (usize, usize) {
    let (rz, ct) = corner;
    (
        if quadrant.north() { rz + 1 } else { rz },
        if quadrant.east() { ct + 1 } else { ct },
    )
}

/// Contracts a 2x2 notch whose elbow corner (the meeting point of a unit row
/// arc and a unit column arc) sits at `(row, col)`; exact inverse of the
/// matching stabilization. Rejected when no such notch exists or contraction
/// would not leave a valid diagram.
pub fn destabilize(d: &RectDiagram, witness: (usize, usize)) -> Result<RectDiagram, MoveError> {
    let (wr, wc) = witness;
    let no_notch = MoveError::NoNotch { row: wr, col: wc };
    if wr == 0 || wr > d.n() {
        return Err(MoveError::RowOutOfRange(wr));
    }
    if wc == 0 || wc > d.n() {
        return Err(MoveError::ColOutOfRange(wc));
    }
    let tiny_h = *d.row(wr).unwrap();
    if d.extent(&tiny_h) != 1 {
        return Err(no_notch);
    }
    if tiny_h.tail_col != wc && tiny_h.head_col != wc {
        return Err(no_notch);
    }
    let tiny_v = d.vertical_at(wc).unwrap();
    if tiny_v.from_row.abs_diff(tiny_v.to_row) != 1 {
        return Err(no_notch);
    }
    if tiny_v.from_row != wr && tiny_v.to_row != wr {
        return Err(no_notch);
    }
    let c_other = if tiny_h.tail_col == wc {
        tiny_h.head_col
    } else {
        tiny_h.tail_col
    };
    let r_other = if tiny_v.from_row == wr {
        tiny_v.to_row
    } else {
        tiny_v.from_row
    };

    let unshift_row = |z: usize| if z > wr { z - 1 } else { z };
    let unshift_col = |c: usize| if c > wc { c - 1 } else { c };

    let mut rows = Vec::with_capacity(d.n() - 1);
    for a in d.rows() {
        if a.z_rank == wr {
            continue;
        }
        let mut a = *a;
        if a.z_rank == r_other {
            if a.tail_col == wc {
                a.tail_col = c_other;
            } else if a.head_col == wc {
                a.head_col = c_other;
            }
        }
        a.z_rank = unshift_row(a.z_rank);
        a.tail_col = unshift_col(a.tail_col);
        a.head_col = unshift_col(a.head_col);
        rows.push(a);
    }

    RectDiagram::from_rows(rows).map_err(|_| no_notch)
}

/// Shifts all θ-ranks by `k` (cyclic symmetry of the angular direction; on
/// braided diagrams this realizes braid conjugation). The canonical key and
/// all invariants are unchanged.
pub fn rotate_theta(d: &RectDiagram, k: usize) -> Result<RectDiagram, MoveError> {
    if k >= d.n() {
        return Err(MoveError::RotationOutOfRange { k, n: d.n() });
    }
    Ok(d.rotated_cols(k))
}

/// Applies any move.
pub fn apply(d: &RectDiagram, m: &Move) -> Result<RectDiagram, MoveError> {
    match *m {
        Move::Flip { row } => flip(d, row),
        Move::HCommute { row } => h_commute(d, row),
        Move::VCommute { col } => v_commute(d, col),
        Move::Stabilize { row, col, quadrant } => stabilize(d, (row, col), quadrant),
        Move::Destabilize { row, col } => destabilize(d, (row, col)),
        Move::RotateTheta { k } => rotate_theta(d, k),
    }
}

/// How a move acts on the Legendrian/transverse data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveLabel {
    /// Δ(tb, rot, sl₊) = (0, 0, 0): a Legendrian isotopy of the diagram.
    Legendrian,
    /// Δsl₊ = 0 with Δ(tb, rot) = ±(1, 1): changes the Legendrian class but
    /// is an isotopy of the positive transverse push-off.
    TransversePlus,
    /// Everything else: only the topological type is preserved.
    Topological,
}

/// Computed effect of one move applied to one diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveClass {
    pub delta_tb: i64,
    pub delta_rot: i64,
    pub delta_sl_plus: i64,
    pub label: MoveLabel,
}

impl MoveClass {
    pub fn from_deltas(delta_tb: i64, delta_rot: i64, delta_sl_plus: i64) -> MoveClass {
        let label = if (delta_tb, delta_rot, delta_sl_plus) == (0, 0, 0) {
            MoveLabel::Legendrian
        } else if delta_sl_plus == 0 && matches!((delta_tb, delta_rot), (-1, -1) | (1, 1)) {
            MoveLabel::TransversePlus
        } else {
            MoveLabel::Topological
        };
        MoveClass {
            delta_tb,
            delta_rot,
            delta_sl_plus,
            label,
        }
    }
}

/// Applies `m` and differences the invariant reports.
pub fn classify(d: &RectDiagram, m: &Move) -> Result<MoveClass, MoveError> {
    let before = InvariantReport::compute(d);
    let after = InvariantReport::compute(&apply(d, m)?);
    Ok(MoveClass::from_deltas(
        after.tb - before.tb,
        after.rot - before.rot,
        after.sl_plus - before.sl_plus,
    ))
}
