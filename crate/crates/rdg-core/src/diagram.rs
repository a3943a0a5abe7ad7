//! Core diagram model: arcs, the arc-presentation axioms, canonical keys.
//!
//! Levels are stored as ranks. z-ranks run `1..=n` bottom to top along the
//! (linear) z-axis; θ-ranks run `1..=n` around the (cyclic) angular
//! direction. Only the orders matter: the axioms require distinct levels and
//! nothing else. Vertical arcs are never stored; they are derived from the
//! column pairing, and by convention they always pass over horizontal arcs
//! (they sit at larger radius in the geometric realization).

use std::fmt;

/// Direction a horizontal arc sweeps from its tail to its head: `Plus` runs
/// with increasing θ, `Minus` against it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sweep {
    Plus,
    Minus,
}

impl Sweep {
    pub fn sign(self) -> i64 {
        match self {
            Sweep::Plus => 1,
            Sweep::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sweep {
        match self {
            Sweep::Plus => Sweep::Minus,
            Sweep::Minus => Sweep::Plus,
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sweep::Plus => "+",
            Sweep::Minus => "-",
        })
    }
}

/// One oriented horizontal arc. The link runs `tail_col -> head_col`; the arc
/// occupies the cyclic θ-interval between them traversed in the `sweep`
/// direction (strictly less than a full turn since the columns differ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HorizArc {
    pub z_rank: usize,
    pub tail_col: usize,
    pub head_col: usize,
    pub sweep: Sweep,
}

impl HorizArc {
    pub fn new(z_rank: usize, tail_col: usize, head_col: usize, sweep: Sweep) -> HorizArc {
        HorizArc {
            z_rank,
            tail_col,
            head_col,
            sweep,
        }
    }

    /// True iff the link orientation agrees with forward θ on this arc.
    pub fn forward(&self) -> bool {
        self.sweep == Sweep::Plus
    }
}

/// Which end of a horizontal arc a corner sits at. At a `Tail` corner the
/// link arrives along the vertical arc and leaves along the horizontal one;
/// at a `Head` corner the other way round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerKind {
    Tail,
    Head,
}

/// A meeting point of one horizontal and one vertical arc. Every diagram has
/// exactly `2n` corners, two per row and two per column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub row: usize,
    pub col: usize,
    pub kind: CornerKind,
}

/// Orientation of a derived vertical arc along the z-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertDir {
    Up,
    Down,
}

impl VertDir {
    pub fn sign(self) -> i64 {
        match self {
            VertDir::Up => 1,
            VertDir::Down => -1,
        }
    }

    /// θ-motion sign of a near-vertical arc: the characteristic foliation has
    /// steep negative slope at large radius, so descending in z means moving
    /// forward in θ.
    pub fn theta_motion(self) -> i64 {
        match self {
            VertDir::Up => -1,
            VertDir::Down => 1,
        }
    }
}

/// Vertical arc derived from the column pairing: the link leaves the head
/// corner of `from_row` and arrives at the tail corner of `to_row`, both at
/// angular level `col`. Its vertical support is the closed z-rank interval
/// between the two rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertArc {
    pub col: usize,
    pub from_row: usize,
    pub to_row: usize,
    pub dir: VertDir,
}

impl VertArc {
    pub fn covers_row_strictly(&self, z_rank: usize) -> bool {
        let lo = self.from_row.min(self.to_row);
        let hi = self.from_row.max(self.to_row);
        lo < z_rank && z_rank < hi
    }
}

/// A single axiom violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Axiom label among the arc-presentation conditions (1)-(5).
    pub axiom: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom ({}): {}", self.axiom, self.message)
    }
}

/// Outcome of checking the arc-presentation axioms; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            f.write_str("ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Unvalidated diagram data, as read from a file or assembled by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDiagram {
    pub rows: Vec<HorizArc>,
}

/// Checks the arc-presentation axioms without aborting; every violation is
/// reported with the axiom it breaks. Malformed index ranges are violations,
/// not panics.
pub fn validate(raw: &RawDiagram) -> ValidationReport {
    let n = raw.rows.len();
    let mut violations = Vec::new();

    if n == 0 {
        violations.push(Violation {
            axiom: "1",
            message: "diagram has no horizontal arcs".into(),
        });
        return ValidationReport { violations };
    }

    let mut z_seen = vec![0usize; n + 1];
    let mut tail_seen = vec![0usize; n + 1];
    let mut head_seen = vec![0usize; n + 1];

    for arc in &raw.rows {
        if arc.z_rank == 0 || arc.z_rank > n {
            violations.push(Violation {
                axiom: "4",
                message: format!("z_rank {} outside 1..={n}", arc.z_rank),
            });
        } else {
            z_seen[arc.z_rank] += 1;
        }
        for (name, col) in [("tail_col", arc.tail_col), ("head_col", arc.head_col)] {
            if col == 0 || col > n {
                violations.push(Violation {
                    axiom: "3",
                    message: format!("row {}: {name} {col} outside 1..={n}", arc.z_rank),
                });
            }
        }
        if arc.tail_col == arc.head_col {
            violations.push(Violation {
                axiom: "3/5",
                message: format!(
                    "row {}: tail and head share column {} (a horizontal arc needs two distinct corners)",
                    arc.z_rank, arc.tail_col
                ),
            });
        }
        if arc.tail_col >= 1 && arc.tail_col <= n {
            tail_seen[arc.tail_col] += 1;
        }
        if arc.head_col >= 1 && arc.head_col <= n {
            head_seen[arc.head_col] += 1;
        }
    }

    for (z, &count) in z_seen.iter().enumerate().skip(1) {
        if count > 1 {
            violations.push(Violation {
                axiom: "4",
                message: format!("z_rank {z} used {count} times"),
            });
        } else if count == 0 {
            violations.push(Violation {
                axiom: "4",
                message: format!("z_rank {z} missing"),
            });
        }
    }
    for c in 1..=n {
        if tail_seen[c] != 1 {
            violations.push(Violation {
                axiom: "3/5",
                message: format!(
                    "column {c} used as tail {} times (want exactly 1)",
                    tail_seen[c]
                ),
            });
        }
        if head_seen[c] != 1 {
            violations.push(Violation {
                axiom: "3/5",
                message: format!(
                    "column {c} used as head {} times (want exactly 1)",
                    head_seen[c]
                ),
            });
        }
    }

    ValidationReport { violations }
}

/// Canonical byte key of a diagram, invariant under cyclic θ-rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A validated rectangular diagram. Immutable; every operation that changes
/// it allocates a new value, so diagrams are freely shareable across threads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectDiagram {
    rows: Vec<HorizArc>,
}

impl RectDiagram {
    /// Builds a diagram from rows in any order, re-checking the axioms.
    pub fn from_rows(mut rows: Vec<HorizArc>) -> Result<Self, ValidationReport> {
        let report = validate(&RawDiagram { rows: rows.clone() });
        if !report.is_ok() {
            return Err(report);
        }
        rows.sort_by_key(|a| a.z_rank);
        Ok(RectDiagram { rows })
    }

    pub fn from_raw(raw: &RawDiagram) -> Result<Self, ValidationReport> {
        Self::from_rows(raw.rows.clone())
    }

    /// Grid size: number of horizontal arcs = number of vertical arcs.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Rows in ascending z-rank order.
    pub fn rows(&self) -> &[HorizArc] {
        &self.rows
    }

    /// Row at the given z-rank (1-based).
    pub fn row(&self, z_rank: usize) -> Option<&HorizArc> {
        self.rows.get(z_rank.checked_sub(1)?)
    }

    /// True iff every horizontal arc runs forward in θ, i.e. the diagram is a
    /// closed braid around the z-axis.
    pub fn is_braided(&self) -> bool {
        self.rows.iter().all(|a| a.sweep == Sweep::Plus)
    }

    /// Derives the `n` vertical arcs, one per column, oriented so the link is
    /// consistently oriented.
    pub fn verticals(&self) -> Vec<VertArc> {
        let n = self.n();
        let mut from = vec![0usize; n + 1];
        let mut to = vec![0usize; n + 1];
        for a in &self.rows {
            from[a.head_col] = a.z_rank;
            to[a.tail_col] = a.z_rank;
        }
        (1..=n)
            .map(|col| {
                let (f, t) = (from[col], to[col]);
                VertArc {
                    col,
                    from_row: f,
                    to_row: t,
                    dir: if t > f { VertDir::Up } else { VertDir::Down },
                }
            })
            .collect()
    }

    pub fn vertical_at(&self, col: usize) -> Option<VertArc> {
        if col == 0 || col > self.n() {
            return None;
        }
        Some(self.verticals()[col - 1])
    }

    /// All `2n` corners in row order, tail before head.
    pub fn corners(&self) -> Vec<Corner> {
        let mut out = Vec::with_capacity(2 * self.n());
        for a in &self.rows {
            out.push(Corner {
                row: a.z_rank,
                col: a.tail_col,
                kind: CornerKind::Tail,
            });
            out.push(Corner {
                row: a.z_rank,
                col: a.head_col,
                kind: CornerKind::Head,
            });
        }
        out
    }

    /// Signed angular extent of a row in θ-rank steps, always in `1..n`.
    pub fn extent(&self, arc: &HorizArc) -> usize {
        let n = self.n();
        match arc.sweep {
            Sweep::Plus => (arc.head_col + n - arc.tail_col) % n,
            Sweep::Minus => (arc.tail_col + n - arc.head_col) % n,
        }
    }

    /// True iff `col` lies strictly inside the angular support of `arc`.
    pub fn covers_col_strictly(&self, arc: &HorizArc, col: usize) -> bool {
        let n = self.n();
        let (start, ext) = match arc.sweep {
            Sweep::Plus => (arc.tail_col, (arc.head_col + n - arc.tail_col) % n),
            Sweep::Minus => (arc.head_col, (arc.tail_col + n - arc.head_col) % n),
        };
        let d = (col + n - start) % n;
        0 < d && d < ext
    }

    /// True iff the angular support crosses the seam between θ-ranks `n` and `1`.
    pub fn wraps_seam(&self, arc: &HorizArc) -> bool {
        match arc.sweep {
            Sweep::Plus => arc.tail_col > arc.head_col,
            Sweep::Minus => arc.tail_col < arc.head_col,
        }
    }

    /// Number of link components: cycles of the alternating arc traversal.
    pub fn components(&self) -> usize {
        let n = self.n();
        let mut tail_row_of_col = vec![0usize; n + 1];
        for a in &self.rows {
            tail_row_of_col[a.tail_col] = a.z_rank;
        }
        // next row after following the vertical arc at this row's head
        let next = |z: usize| tail_row_of_col[self.rows[z - 1].head_col];
        let mut seen = vec![false; n + 1];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut z = start;
            while !seen[z] {
                seen[z] = true;
                z = next(z);
            }
        }
        cycles
    }

    /// Relabels columns by a cyclic shift of `k` θ-ranks.
    pub fn rotated_cols(&self, k: usize) -> RectDiagram {
        let n = self.n();
        let shift = |c: usize| ((c - 1 + k) % n) + 1;
        let rows = self
            .rows
            .iter()
            .map(|a| HorizArc {
                z_rank: a.z_rank,
                tail_col: shift(a.tail_col),
                head_col: shift(a.head_col),
                sweep: a.sweep,
            })
            .collect();
        RectDiagram::from_rows(rows).expect("rotation preserves validity")
    }

    /// Reverses the orientation of every component (tails and heads swap).
    pub fn orientation_reversed(&self) -> RectDiagram {
        let rows = self
            .rows
            .iter()
            .map(|a| HorizArc {
                z_rank: a.z_rank,
                tail_col: a.head_col,
                head_col: a.tail_col,
                sweep: a.sweep.flipped(),
            })
            .collect();
        RectDiagram::from_rows(rows).expect("orientation reversal preserves validity")
    }

    /// Reflects the z-axis and reverses orientation; this negates the writhe
    /// and swaps up/down corners.
    pub fn mirrored(&self) -> RectDiagram {
        let n = self.n();
        let rows = self
            .rows
            .iter()
            .map(|a| HorizArc {
                z_rank: n + 1 - a.z_rank,
                tail_col: a.head_col,
                head_col: a.tail_col,
                sweep: a.sweep.flipped(),
            })
            .collect();
        RectDiagram::from_rows(rows).expect("mirror preserves validity")
    }

    /// Lexicographically minimal serialization over all cyclic column
    /// rotations. Constant on rotation orbits and deterministic.
    pub fn canonical_key(&self) -> CanonicalKey {
        let key = (0..self.n())
            .map(|k| crate::io::serialize(&self.rotated_cols(k)))
            .min()
            .expect("n >= 1");
        CanonicalKey(key)
    }
}
