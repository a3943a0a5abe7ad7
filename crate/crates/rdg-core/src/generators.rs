//! Reference diagrams (unknots, braid closures, torus links) and the cable
//! slope arithmetic.

use crate::diagram::{HorizArc, RectDiagram, Sweep};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("braid word must be nonempty")]
    EmptyWord,
    #[error("generator index {index} out of range for {strands} strands (want 1..={max})", max = strands - 1)]
    GeneratorOutOfRange { index: i64, strands: usize },
    #[error("a braid needs at least two strands, got {0}")]
    TooFewStrands(usize),
    #[error("torus link parameters need p >= 2 and q >= 1, got ({0}, {1})")]
    BadTorusParams(usize, usize),
    #[error("train-track weights must not both be zero")]
    ZeroWeights,
}

/// The rectangular unknot: two rows sharing both columns, one forward and
/// one backward arc. tb = -1, rot = 0.
pub fn gen_unknot_rect() -> RectDiagram {
    RectDiagram::from_rows(vec![
        HorizArc::new(1, 1, 2, Sweep::Plus),
        HorizArc::new(2, 2, 1, Sweep::Minus),
    ])
    .expect("fixture is valid")
}

/// The braided unknot: both arcs forward, the upper one wrapping the seam.
/// tb = -1, rot = 0, sl₊ = -1.
pub fn gen_unknot_braided() -> RectDiagram {
    RectDiagram::from_rows(vec![
        HorizArc::new(1, 1, 2, Sweep::Plus),
        HorizArc::new(2, 2, 1, Sweep::Plus),
    ])
    .expect("fixture is valid")
}

/// Closed-braid builder state. Levels are identities whose z-order lives in
/// `order`; strands occupy levels, and every jump targets a freshly inserted
/// level so no level is ever reused mid-word.
struct ClosureBuilder {
    /// level id -> (tail column, head column), filled as events happen
    tail_of: Vec<Option<usize>>,
    head_of: Vec<Option<usize>>,
    /// level ids in ascending z-order
    order: Vec<usize>,
    /// level occupied by each strand, indexed by braid position (ascending z)
    active: Vec<usize>,
    next_col: usize,
}

impl ClosureBuilder {
    fn new(strands: usize) -> ClosureBuilder {
        ClosureBuilder {
            tail_of: vec![None; strands],
            head_of: vec![None; strands],
            order: (0..strands).collect(),
            active: (0..strands).collect(),
            next_col: 1,
        }
    }

    fn z_index(&self, level: usize) -> usize {
        self.order
            .iter()
            .position(|&l| l == level)
            .expect("level exists")
    }

    fn fresh_level(&mut self) -> usize {
        let id = self.tail_of.len();
        self.tail_of.push(None);
        self.head_of.push(None);
        id
    }

    /// Moves the strand at `position` from its level to a fresh level
    /// inserted at `insert_at` in the z-order, consuming one column.
    fn jump_to_fresh(&mut self, position: usize, insert_at: usize) -> usize {
        let from = self.active[position];
        let to = self.fresh_level();
        self.order.insert(insert_at, to);
        self.connect(from, to);
        self.active[position] = to;
        to
    }

    /// One column: the link leaves `from` (head) and enters `to` (tail).
    fn connect(&mut self, from: usize, to: usize) {
        let col = self.next_col;
        self.next_col += 1;
        debug_assert!(self.head_of[from].is_none());
        debug_assert!(self.tail_of[to].is_none());
        self.head_of[from] = Some(col);
        self.tail_of[to] = Some(col);
    }

    fn finish(self) -> RectDiagram {
        let n = self.order.len();
        debug_assert_eq!(self.next_col - 1, n);
        let mut rows = Vec::with_capacity(n);
        for (idx, &level) in self.order.iter().enumerate() {
            rows.push(HorizArc {
                z_rank: idx + 1,
                tail_col: self.tail_of[level].expect("every level entered"),
                head_col: self.head_of[level].expect("every level left"),
                sweep: Sweep::Plus,
            });
        }
        RectDiagram::from_rows(rows).expect("builder output is valid")
    }
}

/// Braided rectangular diagram of the closure of a braid word on `strands`
/// strands. Letters are signed generator indices: `i` is the positive
/// generator crossing strands `i` and `i+1` (counted bottom-up), `-i` its
/// inverse. The result is braided with winding = `strands` and writhe =
/// algebraic word length.
///
/// A positive letter sends the upper strand of the pair over the lower by a
/// downward jump (the moving vertical arc passes over the stationary
/// strand); a negative letter sends the lower strand up. Closure jumps then
/// return each braid position to its starting level, down-movers first in
/// increasing target order, then up-movers in decreasing target order, which
/// keeps the closure zone crossing-free. Strands that never moved and ended
/// on their starting level take one bounce through a fresh adjacent level so
/// that every level carries exactly one horizontal arc.
pub fn gen_braid_closure(word: &[i64], strands: usize) -> Result<RectDiagram, GenError> {
    if strands < 2 {
        return Err(GenError::TooFewStrands(strands));
    }
    if word.is_empty() {
        return Err(GenError::EmptyWord);
    }
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= strands {
            return Err(GenError::GeneratorOutOfRange {
                index: letter,
                strands,
            });
        }
    }

    let mut b = ClosureBuilder::new(strands);
    let start_levels = b.active.clone();

    for &letter in word {
        let i = letter.unsigned_abs() as usize; // positions i, i+1 (1-based)
        let lower = i - 1;
        let upper = i;
        if letter > 0 {
            // upper strand dives below the lower one
            let insert_at = b.z_index(b.active[lower]);
            b.jump_to_fresh(upper, insert_at);
        } else {
            // lower strand leaps above the upper one
            let insert_at = b.z_index(b.active[upper]) + 1;
            b.jump_to_fresh(lower, insert_at);
        }
        b.active.swap(lower, upper);
    }

    // A position already back on its starting level never jumped (movers
    // only ever land on fresh levels); bounce it through a fresh neighbor so
    // its level still gets a tail and a head.
    for (pos, &start) in start_levels.iter().enumerate() {
        if b.active[pos] == start {
            let at = b.z_index(b.active[pos]) + 1;
            b.jump_to_fresh(pos, at);
        }
    }

    // Closure: return every position to its starting level.
    let mut downs: Vec<usize> = Vec::new();
    let mut ups: Vec<usize> = Vec::new();
    for (pos, &start) in start_levels.iter().enumerate() {
        let cur = b.z_index(b.active[pos]);
        let target = b.z_index(start);
        debug_assert_ne!(cur, target);
        if target < cur {
            downs.push(pos);
        } else {
            ups.push(pos);
        }
    }
    for &pos in &downs {
        let from = b.active[pos];
        b.connect(from, start_levels[pos]);
        b.active[pos] = start_levels[pos];
    }
    for &pos in ups.iter().rev() {
        let from = b.active[pos];
        b.connect(from, start_levels[pos]);
        b.active[pos] = start_levels[pos];
    }

    Ok(b.finish())
}

/// The (p, q) torus link as the closure of `(σ₁ σ₂ ⋯ σ_{p-1})^q`.
pub fn gen_torus_knot(p: usize, q: usize) -> Result<RectDiagram, GenError> {
    if p < 2 || q < 1 {
        return Err(GenError::BadTorusParams(p, q));
    }
    let mut word = Vec::with_capacity((p - 1) * q);
    for _ in 0..q {
        for i in 1..p {
            word.push(i as i64);
        }
    }
    gen_braid_closure(&word, p)
}

/// Train-track weights `(r, s)` selecting a curve on the cabling torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableSpec {
    r: u64,
    s: u64,
}

impl CableSpec {
    pub fn new(r: u64, s: u64) -> Result<CableSpec, GenError> {
        if r == 0 && s == 0 {
            return Err(GenError::ZeroWeights);
        }
        Ok(CableSpec { r, s })
    }

    pub fn weights(&self) -> (u64, u64) {
        (self.r, self.s)
    }

    /// Exact slope `-(2r+s)/(11r+5s)` in lowest terms.
    pub fn slope(&self) -> Ratio<i64> {
        let num = -(2 * self.r as i64 + self.s as i64);
        let den = 11 * self.r as i64 + 5 * self.s as i64;
        Ratio::new(num, den)
    }

    /// Cable parameters `(2r+s, r+s)` over the (2,3) torus knot.
    pub fn cable_type(&self) -> (u64, u64) {
        (2 * self.r + self.s, self.r + self.s)
    }
}

pub fn cable_slope(spec: &CableSpec) -> Ratio<i64> {
    spec.slope()
}

pub fn cable_type(spec: &CableSpec) -> (u64, u64) {
    spec.cable_type()
}
