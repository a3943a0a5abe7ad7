//! Braiding and bounded move-equivalence search.
//!
//! `braid` flips every backward horizontal arc, producing a braided diagram
//! with the same Legendrian data. `equivalent` runs a bidirectional BFS over
//! canonical keys with the admitted move family, an invariant pre-filter,
//! and explicit grid/depth/node budgets; exhausting a budget is reported as
//! `not_found_within_bounds`, never as inequivalence.

use crate::diagram::{CanonicalKey, RectDiagram, Sweep};
use crate::invariants::InvariantReport;
use crate::moves::{self, Move, MoveLabel, Quadrant};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Flips exactly the backward (sweep `-`) horizontal arcs. The result is
/// braided, has no down corners, and keeps `(tb, rot)`.
pub fn braid(d: &RectDiagram) -> RectDiagram {
    let mut out = d.clone();
    for z in 1..=d.n() {
        if out.row(z).unwrap().sweep == Sweep::Minus {
            out = moves::flip(&out, z).expect("row exists");
        }
    }
    out
}

/// Admitted move families, ordered by inclusion:
/// legendrian ⊂ transverse_plus ⊂ topological.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveSet {
    Legendrian,
    TransversePlus,
    Topological,
}

impl MoveSet {
    pub fn admits(self, label: MoveLabel) -> bool {
        match self {
            MoveSet::Legendrian => label == MoveLabel::Legendrian,
            MoveSet::TransversePlus => label != MoveLabel::Topological,
            MoveSet::Topological => true,
        }
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveSet::Legendrian => "legendrian",
            MoveSet::TransversePlus => "transverse",
            MoveSet::Topological => "topological",
        })
    }
}

impl FromStr for MoveSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "legendrian" => Ok(MoveSet::Legendrian),
            "transverse" | "transverse_plus" | "transverse-plus" => Ok(MoveSet::TransversePlus),
            "topological" => Ok(MoveSet::Topological),
            other => Err(format!(
                "unknown move set {other:?} (want legendrian|transverse|topological)"
            )),
        }
    }
}

/// All admitted `(move, result)` pairs from `d`, in a fixed deterministic
/// order: flips, horizontal commutations, vertical commutations, rotations,
/// stabilizations (by corner, then NE/NW/SE/SW), destabilizations.
pub fn neighbors(d: &RectDiagram, move_set: MoveSet) -> Vec<(Move, RectDiagram)> {
    let mut candidates: Vec<Move> = Vec::new();
    let n = d.n();
    for row in 1..=n {
        candidates.push(Move::Flip { row });
    }
    for row in 1..n {
        candidates.push(Move::HCommute { row });
    }
    for col in 1..=n {
        candidates.push(Move::VCommute { col });
    }
    for k in 1..n {
        candidates.push(Move::RotateTheta { k });
    }
    for row in 1..=n {
        let arc = *d.row(row).unwrap();
        let mut cols = [arc.tail_col, arc.head_col];
        cols.sort_unstable();
        for col in cols {
            for quadrant in Quadrant::ALL {
                candidates.push(Move::Stabilize { row, col, quadrant });
            }
        }
    }
    for row in 1..=n {
        for col in 1..=n {
            candidates.push(Move::Destabilize { row, col });
        }
    }

    let before = InvariantReport::compute(d);
    let mut out = Vec::new();
    for m in candidates {
        if let Ok(next) = moves::apply(d, &m) {
            let after = InvariantReport::compute(&next);
            let class = moves::MoveClass::from_deltas(
                after.tb - before.tb,
                after.rot - before.rot,
                after.sl_plus - before.sl_plus,
            );
            if move_set.admits(class.label) {
                out.push((m, next));
            }
        }
    }
    out
}

/// Bounds for the equivalence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest grid size a search node may have.
    pub max_grid: usize,
    /// Total path length bound (forward depth + backward depth).
    pub max_depth: usize,
    pub move_set: MoveSet,
    /// Upper bound on distinct canonical keys visited across both sides.
    pub node_budget: usize,
}

impl SearchConfig {
    /// Defaults sized to the pair of diagrams: grid headroom of two,
    /// depth 10, one million nodes.
    pub fn defaults_for(d1: &RectDiagram, d2: &RectDiagram, move_set: MoveSet) -> SearchConfig {
        SearchConfig {
            max_grid: d1.n().max(d2.n()) + 2,
            max_depth: 10,
            move_set,
            node_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Tb,
    Rot,
    SlPlus,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::Tb => "tb",
            Obstruction::Rot => "rot",
            Obstruction::SlPlus => "sl_plus",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotFoundReason {
    /// The move set preserves an invariant on which the diagrams differ.
    Obstruction(Obstruction),
    /// Grid, depth, or node budget ran out before the searches met.
    BoundsExhausted,
}

/// Search verdict; a path is a replayable sequence of moves with snapshots.
#[derive(Clone, Debug)]
pub enum Verdict {
    Equivalent(Vec<(Move, RectDiagram)>),
    NotFoundWithinBounds(NotFoundReason),
}

#[derive(Clone, Debug)]
pub struct EquivalenceCertificate {
    pub verdict: Verdict,
    /// Distinct canonical keys visited.
    pub nodes_visited: usize,
}

impl EquivalenceCertificate {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.verdict, Verdict::Equivalent(_))
    }

    pub fn path(&self) -> Option<&[(Move, RectDiagram)]> {
        match &self.verdict {
            Verdict::Equivalent(p) => Some(p),
            Verdict::NotFoundWithinBounds(_) => None,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("max_grid {max_grid} is smaller than an input diagram (n = {n})")]
    GridTooSmall { max_grid: usize, n: usize },
    #[error("node_budget must be positive")]
    ZeroBudget,
}

struct Node {
    diagram: RectDiagram,
    parent: Option<(usize, Move)>,
}

struct Side {
    nodes: Vec<Node>,
    visited: HashMap<CanonicalKey, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(d: &RectDiagram) -> Side {
        let key = d.canonical_key();
        let nodes = vec![Node {
            diagram: d.clone(),
            parent: None,
        }];
        let mut visited = HashMap::new();
        visited.insert(key, 0);
        Side {
            nodes,
            visited,
            frontier: vec![0],
            depth: 0,
        }
    }
}

fn expand_frontier(diagrams: &[&RectDiagram], move_set: MoveSet) -> Vec<Vec<(Move, RectDiagram)>> {
    #[cfg(feature = "parallel")]
    {
        if diagrams.len() >= 16 {
            return diagrams
                .par_iter()
                .map(|d| neighbors(d, move_set))
                .collect();
        }
    }
    diagrams.iter().map(|d| neighbors(d, move_set)).collect()
}

/// Replays a certificate path from `from`, checking every move is admitted
/// by `move_set`; returns the final diagram.
pub fn replay(
    from: &RectDiagram,
    path: &[(Move, RectDiagram)],
    move_set: MoveSet,
) -> Result<RectDiagram, String> {
    let mut cur = from.clone();
    for (i, (m, snapshot)) in path.iter().enumerate() {
        let class =
            moves::classify(&cur, m).map_err(|e| format!("step {i}: move {m} rejected: {e}"))?;
        if !move_set.admits(class.label) {
            return Err(format!("step {i}: move {m} not admitted by {move_set}"));
        }
        cur = moves::apply(&cur, m).expect("classified above");
        if cur.canonical_key() != snapshot.canonical_key() {
            return Err(format!("step {i}: snapshot mismatch after {m}"));
        }
    }
    Ok(cur)
}

/// Bidirectional BFS over canonical keys. On success the certificate path
/// replays from `d1` to the canonical key of `d2` using only admitted moves.
pub fn equivalent(
    d1: &RectDiagram,
    d2: &RectDiagram,
    cfg: &SearchConfig,
) -> Result<EquivalenceCertificate, SearchError> {
    if cfg.node_budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    for d in [d1, d2] {
        if d.n() > cfg.max_grid {
            return Err(SearchError::GridTooSmall {
                max_grid: cfg.max_grid,
                n: d.n(),
            });
        }
    }

    // Invariant pre-filter: no search when the move set cannot change an
    // invariant on which the inputs differ.
    let r1 = InvariantReport::compute(d1);
    let r2 = InvariantReport::compute(d2);
    let obstruction = match cfg.move_set {
        MoveSet::Legendrian => {
            if r1.tb != r2.tb {
                Some(Obstruction::Tb)
            } else if r1.rot != r2.rot {
                Some(Obstruction::Rot)
            } else {
                None
            }
        }
        MoveSet::TransversePlus => {
            if r1.sl_plus != r2.sl_plus {
                Some(Obstruction::SlPlus)
            } else {
                None
            }
        }
        MoveSet::Topological => None,
    };
    if let Some(o) = obstruction {
        return Ok(EquivalenceCertificate {
            verdict: Verdict::NotFoundWithinBounds(NotFoundReason::Obstruction(o)),
            nodes_visited: 2,
        });
    }

    let key2 = d2.canonical_key();
    if d1.canonical_key() == key2 {
        return Ok(EquivalenceCertificate {
            verdict: Verdict::Equivalent(Vec::new()),
            nodes_visited: 1,
        });
    }

    let mut fwd = Side::new(d1);
    let mut bwd = Side::new(d2);
    let mut meet: Option<(usize, usize)> = None; // (fwd node, bwd node)
    let mut budget_hit = false;

    while meet.is_none() && !budget_hit {
        if fwd.depth + bwd.depth >= cfg.max_depth {
            break;
        }
        let expand_fwd = if fwd.frontier.is_empty() {
            false
        } else if bwd.frontier.is_empty() {
            true
        } else {
            fwd.frontier.len() <= bwd.frontier.len()
        };
        let other_visited = if expand_fwd {
            bwd.visited.len()
        } else {
            fwd.visited.len()
        };
        let (side, other) = if expand_fwd {
            (&mut fwd, &mut bwd)
        } else {
            (&mut bwd, &mut fwd)
        };
        if side.frontier.is_empty() {
            break; // both frontiers exhausted within the grid bound
        }

        let frontier_diagrams: Vec<&RectDiagram> = side
            .frontier
            .iter()
            .map(|&i| &side.nodes[i].diagram)
            .collect();
        let expansions = expand_frontier(&frontier_diagrams, cfg.move_set);

        let mut next_frontier = Vec::new();
        'merge: for (&src, batch) in side.frontier.iter().zip(expansions) {
            for (m, nd) in batch {
                if nd.n() > cfg.max_grid {
                    continue;
                }
                let key = nd.canonical_key();
                if side.visited.contains_key(&key) {
                    continue;
                }
                let idx = side.nodes.len();
                side.nodes.push(Node {
                    diagram: nd,
                    parent: Some((src, m)),
                });
                side.visited.insert(key.clone(), idx);
                next_frontier.push(idx);
                if let Some(&oidx) = other.visited.get(&key) {
                    meet = Some(if expand_fwd { (idx, oidx) } else { (oidx, idx) });
                    break 'merge;
                }
                if side.visited.len() + other_visited > cfg.node_budget {
                    budget_hit = true;
                    break 'merge;
                }
            }
        }
        side.frontier = next_frontier;
        side.depth += 1;
    }

    let total = fwd_bwd_total(&fwd, &bwd);
    let Some((fi, bi)) = meet else {
        return Ok(EquivalenceCertificate {
            verdict: Verdict::NotFoundWithinBounds(NotFoundReason::BoundsExhausted),
            nodes_visited: total,
        });
    };

    // Forward half: stored parent chain from d1 to the meet node.
    let mut fwd_moves = Vec::new();
    let mut cursor = fi;
    while let Some((parent, m)) = fwd.nodes[cursor].parent {
        fwd_moves.push((m, fwd.nodes[cursor].diagram.clone()));
        cursor = parent;
    }
    fwd_moves.reverse();

    // Backward half: walk the parent chain of the meet node on the d2 side,
    // re-deriving each inverse step from the actual current diagram (the
    // meet diagrams agree only up to rotation, and moves are indexed by
    // ranks, so stored moves cannot simply be inverted).
    let mut path = fwd_moves;
    let mut cur = path
        .last()
        .map(|(_, d)| d.clone())
        .unwrap_or_else(|| d1.clone());
    let mut bcursor = bi;
    while let Some((parent, _)) = bwd.nodes[bcursor].parent {
        let target_key = bwd.nodes[parent].diagram.canonical_key();
        let step = neighbors(&cur, cfg.move_set)
            .into_iter()
            .filter(|(_, nd)| nd.n() <= cfg.max_grid)
            .find(|(_, nd)| nd.canonical_key() == target_key)
            .expect("every admitted move family is invertible within the same set");
        cur = step.1.clone();
        path.push(step);
        bcursor = parent;
    }

    debug_assert_eq!(cur.canonical_key(), key2);
    Ok(EquivalenceCertificate {
        verdict: Verdict::Equivalent(path),
        nodes_visited: total,
    })
}

fn fwd_bwd_total(fwd: &Side, bwd: &Side) -> usize {
    fwd.visited.len() + bwd.visited.len()
}
