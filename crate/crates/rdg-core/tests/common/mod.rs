//! Shared test infrastructure: seeded random diagrams and independent
//! oracles. The oracles deliberately avoid the library's interval
//! arithmetic: crossings are found by rasterizing arcs onto a character
//! grid and intersecting point sets, components by union-find on corners.
#![allow(dead_code)] // each test binary uses a different subset

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rdg_core::diagram::{HorizArc, RectDiagram, Sweep, VertDir};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random valid diagram: two permutations with no fixed pairing
/// collision give the tail/head columns, sweeps are coin flips.
pub fn random_diagram(rng: &mut ChaCha8Rng, n: usize) -> RectDiagram {
    loop {
        let mut tails: Vec<usize> = (1..=n).collect();
        let mut heads: Vec<usize> = (1..=n).collect();
        tails.shuffle(rng);
        heads.shuffle(rng);
        if tails.iter().zip(&heads).any(|(t, h)| t == h) {
            continue;
        }
        let rows = (1..=n)
            .map(|z| HorizArc {
                z_rank: z,
                tail_col: tails[z - 1],
                head_col: heads[z - 1],
                sweep: if rng.gen_bool(0.5) {
                    Sweep::Plus
                } else {
                    Sweep::Minus
                },
            })
            .collect();
        return RectDiagram::from_rows(rows).expect("permutation pairs are valid");
    }
}

pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<RectDiagram> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(2..=max_n);
            random_diagram(&mut r, n)
        })
        .collect()
}

/// Crossing found by the rasterization oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleCrossing {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
}

/// Rasterizes the diagram onto a (2n+1) x (2n+1) grid: column c occupies
/// x = 2c-1, row r occupies y = 2r-1, gaps sit at even coordinates, and the
/// seam column x = 0 carries wraps. A crossing is a cell marked by both a
/// horizontal interior and a vertical interior; its sign comes from the
/// marked directions by the right-hand rule (verticals pass over).
#[allow(clippy::needless_range_loop)] // y doubles as raster coordinate and row parity
pub fn oracle_crossings(d: &RectDiagram) -> Vec<OracleCrossing> {
    let n = d.n();
    let w = 2 * n;
    // horizontal occupancy per row: direction sign at each x, 0 = empty
    let mut hdir = vec![vec![0i64; w]; 2 * n + 1];
    for arc in d.rows() {
        let y = 2 * arc.z_rank - 1;
        let step: i64 = arc.sweep.sign();
        // walk from tail to head in half-rank steps, marking interiors only
        let mut x = (2 * arc.tail_col - 1) as i64;
        let target = (2 * arc.head_col - 1) as i64;
        loop {
            x = (x + step).rem_euclid(w as i64);
            if x == target {
                break;
            }
            hdir[y][x as usize] = step;
        }
    }
    let mut out = Vec::new();
    for v in d.verticals() {
        let x = 2 * v.col - 1;
        let (lo, hi) = (v.from_row.min(v.to_row), v.from_row.max(v.to_row));
        let vdir = match v.dir {
            VertDir::Up => 1i64,
            VertDir::Down => -1,
        };
        for y in (2 * lo)..(2 * hi - 1) {
            let h = hdir[y][x];
            if y % 2 == 1 && h != 0 {
                // right-hand rule with the vertical on top: sign of
                // det[over; under] = -h * vdir
                out.push(OracleCrossing {
                    row: y.div_ceil(2),
                    col: v.col,
                    sign: -h * vdir,
                });
            }
        }
    }
    out.sort();
    out
}

/// Union-find over the 2n corners; each horizontal and each vertical arc
/// merges its two endpoints.
pub fn oracle_components(d: &RectDiagram) -> usize {
    let n = d.n();
    // corner id: (row, which endpoint) -> 2*(row-1) + {0 tail, 1 head}
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    // horizontal arcs
    for arc in d.rows() {
        union(&mut parent, 2 * (arc.z_rank - 1), 2 * (arc.z_rank - 1) + 1);
    }
    // vertical arcs: head corner of from_row joins tail corner of to_row
    for v in d.verticals() {
        union(&mut parent, 2 * (v.from_row - 1) + 1, 2 * (v.to_row - 1));
    }
    let mut roots: Vec<usize> = (0..2 * n).map(|i| find(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// All corners of a diagram as (row, col) pairs.
pub fn corners(d: &RectDiagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for arc in d.rows() {
        out.push((arc.z_rank, arc.tail_col));
        out.push((arc.z_rank, arc.head_col));
    }
    out
}
