//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values. Run with `cargo test -p rdg-core --test acceptance`
//! (add `-- --nocapture` to see the lines on success).

mod common;

use common::{corners, oracle_crossings, random_corpus};
use rdg_core::diagram::RectDiagram;
use rdg_core::generators::{
    gen_braid_closure, gen_torus_knot, gen_unknot_braided, gen_unknot_rect, CableSpec,
};
use rdg_core::geometry::{contact_residual, embed, half_space_shift};
use rdg_core::invariants::{self, InvariantReport};
use rdg_core::moves::{self, Move, Quadrant};
use rdg_core::search::{
    braid, equivalent, MoveSet, NotFoundReason, Obstruction, SearchConfig, Verdict,
};
use std::time::{Duration, Instant};

fn assert_within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_unknot_invariants() {
    let t0 = Instant::now();
    let r1 = InvariantReport::compute(&gen_unknot_rect());
    assert_eq!((r1.tb, r1.rot), (-1, 0));
    let r2 = InvariantReport::compute(&gen_unknot_braided());
    assert_eq!((r2.tb, r2.rot, r2.sl_plus), (-1, 0, -1));
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_millis(1), "criterion 1");
    println!(
        "PASS criterion 1: unknot invariants tb/rot/sl+ = ({}, {}, {}) and ({}, {}, {}) in {elapsed:?}",
        r1.tb, r1.rot, r1.sl_plus, r2.tb, r2.rot, r2.sl_plus
    );
}

fn corpus_1000() -> Vec<RectDiagram> {
    random_corpus(0xacce_0001, 1000, 8)
}

#[test]
fn criterion_02_flip_invariance() {
    let corpus = corpus_1000();
    let t0 = Instant::now();
    for d in &corpus {
        let before = InvariantReport::compute(d);
        for z in 1..=d.n() {
            let f = moves::flip(d, z).expect("row exists");
            let after = InvariantReport::compute(&f);
            assert_eq!(
                (before.tb, before.rot),
                (after.tb, after.rot),
                "flip changed (tb, rot) on {d:?} row {z}"
            );
            assert_eq!(moves::flip(&f, z).expect("row exists"), *d);
        }
    }
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 2");
    println!(
        "PASS criterion 2: flip preserves (tb, rot) and is involutive on {} diagrams x all rows in {elapsed:?}",
        corpus.len()
    );
}

#[test]
fn criterion_03_alexander_algorithm() {
    let corpus = corpus_1000();
    let t0 = Instant::now();
    assert_eq!(braid(&gen_unknot_rect()), gen_unknot_braided());
    for d in &corpus {
        let b = braid(d);
        assert!(b.is_braided());
        let (_, down) = invariants::corner_census(&b);
        assert_eq!(down, 0, "braided diagram has down corners: {b:?}");
        let rd = InvariantReport::compute(d);
        let rb = InvariantReport::compute(&b);
        assert_eq!((rd.tb, rd.rot), (rb.tb, rb.rot));
    }
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 3");
    println!(
        "PASS criterion 3: braid() braids, kills down corners, keeps (tb, rot); braid(E1) = E2; {} diagrams in {elapsed:?}",
        corpus.len()
    );
}

#[test]
fn criterion_04_lemma_consistency() {
    let corpus = corpus_1000();
    let t0 = Instant::now();
    for d in &corpus {
        let r = InvariantReport::compute(d);
        assert_eq!(r.tb - r.rot, r.omega - r.winding - r.down as i64, "{d:?}");
        let b = braid(d);
        let rb = InvariantReport::compute(&b);
        assert_eq!(rb.sl_plus, rb.omega - rb.winding, "{b:?}");
        assert_eq!(rb.sl_plus, rb.tb - rb.rot);
    }
    let elapsed = t0.elapsed();
    println!(
        "PASS criterion 4: sl+ = omega - winding = tb - rot on braided corpus; tb - rot = omega - winding - down everywhere; {elapsed:?}"
    );
}

#[test]
fn criterion_05_winding_well_defined() {
    let corpus = corpus_1000();
    let t0 = Instant::now();
    for d in &corpus {
        let w = invariants::winding(d);
        for g in 0..d.n() {
            assert_eq!(
                invariants::winding_at(d, g as f64 + 0.5).expect("generic"),
                w,
                "winding varies on {d:?}"
            );
        }
    }
    let elapsed = t0.elapsed();
    println!(
        "PASS criterion 5: winding identical across all generic gaps on {} diagrams in {elapsed:?}",
        corpus.len()
    );
}

#[test]
fn criterion_06_stabilization_classification() {
    let t0 = Instant::now();
    for d in [gen_unknot_rect(), gen_unknot_braided()] {
        for (row, col) in corners(&d) {
            let mut deltas = Vec::new();
            for q in Quadrant::ALL {
                let m = Move::Stabilize {
                    row,
                    col,
                    quadrant: q,
                };
                let c = moves::classify(&d, &m).expect("corner exists");
                deltas.push((c.delta_tb, c.delta_rot, c.delta_sl_plus));
            }
            let trivial = deltas.iter().filter(|&&x| x == (0, 0, 0)).count();
            assert_eq!(trivial, 2, "corner ({row},{col}) of {d:?}: {deltas:?}");
            // the (-1,-1) type is a transverse isotopy of the positive
            // push-off; the (-1,+1) type shifts sl+ by -2
            assert!(
                deltas.contains(&(-1, -1, 0)),
                "corner ({row},{col}): {deltas:?}"
            );
            assert!(
                deltas.contains(&(-1, 1, -2)),
                "corner ({row},{col}): {deltas:?}"
            );
            // and the matching destabilizations shift sl+ by 0 and +2
            for q in Quadrant::ALL {
                let m = Move::Stabilize {
                    row,
                    col,
                    quadrant: q,
                };
                let c = moves::classify(&d, &m).unwrap();
                let s = moves::apply(&d, &m).unwrap();
                let w = moves::stabilization_witness((row, col), q);
                let ci = moves::classify(&s, &Move::Destabilize { row: w.0, col: w.1 }).unwrap();
                assert_eq!(ci.delta_sl_plus, -c.delta_sl_plus);
                if c.delta_sl_plus != 0 {
                    assert_eq!(ci.delta_sl_plus.abs(), 2);
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 6");
    println!(
        "PASS criterion 6: every corner of E1/E2 has quadrant deltas {{(0,0) x2, (-1,+1), (-1,-1)}}; (-1,-1) keeps sl+, the other shifts it by 2; {elapsed:?}"
    );
}

#[test]
fn criterion_07_markov_search_desk_scale() {
    let t0 = Instant::now();
    let e1 = gen_unknot_rect();
    let e2 = gen_unknot_braided();

    // one-move certificate between the unknot presentations
    let cfg = SearchConfig {
        max_grid: 4,
        max_depth: 4,
        move_set: MoveSet::Legendrian,
        node_budget: 1_000_000,
    };
    let cert = equivalent(&e1, &e2, &cfg).expect("config valid");
    let path = cert.path().expect("E1 ~ E2");
    assert_eq!(path.len(), 1);

    // rotation images meet at depth 0 (canonical keys coincide)
    for k in 1..e2.n() {
        let r = moves::rotate_theta(&e2, k).unwrap();
        let cert = equivalent(
            &e2,
            &r,
            &SearchConfig::defaults_for(&e2, &r, MoveSet::Legendrian),
        )
        .expect("config valid");
        let path = cert.path().expect("rotation image equivalent");
        assert!(path.len() <= 3);
    }

    // commutation images: E2 itself admits no commutation (all endpoint
    // levels shared), so exercise them on a stabilized unknot and a braid
    // closure where they do apply
    let mut commutation_cases = 0;
    let mut pool: Vec<RectDiagram> = vec![
        moves::stabilize(&e2, (1, 2), Quadrant::NE).unwrap(),
        gen_braid_closure(&[1], 2).unwrap(),
        gen_braid_closure(&[1, -1], 2).unwrap(),
    ];
    pool.push(moves::stabilize(&pool[0], (1, 1), Quadrant::SW).unwrap());
    for d in &pool {
        for z in 1..d.n() {
            if let Ok(img) = moves::h_commute(d, z) {
                let cert = equivalent(
                    d,
                    &img,
                    &SearchConfig::defaults_for(d, &img, MoveSet::Legendrian),
                )
                .expect("config valid");
                let path = cert.path().expect("commutation image equivalent");
                assert!(path.len() <= 3);
                commutation_cases += 1;
            }
        }
        for c in 1..=d.n() {
            if let Ok(img) = moves::v_commute(d, c) {
                let cert = equivalent(
                    d,
                    &img,
                    &SearchConfig::defaults_for(d, &img, MoveSet::Legendrian),
                )
                .expect("config valid");
                let path = cert.path().expect("commutation image equivalent");
                assert!(path.len() <= 3);
                commutation_cases += 1;
            }
        }
    }
    assert!(commutation_cases > 0, "no commutation applied anywhere");

    // negative stabilization: blocked by tb under the Legendrian set,
    // one move under the transverse_plus set
    let neg = corners(&e2)
        .into_iter()
        .flat_map(|(row, col)| {
            Quadrant::ALL.into_iter().map(move |q| Move::Stabilize {
                row,
                col,
                quadrant: q,
            })
        })
        .find(|m| {
            let c = moves::classify(&e2, m).unwrap();
            (c.delta_tb, c.delta_rot) == (-1, -1)
        })
        .expect("negative stabilization exists");
    let stabbed = moves::apply(&e2, &neg).unwrap();

    let leg = SearchConfig::defaults_for(&e2, &stabbed, MoveSet::Legendrian);
    let cert = equivalent(&e2, &stabbed, &leg).expect("config valid");
    match cert.verdict {
        Verdict::NotFoundWithinBounds(NotFoundReason::Obstruction(Obstruction::Tb)) => {}
        other => panic!("expected tb obstruction, got {other:?}"),
    }

    let tp = SearchConfig::defaults_for(&e2, &stabbed, MoveSet::TransversePlus);
    let cert = equivalent(&e2, &stabbed, &tp).expect("config valid");
    let path = cert.path().expect("transverse certificate");
    assert_eq!(path.len(), 1);

    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 7");
    println!(
        "PASS criterion 7: E1~E2 in 1 move; rotation/commutation images within depth 3 ({commutation_cases} commutation cases); tb obstruction vs depth-1 transverse certificate; {elapsed:?}"
    );
}

#[test]
fn criterion_08_contact_exactness() {
    let t0 = Instant::now();
    let samples = 8192;
    let mut max_pre = 0.0f64;
    let mut max_drift = 0.0f64;
    for d in [
        gen_unknot_rect(),
        gen_unknot_braided(),
        gen_braid_closure(&[1], 2).unwrap(),
        gen_torus_knot(2, 3).unwrap(),
    ] {
        let curve = embed(&d, 0.1, 10.0, samples).expect("embed");
        let before = contact_residual(&curve).expect("non-degenerate");
        assert!(
            before.max_residual < 1e-9,
            "embed residual {} on {d:?}",
            before.max_residual
        );
        max_pre = max_pre.max(before.max_residual);

        let shifted = half_space_shift(&curve, 100.0);
        let after = contact_residual(&shifted).expect("non-degenerate");
        let drift = (after.max_residual - before.max_residual).abs();
        assert!(drift < 1e-9, "shift drifted residual by {drift} on {d:?}");
        max_drift = max_drift.max(drift);
        for s in &shifted.samples {
            let y = s.r * s.theta.sin();
            assert!(y > 0.0, "sample left the half-space: y = {y}");
        }
    }
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(1), "criterion 8");
    println!(
        "PASS criterion 8: embed residual <= {max_pre:.3e}, shift drift <= {max_drift:.3e}, all shifted samples at y > 0; {elapsed:?}"
    );
}

#[test]
fn criterion_09_cable_arithmetic() {
    let t0 = Instant::now();
    let c10 = CableSpec::new(1, 0).unwrap();
    assert_eq!(c10.slope(), num_rational::Ratio::new(-2, 11));
    let c11 = CableSpec::new(1, 1).unwrap();
    assert_eq!(c11.slope(), num_rational::Ratio::new(-3, 16));
    assert_eq!(c11.cable_type(), (3, 2));
    let c01 = CableSpec::new(0, 1).unwrap();
    assert_eq!(c01.slope(), num_rational::Ratio::new(-1, 5));
    let elapsed = t0.elapsed();
    println!("PASS criterion 9: slopes -2/11, -3/16 (cable (3,2)), -1/5 exact; {elapsed:?}");
}

#[test]
fn criterion_10_braid_closures() {
    let t0 = Instant::now();
    let trefoil = gen_braid_closure(&[1, 1, 1], 2).unwrap();
    let r = InvariantReport::compute(&trefoil);
    assert_eq!((r.omega, r.winding, r.sl_plus), (3, 2, 1));

    // every generated diagram with n <= 10 agrees with the rasterization
    // oracle on its full crossing list
    let mut checked = 0;
    let mut generated: Vec<RectDiagram> = vec![
        trefoil,
        gen_unknot_rect(),
        gen_unknot_braided(),
        gen_braid_closure(&[1], 2).unwrap(),
        gen_braid_closure(&[-1], 2).unwrap(),
        gen_braid_closure(&[1, -2], 3).unwrap(),
        gen_braid_closure(&[1, 2, 1], 3).unwrap(),
        gen_braid_closure(&[1, 1, -2, 1], 3).unwrap(),
        gen_torus_knot(2, 3).unwrap(),
        gen_torus_knot(3, 2).unwrap(),
        gen_torus_knot(2, 1).unwrap(),
    ];
    generated.retain(|d| d.n() <= 10);
    for d in &generated {
        let mut got: Vec<(usize, usize, i64)> = invariants::crossings(d)
            .iter()
            .map(|c| (c.row, c.col, c.sign))
            .collect();
        got.sort();
        let want: Vec<(usize, usize, i64)> = oracle_crossings(d)
            .iter()
            .map(|c| (c.row, c.col, c.sign))
            .collect();
        assert_eq!(got, want, "crossing oracle disagrees on {d:?}");
        checked += 1;
    }
    let elapsed = t0.elapsed();
    assert_within(elapsed, Duration::from_secs(10), "criterion 10");
    println!(
        "PASS criterion 10: trefoil closure (omega, n, sl+) = (3, 2, 1); crossing lists match the oracle on {checked} generated diagrams; {elapsed:?}"
    );
}
