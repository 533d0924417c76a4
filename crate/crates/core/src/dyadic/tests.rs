use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::figures::{
    core_left_panel, core_middle_expected, core_middle_panel, core_right_panel, horizontal_halves, quarters, rect,
    vertical_halves,
};

/// Independent oracle: every set partition of the bricks whose parts are
/// each exactly a brick.
fn coarsenings_by_partition(u: &Covering) -> Vec<Covering> {
    fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for mut p in partitions(n - 1) {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].push(n - 1);
                out.push(q);
            }
            p.push(vec![n - 1]);
            out.push(p);
        }
        out
    }
    let bricks = u.unlabeled().bricks().to_vec();
    let mut out = Vec::new();
    'outer: for p in partitions(bricks.len()) {
        let mut merged = Vec::new();
        for part in p {
            let members: Vec<&Brick> = part.iter().map(|&i| &bricks[i]).collect();
            let Ok(bound) = bounding_brick(members.iter().copied()) else { continue 'outer };
            let vol: BigRational = members.iter().map(|b| b.volume()).sum();
            if vol != bound.volume() {
                continue 'outer;
            }
            merged.push(bound);
        }
        out.push(Covering::new(u.s(), u.m(), merged).unwrap());
    }
    out.sort_by(|a, b| a.bricks().cmp(b.bricks()));
    out
}

/// Oracle for the meet: the finest coarsening of `u` that `v` also refines.
fn meet_oracle(u: &Covering, v: &Covering) -> Covering {
    let common: Vec<Covering> = enumerate_coarsenings(u, 64)
        .unwrap()
        .into_iter()
        .filter(|w| v.refines(w).unwrap())
        .collect();
    let finest: Vec<&Covering> =
        common.iter().filter(|w| common.iter().all(|x| w.refines(x).unwrap())).collect();
    assert_eq!(finest.len(), 1, "finest common coarsening must be unique");
    finest[0].clone()
}

#[test]
fn trivial_covering_is_valid() {
    let t = Covering::trivial(2, 1);
    assert_eq!(validate_covering(2, 1, t.bricks()), Ok(()));
    assert_eq!(t.bricks(), &[rect(1, (0, 0), (0, 0))]);
}

#[test]
fn core_figure_panels_are_valid() {
    assert_eq!(core_left_panel().len(), 7);
    assert_eq!(core_middle_panel().len(), 5);
    assert_eq!(core_right_panel().len(), 5);
}

#[test]
fn missing_brick_reports_volume_deficit() {
    let bricks: Vec<Brick> = core_left_panel()
        .bricks()
        .iter()
        .filter(|b| **b != rect(1, (1, 0), (2, 3)))
        .cloned()
        .collect();
    assert_eq!(
        validate_covering(2, 1, &bricks),
        Err(DyadicError::VolumeDeficit { block: 1, deficit: BigRational::new(1.into(), 8.into()) })
    );
}

#[test]
fn overlap_and_missing_block_are_reported() {
    let overlap = vec![rect(1, (0, 0), (0, 0)), rect(1, (1, 0), (0, 0))];
    assert!(matches!(validate_covering(2, 1, &overlap), Err(DyadicError::Overlap { .. })));
    let only_first = vec![rect(1, (0, 0), (0, 0))];
    assert_eq!(validate_covering(2, 2, &only_first), Err(DyadicError::MissingBlock { block: 2 }));
    let bad_label = vec![rect(1, (1, 0), (0, 0)).with_label(1), rect(1, (1, 1), (0, 0)).with_label(1)];
    assert!(matches!(validate_covering(2, 1, &bad_label), Err(DyadicError::BadLabel { .. })));
}

#[test]
fn refinement_examples() {
    let e = quarters();
    let t = Covering::trivial(2, 1);
    assert!(e.refines(&t).unwrap());
    assert!(e.refines(&e).unwrap());
    assert!(!vertical_halves().refines(&horizontal_halves()).unwrap());
    assert!(matches!(e.refines(&Covering::trivial(2, 2)), Err(DyadicError::SpaceMismatch { .. })));
}

#[test]
fn join_examples() {
    assert_eq!(vertical_halves().join(&horizontal_halves()).unwrap(), quarters());
    let u = core_left_panel();
    assert_eq!(u.join(&u).unwrap(), u);
    // The left panel already refines the quarters, so joining with ℰ
    // leaves it unchanged (two quarters subdivided, seven bricks).
    let j = u.join(&quarters()).unwrap();
    assert_eq!(j, u);
    assert_eq!(j.len(), 7);
}

#[test]
fn meet_examples() {
    let t = Covering::trivial(2, 1);
    assert_eq!(core_left_panel().meet(&t).unwrap(), t);
    assert_eq!(quarters().meet(&core_left_panel()).unwrap(), quarters());
    assert_eq!(quarters().meet(&core_right_panel()).unwrap(), horizontal_halves());
    assert_eq!(quarters().meet(&core_middle_panel()).unwrap(), core_middle_expected());
    assert_eq!(vertical_halves().meet(&horizontal_halves()).unwrap(), t);
}

#[test]
fn meet_agrees_with_oracle_on_figures() {
    for panel in [core_left_panel(), core_middle_panel(), core_right_panel()] {
        assert_eq!(panel.meet(&quarters()).unwrap(), meet_oracle(&panel, &quarters()));
    }
}

#[test]
fn coarsening_counts() {
    assert_eq!(enumerate_coarsenings(&quarters(), 12).unwrap().len(), 8);
    assert_eq!(enumerate_coarsenings(&Covering::maximal_elementary(1, 1), 12).unwrap().len(), 2);
    let t = Covering::trivial(3, 2);
    assert_eq!(enumerate_coarsenings(&t, 12).unwrap(), vec![t]);
    let big = Covering::maximal_elementary(2, 4);
    assert!(matches!(enumerate_coarsenings(&big, 12), Err(DyadicError::BoundExceeded { .. })));
}

#[test]
fn coarsenings_match_partition_oracle_for_cube() {
    let e3 = Covering::maximal_elementary(3, 1);
    let fast = enumerate_coarsenings(&e3, 12).unwrap();
    assert_eq!(fast, coarsenings_by_partition(&e3));
    // the pinwheel tiling of the cube has no halving hyperplane but is a
    // coarsening of ℰ all the same
    let i = |l, k| DyadicInterval::new(l, k).unwrap();
    let pinwheel = Covering::new(
        3,
        1,
        vec![
            Brick::new(1, vec![i(0, 0), i(1, 0), i(1, 0)]),
            Brick::new(1, vec![i(1, 0), i(0, 0), i(1, 1)]),
            Brick::new(1, vec![i(1, 1), i(1, 1), i(0, 0)]),
            Brick::new(1, vec![i(1, 0), i(1, 1), i(1, 0)]),
            Brick::new(1, vec![i(1, 1), i(1, 0), i(1, 1)]),
        ],
    )
    .unwrap();
    assert!(fast.contains(&pinwheel));
}

#[test]
fn classification_examples() {
    let q = quarters().classify();
    assert!(q.elementary && !q.very_elementary);
    let v = vertical_halves().classify();
    assert!(v.elementary && v.very_elementary);
    let f = core_left_panel().classify();
    assert!(!f.elementary && !f.very_elementary);
}

#[test]
fn maximal_elementary_sizes() {
    let e = Covering::maximal_elementary(1, 1);
    let i = |l, k| DyadicInterval::new(l, k).unwrap();
    assert_eq!(e.bricks(), &[Brick::new(1, vec![i(1, 0)]), Brick::new(1, vec![i(1, 1)])]);
    let e2 = Covering::maximal_elementary(2, 1);
    assert!(e2.bricks().iter().all(|b| b.volume_exponent() == 2));
    assert_eq!(e2.len(), 4);
    assert_eq!(Covering::maximal_elementary(3, 2).len(), 16);
}

#[test]
fn elementary_enumeration_counts() {
    let all = enumerate_elementary(2, false, None).unwrap();
    assert_eq!(all, enumerate_coarsenings(&quarters(), 12).unwrap());
    let by_size: Vec<usize> = (1..=4).map(|n| enumerate_elementary(2, false, Some(n)).unwrap().len()).collect();
    assert_eq!(by_size, vec![1, 2, 4, 1]);
    assert_eq!(enumerate_elementary(2, true, Some(2)).unwrap().len(), 4);
    assert_eq!(enumerate_elementary(1, true, Some(2)).unwrap().len(), 2);
    assert!(enumerate_elementary(4, false, None).is_err());
}

#[test]
fn json_round_trip_is_canonical() {
    let u = core_left_panel();
    let text = serde_json::to_string(&u).unwrap();
    let back: Covering = serde_json::from_str(&text).unwrap();
    assert_eq!(back, u);
    assert!(text.starts_with(r#"{"s":2,"m":1,"bricks":[{"block":1,"edges":[{"l":1,"k":0},"#));
    let broken = text.replace(r#"{"l":2,"k":3}"#, r#"{"l":2,"k":2}"#);
    assert!(serde_json::from_str::<Covering>(&broken).is_err());
}

fn arb_pair() -> impl Strategy<Value = (Covering, Covering)> {
    (1u32..=3, 1u32..=2, any::<u64>()).prop_flat_map(|(s, m, seed)| {
        (m as usize..=10, m as usize..=10).prop_map(move |(a, b)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_covering(&mut rng, s, m, a, 4), random_covering(&mut rng, s, m, b, 4))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws((u, v) in arb_pair()) {
        let j = u.join(&v).unwrap();
        let m = u.meet(&v).unwrap();
        prop_assert!(j.refines(&u).unwrap() && j.refines(&v).unwrap());
        prop_assert!(u.refines(&m).unwrap() && v.refines(&m).unwrap());
        prop_assert_eq!(u.meet(&j).unwrap(), u.clone());
        prop_assert_eq!(u.join(&m).unwrap(), u.clone());
        prop_assert_eq!(u.join(&v).unwrap(), v.join(&u).unwrap());
        prop_assert_eq!(m.clone(), v.meet(&u).unwrap());
        prop_assert!(u.refines(&Covering::trivial(u.s(), u.m())).unwrap());
    }

    #[test]
    fn meet_matches_exhaustive_oracle((u, v) in arb_pair()) {
        prop_assert_eq!(u.meet(&v).unwrap(), meet_oracle(&u, &v));
    }

    #[test]
    fn coarsenings_match_partitions(s in 1u32..=3, seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_covering(&mut rng, s, 1, n, 4);
        prop_assert_eq!(enumerate_coarsenings(&u, 12).unwrap(), coarsenings_by_partition(&u));
    }

    #[test]
    fn elementary_iff_refined_by_maximal(s in 1u32..=3, seed in any::<u64>(), n in 1usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_covering(&mut rng, s, 1, n, 3);
        let by_edges = u.bricks().iter().all(|b| b.edges.iter().all(|e| e.level() <= 1));
        prop_assert_eq!(u.classify().elementary, by_edges);
        prop_assert_eq!(Covering::maximal_elementary(s, 1).refines(&u).unwrap(), by_edges);
    }
}
