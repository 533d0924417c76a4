use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::dyadic::{enumerate_coarsenings, Covering};
use crate::figures::{
    core_left_panel, core_middle_expected, core_middle_panel, core_right_panel, f1, f2, f2_swapped, horizontal_halves,
    quarters, vertical_halves,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_point<R: Rng>(rng: &mut R, s: u32) -> Vec<BigRational> {
    (0..s).map(|_| q(rng.gen_range(0..997), 997)).collect()
}

#[test]
fn f1_evaluates_by_hand() {
    let (block, p) = f1().evaluate(1, &[q(1, 3), q(1, 3)]).unwrap();
    assert_eq!(block, 1);
    assert_eq!(p, vec![q(5, 6), q(2, 3)]);
    let (block, p) = f1().evaluate(1, &[q(3, 4), q(3, 4)]).unwrap();
    assert_eq!((block, p), (1, vec![q(1, 4), q(7, 8)]));
}

#[test]
fn f2_cuts_f1_horizontally() {
    let x1 = PVertex::canonicalize(&f1()).unwrap();
    let x2 = PVertex::canonicalize(&f2()).unwrap();
    let cmp = x1.le(&x2).expect("f1 below f2");
    assert_eq!(cmp.covering.unlabeled(), horizontal_halves());
    assert!(x1.elem_le(&x2) && x1.velem_le(&x2) && x1.lt(&x2));
    assert!(x2.le(&x1).is_none());
    let swapped = PVertex::canonicalize(&f2_swapped()).unwrap();
    assert_eq!(swapped, x2);
    assert!(swapped.same_vertex(&x2));
}

#[test]
fn group_laws_on_figure_maps() {
    let f = f1();
    let id = DyadicMap::identity(2, 1);
    assert!(DyadicMap::compose(&f, &f.inverse()).unwrap().equals(&id).unwrap());
    assert!(DyadicMap::compose(&f.inverse(), &f).unwrap().equals(&id).unwrap());
    assert!(DyadicMap::compose(&id, &f).unwrap().equals(&f).unwrap());
    assert!(!f.equals(&id).unwrap());
    assert_eq!(DyadicMap::compose(&f, &f2()).unwrap_err(), MapError::SpaceMismatch { left: (2, 1), right: (2, 2) });
}

#[test]
fn record_round_trip() {
    let rec = f2().to_record();
    let text = serde_json::to_string(&rec).unwrap();
    let back = DyadicMap::from_record(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(back.equals(&f2()).unwrap());
}

#[test]
fn cores_of_figure_panels() {
    assert_eq!(core_covering(&core_left_panel()).unwrap(), quarters());
    assert_eq!(core_covering(&core_middle_panel()).unwrap(), core_middle_expected());
    assert_eq!(core_covering(&core_right_panel()).unwrap(), horizontal_halves());
    for u in [core_left_panel(), core_middle_panel(), core_right_panel()] {
        let c = core_covering(&u).unwrap();
        assert!(c.is_elementary());
        assert!(u.refines(&c).unwrap());
    }
}

#[test]
fn elementary_core_is_below_both() {
    let x = PVertex::root(2);
    for u in [core_left_panel(), core_middle_panel(), core_right_panel()] {
        let y = x.split(&u).unwrap();
        let c = x.elementary_core(&y).unwrap();
        assert!(x.elem_le(&c));
        assert!(c.le(&y).is_some());
    }
}

#[test]
fn arrows_are_classified() {
    let k = DyadicMap::splitting(&quarters()).classify_arrow();
    assert!(k.is_splitting() && !k.is_merging() && k.elementary && !k.very_elementary);
    let k = DyadicMap::splitting(&core_left_panel()).classify_arrow();
    assert!(k.is_splitting() && !k.elementary);
    let k = DyadicMap::splitting(&vertical_halves()).inverse().classify_arrow();
    assert!(k.is_merging() && k.very_elementary);
    let k = f1().classify_arrow();
    assert!(!k.is_splitting() && !k.is_merging());
}

#[test]
fn stabilizers_have_factorial_size() {
    let root = PVertex::root(2);
    let cases = [(Covering::trivial(2, 1), 1), (vertical_halves(), 2), (core_middle_expected(), 6), (quarters(), 24)];
    for (u, expected) in cases {
        let x = root.split(&u).unwrap();
        let stab = x.stabilizer(6).unwrap();
        assert_eq!(stab.len(), expected);
        for g in &stab {
            assert!(x.act(g).unwrap().same_vertex(&x));
        }
        for i in 0..stab.len() {
            for j in i + 1..stab.len() {
                assert!(!stab[i].equals(&stab[j]).unwrap());
            }
        }
    }
    assert!(root.split(&quarters()).unwrap().stabilizer(3).is_err());
}

#[test]
fn interval_matches_coarsenings() {
    let x = PVertex::root(2);
    let z = x.split(&core_middle_panel()).unwrap();
    let listed = x.interval(&z, 12).unwrap();
    assert_eq!(listed.len(), enumerate_coarsenings(&core_middle_panel(), 12).unwrap().len());
    for (w, v) in &listed {
        assert!(x.le(v).is_some() && v.le(&z).is_some());
        assert_eq!(v.t() as usize, w.len());
    }
}

#[test]
fn transporter_moves_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_vertex(&mut rng, 2, 1, 4, 3);
        let y = random_vertex(&mut rng, 2, 1, 5, 3);
        let g = x.transporter(&y).unwrap();
        assert!(x.act(&g).unwrap().same_vertex(&y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_matches_pointwise(seed in any::<u64>(), s in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(&mut rng, s, 5, 3);
        let g = random_element(&mut rng, s, 4, 3);
        let h = random_element(&mut rng, s, 3, 3);
        let gf = DyadicMap::compose(&g, &f).unwrap();
        let left = DyadicMap::compose(&h, &gf).unwrap();
        let right = DyadicMap::compose(&DyadicMap::compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert!(left.equals(&right).unwrap());
        prop_assert!(DyadicMap::compose(&f.inverse(), &f).unwrap().equals(&DyadicMap::identity(s, 1)).unwrap());
        for _ in 0..10 {
            let p = random_point(&mut rng, s);
            let (b1, p1) = f.evaluate(1, &p).unwrap();
            let direct = g.evaluate(b1, &p1).unwrap();
            prop_assert_eq!(gf.evaluate(1, &p).unwrap(), direct);
            let (_, back) = f.inverse().evaluate(b1, &p1).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn reduction_preserves_the_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(&mut rng, 2, 6, 4);
        prop_assert!(f.reduced().equals(&f).unwrap());
        let x = PVertex::canonicalize(&f).unwrap();
        let trivial = f.equals(&DyadicMap::identity(2, 1)).unwrap();
        prop_assert_eq!(x.same_vertex(&PVertex::root(2)), trivial);
        prop_assert!(x.same_vertex(&PVertex::canonicalize(&f.reduced()).unwrap()));
    }

    #[test]
    fn canonical_form_ignores_block_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_vertex(&mut rng, 2, 3, 4, 3);
        let permuted = x.map().permute_codomain(&[3, 1, 2]).unwrap();
        let y = PVertex::canonicalize(&permuted).unwrap();
        prop_assert!(y.same_vertex(&x));
        prop_assert!(x.le(&y).is_some());
    }
}
