use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn big(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn hollow_triangle() -> SimplicialComplex {
    SimplicialComplex::generated_by(vec![vec![0, 1], vec![1, 2], vec![0, 2]])
}

fn points(ids: &[u32]) -> SimplicialComplex {
    SimplicialComplex::generated_by(ids.iter().map(|&v| vec![v]))
}

#[test]
fn smith_examples() {
    let f = smith_normal_form(&big(&[&[1, 0], &[0, 2]]));
    assert_eq!(f.invariants, ints(&[1, 2]));
    let m = big(&[&[2, 4], &[6, 8]]);
    let f = smith_normal_form(&m);
    assert_eq!(f.invariants, ints(&[2, 4]));
    assert!(f.verify(&m));
    let z = big(&[&[0, 0, 0], &[0, 0, 0]]);
    let f = smith_normal_form(&z);
    assert!(f.invariants.is_empty());
    assert!(f.verify(&z));
}

#[test]
fn smith_torsion_needs_gcd_step() {
    // diag(2, 3) is equivalent to diag(1, 6)
    let m = big(&[&[2, 0], &[0, 3]]);
    let f = smith_normal_form(&m);
    assert_eq!(f.invariants, ints(&[1, 6]));
    assert!(f.verify(&m));
}

#[test]
fn sparse_matches_dense() {
    let m = SparseMatrix::new(3, vec![vec![(0, 2), (1, 6)], vec![(0, 4), (1, 8)], vec![(2, 1)]]);
    assert_eq!(elimination_invariants(&m), ints(&[1, 2, 4]));
}

#[test]
fn point_and_triangle() {
    let p = points(&[7]);
    let h = homology(&p, true).unwrap();
    assert!(h.is_acyclic());
    let h = homology(&hollow_triangle(), true).unwrap();
    assert_eq!(h.betti(1), 1);
    assert_eq!(h.betti(0), 0);
    assert_eq!(h.connectivity(), Some(0));
    let filled = SimplicialComplex::generated_by(vec![vec![0, 1, 2]]);
    assert!(homology(&filled, true).unwrap().is_acyclic());
}

#[test]
fn empty_complex_reduced() {
    let h = homology(&SimplicialComplex::empty(), true).unwrap();
    assert_eq!(h.groups, vec![HomologyGroup { dim: -1, betti: 1, torsion: vec![] }]);
    let v = connectivity_report(&SimplicialComplex::empty(), -1).unwrap();
    assert!(!v.pass);
    assert_eq!(v.witness, Some(Witness::Empty));
    assert!(connectivity_report(&SimplicialComplex::empty(), -2).unwrap().pass);
}

#[test]
fn projective_plane_torsion() {
    // six-vertex triangulation of RP²
    let rp2 = SimplicialComplex::generated_by(vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 5, 1],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![3, 4, 1],
        vec![4, 5, 2],
        vec![5, 1, 3],
    ]);
    assert_eq!(rp2.counts(), vec![6, 15, 10]);
    let h = homology(&rp2, false).unwrap();
    assert_eq!(h.betti(0), 1);
    assert_eq!(h.group(1).unwrap().torsion, ints(&[2]));
    assert_eq!(h.betti(2), 0);
    assert_eq!(rp2.euler_characteristic(), 1);
}

#[test]
fn relative_examples() {
    let filled = SimplicialComplex::generated_by(vec![vec![0, 1, 2]]);
    let h = relative_homology(&filled, &hollow_triangle()).unwrap();
    assert_eq!(h.betti(2), 1);
    assert_eq!(h.betti(1), 0);
    assert_eq!(h.betti(0), 0);
    let h = relative_homology(&filled, &filled).unwrap();
    assert!(h.first_nonzero().is_none());
    assert!(relative_homology(&hollow_triangle(), &filled).is_err());
}

#[test]
fn cone_pair_is_shifted_reduced_homology() {
    // H_j(cone L, L) ≅ H̃_{j-1}(L) by the long exact sequence
    let l = hollow_triangle().union(&points(&[5]));
    let apex = 9;
    let cone = SimplicialComplex::generated_by(
        l.all_simplices().map(|s| s.iter().copied().chain([apex]).collect::<Vec<u32>>()),
    );
    let rel = relative_homology(&cone, &l).unwrap();
    let red = homology(&l, true).unwrap();
    for d in 0..=2 {
        assert_eq!(rel.betti(d), red.betti(d - 1), "degree {d}");
    }
}

#[test]
fn order_complex_examples() {
    let k = order_complex(&FinitePoset::chain(2), None, 100).unwrap();
    assert_eq!(k.counts(), vec![2, 1]);
    let k = order_complex(&FinitePoset::antichain(2), None, 100).unwrap();
    assert_eq!(k.counts(), vec![2]);
    // faces of a triangle boundary: vertices 0,1,2 and edges 3={0,1}, 4={1,2}, 5={0,2}
    let p = FinitePoset::from_relations(6, &[(0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)]).unwrap();
    let k = order_complex(&p, None, 100).unwrap();
    assert_eq!(k.counts(), vec![6, 6]);
    assert_eq!(homology(&k, true).unwrap().betti(1), 1);
    assert!(order_complex(&FinitePoset::chain(10), None, 50).is_err());
}

#[test]
fn order_complex_skeleton() {
    let k = order_complex(&FinitePoset::chain(4), Some(1), 1000).unwrap();
    assert_eq!(k.counts(), vec![4, 6]);
    assert_eq!(k.skeleton(), Some(1));
    let h = homology(&k, true).unwrap();
    assert_eq!(h.reliable_through, 0);
    assert!(h.vanishes_through(1).is_err());
    let k = order_complex(&FinitePoset::chain(2), Some(3), 1000).unwrap();
    assert_eq!(k.skeleton(), None);
}

#[test]
fn matching_k4_by_hand() {
    // edges of K4 as vertices: 0=12 1=13 2=14 3=23 4=24 5=34; disjoint pairs 12|34, 13|24, 14|23
    let m = SimplicialComplex::generated_by(vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
    let h = homology(&m, true).unwrap();
    assert_eq!(h.betti(0), 2);
    let v = connectivity_report(&m, 0).unwrap();
    assert!(!v.pass);
    assert_eq!(v.witness, Some(Witness::Disconnected { a: 0, b: 1 }));
}

#[test]
fn joins() {
    let e = join_complex(&points(&[0]), &points(&[1])).unwrap();
    assert_eq!(e.counts(), vec![2, 1]);
    let circle = join_complex(&points(&[0, 1]), &points(&[2, 3])).unwrap();
    assert_eq!(circle.counts(), vec![4, 4]);
    assert_eq!(homology(&circle, true).unwrap().betti(1), 1);
    let cone = join_complex(&hollow_triangle(), &points(&[7])).unwrap();
    assert!(homology(&cone, true).unwrap().is_acyclic());
    assert!(join_complex(&points(&[0]), &points(&[0])).is_err());
}

#[test]
fn cycle_witness_on_circle() {
    let v = connectivity_report(&hollow_triangle(), 1).unwrap();
    assert!(!v.pass);
    assert_eq!(v.failing_dim, Some(1));
    let Some(Witness::Cycle { chain, .. }) = v.witness else { panic!("expected a cycle") };
    assert_eq!(chain.len(), 3);
    assert!(chain.iter().all(|(_, c)| c.abs() == 1));
}

#[test]
fn face_closure_enforced() {
    assert!(SimplicialComplex::from_simplices(vec![vec![0, 1]]).is_err());
    assert!(SimplicialComplex::from_simplices(vec![vec![0, 0]]).is_err());
    let k = SimplicialComplex::from_simplices(vec![vec![0], vec![1], vec![1, 0]]).unwrap();
    assert_eq!(k.simplices(1), &[vec![0, 1]]);
    let json = serde_json::to_string(&k).unwrap();
    assert_eq!(json, r#"{"vertices":[0,1],"simplices":[[0],[1],[0,1]]}"#);
    let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
    assert_eq!(back, k);
}

#[test]
fn link_of_vertex() {
    let filled = SimplicialComplex::generated_by(vec![vec![0, 1, 2], vec![0, 2, 3]]);
    let lk = filled.link(0);
    assert_eq!(lk.counts(), vec![3, 2]);
}

#[test]
fn contraction_examples() {
    let one = FinitePoset::chain(1);
    assert!(contraction_certificate(&one, &[], 0).is_ok());
    let two = FinitePoset::antichain(2);
    assert!(contraction_certificate(&two, &[], 0).is_err());
    assert!(contraction_certificate(&two, &[vec![0, 0]], 0).is_err());
    assert!(contraction_certificate(&two, &[vec![1, 1]], 1).is_err());
    // V shape 0 < 2 > 1: id ≤ const 2
    let v = FinitePoset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
    assert_eq!(contraction_certificate(&v, &[vec![2, 2, 2]], 2).unwrap(), vec![Step::Above]);
    assert!(matches!(
        contraction_certificate(&v, &[vec![1, 0, 2]], 2),
        Err(ComplexError::NotComparable { .. }) | Err(ComplexError::NotConstant { .. })
    ));
    assert!(contraction_certificate(&FinitePoset::antichain(0), &[], 0).is_err());
}

#[test]
fn poset_validation() {
    assert!(FinitePoset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
    assert!(FinitePoset::from_upsets(vec![vec![1], vec![2], vec![]]).is_err());
    let p = FinitePoset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
    assert!(p.lt(0, 2));
    assert_eq!(p.open_interval(0, 2), vec![1]);
    assert_eq!(p.opposite().minimal_elements(), vec![2]);
    let (sub, ids) = p.subposet(&[2, 0]);
    assert!(sub.lt(1, 0));
    assert_eq!(ids, vec![2, 0]);
}

fn random_complex(vertices: u32, facets: Vec<Vec<u32>>) -> SimplicialComplex {
    let mut k = SimplicialComplex::generated_by(facets);
    if k.is_empty() {
        k = points(&[vertices]);
    }
    k
}

fn arb_complex(offset: u32) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..6, 1..4), 1..6).prop_map(move |fs| {
        random_complex(offset, fs.into_iter().map(|s| s.into_iter().map(|v| v + offset).collect()).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_squares_to_zero(k in arb_complex(0)) {
        prop_assert!(ChainComplex::of_complex(&k, true).is_valid());
        prop_assert!(ChainComplex::of_complex(&k, false).is_valid());
    }

    #[test]
    fn smith_certificate_multiplies_back(m in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 1..5)) {
        let m: IntMatrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let f = smith_normal_form(&m);
        prop_assert!(f.verify(&m));
        let cols = (0..3).map(|j| m.iter().enumerate().filter_map(|(i, r)| {
            let x = i64::try_from(&r[j]).unwrap();
            (x != 0).then_some((i as u32, x))
        }).collect()).collect();
        prop_assert_eq!(elimination_invariants(&SparseMatrix::new(m.len(), cols)), f.invariants);
    }

    #[test]
    fn euler_characteristic_matches_betti(k in arb_complex(0)) {
        let h = homology(&k, false).unwrap();
        let chi: i64 = h.groups.iter().map(|g| if g.dim % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
        prop_assert_eq!(chi, k.euler_characteristic());
    }

    #[test]
    fn join_connectivity_adds(k in arb_complex(0), l in arb_complex(100)) {
        let a = homology(&k, true).unwrap().connectivity();
        let b = homology(&l, true).unwrap().connectivity();
        let j = join_complex(&k, &l).unwrap();
        let hj = homology(&j, true).unwrap();
        match (a, b) {
            (Some(a), Some(b)) => prop_assert!(hj.vanishes_through(a + b + 2).unwrap()),
            _ => prop_assert!(hj.is_acyclic()),
        }
    }
}
