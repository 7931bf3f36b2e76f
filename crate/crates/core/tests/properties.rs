use curcoh_core::affine::{affinize, enumerate_wa1, gl_predict};
use curcoh_core::cyclic::{det_m, hc1_cutoff};
use curcoh_core::exactmat::{q, q_frac};
use curcoh_core::extcalc::{ext1, ext2_sl2_twopoint, self_ext2_sl2, ExtQuery, WeightAssignment};
use curcoh_core::rootdata::{RootSystem, Weight};
use proptest::prelude::*;

const LABELS: [&str; 10] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"];

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

fn dominant(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0..=max, rank).prop_map(Weight)
}

fn assignment(rank: usize, max: i64) -> impl Strategy<Value = WeightAssignment> {
    (dominant(rank, max), dominant(rank, max), dominant(rank, max))
        .prop_map(|(a, b, c)| WeightAssignment::new([(q(0), a), (q(1), b), (q_frac(-1, 2), c)]).unwrap())
}

fn distinct_points() -> impl Strategy<Value = (i64, i64, i64)> {
    (-20i64..20, -20i64..20, 1i64..6).prop_filter("distinct", |(a, b, _)| a != b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_dimensions_multiply(l in 0usize..3, a in dominant(2, 3), b in dominant(2, 3)) {
        let r = RootSystem::from_label(["A2", "B2", "G2"][l]).unwrap();
        let rep = r.tensor_decompose(&a, &b).unwrap();
        prop_assert_eq!(rep.dimension(&r).unwrap(), r.weyl_dim(&a).unwrap() * r.weyl_dim(&b).unwrap());
    }

    #[test]
    fn ext1_is_symmetric(pi in assignment(2, 2), pi2 in assignment(2, 2)) {
        let r = RootSystem::from_label("A2").unwrap();
        let fwd = ext1(&ExtQuery::new(r.clone(), pi.clone(), pi2.clone(), 1)).unwrap();
        let bwd = ext1(&ExtQuery::new(r, pi2, pi, 1)).unwrap();
        prop_assert_eq!(fwd, bwd);
    }

    #[test]
    fn ext1_vanishes_off_one_point(pi in assignment(1, 4), pi2 in assignment(1, 4)) {
        let r = RootSystem::from_label("A1").unwrap();
        let pts: std::collections::BTreeSet<_> = pi.support().union(&pi2.support()).cloned().collect();
        let differing = pts.iter().filter(|p| pi.at(p, 1) != pi2.at(p, 1)).count();
        let e = ext1(&ExtQuery::new(r, pi, pi2, 1)).unwrap();
        if differing >= 2 {
            prop_assert_eq!(e, 0);
        }
    }

    #[test]
    fn ext2_sl2_swap_symmetry(l in (0i64..6, 0i64..6), m in (0i64..6, 0i64..6), (a, b, d) in distinct_points()) {
        prop_assume!(l != m);
        let (pa, pb) = (q_frac(a, d), q_frac(b, d));
        let base = ext2_sl2_twopoint((&w(&[l.0]), &w(&[l.1])), (&w(&[m.0]), &w(&[m.1])), (&pa, &pb)).unwrap();
        let swapped = ext2_sl2_twopoint((&w(&[l.1]), &w(&[l.0])), (&w(&[m.1]), &w(&[m.0])), (&pb, &pa)).unwrap();
        let reversed = ext2_sl2_twopoint((&w(&[m.0]), &w(&[m.1])), (&w(&[l.0]), &w(&[l.1])), (&pa, &pb)).unwrap();
        prop_assert_eq!(base, swapped);
        prop_assert_eq!(base, reversed);
    }

    #[test]
    fn self_ext2_swap_symmetry(l in (0i64..8, 0i64..8), (a, b, d) in distinct_points()) {
        let (pa, pb) = (q_frac(a, d), q_frac(b, d));
        let x = self_ext2_sl2((&w(&[l.0]), &w(&[l.1])), (&pa, &pb)).unwrap();
        let y = self_ext2_sl2((&w(&[l.1]), &w(&[l.0])), (&pb, &pa)).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn assignment_roundtrip(pi in assignment(3, 5)) {
        let back: WeightAssignment = pi.to_string().parse().unwrap();
        prop_assert_eq!(back, pi);
    }

    #[test]
    fn det_m_formula(d in 4usize..24) {
        prop_assert_eq!(det_m(d).unwrap(), -(2 * d as i64 + 1));
    }

    #[test]
    fn hc1_independent_of_points((a, b, d) in distinct_points(), cutoff in 5usize..10) {
        let base = hc1_cutoff(&[q(0), q(1)], cutoff).unwrap();
        let moved = hc1_cutoff(&[q_frac(a, d), q_frac(b, d)], cutoff).unwrap();
        prop_assert_eq!(base.dim, moved.dim);
        prop_assert_eq!(base.survivors, moved.survivors);
    }

    #[test]
    fn coset_elements_are_consistent(l in 0usize..LABELS.len(), len in 0usize..4) {
        let a = affinize(&RootSystem::from_label(LABELS[l]).unwrap());
        let els = enumerate_wa1(&a, len).unwrap();
        prop_assert_eq!(els.iter().filter(|e| e.length == 0).count(), 1);
        for e in &els {
            prop_assert_eq!(e.word.len(), e.length);
            prop_assert!(e.lambda_w.is_dominant());
            prop_assert!(e.d_w >= 0);
            prop_assert_eq!(a.split(&e.dot_value), (e.lambda_w.clone(), e.d_w));
        }
        let rep = gl_predict(&a, len).unwrap();
        prop_assert_eq!(rep.factors.len(), els.iter().filter(|e| e.length == len).count());
    }

    #[test]
    fn reports_serialize_deterministically(l in 0usize..LABELS.len(), j in 0usize..3) {
        let a = affinize(&RootSystem::from_label(LABELS[l]).unwrap());
        let x = serde_json::to_string(&gl_predict(&a, j).unwrap()).unwrap();
        let y = serde_json::to_string(&gl_predict(&a, j).unwrap()).unwrap();
        prop_assert_eq!(x, y);
    }
}
