//! Structural invariants of the (co)homology engine on current algebras.

use curcoh_core::cecohoml::{ce_differential, decompose_cohomology, decompose_homology, Variant};
use curcoh_core::chevalley::{
    build_full_truncation, build_gis, build_gis_adapted, build_gtp_s, evaluation_module, structure_constants, ModuleRep,
    TruncationSpec,
};
use curcoh_core::exactmat::{q, rank};
use curcoh_core::rootdata::{RootSystem, Weight};

fn rs(l: &str) -> RootSystem {
    RootSystem::from_label(l).unwrap()
}

#[test]
fn no_invariants_in_positive_degrees() {
    for l in ["A1", "A2"] {
        let r = rs(l);
        let t = build_gtp_s(&r, 5).unwrap();
        for i in 1..=2 {
            let rep = decompose_cohomology(&r, &t, &ModuleRep::trivial(&t), i).unwrap();
            let zero = [Weight::zero(r.rank)];
            assert_eq!(rep.multiplicity(&zero, None), 0, "{l} H^{i}");
        }
    }
}

#[test]
fn homology_factors_are_bounded_by_n_theta() {
    for l in ["A1", "A2"] {
        let r = rs(l);
        let tables = [
            build_gtp_s(&r, 4).unwrap(),
            build_full_truncation(&r, &TruncationSpec::Polynomial { s: 2 }).unwrap(),
            build_full_truncation(&r, &TruncationSpec::UnitalAugmented { points: vec![q(0), q(1)], s: 2 }).unwrap(),
        ];
        for t in &tables {
            for n in 0..=3 {
                let rep = decompose_homology(&r, t, &ModuleRep::trivial(t), n).unwrap();
                let bound = Weight(r.theta.0.iter().map(|c| c * n as i64).collect());
                for f in &rep.factors {
                    assert!(r.dominance_le(&f.components[0], &bound), "{} H_{n}: {} not ≤ {n}θ", t.name, f.components[0]);
                }
            }
        }
    }
    let r = rs("A1");
    let t = build_gis_adapted(&r, &[q(0), q(1)], 3).unwrap();
    for n in 0..=3 {
        let rep = decompose_homology(&r, &t, &ModuleRep::trivial(&t), n).unwrap();
        let bound = Weight(vec![2 * n as i64]);
        for f in &rep.factors {
            for c in &f.components {
                assert!(r.dominance_le(c, &bound));
            }
        }
    }
}

#[test]
fn composable_differentials_respect_rank_nullity() {
    let r = rs("A1");
    let (gis, _) = build_gis(&r, &[q(0), q(1)], 2).unwrap();
    let full = build_full_truncation(&r, &TruncationSpec::Polynomial { s: 2 }).unwrap();
    let ev = evaluation_module(&r, &Weight(vec![1]), &q(0), &full).unwrap();
    let cases = [(structure_constants(&r), None), (gis, None), (full, Some(ev))];
    for (l, m) in cases {
        let m = m.unwrap_or_else(|| ModuleRep::trivial(&l));
        for variant in [Variant::Homology, Variant::Cohomology] {
            for n in 1..l.dim().min(4) {
                let (first, second) = match variant {
                    Variant::Homology => (ce_differential(&l, &m, n + 1, variant).unwrap(), ce_differential(&l, &m, n, variant).unwrap()),
                    Variant::Cohomology => (ce_differential(&l, &m, n - 1, variant).unwrap(), ce_differential(&l, &m, n, variant).unwrap()),
                };
                assert!(first.mul(&second).is_zero(), "{} {variant:?} n={n}", l.name);
                // rows of the first map lie in the left kernel of the second
                assert!(rank(&first) <= second.rows() - rank(&second));
            }
        }
    }
}

#[test]
fn embeddings_commute_and_weights_split() {
    let r = rs("A2");
    let t = build_gis_adapted(&r, &[q(0), q(1)], 2).unwrap();
    t.check_jacobi().unwrap();
    assert_eq!(t.arity(), Some(2));
    let g = r.lie_dim();
    for i in 0..g {
        for j in 0..g {
            assert!(t.bracket(i, g + j).is_empty());
        }
    }
}
