//! Closed-form values for small cases, checked against the engines.

use curcoh_core::affine::{affinize, enumerate_wa1, gl_predict, table1};
use curcoh_core::cecohoml::decompose_cohomology;
use curcoh_core::chevalley::{build_gtp_s, ModuleRep};
use curcoh_core::cyclic::{det_m, hc1_cutoff};
use curcoh_core::exactmat::q;
use curcoh_core::rootdata::{Factor, RootSystem, Weight};

fn rs(l: &str) -> RootSystem {
    RootSystem::from_label(l).unwrap()
}

#[test]
fn h0_and_h1_of_positive_part() {
    for l in ["A1", "A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
        let r = rs(l);
        let a = affinize(&r);
        let h0 = gl_predict(&a, 0).unwrap();
        assert_eq!(h0.factors, vec![Factor { components: vec![Weight::zero(r.rank)], mult: 1, t_degree: Some(0) }]);
        // s₀·0 = θ − δ: the coadjoint module in t-degree 1
        let h1 = gl_predict(&a, 1).unwrap();
        assert_eq!(h1.factors, vec![Factor { components: vec![r.dual_weight(&r.theta)], mult: 1, t_degree: Some(1) }]);
    }
}

#[test]
fn h2_of_positive_part_by_type() {
    let a1 = gl_predict(&affinize(&rs("A1")), 2).unwrap();
    assert_eq!(a1.factors, vec![Factor { components: vec![Weight(vec![4])], mult: 1, t_degree: Some(3) }]);
    for l in ["A2", "A3", "A5", "B2", "B4", "C3", "C5", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
        let r = rs(l);
        let a = affinize(&r);
        let mut expected: Vec<Factor> = table1(&a)
            .into_iter()
            .map(|j| {
                let two_theta = r.theta.add(&r.theta);
                Factor { components: vec![r.dual_weight(&two_theta.sub(&r.simple_root(j - 1)))], mult: 1, t_degree: Some(2) }
            })
            .collect();
        expected.sort();
        assert_eq!(gl_predict(&a, 2).unwrap().factors, expected, "{l}");
    }
}

#[test]
fn length_two_words_are_s0_sj() {
    for l in ["A1", "A4", "B3", "G2", "E8"] {
        let a = affinize(&rs(l));
        let js = table1(&a);
        for e in enumerate_wa1(&a, 2).unwrap().into_iter().filter(|e| e.length == 2) {
            assert_eq!(e.word[0], 0);
            assert!(js.contains(&e.word[1]));
        }
    }
}

#[test]
fn sl2_h2_of_positive_part_from_engine() {
    let r = rs("A1");
    let l = build_gtp_s(&r, 6).unwrap();
    let rep = decompose_cohomology(&r, &l, &ModuleRep::trivial(&l), 2).unwrap();
    assert_eq!(rep.multiplicity(&[Weight(vec![4])], Some(3)), 1);
}

#[test]
fn hc1_dimension_two() {
    let pts = [q(0), q(1)];
    assert_eq!(hc1_cutoff(&pts, 5).unwrap().survivors, vec!["(2,1)∧(1,1)"]);
    assert_eq!(hc1_cutoff(&pts, 14).unwrap().dim, 2);
}

#[test]
fn det_m_is_minus_odd_degree() {
    for d in 4..=12 {
        assert_eq!(det_m(d).unwrap(), -(2 * d as i64 + 1));
    }
}
