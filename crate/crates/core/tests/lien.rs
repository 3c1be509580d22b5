mod common;

use std::sync::Arc;

use kernelsplit::catalog::{self, GroupSpec};
use kernelsplit::lien::{
    a6_counterexample, all_kappas, check_hypothesis, enumerate_extensions_order2_gamma, is_neutral,
    make_lien, pullback_extension, quotient_lien, section_witness, split_via_tower,
    verify_section_witness, Lien, TowerStep,
};
use kernelsplit::structure::{characteristic_members, is_characteristically_simple};
use kernelsplit::{AutCoord, AutData, PermGroup, Permutation};
use proptest::prelude::*;

fn build(text: &str) -> PermGroup {
    GroupSpec::parse(text).unwrap().build().unwrap()
}

fn aut_of(text: &str) -> Arc<AutData> {
    Arc::new(AutData::compute(&build(text)).unwrap())
}

fn lien(aut: &Arc<AutData>, gamma: &str, classes: &[u32]) -> Lien {
    Lien::from_generator_classes(aut.clone(), build(gamma), classes).unwrap()
}

fn class(aut: &AutData, name: &str) -> u32 {
    aut.class_by_name(name).unwrap().index as u32
}

/// Homomorphism over all of Gamma x Gamma, classes equal kappa, each value an
/// automorphism checked on every pair of F's elements.
fn check_lift(l: &Lien, lift: &[AutCoord]) {
    let aut = l.aut();
    let gt = l.gamma_table();
    let perms: Vec<Permutation> = lift.iter().map(|&a| aut.coord_to_perm(a)).collect();
    for g in 0..gt.len() {
        for h in 0..gt.len() {
            let gh = gt
                .index_of(&gt.element(g as u32).compose(gt.element(h as u32)))
                .unwrap();
            assert_eq!(perms[g].compose(&perms[h]), perms[gh as usize]);
        }
        assert_eq!(aut.classify(&perms[g]).unwrap().class, l.kappa()[g]);
    }
    let t = aut.table();
    for a in &perms {
        for x in 0..t.len() as u32 {
            for y in (0..t.len() as u32).step_by(7) {
                let xy = t.index_of(&t.element(x).compose(t.element(y))).unwrap();
                assert_eq!(
                    t.index_of(&t.element(a.image(x)).compose(t.element(a.image(y)))),
                    Some(a.image(xy))
                );
            }
        }
    }
}

#[test]
fn make_lien_examples() {
    let a5 = build("A5");
    let c2 = build("C2");
    assert!(make_lien(&a5, &c2, vec![0, 0]).is_ok());
    assert!(make_lien(&a5, &c2, vec![0, 1]).is_ok());
    assert!(make_lien(&a5, &build("C3"), vec![0, 1, 1]).is_err());
    let aut = aut_of("A5");
    assert!(Lien::from_generator_classes(aut.clone(), build("C3"), &[1]).is_err());
    assert!(Lien::from_generator_classes(aut, c2, &[2]).is_err());
    assert!(make_lien(&build("C3"), &build("C2"), vec![0, 0]).is_err());
}

#[test]
fn pullback_shapes() {
    let aut = aut_of("A5");
    let trivial = pullback_extension(&lien(&aut, "C2", &[0])).unwrap();
    assert_eq!(trivial.e.order(), 120);
    let direct = catalog::direct_product(&build("A5"), &build("C2"))
        .unwrap()
        .group;
    assert_eq!(
        common::class_sizes(trivial.e.generators()),
        common::class_sizes(direct.generators())
    );

    let twisted = pullback_extension(&lien(&aut, "C2", &[1])).unwrap();
    assert_eq!(twisted.e.order(), 120);
    assert_eq!(
        common::class_sizes(twisted.e.generators()),
        common::class_sizes(build("S5").generators())
    );
    assert_eq!(twisted.projection.kernel().unwrap().order(), 60);
}

#[test]
fn a6_m_extension_has_no_complement() {
    let aut = aut_of("A6");
    let l = lien(&aut, "C2", &[class(&aut, "m")]);
    let ext = pullback_extension(&l).unwrap();
    assert_eq!(ext.e.order(), 720);
    let elems = common::closure(ext.e.generators());
    let involutions = elems.iter().filter(|x| x.order() == 2).count();
    assert_eq!(involutions, 45, "every involution lies in A6");
    assert!(ext.section.is_none());
    assert!(!is_neutral(&l).unwrap().neutral);
}

#[test]
fn neutral_examples() {
    let aut = aut_of("A5");
    for classes in [[0], [1]] {
        let l = lien(&aut, "C2", &classes);
        let v = is_neutral(&l).unwrap();
        assert!(v.neutral);
        check_lift(&l, v.lift.as_ref().unwrap());
    }
    let aut = aut_of("A6");
    for name in ["s", "p"] {
        let l = lien(&aut, "C2", &[class(&aut, name)]);
        let v = is_neutral(&l).unwrap();
        assert!(v.neutral, "{name}");
        check_lift(&l, v.lift.as_ref().unwrap());
    }
}

#[test]
fn quotient_lien_validation() {
    let aut = aut_of("S3 x S3");
    let l = lien(&aut, "C2", &[0]);
    let n = aut.table().len() as u32;
    assert!(quotient_lien(&l, &[0]).is_err());
    assert!(quotient_lien(&l, &(0..n).collect::<Vec<_>>()).is_err());
    let chars = characteristic_members(&aut);
    let proper: Vec<&Vec<u32>> = chars
        .iter()
        .filter(|s| s.len() > 1 && s.len() < n as usize)
        .collect();
    assert!(!proper.is_empty());
    for s in proper {
        match quotient_lien(&l, s) {
            Ok(q) => assert_eq!(q.lien.f().order() as usize * s.len(), n as usize),
            Err(e) => assert!(
                matches!(e, kernelsplit::GroupError::NontrivialCenter(_)),
                "{e}"
            ),
        }
    }
}

#[test]
fn tower_on_characteristically_simple_kernels() {
    for text in ["A5", "A5 x A5"] {
        let aut = aut_of(text);
        assert!(is_characteristically_simple(aut.base_group(), &aut).unwrap());
        for k in 1..aut.out_order().min(4) as u32 {
            if aut.out_mul(k as usize, k as usize) != 0 {
                continue;
            }
            let l = lien(&aut, "C2", &[k]);
            let out = split_via_tower(&l).unwrap();
            assert!(out.split);
            assert!(out.hypothesis.satisfied);
            assert!(matches!(
                out.trace.as_slice(),
                [TowerStep::Base {
                    aut_split: true,
                    ..
                }]
            ));
            check_lift(&l, out.lift.as_ref().unwrap());
        }
    }
}

#[test]
fn swap_lien_splits_in_base_case() {
    let aut = aut_of("A5 x A5");
    let l = lien(&aut, "C2", &[class(&aut, "swap")]);
    let out = split_via_tower(&l).unwrap();
    assert!(out.split);
    assert_eq!(out.trace.len(), 1);
    check_lift(&l, out.lift.as_ref().unwrap());
    assert!(is_neutral(&l).unwrap().neutral);
}

#[test]
fn a6_tower_reports_hypothesis_failure() {
    let aut = aut_of("A6");
    let l = lien(&aut, "C2", &[class(&aut, "m")]);
    let out = split_via_tower(&l).unwrap();
    assert!(!out.split);
    assert!(!out.hypothesis.satisfied);
    assert!(out.hypothesis.anti_solvable);
    assert!(!check_hypothesis(&build("A6")).unwrap().satisfied);
    assert!(check_hypothesis(&build("A5 x A5")).unwrap().satisfied);
}

#[test]
fn tower_descends_through_characteristic_subgroup() {
    let f = catalog::direct_product(&build("S3"), &PermGroup::new(common::dihedral(7)).unwrap())
        .unwrap()
        .group;
    let aut = Arc::new(AutData::compute(&f).unwrap());
    assert!(aut.is_centerless());
    let gamma = build("C3");
    let kappas = all_kappas(&aut, &gamma.element_table().unwrap());
    assert!(kappas.len() > 1);
    for kappa in kappas {
        let l = Lien::new(aut.clone(), gamma.clone(), kappa).unwrap();
        let out = split_via_tower(&l).unwrap();
        assert!(out.split);
        assert!(!out.hypothesis.satisfied);
        assert!(matches!(out.trace[0], TowerStep::Descend { order: 84, .. }));
        check_lift(&l, out.lift.as_ref().unwrap());
        assert_eq!(is_neutral(&l).unwrap().neutral, out.split);
    }
}

#[test]
fn extension_counts() {
    let aut = aut_of("A5");
    assert_eq!(
        enumerate_extensions_order2_gamma(&lien(&aut, "C2", &[1]))
            .unwrap()
            .classes,
        1
    );
    assert_eq!(
        enumerate_extensions_order2_gamma(&lien(&aut, "C2", &[0]))
            .unwrap()
            .classes,
        1
    );
    let aut = aut_of("A6");
    for c in 1..4 {
        assert_eq!(
            enumerate_extensions_order2_gamma(&lien(&aut, "C2", &[c]))
                .unwrap()
                .classes,
            1
        );
    }
    let aut = aut_of("PSL(2,7)");
    assert_eq!(
        enumerate_extensions_order2_gamma(&lien(&aut, "C2", &[1]))
            .unwrap()
            .classes,
        1
    );
    assert!(enumerate_extensions_order2_gamma(&lien(&aut, "C3", &[0])).is_err());
}

#[test]
fn counterexample_report() {
    let r = a6_counterexample().unwrap();
    assert_eq!(r.classes.len(), 3);
    assert_eq!(r.non_neutral, 1);
    assert!(r.involution_in_m_coset.is_none());
    let m = r.classes.iter().find(|c| c.label == r.m_class).unwrap();
    assert!(!m.neutral);
    assert!(m.min_element_order > 2);
    for c in r.classes.iter().filter(|c| c.label != r.m_class) {
        assert!(c.neutral);
        assert_eq!(c.min_element_order, 2);
    }
    assert!(r.classes.iter().all(|c| c.extension_classes == 1));
}

#[test]
fn section_witness_round_trip() {
    let aut = aut_of("A5");
    let l = lien(&aut, "C2 x C2", &[1, 0]);
    let lift = is_neutral(&l).unwrap().lift.unwrap();
    let w = section_witness(&l, &lift);
    assert!(verify_section_witness(&l, &w).is_ok());
    let json = serde_json::to_string(&w).unwrap();
    let back: kernelsplit::lien::SectionWitness = serde_json::from_str(&json).unwrap();
    assert_eq!(back, w);
    let mut bad = w.clone();
    bad.generator_images[1] = w.generator_images[0].clone();
    assert!(verify_section_witness(&l, &bad).is_err());
    let mut bad = w;
    bad.generator_images[0][0] = "(1 2)".into();
    assert!(verify_section_witness(&l, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn every_lien_over_small_kernels_splits(kernel in 0usize..2, gamma in 0usize..4, pick in 0usize..64) {
        let aut = aut_of(["A5", "PSL(2,7)"][kernel]);
        let gamma = build(["C2", "C3", "C2 x C2", "S3"][gamma]);
        let kappas = all_kappas(&aut, &gamma.element_table().unwrap());
        let kappa = kappas[pick % kappas.len()].clone();
        let l = Lien::new(aut.clone(), gamma, kappa).unwrap();
        let v = is_neutral(&l).unwrap();
        prop_assert!(v.neutral);
        let out = split_via_tower(&l).unwrap();
        prop_assert!(out.split);
        check_lift(&l, out.lift.as_ref().unwrap());
        let w = section_witness(&l, out.lift.as_ref().unwrap());
        prop_assert!(verify_section_witness(&l, &w).is_ok());
    }
}
