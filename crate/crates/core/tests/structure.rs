mod common;

use kernelsplit::catalog::{self, GroupSpec};
use kernelsplit::structure::{
    characteristic_subgroups, composition_factors, composition_series_with, is_anti_solvable,
    is_characteristically_simple, normal_subgroups, MaximalChoice, SimpleId,
};
use kernelsplit::{AutData, PermGroup};

fn build(text: &str) -> PermGroup {
    GroupSpec::parse(text).unwrap().build().unwrap()
}

fn orders(groups: &[PermGroup]) -> Vec<u128> {
    let mut v: Vec<u128> = groups.iter().map(|g| g.order()).collect();
    v.sort_unstable();
    v
}

#[test]
fn normal_subgroups_match_oracle() {
    for (text, want) in [
        ("A5", vec![1, 60]),
        ("S5", vec![1, 60, 120]),
        ("A5 x A5", vec![1, 60, 60, 3600]),
        ("S4", vec![1, 4, 12, 24]),
        ("C2 x C2", vec![1, 2, 2, 2, 4]),
    ] {
        let g = build(text);
        let ours = normal_subgroups(&g).unwrap();
        assert_eq!(orders(&ours), want, "{text}");
        if g.order() <= 120 {
            let mut naive: Vec<u128> = common::normal_subgroups(g.generators())
                .iter()
                .map(|(_, s)| s.len() as u128)
                .collect();
            naive.sort_unstable();
            assert_eq!(naive, want, "{text}");
        }
        for n in &ours {
            assert!(n.is_normal_in(&g).unwrap());
        }
    }
}

#[test]
fn composition_examples() {
    assert!(composition_factors(&PermGroup::trivial(1))
        .unwrap()
        .factors
        .is_empty());
    let s5 = composition_factors(&build("S5")).unwrap();
    assert_eq!(s5.factor_multiset(), vec![(2, true), (60, false)]);
    assert!(s5.factors.iter().any(|f| f.id == SimpleId::Alt { n: 5 }));
    let a5a5 = composition_factors(&build("A5 x A5")).unwrap();
    assert_eq!(
        a5a5.factors
            .iter()
            .map(|f| f.id.clone())
            .collect::<Vec<_>>(),
        vec![SimpleId::Alt { n: 5 }; 2]
    );
    let psl = composition_factors(&catalog::make_psl2(7).unwrap()).unwrap();
    assert_eq!(psl.factors.len(), 1);
    assert!(!psl.factors[0].abelian);
}

#[test]
fn series_subgroups_descend_normally() {
    let g = build("S4");
    let series = composition_factors(&g).unwrap();
    assert_eq!(series.subgroups.len(), series.factors.len() + 1);
    for w in series.subgroups.windows(2) {
        assert!(w[1].is_normal_in(&w[0]).unwrap());
        assert!(w[1].order() < w[0].order());
    }
    assert_eq!(series.subgroups.last().unwrap().order(), 1);
}

#[test]
fn anti_solvability() {
    for (text, want) in [
        ("A5", true),
        ("S5", false),
        ("A5 x A5", true),
        ("C1", true),
        ("C3", false),
        ("PSL(2,8)", true),
    ] {
        assert_eq!(is_anti_solvable(&build(text)).unwrap(), want, "{text}");
    }
}

#[test]
fn jordan_holder_independence() {
    for text in ["S4", "S5", "A5 x A5", "S5 x C2", "S3 x S3", "C2 x C2 x C3"] {
        let g = build(text);
        let a = composition_series_with(&g, MaximalChoice::Largest)
            .unwrap()
            .factor_multiset();
        let b = composition_series_with(&g, MaximalChoice::Smallest)
            .unwrap()
            .factor_multiset();
        assert_eq!(a, b, "{text}");
        if g.order() <= 240 {
            assert_eq!(a, common::composition_factors(g.generators()), "{text}");
        }
    }
}

#[test]
fn wreath_factors_match_oracle() {
    let gens = common::a5_wreath_c2();
    let oracle = common::composition_factors(&gens);
    assert_eq!(oracle, vec![(2, true), (60, false), (60, false)]);
    let g = PermGroup::new(gens).unwrap();
    assert_eq!(g.order(), 7200);
    assert_eq!(composition_factors(&g).unwrap().factor_multiset(), oracle);
    assert!(!is_anti_solvable(&g).unwrap());
}

#[test]
fn characteristic_examples() {
    let a5 = build("A5");
    let aut = AutData::compute(&a5).unwrap();
    assert_eq!(
        orders(&characteristic_subgroups(&a5, &aut).unwrap()),
        vec![1, 60]
    );
    assert!(is_characteristically_simple(&a5, &aut).unwrap());

    let f = build("A5 x A5");
    let aut = AutData::compute(&f).unwrap();
    assert_eq!(
        orders(&characteristic_subgroups(&f, &aut).unwrap()),
        vec![1, 3600]
    );
    assert!(is_characteristically_simple(&f, &aut).unwrap());

    let s5 = build("S5");
    let aut = AutData::compute(&s5).unwrap();
    assert_eq!(
        orders(&characteristic_subgroups(&s5, &aut).unwrap()),
        vec![1, 60, 120]
    );
    assert!(!is_characteristically_simple(&s5, &aut).unwrap());

    let one = PermGroup::trivial(1);
    let aut = AutData::compute(&one).unwrap();
    assert!(!is_characteristically_simple(&one, &aut).unwrap());

    assert!(characteristic_subgroups(&a5, &AutData::compute(&s5).unwrap()).is_err());
}

#[test]
fn characteristic_subgroups_are_normal() {
    for text in ["S4", "C2 x C2", "S3 x C3", "C4 x C2"] {
        let g = build(text);
        let aut = AutData::compute(&g).unwrap();
        let chars = characteristic_subgroups(&g, &aut).unwrap();
        let normals = normal_subgroups(&g).unwrap();
        assert!(chars.len() <= normals.len());
        for c in &chars {
            assert!(c.is_normal_in(&g).unwrap());
        }
    }
}
