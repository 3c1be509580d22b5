use kernelsplit::catalog::{is_prime, make_pgl2, make_psl2, prime_power};
use kernelsplit::lietype::{
    crosscheck_psl2, diagonal_order_d, gcd, is_aut_split_lie, psl2_verdicts, LieBranch, LieFamily,
    LieTypeParams,
};
use proptest::prelude::*;

fn params(family: LieFamily, rank: u32, p: u64, m: u32) -> LieTypeParams {
    LieTypeParams::new(family, rank, p, m).unwrap()
}

#[test]
fn d_examples() {
    assert_eq!(diagonal_order_d(&params(LieFamily::A, 1, 5, 1)).unwrap(), 2);
    assert_eq!(diagonal_order_d(&params(LieFamily::A, 1, 2, 2)).unwrap(), 1);
    for (p, m) in [(2, 2), (3, 1), (5, 2), (7, 1)] {
        assert_eq!(
            diagonal_order_d(&params(LieFamily::G2, 2, p, m)).unwrap(),
            1
        );
    }
}

#[test]
fn d_matches_pgl_index() {
    for q in [4u32, 5, 7, 8, 9, 11, 13] {
        let (p, m) = prime_power(q as u64).unwrap();
        let d = diagonal_order_d(&params(LieFamily::A, 1, p, m)).unwrap();
        let index = make_pgl2(q).unwrap().order() / make_psl2(q).unwrap().order();
        assert_eq!(d, index, "q = {q}");
    }
}

#[test]
fn verdict_examples() {
    let v = is_aut_split_lie(&params(LieFamily::A, 1, 3, 2)).unwrap();
    assert_eq!((v.d, v.triple, v.aut_split), (2, Some([4, 2, 2]), false));
    let v = is_aut_split_lie(&params(LieFamily::A, 1, 5, 1)).unwrap();
    assert_eq!((v.d, v.triple, v.aut_split), (2, Some([2, 2, 1]), true));
    let v = is_aut_split_lie(&params(LieFamily::A, 1, 2, 3)).unwrap();
    assert_eq!((v.d, v.triple, v.aut_split), (1, Some([7, 1, 3]), true));
    let v = is_aut_split_lie(&params(LieFamily::TwistedD, 4, 3, 1)).unwrap();
    assert_eq!(
        (v.branch, v.triple, v.aut_split),
        (LieBranch::TwistedD, None, false)
    );
    assert!(
        is_aut_split_lie(&params(LieFamily::TwistedD, 5, 3, 1))
            .unwrap()
            .aut_split
    );
    assert!(
        is_aut_split_lie(&params(LieFamily::TwistedD, 4, 2, 1))
            .unwrap()
            .aut_split
    );
}

#[test]
fn branch_selection() {
    let cases = [
        (LieFamily::A, 2, LieBranch::Chevalley),
        (LieFamily::D, 4, LieBranch::ChevalleyD),
        (LieFamily::TwistedA, 3, LieBranch::Twisted),
        (LieFamily::TwistedE6, 6, LieBranch::Twisted),
        (LieFamily::Triality, 4, LieBranch::Twisted),
        (LieFamily::TwistedD, 4, LieBranch::TwistedD),
    ];
    for (fam, rank, want) in cases {
        assert_eq!(
            is_aut_split_lie(&params(fam, rank, 5, 1)).unwrap().branch,
            want
        );
    }
}

#[test]
fn invalid_parameters() {
    assert!(LieTypeParams::new(LieFamily::A, 1, 4, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::A, 1, 2, 0).is_err());
    assert!(LieTypeParams::new(LieFamily::A, 1, 2, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::A, 1, 3, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::D, 3, 3, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::E6, 7, 3, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::Suzuki, 2, 2, 2).is_err());
    assert!(LieTypeParams::new(LieFamily::Suzuki, 2, 3, 3).is_err());
    assert!(LieTypeParams::new(LieFamily::ReeG2, 2, 3, 1).is_err());
    assert!(LieTypeParams::new(LieFamily::Suzuki, 2, 2, 3).is_ok());
}

#[test]
fn family_names_round_trip() {
    for (name, rank, fam) in [
        ("A", 3, LieFamily::A),
        ("E6", 6, LieFamily::E6),
        ("E", 8, LieFamily::E8),
        ("2A", 2, LieFamily::TwistedA),
        ("2D", 4, LieFamily::TwistedD),
        ("3D", 4, LieFamily::Triality),
        ("2B", 2, LieFamily::Suzuki),
    ] {
        assert_eq!(LieFamily::resolve(name, rank).unwrap(), fam, "{name}");
    }
    assert!(LieFamily::resolve("X", 1).is_err());
    let v = is_aut_split_lie(&params(LieFamily::TwistedA, 2, 3, 1)).unwrap();
    let json = serde_json::to_string(&v).unwrap();
    assert_eq!(
        serde_json::from_str::<kernelsplit::lietype::LieVerdict>(&json).unwrap(),
        v
    );
}

#[test]
fn psl2_crosscheck_examples() {
    assert!(crosscheck_psl2(9).unwrap());
    assert!(!psl2_verdicts(9).unwrap().0.aut_split);
    assert!(crosscheck_psl2(7).unwrap());
    assert!(psl2_verdicts(7).unwrap().1);
    let (l4, s4) = psl2_verdicts(4).unwrap();
    let (l5, s5) = psl2_verdicts(5).unwrap();
    assert!(l4.aut_split == s4 && l5.aut_split == s5);
    assert_eq!(l4.aut_split, l5.aut_split);
    assert!(psl2_verdicts(6).is_err());
}

fn family_strategy() -> impl Strategy<Value = LieFamily> {
    use LieFamily::*;
    prop::sample::select(vec![
        A, B, C, D, E6, E7, E8, F4, G2, TwistedA, Suzuki, TwistedD, Triality, TwistedE6, ReeF4,
        ReeG2,
    ])
}

proptest! {
    #[test]
    fn valid_params_always_get_a_verdict(fam in family_strategy(), rank in 1u32..9, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), m in 1u32..6) {
        let rank = fam.fixed_rank().unwrap_or(rank);
        let params = LieTypeParams { family: fam, rank, p, m };
        prop_assume!(params.validate().is_ok());
        let v = is_aut_split_lie(&params).unwrap();
        let q = (p as u128).pow(m);
        prop_assert_eq!(v.q, q);
        match v.triple {
            Some(t) => {
                prop_assert_eq!(t[1], v.d);
                prop_assert_eq!(t[2], m as u128);
                prop_assert_eq!(v.aut_split, gcd(gcd(t[0], t[1]), t[2]) == 1);
            }
            None => {
                prop_assert_eq!(v.branch, LieBranch::TwistedD);
                prop_assert_eq!(v.aut_split, rank % 2 == 1 || p == 2);
            }
        }
        if v.d == 1 && v.branch != LieBranch::TwistedD {
            prop_assert!(v.aut_split);
        }
        if m == 1 && v.branch != LieBranch::TwistedD {
            prop_assert!(v.aut_split);
        }
    }

    #[test]
    fn invalid_primes_are_rejected(fam in family_strategy(), p in 0u64..40, m in 1u32..4) {
        prop_assume!(!is_prime(p));
        let rank = fam.fixed_rank().unwrap_or(2);
        prop_assert!(LieTypeParams::new(fam, rank, p, m).is_err());
    }
}
