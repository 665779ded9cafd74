use proptest::prelude::*;

use quotient_realize::group::{FiniteGroup, GroupSpec, Subgroup};
use quotient_realize::multiset::Multiset;
use quotient_realize::realizability::{
    abelianization_obstruction, decide_cycle_tiling, decide_matching, decide_subgroup_reduction, verify_certificate,
    ReductionOptions, Status,
};

const GROUPS: &[&str] = &[
    "symmetric:3",
    "dihedral:4",
    "quaternion",
    "cyclic:8",
    "product(cyclic:2,cyclic:4)",
    "dihedral:5",
    "product(symmetric:3,cyclic:2)",
];

fn group(index: usize) -> FiniteGroup {
    GROUPS[index].parse::<GroupSpec>().unwrap().build().unwrap()
}

/// A group index and `|G|` random elements of it.
fn group_and_multiset() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..GROUPS.len()).prop_flat_map(|i| {
        let n = group(i).order();
        (Just(i), prop::collection::vec(0..n, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn deciders_agree_and_certify((i, elems) in group_and_multiset()) {
        let g = group(i);
        let a = Multiset::from_elements(g.order(), elems);
        let m = decide_matching(&g, &a).unwrap();
        let t = decide_cycle_tiling(&g, &a).unwrap();
        prop_assert_eq!(m.status, t.status);
        for cert in [&m.certificate, &t.certificate].into_iter().flatten() {
            prop_assert!(verify_certificate(&g, &a, cert).is_ok());
            prop_assert_eq!(cert.quotient_multiset(&g), a.clone());
        }
        if m.status.is_realizable() {
            prop_assert!(abelianization_obstruction(&g, &a).unwrap().passed());
        }
    }

    #[test]
    fn conjugation_and_inversion_preserve_status((i, elems) in group_and_multiset(), c in 0usize..12) {
        let g = group(i);
        let c = c % g.order();
        let a = Multiset::from_elements(g.order(), elems);
        let base = decide_matching(&g, &a).unwrap().status;
        prop_assert_eq!(decide_matching(&g, &a.conjugate(&g, c)).unwrap().status, base);
        prop_assert_eq!(decide_matching(&g, &a.inverse(&g)).unwrap().status, base);
    }

    #[test]
    fn abelian_realizable_iff_product_one(n in 1usize..=10, seed in prop::collection::vec(0usize..1000, 10)) {
        let g = GroupSpec::Cyclic(n).build().unwrap();
        let a = Multiset::from_elements(n, seed.iter().take(n).map(|x| x % n));
        let realizable = decide_matching(&g, &a).unwrap().status.is_realizable();
        prop_assert_eq!(realizable, g.product(a.elements()) == 0);
    }

    #[test]
    fn reduction_matches_matching(i in 0..GROUPS.len(), gen in 0usize..12, picks in prop::collection::vec(0usize..1000, 12)) {
        let g = group(i);
        let h = Subgroup::generated(&g, &[gen % g.order()]);
        let members = h.members();
        let a = Multiset::from_elements(g.order(), picks.iter().take(g.order()).map(|p| members[p % members.len()]));
        let reduced = decide_subgroup_reduction(&g, &h, &a, ReductionOptions::default()).unwrap();
        let exact = decide_subgroup_reduction(&g, &h, &a, ReductionOptions { abelian_fast_path: false }).unwrap();
        let direct = decide_matching(&g, &a).unwrap();
        prop_assert_eq!(reduced.status, direct.status);
        prop_assert_eq!(exact.status, direct.status);
        if let Some(cert) = &reduced.certificate {
            prop_assert!(verify_certificate(&g, &a, cert).is_ok());
        }
        prop_assert!(reduced.status != Status::ObstructionFailed || !direct.obstruction.passed());
    }
}
