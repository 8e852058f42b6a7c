use proptest::prelude::*;
use qchoice::generators::random_relation;
use qchoice::{
    acceptance_antichains, check_alpha, check_gamma, classify, dem_from_lib, dem_number,
    lib_from_dem, lib_number, random_alpha, revealed_relation, sperner_bound, synth_liberal,
    synth_majoritarian, verify, Ballot, BallotFamily, DemLimits, GrandSet, LibNumber, Menu,
    QuasiChoice, RationalityClass, Relation, Share, DEFAULT_SIZE_LIMIT,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relation(n: usize, seed: u64) -> Relation {
    let grand = GrandSet::new(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = (seed % 7) as f64 / 12.0;
    random_relation(&grand, density, &mut rng)
}

fn family(n: usize, seed: u64, k: usize) -> BallotFamily {
    BallotFamily::from_voters((0..k as u64).map(|i| relation(n, seed.wrapping_add(i * 7919))))
        .unwrap()
}

/// The quasi-choice a family induces at share `s`, counted directly.
fn induced(family: &BallotFamily, s: Share) -> QuasiChoice {
    let k = family.len() as u128;
    QuasiChoice::from_fn(family.grand().clone(), |a| {
        a.iter()
            .filter(|&x| {
                let count = family
                    .members()
                    .iter()
                    .filter(|b| b.get(a).contains(x))
                    .count();
                count as u128 * s.den() as u128 > s.num() as u128 * k
            })
            .collect()
    })
}

fn share() -> impl Strategy<Value = Share> {
    (0u64..12, 1u64..13)
        .prop_filter("below one", |(p, q)| p < q)
        .prop_map(|(p, q)| Share::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn max_set_is_inside_the_menu(n in 2usize..6, seed: u64, a in 0u32..32) {
        let rel = relation(n, seed);
        let menu = Menu(a & ((1 << n) - 1));
        prop_assert!(rel.max_set(menu).is_subset(menu));
    }

    #[test]
    fn ballots_satisfy_both_axioms(n in 2usize..6, seed: u64) {
        let b = Ballot::from_voter(relation(n, seed));
        prop_assert!(check_alpha(b.choice()).is_ok());
        prop_assert!(check_gamma(b.choice()).is_ok());
        prop_assert!(!matches!(classify(b.choice()), RationalityClass::NotRationalizable(_)));
    }

    #[test]
    fn revealed_relation_rationalizes_ballots(n in 2usize..6, seed: u64) {
        let b = Ballot::from_voter(relation(n, seed));
        prop_assert_eq!(Ballot::from_voter(revealed_relation(b.choice())), b);
    }

    #[test]
    fn more_dominators_choose_less(n in 2usize..6, seed: u64, extra: u64) {
        let small = relation(n, seed);
        let big = small.union(&relation(n, extra));
        for a in small.grand().menus() {
            prop_assert!(big.max_set(a).is_subset(small.max_set(a)));
        }
    }

    #[test]
    fn decisive_rationalizable_choices_are_asymmetric(n in 2usize..6, seed: u64) {
        let c = random_alpha(n, seed, true).unwrap();
        if let RationalityClass::FreelyRationalizable(_) = classify(&c) {
            prop_assert!(false, "decisive choice rationalized only by a non-asymmetric voter");
        }
    }

    #[test]
    fn induced_choices_satisfy_alpha(n in 2usize..5, seed: u64, k in 1usize..6, s in share()) {
        let fam = family(n, seed, k);
        let c = induced(&fam, s);
        prop_assert!(check_alpha(&c).is_ok());
        prop_assert!(verify(&c, &fam, s).unwrap().is_verified());
    }

    #[test]
    fn liberal_verification_is_the_union(n in 2usize..5, seed: u64, k in 1usize..5, flip: u32) {
        let fam = family(n, seed, k);
        let union = fam
            .members()
            .iter()
            .skip(1)
            .fold(fam.members()[0].choice().clone(), |acc, b| acc.union(b.choice()).unwrap());
        prop_assert!(verify(&union, &fam, Share::ZERO).unwrap().is_verified());
        // Any other table is rejected.
        let menu = Menu((flip % ((1 << n) - 1)) + 1);
        let item = menu.iter().next().unwrap();
        let changed = QuasiChoice::from_fn(union.grand().clone(), |a| {
            let c = union.get(a);
            if a == menu { if c.contains(item) { c.without(item) } else { c.with(item) } } else { c }
        });
        prop_assert!(!verify(&changed, &fam, Share::ZERO).unwrap().is_verified());
    }

    #[test]
    fn ballot_intersections_are_ballots(n in 2usize..6, a: u64, b: u64) {
        let u = Ballot::from_voter(relation(n, a));
        let v = Ballot::from_voter(relation(n, b));
        let meet = u.choice().intersection(v.choice()).unwrap();
        prop_assert!(check_alpha(&meet).is_ok() && check_gamma(&meet).is_ok());
        prop_assert_eq!(u.intersect(&v).choice().clone(), meet);
    }

    #[test]
    fn replication_preserves_verification(n in 2usize..5, seed: u64, k in 1usize..5, r in 1usize..4, s in share()) {
        let fam = family(n, seed, k);
        let c = random_alpha(n, seed, false).unwrap();
        let once = verify(&c, &fam, s).unwrap().is_verified();
        prop_assert_eq!(verify(&c, &fam.replicate(r).unwrap(), s).unwrap().is_verified(), once);
        let own = induced(&fam, s);
        prop_assert!(verify(&own, &fam.replicate(r).unwrap(), s).unwrap().is_verified());
    }

    #[test]
    fn transforms_verify(n in 2usize..6, seed: u64) {
        let c = random_alpha(n, seed, seed % 2 == 0).unwrap();
        let lib = synth_liberal(&c).unwrap();
        prop_assert!(verify(&c, &lib, Share::ZERO).unwrap().is_verified());
        let dem = dem_from_lib(&lib);
        prop_assert_eq!(dem.len(), 2 * lib.len());
        prop_assert!(verify(&c, &dem, Share::HALF).unwrap().is_verified());
        let back = lib_from_dem(&dem, DEFAULT_SIZE_LIMIT).unwrap();
        prop_assert!(verify(&c, &back, Share::ZERO).unwrap().is_verified());
    }

    #[test]
    fn synthesis_verifies(n in 2usize..5, seed: u64, s in share()) {
        let c = random_alpha(n, seed, false).unwrap();
        let (fam, trace) = synth_majoritarian(&c, s).unwrap();
        prop_assert_eq!(trace.size as usize, fam.len());
        if trace.m == 0 {
            prop_assert_eq!(trace.size, trace.base_size);
        } else {
            let weighted = trace.m * trace.m + trace.base_size * trace.m;
            prop_assert_eq!(trace.neutral_added, trace.m * trace.m * trace.replication_factor);
            prop_assert_eq!(trace.size, weighted * trace.replication_factor + trace.hypercritical_added);
        }
        prop_assert!(verify(&c, &fam, s).unwrap().is_verified());
    }

    #[test]
    fn antichains_are_sperner_families(n in 2usize..7, seed: u64) {
        let c = random_alpha(n, seed, false).unwrap();
        for ac in acceptance_antichains(&c) {
            for (i, a) in ac.maximal_menus.iter().enumerate() {
                prop_assert!(c.chooses(*a, ac.item));
                for b in &ac.maximal_menus[i + 1..] {
                    prop_assert!(!a.is_subset(*b) && !b.is_subset(*a));
                }
            }
            for b in c.grand().menus().filter(|&b| c.chooses(b, ac.item)) {
                prop_assert!(ac.maximal_menus.iter().any(|a| b.is_subset(*a)));
            }
        }
        let lib = lib_number(&c).finite().unwrap();
        prop_assert!(num_bigint::BigUint::from(lib) <= sperner_bound(n as u64));
    }

    #[test]
    fn numbers_are_one_exactly_for_rationalizable(n in 2usize..5, seed: u64) {
        let c = random_alpha(n, seed, seed % 3 == 0).unwrap();
        let rational = classify(&c).is_rationalizable();
        let dem = dem_number(&c, &DemLimits::default()).unwrap().number.exact();
        prop_assert_eq!(lib_number(&c) == LibNumber::Finite(1), rational);
        prop_assert_eq!(dem == Some(1), rational);
    }

    #[test]
    fn threshold_matches_fraction_comparison(count in 0u64..50, k in 1u64..50, s in share()) {
        // count/k > p/q, compared as reals
        let expected = (count as f64 / k as f64) > (s.num() as f64 / s.den() as f64)
            && count * s.den() != s.num() * k;
        prop_assert_eq!(s.exceeded_by(count, k), expected);
    }
}
