use std::sync::Arc;

use proptest::prelude::*;

use posetcoh::derived::{cohomology, homology};
use posetcoh::fixtures::get_fixture;
use posetcoh::random::{random_bounded_poset, random_functor, rng};
use posetcoh::shellability::{find_ordering, SearchOptions};
use posetcoh::stability::{check_costability, check_stability, ShellablePair};
use posetcoh::{BoundedPoset, Field, FunctorOnPoset, Variance};

fn pair_of(name: &str) -> ShellablePair {
    let f = get_fixture(name).unwrap();
    ShellablePair::new(f.bounded, f.ordering.unwrap()).unwrap()
}

fn first_vanishing_without_stability() -> Option<(u64, usize)> {
    for seed in 0..500u64 {
        let mut r = rng(seed);
        let bounded = BoundedPoset::new(random_bounded_poset(&mut r, 4, 0.5)).unwrap();
        if bounded.degree_of_poset() < 3 {
            continue;
        }
        let Some(family) = find_ordering(&bounded, SearchOptions::default()).unwrap() else {
            continue;
        };
        let pair = ShellablePair::new(bounded.clone(), family).unwrap();
        let s = bounded.without_top();
        let f = random_functor(&mut r, Arc::new(bounded.poset().clone()), Variance::Contravariant, Field::Rational, 3);
        let h = cohomology(&f, &s).unwrap();
        for i in 1..bounded.degree_of_poset() {
            if h.get(i as i64) == 0 && !check_stability(&pair, &f, i).unwrap().pass {
                return Some((seed, i));
            }
        }
    }
    None
}

#[test]
fn vanishing_does_not_imply_stability() {
    assert!(first_vanishing_without_stability().is_some());
}

#[test]
fn stable_constant_functor_on_boolean_lattice() {
    let pair = pair_of("boolean-4");
    let b = pair.bounded();
    let above: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
    let f =
        FunctorOnPoset::constant_on(Arc::new(b.poset().clone()), Variance::Contravariant, Field::Rational, 1, &above)
            .unwrap();
    let h = cohomology(&f, &b.without_top()).unwrap();
    assert!(check_stability(&pair, &f, 1).unwrap().pass);
    assert_eq!(h.get(1), 0);
    assert_eq!(h.get(2), 1);
    assert!(!check_stability(&pair, &f, 2).unwrap().pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stability_implies_vanishing(seed in 0u64..10_000, inner in 2usize..=5, density in 0.3f64..0.7) {
        let mut r = rng(seed);
        let bounded = BoundedPoset::new(random_bounded_poset(&mut r, inner, density)).unwrap();
        prop_assume!(bounded.degree_of_poset() >= 3);
        let family = find_ordering(&bounded, SearchOptions::default()).unwrap();
        prop_assume!(family.is_some());
        let pair = ShellablePair::new(bounded.clone(), family.unwrap()).unwrap();
        let s = bounded.without_top();
        let poset = Arc::new(bounded.poset().clone());
        for variance in [Variance::Contravariant, Variance::Covariant] {
            let f = random_functor(&mut r, poset.clone(), variance, Field::Prime(5), 3);
            let h = match variance {
                Variance::Contravariant => cohomology(&f, &s).unwrap(),
                Variance::Covariant => homology(&f, &s).unwrap(),
            };
            for i in 1..bounded.degree_of_poset() {
                let report = match variance {
                    Variance::Contravariant => check_stability(&pair, &f, i).unwrap(),
                    Variance::Covariant => check_costability(&pair, &f, i).unwrap(),
                };
                if report.pass {
                    prop_assert_eq!(h.get(i as i64), 0);
                }
            }
        }
    }
}
