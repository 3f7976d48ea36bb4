use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{CochainComplex, Field, GradedDims, Matrix};
use crate::poset::{BoundedPoset, Poset};
use crate::random;

const Q: Field = Field::Rational;

fn boolean(n: usize) -> BoundedPoset {
    let name = |mask: usize| {
        let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    };
    let ids: Vec<String> = (0..1usize << n).map(name).collect();
    let mut covers = Vec::new();
    for m in 0..1usize << n {
        for i in 0..n {
            if m >> i & 1 == 0 {
                covers.push((name(m), name(m | 1 << i)));
            }
        }
    }
    BoundedPoset::new(Poset::new(&ids, &covers).unwrap()).unwrap()
}

fn dims(pairs: &[(i64, usize)]) -> GradedDims {
    pairs.iter().copied().collect()
}

#[test]
fn constant_on_proper_part_of_b3_is_a_circle() {
    let b = boolean(3);
    let p = Arc::new(b.poset().clone());
    let f = FunctorOnPoset::constant(p, Variance::Contravariant, Q, 1);
    let s = b.proper_part();
    assert_eq!(nerve_cohomology_oracle(&f, &s).unwrap(), dims(&[(0, 1), (1, 1)]));
    assert_eq!(cohomology(&f, &s).unwrap(), dims(&[(0, 1), (1, 1)]));
}

#[test]
fn atomic_functor_at_an_atom_of_b3() {
    let b = boolean(3);
    let p = Arc::new(b.poset().clone());
    let a = b.index_of("{1}").unwrap();
    let s = b.without_top();
    let contra = FunctorOnPoset::atomic(p.clone(), Variance::Contravariant, Q, a, 1);
    assert_eq!(cohomology(&contra, &s).unwrap(), dims(&[(1, 1)]));
    assert_eq!(nerve_cohomology_oracle(&contra, &s).unwrap(), dims(&[(1, 1)]));
    let co = FunctorOnPoset::atomic(p, Variance::Covariant, Q, a, 1);
    assert_eq!(homology(&co, &s).unwrap(), dims(&[(1, 1)]));
    assert_eq!(nerve_homology_oracle(&co, &s).unwrap(), dims(&[(1, 1)]));
}

#[test]
fn extension_by_zero_on_b4_is_a_two_sphere() {
    let b = boolean(4);
    let p = Arc::new(b.poset().clone());
    let support: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
    let f = FunctorOnPoset::constant_on(p, Variance::Contravariant, Q, 1, &support).unwrap();
    let expected = dims(&[(0, 1), (2, 1)]);
    assert_eq!(cohomology(&f, &b.without_top()).unwrap(), expected);
    assert_eq!(cohomology(&f, &b.proper_part()).unwrap(), expected);
    assert_eq!(nerve_cohomology_oracle(&f, &b.without_top()).unwrap(), expected);
}

#[test]
fn zero_functor_has_no_cohomology() {
    let b = boolean(2);
    let p = Arc::new(b.poset().clone());
    let f = FunctorOnPoset::zero(p.clone(), Variance::Contravariant, Q);
    assert!(cohomology(&f, &b.without_top()).unwrap().is_zero());
    let g = FunctorOnPoset::zero(p, Variance::Covariant, Q);
    assert!(homology(&g, &b.without_top()).unwrap().is_zero());
}

#[test]
fn minimal_elements_and_atoms_keep_their_values() {
    let b = boolean(3);
    let p = Arc::new(b.poset().clone());
    let support: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
    let f = FunctorOnPoset::constant_on(p, Variance::Contravariant, Q, 2, &support).unwrap();
    let (rf, map) = fibrant_replacement(&f, &b.without_top()).unwrap();
    for (k, &x) in map.iter().enumerate() {
        if x == b.bottom() || b.atoms().contains(&x) {
            assert_eq!(rf.value(k).dims(), CochainComplex::concentrated(Q, 0, f.dim(x)).dims());
        }
    }
}

#[test]
fn rejects_non_lower_closed_subsets() {
    let b = boolean(2);
    let p = Arc::new(b.poset().clone());
    let f = FunctorOnPoset::constant(p, Variance::Contravariant, Q, 1);
    let err = fibrant_replacement(&f, &b.atoms()).unwrap_err();
    assert!(matches!(err, crate::Error::NotLowerClosed(_)));
}

#[test]
fn cocylinder_rejects_a_non_chain_map() {
    let c = CochainComplex::concentrated(Q, 0, 1);
    let d = CochainComplex::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)]).unwrap();
    assert!(CochainMap::new(c, d, BTreeMap::from([(0, Matrix::identity(Q, 1))])).is_err());
}

fn check_replacements(f: &FunctorOnPoset, g: &FunctorOnPoset) {
    let all: Vec<usize> = f.poset().elements().collect();
    let (rf, _) = fibrant_replacement(f, &all).unwrap();
    for p in rf.poset().elements() {
        assert_eq!(rf.value(p).cohomology_dims(), GradedDims::concentrated(0, f.dim(p)));
        assert!(rf.is_fibrant_at(p));
        assert!(rf.value(p).hi() <= rf.poset().degree(p) as i64);
    }
    assert_eq!(rf.limit(&all).complex.cohomology_dims().get(0), f.limit(&all).unwrap().dim());
    let (qf, _) = cofibrant_replacement(g, &all).unwrap();
    for p in qf.poset().elements() {
        assert_eq!(qf.value(p).homology_dims(), GradedDims::concentrated(0, g.dim(p)));
        assert!(qf.is_cofibrant_at(p));
    }
    assert_eq!(qf.colimit(&all).complex.homology_dims().get(0), g.colimit(&all).unwrap().dim());
}

#[test]
fn replacements_are_quasi_isomorphic_and_fibrant() {
    let mut r = random::rng(11);
    for _ in 0..10 {
        let p = Arc::new(random::random_poset(&mut r, 6, 0.4));
        let f = random::random_functor(&mut r, p.clone(), Variance::Contravariant, Q, 3);
        let g = random::random_functor(&mut r, p, Variance::Covariant, Q, 3);
        check_replacements(&f, &g);
    }
}

#[test]
fn restriction_coherence() {
    let mut r = random::rng(5);
    for _ in 0..5 {
        let p = Arc::new(random::random_poset(&mut r, 7, 0.4));
        let f = random::random_functor(&mut r, p.clone(), Variance::Contravariant, Q, 2);
        let all: Vec<usize> = p.elements().collect();
        let (rf, _) = fibrant_replacement(&f, &all).unwrap();
        for x in p.elements() {
            let lower = p.lower_set(&[x]);
            let (rg, map) = fibrant_replacement(&f, &lower).unwrap();
            for (k, &y) in map.iter().enumerate() {
                assert_eq!(rg.value(k), rf.value(y));
                for (j, &z) in map.iter().enumerate() {
                    if p.lt(z, y) {
                        for n in 0..=rf.value(y).hi() {
                            assert_eq!(rg.map(j, k, n), rf.map(z, y, n));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_agrees_with_nerve_oracle(seed in 0u64..10_000, n in 1usize..=7, prime in prop::bool::ANY) {
        let field = if prime { Field::Prime(5) } else { Q };
        let mut r = random::rng(seed);
        let p = Arc::new(random::random_poset(&mut r, n, 0.45));
        let all: Vec<usize> = p.elements().collect();
        let f = random::random_functor(&mut r, p.clone(), Variance::Contravariant, field, 3);
        prop_assert_eq!(cohomology(&f, &all).unwrap(), nerve_cohomology_oracle(&f, &all).unwrap());
        let g = random::random_functor(&mut r, p, Variance::Covariant, field, 3);
        prop_assert_eq!(homology(&g, &all).unwrap(), nerve_homology_oracle(&g, &all).unwrap());
    }

    #[test]
    fn cocylinder_inclusion_is_a_quasi_isomorphism(seed in 0u64..10_000) {
        let mut r = random::rng(seed);
        let c = CochainComplex::new(Q, 0, vec![2, 2], vec![random::random_matrix(&mut r, Q, 2, 2)]).unwrap();
        let f0 = random::random_matrix(&mut r, Q, 1, 2);
        let d = CochainComplex::concentrated(Q, 0, 1);
        let f = CochainMap::new(c.clone(), d, BTreeMap::from([(0, f0)])).unwrap();
        let cyl = cocylinder(&f).unwrap();
        prop_assert_eq!(cyl.complex.cohomology_dims(), c.cohomology_dims());
    }
}
