//! The Möbius function, atomic functors and the atom exact sequences.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::derived::{cohomology, homology};
use crate::error::{Error, Result};
use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{Field, GradedDims, Matrix};
use crate::poset::Poset;
use crate::stability::{check_costability, check_stability, ShellablePair};

/// `μ(p, q)` for every pair `p ≤ q`.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    values: HashMap<(usize, usize), i64>,
}

impl MobiusTable {
    pub fn new(poset: &Poset) -> Self {
        let mut values = HashMap::new();
        let order = poset.by_degree();
        for q in poset.elements() {
            values.insert((q, q), 1);
            // Decreasing degree, so every r with p < r ≤ q is done before p.
            for &p in order.iter().rev() {
                if !poset.lt(p, q) {
                    continue;
                }
                let sum: i64 = poset.above(p).into_iter().filter(|&r| poset.leq(r, q)).map(|r| values[&(r, q)]).sum();
                values.insert((p, q), -sum);
            }
        }
        MobiusTable { values }
    }

    pub fn get(&self, p: usize, q: usize) -> Option<i64> {
        self.values.get(&(p, q)).copied()
    }
}

pub fn mobius(poset: &Poset, p: usize, q: usize) -> Result<i64> {
    if !poset.leq(p, q) {
        return Err(Error::NotComparable(poset.id(p).into(), poset.id(q).into()));
    }
    Ok(MobiusTable::new(poset).get(p, q).expect("comparable pair"))
}

/// `A(p, K^m)`: `K^m` at `p`, zero elsewhere.
pub fn atomic_functor(poset: Arc<Poset>, p: usize, m: usize, variance: Variance, field: Field) -> FunctorOnPoset {
    FunctorOnPoset::atomic(poset, variance, field, p, m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicReport {
    pub element: String,
    pub codegree: usize,
    pub mobius: i64,
    pub expected: GradedDims,
    pub cohomology: GradedDims,
    pub homology: GradedDims,
    pub pass: bool,
}

fn require_pure(pair: &ShellablePair) -> Result<()> {
    if pair.bounded().is_pure().pure {
        Ok(())
    } else {
        Err(Error::NotPure)
    }
}

/// Computes `H^*` and `H_*` of `A(p, K^m)` over `P ∖ {1̂}` and compares them with
/// `K^{m |μ(p, 1̂)|}` in degree `cd(p) - 1`.
pub fn verify_atomic_cohomology(pair: &ShellablePair, p: usize, m: usize, field: Field) -> Result<AtomicReport> {
    require_pure(pair)?;
    let b = pair.bounded();
    if p == b.top() {
        return Err(Error::InvalidInput("the atomic functor needs p below the top".into()));
    }
    let poset = Arc::new(b.poset().clone());
    let s = b.without_top();
    let mu = mobius(&poset, p, b.top())?;
    let cd = b.codegree(p);
    let mut expected = GradedDims::new();
    expected.set(cd as i64 - 1, m * mu.unsigned_abs() as usize);
    let contra = atomic_functor(poset.clone(), p, m, Variance::Contravariant, field);
    let co = atomic_functor(poset.clone(), p, m, Variance::Covariant, field);
    let coh = cohomology(&contra, &s)?;
    let hom = homology(&co, &s)?;
    Ok(AtomicReport {
        element: poset.id(p).into(),
        codegree: cd,
        mobius: mu,
        pass: coh == expected && hom == expected,
        expected,
        cohomology: coh,
        homology: hom,
    })
}

/// Dimensions around the atom exact sequence.
///
/// Contravariant: `0 -> H^{d-3}(P∖1̂) -> H^{d-3}(P̄∖A) -> ⊕ F(a)^{|μ(a,1̂)|} -> H^{d-2}(P∖1̂) -> 0`.
/// Covariant: `0 -> H_{d-2}(P∖1̂) -> ⊕ F(a)^{|μ(a,1̂)|} -> H_{d-3}(P̄∖A) -> H_{d-3}(P∖1̂) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomSequenceReport {
    pub variance: Variance,
    pub poset_degree: usize,
    pub atoms: Vec<String>,
    /// `(H(d-3) over P∖1̂, H(d-3) over P̄∖A, Σ dim F(a)|μ(a,1̂)|, H(d-2) over P∖1̂)`.
    pub terms: [usize; 4],
    pub alternating_sum: i64,
    pub corollary_applies: bool,
    pub corollary_holds: Option<bool>,
    pub pass: bool,
}

pub fn atom_sequence_check(pair: &ShellablePair, f: &FunctorOnPoset, atoms: &[usize]) -> Result<AtomSequenceReport> {
    require_pure(pair)?;
    let b = pair.bounded();
    let poset = b.poset();
    let d = b.degree_of_poset();
    if d < 3 {
        return Err(Error::HypothesisFailed(format!("the poset has degree {d} < 3")));
    }
    if f.dim(b.bottom()) != 0 {
        return Err(Error::HypothesisFailed("the functor is nonzero at the bottom".into()));
    }
    let all_atoms = b.atoms();
    if let Some(&x) = atoms.iter().find(|x| !all_atoms.contains(x)) {
        return Err(Error::InvalidInput(format!("`{}` is not an atom", poset.id(x))));
    }
    let variance = f.variance();
    for chain in b.unrefinable_top_chains(d - 2) {
        let top = chain.bottom();
        let rest: Vec<usize> = pair.c_set(&chain).into_iter().filter(|a| !atoms.contains(a)).collect();
        let blocks: Vec<&Matrix> = rest.iter().map(|&a| f.map(a, top)).collect();
        let total: usize = rest.iter().map(|&a| f.dim(a)).sum();
        let ok = match variance {
            Variance::Contravariant => Matrix::vstack(f.field(), f.dim(top), &blocks).rank() == total,
            Variance::Covariant => Matrix::hstack(f.field(), f.dim(top), &blocks).rank() == total,
        };
        if !ok {
            return Err(Error::HypothesisFailed(format!(
                "the map between F({}) and the atoms of C({}) outside A is not {}",
                poset.id(top),
                chain.label(poset),
                if variance == Variance::Contravariant { "onto" } else { "injective" }
            )));
        }
    }
    let without_top = b.without_top();
    let proper_minus_a: Vec<usize> = b.proper_part().into_iter().filter(|x| !atoms.contains(x)).collect();
    let (h_full, h_minus_a) = match variance {
        Variance::Contravariant => (cohomology(f, &without_top)?, cohomology(f, &proper_minus_a)?),
        Variance::Covariant => (homology(f, &without_top)?, homology(f, &proper_minus_a)?),
    };
    let table = MobiusTable::new(poset);
    let middle: usize =
        atoms.iter().map(|&a| f.dim(a) * table.get(a, b.top()).expect("a ≤ 1̂").unsigned_abs() as usize).sum();
    let lo = d as i64 - 3;
    let terms = [h_full.get(lo), h_minus_a.get(lo), middle, h_full.get(lo + 1)];
    let alternating_sum = terms[0] as i64 - terms[1] as i64 + terms[2] as i64 - terms[3] as i64;
    let corollary_applies = d >= 4
        && match variance {
            Variance::Contravariant => check_stability(pair, f, d - 3)?.pass,
            Variance::Covariant => check_costability(pair, f, d - 3)?.pass,
        };
    let corollary_holds = corollary_applies.then(|| terms[0] == 0 && terms[1] + terms[3] == terms[2]);
    Ok(AtomSequenceReport {
        variance,
        poset_degree: d,
        atoms: atoms.iter().map(|&a| poset.id(a).to_string()).collect(),
        terms,
        alternating_sum,
        corollary_applies,
        corollary_holds,
        pass: alternating_sum == 0 && corollary_holds != Some(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::new(&["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap()
    }

    #[test]
    fn mobius_of_chains_and_diamond() {
        let c = chain3();
        assert_eq!(mobius(&c, 0, 0).unwrap(), 1);
        assert_eq!(mobius(&c, 0, 1).unwrap(), -1);
        assert_eq!(mobius(&c, 0, 2).unwrap(), 0);
        let d = Poset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap();
        assert_eq!(mobius(&d, 0, 3).unwrap(), 1);
        let n = Poset::new(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert!(matches!(mobius(&n, 0, 1), Err(Error::NotComparable(..))));
    }

    #[test]
    fn defining_identity_holds() {
        let mut r = crate::random::rng(3);
        for _ in 0..10 {
            let p = crate::random::random_poset(&mut r, 7, 0.4);
            let t = MobiusTable::new(&p);
            for a in p.elements() {
                for q in p.above(a) {
                    let s: i64 =
                        p.elements().filter(|&x| p.leq(a, x) && p.leq(x, q)).map(|x| t.get(x, q).unwrap()).sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }
}
