//! Weak Mackey functors: transfers, G-linearity and quasi-units.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{Field, Matrix};
use crate::poset::Poset;
use crate::stability::ShellablePair;

/// Transfer matrices keyed by `(j, i)` for `j < i`.
pub type Transfers = HashMap<(usize, usize), Matrix>;

/// A contravariant functor `G` with transfers `F(j<i): G(j) -> G(i)` for every relation `j < i`.
#[derive(Clone, Debug)]
pub struct MackeyData {
    g: FunctorOnPoset,
    transfers: Transfers,
}

impl MackeyData {
    /// Transfers between zero spaces may be omitted.
    pub fn new(g: FunctorOnPoset, mut transfers: Transfers) -> Result<Self> {
        if g.variance() != Variance::Contravariant {
            return Err(Error::VarianceMismatch { expected: "contra" });
        }
        let poset = g.poset();
        for (&(j, i), m) in &transfers {
            if !poset.lt(j, i) {
                return Err(Error::NotBelow { q: poset.id(j).into(), p: poset.id(i).into() });
            }
            let want = (g.dim(i), g.dim(j));
            if m.shape() != want {
                return Err(Error::ShapeMismatch {
                    context: format!("transfer {}<{}", poset.id(j), poset.id(i)),
                    expected: want,
                    found: m.shape(),
                });
            }
            if m.field() != g.field() {
                return Err(Error::FieldMismatch { expected: g.field(), found: m.field() });
            }
        }
        for i in poset.elements() {
            for j in poset.below(i) {
                if transfers.contains_key(&(j, i)) {
                    continue;
                }
                if g.dim(i) == 0 || g.dim(j) == 0 {
                    transfers.insert((j, i), Matrix::zeros(g.field(), g.dim(i), g.dim(j)));
                } else {
                    return Err(Error::MissingTransfer { j: poset.id(j).into(), i: poset.id(i).into() });
                }
            }
        }
        Ok(MackeyData { g, transfers })
    }

    /// Identity transfers on a functor whose relation maps are all square.
    pub fn with_identity_transfers(g: FunctorOnPoset) -> Result<Self> {
        let mut t = HashMap::new();
        for i in g.poset().elements() {
            for j in g.poset().below(i) {
                if g.dim(i) != g.dim(j) {
                    return Err(Error::InvalidInput("identity transfers need equal dimensions".into()));
                }
                t.insert((j, i), Matrix::identity(g.field(), g.dim(i)));
            }
        }
        MackeyData::new(g, t)
    }

    pub fn functor(&self) -> &FunctorOnPoset {
        &self.g
    }

    pub fn transfer(&self, j: usize, i: usize) -> &Matrix {
        &self.transfers[&(j, i)]
    }

    /// `α(i, j) = G(j<i) ∘ F(j<i)`, an endomorphism of `G(j)`.
    pub fn alpha(&self, i: usize, j: usize) -> Matrix {
        self.g.map(j, i) * self.transfer(j, i)
    }

    /// `γ ∈ End(G(j))` is G-linear: every `G(l<j) ∘ γ` factors through `G(l<j)`.
    pub fn is_g_linear(&self, j: usize, gamma: &Matrix) -> bool {
        self.g.poset().below(j).into_iter().all(|l| {
            let r = self.g.map(l, j);
            r.kernel_contained_in(&(r * gamma))
        })
    }

    /// `γ` is a G-linear automorphism: invertible, and each factorisation `β` can be
    /// chosen invertible, i.e. `ker(G(l<j) ∘ γ) = ker G(l<j)` for every `l < j`.
    pub fn is_g_automorphism(&self, j: usize, gamma: &Matrix) -> bool {
        gamma.is_invertible()
            && self.g.poset().below(j).into_iter().all(|l| {
                let r = self.g.map(l, j);
                let rg = r * gamma;
                r.kernel_contained_in(&rg) && rg.kernel_contained_in(r)
            })
    }

    /// `ker_G(k) = ∩_{l≺k} ker G(l≺k)`, as the matrix whose kernel it is.
    fn ker_g(&self, k: usize) -> Matrix {
        let covers: Vec<&Matrix> = self.g.poset().lower_covers(k).iter().map(|&l| self.g.map(l, k)).collect();
        Matrix::vstack(self.g.field(), self.g.dim(k), &covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyReport {
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Checks that every `α(i, j)` is G-linear and the kernel condition
/// `ker_G(k) ⊆ ker(G(j<i) ∘ F(k<i))` for `j, k < i` with `k ≰ j`.
pub fn verify_weak_mackey(m: &MackeyData) -> MackeyReport {
    let poset = m.g.poset();
    let mut violations = Vec::new();
    for i in poset.elements() {
        let below = poset.below(i);
        for &j in &below {
            if !m.is_g_linear(j, &m.alpha(i, j)) {
                violations.push(format!("alpha({}, {}) is not G-linear", poset.id(i), poset.id(j)));
            }
        }
        for &k in &below {
            let kernel = m.ker_g(k);
            for &j in &below {
                if poset.leq(k, j) {
                    continue;
                }
                let composite = m.g.map(j, i) * m.transfer(k, i);
                if !kernel.kernel_contained_in(&composite) {
                    violations.push(format!(
                        "ker_G({k}) is not killed by G({j}<{i}) F({k}<{i})",
                        k = poset.id(k),
                        j = poset.id(j),
                        i = poset.id(i)
                    ));
                }
            }
        }
    }
    MackeyReport { pass: violations.is_empty(), violations }
}

/// Every `α(i, j)` with `j < i` both in `q` is a G-linear automorphism of `G(j)`.
pub fn quasi_unit_in(m: &MackeyData, q: &[usize]) -> bool {
    let poset = m.g.poset();
    q.iter().all(|&i| q.iter().filter(|&&j| poset.lt(j, i)).all(|&j| m.is_g_automorphism(j, &m.alpha(i, j))))
}

/// `G(x) = K^{s ∈ S : s ≤ x}` with coordinate projections as restrictions, and
/// extension by zero as transfers. It is a weak Mackey functor with `α = id`.
pub fn permutation_functor(
    poset: Arc<Poset>,
    field: Field,
    generators: &[usize],
) -> Result<(FunctorOnPoset, Transfers)> {
    let mut gens = generators.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let support: Vec<Vec<usize>> =
        poset.elements().map(|x| gens.iter().copied().filter(|&s| poset.leq(s, x)).collect()).collect();
    // Column `c` of the inclusion of `T(j)` into `T(i)` picks the position of `T(j)[c]`.
    let inclusion = |j: usize, i: usize| {
        Matrix::from_fn(field, support[i].len(), support[j].len(), |r, c| {
            if support[i][r] == support[j][c] {
                field.one()
            } else {
                field.zero()
            }
        })
    };
    let dims = support.iter().map(Vec::len).collect();
    let maps = poset.cover_pairs().map(|(q, p)| ((q, p), inclusion(q, p).transpose())).collect();
    let mut transfers = HashMap::new();
    for i in poset.elements() {
        for j in poset.below(i) {
            transfers.insert((j, i), inclusion(j, i));
        }
    }
    let g = FunctorOnPoset::new(poset, Variance::Contravariant, field, dims, maps)?;
    Ok((g, transfers))
}

/// The vanishing hypothesis at `i`: for every unrefinable `1̂`-chain `c` of length
/// `i`, `G` has a quasi-unit in `{c_0} ∪ ⟨C(c)⟩`. Requires a weak Mackey functor.
pub fn mackey_hypothesis(pair: &ShellablePair, m: &MackeyData, i: usize) -> Result<bool> {
    pair.check_functor(&m.g, Variance::Contravariant)?;
    pair.degree_range(i)?;
    let report = verify_weak_mackey(m);
    if !report.pass {
        return Err(Error::HypothesisFailed(format!("not a weak Mackey functor: {}", report.violations.join("; "))));
    }
    let b = pair.bounded();
    Ok(b.unrefinable_top_chains(i).iter().all(|c| {
        let mut q = b.lower_set(&pair.c_set(c));
        q.push(c.bottom());
        quasi_unit_in(m, &q)
    }))
}

/// Degrees `i ∈ [1, d(P)-1]` at which [`mackey_hypothesis`] holds.
pub fn mackey_predicts_vanishing(pair: &ShellablePair, m: &MackeyData) -> Result<Vec<usize>> {
    let d = pair.bounded().degree_of_poset();
    let mut out = Vec::new();
    for i in 1..d {
        if mackey_hypothesis(pair, m, i)? {
            out.push(i);
        }
    }
    Ok(out)
}
