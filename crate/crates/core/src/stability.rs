//! Stability and co-stability of functors over shellable posets, and the vanishing they predict.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functor::{FunctorOnPoset, Variance};
use crate::poset::{BoundedPoset, Chain};
use crate::shellability::{c_set, verify_ordering, OrderingFamily};

/// A bounded poset together with an ordering family that passed verification.
#[derive(Clone, Debug)]
pub struct ShellablePair {
    bounded: BoundedPoset,
    family: OrderingFamily,
}

impl ShellablePair {
    pub fn new(bounded: BoundedPoset, family: OrderingFamily) -> Result<Self> {
        let report = verify_ordering(&bounded, &family);
        if !report.pass {
            return Err(Error::OrderingInvalid(report.describe(bounded.poset()).join("; ")));
        }
        Ok(ShellablePair { bounded, family })
    }

    pub fn bounded(&self) -> &BoundedPoset {
        &self.bounded
    }

    pub fn family(&self) -> &OrderingFamily {
        &self.family
    }

    pub fn c_set(&self, chain: &Chain) -> Vec<usize> {
        c_set(&self.bounded, &self.family, chain).expect("chains come from the poset")
    }

    pub(crate) fn degree_range(&self, i: usize) -> Result<()> {
        let d = self.bounded.degree_of_poset();
        if i < 1 || i + 1 > d {
            return Err(Error::DegreeOutOfRange { degree: i as i64, lo: 1, hi: d as i64 - 1 });
        }
        Ok(())
    }

    pub(crate) fn check_functor(&self, f: &FunctorOnPoset, variance: Variance) -> Result<()> {
        if f.variance() != variance {
            let expected = if variance == Variance::Contravariant { "contra" } else { "co" };
            return Err(Error::VarianceMismatch { expected });
        }
        if f.poset().ids() != self.bounded.ids() {
            return Err(Error::InvalidInput("functor is defined on a different poset".into()));
        }
        Ok(())
    }
}

/// A chain at which the stability map fails, with its rank data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainFailure {
    pub chain: String,
    pub c_set: Vec<String>,
    /// Dimension of the source of the natural map.
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub degree: usize,
    pub variance: Variance,
    pub pass: bool,
    pub chains_checked: usize,
    pub failures: Vec<ChainFailure>,
}

/// `F(c_0) -> lim_{⟨C(c)⟩} F` is onto for every unrefinable `1̂`-chain of length `i`.
pub fn check_stability(pair: &ShellablePair, f: &FunctorOnPoset, i: usize) -> Result<StabilityReport> {
    pair.check_functor(f, Variance::Contravariant)?;
    pair.degree_range(i)?;
    run(pair, f, i, Variance::Contravariant)
}

/// `colim_{⟨C(c)⟩} F -> F(c_0)` is injective for every unrefinable `1̂`-chain of length `i`.
pub fn check_costability(pair: &ShellablePair, f: &FunctorOnPoset, i: usize) -> Result<StabilityReport> {
    pair.check_functor(f, Variance::Covariant)?;
    pair.degree_range(i)?;
    run(pair, f, i, Variance::Covariant)
}

fn run(pair: &ShellablePair, f: &FunctorOnPoset, i: usize, variance: Variance) -> Result<StabilityReport> {
    let poset = pair.bounded.poset();
    let chains = pair.bounded.unrefinable_top_chains(i);
    let mut failures = Vec::new();
    for chain in &chains {
        let c = pair.c_set(chain);
        let lower = poset.lower_set(&c);
        let top = chain.bottom();
        let (source_dim, target_dim, rank, ok) = match variance {
            Variance::Contravariant => {
                let (lim, m) = f.map_into_limit(top, &lower)?;
                let rank = m.rank();
                (f.dim(top), lim.dim(), rank, rank == lim.dim())
            }
            Variance::Covariant => {
                let (colim, m) = f.map_from_colimit(top, &lower)?;
                let rank = m.rank();
                (colim.dim(), f.dim(top), rank, rank == colim.dim())
            }
        };
        if !ok {
            failures.push(ChainFailure {
                chain: chain.label(poset),
                c_set: c.iter().map(|&x| poset.id(x).to_string()).collect(),
                source_dim,
                target_dim,
                rank,
            });
        }
    }
    Ok(StabilityReport { degree: i, variance, pass: failures.is_empty(), chains_checked: chains.len(), failures })
}

/// Degrees `i` in `1..d(P)` at which (co-)stability holds, so `H^i` (resp. `H_i`) of
/// `P ∖ {1̂}` must vanish.
pub fn predict_vanishing(pair: &ShellablePair, f: &FunctorOnPoset) -> Result<Vec<usize>> {
    let d = pair.bounded.degree_of_poset();
    let mut out = Vec::new();
    for i in 1..d {
        let report = match f.variance() {
            Variance::Contravariant => check_stability(pair, f, i)?,
            Variance::Covariant => check_costability(pair, f, i)?,
        };
        if report.pass {
            out.push(i);
        }
    }
    Ok(out)
}
