//! Inductive fibrant and cofibrant replacements and the (co)homology they compute.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::cylinder::{cocylinder, cylinder, ChainMap, CochainMap};
use crate::error::{Error, Result};
use crate::functor::{coequalizer, equalizer, offsets, FunctorOnPoset, Variance};
use crate::linalg::{ChainComplex, CochainComplex, Field, GradedDims, Matrix, QuotientMap, SubspaceBasis};
use crate::poset::Poset;

/// Degreewise access shared by cochain and chain complexes.
pub trait GradedComplex: Clone {
    fn field(&self) -> Field;
    fn hi(&self) -> i64;
    fn dim(&self, n: i64) -> usize;
}

impl GradedComplex for CochainComplex {
    fn field(&self) -> Field {
        CochainComplex::field(self)
    }
    fn hi(&self) -> i64 {
        CochainComplex::hi(self)
    }
    fn dim(&self, n: i64) -> usize {
        CochainComplex::dim(self, n)
    }
}

impl GradedComplex for ChainComplex {
    fn field(&self) -> Field {
        ChainComplex::field(self)
    }
    fn hi(&self) -> i64 {
        ChainComplex::hi(self)
    }
    fn dim(&self, n: i64) -> usize {
        ChainComplex::dim(self, n)
    }
}

/// A functor from a poset to complexes concentrated in degrees `>= 0`.
///
/// `maps[(q, p)]` holds the degreewise components of the structure map for every
/// relation `q < p`: `K(p) -> K(q)` when contravariant, `K(q) -> K(p)` when covariant.
#[derive(Clone, Debug)]
pub struct ComplexValuedFunctor<K> {
    poset: Arc<Poset>,
    variance: Variance,
    field: Field,
    values: Vec<K>,
    maps: HashMap<(usize, usize), Vec<Matrix>>,
}

pub type FibrantReplacement = ComplexValuedFunctor<CochainComplex>;
pub type CofibrantReplacement = ComplexValuedFunctor<ChainComplex>;

impl<K: GradedComplex> ComplexValuedFunctor<K> {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn value(&self, p: usize) -> &K {
        &self.values[p]
    }

    /// Component in degree `n` of the structure map of `q < p`; zero outside the support.
    pub fn map(&self, q: usize, p: usize, n: i64) -> Matrix {
        assert!(self.poset.lt(q, p), "structure maps exist for q < p only");
        let (src, dst) = match self.variance {
            Variance::Contravariant => (p, q),
            Variance::Covariant => (q, p),
        };
        let shape = (self.values[dst].dim(n), self.values[src].dim(n));
        match usize::try_from(n).ok().and_then(|k| self.maps[&(q, p)].get(k)) {
            Some(m) if m.shape() == shape => m.clone(),
            _ => Matrix::zeros(self.field, shape.0, shape.1),
        }
    }

    fn top_degree(&self, subset: &[usize]) -> i64 {
        subset.iter().map(|&p| self.values[p].hi()).max().unwrap_or(-1)
    }

    /// Arrows `(a, b, n)` over the covers of the induced subposet on `subset`, in local indices.
    fn arrows(&self, subset: &[usize], n: i64) -> Vec<(usize, usize, Matrix)> {
        let (sub, map) = self.poset.induced(subset);
        sub.cover_pairs().map(|(a, b)| (a, b, self.map(map[a], map[b], n))).collect()
    }

    fn dims_at(&self, subset: &[usize], n: i64) -> Vec<usize> {
        subset.iter().map(|&p| self.values[p].dim(n)).collect()
    }
}

/// A degreewise limit together with its bases inside the degreewise products.
#[derive(Clone, Debug)]
pub struct LimitComplex {
    pub elements: Vec<usize>,
    pub complex: CochainComplex,
    pub bases: Vec<SubspaceBasis>,
    pub offsets: Vec<Vec<usize>>,
}

impl LimitComplex {
    /// Projection `lim^n -> K(elements[k])^n`.
    pub fn projection(&self, k: usize, n: i64) -> Matrix {
        let field = self.complex.field();
        let Some(basis) = usize::try_from(n).ok().and_then(|i| self.bases.get(i)) else {
            return Matrix::zeros(field, 0, 0);
        };
        let i = n as usize;
        let start = self.offsets[i][k];
        let end = self.offsets[i].get(k + 1).copied().unwrap_or(basis.ambient_dim());
        basis.basis.submatrix(start..end, 0..basis.dim())
    }
}

/// A degreewise colimit together with its quotient maps out of the degreewise sums.
#[derive(Clone, Debug)]
pub struct ColimitComplex {
    pub elements: Vec<usize>,
    pub complex: ChainComplex,
    pub quotients: Vec<QuotientMap>,
    pub offsets: Vec<Vec<usize>>,
}

impl ColimitComplex {
    /// Coprojection `K(elements[k])_n -> colim_n`.
    pub fn coprojection(&self, k: usize, n: i64) -> Matrix {
        let field = self.complex.field();
        let Some(quotient) = usize::try_from(n).ok().and_then(|i| self.quotients.get(i)) else {
            return Matrix::zeros(field, 0, 0);
        };
        let i = n as usize;
        let start = self.offsets[i][k];
        let end = self.offsets[i].get(k + 1).copied().unwrap_or(quotient.projection.cols());
        quotient.projection.submatrix(0..quotient.dim(), start..end)
    }
}

impl ComplexValuedFunctor<CochainComplex> {
    /// Degreewise limit over the induced subposet on `subset` with the induced differential.
    pub fn limit(&self, subset: &[usize]) -> LimitComplex {
        let elements = sorted(subset);
        let hi = self.top_degree(&elements);
        let mut bases = Vec::new();
        let mut offs = Vec::new();
        for n in 0..=hi {
            let dims = self.dims_at(&elements, n);
            bases.push(equalizer(self.field, &dims, &self.arrows(&elements, n)));
            offs.push(offsets(&dims));
        }
        let mut diffs = Vec::new();
        for n in 0..hi {
            let blocks: Vec<Matrix> = elements.iter().map(|&p| self.values[p].differential(n)).collect();
            let d = Matrix::block_diag(self.field, &blocks.iter().collect::<Vec<_>>());
            let i = n as usize;
            diffs.push(bases[i + 1].coordinates(&(&d * &bases[i].basis)));
        }
        let dims = bases.iter().map(|b| b.dim()).collect();
        let complex = CochainComplex::new(self.field, 0, dims, diffs).expect("limit of complexes is a complex");
        LimitComplex { elements, complex, bases, offsets: offs }
    }

    /// The canonical map `K(p) -> lim_{P_{<p}} K` is onto in every degree.
    pub fn is_fibrant_at(&self, p: usize) -> bool {
        let lim = self.limit(&self.poset.below(p));
        (0..=self.values[p].hi()).all(|n| {
            let blocks: Vec<Matrix> = lim.elements.iter().map(|&q| self.map(q, p, n)).collect();
            let stacked = Matrix::vstack(self.field, self.values[p].dim(n), &blocks.iter().collect::<Vec<_>>());
            let dim = lim.complex.dim(n);
            if dim == 0 {
                return true;
            }
            let basis = &lim.bases[n as usize];
            // The image must lie in the limit and span it.
            let coords = basis.coordinates(&stacked);
            &basis.basis * &coords == stacked && coords.rank() == dim
        })
    }

    pub fn cohomology(&self) -> GradedDims {
        let all: Vec<usize> = self.poset.elements().collect();
        self.limit(&all).complex.cohomology_dims()
    }
}

impl ComplexValuedFunctor<ChainComplex> {
    /// Degreewise colimit over the induced subposet on `subset` with the induced differential.
    pub fn colimit(&self, subset: &[usize]) -> ColimitComplex {
        let elements = sorted(subset);
        let hi = self.top_degree(&elements);
        let mut quotients = Vec::new();
        let mut offs = Vec::new();
        for n in 0..=hi {
            let dims = self.dims_at(&elements, n);
            quotients.push(coequalizer(self.field, &dims, &self.arrows(&elements, n)));
            offs.push(offsets(&dims));
        }
        let mut diffs = Vec::new();
        for n in 1..=hi {
            let blocks: Vec<Matrix> = elements.iter().map(|&p| self.values[p].differential(n)).collect();
            let d = Matrix::block_diag(self.field, &blocks.iter().collect::<Vec<_>>());
            let i = n as usize;
            diffs.push(&(&quotients[i - 1].projection * &d) * &quotients[i].section());
        }
        let dims = quotients.iter().map(|q| q.dim()).collect();
        let complex = ChainComplex::new(self.field, 0, dims, diffs).expect("colimit of complexes is a complex");
        ColimitComplex { elements, complex, quotients, offsets: offs }
    }

    /// The canonical map `colim_{P_{<p}} K -> K(p)` is injective in every degree.
    pub fn is_cofibrant_at(&self, p: usize) -> bool {
        let colim = self.colimit(&self.poset.below(p));
        (0..=colim.complex.hi()).all(|n| {
            let blocks: Vec<Matrix> = colim.elements.iter().map(|&q| self.map(q, p, n)).collect();
            let joined = Matrix::hstack(self.field, self.values[p].dim(n), &blocks.iter().collect::<Vec<_>>());
            let induced = &joined * &colim.quotients[n as usize].section();
            induced.is_injective()
        })
    }

    pub fn homology(&self) -> GradedDims {
        let all: Vec<usize> = self.poset.elements().collect();
        self.colimit(&all).complex.homology_dims()
    }
}

fn sorted(subset: &[usize]) -> Vec<usize> {
    let mut v = subset.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn expect_variance(f: &FunctorOnPoset, v: Variance) -> Result<()> {
    if f.variance() == v {
        Ok(())
    } else {
        Err(Error::VarianceMismatch { expected: if v == Variance::Contravariant { "contra" } else { "co" } })
    }
}

fn lower_closed(f: &FunctorOnPoset, s: &[usize]) -> Result<()> {
    if let Some(&bad) = s.iter().find(|&&p| p >= f.poset().len()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    match f.poset().is_lower_closed(s) {
        Some(missing) => Err(Error::NotLowerClosed(f.poset().id(missing).to_string())),
        None => Ok(()),
    }
}

/// `RF` on the lower-closed subset `s`, built on the induced poset. The returned vector
/// maps its elements back to indices of `F`'s poset.
pub fn fibrant_replacement(f: &FunctorOnPoset, s: &[usize]) -> Result<(FibrantReplacement, Vec<usize>)> {
    expect_variance(f, Variance::Contravariant)?;
    lower_closed(f, s)?;
    let (g, map) = f.restrict(s);
    Ok((build_fibrant(&g)?, map))
}

/// `QF` on the lower-closed subset `s`; dual of [`fibrant_replacement`].
pub fn cofibrant_replacement(f: &FunctorOnPoset, s: &[usize]) -> Result<(CofibrantReplacement, Vec<usize>)> {
    expect_variance(f, Variance::Covariant)?;
    lower_closed(f, s)?;
    let (g, map) = f.restrict(s);
    Ok((build_cofibrant(&g)?, map))
}

/// `H^*(S; F)` for any subset `s`, computed as `H^*(lim_S RF)` over the induced poset.
pub fn cohomology(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    expect_variance(f, Variance::Contravariant)?;
    let (g, _) = f.restrict(s);
    Ok(build_fibrant(&g)?.cohomology())
}

/// `H_*(S; F)` for any subset `s`, computed as `H_*(colim_S QF)`.
pub fn homology(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    expect_variance(f, Variance::Covariant)?;
    let (g, _) = f.restrict(s);
    Ok(build_cofibrant(&g)?.homology())
}

fn build_fibrant(f: &FunctorOnPoset) -> Result<FibrantReplacement> {
    let poset = f.poset_arc();
    let field = f.field();
    let n = poset.len();
    let mut rf = ComplexValuedFunctor {
        poset: poset.clone(),
        variance: Variance::Contravariant,
        field,
        values: vec![CochainComplex::zero(field); n],
        maps: HashMap::new(),
    };
    // Degree-0 component of the inclusion F(p) -> RF(p).
    let mut incl: Vec<Matrix> = vec![Matrix::zeros(field, 0, 0); n];
    for p in poset.by_degree() {
        let lim = rf.limit(&poset.below(p));
        let blocks: Vec<Matrix> = lim.elements.iter().map(|&q| &incl[q] * f.map(q, p)).collect();
        let stacked = Matrix::vstack(field, f.dim(p), &blocks.iter().collect::<Vec<_>>());
        let eps0 = match lim.bases.first() {
            Some(basis) => basis.coordinates(&stacked),
            None => Matrix::zeros(field, 0, f.dim(p)),
        };
        let source = CochainComplex::concentrated(field, 0, f.dim(p));
        let eps = CochainMap::new(source, lim.complex.clone(), BTreeMap::from([(0, eps0)]))?;
        let cyl = cocylinder(&eps)?;
        debug_assert_eq!(cyl.complex.lo(), 0);
        incl[p] = cyl.inclusion.component(0);
        for (k, &q) in lim.elements.iter().enumerate() {
            let comps = (0..=cyl.complex.hi()).map(|d| &lim.projection(k, d) * &cyl.projection.component(d)).collect();
            rf.maps.insert((q, p), comps);
        }
        rf.values[p] = cyl.complex;
    }
    Ok(rf)
}

fn build_cofibrant(f: &FunctorOnPoset) -> Result<CofibrantReplacement> {
    let poset = f.poset_arc();
    let field = f.field();
    let n = poset.len();
    let mut qf = ComplexValuedFunctor {
        poset: poset.clone(),
        variance: Variance::Covariant,
        field,
        values: vec![ChainComplex::concentrated(field, 0, 0); n],
        maps: HashMap::new(),
    };
    // Degree-0 component of the augmentation QF(p) -> F(p).
    let mut aug: Vec<Matrix> = vec![Matrix::zeros(field, 0, 0); n];
    for p in poset.by_degree() {
        let colim = qf.colimit(&poset.below(p));
        let blocks: Vec<Matrix> = colim.elements.iter().map(|&q| f.map(q, p) * &aug[q]).collect();
        let joined = Matrix::hstack(field, f.dim(p), &blocks.iter().collect::<Vec<_>>());
        let f0 = match colim.quotients.first() {
            Some(quotient) => &joined * &quotient.section(),
            None => Matrix::zeros(field, f.dim(p), 0),
        };
        let target = ChainComplex::concentrated(field, 0, f.dim(p));
        let fmap = ChainMap::new(colim.complex.clone(), target, BTreeMap::from([(0, f0)]))?;
        let cyl = cylinder(&fmap)?;
        debug_assert_eq!(cyl.complex.lo(), 0);
        aug[p] = cyl.projection.component(0);
        for (k, &q) in colim.elements.iter().enumerate() {
            let comps =
                (0..=cyl.complex.hi()).map(|d| &cyl.inclusion.component(d) * &colim.coprojection(k, d)).collect();
            qf.maps.insert((q, p), comps);
        }
        qf.values[p] = cyl.complex;
    }
    Ok(qf)
}
