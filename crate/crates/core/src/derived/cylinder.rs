//! Mapping cocylinders of cochain maps and mapping cylinders of chain maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, CochainComplex, Field, Matrix};

/// A degreewise map of cochain complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct CochainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl CochainMap {
    /// Missing components are zero. Checks shapes and `∂ f = f ∂`.
    pub fn new(source: CochainComplex, target: CochainComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        let m = CochainMap { source, target, components };
        let (lo, hi) = span(&[(m.source.lo(), m.source.hi()), (m.target.lo(), m.target.hi())]);
        for (&n, f) in &m.components {
            let want = (m.target.dim(n), m.source.dim(n));
            if f.shape() != want {
                return Err(Error::ShapeMismatch {
                    context: format!("chain map degree {n}"),
                    expected: want,
                    found: f.shape(),
                });
            }
        }
        for n in lo - 1..=hi {
            let left = &m.target.differential(n) * &m.component(n);
            let right = &m.component(n + 1) * &m.source.differential(n);
            if left != right {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(m)
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field(), self.target.dim(n), self.source.dim(n)))
    }

    pub fn compose(&self, first: &CochainMap) -> Result<CochainMap> {
        let (lo, hi) = span(&[(first.source.lo(), first.source.hi())]);
        let comps = (lo..=hi).map(|n| (n, &self.component(n) * &first.component(n))).collect();
        CochainMap::new(first.source.clone(), self.target.clone(), comps)
    }
}

/// A degreewise map of chain complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        let m = ChainMap { source, target, components };
        let (lo, hi) = span(&[(m.source.lo(), m.source.hi()), (m.target.lo(), m.target.hi())]);
        for (&n, f) in &m.components {
            let want = (m.target.dim(n), m.source.dim(n));
            if f.shape() != want {
                return Err(Error::ShapeMismatch {
                    context: format!("chain map degree {n}"),
                    expected: want,
                    found: f.shape(),
                });
            }
        }
        for n in lo..=hi + 1 {
            let left = &m.target.differential(n) * &m.component(n);
            let right = &m.component(n - 1) * &m.source.differential(n);
            if left != right {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(m)
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field(), self.target.dim(n), self.source.dim(n)))
    }
}

fn span(ranges: &[(i64, i64)]) -> (i64, i64) {
    let lo = ranges.iter().map(|r| r.0).min().unwrap_or(0);
    let hi = ranges.iter().map(|r| r.1).max().unwrap_or(-1);
    (lo, hi)
}

/// `cocyl(f)` with its factorisation `f = π ∘ i`.
#[derive(Clone, Debug)]
pub struct Cocylinder {
    pub complex: CochainComplex,
    pub inclusion: CochainMap,
    pub projection: CochainMap,
}

/// `cocyl(f)^n = C^n ⊕ D^{n-1} ⊕ D^n` with `∂(c, d, d') = (∂c, d' - f(c) - ∂d, ∂d')`,
/// `i(c) = (c, 0, f(c))` and `π(c, d, d') = d'`.
pub fn cocylinder(f: &CochainMap) -> Result<Cocylinder> {
    let (c, d) = (&f.source, &f.target);
    let field = c.field();
    let (lo, hi) = span(&[(c.lo(), c.hi()), (d.lo(), d.hi() + 1)]);
    let dim = |n: i64| c.dim(n) + d.dim(n - 1) + d.dim(n);
    let dims: Vec<usize> = (lo..=hi).map(dim).collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let mut m = Matrix::zeros(field, dim(n + 1), dim(n));
        let (c0, c1) = (c.dim(n), c.dim(n + 1));
        let (dm1, d0) = (d.dim(n - 1), d.dim(n));
        m.paste(0, 0, &c.differential(n));
        m.paste(c1, 0, &(-&f.component(n)));
        m.paste(c1, c0, &(-&d.differential(n - 1)));
        m.paste(c1, c0 + dm1, &Matrix::identity(field, d0));
        m.paste(c1 + d0, c0 + dm1, &d.differential(n));
        diffs.push(m);
    }
    let complex = match CochainComplex::new(field, lo, dims, diffs) {
        Ok(x) => x,
        Err(Error::NotAComplex { degree }) => return Err(Error::NotChainMap { degree }),
        Err(e) => return Err(e),
    };
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (c0, dm1, d0) = (c.dim(n), d.dim(n - 1), d.dim(n));
        let mut i = Matrix::zeros(field, dim(n), c0);
        i.paste(0, 0, &Matrix::identity(field, c0));
        i.paste(c0 + dm1, 0, &f.component(n));
        inc.insert(n, i);
        let mut p = Matrix::zeros(field, d0, dim(n));
        p.paste(0, c0 + dm1, &Matrix::identity(field, d0));
        proj.insert(n, p);
    }
    Ok(Cocylinder {
        inclusion: CochainMap::new(c.clone(), complex.clone(), inc)?,
        projection: CochainMap::new(complex.clone(), d.clone(), proj)?,
        complex,
    })
}

/// `cyl(f)` with its factorisation `f = π ∘ i`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cyl(f)_n = C_n ⊕ C_{n-1} ⊕ D_n` with `∂(c, c', d) = (∂c + c', -∂c', ∂d - f(c'))`,
/// `i(c) = (c, 0, 0)` and `π(c, c', d) = f(c) + d`.
pub fn cylinder(f: &ChainMap) -> Result<Cylinder> {
    let (c, d) = (&f.source, &f.target);
    let field = c.field();
    let (lo, hi) = span(&[(c.lo(), c.hi() + 1), (d.lo(), d.hi())]);
    let dim = |n: i64| c.dim(n) + c.dim(n - 1) + d.dim(n);
    let dims: Vec<usize> = (lo..=hi).map(dim).collect();
    let mut diffs = Vec::new();
    // Differential from degree n to n - 1, for n in lo+1..=hi.
    for n in lo + 1..=hi {
        let mut m = Matrix::zeros(field, dim(n - 1), dim(n));
        let (cn, cn1, cn2) = (c.dim(n), c.dim(n - 1), c.dim(n - 2));
        m.paste(0, 0, &c.differential(n));
        m.paste(0, cn, &Matrix::identity(field, cn1));
        m.paste(cn1, cn, &(-&c.differential(n - 1)));
        m.paste(cn1 + cn2, cn, &(-&f.component(n - 1)));
        m.paste(cn1 + cn2, cn + cn1, &d.differential(n));
        diffs.push(m);
    }
    let complex = match ChainComplex::new(field, lo, dims, diffs) {
        Ok(x) => x,
        Err(Error::NotAComplex { degree }) => return Err(Error::NotChainMap { degree }),
        Err(e) => return Err(e),
    };
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for n in lo..=hi {
        let (cn, cn1, dn) = (c.dim(n), c.dim(n - 1), d.dim(n));
        let mut i = Matrix::zeros(field, dim(n), cn);
        i.paste(0, 0, &Matrix::identity(field, cn));
        inc.insert(n, i);
        let mut p = Matrix::zeros(field, dn, dim(n));
        p.paste(0, 0, &f.component(n));
        p.paste(0, cn + cn1, &Matrix::identity(field, dn));
        proj.insert(n, p);
    }
    Ok(Cylinder {
        inclusion: ChainMap::new(c.clone(), complex.clone(), inc)?,
        projection: ChainMap::new(complex.clone(), d.clone(), proj)?,
        complex,
    })
}

/// The complex with a single space `K^dim` in degree 0, as a cochain complex.
pub fn cochain_point(field: Field, dim: usize) -> CochainComplex {
    CochainComplex::concentrated(field, 0, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::GradedDims;

    const Q: Field = Field::Rational;

    #[test]
    fn cocylinder_of_identity() {
        let k = cochain_point(Q, 1);
        let f = CochainMap::new(k.clone(), k, BTreeMap::from([(0, Matrix::identity(Q, 1))])).unwrap();
        let cyl = cocylinder(&f).unwrap();
        assert_eq!(cyl.complex.dims(), [(0, 2), (1, 1)].into_iter().collect());
        assert_eq!(cyl.complex.cohomology_dims(), GradedDims::concentrated(0, 1));
        let composite = cyl.projection.compose(&cyl.inclusion).unwrap();
        assert_eq!(composite.component(0), f.component(0));
    }

    #[test]
    fn cocylinder_onto_zero_is_source() {
        let c = cochain_point(Q, 3);
        let zero = CochainComplex::zero(Q);
        let f = CochainMap::new(c.clone(), zero, BTreeMap::new()).unwrap();
        let cyl = cocylinder(&f).unwrap();
        assert_eq!(cyl.complex.dims(), c.dims());
    }

    #[test]
    fn rejects_non_chain_maps() {
        let c = cochain_point(Q, 1);
        let d = CochainComplex::new(Q, 0, vec![1, 1], vec![Matrix::identity(Q, 1)]).unwrap();
        let err = CochainMap::new(c, d, BTreeMap::from([(0, Matrix::identity(Q, 1))])).unwrap_err();
        assert_eq!(err, Error::NotChainMap { degree: 0 });
    }

    #[test]
    fn cylinder_of_identity_and_zero_source() {
        let k = ChainComplex::concentrated(Q, 0, 1);
        let f = ChainMap::new(k.clone(), k.clone(), BTreeMap::from([(0, Matrix::identity(Q, 1))])).unwrap();
        let cyl = cylinder(&f).unwrap();
        assert_eq!(cyl.complex.homology_dims(), GradedDims::concentrated(0, 1));
        let zero = ChainComplex::new(Q, 0, vec![], vec![]).unwrap();
        let g = ChainMap::new(zero, k.clone(), BTreeMap::new()).unwrap();
        assert_eq!(cylinder(&g).unwrap().complex.dims(), k.dims());
    }
}
