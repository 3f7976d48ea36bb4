//! Functors from a finite poset to finite-dimensional vector spaces.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, QuotientMap, SubspaceBasis};
use crate::poset::Poset;

/// Direction of the structure maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    /// `F(q < p): F(p) -> F(q)`.
    #[serde(rename = "contra")]
    Contravariant,
    /// `F(q < p): F(q) -> F(p)`.
    #[serde(rename = "co")]
    Covariant,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Contravariant => "contra",
            Variance::Covariant => "co",
        })
    }
}

/// A validated functor on a poset.
///
/// Only cover maps are supplied; every relation map `F(q < p)` is derived by
/// composition and cached, which is well defined because path independence is
/// checked at construction.
#[derive(Clone, Debug)]
pub struct FunctorOnPoset {
    poset: Arc<Poset>,
    variance: Variance,
    field: Field,
    dims: Vec<usize>,
    /// `relation[q][p]` for `q ≤ p`.
    relation: Vec<Vec<Option<Matrix>>>,
}

impl FunctorOnPoset {
    /// Builds and validates a functor from its cover maps.
    ///
    /// A cover whose source or target is zero may be omitted. Errors with
    /// `NotFunctorial` listing every pair whose composites disagree.
    pub fn new(
        poset: Arc<Poset>,
        variance: Variance,
        field: Field,
        dims: Vec<usize>,
        mut cover_maps: HashMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::InvalidInput(format!("{} dimensions for {} elements", dims.len(), poset.len())));
        }
        let shape = |q: usize, p: usize| match variance {
            Variance::Contravariant => (dims[q], dims[p]),
            Variance::Covariant => (dims[p], dims[q]),
        };
        for (q, p) in poset.cover_pairs() {
            let (r, c) = shape(q, p);
            let m = match cover_maps.get(&(q, p)) {
                Some(m) => m,
                None if r == 0 || c == 0 => {
                    cover_maps.insert((q, p), Matrix::zeros(field, r, c));
                    continue;
                }
                None => return Err(Error::MissingCoverMap { q: poset.id(q).into(), p: poset.id(p).into() }),
            };
            if m.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: m.field() });
            }
            if m.shape() != (r, c) {
                return Err(Error::ShapeMismatch {
                    context: format!("map {}<{}", poset.id(q), poset.id(p)),
                    expected: (r, c),
                    found: m.shape(),
                });
            }
        }
        if let Some(&(q, p)) = cover_maps.keys().find(|&&(q, p)| !poset.covers(q, p)) {
            return Err(Error::NonCoverPair {
                q: poset.id(q).into(),
                p: poset.id(p).into(),
                r: "(map given for a non-cover)".into(),
            });
        }
        let (relation, violations) = compose_relations(&poset, variance, field, &dims, &cover_maps);
        if !violations.is_empty() {
            return Err(Error::NotFunctorial(violations));
        }
        Ok(FunctorOnPoset { poset, variance, field, dims, relation })
    }

    /// Like [`FunctorOnPoset::new`] but returns the violation list instead of failing.
    pub fn validate(
        poset: &Poset,
        variance: Variance,
        field: Field,
        dims: &[usize],
        cover_maps: &HashMap<(usize, usize), Matrix>,
    ) -> Vec<String> {
        compose_relations(poset, variance, field, dims, cover_maps).1
    }

    /// `M` everywhere with identity maps.
    pub fn constant(poset: Arc<Poset>, variance: Variance, field: Field, m: usize) -> Self {
        let support: Vec<usize> = poset.elements().collect();
        Self::constant_on(poset, variance, field, m, &support).expect("constant functor is functorial")
    }

    /// `M` on `support` with identity maps between support elements, zero elsewhere.
    /// `support` must be convex for the result to be a functor.
    pub fn constant_on(
        poset: Arc<Poset>,
        variance: Variance,
        field: Field,
        m: usize,
        support: &[usize],
    ) -> Result<Self> {
        let mut inside = vec![false; poset.len()];
        for &s in support {
            inside[s] = true;
        }
        let dims: Vec<usize> = inside.iter().map(|&b| if b { m } else { 0 }).collect();
        let maps = poset
            .cover_pairs()
            .filter(|&(q, p)| inside[q] && inside[p])
            .map(|k| (k, Matrix::identity(field, m)))
            .collect();
        Self::new(poset, variance, field, dims, maps)
    }

    /// The atomic functor `A(p, K^m)`: `K^m` at `p`, zero elsewhere.
    pub fn atomic(poset: Arc<Poset>, variance: Variance, field: Field, p: usize, m: usize) -> Self {
        let mut dims = vec![0; poset.len()];
        dims[p] = m;
        Self::new(poset, variance, field, dims, HashMap::new()).expect("atomic functor is functorial")
    }

    pub fn zero(poset: Arc<Poset>, variance: Variance, field: Field) -> Self {
        let dims = vec![0; poset.len()];
        Self::new(poset, variance, field, dims, HashMap::new()).expect("zero functor is functorial")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> Arc<Poset> {
        Arc::clone(&self.poset)
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims[p]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The map attached to `q ≤ p`, in the direction given by the variance.
    pub fn map(&self, q: usize, p: usize) -> &Matrix {
        self.relation[q][p].as_ref().unwrap_or_else(|| panic!("{} is not below {}", self.poset.id(q), self.poset.id(p)))
    }

    pub fn try_map(&self, q: usize, p: usize) -> Result<&Matrix> {
        self.relation[q][p]
            .as_ref()
            .ok_or_else(|| Error::NotBelow { q: self.poset.id(q).into(), p: self.poset.id(p).into() })
    }

    /// Cover maps keyed by `(q, p)`.
    pub fn cover_maps(&self) -> HashMap<(usize, usize), Matrix> {
        self.poset.cover_pairs().map(|(q, p)| ((q, p), self.map(q, p).clone())).collect()
    }

    /// Restriction to the induced subposet on `subset`; returns the new functor and
    /// the index map back into this functor's poset.
    pub fn restrict(&self, subset: &[usize]) -> (FunctorOnPoset, Vec<usize>) {
        let (sub, map) = self.poset.induced(subset);
        let dims = map.iter().map(|&p| self.dims[p]).collect();
        let maps = sub.cover_pairs().map(|(q, p)| ((q, p), self.map(map[q], map[p]).clone())).collect();
        let f = FunctorOnPoset::new(Arc::new(sub), self.variance, self.field, dims, maps)
            .expect("restriction of a functor is a functor");
        (f, map)
    }

    /// Same functor with dimensions and maps read through `iso[p]`, an invertible
    /// matrix acting on `F(p)`. Used to produce random isomorphic copies.
    pub fn conjugate(&self, iso: &[Matrix]) -> Result<FunctorOnPoset> {
        let inverses: Vec<Matrix> = iso
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidInput("basis change not invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .poset
            .cover_pairs()
            .map(|(q, p)| {
                let m = self.map(q, p);
                let new = match self.variance {
                    Variance::Contravariant => &(&iso[q] * m) * &inverses[p],
                    Variance::Covariant => &(&iso[p] * m) * &inverses[q],
                };
                ((q, p), new)
            })
            .collect();
        FunctorOnPoset::new(self.poset_arc(), self.variance, self.field, self.dims.clone(), maps)
    }

    fn expect_variance(&self, v: Variance) -> Result<()> {
        if self.variance != v {
            return Err(Error::VarianceMismatch {
                expected: match v {
                    Variance::Contravariant => "contravariant",
                    Variance::Covariant => "covariant",
                },
            });
        }
        Ok(())
    }

    /// Arrows of the diagram restricted to the covers of the induced subposet on `q`.
    fn subdiagram_arrows(&self, q: &[usize]) -> Vec<(usize, usize, Matrix)> {
        let (sub, map) = self.poset.induced(q);
        let local: HashMap<usize, usize> = q.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        sub.cover_pairs().map(|(a, b)| (local[&map[a]], local[&map[b]], self.map(map[a], map[b]).clone())).collect()
    }

    /// Limit of a contravariant functor over the induced subposet on `q`.
    pub fn limit(&self, q: &[usize]) -> Result<LimitResult> {
        self.expect_variance(Variance::Contravariant)?;
        let elements = sorted_unique(q);
        let dims: Vec<usize> = elements.iter().map(|&p| self.dims[p]).collect();
        let basis = equalizer(self.field, &dims, &self.subdiagram_arrows(&elements));
        Ok(LimitResult { offsets: offsets(&dims), elements, dims, basis })
    }

    /// Colimit of a covariant functor over the induced subposet on `q`.
    pub fn colimit(&self, q: &[usize]) -> Result<ColimitResult> {
        self.expect_variance(Variance::Covariant)?;
        let elements = sorted_unique(q);
        let dims: Vec<usize> = elements.iter().map(|&p| self.dims[p]).collect();
        let quotient = coequalizer(self.field, &dims, &self.subdiagram_arrows(&elements));
        Ok(ColimitResult { offsets: offsets(&dims), elements, dims, quotient })
    }

    /// The canonical map `F(p) -> lim_Q F` for `Q ⊆ P_{<p}`, in the coordinates of
    /// [`LimitResult::basis`].
    pub fn map_into_limit(&self, p: usize, q: &[usize]) -> Result<(LimitResult, Matrix)> {
        let lim = self.limit(q)?;
        let blocks = lim
            .elements
            .iter()
            .map(|&x| self.below_checked(x, p).map(|_| self.map(x, p)))
            .collect::<Result<Vec<_>>>()?;
        let stacked = Matrix::vstack(self.field, self.dims[p], &blocks);
        let m = lim.basis.coordinates(&stacked);
        Ok((lim, m))
    }

    /// The canonical map `colim_Q F -> F(p)` for `Q ⊆ P_{<p}`.
    pub fn map_from_colimit(&self, p: usize, q: &[usize]) -> Result<(ColimitResult, Matrix)> {
        let colim = self.colimit(q)?;
        let blocks = colim
            .elements
            .iter()
            .map(|&x| self.below_checked(x, p).map(|_| self.map(x, p)))
            .collect::<Result<Vec<_>>>()?;
        let joined = Matrix::hstack(self.field, self.dims[p], &blocks);
        let m = &joined * &colim.quotient.section();
        Ok((colim, m))
    }

    fn below_checked(&self, q: usize, p: usize) -> Result<()> {
        if self.poset.lt(q, p) {
            Ok(())
        } else {
            Err(Error::NotBelow { q: self.poset.id(q).into(), p: self.poset.id(p).into() })
        }
    }
}

/// `lim_Q F` as a subspace of `∏_{p∈Q} F(p)`.
#[derive(Clone, Debug)]
pub struct LimitResult {
    /// Elements of `Q` in index order; blocks of the product follow this order.
    pub elements: Vec<usize>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub basis: SubspaceBasis,
}

impl LimitResult {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Projection `lim_Q F -> F(elements[k])`.
    pub fn projection(&self, k: usize) -> Matrix {
        let r = self.offsets[k];
        self.basis.basis.submatrix(r..r + self.dims[k], 0..self.dim())
    }
}

/// `colim_Q F` as a quotient of `⊕_{p∈Q} F(p)`.
#[derive(Clone, Debug)]
pub struct ColimitResult {
    pub elements: Vec<usize>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub quotient: QuotientMap,
}

impl ColimitResult {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Coprojection `F(elements[k]) -> colim_Q F`.
    pub fn coprojection(&self, k: usize) -> Matrix {
        let c = self.offsets[k];
        self.quotient.projection.submatrix(0..self.dim(), c..c + self.dims[k])
    }
}

fn sorted_unique(q: &[usize]) -> Vec<usize> {
    let mut v = q.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|&d| {
            let o = acc;
            acc += d;
            o
        })
        .collect()
}

/// Subspace of `⊕ V_k` of tuples with `M x_p = x_q` for every arrow `(q, p, M)`,
/// `M: V_p -> V_q`.
pub fn equalizer(field: Field, dims: &[usize], arrows: &[(usize, usize, Matrix)]) -> SubspaceBasis {
    let off = offsets(dims);
    let total: usize = dims.iter().sum();
    let rows: usize = arrows.iter().map(|(q, _, _)| dims[*q]).sum();
    let mut d = Matrix::zeros(field, rows, total);
    let mut r = 0;
    for (q, p, m) in arrows {
        d.paste(r, off[*p], m);
        d.paste(r, off[*q], &(-&Matrix::identity(field, dims[*q])));
        r += dims[*q];
    }
    d.kernel()
}

/// Quotient of `⊕ V_k` by `x_q - M x_q` for every arrow `(q, p, M)`, `M: V_q -> V_p`.
pub fn coequalizer(field: Field, dims: &[usize], arrows: &[(usize, usize, Matrix)]) -> QuotientMap {
    let off = offsets(dims);
    let total: usize = dims.iter().sum();
    let cols: usize = arrows.iter().map(|(q, _, _)| dims[*q]).sum();
    let mut d = Matrix::zeros(field, total, cols);
    let mut c = 0;
    for (q, p, m) in arrows {
        d.paste(off[*q], c, &Matrix::identity(field, dims[*q]));
        d.paste(off[*p], c, &(-m));
        c += dims[*q];
    }
    d.cokernel()
}

type Relations = Vec<Vec<Option<Matrix>>>;

/// Composes cover maps into relation maps and collects path-independence violations.
///
/// By induction on `p` in degree order: `F(q<p)` is well defined iff all the
/// composites through the lower covers `r` of `p` with `q ≤ r` agree, given that
/// each `F(q ≤ r)` is already well defined. This is equivalent to comparing every
/// unrefinable chain from `q` to `p`.
fn compose_relations(
    poset: &Poset,
    variance: Variance,
    field: Field,
    dims: &[usize],
    cover_maps: &HashMap<(usize, usize), Matrix>,
) -> (Relations, Vec<String>) {
    let n = poset.len();
    let mut rel: Relations = vec![vec![None; n]; n];
    // Witness path (as labels) for each computed relation, for reporting.
    let mut path: Vec<Vec<String>> = vec![vec![String::new(); n]; n];
    let mut violations = Vec::new();
    for p in poset.by_degree() {
        rel[p][p] = Some(Matrix::identity(field, dims[p]));
        path[p][p] = poset.id(p).to_string();
        let mut below: Vec<usize> = poset.below(p);
        below.sort_by_key(|&q| std::cmp::Reverse(poset.degree(q)));
        for q in below {
            let mut first: Option<(Matrix, String)> = None;
            for &r in poset.lower_covers(p) {
                if !poset.leq(q, r) {
                    continue;
                }
                let cover = match cover_maps.get(&(r, p)) {
                    Some(m) => m.clone(),
                    None => match variance {
                        Variance::Contravariant => Matrix::zeros(field, dims[r], dims[p]),
                        Variance::Covariant => Matrix::zeros(field, dims[p], dims[r]),
                    },
                };
                let lower = rel[q][r].as_ref().expect("computed earlier");
                let composite = match variance {
                    Variance::Contravariant => lower * &cover,
                    Variance::Covariant => &cover * lower,
                };
                let label = format!("{}<{}", path[q][r], poset.id(p));
                match &first {
                    None => first = Some((composite, label)),
                    Some((m, l)) if *m != composite => {
                        violations.push(format!("{}<{}: {} differs from {}", poset.id(q), poset.id(p), l, label));
                    }
                    Some(_) => {}
                }
            }
            let (m, l) = first.expect("q < p has a cover in between");
            rel[q][p] = Some(m);
            path[q][p] = l;
        }
    }
    (rel, violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn diamond() -> Arc<Poset> {
        Arc::new(Poset::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap())
    }

    #[test]
    fn constant_functor_is_valid() {
        let f = FunctorOnPoset::constant(diamond(), Variance::Contravariant, Q, 2);
        assert_eq!(f.map(0, 3), &Matrix::identity(Q, 2));
    }

    #[test]
    fn negated_edge_breaks_functoriality() {
        let p = diamond();
        let mut maps: HashMap<_, _> = p.cover_pairs().map(|k| (k, Matrix::identity(Q, 1))).collect();
        maps.insert((0, 1), Matrix::from_i64(Q, &[[-1]]));
        let err = FunctorOnPoset::new(p, Variance::Contravariant, Q, vec![1; 4], maps).unwrap_err();
        match err {
            Error::NotFunctorial(v) => {
                assert_eq!(v.len(), 1);
                assert!(v[0].starts_with("0<1:"), "{}", v[0]);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_and_misshapen_maps() {
        let p = diamond();
        let err = FunctorOnPoset::new(p.clone(), Variance::Covariant, Q, vec![1; 4], HashMap::new()).unwrap_err();
        assert!(matches!(err, Error::MissingCoverMap { .. }));
        let maps = p.cover_pairs().map(|k| (k, Matrix::identity(Q, 2))).collect();
        let err = FunctorOnPoset::new(p, Variance::Covariant, Q, vec![1; 4], maps).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn limits_of_simple_diagrams() {
        let f = FunctorOnPoset::constant(diamond(), Variance::Contravariant, Q, 1);
        assert_eq!(f.limit(&[1]).unwrap().dim(), 1);
        assert_eq!(f.limit(&[1, 2]).unwrap().dim(), 2);
        assert_eq!(f.limit(&[0, 1, 2]).unwrap().dim(), 1);
        assert_eq!(f.limit(&[]).unwrap().dim(), 0);
        let (lim, m) = f.map_into_limit(3, &[0, 1, 2]).unwrap();
        assert_eq!(lim.dim(), 1);
        assert!(m.is_surjective());
        assert!(matches!(f.map_into_limit(1, &[2]), Err(Error::NotBelow { .. })));
    }

    #[test]
    fn colimits_of_simple_diagrams() {
        let f = FunctorOnPoset::constant(diamond(), Variance::Covariant, Q, 1);
        assert_eq!(f.colimit(&[1, 2]).unwrap().dim(), 2);
        assert_eq!(f.colimit(&[0, 1, 2]).unwrap().dim(), 1);
        let (_, m) = f.map_from_colimit(3, &[0, 1, 2]).unwrap();
        assert!(m.is_injective());
        let z = FunctorOnPoset::zero(diamond(), Variance::Covariant, Q);
        assert_eq!(z.colimit(&[0, 1, 2, 3]).unwrap().dim(), 0);
        assert!(matches!(f.limit(&[0]), Err(Error::VarianceMismatch { .. })));
    }

    #[test]
    fn restriction_keeps_maps() {
        let f = FunctorOnPoset::constant(diamond(), Variance::Contravariant, Q, 1);
        let (g, map) = f.restrict(&[0, 3]);
        assert_eq!(map, vec![0, 3]);
        assert!(g.poset().covers(0, 1));
        assert_eq!(g.map(0, 1), &Matrix::identity(Q, 1));
    }
}
