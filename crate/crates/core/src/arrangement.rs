//! Hyperplane arrangements over the rationals: intersection lattices, coatom orderings
//! whose initial segments contain bases, exterior powers and the `d_{i,j}` tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::derived::homology;
use crate::error::{Error, Result};
use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{Field, Matrix, Scalar};
use crate::mobius::MobiusTable;
use crate::poset::{BoundedPoset, Poset};
use crate::shellability::OrderingFamily;

const Q: Field = Field::Rational;

/// Finitely many linear hyperplanes of `Q^n`, given by normal covectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    normals: Vec<Matrix>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, normals: Vec<Vec<Scalar>>) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::InvalidInput("an arrangement needs at least one hyperplane".into()));
        }
        let mut rows = Vec::new();
        for (k, n) in normals.into_iter().enumerate() {
            if n.len() != ambient_dim {
                return Err(Error::ShapeMismatch {
                    context: format!("normal {k}"),
                    expected: (1, ambient_dim),
                    found: (1, n.len()),
                });
            }
            let row = Matrix::from_rows(Q, ambient_dim, vec![n])?;
            if row.is_zero() {
                return Err(Error::InvalidInput(format!("normal {k} is zero")));
            }
            for (l, other) in rows.iter().enumerate() {
                if Matrix::vstack(Q, ambient_dim, &[other, &row]).rank() < 2 {
                    return Err(Error::InvalidInput(format!("normals {l} and {k} are proportional")));
                }
            }
            rows.push(row);
        }
        Ok(Arrangement { ambient_dim, normals: rows })
    }

    pub fn from_i64(ambient_dim: usize, normals: &[Vec<i64>]) -> Result<Self> {
        let rows = normals.iter().map(|r| r.iter().map(|&x| Q.from_i64(x)).collect()).collect();
        Arrangement::new(ambient_dim, rows)
    }

    /// The coordinate hyperplanes `x_k = 0` of `Q^n`.
    pub fn coordinate(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|c| i64::from(c == k)).collect()).collect();
        Arrangement::from_i64(n, &rows).expect("coordinate normals are independent")
    }

    /// The braid hyperplanes `x_a = x_b` of `Q^n`.
    pub fn braid(n: usize) -> Self {
        let mut rows = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                rows.push(
                    (0..n)
                        .map(|c| {
                            if c == a {
                                1
                            } else if c == b {
                                -1
                            } else {
                                0
                            }
                        })
                        .collect(),
                );
            }
        }
        Arrangement::from_i64(n, &rows).expect("braid normals are pairwise independent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normal(&self, k: usize) -> &Matrix {
        &self.normals[k]
    }

    fn stacked(&self, hyperplanes: &[usize]) -> Matrix {
        let rows: Vec<&Matrix> = hyperplanes.iter().map(|&k| &self.normals[k]).collect();
        Matrix::vstack(Q, self.ambient_dim, &rows)
    }
}

/// An intersection of hyperplanes.
#[derive(Clone, Debug)]
pub struct Flat {
    /// Every hyperplane containing the flat.
    pub hyperplanes: Vec<usize>,
    /// Nonzero rows of the reduced echelon form of the annihilator.
    pub annihilator: Matrix,
    pub dim: usize,
    /// Columns form the fixed basis of the flat.
    pub basis: Matrix,
}

/// The lattice of flats ordered by inclusion, with `V` on top.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    arrangement: Arrangement,
    bounded: BoundedPoset,
    flats: Vec<Flat>,
}

impl IntersectionLattice {
    pub fn new(arrangement: &Arrangement) -> Self {
        let n = arrangement.ambient_dim;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![Vec::new()];
        seen.insert(Vec::new());
        while let Some(set) = queue.pop() {
            for h in 0..arrangement.len() {
                if set.contains(&h) {
                    continue;
                }
                let mut gens = set.clone();
                gens.push(h);
                let closed = closure(arrangement, &gens);
                if seen.insert(closed.clone()) {
                    queue.push(closed);
                }
            }
        }
        let mut flats: Vec<Flat> = seen
            .into_iter()
            .map(|hyperplanes| {
                let rref = arrangement.stacked(&hyperplanes).rref();
                let rank = rref.pivots.len();
                let annihilator = rref.reduced.submatrix(0..rank, 0..n);
                let basis = annihilator.kernel().basis;
                Flat { hyperplanes, annihilator, dim: n - rank, basis }
            })
            .collect();
        flats.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.hyperplanes.cmp(&b.hyperplanes)));
        let ids: Vec<String> = flats
            .iter()
            .map(|f| {
                if f.hyperplanes.is_empty() {
                    "V".to_string()
                } else {
                    let items: Vec<String> = f.hyperplanes.iter().map(usize::to_string).collect();
                    format!("{{{}}}", items.join(","))
                }
            })
            .collect();
        let mut covers = Vec::new();
        for (x, fx) in flats.iter().enumerate() {
            for (y, fy) in flats.iter().enumerate() {
                if fy.dim == fx.dim + 1 && fy.hyperplanes.iter().all(|h| fx.hyperplanes.contains(h)) {
                    covers.push((ids[x].clone(), ids[y].clone()));
                }
            }
        }
        let poset = Poset::new(&ids, &covers).expect("inclusion of flats is a partial order");
        let bounded = BoundedPoset::new(poset).expect("the lattice of flats is bounded");
        IntersectionLattice { arrangement: arrangement.clone(), bounded, flats }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn bounded(&self) -> &BoundedPoset {
        &self.bounded
    }

    pub fn flat(&self, x: usize) -> &Flat {
        &self.flats[x]
    }

    /// `d(L) = dim V - dim 0̂`.
    pub fn degree(&self) -> usize {
        self.bounded.degree_of_poset()
    }

    /// `dim ⟨I⟩_K` inside `x^*` for a set `I` of coatoms of `x`.
    pub fn span_rank(&self, x: usize, coatoms: &[usize]) -> usize {
        let n = self.arrangement.ambient_dim;
        let mut rows: Vec<&Matrix> = vec![&self.flats[x].annihilator];
        rows.extend(coatoms.iter().map(|&y| &self.flats[y].annihilator));
        Matrix::vstack(Q, n, &rows).rank() - self.flats[x].annihilator.rows()
    }

    /// Elements `x` where `dim ⟨L_{≺x}⟩_K ≠ d(x)`.
    pub fn span_dimension_violations(&self) -> Vec<String> {
        let p = self.bounded.poset();
        p.elements()
            .filter(|&x| self.span_rank(x, p.lower_covers(x)) != p.degree(x))
            .map(|x| p.id(x).to_string())
            .collect()
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        let p = self.bounded.poset();
        p.elements()
            .filter(|&z| p.leq(z, x) && p.leq(z, y))
            .max_by_key(|&z| p.degree(z))
            .expect("0̂ is below everything")
    }

    /// Greedily extends `basis` by elements of `candidates` that raise the span in `x^*`.
    fn extend_basis(&self, x: usize, basis: &mut Vec<usize>, candidates: &[usize]) {
        for &y in candidates {
            if basis.contains(&y) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(y);
            if self.span_rank(x, &trial) == trial.len() {
                *basis = trial;
            }
        }
    }
}

fn closure(arrangement: &Arrangement, gens: &[usize]) -> Vec<usize> {
    let base = arrangement.stacked(gens);
    let r = base.rank();
    (0..arrangement.len())
        .filter(|&k| {
            gens.contains(&k)
                || Matrix::vstack(Q, arrangement.ambient_dim, &[&base, &arrangement.normals[k]]).rank() == r
        })
        .collect()
}

/// A recursive coatom ordering in which, for every chain, some initial segment is a basis
/// of `⟨L_{≺c_0}⟩_K` and `C(c)` is an initial segment.
pub fn arrangement_ordering(lattice: &IntersectionLattice) -> OrderingFamily {
    let b = &lattice.bounded;
    let p = b.poset();
    let mut orders: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut basis_len: HashMap<Vec<usize>, usize> = HashMap::new();
    for len in 0..=b.degree_of_poset() {
        for chain in b.unrefinable_top_chains(len) {
            let c0 = chain.bottom();
            let coatoms = p.lower_covers(c0).to_vec();
            if coatoms.is_empty() {
                continue;
            }
            let mut basis = Vec::new();
            let mut head: Vec<usize> = Vec::new();
            if len > 0 {
                let tail = &chain.members[1..];
                let parent = &orders[tail];
                let pos = parent.iter().position(|&h| h == c0).expect("c_0 is a coatom of c_1");
                let c: Vec<usize> =
                    coatoms.iter().copied().filter(|&x| parent[..pos].iter().any(|&h| p.lt(x, h))).collect();
                let parent_basis = &parent[..basis_len[tail]];
                if parent_basis.contains(&c0) {
                    // C(c) is independent: extend it to a basis.
                    basis = c.clone();
                    lattice.extend_basis(c0, &mut basis, &coatoms);
                    head = c;
                } else {
                    // Basis elements of the parent are its first entries, so those before c_0
                    // are exactly the ones with smaller position.
                    let hat: Vec<usize> = parent_basis.iter().take(pos).map(|&h| lattice.meet(h, c0)).collect();
                    lattice.extend_basis(c0, &mut basis, &hat);
                    lattice.extend_basis(c0, &mut basis, &c);
                    lattice.extend_basis(c0, &mut basis, &coatoms);
                    head = basis.clone();
                    head.extend(c.iter().copied().filter(|x| !basis.contains(x)));
                }
            } else {
                lattice.extend_basis(c0, &mut basis, &coatoms);
            }
            let mut order = head;
            for x in basis.iter().chain(coatoms.iter()) {
                if !order.contains(x) {
                    order.push(*x);
                }
            }
            basis_len.insert(chain.members.clone(), basis.len());
            orders.insert(chain.members, order);
        }
    }
    OrderingFamily::Explicit(orders)
}

/// Chains lacking an initial segment of `⊑_c` that is a basis of `⟨L_{≺c_0}⟩_K`.
pub fn cl3_violations(lattice: &IntersectionLattice, family: &OrderingFamily) -> Result<Vec<String>> {
    let b = &lattice.bounded;
    let p = b.poset();
    let mut out = Vec::new();
    for chain in b.all_top_chains() {
        let c0 = chain.bottom();
        let order = family.order(p, &chain.members)?;
        let r = p.degree(c0);
        if order.len() < r || lattice.span_rank(c0, &order[..r]) != r {
            out.push(chain.label(p));
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The `j`-th compound matrix: minors indexed by `j`-subsets of rows and columns.
pub fn compound(m: &Matrix, j: usize) -> Matrix {
    let rows = combinations(m.rows(), j);
    let cols = combinations(m.cols(), j);
    Matrix::from_fn(m.field(), rows.len(), cols.len(), |r, c| {
        m.select_rows(&rows[r]).select_cols(&cols[c]).determinant()
    })
}

/// `W ↦ Λ^j(W)` with cover inclusions acting through compound matrices.
pub fn exterior_power_functor(lattice: &IntersectionLattice, j: usize) -> FunctorOnPoset {
    let p = lattice.bounded.poset();
    let dims: Vec<usize> = p.elements().map(|x| binomial(lattice.flats[x].dim, j) as usize).collect();
    let maps = p
        .cover_pairs()
        .map(|(x, y)| {
            let inclusion = lattice.flats[y].basis.solve(&lattice.flats[x].basis).expect("x ⊆ y");
            ((x, y), compound(&inclusion, j))
        })
        .collect();
    FunctorOnPoset::new(Arc::new(p.clone()), Variance::Covariant, Q, dims, maps)
        .expect("exterior powers of inclusions compose")
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `d_{i,j} = dim H_i(L ∖ {V}; Λ^j)` for `i ≤ i_max`, `j ≤ j_max`, indexed `[i][j]`.
pub fn dij_table(lattice: &IntersectionLattice, i_max: usize, j_max: usize) -> Result<Vec<Vec<usize>>> {
    let s = lattice.bounded.without_top();
    let mut table = vec![vec![0; j_max + 1]; i_max + 1];
    for j in 0..=j_max {
        let h = homology(&exterior_power_functor(lattice, j), &s)?;
        for (i, row) in table.iter_mut().enumerate() {
            row[j] = h.get(i as i64);
        }
    }
    Ok(table)
}

/// Where `(i, j)` sits relative to the vanishing region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Segment,
    Band,
    Outside,
}

pub fn region(lattice: &IntersectionLattice, i: usize, j: usize) -> Region {
    let d = lattice.degree();
    let n = lattice.arrangement.ambient_dim;
    if i == 0 && j < n {
        Region::Segment
    } else if i >= 1 && i + 2 <= d && i + j + 1 >= d && i + j < n {
        Region::Band
    } else {
        Region::Outside
    }
}

/// The closed-form value of `d_{i,j}`, or zero outside the segment and the band.
pub fn dij_formula(lattice: &IntersectionLattice, i: usize, j: usize) -> Result<i64> {
    let d = lattice.degree();
    let n = lattice.arrangement.ambient_dim;
    let out_of_domain = || Error::OutOfFormulaDomain(format!("no closed formula for d_({i},{j})"));
    match region(lattice, i, j) {
        Region::Outside => Ok(0),
        Region::Segment => {
            if j + 2 <= d {
                Ok(binomial(n, j) as i64)
            } else if j + 1 == n {
                Ok(lattice.arrangement.len() as i64)
            } else {
                Err(out_of_domain())
            }
        }
        Region::Band => {
            let b = &lattice.bounded;
            if i + j + 1 != d || lattice.flats[b.bottom()].dim != 0 {
                return Err(out_of_domain());
            }
            let p = b.poset();
            let mu = MobiusTable::new(p);
            let sign = |e: i64| if e.rem_euclid(2) == 0 { 1i64 } else { -1 };
            let mut total = BigInt::from(sign(i as i64 + 1) * binomial(n, j) as i64);
            for dd in d - 1 - i..=d - 1 {
                let weight: i64 =
                    p.elements().filter(|&x| p.degree(x) == dd).map(|x| mu.get(x, b.top()).expect("x ≤ V").abs()).sum();
                let e = dd as i64 - d as i64 + 1 + i as i64;
                total += BigInt::from(sign(e) * binomial(dd, j) as i64 * weight);
            }
            if total.is_zero() {
                return Ok(0);
            }
            i64::try_from(total).map_err(|_| out_of_domain())
        }
    }
}

/// `L_{≥k}` with a new bottom below its degree-`k` elements. The map sends new indices
/// to old ones, `None` for the new bottom.
pub fn truncation(bounded: &BoundedPoset, k: usize) -> Result<(BoundedPoset, Vec<Option<usize>>)> {
    let d = bounded.degree_of_poset();
    if k < 1 || k + 1 > d {
        return Err(Error::DegreeOutOfRange { degree: k as i64, lo: 1, hi: d as i64 - 1 });
    }
    let p = bounded.poset();
    let keep: Vec<usize> = p.elements().filter(|&x| p.degree(x) >= k).collect();
    let mut bottom = "0'".to_string();
    while p.index_of(&bottom).is_ok() {
        bottom.push('\'');
    }
    let mut ids: Vec<String> = vec![bottom.clone()];
    ids.extend(keep.iter().map(|&x| p.id(x).to_string()));
    let mut covers: Vec<(String, String)> = Vec::new();
    for &x in &keep {
        if p.degree(x) == k {
            covers.push((bottom.clone(), p.id(x).to_string()));
        }
        for &y in p.upper_covers(x) {
            covers.push((p.id(x).to_string(), p.id(y).to_string()));
        }
    }
    let poset = Poset::new(&ids, &covers)?;
    let map = std::iter::once(None).chain(keep.into_iter().map(Some)).collect();
    Ok((BoundedPoset::new(poset)?, map))
}

/// Restricts `f` to a truncation, with zero at the new bottom.
pub fn truncate_functor(f: &FunctorOnPoset, truncated: &BoundedPoset, map: &[Option<usize>]) -> Result<FunctorOnPoset> {
    let p = truncated.poset();
    let dims: Vec<usize> = map.iter().map(|m| m.map_or(0, |x| f.dim(x))).collect();
    let maps = p
        .cover_pairs()
        .filter_map(|(a, b)| match (map[a], map[b]) {
            (Some(x), Some(y)) => Some(((a, b), f.map(x, y).clone())),
            _ => None,
        })
        .collect();
    FunctorOnPoset::new(Arc::new(p.clone()), f.variance(), f.field(), dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shellability::verify_ordering;

    #[test]
    fn single_hyperplane_in_the_plane() {
        let a = Arrangement::from_i64(2, &[vec![1, 0]]).unwrap();
        let l = IntersectionLattice::new(&a);
        assert_eq!(l.bounded().len(), 2);
        assert_eq!(l.flat(l.bounded().bottom()).dim, 1);
        assert_eq!(l.degree(), 1);
    }

    #[test]
    fn coordinate_and_braid_lattices() {
        let l = IntersectionLattice::new(&Arrangement::coordinate(3));
        assert_eq!(l.bounded().len(), 8);
        assert!(l.span_dimension_violations().is_empty());
        let b = IntersectionLattice::new(&Arrangement::braid(3));
        assert_eq!(b.bounded().len(), 5);
        assert_eq!(b.flat(b.bounded().bottom()).dim, 1);
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn rejects_bad_normals() {
        assert!(Arrangement::from_i64(2, &[vec![1, 1], vec![2, 2]]).is_err());
        assert!(Arrangement::from_i64(2, &[vec![0, 0]]).is_err());
        assert!(Arrangement::from_i64(2, &[vec![1]]).is_err());
    }

    #[test]
    fn orderings_pass_all_axioms() {
        for a in [
            Arrangement::coordinate(3),
            Arrangement::coordinate(4),
            Arrangement::braid(3),
            Arrangement::braid(4),
            Arrangement::from_i64(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap(),
        ] {
            let l = IntersectionLattice::new(&a);
            let family = arrangement_ordering(&l);
            assert!(verify_ordering(l.bounded(), &family).pass);
            assert!(cl3_violations(&l, &family).unwrap().is_empty());
        }
    }

    #[test]
    fn compound_matrices() {
        let m = Matrix::from_i64(Q, &[[1, 2], [3, 4], [5, 6]]);
        assert_eq!(compound(&m, 0), Matrix::from_i64(Q, &[[1]]));
        assert_eq!(compound(&m, 1), m);
        assert_eq!(compound(&m, 2), Matrix::from_i64(Q, &[[-2], [-4], [-2]]));
    }

    #[test]
    fn exterior_powers() {
        let l = IntersectionLattice::new(&Arrangement::coordinate(3));
        let top = l.bounded().top();
        assert!(exterior_power_functor(&l, 0).dims().iter().all(|&d| d == 1));
        assert_eq!(exterior_power_functor(&l, 3).dim(top), 1);
        assert_eq!(exterior_power_functor(&l, 3).dim(l.bounded().bottom()), 0);
    }

    #[test]
    fn coordinate_table_matches_formulas() {
        let l = IntersectionLattice::new(&Arrangement::coordinate(3));
        let t = dij_table(&l, 2, 3).unwrap();
        assert_eq!(t[0][..3], [1, 3, 3]);
        assert_eq!(t[1][1], 0);
        assert_eq!(dij_formula(&l, 1, 1).unwrap(), 0);
        for (i, row) in t.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                if let Ok(v) = dij_formula(&l, i, j) {
                    assert_eq!(v, d as i64, "d_({i},{j})");
                }
            }
        }
    }

    #[test]
    fn truncation_adds_a_new_bottom() {
        let l = IntersectionLattice::new(&Arrangement::coordinate(3));
        let (t, map) = truncation(l.bounded(), 1).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(map[t.bottom()], None);
        let (t2, _) = truncation(l.bounded(), 2).unwrap();
        assert_eq!(t2.len(), 5);
        assert!(truncation(l.bounded(), 3).is_err());
    }
}
