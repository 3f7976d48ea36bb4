//! The order complex: the simplicial complex of chains of a poset.

use crate::linalg::{ChainComplex, CochainComplex, Field, Matrix};
use crate::poset::Poset;

/// Faces of the order complex grouped by dimension. `faces[k]` holds the chains
/// with `k + 1` members, in the enumeration order of [`Poset::chains_in`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderComplex {
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl OrderComplex {
    /// Order complex of the subposet on `subset` (all of `poset` when `None`).
    pub fn new(poset: &Poset, subset: Option<&[usize]>) -> Self {
        let all: Vec<usize> = poset.elements().collect();
        let chains = poset.chains_in(subset.unwrap_or(&all));
        let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
        for c in chains {
            let k = c.len() - 1;
            if faces.len() <= k {
                faces.resize(k + 1, Vec::new());
            }
            faces[k].push(c);
        }
        OrderComplex { faces }
    }

    /// Dimension of the complex (`-1` when empty).
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Boundary map from `k`-faces to `(k-1)`-faces, shape `f_{k-1} x f_k`.
    pub fn boundary(&self, field: Field, k: usize) -> Matrix {
        let rows = &self.faces[k - 1];
        let cols = &self.faces[k];
        let position: std::collections::HashMap<&[usize], usize> =
            rows.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut m = Matrix::zeros(field, rows.len(), cols.len());
        for (j, face) in cols.iter().enumerate() {
            for omit in 0..face.len() {
                let sub: Vec<usize> = face.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v).collect();
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                m.set(position[sub.as_slice()], j, field.from_i64(sign));
            }
        }
        m
    }

    /// Simplicial chain complex (unreduced).
    pub fn chain_complex(&self, field: Field) -> ChainComplex {
        let dims = self.f_vector();
        let ds = (1..dims.len()).map(|k| self.boundary(field, k)).collect();
        ChainComplex::new(field, 0, dims, ds).expect("boundary of a boundary vanishes")
    }

    /// Simplicial cochain complex (unreduced).
    pub fn cochain_complex(&self, field: Field) -> CochainComplex {
        let dims = self.f_vector();
        let ds = (1..dims.len()).map(|k| self.boundary(field, k).transpose()).collect();
        CochainComplex::new(field, 0, dims, ds).expect("coboundary of a coboundary vanishes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::GradedDims;

    #[test]
    fn antichain_has_two_vertices() {
        let p = Poset::new(&["a", "b"], &[]).unwrap();
        let k = OrderComplex::new(&p, None);
        assert_eq!(k.f_vector(), vec![2]);
    }

    #[test]
    fn proper_part_of_b3_is_a_hexagon() {
        let ids = ["0", "a", "b", "c", "ab", "ac", "bc", "1"];
        let covers = [
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "ab"),
            ("a", "ac"),
            ("b", "ab"),
            ("b", "bc"),
            ("c", "ac"),
            ("c", "bc"),
            ("ab", "1"),
            ("ac", "1"),
            ("bc", "1"),
        ];
        let p = Poset::new(&ids, &covers).unwrap();
        let proper: Vec<usize> = (1..7).collect();
        let k = OrderComplex::new(&p, Some(&proper));
        assert_eq!(k.f_vector(), vec![6, 6]);
        let expected: GradedDims = [(0, 1), (1, 1)].into_iter().collect();
        assert_eq!(k.cochain_complex(Field::Rational).cohomology_dims(), expected);
        assert_eq!(k.chain_complex(Field::Prime(5)).homology_dims(), expected);
    }
}
