//! Derived (co)limits from the nerve: the cosimplicial and simplicial replacements.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::functor::{offsets, FunctorOnPoset, Variance};
use crate::linalg::{ChainComplex, CochainComplex, GradedDims, Matrix};

/// Chains of the induced subposet grouped by length; chains are sorted upward.
fn chains_by_length(f: &FunctorOnPoset) -> Vec<Vec<Vec<usize>>> {
    let poset = f.poset();
    let all: Vec<usize> = poset.elements().collect();
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in poset.chains_in(&all) {
        let k = c.len() - 1;
        if layers.len() <= k {
            layers.resize(k + 1, Vec::new());
        }
        layers[k].push(c);
    }
    layers
}

/// Chains of one length with the block offsets of `⊕ F(q_0)`.
struct Layer<'a> {
    chains: &'a [Vec<usize>],
    offsets: Vec<usize>,
    total: usize,
    index: HashMap<&'a [usize], usize>,
}

impl<'a> Layer<'a> {
    fn new(f: &FunctorOnPoset, chains: &'a [Vec<usize>]) -> Self {
        let dims: Vec<usize> = chains.iter().map(|c| f.dim(c[0])).collect();
        Layer {
            chains,
            offsets: offsets(&dims),
            total: dims.iter().sum(),
            index: chains.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect(),
        }
    }
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `H^*(S; F)` of a contravariant `F` from `C^n = ∏_{q_0<…<q_n} F(q_0)`.
pub fn nerve_cohomology_oracle(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    if f.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch { expected: "contra" });
    }
    let (g, _) = f.restrict(s);
    let field = g.field();
    let layers = chains_by_length(&g);
    let built: Vec<Layer> = layers.iter().map(|l| Layer::new(&g, l)).collect();
    let mut diffs = Vec::new();
    for n in 0..built.len().saturating_sub(1) {
        let (src, dst) = (&built[n], &built[n + 1]);
        let mut d = Matrix::zeros(field, dst.total, src.total);
        for (r, c) in dst.chains.iter().enumerate() {
            let row = dst.offsets[r];
            for i in 0..c.len() {
                let mut face = c.clone();
                face.remove(i);
                let col = src.offsets[src.index[face.as_slice()]];
                let block = if i == 0 { g.map(c[0], c[1]).clone() } else { Matrix::identity(field, g.dim(c[0])) };
                d.paste(row, col, &block.scale(&field.from_i64(sign(i))));
            }
        }
        diffs.push(d);
    }
    let dims = built.iter().map(|l| l.total).collect();
    let complex = CochainComplex::new(field, 0, dims, diffs)?;
    Ok(complex.cohomology_dims())
}

/// `H_*(S; F)` of a covariant `F` from `C_n = ⊕_{q_0<…<q_n} F(q_0)`.
pub fn nerve_homology_oracle(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    if f.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch { expected: "co" });
    }
    let (g, _) = f.restrict(s);
    let field = g.field();
    let layers = chains_by_length(&g);
    let built: Vec<Layer> = layers.iter().map(|l| Layer::new(&g, l)).collect();
    let mut diffs = Vec::new();
    for n in 1..built.len() {
        let (src, dst) = (&built[n], &built[n - 1]);
        let mut d = Matrix::zeros(field, dst.total, src.total);
        for (k, c) in src.chains.iter().enumerate() {
            let col = src.offsets[k];
            for i in 0..c.len() {
                let mut face = c.clone();
                face.remove(i);
                let row = dst.offsets[dst.index[face.as_slice()]];
                let block = if i == 0 { g.map(c[0], c[1]).clone() } else { Matrix::identity(field, g.dim(c[0])) };
                d.paste(row, col, &block.scale(&field.from_i64(sign(i))));
            }
        }
        diffs.push(d);
    }
    let dims = built.iter().map(|l| l.total).collect();
    let complex = ChainComplex::new(field, 0, dims, diffs)?;
    Ok(complex.homology_dims())
}
