//! Seeded random posets and functors for randomized cross-checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{Field, Matrix};
use crate::poset::Poset;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A poset on `x0..x{n-1}` with each `i < j` related independently with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    Poset::from_relation(&ids, &rel).expect("index order is acyclic")
}

/// Layers of the given sizes; each element covers a nonempty random subset of the
/// layer below. Ids are `r{rank}_{k}`.
pub fn random_graded_poset<R: Rng>(rng: &mut R, layers: &[usize], density: f64) -> Poset {
    let name = |r: usize, k: usize| format!("r{r}_{k}");
    let mut ids = Vec::new();
    let mut covers = Vec::new();
    for (r, &size) in layers.iter().enumerate() {
        for k in 0..size {
            ids.push(name(r, k));
            if r == 0 || layers[r - 1] == 0 {
                continue;
            }
            let below = layers[r - 1];
            let mut chosen: Vec<usize> = (0..below).filter(|_| rng.gen_bool(density)).collect();
            if chosen.is_empty() {
                chosen.push(rng.gen_range(0..below));
            }
            covers.extend(chosen.into_iter().map(|q| (name(r - 1, q), name(r, k))));
        }
    }
    Poset::new(&ids, &covers).expect("adjacent layers only")
}

/// `random_poset` with a bottom `0` and a top `1` adjoined.
pub fn random_bounded_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let inner = random_poset(rng, n, density);
    let mut ids: Vec<String> = inner.ids().to_vec();
    let mut rel: Vec<(String, String)> =
        inner.cover_pairs().map(|(q, p)| (inner.id(q).to_string(), inner.id(p).to_string())).collect();
    for id in inner.ids() {
        rel.push(("0".into(), id.clone()));
        rel.push((id.clone(), "1".into()));
    }
    rel.push(("0".into(), "1".into()));
    ids.insert(0, "0".into());
    ids.push("1".into());
    Poset::from_relation(&ids, &rel).expect("bounded extension is acyclic")
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(-2..=2)))
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random functor `F(p) = U_p / N_p` with `N_p ⊆ U_p ⊆ K^ambient`, the subspaces
/// shrinking along the direction of the maps so that the induced maps compose.
pub fn random_functor<R: Rng>(
    rng: &mut R,
    poset: Arc<Poset>,
    variance: Variance,
    field: Field,
    ambient: usize,
) -> FunctorOnPoset {
    let n = poset.len();
    // Elements whose subspaces feed into p's: those p maps to.
    let order: Vec<usize> = match variance {
        Variance::Contravariant => poset.by_degree().into_iter().rev().collect(),
        Variance::Covariant => poset.by_degree(),
    };
    let mut u: Vec<Matrix> = vec![Matrix::zeros(field, ambient, 0); n];
    let mut nn: Vec<Matrix> = vec![Matrix::zeros(field, ambient, 0); n];
    for &p in &order {
        let feeders = match variance {
            Variance::Contravariant => poset.above(p),
            Variance::Covariant => poset.below(p),
        };
        let extra_u = rng.gen_range(0..=ambient);
        let gens_u = random_matrix(rng, field, ambient, extra_u);
        let mut blocks: Vec<&Matrix> = feeders.iter().map(|&q| &u[q]).collect();
        blocks.push(&gens_u);
        let up = Matrix::hstack(field, ambient, &blocks).image_basis();
        let extra_n = usize::from(rng.gen_bool(0.25));
        let coeffs = random_matrix(rng, field, up.cols(), extra_n);
        let gens_n = &up * &coeffs;
        let mut blocks: Vec<&Matrix> = feeders.iter().map(|&q| &nn[q]).collect();
        blocks.push(&gens_n);
        nn[p] = Matrix::hstack(field, ambient, &blocks).image_basis();
        u[p] = up;
    }
    let quotients: Vec<_> = (0..n).map(|p| u[p].solve(&nn[p]).expect("N_p lies in U_p").cokernel()).collect();
    let dims: Vec<usize> = quotients.iter().map(|q| q.dim()).collect();
    let maps = poset
        .cover_pairs()
        .map(|(q, p)| {
            let (src, dst) = match variance {
                Variance::Contravariant => (p, q),
                Variance::Covariant => (q, p),
            };
            let into_dst = u[dst].solve(&u[src]).expect("U_src lies in U_dst");
            let m = &(&quotients[dst].projection * &into_dst) * &quotients[src].section();
            ((q, p), m)
        })
        .collect();
    FunctorOnPoset::new(poset, variance, field, dims, maps).expect("quotient construction is functorial")
}
