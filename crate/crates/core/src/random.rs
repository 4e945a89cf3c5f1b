//! Seeded random inputs for self-checks and property tests.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{Cochain, FilteredComplex, Simplex, Vertex};
use crate::f2::{F2Column, F2Matrix};
use crate::persistence::direct;

#[derive(Clone, Copy, Debug)]
pub struct RandomComplexSpec {
    pub vertices: usize,
    pub max_dim: usize,
    pub max_simplices: usize,
}

/// Random simplexwise filtration: simplices are appended one at a time,
/// each chosen among those whose facets are already present, with higher
/// dimensions favoured so that the result is not just a graph.
pub fn random_filtration<R: Rng + ?Sized>(rng: &mut R, spec: RandomComplexSpec) -> FilteredComplex {
    let pool: Vec<Simplex> = (1..=spec.max_dim + 1)
        .flat_map(|size| (0..spec.vertices as Vertex).combinations(size))
        .map(Simplex::from_unsorted)
        .collect();
    let mut placed: HashSet<Simplex> = HashSet::new();
    let mut order = Vec::new();
    while order.len() < spec.max_simplices {
        let available: Vec<&Simplex> = pool
            .iter()
            .filter(|s| !placed.contains(*s) && s.facets().all(|f| placed.contains(&f)))
            .collect();
        if available.is_empty() {
            break;
        }
        let chosen = available
            .choose_weighted(rng, |s| 1 + 2 * s.dim())
            .expect("nonempty pool")
            .to_owned()
            .clone();
        placed.insert(chosen.clone());
        order.push(chosen);
    }
    FilteredComplex::new(order).expect("facets placed first")
}

/// Random simplexwise ordering of the simplices of `x`.
pub fn random_reordering<R: Rng + ?Sized>(rng: &mut R, x: &FilteredComplex) -> FilteredComplex {
    let mut placed: HashSet<&Simplex> = HashSet::new();
    let mut order = Vec::with_capacity(x.len());
    while order.len() < x.len() {
        let available: Vec<&Simplex> = x
            .simplices()
            .iter()
            .filter(|s| !placed.contains(*s) && x.facet_indices(x.index_of(s).unwrap()).iter().all(|&f| placed.contains(x.simplex(f))))
            .collect();
        let chosen = *available.choose(rng).expect("some simplex has all facets placed");
        placed.insert(chosen);
        order.push(chosen.clone());
    }
    FilteredComplex::new(order).expect("facets placed first")
}

/// Each `d`-simplex is in the support with probability `density`.
pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, x: &FilteredComplex, d: usize, density: f64) -> Cochain {
    let support: Vec<Simplex> = x
        .indices_of_dim(d)
        .filter(|_| rng.gen_bool(density))
        .map(|i| x.simplex(i).clone())
        .collect();
    Cochain::new(d, support).expect("uniform degree")
}

/// Uniform random element of the degree-`d` cocycle space of `x`.
pub fn random_cocycle<R: Rng + ?Sized>(rng: &mut R, x: &FilteredComplex, d: usize) -> Cochain {
    let mut acc = F2Column::zeros(x.len());
    for z in direct::cocycle_basis(x, d, x.len()) {
        if rng.gen_bool(0.5) {
            acc.add_assign(&z).expect("equal lengths");
        }
    }
    x.column_to_cochain(&acc, d).expect("cocycle basis is homogeneous")
}

/// Coboundary of a random `(d-1)`-cochain; empty in degree 0.
pub fn random_coboundary<R: Rng + ?Sized>(rng: &mut R, x: &FilteredComplex, d: usize) -> Cochain {
    match d.checked_sub(1) {
        None => Cochain::empty(0),
        Some(lower) => {
            let gamma = random_cochain(rng, x, lower, 0.5);
            x.coboundary(&gamma).expect("supported on x")
        }
    }
}

/// Random `n x n` upper-triangular matrix with zero diagonal.
pub fn random_upper_triangular<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> F2Matrix {
    let mut m = F2Matrix::zeros(n, n);
    for j in 1..=n {
        for i in 1..j {
            if rng.gen_bool(density) {
                m.set(i, j, true);
            }
        }
    }
    m
}
