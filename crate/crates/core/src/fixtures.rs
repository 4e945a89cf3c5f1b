//! Small named complexes used by the CLI self-check, examples, and tests.

use itertools::Itertools;

use crate::complex::{Cochain, FilteredComplex, Simplex, Vertex};

fn closure_order(vertices: &[Vertex], triangles: &[[Vertex; 3]]) -> FilteredComplex {
    let mut simplices: Vec<Simplex> = vertices.iter().map(|&v| Simplex::from_unsorted(vec![v])).collect();
    let mut edges: Vec<Simplex> = triangles
        .iter()
        .flat_map(|t| t.iter().copied().tuple_combinations::<(_, _)>())
        .map(|(a, b)| Simplex::from_unsorted(vec![a, b]))
        .collect();
    edges.sort();
    edges.dedup();
    simplices.extend(edges);
    simplices.extend(triangles.iter().map(|t| Simplex::from_unsorted(t.to_vec())));
    FilteredComplex::new(simplices).expect("fixture is closed")
}

/// Six-vertex real projective plane: vertices, all 15 edges, then 10 triangles.
pub fn rp2() -> FilteredComplex {
    closure_order(
        &[1, 2, 3, 4, 5, 6],
        &[
            [1, 2, 4],
            [1, 2, 6],
            [1, 3, 5],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 4],
            [2, 3, 5],
            [2, 5, 6],
            [3, 4, 6],
            [4, 5, 6],
        ],
    )
}

/// Degree-1 cocycle generating `H^1(RP^2)` on [`rp2`].
pub fn rp2_cocycle() -> Cochain {
    Cochain::from_vertex_lists(1, &[&[1, 4], &[1, 5], &[2, 3], &[2, 4], &[3, 5]])
        .expect("fixture cochain")
}

/// Seven-vertex torus, triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> FilteredComplex {
    let triangles: Vec<[Vertex; 3]> = (0..7u32)
        .flat_map(|i| {
            let mut a = [i, (i + 1) % 7, (i + 3) % 7];
            let mut b = [i, (i + 2) % 7, (i + 3) % 7];
            a.sort_unstable();
            b.sort_unstable();
            [a, b]
        })
        .collect();
    closure_order(&[0, 1, 2, 3, 4, 5, 6], &triangles)
}

/// Hollow triangle: three vertices then three edges.
pub fn circle() -> FilteredComplex {
    FilteredComplex::from_vertex_lists(&[&[1], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]])
        .expect("fixture is closed")
}

pub fn single_vertex() -> FilteredComplex {
    FilteredComplex::from_vertex_lists(&[&[1]]).expect("fixture is closed")
}

/// Boundary of the 4-simplex on vertices `0..5`, ordered by dimension then lexicographically.
pub fn sphere3() -> FilteredComplex {
    let mut simplices = Vec::new();
    for size in 1..=4 {
        for combo in (0..5u32).combinations(size) {
            simplices.push(Simplex::from_unsorted(combo));
        }
    }
    FilteredComplex::new(simplices).expect("fixture is closed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_is_a_closed_surface() {
        let x = torus7();
        assert_eq!(x.count_of_dim(0), 7);
        assert_eq!(x.count_of_dim(1), 21);
        assert_eq!(x.count_of_dim(2), 14);
        assert_eq!(x.euler_characteristic(), 0);
        for e in x.indices_of_dim(1) {
            assert_eq!(x.cofacet_indices(e).len(), 2);
        }
    }

    #[test]
    fn sphere3_counts() {
        let x = sphere3();
        assert_eq!(x.len(), 5 + 10 + 10 + 5);
        assert_eq!(x.euler_characteristic(), 0);
    }
}
