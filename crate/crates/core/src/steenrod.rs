//! Cochain-level Steenrod squares.
//!
//! [`stsq`] walks unordered pairs of support simplices and keeps the unions
//! that are hit an odd number of times. [`cup_square_oracle`] evaluates the
//! same cochain coefficient by coefficient from the cup-coproduct summands,
//! and the two must agree simplex for simplex.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::complex::{position, Cochain, FilteredComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::f2::{EchelonBasis, F2Column};

/// Split of `u ⊆ c` by the parity of `position(v, u) + position(v, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPartition {
    /// Odd index.
    pub minus: Vec<Vertex>,
    /// Even index.
    pub plus: Vec<Vertex>,
}

pub fn index_partition(u: &Simplex, c: &Simplex) -> Result<IndexPartition> {
    if !u.is_subset_of(c) {
        return Err(Error::NotSubset {
            sub: format!("{u:?}"),
            sup: format!("{c:?}"),
        });
    }
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for (pos_u, &v) in u.vertices().iter().enumerate() {
        let pos_c = position(v, c)?;
        if (pos_u + pos_c) % 2 == 1 {
            minus.push(v);
        } else {
            plus.push(v);
        }
    }
    Ok(IndexPartition { minus, plus })
}

/// Index data for one unordered pair `{a, b}` of equal-dimension simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIndex {
    pub union: Simplex,
    /// `(v, ind(v) mod 2)` for `v ∈ a ∖ b`.
    pub a_only: Vec<(Vertex, u8)>,
    /// `(v, ind(v) mod 2)` for `v ∈ b ∖ a`.
    pub b_only: Vec<(Vertex, u8)>,
}

impl PairIndex {
    /// The index is constant on each side and the two constants differ.
    pub fn contributes(&self) -> bool {
        fn constant(side: &[(Vertex, u8)]) -> Option<u8> {
            let first = side.first()?.1;
            side.iter().all(|&(_, i)| i == first).then_some(first)
        }
        match (constant(&self.a_only), constant(&self.b_only)) {
            (Some(x), Some(y)) => x != y,
            _ => false,
        }
    }
}

/// Computes the union of `a` and `b` together with the index of every
/// vertex in the symmetric difference.
pub fn pair_index(a: &Simplex, b: &Simplex) -> PairIndex {
    let (av, bv) = (a.vertices(), b.vertices());
    let mut union = Vec::with_capacity(av.len() + bv.len());
    let mut a_only = Vec::new();
    let mut b_only = Vec::new();
    let (mut i, mut j) = (0, 0);
    // position in the symmetric difference
    let mut pos_bar = 0usize;
    while i < av.len() || j < bv.len() {
        let pos = union.len();
        let take_a = j >= bv.len() || (i < av.len() && av[i] < bv[j]);
        let take_b = i >= av.len() || (j < bv.len() && bv[j] < av[i]);
        if take_a {
            a_only.push((av[i], ((pos + pos_bar) % 2) as u8));
            union.push(av[i]);
            pos_bar += 1;
            i += 1;
        } else if take_b {
            b_only.push((bv[j], ((pos + pos_bar) % 2) as u8));
            union.push(bv[j]);
            pos_bar += 1;
            j += 1;
        } else {
            union.push(av[i]);
            i += 1;
            j += 1;
        }
    }
    PairIndex {
        union: Simplex::from_sorted_unchecked(union),
        a_only,
        b_only,
    }
}

fn intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Representative of `Sq^k` of the class of `s`, as a degree `d + k` cochain.
///
/// Returns the empty cochain for `k > d + 1`. For `k = d + 1` the pair loop
/// still runs and finds nothing.
pub fn stsq(k: usize, s: &Cochain, x: &FilteredComplex) -> Result<Cochain> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    x.check_cochain(s)?;
    let d = s.degree();
    let mut out = Cochain::empty(d + k);
    if k > d + 1 {
        return Ok(out);
    }
    // |a ∪ b| = d + k + 1  <=>  |a ∩ b| = d + 1 - k
    let shared = d + 1 - k;
    let support: Vec<&Simplex> = s.support().iter().collect();
    for (idx, a) in support.iter().enumerate() {
        for b in &support[idx + 1..] {
            if intersection_len(a.vertices(), b.vertices()) != shared {
                continue;
            }
            let pair = pair_index(a, b);
            if pair.contributes() && x.contains(&pair.union) {
                out.toggle(pair.union);
            }
        }
    }
    Ok(out)
}

/// Coefficient-wise evaluation of `Σ_u S(c ∖ u⁻)·S(c ∖ u⁺)` over all
/// `u ⊆ c` with `|u| = 2k`, for every `(d+k)`-simplex `c` of `x`.
pub fn cup_square_oracle(k: usize, s: &Cochain, x: &FilteredComplex) -> Result<Cochain> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    x.check_cochain(s)?;
    let d = s.degree();
    let mut out = Cochain::empty(d + k);
    for ci in x.indices_of_dim(d + k) {
        let c = x.simplex(ci);
        let mut coefficient = false;
        for u in c.vertices().iter().copied().combinations(2 * k) {
            let u = Simplex::from_sorted_unchecked(u);
            let part = index_partition(&u, c)?;
            let minus_face = complement(c, &part.minus);
            let plus_face = complement(c, &part.plus);
            if let (Some(f), Some(g)) = (minus_face, plus_face) {
                coefficient ^= s.value(&f) && s.value(&g);
            }
        }
        if coefficient {
            out.toggle(c.clone());
        }
    }
    Ok(out)
}

fn complement(c: &Simplex, remove: &[Vertex]) -> Option<Simplex> {
    let rest: Vec<Vertex> = c
        .vertices()
        .iter()
        .copied()
        .filter(|v| !remove.contains(v))
        .collect();
    (!rest.is_empty()).then(|| Simplex::from_sorted_unchecked(rest))
}

/// Alexander–Whitney cup product: `α(front p-face) · β(back q-face)`.
pub fn cup_product(alpha: &Cochain, beta: &Cochain, x: &FilteredComplex) -> Result<Cochain> {
    x.check_cochain(alpha)?;
    x.check_cochain(beta)?;
    let (p, q) = (alpha.degree(), beta.degree());
    let mut out = Cochain::empty(p + q);
    for ci in x.indices_of_dim(p + q) {
        let c = x.simplex(ci);
        if alpha.value(&c.slice(0, p)) && beta.value(&c.slice(p, p + q)) {
            out.toggle(c.clone());
        }
    }
    Ok(out)
}

pub fn is_cocycle(alpha: &Cochain, x: &FilteredComplex) -> Result<bool> {
    Ok(x.coboundary(alpha)?.is_empty())
}

/// Coboundary spaces `B^d(X)` of one complex, echelonized on first use.
pub struct CoboundaryCache<'a> {
    complex: &'a FilteredComplex,
    bases: Mutex<HashMap<usize, Arc<EchelonBasis>>>,
}

impl<'a> CoboundaryCache<'a> {
    pub fn new(complex: &'a FilteredComplex) -> Self {
        CoboundaryCache {
            complex,
            bases: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &'a FilteredComplex {
        self.complex
    }

    /// Echelon form of `{δσ : σ a (d-1)-simplex}`, columns over all `n` indices.
    pub fn basis(&self, d: usize) -> Arc<EchelonBasis> {
        let mut bases = self.bases.lock().expect("cache lock");
        bases
            .entry(d)
            .or_insert_with(|| {
                let x = self.complex;
                let columns: Vec<F2Column> = match d.checked_sub(1) {
                    None => Vec::new(),
                    Some(lower) => x
                        .indices_of_dim(lower)
                        .map(|s| F2Column::from_rows(x.len(), x.cofacet_indices(s).iter().copied()))
                        .collect(),
                };
                Arc::new(EchelonBasis::new(x.len(), &columns).expect("uniform column length"))
            })
            .clone()
    }

    pub fn is_coboundary(&self, alpha: &Cochain) -> Result<bool> {
        let col = self.complex.cochain_to_column(alpha)?;
        self.basis(alpha.degree()).contains(&col)
    }

    /// Whether two cocycles of the same degree represent the same class.
    pub fn cohomologous(&self, alpha: &Cochain, beta: &Cochain) -> Result<bool> {
        if alpha.degree() != beta.degree() {
            return Err(Error::DegreeMismatch {
                expected: alpha.degree(),
                found: beta.degree(),
            });
        }
        for c in [alpha, beta] {
            if !is_cocycle(c, self.complex)? {
                return Err(Error::NotCocycle(c.degree()));
            }
        }
        self.is_coboundary(&alpha.add(beta)?)
    }
}

pub fn cohomologous(alpha: &Cochain, beta: &Cochain, x: &FilteredComplex) -> Result<bool> {
    CoboundaryCache::new(x).cohomologous(alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex;
    use crate::fixtures;

    fn part(u: &[Vertex], c: &[Vertex]) -> IndexPartition {
        index_partition(&simplex(u), &simplex(c)).unwrap()
    }

    #[test]
    fn index_partition_examples() {
        assert_eq!(
            part(&[2, 5], &[2, 3, 5]),
            IndexPartition {
                minus: vec![5],
                plus: vec![2]
            }
        );
        assert_eq!(
            part(&[4, 5], &[1, 4, 5]),
            IndexPartition {
                minus: vec![4, 5],
                plus: vec![]
            }
        );
        assert_eq!(
            part(&[1, 2], &[1, 2]),
            IndexPartition {
                minus: vec![],
                plus: vec![1, 2]
            }
        );
        let err = index_partition(&simplex(&[1, 7]), &simplex(&[1, 2])).unwrap_err();
        assert_eq!(err.code(), "NotSubset");
    }

    #[test]
    fn rp2_square_is_the_top_class() {
        let x = fixtures::rp2();
        let s = fixtures::rp2_cocycle();
        let expected = Cochain::from_vertex_lists(2, &[&[2, 3, 5]]).unwrap();
        assert_eq!(stsq(1, &s, &x).unwrap(), expected);
        assert_eq!(cup_square_oracle(1, &s, &x).unwrap(), expected);
    }

    #[test]
    fn trivial_inputs() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        assert_eq!(stsq(1, &Cochain::empty(1), &x).unwrap(), Cochain::empty(2));
        let edge = Cochain::from_vertex_lists(1, &[&[1, 2]]).unwrap();
        assert_eq!(stsq(1, &edge, &x).unwrap(), Cochain::empty(2));
        assert_eq!(cup_square_oracle(1, &edge, &x).unwrap(), Cochain::empty(2));
        assert_eq!(stsq(0, &edge, &x).unwrap_err().code(), "InvalidK");
        let foreign = Cochain::from_vertex_lists(0, &[&[9]]).unwrap();
        assert_eq!(stsq(1, &foreign, &x).unwrap_err().code(), "UnsupportedCochain");
    }

    #[test]
    fn unstable_range_is_empty() {
        let x = fixtures::sphere3();
        let all_edges = Cochain::new(1, x.indices_of_dim(1).map(|i| x.simplex(i).clone())).unwrap();
        for k in 2..5 {
            assert_eq!(stsq(k, &all_edges, &x).unwrap(), Cochain::empty(1 + k));
            assert_eq!(cup_square_oracle(k, &all_edges, &x).unwrap(), Cochain::empty(1 + k));
        }
    }

    #[test]
    fn pair_index_is_symmetric() {
        let a = simplex(&[1, 4]);
        let b = simplex(&[1, 5]);
        let ab = pair_index(&a, &b);
        let ba = pair_index(&b, &a);
        assert_eq!(ab.union, ba.union);
        assert_eq!(ab.a_only, ba.b_only);
        assert_eq!(ab.contributes(), ba.contributes());
        assert_eq!(ab.a_only, vec![(4, 1)]);
        assert_eq!(ab.b_only, vec![(5, 1)]);
    }

    #[test]
    fn cup_product_examples() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        let a = Cochain::from_vertex_lists(0, &[&[1]]).unwrap();
        let b = Cochain::from_vertex_lists(0, &[&[2]]).unwrap();
        // degree 0 cup degree 0 lands in degree 0; use the edge with degree 1 instead
        let e = Cochain::from_vertex_lists(1, &[&[1, 2]]).unwrap();
        assert_eq!(cup_product(&a, &e, &x).unwrap(), e);
        assert_eq!(cup_product(&b, &e, &x).unwrap(), Cochain::empty(1));
        assert_eq!(cup_product(&e, &b, &x).unwrap(), e);
        assert_eq!(cup_product(&e, &a, &x).unwrap(), Cochain::empty(1));
    }

    #[test]
    fn rp2_cup_square_is_cohomologous_to_sq1() {
        let x = fixtures::rp2();
        let s = fixtures::rp2_cocycle();
        let sq = cup_product(&s, &s, &x).unwrap();
        let top = Cochain::from_vertex_lists(2, &[&[2, 3, 5]]).unwrap();
        assert!(cohomologous(&sq, &top, &x).unwrap());
    }

    #[test]
    fn cocycle_checks() {
        let x = fixtures::rp2();
        assert!(is_cocycle(&fixtures::rp2_cocycle(), &x).unwrap());
        assert!(is_cocycle(&Cochain::empty(1), &x).unwrap());
        let y = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        let v = Cochain::from_vertex_lists(0, &[&[1]]).unwrap();
        assert!(!is_cocycle(&v, &y).unwrap());
    }

    #[test]
    fn cohomologous_examples() {
        let x = fixtures::rp2();
        let s = fixtures::rp2_cocycle();
        assert!(cohomologous(&s, &s, &x).unwrap());
        assert!(!cohomologous(&s, &Cochain::empty(1), &x).unwrap());
        let cache = CoboundaryCache::new(&x);
        let tris: Vec<Cochain> = x
            .indices_of_dim(2)
            .map(|t| Cochain::new(2, [x.simplex(t).clone()]).unwrap())
            .collect();
        for t in &tris {
            for u in &tris {
                assert!(cache.cohomologous(t, u).unwrap());
            }
        }
        assert_eq!(
            cohomologous(&s, &tris[0], &x).unwrap_err().code(),
            "DegreeMismatch"
        );
        let not_closed = Cochain::from_vertex_lists(1, &[&[1, 2]]).unwrap();
        assert_eq!(
            cohomologous(&not_closed, &s, &x).unwrap_err().code(),
            "NotCocycle"
        );
    }

    #[test]
    fn top_square_equals_cup_square_on_cochains() {
        // k = d: only the front/back split of each simplex survives
        let x = fixtures::rp2();
        let s = fixtures::rp2_cocycle();
        assert_eq!(stsq(1, &s, &x).unwrap(), cup_product(&s, &s, &x).unwrap());
    }
}
