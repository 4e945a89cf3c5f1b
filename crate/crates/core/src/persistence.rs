//! Persistent cohomology by column reduction of the anti-transposed
//! coboundary matrix.
//!
//! Matrix coordinates run in reverse filtration order: row/column `r`
//! stands for the simplex `a_{n+1-r}`. Everything leaving this module
//! (representatives, intervals) is in filtration coordinates.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::f2::{EchelonBasis, F2Column, F2Matrix};

/// Left end of an extended interval. `NegInf` sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Stage(usize),
}

impl Endpoint {
    /// A left end of 0 covers the same stages as `-inf` and is stored as such.
    pub fn left(stage: usize) -> Endpoint {
        if stage == 0 {
            Endpoint::NegInf
        } else {
            Endpoint::Stage(stage)
        }
    }

    /// Strictly below stage `s`.
    pub fn below(self, s: usize) -> bool {
        match self {
            Endpoint::NegInf => true,
            Endpoint::Stage(l) => l < s,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::Stage(s) => write!(f, "{s}"),
        }
    }
}

/// The stage set `{s : left < s <= right}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedInterval {
    pub left: Endpoint,
    pub right: usize,
}

impl ExtendedInterval {
    pub fn new(left: Endpoint, right: usize) -> Result<Self> {
        if let Endpoint::Stage(l) = left {
            if l >= right {
                return Err(Error::InconsistentInput(format!(
                    "empty interval ({l},{right}]"
                )));
            }
        }
        Ok(ExtendedInterval { left, right })
    }

    pub fn contains(&self, s: usize) -> bool {
        self.left.below(s) && s <= self.right
    }

    /// Contains every stage in `i..=j`.
    pub fn contains_window(&self, i: usize, j: usize) -> bool {
        self.left.below(i) && j <= self.right
    }
}

impl fmt::Display for ExtendedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}]", self.left, self.right)
    }
}

/// One element of the reduction output.
///
/// `rep` is a degree-`degree` cochain (a column over filtration indices) that
/// restricts to a cocycle on every `X_s` with `s` in `interval`, nonzero in
/// cohomology there. For finite bars `coboundary` holds the reduced column
/// `δ rep`, the degree `degree + 1` coboundary that ends the bar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTriple {
    pub rep: F2Column,
    pub interval: ExtendedInterval,
    pub degree: usize,
    pub coboundary: Option<F2Column>,
}

impl GradedTriple {
    pub fn is_essential(&self) -> bool {
        self.coboundary.is_none()
    }
}

/// Per-degree multisets of extended intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    bars: BTreeMap<usize, BTreeMap<ExtendedInterval, usize>>,
}

impl Barcode {
    pub fn insert(&mut self, degree: usize, interval: ExtendedInterval) {
        *self
            .bars
            .entry(degree)
            .or_default()
            .entry(interval)
            .or_insert(0) += 1;
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.bars.keys().copied()
    }

    /// `(degree, interval, multiplicity)` sorted by degree, left, right.
    pub fn entries(&self) -> impl Iterator<Item = (usize, ExtendedInterval, usize)> + '_ {
        self.bars
            .iter()
            .flat_map(|(&d, m)| m.iter().map(move |(&iv, &c)| (d, iv, c)))
    }

    pub fn degree(&self, d: usize) -> impl Iterator<Item = (ExtendedInterval, usize)> + '_ {
        self.bars
            .get(&d)
            .into_iter()
            .flat_map(|m| m.iter().map(|(&iv, &c)| (iv, c)))
    }

    /// Number of degree-`d` bars containing every stage in `i..=j`.
    pub fn count_containing(&self, d: usize, i: usize, j: usize) -> usize {
        self.degree(d)
            .filter(|(iv, _)| iv.contains_window(i, j))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn essential_count(&self, d: usize, n: usize) -> usize {
        self.degree(d)
            .filter(|(iv, _)| iv.right == n)
            .map(|(_, c)| c)
            .sum()
    }
}

/// `D⊥_{i,j} = D_{n+1-j, n+1-i}` where `D` is the codimension-one
/// incidence matrix of the filtration. Upper triangular.
pub fn build_antitransposed_coboundary(x: &FilteredComplex) -> F2Matrix {
    let n = x.len();
    let mut m = F2Matrix::zeros(n, n);
    for q in 1..=n {
        for &p in x.facet_indices(q) {
            // D_{p,q} = 1
            m.set(n + 1 - q, n + 1 - p, true);
        }
    }
    m
}

/// Left-to-right column reduction. Returns `(R, V)` with `R = M V`,
/// pairwise distinct pivots among nonzero columns of `R`, and `V` unit
/// upper triangular.
pub fn phcol(m: &F2Matrix) -> (F2Matrix, F2Matrix) {
    let n = m.ncols();
    let mut r = m.clone();
    let mut v = F2Matrix::identity(n);
    let mut owner: Vec<Option<usize>> = vec![None; m.nrows() + 1];
    for j in 1..=n {
        while let Some(p) = r.column(j).pivot() {
            match owner[p] {
                Some(i) => {
                    r.add_column(i, j);
                    v.add_column(i, j);
                }
                None => {
                    owner[p] = Some(j);
                    break;
                }
            }
        }
    }
    (r, v)
}

/// Reads bars and representatives off a reduction of `x`'s anti-transposed
/// coboundary matrix. Triples are ordered by the filtration index of the
/// simplex that creates them.
pub fn extract_triples(r: &F2Matrix, v: &F2Matrix, x: &FilteredComplex) -> Result<Vec<GradedTriple>> {
    let n = x.len();
    for (name, m) in [("R", r), ("V", v)] {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::InconsistentInput(format!(
                "{name} is {}x{}, complex has {n} simplices",
                m.nrows(),
                m.ncols()
            )));
        }
    }
    let to_filtration = |matrix_index: usize| n + 1 - matrix_index;

    let mut is_pivot = vec![false; n + 1];
    for j in 1..=n {
        if let Some(p) = r.column(j).pivot() {
            if is_pivot[p] {
                return Err(Error::InconsistentInput(format!(
                    "R is not reduced: pivot {p} repeats"
                )));
            }
            is_pivot[p] = true;
        }
    }

    let mut triples = Vec::new();
    for j in (1..=n).rev() {
        let birth = to_filtration(j);
        let sigma = x.simplex(birth);
        let rep = v.column(j).reversed();
        if !rep.get(birth) {
            return Err(Error::InconsistentInput(format!(
                "V column {j} misses its diagonal"
            )));
        }
        let degree = support_degree(&rep, x)?;
        if degree != sigma.dim() {
            return Err(Error::InconsistentInput(format!(
                "V column {j} mixes degrees"
            )));
        }
        let col = r.column(j);
        match col.pivot() {
            Some(p) => {
                let death = to_filtration(p);
                let cob = col.reversed();
                if support_degree(&cob, x)? != degree + 1 {
                    return Err(Error::InconsistentInput(format!(
                        "R column {j} is not a degree {} cochain",
                        degree + 1
                    )));
                }
                triples.push(GradedTriple {
                    rep,
                    interval: ExtendedInterval::new(Endpoint::left(birth - 1), death - 1)?,
                    degree,
                    coboundary: Some(cob),
                });
            }
            None if !is_pivot[j] => triples.push(GradedTriple {
                rep,
                interval: ExtendedInterval::new(Endpoint::left(birth - 1), n)?,
                degree,
                coboundary: None,
            }),
            None => {}
        }
    }
    Ok(triples)
}

fn support_degree(col: &F2Column, x: &FilteredComplex) -> Result<usize> {
    let mut dims = col.ones().map(|i| x.simplex(i).dim());
    let first = dims
        .next()
        .ok_or_else(|| Error::InconsistentInput("zero representative".into()))?;
    if dims.any(|d| d != first) {
        return Err(Error::InconsistentInput("representative mixes degrees".into()));
    }
    Ok(first)
}

/// Reduction followed by extraction.
pub fn persistence_triples(x: &FilteredComplex) -> Result<Vec<GradedTriple>> {
    let (r, v) = phcol(&build_antitransposed_coboundary(x));
    extract_triples(&r, &v, x)
}

pub fn barcode_of(z: &[GradedTriple]) -> Barcode {
    let mut b = Barcode::default();
    for t in z {
        b.insert(t.degree, t.interval);
    }
    b
}

/// Independent cohomology computations on prefixes `X_s`, by elimination.
pub(crate) mod direct {
    use super::*;

    /// Column of `δ e_σ` inside `X_s`, over all `n` filtration indices.
    pub fn coboundary_column(x: &FilteredComplex, sigma: usize, s: usize) -> F2Column {
        F2Column::from_rows(
            x.len(),
            x.cofacet_indices(sigma).iter().copied().filter(|&c| c <= s),
        )
    }

    pub fn simplices_upto(x: &FilteredComplex, d: usize, s: usize) -> Vec<usize> {
        x.indices_of_dim(d).filter(|&i| i <= s).collect()
    }

    /// Basis of the degree-`d` cocycles of `X_s`.
    pub fn cocycle_basis(x: &FilteredComplex, d: usize, s: usize) -> Vec<F2Column> {
        let cells = simplices_upto(x, d, s);
        if cells.is_empty() {
            return Vec::new();
        }
        let columns: Vec<F2Column> = cells.iter().map(|&c| coboundary_column(x, c, s)).collect();
        let m = F2Matrix::from_columns(x.len(), columns).expect("uniform length");
        EchelonBasis::from_matrix(&m)
            .kernel()
            .iter()
            .map(|combo| F2Column::from_rows(x.len(), combo.ones().map(|t| cells[t - 1])))
            .collect()
    }

    /// Basis columns for the degree-`d` coboundaries of `X_s`.
    pub fn coboundary_columns(x: &FilteredComplex, d: usize, s: usize) -> Vec<F2Column> {
        match d.checked_sub(1) {
            None => Vec::new(),
            Some(lower) => simplices_upto(x, lower, s)
                .into_iter()
                .map(|c| coboundary_column(x, c, s))
                .collect(),
        }
    }

    /// Dimension of the span of `classes` in `H^d(X_s)`.
    pub fn image_rank_in_cohomology(
        x: &FilteredComplex,
        d: usize,
        s: usize,
        classes: Vec<F2Column>,
    ) -> usize {
        let bounds = coboundary_columns(x, d, s);
        let base = F2Matrix::from_columns(x.len(), bounds.clone()).expect("uniform length").rank();
        let mut all = bounds;
        all.extend(classes);
        F2Matrix::from_columns(x.len(), all).expect("uniform length").rank() - base
    }
}

/// Rank of the restriction `H^d(X_j) → H^d(X_i)`, computed from cocycle and
/// coboundary spaces of the two prefixes without any reduction data.
pub fn restriction_rank_oracle(x: &FilteredComplex, d: usize, i: usize, j: usize) -> Result<usize> {
    let n = x.len();
    for stage in [i, j] {
        if stage < 1 || stage > n {
            return Err(Error::StageOutOfRange { stage, n });
        }
    }
    if i > j {
        return Err(Error::StageOutOfRange { stage: i, n: j });
    }
    let restricted: Vec<F2Column> = direct::cocycle_basis(x, d, j)
        .into_iter()
        .map(|z| z.truncated(i))
        .collect();
    Ok(direct::image_rank_in_cohomology(x, d, i, restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn antitransposed_edge() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        let m = build_antitransposed_coboundary(&x);
        let ones: Vec<(usize, usize)> = (1..=3)
            .flat_map(|c| (1..=3).map(move |r| (r, c)))
            .filter(|&(r, c)| m.get(r, c))
            .collect();
        assert_eq!(ones, vec![(1, 2), (1, 3)]);
        assert!(m.is_upper_triangular());
    }

    #[test]
    fn antitransposed_single_vertex_is_zero() {
        let m = build_antitransposed_coboundary(&fixtures::single_vertex());
        assert_eq!(m, F2Matrix::zeros(1, 1));
    }

    #[test]
    fn strictly_upper_triangular() {
        let m = build_antitransposed_coboundary(&fixtures::torus7());
        for j in 1..=m.ncols() {
            assert!(m.column(j).pivot().is_none_or(|p| p < j));
        }
    }

    #[test]
    fn phcol_leaves_reduced_input_alone() {
        let m = F2Matrix::from_columns(
            3,
            vec![
                F2Column::from_bits("000"),
                F2Column::from_bits("100"),
                F2Column::from_bits("110"),
            ],
        )
        .unwrap();
        let (r, v) = phcol(&m);
        assert_eq!(r, m);
        assert_eq!(v, F2Matrix::identity(3));
        let (r0, v0) = phcol(&F2Matrix::zeros(4, 4));
        assert_eq!(r0, F2Matrix::zeros(4, 4));
        assert_eq!(v0, F2Matrix::identity(4));
    }

    #[test]
    fn single_vertex_triple() {
        let x = fixtures::single_vertex();
        let z = persistence_triples(&x).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].degree, 0);
        assert_eq!(z[0].interval, ExtendedInterval { left: Endpoint::NegInf, right: 1 });
        assert!(z[0].is_essential());
        let b = barcode_of(&z);
        assert_eq!(b.entries().collect::<Vec<_>>(), vec![(0, z[0].interval, 1)]);
    }

    #[test]
    fn circle_triples() {
        let x = fixtures::circle();
        let z = persistence_triples(&x).unwrap();
        let deg0: Vec<_> = z.iter().filter(|t| t.degree == 0).collect();
        let deg1: Vec<_> = z.iter().filter(|t| t.degree == 1).collect();
        assert_eq!(deg0.iter().filter(|t| t.is_essential()).count(), 1);
        assert_eq!(deg0.iter().filter(|t| !t.is_essential()).count(), 2);
        assert_eq!(deg1.len(), 1);
        assert!(deg1[0].is_essential());
        // stage sets: {1..6}, {2,3}, {3,4}, {6}
        let b = barcode_of(&z);
        let iv = |l: Endpoint, r| ExtendedInterval { left: l, right: r };
        assert_eq!(
            b.entries().collect::<Vec<_>>(),
            vec![
                (0, iv(Endpoint::NegInf, 6), 1),
                (0, iv(Endpoint::Stage(1), 3), 1),
                (0, iv(Endpoint::Stage(2), 4), 1),
                (1, iv(Endpoint::Stage(5), 6), 1),
            ]
        );
    }

    #[test]
    fn rp2_has_one_essential_class_per_degree() {
        let x = fixtures::rp2();
        let b = barcode_of(&persistence_triples(&x).unwrap());
        for d in 0..=2 {
            assert_eq!(b.essential_count(d, 31), 1, "degree {d}");
            assert_eq!(restriction_rank_oracle(&x, d, 31, 31).unwrap(), 1);
        }
    }

    #[test]
    fn empty_barcode() {
        assert!(barcode_of(&[]).is_empty());
    }

    #[test]
    fn oracle_edge_cases() {
        let x = fixtures::circle();
        assert_eq!(restriction_rank_oracle(&x, 0, 2, 2).unwrap(), 2);
        assert_eq!(restriction_rank_oracle(&x, 1, 3, 3).unwrap(), 0);
        assert_eq!(restriction_rank_oracle(&x, 0, 2, 5).unwrap(), 1);
        assert_eq!(
            restriction_rank_oracle(&x, 0, 0, 2).unwrap_err().code(),
            "StageOutOfRange"
        );
        assert_eq!(
            restriction_rank_oracle(&x, 0, 1, 7).unwrap_err().code(),
            "StageOutOfRange"
        );
    }

    #[test]
    fn extract_rejects_wrong_shape() {
        let x = fixtures::circle();
        let m = F2Matrix::identity(2);
        assert_eq!(
            extract_triples(&m, &m, &x).unwrap_err().code(),
            "InconsistentInput"
        );
    }

    #[test]
    fn representatives_are_cocycles_on_their_bars() {
        let x = fixtures::torus7();
        for t in persistence_triples(&x).unwrap() {
            for s in 1..=x.len() {
                let restricted = t.rep.truncated(s);
                let coboundary_vanishes = restricted
                    .ones()
                    .flat_map(|c| x.cofacet_indices(c).iter().copied().filter(|&f| f <= s))
                    .fold(F2Column::zeros(x.len()), |mut acc, f| {
                        acc.flip(f);
                        acc
                    })
                    .is_zero();
                if t.interval.contains(s) {
                    assert!(coboundary_vanishes);
                    assert!(!restricted.is_zero());
                }
            }
        }
    }
}
