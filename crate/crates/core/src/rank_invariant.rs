//! The Steenrod rank invariant `ρ(k, d, i, j) = rank(Sq^k ∘ M^d(i → j))`.
//!
//! [`RankInvariant`] evaluates it from reduction output: squares of the
//! degree-`d` representatives are expanded once in a triangular basis of all
//! degree-`(d+k)` cochains, and each window only filters coefficients.
//! [`rank_inv_oracle`] recomputes the same number from prefix cohomology.

use std::collections::BTreeMap;

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::f2::{EchelonBasis, F2Column, F2Matrix};
use crate::persistence::{direct, persistence_triples, Endpoint, GradedTriple};
use crate::steenrod::stsq;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankQuery {
    pub k: usize,
    pub d: usize,
    pub i: Endpoint,
    pub j: usize,
}

impl RankQuery {
    pub fn new(k: usize, d: usize, i: Endpoint, j: usize) -> Self {
        RankQuery { k, d, i, j }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k < 1 {
            return Err(Error::QueryOutOfRange(format!("k={} must be positive", self.k)));
        }
        if self.j < 1 || self.j > n {
            return Err(Error::QueryOutOfRange(format!("j={} outside 1..={n}", self.j)));
        }
        if let Endpoint::Stage(i) = self.i {
            if i < 1 || i > self.j {
                return Err(Error::QueryOutOfRange(format!(
                    "i={i} outside 1..={}",
                    self.j
                )));
            }
        }
        Ok(())
    }
}

/// Values of `ρ(k, d, ·, ·)` over every window `(i, j)` with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub k: usize,
    pub d: usize,
    pub n: usize,
    pub entries: BTreeMap<(Endpoint, usize), usize>,
}

impl RankTable {
    pub fn get(&self, i: Endpoint, j: usize) -> Option<usize> {
        self.entries.get(&(i, j)).copied()
    }
}

#[derive(Clone, Copy, Debug)]
enum BasisLabel {
    /// Representative of triple `t`.
    Bar(usize),
    /// Coboundary column of a finite bar one degree down.
    Coboundary,
}

/// Evaluator for one `(k, d)` over a fixed reduction.
pub struct RankInvariant<'a> {
    triples: &'a [GradedTriple],
    n: usize,
    k: usize,
    d: usize,
    labels: Vec<BasisLabel>,
    /// `(triple index, coefficients of its square)` for every degree-`d` triple.
    squares: Vec<(usize, F2Column)>,
}

impl<'a> RankInvariant<'a> {
    pub fn new(x: &FilteredComplex, triples: &'a [GradedTriple], k: usize, d: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::QueryOutOfRange(format!("k={k} must be positive")));
        }
        let n = x.len();
        let e = d + k;
        let mut labels = Vec::new();
        let mut columns = Vec::new();
        for (t, triple) in triples.iter().enumerate() {
            if triple.degree == e {
                labels.push(BasisLabel::Bar(t));
                columns.push(triple.rep.clone());
            }
            if triple.degree + 1 == e {
                if let Some(cob) = &triple.coboundary {
                    labels.push(BasisLabel::Coboundary);
                    columns.push(cob.clone());
                }
            }
        }
        if columns.len() != x.count_of_dim(e) {
            return Err(Error::InconsistentInput(format!(
                "degree {e} basis has {} columns for {} simplices",
                columns.len(),
                x.count_of_dim(e)
            )));
        }
        let basis = EchelonBasis::new(n, &columns)?;

        let mut squares = Vec::new();
        for (t, triple) in triples.iter().enumerate().filter(|(_, t)| t.degree == d) {
            let rep = x.column_to_cochain(&triple.rep, d)?;
            let square = x.cochain_to_column(&stsq(k, &rep, x)?)?;
            let coeffs = basis.solve(&square)?.ok_or_else(|| {
                Error::SolveFailed(format!("square of triple {t} ({})", triple.interval))
            })?;
            squares.push((t, coeffs));
        }
        Ok(RankInvariant {
            triples,
            n,
            k,
            d,
            labels,
            squares,
        })
    }

    pub fn eval(&self, i: Endpoint, j: usize) -> Result<usize> {
        RankQuery::new(self.k, self.d, i, j).validate(self.n)?;
        let i = match i {
            Endpoint::NegInf => return Ok(0),
            Endpoint::Stage(i) => i,
        };
        let mut kept = Vec::new();
        for (t, coeffs) in &self.squares {
            if !self.triples[*t].interval.contains_window(i, j) {
                continue;
            }
            let mut x = F2Column::zeros(self.labels.len());
            for c in coeffs.ones() {
                if let BasisLabel::Bar(b) = self.labels[c - 1] {
                    let iv = self.triples[b].interval;
                    if iv.contains(i) {
                        x.set(c, true);
                    } else if iv.left.below(i) {
                        // restricted square would not be a cocycle on X_i
                        return Err(Error::SolveFailed(format!(
                            "square of triple {t} has weight on dead bar {iv} at stage {i}"
                        )));
                    }
                }
            }
            kept.push(x);
        }
        Ok(F2Matrix::from_columns(self.labels.len(), kept)?.rank())
    }

    pub fn table(&self) -> Result<RankTable> {
        let mut entries = BTreeMap::new();
        for j in 1..=self.n {
            entries.insert((Endpoint::NegInf, j), 0);
            for i in 1..=j {
                entries.insert((Endpoint::Stage(i), j), self.eval(Endpoint::Stage(i), j)?);
            }
        }
        Ok(RankTable {
            k: self.k,
            d: self.d,
            n: self.n,
            entries,
        })
    }
}

/// Single query against precomputed triples.
pub fn rank_inv(z: &[GradedTriple], x: &FilteredComplex, q: RankQuery) -> Result<usize> {
    q.validate(x.len())?;
    RankInvariant::new(x, z, q.k, q.d)?.eval(q.i, q.j)
}

/// Full sweep over all windows, reusing one reduction.
pub fn rank_inv_table(x: &FilteredComplex, k: usize, d: usize) -> Result<RankTable> {
    let z = persistence_triples(x)?;
    RankInvariant::new(x, &z, k, d)?.table()
}

/// Direct evaluation: square a cocycle basis of `X_j` inside `X_j`,
/// restrict to `X_i`, and measure the image in `H^{d+k}(X_i)`.
pub fn rank_inv_oracle(x: &FilteredComplex, q: RankQuery) -> Result<usize> {
    q.validate(x.len())?;
    let i = match q.i {
        Endpoint::NegInf => return Ok(0),
        Endpoint::Stage(i) => i,
    };
    let cocycles = direct::cocycle_basis(x, q.d, q.j);
    if cocycles.is_empty() {
        return Ok(0);
    }
    let xj = x.prefix(q.j)?;
    let mut images = Vec::with_capacity(cocycles.len());
    for z in cocycles {
        let alpha = x.column_to_cochain(&z, q.d)?;
        let square = stsq(q.k, &alpha, &xj)?;
        images.push(x.cochain_to_column(&square)?.truncated(i));
    }
    Ok(direct::image_rank_in_cohomology(x, q.d + q.k, i, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(k: usize, d: usize, i: usize, j: usize) -> RankQuery {
        RankQuery::new(k, d, Endpoint::Stage(i), j)
    }

    #[test]
    fn rp2_sq1_is_nonzero() {
        let x = fixtures::rp2();
        let z = persistence_triples(&x).unwrap();
        assert_eq!(rank_inv(&z, &x, q(1, 1, 31, 31)).unwrap(), 1);
        assert_eq!(rank_inv_oracle(&x, q(1, 1, 31, 31)).unwrap(), 1);
    }

    #[test]
    fn torus_sq1_vanishes() {
        let x = fixtures::torus7();
        let n = x.len();
        let z = persistence_triples(&x).unwrap();
        assert_eq!(rank_inv(&z, &x, q(1, 1, n, n)).unwrap(), 0);
        assert_eq!(rank_inv_oracle(&x, q(1, 1, n, n)).unwrap(), 0);
    }

    #[test]
    fn neg_inf_window_is_zero() {
        let x = fixtures::rp2();
        let z = persistence_triples(&x).unwrap();
        let query = RankQuery::new(1, 1, Endpoint::NegInf, 31);
        assert_eq!(rank_inv(&z, &x, query).unwrap(), 0);
        assert_eq!(rank_inv_oracle(&x, query).unwrap(), 0);
    }

    #[test]
    fn no_simplices_in_degree() {
        let x = fixtures::circle();
        let z = persistence_triples(&x).unwrap();
        assert_eq!(rank_inv(&z, &x, q(1, 2, 6, 6)).unwrap(), 0);
        assert_eq!(rank_inv_oracle(&x, q(1, 5, 6, 6)).unwrap(), 0);
        assert_eq!(rank_inv_oracle(&x, q(2, 0, 1, 6)).unwrap(), 0);
    }

    #[test]
    fn query_validation() {
        let x = fixtures::circle();
        let z = persistence_triples(&x).unwrap();
        for bad in [q(0, 1, 1, 1), q(1, 1, 3, 2), q(1, 1, 1, 7), q(1, 1, 0, 2)] {
            assert_eq!(rank_inv(&z, &x, bad).unwrap_err().code(), "QueryOutOfRange");
            assert_eq!(rank_inv_oracle(&x, bad).unwrap_err().code(), "QueryOutOfRange");
        }
    }

    #[test]
    fn single_vertex_table_is_zero() {
        let x = fixtures::single_vertex();
        for (k, d) in [(1, 0), (2, 0), (1, 1)] {
            let t = rank_inv_table(&x, k, d).unwrap();
            assert!(t.entries.values().all(|&v| v == 0));
            assert_eq!(t.entries.len(), 2);
        }
    }

    #[test]
    fn rp2_table_matches_oracle() {
        let x = fixtures::rp2();
        let t = rank_inv_table(&x, 1, 1).unwrap();
        for (&(i, j), &v) in &t.entries {
            assert_eq!(v, rank_inv_oracle(&x, RankQuery::new(1, 1, i, j)).unwrap(), "({i},{j})");
        }
        assert_eq!(t.get(Endpoint::Stage(31), 31), Some(1));
        assert_eq!(t.get(Endpoint::Stage(30), 31), Some(0));
    }
}
