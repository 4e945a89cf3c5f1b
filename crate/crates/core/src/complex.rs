//! Ordered simplicial complexes, simplexwise filtrations, and F2 cochains.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::f2::F2Column;

pub type Vertex = u32;

/// A simplex as its strictly ascending vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedSimplex(format_vertices(&vertices)));
        }
        Ok(Simplex(vertices))
    }

    /// Sorts and deduplicates; panics on an empty list.
    pub fn from_unsorted(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(!vertices.is_empty(), "empty simplex");
        Simplex(vertices)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Vertices `start..=end` by position.
    pub fn slice(&self, start: usize, end: usize) -> Simplex {
        Simplex(self.0[start..=end].to_vec())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vertices(&self.0))
    }
}

impl fmt::Display for Simplex {
    /// Space-separated vertices, the file format used by the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn format_vertices(vs: &[Vertex]) -> String {
    let inner: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Shorthand used heavily in tests: `simplex(&[1, 2, 4])`.
pub fn simplex(vertices: &[Vertex]) -> Simplex {
    Simplex::new(vertices.to_vec()).expect("valid simplex literal")
}

/// Number of vertices of `s` strictly smaller than `v`.
pub fn position(v: Vertex, s: &Simplex) -> Result<usize> {
    s.0.binary_search(&v).map_err(|_| Error::NotMember {
        vertex: v,
        simplex: format!("{s:?}"),
    })
}

/// A simplexwise filtration `a_1, ..., a_n`. Indices are 1-based.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for FilteredComplex {}

impl FilteredComplex {
    /// Validates closure of every prefix and builds the lookup tables.
    pub fn new(simplices: Vec<Simplex>) -> Result<Self> {
        let mut index: HashMap<Simplex, usize> = HashMap::with_capacity(simplices.len());
        let mut facets = Vec::with_capacity(simplices.len());
        let mut cofacets: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
        for (pos, s) in simplices.iter().enumerate() {
            if s.is_empty() || s.0.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::MalformedSimplex(format_vertices(&s.0)));
            }
            if index.contains_key(s) {
                return Err(Error::Duplicate(format!("{s:?}")));
            }
            let mut own = Vec::with_capacity(s.len());
            for f in s.facets() {
                match index.get(&f) {
                    Some(&fi) => {
                        own.push(fi);
                        cofacets[fi - 1].push(pos + 1);
                    }
                    None => {
                        return Err(Error::NotClosed {
                            simplex: format!("{s:?}"),
                            face: format!("{f:?}"),
                        })
                    }
                }
            }
            facets.push(own);
            index.insert(s.clone(), pos + 1);
        }
        Ok(FilteredComplex {
            simplices,
            index,
            facets,
            cofacets,
        })
    }

    pub fn from_vertex_lists(lists: &[&[Vertex]]) -> Result<Self> {
        let simplices = lists
            .iter()
            .map(|l| Simplex::new(l.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(simplices)
    }

    /// Number of simplices `n`.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// The simplex `a_i`.
    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i - 1]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn facet_indices(&self, i: usize) -> &[usize] {
        &self.facets[i - 1]
    }

    pub fn cofacet_indices(&self, i: usize) -> &[usize] {
        &self.cofacets[i - 1]
    }

    /// Indices of the `d`-simplices, ascending.
    pub fn indices_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.dim() == d)
            .map(|(i, _)| i + 1)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.indices_of_dim(d).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// The subcomplex `X_i` formed by `a_1, ..., a_i`.
    pub fn prefix(&self, i: usize) -> Result<FilteredComplex> {
        if i > self.len() {
            return Err(Error::StageOutOfRange {
                stage: i,
                n: self.len(),
            });
        }
        FilteredComplex::new(self.simplices[..i].to_vec())
    }

    pub fn check_cochain(&self, c: &Cochain) -> Result<()> {
        match c.support.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::UnsupportedCochain(format!("{s:?}"))),
            None => Ok(()),
        }
    }

    /// Coboundary `δα`: parity of the support faces of each `(d+1)`-simplex.
    pub fn coboundary(&self, alpha: &Cochain) -> Result<Cochain> {
        self.check_cochain(alpha)?;
        let mut parity: HashMap<usize, bool> = HashMap::new();
        for s in &alpha.support {
            let i = self.index[s];
            for &c in &self.cofacets[i - 1] {
                *parity.entry(c).or_insert(false) ^= true;
            }
        }
        let support = parity
            .into_iter()
            .filter(|&(_, odd)| odd)
            .map(|(c, _)| self.simplex(c).clone())
            .collect();
        Ok(Cochain {
            degree: alpha.degree + 1,
            support,
        })
    }

    /// Dense indicator column over all `n` filtration indices.
    pub fn cochain_to_column(&self, c: &Cochain) -> Result<F2Column> {
        self.check_cochain(c)?;
        Ok(F2Column::from_rows(
            self.len(),
            c.support.iter().map(|s| self.index[s]),
        ))
    }

    /// Inverse of [`cochain_to_column`](Self::cochain_to_column).
    pub fn column_to_cochain(&self, col: &F2Column, degree: usize) -> Result<Cochain> {
        if col.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: col.len(),
            });
        }
        let mut support = BTreeSet::new();
        for r in col.ones() {
            let s = self.simplex(r);
            if s.dim() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: s.dim(),
                });
            }
            support.insert(s.clone());
        }
        Ok(Cochain { degree, support })
    }
}

/// A homogeneous F2 cochain, stored as the set of simplices where it is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cochain {
    degree: usize,
    support: BTreeSet<Simplex>,
}

impl Cochain {
    pub fn empty(degree: usize) -> Self {
        Cochain {
            degree,
            support: BTreeSet::new(),
        }
    }

    pub fn new(degree: usize, support: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut out = Cochain::empty(degree);
        for s in support {
            if s.dim() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: s.dim(),
                });
            }
            out.toggle(s);
        }
        Ok(out)
    }

    pub fn from_vertex_lists(degree: usize, lists: &[&[Vertex]]) -> Result<Self> {
        let simplices = lists
            .iter()
            .map(|l| Simplex::new(l.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Cochain::new(degree, simplices)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &BTreeSet<Simplex> {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn value(&self, s: &Simplex) -> bool {
        self.support.contains(s)
    }

    pub(crate) fn toggle(&mut self, s: Simplex) {
        if !self.support.remove(&s) {
            self.support.insert(s);
        }
    }

    /// Sum over F2 (symmetric difference).
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(Cochain {
            degree: self.degree,
            support: self
                .support
                .symmetric_difference(&other.support)
                .cloned()
                .collect(),
        })
    }

    /// Restriction to `X_i`: drops simplices with filtration index above `i`.
    pub fn restrict_to(&self, x: &FilteredComplex, i: usize) -> Cochain {
        Cochain {
            degree: self.degree,
            support: self
                .support
                .iter()
                .filter(|s| x.index_of(s).is_some_and(|ix| ix <= i))
                .cloned()
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edge_with_vertices() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.index_of(&simplex(&[1, 2])), Some(3));
    }

    #[test]
    fn missing_vertices_is_not_closed() {
        let err = FilteredComplex::from_vertex_lists(&[&[1, 2]]).unwrap_err();
        assert_eq!(err.code(), "NotClosed");
        let late = FilteredComplex::from_vertex_lists(&[&[1], &[1, 2], &[2]]).unwrap_err();
        assert_eq!(late.code(), "NotClosed");
    }

    #[test]
    fn duplicate_and_malformed() {
        let dup = FilteredComplex::from_vertex_lists(&[&[1], &[1]]).unwrap_err();
        assert_eq!(dup.code(), "Duplicate");
        assert_eq!(Simplex::new(vec![2, 1]).unwrap_err().code(), "MalformedSimplex");
        assert_eq!(Simplex::new(vec![1, 1]).unwrap_err().code(), "MalformedSimplex");
        assert_eq!(Simplex::new(vec![]).unwrap_err().code(), "MalformedSimplex");
    }

    #[test]
    fn rp2_complex_is_valid() {
        let x = fixtures::rp2();
        assert_eq!(x.len(), 31);
        assert_eq!(x.euler_characteristic(), 1);
        for e in x.indices_of_dim(1) {
            assert_eq!(x.cofacet_indices(e).len(), 2, "{:?}", x.simplex(e));
        }
        for t in [[1, 4, 5], [1, 2, 4], [1, 3, 5], [2, 3, 4], [2, 3, 5]] {
            assert!(x.contains(&simplex(&t)));
        }
    }

    #[test]
    fn position_examples() {
        let s = simplex(&[2, 3, 5]);
        assert_eq!(position(2, &s).unwrap(), 0);
        assert_eq!(position(5, &s).unwrap(), 2);
        assert_eq!(position(7, &simplex(&[7])).unwrap(), 0);
        assert_eq!(position(4, &s).unwrap_err().code(), "NotMember");
    }

    #[test]
    fn coboundary_examples() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2], &[1, 2]]).unwrap();
        let v = Cochain::from_vertex_lists(0, &[&[1]]).unwrap();
        assert_eq!(
            x.coboundary(&v).unwrap(),
            Cochain::from_vertex_lists(1, &[&[1, 2]]).unwrap()
        );
        assert_eq!(x.coboundary(&Cochain::empty(1)).unwrap(), Cochain::empty(2));

        let rp2 = fixtures::rp2();
        let d = rp2.coboundary(&fixtures::rp2_cocycle()).unwrap();
        assert_eq!(d, Cochain::empty(2));
    }

    #[test]
    fn unsupported_cochain_is_rejected() {
        let x = FilteredComplex::from_vertex_lists(&[&[1], &[2]]).unwrap();
        let c = Cochain::from_vertex_lists(1, &[&[1, 2]]).unwrap();
        assert_eq!(x.coboundary(&c).unwrap_err().code(), "UnsupportedCochain");
    }

    #[test]
    fn faces_precede_cofaces() {
        let x = fixtures::torus7();
        for i in 1..=x.len() {
            for &f in x.facet_indices(i) {
                assert!(f < i);
            }
        }
    }

    #[test]
    fn empty_cochains_compare_by_degree() {
        assert_ne!(Cochain::empty(1), Cochain::empty(2));
        assert_eq!(Cochain::empty(2), Cochain::empty(2));
    }

    #[test]
    fn column_round_trip() {
        let x = fixtures::rp2();
        let s = fixtures::rp2_cocycle();
        let col = x.cochain_to_column(&s).unwrap();
        assert_eq!(x.column_to_cochain(&col, 1).unwrap(), s);
        assert_eq!(
            x.column_to_cochain(&col, 2).unwrap_err().code(),
            "DegreeMismatch"
        );
    }
}
