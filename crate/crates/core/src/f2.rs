//! Dense bit-packed linear algebra over the two-element field.
//!
//! Rows are indexed `1..=len`, matching the 1-based filtration indices used
//! throughout the crate. Column addition is word-wise XOR.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Column {
    len: usize,
    words: Vec<u64>,
}

impl F2Column {
    pub fn zeros(len: usize) -> Self {
        F2Column {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// Column with ones exactly at the given rows.
    pub fn from_rows(len: usize, rows: impl IntoIterator<Item = usize>) -> Self {
        let mut col = F2Column::zeros(len);
        for r in rows {
            col.flip(r);
        }
        col
    }

    /// Parses a string of `0`/`1` characters, first character is row 1.
    pub fn from_bits(bits: &str) -> Self {
        let rows = bits
            .chars()
            .enumerate()
            .filter(|(_, ch)| *ch == '1')
            .map(|(i, _)| i + 1);
        F2Column::from_rows(bits.chars().count(), rows)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn slot(&self, row: usize) -> (usize, u64) {
        assert!(
            row >= 1 && row <= self.len,
            "row {row} outside 1..={}",
            self.len
        );
        let bit = row - 1;
        (bit / WORD, 1u64 << (bit % WORD))
    }

    pub fn get(&self, row: usize) -> bool {
        let (w, mask) = self.slot(row);
        self.words[w] & mask != 0
    }

    pub fn set(&mut self, row: usize, value: bool) {
        let (w, mask) = self.slot(row);
        if value {
            self.words[w] |= mask;
        } else {
            self.words[w] &= !mask;
        }
    }

    pub fn flip(&mut self, row: usize) {
        let (w, mask) = self.slot(row);
        self.words[w] ^= mask;
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Largest row index holding a one, or `None` for the zero column.
    pub fn pivot(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + (WORD - w.leading_zeros() as usize))
    }

    /// `self += src`.
    pub fn add_assign(&mut self, src: &F2Column) -> Result<()> {
        if self.len != src.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: src.len,
            });
        }
        for (d, s) in self.words.iter_mut().zip(&src.words) {
            *d ^= *s;
        }
        Ok(())
    }

    /// Rows holding a one, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + tz + 1)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Dot product over F2.
    pub fn dot(&self, other: &F2Column) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Keeps rows `1..=upto` and clears everything above.
    pub fn truncated(&self, upto: usize) -> F2Column {
        let mut out = self.clone();
        for row in (upto + 1)..=self.len {
            out.set(row, false);
        }
        out
    }

    /// Row `r` moves to row `len + 1 - r`.
    pub fn reversed(&self) -> F2Column {
        F2Column::from_rows(self.len, self.ones().map(|r| self.len + 1 - r))
    }
}

impl fmt::Debug for F2Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (1..=self.len)
            .map(|r| if self.get(r) { '1' } else { '0' })
            .collect();
        write!(f, "F2Column({bits})")
    }
}

/// `dst += src`, returning the updated column.
pub fn add_into(src: &F2Column, mut dst: F2Column) -> Result<F2Column> {
    dst.add_assign(src)?;
    Ok(dst)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    nrows: usize,
    columns: Vec<F2Column>,
}

impl F2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        F2Matrix {
            nrows,
            columns: vec![F2Column::zeros(nrows); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            nrows: n,
            columns: (1..=n).map(|j| F2Column::from_rows(n, [j])).collect(),
        }
    }

    pub fn from_columns(nrows: usize, columns: Vec<F2Column>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != nrows) {
            return Err(Error::LengthMismatch {
                expected: nrows,
                found: bad.len(),
            });
        }
        Ok(F2Matrix { nrows, columns })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col - 1].get(row)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.columns[col - 1].set(row, value)
    }

    /// Column `j`, 1-based.
    pub fn column(&self, j: usize) -> &F2Column {
        &self.columns[j - 1]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut F2Column {
        &mut self.columns[j - 1]
    }

    pub fn columns(&self) -> &[F2Column] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<F2Column> {
        self.columns
    }

    /// Adds column `src` into column `dst` (both 1-based, distinct).
    pub fn add_column(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let (s, d) = (src - 1, dst - 1);
        let (src_col, dst_col) = if s < d {
            let (lo, hi) = self.columns.split_at_mut(d);
            (&lo[s], &mut hi[0])
        } else {
            let (lo, hi) = self.columns.split_at_mut(s);
            (&hi[0], &mut lo[d])
        };
        for (dw, sw) in dst_col.words.iter_mut().zip(&src_col.words) {
            *dw ^= *sw;
        }
    }

    pub fn mul_column(&self, x: &F2Column) -> Result<F2Column> {
        if x.len() != self.ncols() {
            return Err(Error::LengthMismatch {
                expected: self.ncols(),
                found: x.len(),
            });
        }
        let mut out = F2Column::zeros(self.nrows);
        for j in x.ones() {
            out.add_assign(&self.columns[j - 1])?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        let columns = other
            .columns
            .iter()
            .map(|c| self.mul_column(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix {
            nrows: self.nrows,
            columns,
        })
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.ncols(), self.nrows);
        for (j, col) in self.columns.iter().enumerate() {
            for i in col.ones() {
                out.set(j + 1, i, true);
            }
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, c)| c.pivot().is_none_or(|p| p <= j + 1))
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Rank over F2 by pivot-collision elimination on a copy of the columns.
pub fn rank(m: &F2Matrix) -> usize {
    let mut owner: Vec<Option<F2Column>> = vec![None; m.nrows + 1];
    let mut rank = 0;
    for col in &m.columns {
        let mut c = col.clone();
        while let Some(p) = c.pivot() {
            match &owner[p] {
                Some(reducer) => {
                    c.add_assign(reducer).expect("equal lengths");
                }
                None => {
                    owner[p] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Echelon form of a fixed set of columns, remembering how each reduced
/// column was assembled so that solves return coefficients on the originals.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    nrows: usize,
    ncols: usize,
    /// `owner[p]` is the reduced column whose pivot is `p`, with its combination.
    owner: Vec<Option<(F2Column, F2Column)>>,
    kernel: Vec<F2Column>,
}

impl EchelonBasis {
    pub fn new(nrows: usize, columns: &[F2Column]) -> Result<Self> {
        let ncols = columns.len();
        let mut owner: Vec<Option<(F2Column, F2Column)>> = vec![None; nrows + 1];
        let mut kernel = Vec::new();
        for (j, col) in columns.iter().enumerate() {
            if col.len() != nrows {
                return Err(Error::LengthMismatch {
                    expected: nrows,
                    found: col.len(),
                });
            }
            let mut c = col.clone();
            let mut combo = F2Column::from_rows(ncols, [j + 1]);
            loop {
                match c.pivot() {
                    None => {
                        kernel.push(combo);
                        break;
                    }
                    Some(p) => match &owner[p] {
                        Some((rc, rcombo)) => {
                            c.add_assign(rc)?;
                            combo.add_assign(rcombo)?;
                        }
                        None => {
                            owner[p] = Some((c, combo));
                            break;
                        }
                    },
                }
            }
        }
        Ok(EchelonBasis {
            nrows,
            ncols,
            owner,
            kernel,
        })
    }

    pub fn from_matrix(m: &F2Matrix) -> Self {
        EchelonBasis::new(m.nrows(), m.columns()).expect("rectangular matrix")
    }

    pub fn rank(&self) -> usize {
        self.ncols - self.kernel.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Coefficient vectors spanning the null space of the original columns.
    pub fn kernel(&self) -> &[F2Column] {
        &self.kernel
    }

    /// Returns `x` with `B x = w`, or `None` when `w` is not in the span.
    pub fn solve(&self, w: &F2Column) -> Result<Option<F2Column>> {
        if w.len() != self.nrows {
            return Err(Error::LengthMismatch {
                expected: self.nrows,
                found: w.len(),
            });
        }
        let mut residue = w.clone();
        let mut x = F2Column::zeros(self.ncols);
        while let Some(p) = residue.pivot() {
            match &self.owner[p] {
                Some((rc, combo)) => {
                    residue.add_assign(rc)?;
                    x.add_assign(combo)?;
                }
                None => return Ok(None),
            }
        }
        Ok(Some(x))
    }

    pub fn contains(&self, w: &F2Column) -> Result<bool> {
        Ok(self.solve(w)?.is_some())
    }
}

/// One-shot solve of `B x = w`.
pub fn solve_in_span(b: &F2Matrix, w: &F2Column) -> Result<Option<F2Column>> {
    if w.len() != b.nrows() {
        return Err(Error::LengthMismatch {
            expected: b.nrows(),
            found: w.len(),
        });
    }
    EchelonBasis::from_matrix(b).solve(w)
}

/// Basis of `{x : M x = 0}`.
pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Column> {
    EchelonBasis::from_matrix(m).kernel().to_vec()
}
