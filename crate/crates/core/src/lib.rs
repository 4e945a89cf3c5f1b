//! Persistent cohomology over F2 with Steenrod squares.
//!
//! The pipeline: build a [`FilteredComplex`], reduce its anti-transposed
//! coboundary matrix with [`phcol`](persistence::phcol), read off bars and
//! cocycle representatives, then evaluate the Steenrod rank invariant
//! `ρ(k, d, i, j)` with [`RankInvariant`]. Each computational step has an
//! independent brute-force counterpart (`*_oracle`) used by the test suites
//! and by the `selfcheck` CLI command.
//!
//! ```
//! use psteenrod::{fixtures, steenrod::stsq};
//!
//! let rp2 = fixtures::rp2();
//! let sq1 = stsq(1, &fixtures::rp2_cocycle(), &rp2).unwrap();
//! assert_eq!(sq1.support().iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["2 3 5"]);
//! ```

pub mod complex;
pub mod error;
pub mod f2;
pub mod fixtures;
pub mod io;
pub mod output;
pub mod persistence;
pub mod random;
pub mod rank_invariant;
pub mod rips;
pub mod selfcheck;
pub mod steenrod;

pub use complex::{position, simplex, Cochain, FilteredComplex, Simplex, Vertex};
pub use error::{Error, Result};
pub use f2::{F2Column, F2Matrix};
pub use persistence::{Barcode, Endpoint, ExtendedInterval, GradedTriple};
pub use rank_invariant::{RankInvariant, RankQuery, RankTable};
