//! Constructions and exact verifiers for packing permutations into Latin
//! squares.
//!
//! Every square matrix of order `n` over the symbols `{1..n}` carries `4n`
//! *lines*: its rows, its columns, and both read in reverse. For a Latin
//! square the lines are permutations, and the interesting extremes are
//! squares whose lines are all distinct (strongly asymmetric) and sets of
//! squares whose line sets are pairwise disjoint — packings. This crate
//! builds such sets for entire symmetric groups ([`constructions::pack_odd`],
//! [`constructions::pack_even`]), for groups of order `4n` on a single
//! square ([`constructions::pack_single`]), and for the affine groups behind
//! mutually orthogonal squares ([`constructions::mols_packed`]), along with
//! the opposite extreme ([`constructions::min_lines_square`]). The
//! [`verify`] module re-checks everything exactly, and [`corpus`] reads and
//! writes the plain-text matrix format the command-line tool speaks.

pub mod constructions;
pub mod corpus;
mod error;
pub mod perm;
pub mod ring;
pub mod square;
mod util;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation};
pub use square::{Line, LineKind, SquareMatrix};
