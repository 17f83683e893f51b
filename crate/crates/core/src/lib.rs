//! Admissible permutations of `{0, …, 2^n − 1}` and the strong, trim
//! triangular-array rows they induce for the quantile of the simple random
//! walk.
//!
//! A permutation `π` is *admissible* at resolution `n` when
//! `weight(π(k)) = istep(n, k)` for every `k < 2^n`: it carries the `k`-th
//! dyadic atom of the sorted walk onto an atom of the raw walk with the same
//! value. The crate provides three explicit families of such permutations,
//! [`Rule::F`], [`Rule::G`] and [`Rule::H`], evaluated in time polynomial in
//! `n` through counting functions over binomial-coefficient prefix sums, along
//! with brute-force references in [`oracle`].
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use admissible_core::{Nat, Session};
//!
//! let session = Session::new();
//! let image = session.f(8, &Nat::from(15u32)).unwrap();
//! assert_eq!(image, Nat::from(17u32));
//! assert_eq!(session.inv_f(8, &image).unwrap(), Nat::from(15u32));
//! ```
#![no_std]
#![deny(missing_docs)]

extern crate alloc;

pub mod array;
mod error;
pub mod numeric;
pub mod oracle;
pub mod perm;
mod session;
pub mod tame;

pub use array::{RademacherRow, RowReport, SwapWitness};
pub use error::{Error, Result};
pub use numeric::{BitVector, DyadicIndex, Level, Nat};
pub use perm::{DensePermutation, PermutationTable, Rule, SigmaSystem};
pub use session::Session;
pub use tame::{Kind, TameRelation};
