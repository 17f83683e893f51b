use alloc::string::String;

use crate::numeric::Nat;

/// Errors raised by the combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A resolution `n` outside the supported range.
    #[error("resolution n = {n} is not supported: {reason}")]
    Resolution {
        /// The offending resolution.
        n: u64,
        /// Why it was rejected.
        reason: &'static str,
    },
    /// An index argument lies outside its domain.
    #[error("{name} = {value} is out of range (allowed {allowed})")]
    Index {
        /// Argument name.
        name: &'static str,
        /// The offending value.
        value: u64,
        /// Human-readable description of the allowed range.
        allowed: String,
    },
    /// An atom or element index `k` with `k >= 2^n`.
    #[error("value {value} is not below 2^{n}")]
    Atom {
        /// Resolution.
        n: u32,
        /// The offending value.
        value: Nat,
    },
    /// An enumeration rank outside `1..=size`.
    #[error("rank {rank} is outside 1..={size}")]
    Rank {
        /// Requested rank.
        rank: Nat,
        /// Size of the enumerated set.
        size: Nat,
    },
    /// A malformed tame-relation descriptor.
    #[error("invalid relation: {0}")]
    Relation(String),
    /// A dense table that is not a permutation.
    #[error("table is not a bijection: {0}")]
    NotBijective(String),
    /// A permutation that violates `weight(π(k)) = istep(n, k)`.
    #[error("permutation is not admissible at k = {k}")]
    NotAdmissible {
        /// First failing atom.
        k: u64,
    },
    /// A Rademacher row whose sign patterns collide.
    #[error("atoms {first} and {second} share the sign pattern {pattern:#b}")]
    DuplicatePattern {
        /// Smaller atom.
        first: u64,
        /// Larger atom.
        second: u64,
        /// The shared pattern (bit `n - i` carries coordinate `i`).
        pattern: u64,
    },
    /// A row that is not usable for the requested operation.
    #[error("row rejected: {0}")]
    Row(String),
    /// A search that must succeed found nothing.
    #[error("no witness found: {0}")]
    NoWitness(String),
}

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;
