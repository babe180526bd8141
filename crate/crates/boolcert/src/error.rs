//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Polynomial text did not conform to the grammar. `pos` is a byte offset
    /// into the offending string.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A system file was malformed; `line` is 1-based.
    #[error("line {line}: {msg}")]
    SystemFile { line: usize, msg: String },

    /// Full enumeration of the symmetric group was refused.
    #[error("group too large: {n}! permutations exceed the cap of {cap}! (raise the cap to proceed)")]
    GroupTooLarge { n: usize, cap: usize },

    /// Quotient-space linear algebra was refused: dimension 2^n is over the cap.
    #[error("quotient dimension 2^{n} exceeds the cap of 2^{cap}")]
    QuotientTooLarge { n: usize, cap: usize },

    /// Cube enumeration was refused.
    #[error("cube too large: 2^{n} points exceed the cap of 2^{cap}")]
    CubeTooLarge { n: usize, cap: usize },

    /// The certificate matrix is only defined for a nonempty destabilizer.
    /// Fully symmetric systems must be decided by direct evaluation or the
    /// cube oracle instead.
    #[error("destabilizer is empty: the system is fully symmetric and the matrix test is vacuous")]
    EmptyDestabilizer,

    /// Images do not describe a bijection on 0..n.
    #[error("invalid permutation: {msg}")]
    InvalidPermutation { msg: String },

    /// A graph edge referenced a vertex outside 0..n_vertices, or was a
    /// self-loop.
    #[error("invalid edge ({u}, {v}) on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    /// Invalid system construction (duplicate names, ambient mismatch, empty).
    #[error("invalid system: {msg}")]
    InvalidSystem { msg: String },
}

impl Error {
    /// True for the cap-style refusals that the CLI maps to its own exit code.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::QuotientTooLarge { .. } | Error::CubeTooLarge { .. }
        )
    }
}
