//! Exact symmetry-based certificates for systems of polynomials in Boolean
//! variables.
//!
//! Everything lives in the quotient ring `C = Q(i)[x0..x_{N-1}] / (x_i^2 - x_i)`,
//! whose elements are square-free (multilinear) polynomials with Gaussian
//! rational coefficients. The pipeline decides emptiness of the Boolean
//! variety `Z(F)` of a system `F`:
//!
//! 1. [`symmetry`] splits the symmetric group into the stabilizer of `F` and
//!    its complement, the destabilizer set.
//! 2. [`saturation`] multiplies each polynomial by all of its destabilized
//!    images, producing a system `G` whose zero set absorbs every permuted
//!    copy of `Z(F)`.
//! 3. [`algebra`] eliminates down to a single variable, returning a univariate
//!    polynomial together with cofactors that certify its ideal membership.
//! 4. [`certificate`] turns the roots of that polynomial into a verdict:
//!    a non-existence certificate, an explicit solution witness found through
//!    the zero-column test, or an honest "inconclusive".
//! 5. [`oracle`] brute-forces the cube and audits the pipeline end to end.
//!
//! All arithmetic is exact; no floating point appears anywhere.

pub mod algebra;
pub mod certificate;
pub mod error;
pub mod oracle;
pub mod parse;
pub mod ring;
pub mod saturation;
pub mod scalar;
pub mod symmetry;
pub mod sysfile;

pub use error::Error;
pub use ring::{Monomial, MultilinearPoly};
pub use scalar::{GaussianRational, Rational};
pub use symmetry::{DestabilizerSet, Permutation, PolySystem};
