//! Exact symbolic computation for quantized enveloping algebras,
//! quantum symmetric pair coideal subalgebras, and radial part
//! decompositions of central elements as matrix-valued q-difference
//! operators.
//!
//! Everything is computed over the exact coefficient field
//! `Q(q^{1/2}, q^{lambda_1}, ..., q^{lambda_r}, p_1, ..., p_m)`:
//! no floating point anywhere, all equalities are decided by canonical
//! forms of multivariate rational functions.
//!
//! Module tour:
//!
//! * [`scalar`] — Laurent polynomials and rational functions in
//!   `q^{1/2}`, the spectral symbols `q^{lambda_t}`, and free parameters,
//!   with a hand-rolled multivariate gcd so every `RatFunc` is canonical.
//! * [`cartan`] — generalized Cartan matrices, symmetrizers, root
//!   pairings, integer kernels, and the Weyl vector solve.

pub mod cartan;
pub mod scalar;

pub use cartan::{CartanMatrix, RootVec};
pub use scalar::{LaurentPoly, RatFunc};
