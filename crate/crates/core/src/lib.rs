//! Exact generalized matrix functions of tree q-Laplacians.
//!
//! The crate computes `d_γ(xI - L_q(T))` for a tree `T` and any degree-`n`
//! symmetric function `γ` (given in one of the six classical bases or as raw
//! power-sum coordinates), together with the machinery needed to check the
//! coefficient-monotonicity statements along the generalized tree shift
//! poset:
//!
//! - [`partition`]: integer partitions and centralizer orders.
//! - [`symfunc`]: power-sum expansions, inverse Frobenius images, characters
//!   and the binomial transform `α_i`.
//! - [`brick`]: brick tabloids and the signed weighted counts for `M^λ`, `F^λ`.
//! - [`qpoly`]: exact polynomials in `q`, and in `x` over those.
//! - [`tree`]: labeled and canonical trees, free-tree enumeration, matchings.
//! - [`gts`]: the generalized tree shift and the proper-shift digraph.
//! - [`gmf`]: brute-force and matching-expansion evaluators, `a_{i,r}`
//!   extraction and the verifiers.
//! - [`sweep`]: parallel verification sweeps driving the CLI.
//!
//! All arithmetic is exact over `ℚ`.

pub mod brick;
pub mod cli;
pub mod error;
pub mod gmf;
pub mod gts;
pub mod io;
pub mod partition;
pub mod qpoly;
pub mod rational;
pub mod sweep;
pub mod symfunc;
pub mod tree;

pub use error::{Error, Result};
pub use gmf::{
    air_table, gmf_poly_bruteforce, gmf_poly_matching, verify_air_monotone, verify_coeff_formula,
    verify_monotone, AirTable, Gamma, GmfPolynomial, MonotoneMode,
};
pub use gts::{gts_shift, proper_gts_pairs, GtsPair, ShiftDigraph};
pub use partition::{enumerate_partitions, Partition};
pub use qpoly::{QPoly, XQPoly};
pub use rational::Rational;
pub use symfunc::{Basis, ClassFunction, PowerExpansion, SymFunctions};
pub use tree::{enumerate_free_trees, CanonicalTree, LabeledTree, Matching};
