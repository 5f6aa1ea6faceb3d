//! Exact symbolic computation for rational WZ pairs in two variables.
//!
//! The crate provides arbitrary-precision rational arithmetic, bivariate
//! polynomials and reduced rational functions, shift/q-shift/derivation
//! operators with their orbit machinery, Hermite- and Abramov-style
//! reductions with the associated residue calculi, and verification,
//! decomposition, and generation of WZ pairs.

pub mod algnum;
pub mod bipoly;
pub mod error;
pub mod factor;
pub mod gcd;
pub mod operators;
pub mod partfrac;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod reduction;
pub mod residue;
pub mod uniview;
pub mod wz;

pub use bipoly::{BiPoly, Var};
pub use error::{Error, Result};
pub use factor::{factor_irreducible, factor_upoly, Factorization};
pub use gcd::poly_gcd;
pub use operators::{apply_auto, apply_delta, joint_orbit, qshift_equiv, shift_equiv, OpKind, OperatorCase, OrbitRelation};
pub use partfrac::{partial_fractions, PartialFractions, PfTerm};
pub use poly::{Poly, UPoly};
pub use residue::{decide_telescoping, residues, Place, ResidueEntry, ResidueKind, ResidueReport};
pub use reduction::{abramov_reduce, hermite_reduce, q_abramov_reduce, FractionTerm, ReductionResult, Remainder};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use wz::{decompose, decompose_diff, decompose_mixed, decompose_shift, gen_cyclic, gen_invariant, gen_logder, is_exact, random_pair, reconstruct, verify_wz, CyclicComponent, Decomposition, LogDerComponent, SizeParams, WZPair, DEFAULT_S_MAX};
pub use uniview::{resultant, squarefree_decomp, UniView};
