//! Exact symbolic kernel for rational solutions of the KdV hierarchy and
//! their heat kernel expansions.
//!
//! Everything is computed in exact rational arithmetic over a fixed symbol
//! table. The layers, bottom up:
//!
//! * scalars, symbols, monomials and sparse multivariate polynomials with a
//!   canonical graded lexicographic term order;
//! * rational functions in canonical reduced form (gcd-free, monic
//!   denominator) with total derivatives that treat `u0..u12` as the jet of
//!   a generic potential;
//! * exact rational integration with an explicit logarithmic obstruction,
//!   Laurent series with certified truncation floors, and a
//!   pseudodifferential operator calculus built on the same floor algebra;
//! * Wronskian potential chains, heat coefficient transport, square roots
//!   of Schrodinger operators, commuting operator pairs, wave functions and
//!   the residue formula for heat coefficients.
//!
//! Every nontrivial identity the crate produces is re-checked in exact
//! arithmetic before it is returned; failures surface as typed errors, not
//! as wrong answers.

pub mod adler_moser;
pub mod diffop;
pub mod error;
pub mod gcd;
pub mod hadamard;
pub mod integrate;
pub mod laurent;
pub mod monomial;
pub mod mpoly;
pub mod ratfun;
pub mod scalar;
pub mod symbol;
pub mod text;
pub mod unipoly;
pub mod wave;
pub mod wronskian;

pub use adler_moser::{chain, potential, theta};
pub use diffop::{bc_pair, kdv_flow, sqrt_l, BcPair, DiffOp, PsiDo};
pub use error::{ExactError, HadamardError, OperatorError, WaveError};
pub use hadamard::{
    diagonal_identity_check, diagonal_identity_generic, hadamard_table, transport_step,
    HadamardTable,
};
pub use laurent::{Floor, LaurentSeries};
pub use monomial::Monomial;
pub use mpoly::MPoly;
pub use ratfun::RatFun;
pub use scalar::Rational;
pub use symbol::{Sym, MAX_JET, NSYM};
pub use wave::{
    adjoint_baker, apply_conjugated, baker, bilinear_check, exp_series, gn_series,
    hadamard_residue, laguerre_gn_series, residue_from_waves, verify_wave_operator, BilinearReport,
    GnSeries, WaveSeries,
};
pub use wronskian::{wronskian, wronskian_minor};
