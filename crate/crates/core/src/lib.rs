//! Workbench for circuit-size formulas in the sum-of-squares (SoS) proof
//! system.
//!
//! The crate provides, over exact rational arithmetic:
//!
//! * sparse multivariate polynomials with Boolean-axiom-aware reduction
//!   ([`poly`]),
//! * a gate-list circuit IR with small-function compilation and the
//!   slice/monotone transforms ([`circuit`]),
//! * generators for the circuit-size formula, its monotone and CNF
//!   variants, and XOR constraint systems ([`formula`]),
//! * bipartite constraint graphs with exhaustively certified expansion
//!   ([`graph`]),
//! * the expander-based restriction of the circuit-size formula down to an
//!   XOR system, with machine-checked determinedness and independence
//!   ([`reduction`]),
//! * SoS/Nullstellensatz proof objects with an exact verifier ([`proof`]),
//! * a degree-`O(s)` refutation builder for unsatisfiable circuit-size
//!   formulas and CNF-to-polynomial proof translation ([`refuter`]),
//! * pseudo-expectation certificates for SoS degree lower bounds
//!   ([`cert`]),
//! * and brute-force oracles for ground truth ([`oracle`]).
//!
//! The polynomial core is generic over the coefficient scalar via
//! `num-traits`; everything above it uses the exact rational aliases
//! [`Coeff`] and [`Poly`] exported at the crate root.

pub mod budget;
pub mod cert;
pub mod circuit;
pub mod formula;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod proof;
pub mod reduction;
pub mod refuter;
pub mod scalar;
pub mod vars;

pub use scalar::{Field, Scalar};

/// Exact rational coefficient used by all concrete systems in this crate.
pub type Coeff = num_rational::BigRational;

/// Polynomial over the exact rational scalar.
pub type Poly = poly::Polynomial<Coeff>;

/// Substitution over the exact rational scalar.
pub type Subst = poly::Substitution<Coeff>;

/// Shorthand for an exact rational from an integer.
pub fn q(v: i64) -> Coeff {
    scalar::from_int(v)
}
