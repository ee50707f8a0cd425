//! Exact Poincaré polynomials for Hilbert schemes of points on the projective
//! plane, moduli of Kronecker modules and Simpson moduli spaces
//! `M_{dm+1}(P2)`, together with a suite of checks for the polynomial
//! identities relating them.
//!
//! Arithmetic is generic over an exact integer [`Coefficient`] type; the
//! aliases below fix it to [`BigInt`], which is what every computation in
//! this crate uses.

pub mod catalog;
pub mod cli;
pub mod identities;
pub mod poly;
pub mod quiver;
pub mod series;

pub use num_bigint::BigInt;
pub use poly::format::{emit_json, emit_latex, emit_plain, parse_json, parse_poly, ParseError};
pub use poly::ratfunc::RationalFunction;
pub use poly::{Coefficient, Poly, PolyError, Var};

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;
/// Reduced quotient of two [`IntPoly`]s.
pub type RatFunc = RationalFunction<BigInt>;
