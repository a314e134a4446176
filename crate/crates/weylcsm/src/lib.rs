//! Exact symbolic computation of equivariant structure constants for the
//! Chern-Schwartz-MacPherson (CSM), Segre-Schwartz-MacPherson (SSM) and
//! stable-basis classes of Schubert cells in flag varieties `G/B` and `G/P`,
//! for any finite crystallographic root system.
//!
//! Everything is computed in exact rational arithmetic: polynomials in the
//! simple roots with arbitrary-precision rational coefficients, and rational
//! functions whose denominators are kept as factored products of linear
//! forms. Each closed formula is cross-checked against an independent
//! fixed-point localization oracle; see the `verify` module.
//!
//! Module layout:
//! - [`cartan`]: root-system data (Cartan matrix, positive roots, reflections)
//! - [`weyl`]: Weyl group combinatorics (words, Bruhat order, subwords, cosets)
//! - [`symfunc`]: exact polynomial/rational-function arithmetic and the
//!   operator calculus (reflections, divided differences, their sums)
//! - [`flagloc`]: localization model of `H_T^*(G/B)` and `H_T^*(G/P)`,
//!   CSM/SSM classes, Hecke operators, pairing, basis expansion
//! - [`bott_samelson`]: subword fixed-point combinatorics on Bott-Samelson
//!   varieties, dual-class restrictions and their structure constants
//! - [`constants`]: the top-level structure constants c/d/e and parabolic sums
//! - [`jsonio`] / [`latex`]: exact serialization and pretty-printing
//! - [`verify`]: seeded, exact verification suites used by the CLI and the
//!   acceptance tests

pub mod bott_samelson;
pub mod cartan;
pub mod constants;
pub mod flagloc;
pub mod jsonio;
pub mod latex;
pub mod symfunc;
pub mod verify;
pub mod weyl;

pub use cartan::{CartanDatum, CartanError, Weight};
pub use symfunc::{LinearForm, OperatorAtom, OperatorWord, Poly, RatFunc};
pub use weyl::{Word, WordParseError, WeylElement, WeylGroup};
