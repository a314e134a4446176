//! Exact arithmetic in `H_T^*(pt)` (polynomials in the simple roots) and its
//! fraction field, plus the operator calculus acting on it.

mod linear;
mod ops;
mod poly;
mod ratfunc;

pub use linear::LinearForm;
pub use ops::{
    apply_atom, apply_operator_word, divided_difference, minus_one, phi, reflect, tvee, weyl_act,
    OperatorAtom, OperatorWord,
};
pub use poly::Poly;
pub use ratfunc::{LinearProduct, PoleAtZero, RatFunc};
