//! The operator calculus on `Frac H_T^*(pt)`: Weyl substitutions, divided
//! differences, their involutive sums, the sign automorphism, and words of
//! such operators.

use num::BigRational;

use crate::cartan::{CartanDatum, Weight};
use crate::weyl::WeylElement;

use super::{Poly, RatFunc};

/// Substitutes `alpha_j -> w(alpha_j)` in numerator and denominator factors.
/// This is a left group action: `weyl_act(u*v, f) = weyl_act(u, weyl_act(v, f))`.
pub fn weyl_act(w: &WeylElement, f: &RatFunc) -> RatFunc {
    let rank = w.rank();
    assert_eq!(f.nvars(), rank, "rational function rank mismatch");
    substitute(f, w.matrix(), rank)
}

/// The action of the simple reflection `s_i`.
pub fn reflect(datum: &CartanDatum, i: usize, f: &RatFunc) -> RatFunc {
    let rank = datum.rank();
    assert_eq!(f.nvars(), rank, "rational function rank mismatch");
    let mut matrix = vec![0i64; rank * rank];
    for j in 0..rank {
        let image = datum.simple_reflection_on_weight(i, &Weight::simple(rank, j + 1));
        for k in 0..rank {
            matrix[k * rank + j] = image.coords[k];
        }
    }
    substitute(f, &matrix, rank)
}

fn substitute(f: &RatFunc, matrix: &[i64], rank: usize) -> RatFunc {
    let images: Vec<Poly> = (0..rank)
        .map(|j| {
            let coords: Vec<i64> = (0..rank).map(|k| matrix[k * rank + j]).collect();
            Poly::from_weight(&Weight { coords })
        })
        .collect();
    let num = f.num().substitute(&images);
    let mut out = RatFunc::from_poly(num);
    let mut scalar = f.scalar().clone();
    let mut den = std::collections::BTreeMap::new();
    for (factor, mult) in f.den_factors() {
        let (scale, form) = factor.transform(matrix, rank);
        for _ in 0..mult {
            scalar = &scalar * &scale;
        }
        *den.entry(form).or_insert(0u32) += mult;
    }
    out = RatFunc::from_parts(out.num().clone(), den, scalar);
    out
}

/// `(f - s_i f) / alpha_i`. On polynomials the quotient is exact; on general
/// rational functions the `alpha_i` factor may survive in the denominator.
pub fn divided_difference(datum: &CartanDatum, i: usize, f: &RatFunc) -> RatFunc {
    let diff = f - &reflect(datum, i, f);
    diff.div_weight(&Weight::simple(datum.rank(), i))
}

/// `divided_difference + reflection`, an involution on rational functions.
pub fn tvee(datum: &CartanDatum, i: usize, f: &RatFunc) -> RatFunc {
    &divided_difference(datum, i, f) + &reflect(datum, i, f)
}

/// The algebra automorphism `alpha -> -alpha`: multiplies each homogeneous
/// degree-k piece by `(-1)^k`. An involution.
pub fn phi(f: &RatFunc) -> RatFunc {
    let num = f.num().alternate_signs();
    let mut scalar = f.scalar().clone();
    let mut den = std::collections::BTreeMap::new();
    for (factor, mult) in f.den_factors() {
        let (scale, form) = factor.negate_vars();
        for _ in 0..mult {
            scalar = &scalar * &scale;
        }
        *den.entry(form).or_insert(0u32) += mult;
    }
    RatFunc::from_parts(num, den, scalar)
}

/// One factor of an operator word.
#[derive(Debug, Clone)]
pub enum OperatorAtom {
    /// Multiplication by a fixed rational function.
    Scalar(RatFunc),
    /// The simple reflection `s_i`.
    Reflect(usize),
    /// The divided difference for `alpha_i`.
    DivDiff(usize),
    /// The involution `divided_difference + reflection` for `alpha_i`.
    Tvee(usize),
}

/// A product of operator atoms in written order: the rightmost atom acts
/// first when the word is applied.
#[derive(Debug, Clone, Default)]
pub struct OperatorWord {
    atoms: Vec<OperatorAtom>,
}

impl OperatorWord {
    pub fn new(atoms: Vec<OperatorAtom>) -> Self {
        OperatorWord { atoms }
    }

    pub fn push(&mut self, atom: OperatorAtom) {
        self.atoms.push(atom);
    }

    pub fn atoms(&self) -> &[OperatorAtom] {
        &self.atoms
    }

    pub fn apply(&self, datum: &CartanDatum, f: &RatFunc) -> RatFunc {
        let mut value = f.clone();
        for atom in self.atoms.iter().rev() {
            value = apply_atom(datum, atom, &value);
        }
        value
    }
}

pub fn apply_atom(datum: &CartanDatum, atom: &OperatorAtom, f: &RatFunc) -> RatFunc {
    match atom {
        OperatorAtom::Scalar(c) => c * f,
        OperatorAtom::Reflect(i) => reflect(datum, *i, f),
        OperatorAtom::DivDiff(i) => divided_difference(datum, *i, f),
        OperatorAtom::Tvee(i) => tvee(datum, *i, f),
    }
}

/// Applies an operator word to the constant function 1.
pub fn apply_operator_word(datum: &CartanDatum, word: &OperatorWord, f: &RatFunc) -> RatFunc {
    word.apply(datum, f)
}

/// `neg_scalar` helper: the constant -1 in the right number of variables.
pub fn minus_one(nvars: usize) -> RatFunc {
    RatFunc::from_rational(nvars, -BigRational::from_integer(1.into()))
}
