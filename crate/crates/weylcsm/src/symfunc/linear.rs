//! Canonical linear forms `c_0 + c_1 a_1 + ... + c_n a_n`, the only shapes
//! allowed as denominator factors of a [`super::RatFunc`].

use std::cmp::Ordering;

use num::{BigInt, BigRational, One};

use crate::cartan::{colex, Weight};

use super::Poly;

/// A primitive integer linear form whose first nonzero coordinate (constant
/// first, then variable coefficients) is positive. Construction goes through
/// [`LinearForm::normalized`], which returns the scale factored out.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    constant: i64,
    coeffs: Vec<i64>,
}

impl LinearForm {
    /// Canonicalizes `constant + coeffs . alpha`, returning `(scale, form)`
    /// with `input = scale * form`, `scale` rational and the form primitive
    /// with positive leading coordinate. Panics for the zero form.
    pub fn normalized(constant: i64, coeffs: Vec<i64>) -> (BigRational, LinearForm) {
        let mut content: i64 = 0;
        for &c in std::iter::once(&constant).chain(&coeffs) {
            content = gcd(content, c.abs());
        }
        assert!(content != 0, "the zero linear form is not allowed");
        let sign = std::iter::once(constant)
            .chain(coeffs.iter().copied())
            .find(|&c| c != 0)
            .map(|c| if c > 0 { 1 } else { -1 })
            .unwrap();
        let scale = sign * content;
        let form = LinearForm {
            constant: constant / scale,
            coeffs: coeffs.iter().map(|c| c / scale).collect(),
        };
        (
            BigRational::from_integer(BigInt::from(scale)),
            form,
        )
    }

    /// The form given by a weight's coordinates (no constant term).
    pub fn from_weight(w: &Weight) -> (BigRational, LinearForm) {
        Self::normalized(0, w.coords.clone())
    }

    /// `1 + lambda` as a linear form (used as `1 - w alpha` via negation of
    /// the weight before the call).
    pub fn one_plus(w: &Weight) -> (BigRational, LinearForm) {
        Self::normalized(1, w.coords.clone())
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_poly(&self) -> Poly {
        let nvars = self.coeffs.len();
        let mut p = Poly::int_constant(nvars, self.constant);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                p = &p + &Poly::var(nvars, j + 1).scale(&BigRational::from_integer(BigInt::from(c)));
            }
        }
        p
    }

    /// Applies the linear substitution `alpha_j -> sum_k M[k][j] alpha_k`
    /// (row-major `rank x rank` matrix) and re-canonicalizes.
    pub fn transform(&self, matrix: &[i64], rank: usize) -> (BigRational, LinearForm) {
        assert_eq!(self.coeffs.len(), rank, "linear form rank mismatch");
        let mut coeffs = vec![0i64; rank];
        for k in 0..rank {
            for j in 0..rank {
                coeffs[k] += matrix[k * rank + j] * self.coeffs[j];
            }
        }
        Self::normalized(self.constant, coeffs)
    }

    /// The substitution `alpha -> -alpha`.
    pub fn negate_vars(&self) -> (BigRational, LinearForm) {
        Self::normalized(self.constant, self.coeffs.iter().map(|c| -c).collect())
    }

    /// Identity: returns 1 as the scale. Convenience for call sites that
    /// treat an untouched factor uniformly with transformed ones.
    pub fn unchanged(&self) -> (BigRational, LinearForm) {
        (BigRational::one(), self.clone())
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearForm {
    /// Variable parts compare by reversed-coordinate lexicographic order
    /// (the positive-root order), then constants; so `a1 < a2 < a1+a2` and
    /// `a1 < 1+a1`.
    fn cmp(&self, other: &Self) -> Ordering {
        colex(&self.coeffs, &other.coeffs).then(self.constant.cmp(&other.constant))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let (scale, form) = LinearForm::normalized(0, vec![-2, -4]);
        assert_eq!(scale, BigRational::from_integer(BigInt::from(-2)));
        assert_eq!(form.coeffs(), &[1, 2]);

        let (scale, form) = LinearForm::normalized(1, vec![1, 1]);
        assert!(scale.is_one());
        assert_eq!(form.constant(), 1);
        assert_eq!(form.coeffs(), &[1, 1]);
    }

    #[test]
    fn ordering_matches_positive_root_order() {
        let f = |c0: i64, coeffs: &[i64]| LinearForm::normalized(c0, coeffs.to_vec()).1;
        let one_a1 = f(1, &[1, 0]);
        let one_a2 = f(1, &[0, 1]);
        let one_a12 = f(1, &[1, 1]);
        let a1 = f(0, &[1, 0]);
        assert!(one_a1 < one_a2);
        assert!(one_a2 < one_a12);
        assert!(a1 < one_a1);
    }

    #[test]
    #[should_panic(expected = "zero linear form")]
    fn zero_form_panics() {
        let _ = LinearForm::normalized(0, vec![0, 0]);
    }
}
