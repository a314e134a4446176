//! Sparse multivariate polynomials with exact rational coefficients over the
//! simple-root variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::cartan::Weight;

/// A polynomial in `nvars` variables, stored as a sparse map from exponent
/// vectors to nonzero rational coefficients. The zero polynomial is the
/// empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn int_constant(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `alpha_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index {i} out of range 1..={nvars}");
        let mut exp = vec![0u16; nvars];
        exp[i - 1] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exp, BigRational::one());
        p
    }

    /// The linear polynomial with the weight's coordinates as coefficients.
    pub fn from_weight(w: &Weight) -> Self {
        let nvars = w.rank();
        let mut p = Self::zero(nvars);
        for (j, &c) in w.coords.iter().enumerate() {
            if c != 0 {
                let mut exp = vec![0u16; nvars];
                exp[j] = 1;
                p.terms.insert(exp, BigRational::from_integer(BigInt::from(c)));
            }
        }
        p
    }

    /// Builds a polynomial from raw terms (exponent vectors of length
    /// `nvars`); duplicate exponents accumulate.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, coeff) in terms {
            assert_eq!(exp.len(), nvars, "exponent vector length mismatch");
            p.add_term(exp, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn is_homogeneous_of_degree(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == d)
    }

    /// The coefficient of the constant monomial; this is the value at 0.
    pub fn eval_zero(&self) -> BigRational {
        self.terms
            .get(&vec![0u16; self.nvars])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Evaluates at a rational point.
    pub fn eval_at(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "evaluation point length mismatch");
        let mut total = BigRational::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (j, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &point[j];
                }
            }
            total = &total + &term;
        }
        total
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn add_term(&mut self, exp: Vec<u16>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial variable-count mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// Substitutes each variable by the given polynomial (all images must
    /// share a variable count, which becomes the output's).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "substitution image count mismatch");
        let out_vars = images.first().map_or(self.nvars, Poly::nvars);
        let mut out = Poly::zero(out_vars);
        for (exp, coeff) in &self.terms {
            let mut term = Poly::constant(out_vars, coeff.clone());
            for (j, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[j];
                }
            }
            out.add_assign(&term);
        }
        out
    }

    /// Negates every odd-degree monomial (the substitution `alpha -> -alpha`).
    pub fn alternate_signs(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let deg: usize = e.iter().map(|&x| x as usize).sum();
                    let c = if deg % 2 == 1 { -c } else { c.clone() };
                    (e.clone(), c)
                })
                .collect(),
        }
    }

    /// Exact division; returns `None` when `self` is not a polynomial
    /// multiple of `divisor`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars, "polynomial variable-count mismatch");
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dexp, dcoeff) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (rexp, rcoeff) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (e.clone(), c.clone())
            };
            let mut qexp = vec![0u16; self.nvars];
            for j in 0..self.nvars {
                if rexp[j] < dexp[j] {
                    return None;
                }
                qexp[j] = rexp[j] - dexp[j];
            }
            let qcoeff = &rcoeff / dcoeff;
            let mut qterm = Poly::zero(self.nvars);
            qterm.terms.insert(qexp.clone(), qcoeff.clone());
            rem.add_assign(&(&qterm * divisor).neg());
            quot.add_term(qexp, qcoeff);
        }
        Some(quot)
    }

    /// Rewrites the polynomial in `nvars + 1` variables, multiplying each
    /// monomial of degree `k` by the new last variable to the power
    /// `total - k`. Returns `None` if some monomial exceeds `total`.
    pub fn homogenize(&self, total: usize) -> Option<Poly> {
        let mut out = Poly::zero(self.nvars + 1);
        for (exp, coeff) in &self.terms {
            let deg: usize = exp.iter().map(|&x| x as usize).sum();
            if deg > total {
                return None;
            }
            let mut e = exp.clone();
            e.push((total - deg) as u16);
            out.terms.insert(e, coeff.clone());
        }
        Some(out)
    }

    /// Sets the last variable to 1 and drops it.
    pub fn dehomogenize_last(&self) -> Poly {
        assert!(self.nvars >= 1);
        let mut out = Poly::zero(self.nvars - 1);
        for (exp, coeff) in &self.terms {
            out.add_term(exp[..self.nvars - 1].to_vec(), coeff.clone());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(&rhs.neg());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable-count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn arithmetic_basics() {
        let p = &(&a(1) + &a(2)) * &(&a(1) - &a(2));
        let q = &(&a(1) * &a(1)) - &(&a(2) * &a(2));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous_of_degree(2));
    }

    #[test]
    fn exact_division() {
        let p = &(&a(1) + &a(2)) * &(&a(1) + &(&a(2) + &Poly::one(2)));
        let q = p.div_exact(&(&a(1) + &a(2))).unwrap();
        assert_eq!(q, &a(1) + &(&a(2) + &Poly::one(2)));
        assert!(p.div_exact(&a(1)).is_none());
        assert!(Poly::zero(2).div_exact(&a(1)).unwrap().is_zero());
    }

    #[test]
    fn substitution_and_signs() {
        // alpha1 -> alpha1 + alpha2, alpha2 -> -alpha1
        let images = vec![&a(1) + &a(2), (&a(1)).neg()];
        let p = &a(1) * &a(2);
        assert_eq!(
            p.substitute(&images),
            &(&a(1) + &a(2)) * &(&a(1)).neg()
        );
        let mixed = &a(1) + &Poly::int_constant(2, 5);
        assert_eq!(
            mixed.alternate_signs(),
            &Poly::int_constant(2, 5) - &a(1)
        );
    }

    #[test]
    fn homogenization() {
        let p = &Poly::one(1) - &Poly::var(1, 1); // 1 - alpha
        let h = p.homogenize(1).unwrap();
        assert!(h.is_homogeneous_of_degree(1));
        assert_eq!(h.dehomogenize_last(), p);
        assert!(p.homogenize(0).is_none());
    }
}
