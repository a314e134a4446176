//! Rational functions with factored linear denominators.
//!
//! Every denominator arising in this crate is a product of linear forms
//! (`alpha`, `1 + alpha`, `1 - w alpha`, tangent weights), so cancellation
//! never needs a multivariate GCD: it reduces to exact division by linear
//! forms, attempted eagerly after every operation.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::cartan::Weight;

use super::{LinearForm, Poly};

#[derive(Debug, Error)]
#[error("rational function has a pole at alpha = 0")]
pub struct PoleAtZero;

/// `num / (scalar * prod_i factor_i^mult_i)` with `scalar > 0` and each
/// factor a primitive linear form. Equality is exact, decided by
/// cross-multiplication, never by floating point.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: Poly,
    den: BTreeMap<LinearForm, u32>,
    scalar: BigRational,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: Poly::zero(nvars),
            den: BTreeMap::new(),
            scalar: BigRational::one(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn from_poly(num: Poly) -> Self {
        let mut f = RatFunc {
            num,
            den: BTreeMap::new(),
            scalar: BigRational::one(),
        };
        f.normalize();
        f
    }

    pub fn from_rational(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn int_constant(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::int_constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    pub fn from_weight(w: &Weight) -> Self {
        Self::from_poly(Poly::from_weight(w))
    }

    /// Raw constructor for deserialization; normalizes.
    pub fn from_parts(num: Poly, den: BTreeMap<LinearForm, u32>, scalar: BigRational) -> Self {
        assert!(!scalar.is_zero(), "denominator scalar must be nonzero");
        let mut f = RatFunc { num, den, scalar };
        f.normalize();
        f
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn den_is_trivial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            self.scalar = BigRational::one();
            return;
        }
        let factors: Vec<LinearForm> = self.den.keys().cloned().collect();
        for f in factors {
            let fp = f.to_poly();
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                // A nonzero value at a point of the factor's zero set rules
                // out divisibility without running the division.
                if let Some(point) = hyperplane_point(&f) {
                    if !self.num.eval_at(&point).is_zero() {
                        break;
                    }
                }
                match self.num.div_exact(&fp) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        if self.scalar.is_negative() {
            self.num = -&self.num;
            self.scalar = -&self.scalar;
        }
    }

    /// The value as a polynomial, when the denominator fully cancels.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.den.is_empty() {
            Some(self.num.scale(&self.scalar.recip()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            scalar: self.scalar.clone(),
        };
        out.normalize();
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
            scalar: self.scalar.clone(),
        };
        out.normalize();
        out
    }

    /// Multiplies by a single linear form `c0 + coeffs . alpha`, cancelling
    /// against the denominator when possible.
    pub fn mul_linear(&self, c0: i64, coeffs: Vec<i64>) -> Self {
        let (scale, form) = LinearForm::normalized(c0, coeffs);
        let mut out = self.clone();
        out.num = out.num.scale(&scale);
        if let Some(m) = out.den.get_mut(&form) {
            *m -= 1;
            if *m == 0 {
                out.den.remove(&form);
            }
        } else {
            out.num = &out.num * &form.to_poly();
        }
        out.normalize();
        out
    }

    /// Divides by a single linear form.
    pub fn div_linear(&self, c0: i64, coeffs: Vec<i64>) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (scale, form) = LinearForm::normalized(c0, coeffs);
        let mut out = self.clone();
        out.scalar = &out.scalar * &scale;
        *out.den.entry(form).or_insert(0) += 1;
        out.normalize();
        out
    }

    pub fn div_weight(&self, w: &Weight) -> Self {
        self.div_linear(0, w.coords.clone())
    }

    pub fn mul_product(&self, p: &LinearProduct) -> Self {
        let mut out = self.clone();
        out.num = out.num.scale(&p.scalar);
        for (f, &m) in &p.factors {
            let cancelled = match out.den.get_mut(f) {
                Some(have) => {
                    let used = m.min(*have);
                    *have -= used;
                    if *have == 0 {
                        out.den.remove(f);
                    }
                    used
                }
                None => 0,
            };
            if m > cancelled {
                let fp = f.to_poly();
                for _ in 0..(m - cancelled) {
                    out.num = &out.num * &fp;
                }
            }
        }
        out.normalize();
        out
    }

    pub fn div_product(&self, p: &LinearProduct) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.scalar = &out.scalar * &p.scalar;
        for (f, &m) in &p.factors {
            *out.den.entry(f.clone()).or_insert(0) += m;
        }
        out.normalize();
        out
    }

    /// Adds many terms over one common denominator with a single
    /// normalization pass. Equivalent to folding `+`, but avoids the
    /// quadratic re-expansion of long accumulation chains.
    pub fn sum(nvars: usize, terms: impl IntoIterator<Item = RatFunc>) -> RatFunc {
        let terms: Vec<RatFunc> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => return RatFunc::zero(nvars),
            1 => return terms.into_iter().next().unwrap(),
            _ => {}
        }
        let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
        let mut scalar = BigRational::one();
        for term in &terms {
            assert_eq!(term.nvars(), nvars, "variable-count mismatch");
            for (f, &m) in &term.den {
                let slot = den.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(m);
            }
            if !term.scalar.is_one() {
                scalar = &scalar * &term.scalar;
            }
        }
        let mut num = Poly::zero(nvars);
        for term in &terms {
            let factor = if scalar == term.scalar {
                BigRational::one()
            } else {
                &scalar / &term.scalar
            };
            let mut part = term.num.scale(&factor);
            for (f, &m) in &den {
                let have = term.den.get(f).copied().unwrap_or(0);
                if m > have {
                    let fp = f.to_poly();
                    for _ in 0..(m - have) {
                        part = &part * &fp;
                    }
                }
            }
            num.add_assign(&part);
        }
        let mut out = RatFunc { num, den, scalar };
        out.normalize();
        out
    }

    /// Evaluates at `alpha = 0`; fails when a surviving denominator factor
    /// has no constant term.
    pub fn specialize_zero(&self) -> Result<BigRational, PoleAtZero> {
        let mut den_value = self.scalar.clone();
        for (f, &m) in &self.den {
            if f.constant() == 0 {
                return Err(PoleAtZero);
            }
            let c = BigRational::from_integer(f.constant().into());
            for _ in 0..m {
                den_value = &den_value * &c;
            }
        }
        Ok(self.num.eval_zero() / den_value)
    }

    /// The product of the denominator factors as an expanded polynomial
    /// (without the scalar).
    fn den_poly_excluding(&self, common: &BTreeMap<LinearForm, u32>) -> Poly {
        let mut p = Poly::one(self.nvars());
        for (f, &m) in &self.den {
            let shared = common.get(f).copied().unwrap_or(0);
            let fp = f.to_poly();
            for _ in 0..(m - shared.min(m)) {
                p = &p * &fp;
            }
        }
        p
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // Cross-multiplication over the non-shared factors.
        let mut common: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (f, &m) in &self.den {
            if let Some(&m2) = other.den.get(f) {
                common.insert(f.clone(), m.min(m2));
            }
        }
        let lhs = &self.num.scale(&other.scalar) * &other.den_poly_excluding(&common);
        let rhs = &other.num.scale(&self.scalar) * &self.den_poly_excluding(&common);
        lhs == rhs
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), rhs.nvars(), "variable-count mismatch");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut den: BTreeMap<LinearForm, u32> = self.den.clone();
        for (f, &m) in &rhs.den {
            let slot = den.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(m);
        }
        let mut lhs_num = self.num.scale(&rhs.scalar);
        let mut rhs_num = rhs.num.scale(&self.scalar);
        for (f, &m) in &den {
            let fp = f.to_poly();
            let have_l = self.den.get(f).copied().unwrap_or(0);
            for _ in 0..(m - have_l) {
                lhs_num = &lhs_num * &fp;
            }
            let have_r = rhs.den.get(f).copied().unwrap_or(0);
            for _ in 0..(m - have_r) {
                rhs_num = &rhs_num * &fp;
            }
        }
        let mut out = RatFunc {
            num: &lhs_num + &rhs_num,
            den,
            scalar: &self.scalar * &rhs.scalar,
        };
        out.normalize();
        out
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
            scalar: self.scalar.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        assert_eq!(self.nvars(), rhs.nvars(), "variable-count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, &m) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut out = RatFunc {
            num: &self.num * &rhs.num,
            den,
            scalar: &self.scalar * &rhs.scalar,
        };
        out.normalize();
        out
    }
}

/// A fixed rational point on the zero set of the form (`None` for constant
/// forms, which divide everything). Non-pivot coordinates take distinct
/// small values so that unrelated polynomials rarely vanish there.
fn hyperplane_point(form: &LinearForm) -> Option<Vec<BigRational>> {
    let coeffs = form.coeffs();
    let pivot = coeffs.iter().position(|&c| c != 0)?;
    let mut point: Vec<BigRational> = (0..coeffs.len())
        .map(|j| BigRational::from_integer(BigInt::from(j as i64 + 2)))
        .collect();
    let mut rhs = BigRational::from_integer(form.constant().into());
    for (j, &c) in coeffs.iter().enumerate() {
        if j != pivot && c != 0 {
            rhs = &rhs + &(&point[j] * &BigRational::from_integer(c.into()));
        }
    }
    point[pivot] = -&(&rhs / &BigRational::from_integer(coeffs[pivot].into()));
    Some(point)
}

/// A rational scalar times a product of linear-form powers, kept factored.
/// Used wherever a reciprocal must be formed exactly (Euler classes,
/// diagonal restrictions).
#[derive(Debug, Clone)]
pub struct LinearProduct {
    nvars: usize,
    scalar: BigRational,
    factors: BTreeMap<LinearForm, u32>,
}

impl LinearProduct {
    pub fn one(nvars: usize) -> Self {
        LinearProduct {
            nvars,
            scalar: BigRational::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mul_weight(&mut self, w: &Weight) {
        let (scale, form) = LinearForm::from_weight(w);
        self.scalar = &self.scalar * &scale;
        *self.factors.entry(form).or_insert(0) += 1;
    }

    /// Multiplies in `1 + lambda`.
    pub fn mul_one_plus(&mut self, w: &Weight) {
        let (scale, form) = LinearForm::one_plus(w);
        self.scalar = &self.scalar * &scale;
        *self.factors.entry(form).or_insert(0) += 1;
    }

    pub fn mul_scalar(&mut self, c: &BigRational) {
        assert!(!c.is_zero(), "linear product scalar must stay nonzero");
        self.scalar = &self.scalar * c;
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let mut num = Poly::constant(self.nvars, self.scalar.clone());
        for (f, &m) in &self.factors {
            let fp = f.to_poly();
            for _ in 0..m {
                num = &num * &fp;
            }
        }
        RatFunc::from_poly(num)
    }

    /// The exact reciprocal `1 / (scalar * prod factors)` as a rational
    /// function.
    pub fn inverse_ratfunc(&self) -> RatFunc {
        let mut out = RatFunc {
            num: Poly::one(self.nvars),
            den: self.factors.clone(),
            scalar: self.scalar.clone(),
        };
        out.normalize();
        out
    }
}
