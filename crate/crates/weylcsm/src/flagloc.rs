//! Localization model of `H_T^*(G/B)` and `H_T^*(G/P)`.
//!
//! A class is the vector of its restrictions at the torus fixed points
//! (Weyl group elements for `G/B`, minimal coset representatives for `G/P`).
//! Cup products are pointwise, integrals are weighted fixed-point sums, and
//! the triangular expansion in the SSM (or CSM) basis acts as the
//! independent oracle against which the closed formulas are checked.
//!
//! Sign conventions, validated end to end by the duality suite: tangent
//! weights at `w` are `{-w alpha : alpha > 0}`, the right Weyl action is
//! `(s_i g)|_w = g|_{w s_i}`, and the divided difference is
//! `(d_i g)|_w = (g|_w - g|_{w s_i}) / (-w alpha_i)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::cartan::Weight;
use crate::symfunc::{LinearProduct, Poly, RatFunc};
use crate::weyl::{subwords_with_product, WeylElement, WeylGroup, Word};

#[derive(Debug, Error)]
pub enum FlagError {
    #[error("element `{word}` is not a minimal coset representative")]
    NotMinimal { word: String },
    #[error("basis expansion left a nonzero residue at fixed point `{at}`")]
    NonVanishingResidue { at: String },
}

/// Identifies the space a localized class lives on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceTag {
    /// `G/B`; restrictions indexed by group order.
    Flag,
    /// `G/P`; restrictions indexed by the minimal representatives of the
    /// listed parabolic, in group order.
    Partial(BTreeSet<usize>),
}

/// A cohomology class given by its fixed-point restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedClass {
    space: SpaceTag,
    values: Vec<RatFunc>,
}

impl LocalizedClass {
    pub fn zero(space: SpaceTag, points: usize, nvars: usize) -> Self {
        LocalizedClass {
            space,
            values: vec![RatFunc::zero(nvars); points],
        }
    }

    pub fn from_values(space: SpaceTag, values: Vec<RatFunc>) -> Self {
        LocalizedClass { space, values }
    }

    pub fn space(&self) -> &SpaceTag {
        &self.space
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    pub fn restriction(&self, point: usize) -> &RatFunc {
        &self.values[point]
    }

    pub fn set_restriction(&mut self, point: usize, value: RatFunc) {
        self.values[point] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, other: &LocalizedClass) -> LocalizedClass {
        assert_eq!(self.space, other.space, "classes live on different spaces");
        LocalizedClass {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LocalizedClass) -> LocalizedClass {
        assert_eq!(self.space, other.space, "classes live on different spaces");
        LocalizedClass {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Multiplication by a global rational-function coefficient.
    pub fn scale(&self, c: &RatFunc) -> LocalizedClass {
        LocalizedClass {
            space: self.space.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The cup product in the localization model.
    pub fn mul_pointwise(&self, other: &LocalizedClass) -> LocalizedClass {
        assert_eq!(self.space, other.space, "classes live on different spaces");
        LocalizedClass {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// The complete flag variety `G/B` with memoized SSM/CSM class vectors.
#[derive(Debug)]
pub struct FlagVariety {
    group: Arc<WeylGroup>,
    ssm_cache: RwLock<HashMap<usize, Arc<LocalizedClass>>>,
    csm_cache: RwLock<HashMap<usize, Arc<LocalizedClass>>>,
}

impl FlagVariety {
    pub fn new(group: Arc<WeylGroup>) -> Self {
        FlagVariety {
            group,
            ssm_cache: RwLock::new(HashMap::new()),
            csm_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    fn rank(&self) -> usize {
        self.group.datum().rank()
    }

    /// Product of the tangent weights `{-w alpha : alpha > 0}` at `w`.
    pub fn euler_product(&self, w: &WeylElement) -> LinearProduct {
        let mut prod = LinearProduct::one(self.rank());
        for root in self.group.datum().positive_roots() {
            prod.mul_weight(&-&w.apply(root));
        }
        prod
    }

    pub fn euler_class(&self, w: &WeylElement) -> RatFunc {
        self.euler_product(w).to_ratfunc()
    }

    /// `prod_{alpha > 0} (1 - w alpha)`, the restriction of the total Chern
    /// class of the tangent bundle.
    pub fn chern_tangent_product(&self, w: &WeylElement) -> LinearProduct {
        let mut prod = LinearProduct::one(self.rank());
        for root in self.group.datum().positive_roots() {
            prod.mul_one_plus(&-&w.apply(root));
        }
        prod
    }

    pub fn chern_tangent_restriction(&self, w: &WeylElement) -> RatFunc {
        self.chern_tangent_product(w).to_ratfunc()
    }

    /// Localization of the CSM class of the opposite cell through a chosen
    /// reduced word of `w`. The public entry point picks the deterministic
    /// reduced word; the result does not depend on the choice.
    pub fn csm_y_restriction_with_word(&self, u: &WeylElement, word: &Word) -> RatFunc {
        let rank = self.rank();
        let datum = self.group.datum().clone();
        let w = word.product(datum.clone());
        let mut prefactor = LinearProduct::one(rank);
        for root in self.group.datum().positive_roots() {
            let image = w.apply(root);
            if image.is_positive() {
                prefactor.mul_one_plus(&-&image);
            }
        }
        // prefix_elems[k] = product of the first k letters of the word
        let mut prefix_elems = Vec::with_capacity(word.len() + 1);
        prefix_elems.push(WeylElement::identity(datum.clone()));
        for &i in word.letters() {
            prefix_elems.push(prefix_elems.last().unwrap().mul_simple_right(i));
        }
        let mut sum = Poly::zero(rank);
        for mask in subwords_with_product(word, u) {
            let mut term = LinearProduct::one(rank);
            for k in 0..word.len() {
                if mask & (1 << k) != 0 {
                    term.mul_weight(&prefix_elems[k].apply(&word.root_at(rank, k)));
                }
            }
            sum.add_assign(term.to_ratfunc().num());
        }
        RatFunc::from_poly(sum).mul_product(&prefactor)
    }

    pub fn csm_y_restriction(&self, u: &WeylElement, w: &WeylElement) -> RatFunc {
        self.csm_y_restriction_with_word(u, &w.reduced_word())
    }

    /// The SSM class of the opposite Schubert cell through `u`.
    pub fn ssm_y(&self, u_id: usize) -> Arc<LocalizedClass> {
        if let Some(class) = self.ssm_cache.read().unwrap().get(&u_id) {
            return class.clone();
        }
        let u = self.group.element(u_id).clone();
        let values = self
            .group
            .elements()
            .iter()
            .map(|w| {
                self.csm_y_restriction(&u, w)
                    .div_product(&self.chern_tangent_product(w))
            })
            .collect();
        let class = Arc::new(LocalizedClass {
            space: SpaceTag::Flag,
            values,
        });
        self.ssm_cache
            .write()
            .unwrap()
            .entry(u_id)
            .or_insert(class)
            .clone()
    }

    /// The CSM class of the opposite Schubert cell through `u`.
    pub fn csm_y(&self, u_id: usize) -> Arc<LocalizedClass> {
        if let Some(class) = self.csm_cache.read().unwrap().get(&u_id) {
            return class.clone();
        }
        let u = self.group.element(u_id).clone();
        let values = self
            .group
            .elements()
            .iter()
            .map(|w| self.csm_y_restriction(&u, w))
            .collect();
        let class = Arc::new(LocalizedClass {
            space: SpaceTag::Flag,
            values,
        });
        self.csm_cache
            .write()
            .unwrap()
            .entry(u_id)
            .or_insert(class)
            .clone()
    }

    /// The point class supported at the identity fixed point.
    pub fn point_class(&self) -> LocalizedClass {
        let mut class = LocalizedClass::zero(SpaceTag::Flag, self.group.len(), self.rank());
        let id = self.group.identity_id();
        class.values[id] = self.euler_class(self.group.element(id));
        class
    }

    /// Right Weyl action: `(s_i g)|_w = g|_{w s_i}`.
    pub fn hecke_reflect(&self, i: usize, g: &LocalizedClass) -> LocalizedClass {
        assert_eq!(g.space, SpaceTag::Flag, "Hecke operators act on G/B classes");
        let values = (0..self.group.len())
            .map(|id| g.values[self.group.right_mul(id, i)].clone())
            .collect();
        LocalizedClass {
            space: SpaceTag::Flag,
            values,
        }
    }

    /// Divided difference: `(d_i g)|_w = (g|_w - g|_{w s_i}) / (-w alpha_i)`.
    pub fn hecke_divdiff(&self, i: usize, g: &LocalizedClass) -> LocalizedClass {
        assert_eq!(g.space, SpaceTag::Flag, "Hecke operators act on G/B classes");
        let alpha_i = Weight::simple(self.rank(), i);
        let values = (0..self.group.len())
            .map(|id| {
                let other = self.group.right_mul(id, i);
                let diff = &g.values[id] - &g.values[other];
                diff.div_weight(&-&self.group.element(id).apply(&alpha_i))
            })
            .collect();
        LocalizedClass {
            space: SpaceTag::Flag,
            values,
        }
    }

    /// The Hecke involution `d_i - s_i`.
    pub fn hecke_t(&self, i: usize, g: &LocalizedClass) -> LocalizedClass {
        self.hecke_divdiff(i, g).sub(&self.hecke_reflect(i, g))
    }

    /// The adjoint Hecke involution `d_i + s_i`.
    pub fn hecke_tvee(&self, i: usize, g: &LocalizedClass) -> LocalizedClass {
        self.hecke_divdiff(i, g).add(&self.hecke_reflect(i, g))
    }

    /// CSM class of the Schubert cell through `w`: the Hecke fold of the
    /// point class along a reduced word of `w`, first letter first.
    pub fn csm_x(&self, w: &WeylElement) -> LocalizedClass {
        let mut class = self.point_class();
        for &i in w.reduced_word().letters() {
            class = self.hecke_t(i, &class);
        }
        class
    }

    /// The Poincare pairing by fixed-point localization.
    pub fn pairing(&self, g1: &LocalizedClass, g2: &LocalizedClass) -> RatFunc {
        assert_eq!(g1.space, SpaceTag::Flag, "use PartialFlag::pairing on G/P");
        assert_eq!(g1.space, g2.space, "classes live on different spaces");
        let mut terms = Vec::new();
        for (id, w) in self.group.elements().iter().enumerate() {
            if g1.values[id].is_zero() || g2.values[id].is_zero() {
                continue;
            }
            terms.push((&g1.values[id] * &g2.values[id]).div_product(&self.euler_product(w)));
        }
        RatFunc::sum(self.rank(), terms)
    }

    /// Exact reciprocal of `ssm_y(w)|_w`, built from the closed form
    /// `prod_{alpha>0, w alpha<0} (1 - w alpha) / (-w alpha)`.
    pub(crate) fn ssm_diag_inverse(&self, w_id: usize) -> RatFunc {
        let w = self.group.element(w_id);
        let rank = self.rank();
        let mut num = LinearProduct::one(rank);
        let mut den = LinearProduct::one(rank);
        for root in self.group.datum().positive_roots() {
            let image = w.apply(root);
            if image.is_negative() {
                num.mul_one_plus(&-&image);
                den.mul_weight(&-&image);
            }
        }
        num.to_ratfunc().div_product(&den)
    }

    /// Exact reciprocal of `csm_y(w)|_w`.
    fn csm_diag_inverse(&self, w_id: usize) -> RatFunc {
        let w = self.group.element(w_id);
        let rank = self.rank();
        let mut den = LinearProduct::one(rank);
        for root in self.group.datum().positive_roots() {
            let image = w.apply(root);
            if image.is_negative() {
                den.mul_weight(&-&image);
            } else {
                den.mul_one_plus(&-&image);
            }
        }
        den.inverse_ratfunc()
    }

    /// Expands a class in the SSM basis by triangular elimination. Classes
    /// built from opposite cells restrict to zero below their label, so a
    /// single sweep in increasing length-then-lex order (a linear extension
    /// of Bruhat order) extracts each coefficient.
    pub fn expand_in_ssm_basis(
        &self,
        g: &LocalizedClass,
    ) -> Result<BTreeMap<usize, RatFunc>, FlagError> {
        self.expand_triangular(g, |id| self.ssm_y(id), |id| self.ssm_diag_inverse(id))
    }

    /// Expands a class in the CSM basis of the opposite cells.
    pub fn expand_in_csm_basis(
        &self,
        g: &LocalizedClass,
    ) -> Result<BTreeMap<usize, RatFunc>, FlagError> {
        self.expand_triangular(g, |id| self.csm_y(id), |id| self.csm_diag_inverse(id))
    }

    fn expand_triangular(
        &self,
        g: &LocalizedClass,
        basis: impl Fn(usize) -> Arc<LocalizedClass>,
        diag_inverse: impl Fn(usize) -> RatFunc,
    ) -> Result<BTreeMap<usize, RatFunc>, FlagError> {
        assert_eq!(g.space, SpaceTag::Flag, "expected a G/B class");
        let mut residue = g.clone();
        let mut coeffs = BTreeMap::new();
        for id in 0..self.group.len() {
            if residue.values[id].is_zero() {
                continue;
            }
            let c = &residue.values[id] * &diag_inverse(id);
            residue = residue.sub(&basis(id).scale(&c));
            debug_assert!(residue.values[id].is_zero());
            coeffs.insert(id, c);
        }
        if let Some(bad) = residue.values.iter().position(|v| !v.is_zero()) {
            return Err(FlagError::NonVanishingResidue {
                at: self.group.element(bad).reduced_word().to_string(),
            });
        }
        Ok(coeffs)
    }
}

/// A partial flag variety `G/P`, built on top of the `G/B` model.
#[derive(Debug)]
pub struct PartialFlag<'a> {
    flag: &'a FlagVariety,
    parabolic: BTreeSet<usize>,
    /// Minimal representatives, in group order.
    reps: Vec<usize>,
    /// Elements of `W_P`, in group order.
    levi: Vec<usize>,
    /// Positive roots outside the span of the parabolic simple roots.
    complement_roots: Vec<Weight>,
}

impl<'a> PartialFlag<'a> {
    pub fn new(flag: &'a FlagVariety, parabolic: BTreeSet<usize>) -> Self {
        let group = flag.group();
        let rank = group.datum().rank();
        assert!(
            parabolic.iter().all(|&i| i >= 1 && i <= rank),
            "parabolic indices out of range"
        );
        let reps = group.minimal_representatives(&parabolic);
        let levi = group.parabolic_elements(&parabolic);
        let complement_roots = group
            .datum()
            .positive_roots()
            .iter()
            .filter(|root| {
                root.coords
                    .iter()
                    .enumerate()
                    .any(|(j, &c)| c != 0 && !parabolic.contains(&(j + 1)))
            })
            .cloned()
            .collect();
        PartialFlag {
            flag,
            parabolic,
            reps,
            levi,
            complement_roots,
        }
    }

    pub fn parabolic(&self) -> &BTreeSet<usize> {
        &self.parabolic
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn space(&self) -> SpaceTag {
        SpaceTag::Partial(self.parabolic.clone())
    }

    pub fn rep_position(&self, w_id: usize) -> Option<usize> {
        self.reps.iter().position(|&id| id == w_id)
    }

    /// Restriction of the pulled-back SSM class at an arbitrary lift: the sum
    /// of `ssm_y(w x)|_lift` over `x` in `W_P`. Well-definedness across lifts
    /// of the same coset is a tested invariant, not an assumption.
    pub fn ssm_yp_restriction_at_lift(&self, w_id: usize, lift_id: usize) -> RatFunc {
        let group = self.flag.group();
        let mut sum = RatFunc::zero(group.datum().rank());
        let w = group.element(w_id);
        for &x_id in &self.levi {
            let wx = w.multiply(group.element(x_id));
            let wx_id = group.index_of(&wx).expect("product stays in the group");
            sum = &sum + self.flag.ssm_y(wx_id).restriction(lift_id);
        }
        sum
    }

    /// The SSM class of the opposite cell through the minimal representative
    /// `w`, as a class on `G/P`.
    pub fn ssm_yp(&self, w_id: usize) -> Result<LocalizedClass, FlagError> {
        let group = self.flag.group();
        if self.rep_position(w_id).is_none() {
            return Err(FlagError::NotMinimal {
                word: group.element(w_id).reduced_word().to_string(),
            });
        }
        let values = self
            .reps
            .iter()
            .map(|&u_id| self.ssm_yp_restriction_at_lift(w_id, u_id))
            .collect();
        Ok(LocalizedClass {
            space: self.space(),
            values,
        })
    }

    fn euler_product(&self, rep_pos: usize) -> LinearProduct {
        let group = self.flag.group();
        let u = group.element(self.reps[rep_pos]);
        let mut prod = LinearProduct::one(group.datum().rank());
        for root in &self.complement_roots {
            prod.mul_weight(&-&u.apply(root));
        }
        prod
    }

    /// Localization pairing with tangent weights from the roots outside the
    /// parabolic subsystem.
    pub fn pairing(&self, g1: &LocalizedClass, g2: &LocalizedClass) -> RatFunc {
        assert_eq!(g1.space, self.space(), "class does not live on this G/P");
        assert_eq!(g1.space, g2.space, "classes live on different spaces");
        let rank = self.flag.group().datum().rank();
        let mut terms = Vec::new();
        for pos in 0..self.reps.len() {
            if g1.values[pos].is_zero() || g2.values[pos].is_zero() {
                continue;
            }
            terms.push((&g1.values[pos] * &g2.values[pos]).div_product(&self.euler_product(pos)));
        }
        RatFunc::sum(rank, terms)
    }

    /// Triangular expansion in the `ssm_yp` basis; coefficients are keyed by
    /// group element id of the minimal representative.
    pub fn expand_in_ssm_basis(
        &self,
        g: &LocalizedClass,
    ) -> Result<BTreeMap<usize, RatFunc>, FlagError> {
        assert_eq!(g.space, self.space(), "class does not live on this G/P");
        let group = self.flag.group();
        let mut residue = g.clone();
        let mut coeffs = BTreeMap::new();
        for pos in 0..self.reps.len() {
            if residue.values[pos].is_zero() {
                continue;
            }
            let w_id = self.reps[pos];
            // Only x = id survives in the diagonal restriction: w x <= w with
            // w minimal forces x = id, so the G/B closed form applies.
            let c = &residue.values[pos] * &self.flag.ssm_diag_inverse(w_id);
            let basis = self.ssm_yp(w_id).expect("reps are minimal");
            residue = residue.sub(&basis.scale(&c));
            debug_assert!(residue.values[pos].is_zero());
            coeffs.insert(w_id, c);
        }
        if let Some(bad) = residue.values.iter().position(|v| !v.is_zero()) {
            return Err(FlagError::NonVanishingResidue {
                at: group.element(self.reps[bad]).reduced_word().to_string(),
            });
        }
        Ok(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use num::{BigRational, One};

    fn flag(label: &str) -> FlagVariety {
        let datum = Arc::new(CartanDatum::of_type(label).unwrap());
        FlagVariety::new(Arc::new(WeylGroup::enumerate(datum).unwrap()))
    }

    fn by_word(flag: &FlagVariety, word: &str) -> usize {
        let datum = flag.group().datum().clone();
        let w = Word::parse(word, datum.rank()).unwrap().product(datum);
        flag.group().index_of(&w).unwrap()
    }

    #[test]
    fn euler_and_chern_examples() {
        let a1 = flag("A1");
        let id = a1.group().element(0).clone();
        let s1 = a1.group().element(1).clone();
        assert_eq!(a1.euler_class(&id), -&RatFunc::var(1, 1));
        assert_eq!(a1.euler_class(&s1), RatFunc::var(1, 1));
        assert_eq!(
            a1.chern_tangent_restriction(&id),
            &RatFunc::one(1) - &RatFunc::var(1, 1)
        );
        assert_eq!(
            a1.chern_tangent_restriction(&s1),
            &RatFunc::one(1) + &RatFunc::var(1, 1)
        );

        let a2 = flag("A2");
        let id2 = a2.group().element(0).clone();
        let expected = &(&(-&RatFunc::var(2, 1)) * &(-&RatFunc::var(2, 2)))
            * &(-&(&RatFunc::var(2, 1) + &RatFunc::var(2, 2)));
        assert_eq!(a2.euler_class(&id2), expected);

        let w0 = a2.group().longest_element().clone();
        let one = RatFunc::one(2);
        let expected = &(&(&one + &RatFunc::var(2, 1)) * &(&one + &RatFunc::var(2, 2)))
            * &(&(&one + &RatFunc::var(2, 1)) + &RatFunc::var(2, 2));
        assert_eq!(a2.chern_tangent_restriction(&w0), expected);
    }

    #[test]
    fn csm_restriction_examples() {
        let a1 = flag("A1");
        let id = a1.group().element(0).clone();
        assert_eq!(
            a1.csm_y_restriction(&id, &id),
            &RatFunc::one(1) - &RatFunc::var(1, 1)
        );
        let s1 = a1.group().element(1).clone();
        // u not below w: zero
        assert!(a1.csm_y_restriction(&s1, &id).is_zero());
    }

    #[test]
    fn ssm_support_and_w0_value() {
        let a2 = flag("A2");
        let s1 = by_word(&a2, "1");
        let w0 = by_word(&a2, "121");
        let class = a2.ssm_y(s1);
        // support: zero unless u <= w
        for (id, w) in a2.group().elements().iter().enumerate() {
            let below = a2.group().element(s1).bruhat_leq(w);
            assert_eq!(class.restriction(id).is_zero(), !below);
        }
        // ssm_y(s1)|_{w0} = (a1 + a2) / ((1+a1)(1+a2)(1+a1+a2))
        let num = &RatFunc::var(2, 1) + &RatFunc::var(2, 2);
        let expected = num
            .div_linear(1, vec![1, 0])
            .div_linear(1, vec![0, 1])
            .div_linear(1, vec![1, 1]);
        assert_eq!(class.restriction(w0), &expected);
    }

    #[test]
    fn word_independence_of_csm_restriction() {
        for label in ["A2", "B2"] {
            let fl = flag(label);
            for u in fl.group().elements() {
                for w in fl.group().elements() {
                    let words = w.all_reduced_words();
                    let first = fl.csm_y_restriction_with_word(u, &words[0]);
                    for word in &words[1..] {
                        assert_eq!(
                            fl.csm_y_restriction_with_word(u, word),
                            first,
                            "{label}: u={u} w={w}"
                        );
                    }
                }
            }
        }
        // A3 sample: the longest element has many reduced words.
        let fl = flag("A3");
        let w0 = fl.group().longest_element().clone();
        let words = w0.all_reduced_words();
        assert_eq!(words.len(), 16);
        for u in fl.group().elements() {
            let first = fl.csm_y_restriction_with_word(u, &words[0]);
            for word in &words[1..] {
                assert_eq!(fl.csm_y_restriction_with_word(u, word), first, "u={u}");
            }
        }
    }

    #[test]
    fn ssm_cache_is_transparent_under_concurrency() {
        use rayon::prelude::*;
        let a2 = flag("B2");
        let serial: Vec<_> = (0..a2.group().len()).map(|id| a2.ssm_y(id)).collect();
        let fresh = flag("B2");
        let concurrent: Vec<_> = (0..fresh.group().len())
            .into_par_iter()
            .map(|id| {
                // interleave repeated lookups from several workers
                let _ = fresh.ssm_y(id % 3);
                fresh.ssm_y(id)
            })
            .collect();
        for (a, b) in serial.iter().zip(&concurrent) {
            assert_eq!(a.values(), b.values());
        }
    }

    #[test]
    fn hecke_point_class_gives_cell_csm() {
        let a2 = flag("A2");
        let point = a2.point_class();
        for i in 1..=2 {
            let lhs = a2.hecke_t(i, &point);
            let s_i = WeylElement::simple_reflection(a2.group().datum().clone(), i);
            assert_eq!(lhs, a2.csm_x(&s_i));
        }
    }

    #[test]
    fn hecke_on_constants() {
        let a2 = flag("A2");
        let mut ones = LocalizedClass::zero(SpaceTag::Flag, a2.group().len(), 2);
        for v in &mut ones.values {
            *v = RatFunc::one(2);
        }
        assert!(a2.hecke_divdiff(1, &ones).is_zero());
        assert_eq!(a2.hecke_reflect(1, &ones), ones);
    }

    #[test]
    fn hecke_involutions() {
        let a2 = flag("A2");
        // A deterministic non-symmetric class.
        let mut g = LocalizedClass::zero(SpaceTag::Flag, a2.group().len(), 2);
        for (id, v) in g.values.iter_mut().enumerate() {
            *v = &RatFunc::int_constant(2, id as i64 + 1) * &RatFunc::var(2, 1 + (id % 2));
        }
        for i in 1..=2 {
            assert_eq!(a2.hecke_t(i, &a2.hecke_t(i, &g)), g);
            assert_eq!(a2.hecke_tvee(i, &a2.hecke_tvee(i, &g)), g);
        }
    }

    #[test]
    fn csm_x_identity_and_support() {
        let a2 = flag("A2");
        let id = a2.group().element(0).clone();
        assert_eq!(a2.csm_x(&id), a2.point_class());
        let w = a2.group().element(by_word(&a2, "12")).clone();
        let class = a2.csm_x(&w);
        for (uid, u) in a2.group().elements().iter().enumerate() {
            if !u.bruhat_leq(&w) {
                assert!(class.restriction(uid).is_zero(), "u={u}");
            }
        }
    }

    #[test]
    fn pairing_point_against_one() {
        let a2 = flag("A2");
        let mut ones = LocalizedClass::zero(SpaceTag::Flag, a2.group().len(), 2);
        for v in &mut ones.values {
            *v = RatFunc::one(2);
        }
        assert_eq!(a2.pairing(&a2.point_class(), &ones), RatFunc::one(2));
    }

    #[test]
    fn pairing_is_bilinear() {
        let a1 = flag("A1");
        let g1 = a1.ssm_y(0);
        let g2 = a1.ssm_y(1);
        let sum = g1.add(&g2);
        let paired = a1.pairing(&sum, &a1.point_class());
        let split = &a1.pairing(&g1, &a1.point_class()) + &a1.pairing(&g2, &a1.point_class());
        assert_eq!(paired, split);
    }

    #[test]
    fn duality_on_a1() {
        let a1 = flag("A1");
        for w in 0..2 {
            for u in 0..2 {
                let value = a1.pairing(&a1.csm_x(a1.group().element(w)), &a1.ssm_y(u));
                let expected = if w == u {
                    RatFunc::one(1)
                } else {
                    RatFunc::zero(1)
                };
                assert_eq!(value, expected, "w={w} u={u}");
            }
        }
    }

    #[test]
    fn expansion_recovers_basis_vectors() {
        let a2 = flag("A2");
        for id in 0..a2.group().len() {
            let coeffs = a2.expand_in_ssm_basis(&a2.ssm_y(id)).unwrap();
            assert_eq!(coeffs.len(), 1);
            assert_eq!(coeffs[&id], RatFunc::one(2));
        }
        let zero = LocalizedClass::zero(SpaceTag::Flag, a2.group().len(), 2);
        assert!(a2.expand_in_ssm_basis(&zero).unwrap().is_empty());
    }

    #[test]
    fn ssm_yp_examples() {
        let a2 = flag("A2");
        // Empty parabolic: coincides with ssm_y.
        let trivial = PartialFlag::new(&a2, BTreeSet::new());
        for id in 0..a2.group().len() {
            let on_gp = trivial.ssm_yp(id).unwrap();
            assert_eq!(on_gp.values(), a2.ssm_y(id).values());
        }

        // Projective plane: three fixed points.
        let p1: BTreeSet<usize> = [1].into();
        let proj = PartialFlag::new(&a2, p1);
        assert_eq!(proj.reps().len(), 3);
        let class = proj.ssm_yp(0).unwrap();
        let s1 = by_word(&a2, "1");
        let expected = a2.ssm_y(0).restriction(0) + a2.ssm_y(s1).restriction(0);
        assert_eq!(class.restriction(0), &expected);

        // Non-minimal input is rejected.
        assert!(matches!(proj.ssm_yp(s1), Err(FlagError::NotMinimal { .. })));
    }

    #[test]
    fn ssm_yp_lift_independence_and_support() {
        let a2 = flag("A2");
        for par in [[1], [2]] {
            let parab: BTreeSet<usize> = par.into();
            let gp = PartialFlag::new(&a2, parab.clone());
            for &w_id in gp.reps() {
                for &u_id in gp.reps() {
                    let direct = gp.ssm_yp_restriction_at_lift(w_id, u_id);
                    for &x_id in gp.levi() {
                        let lift = a2.group().element(u_id).multiply(a2.group().element(x_id));
                        let lift_id = a2.group().index_of(&lift).unwrap();
                        assert_eq!(
                            gp.ssm_yp_restriction_at_lift(w_id, lift_id),
                            direct,
                            "lift independence failed"
                        );
                    }
                    // support: zero unless u >= w
                    let u = a2.group().element(u_id);
                    let w = a2.group().element(w_id);
                    if !w.bruhat_leq(u) {
                        assert!(direct.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn gp_pairing_is_symmetric() {
        let a2 = flag("A2");
        let gp = PartialFlag::new(&a2, [1].into());
        let g1 = gp.ssm_yp(gp.reps()[0]).unwrap();
        let g2 = gp.ssm_yp(gp.reps()[1]).unwrap();
        assert_eq!(gp.pairing(&g1, &g2), gp.pairing(&g2, &g1));
        let two = RatFunc::from_rational(2, BigRational::one() + BigRational::one());
        let scaled = g2.scale(&two);
        assert_eq!(
            gp.pairing(&g1, &scaled),
            &gp.pairing(&g1, &g2) + &gp.pairing(&g1, &g2)
        );
    }
}
