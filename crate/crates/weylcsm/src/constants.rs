//! Top-level structure constants for the SSM, CSM and stable bases, the
//! parabolic sums, and the non-equivariant Euler-characteristic limits.
//!
//! The SSM constant is computed by the closed operator formula aggregated
//! over subword pairs of a reduced word (with suffix memoization); the
//! localization oracle in [`crate::flagloc`] is test-side only and never
//! feeds these values.

use num::{BigInt, BigRational, One};
use thiserror::Error;

use crate::bott_samelson::{BottSamelson, FormulaEvaluator};
use crate::flagloc::{FlagError, FlagVariety, PartialFlag};
use crate::symfunc::{phi, LinearProduct, Poly, RatFunc};
use crate::weyl::{subwords_with_product, WeylElement, Word};

#[derive(Debug, Error)]
pub enum ConstantsError {
    #[error("CSM constant did not simplify to a polynomial (convention bug)")]
    NotPolynomial,
    #[error("polynomial degree {degree} exceeds dim G/B = {dim}")]
    DegreeTooHigh { degree: usize, dim: usize },
    #[error("Euler limit is not defined: {0}")]
    Pole(#[from] crate::symfunc::PoleAtZero),
    #[error("Euler limit {value} is not an integer")]
    NotInteger { value: BigRational },
    #[error(transparent)]
    Flag(#[from] FlagError),
}

/// The SSM structure constant through a caller-chosen word for `w`. The word
/// must be reduced for the value to be the structure constant; exposing the
/// word choice is what the reduced-word-independence suite exercises.
pub fn c_ssm_with_word(word: &Word, u: &WeylElement, v: &WeylElement) -> RatFunc {
    let datum = u.datum().clone();
    let model = BottSamelson::new(datum, word.clone());
    let r_masks = subwords_with_product(word, u);
    if r_masks.is_empty() {
        return RatFunc::zero(u.rank());
    }
    let s_masks = subwords_with_product(word, v);
    if s_masks.is_empty() {
        return RatFunc::zero(u.rank());
    }
    let mut evaluator = FormulaEvaluator::new(&model);
    let mut terms = Vec::with_capacity(r_masks.len() * s_masks.len());
    for &r in &r_masks {
        for &s in &s_masks {
            terms.push(evaluator.eval(r, s));
        }
    }
    RatFunc::sum(u.rank(), terms)
}

/// Structure constant of the SSM basis: the double subword sum over the
/// deterministic reduced word of `w`. Zero unless `w >= u` and `w >= v`.
pub fn c_ssm(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> RatFunc {
    c_ssm_with_word(&w.reduced_word(), u, v)
}

/// `prod_{alpha > 0} (1 - alpha)` for the datum of `w`.
fn chern_point_product(w: &WeylElement) -> LinearProduct {
    let datum = w.datum();
    let mut prod = LinearProduct::one(datum.rank());
    for root in datum.positive_roots() {
        prod.mul_one_plus(&-root);
    }
    prod
}

/// Structure constant of the CSM basis: a sign and the automorphism applied
/// to the SSM constant, times the total-Chern-class polynomial. Always a
/// polynomial of degree at most `dim G/B`; anything else is a bug and errors.
pub fn d_csm(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<Poly, ConstantsError> {
    let parity = (u.length() + v.length() + w.length()) % 2;
    let mut value = phi(&c_ssm(u, v, w)).mul_product(&chern_point_product(w));
    if parity == 1 {
        value = -&value;
    }
    let poly = value.to_poly().ok_or(ConstantsError::NotPolynomial)?;
    let dim = w.datum().dim_gb();
    if let Some(degree) = poly.degree() {
        if degree > dim {
            return Err(ConstantsError::DegreeTooHigh { degree, dim });
        }
    }
    Ok(poly)
}

/// Structure constant of the stable basis, as a homogeneous polynomial of
/// degree `dim G/B` in the simple roots plus one trailing homogenization
/// variable. Setting that variable to 1 recovers `(-1)^{dim} d`.
pub fn e_stable(u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<Poly, ConstantsError> {
    let dim = w.datum().dim_gb();
    let mut d = d_csm(u, v, w)?;
    if dim % 2 == 1 {
        d = -&d;
    }
    d.homogenize(dim).ok_or(ConstantsError::DegreeTooHigh {
        degree: d.degree().unwrap_or(0),
        dim,
    })
}

/// Parabolic SSM constant: the double coset sum of full-flag constants.
/// All three elements must be minimal representatives for the parabolic.
pub fn c_parabolic(
    flag: &FlagVariety,
    partial: &PartialFlag,
    u: &WeylElement,
    v: &WeylElement,
    w: &WeylElement,
) -> Result<RatFunc, ConstantsError> {
    let group = flag.group();
    for elem in [u, v, w] {
        let id = group.index_of(elem).expect("element outside the group");
        if partial.rep_position(id).is_none() {
            return Err(FlagError::NotMinimal {
                word: elem.reduced_word().to_string(),
            }
            .into());
        }
    }
    let mut sum = RatFunc::zero(u.rank());
    for &x_id in partial.levi() {
        let ux = u.multiply(group.element(x_id));
        for &y_id in partial.levi() {
            let vy = v.multiply(group.element(y_id));
            sum = &sum + &c_ssm(&ux, &vy, w);
        }
    }
    Ok(sum)
}

/// The value of the SSM constant at `alpha = 0`; always an integer (it
/// counts points of a transversal triple intersection of cells, with sign).
pub fn euler_characteristic(
    u: &WeylElement,
    v: &WeylElement,
    w: &WeylElement,
) -> Result<BigInt, ConstantsError> {
    euler_limit_of(&c_ssm(u, v, w))
}

/// Shared integer-limit extraction for precomputed constants.
pub fn euler_limit_of(value: &RatFunc) -> Result<BigInt, ConstantsError> {
    let limit = value.specialize_zero()?;
    if limit.denom() == &BigInt::one() || limit.numer() == &BigInt::from(0) {
        Ok(limit.to_integer())
    } else {
        Err(ConstantsError::NotInteger { value: limit })
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use super::*;
    use crate::cartan::CartanDatum;
    use crate::weyl::WeylGroup;

    fn flag(label: &str) -> FlagVariety {
        let datum = Arc::new(CartanDatum::of_type(label).unwrap());
        FlagVariety::new(Arc::new(WeylGroup::enumerate(datum).unwrap()))
    }

    fn elem(flag: &FlagVariety, word: &str) -> WeylElement {
        let datum = flag.group().datum().clone();
        Word::parse(word, datum.rank()).unwrap().product(datum)
    }

    #[test]
    fn worked_rank_two_example() {
        let a2 = flag("A2");
        let value = c_ssm(&elem(&a2, "1"), &elem(&a2, "2"), &elem(&a2, "121"));
        let expected = RatFunc::int_constant(2, -2)
            .div_linear(1, vec![1, 0])
            .div_linear(1, vec![0, 1])
            .div_linear(1, vec![1, 1]);
        assert_eq!(value, expected);
        assert_eq!(
            euler_limit_of(&value).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn identity_constant() {
        let a2 = flag("A2");
        let id = elem(&a2, "");
        assert_eq!(c_ssm(&id, &id, &id), RatFunc::one(2));
        assert_eq!(euler_characteristic(&id, &id, &id).unwrap(), BigInt::one());
    }

    #[test]
    fn support_and_symmetry() {
        let a2 = flag("A2");
        let s1 = elem(&a2, "1");
        let s2 = elem(&a2, "2");
        let s12 = elem(&a2, "12");
        // w not above u: zero
        assert!(c_ssm(&s12, &s1, &s2).is_zero());
        assert!(c_ssm(&s1, &s12, &s2).is_zero());
        for w in a2.group().elements() {
            assert_eq!(c_ssm(&s1, &s2, w), c_ssm(&s2, &s1, w), "w={w}");
        }
    }

    #[test]
    fn diagonal_matches_localized_restriction() {
        // c(u, w, w) equals the SSM restriction at w.
        let a2 = flag("A2");
        for (u_id, u) in a2.group().elements().iter().enumerate() {
            for w in a2.group().elements() {
                let w_id = a2.group().index_of(w).unwrap();
                assert_eq!(
                    c_ssm(u, w, w),
                    *a2.ssm_y(u_id).restriction(w_id),
                    "u={u} w={w}"
                );
            }
        }
    }

    #[test]
    fn csm_constant_examples() {
        let a1 = flag("A1");
        let id = elem(&a1, "");
        let d = d_csm(&id, &id, &id).unwrap();
        let expected = &Poly::one(1) - &Poly::var(1, 1);
        assert_eq!(d, expected);

        // Diagonal: d(u, w, w) equals the CSM restriction at w.
        let a2 = flag("A2");
        for u in a2.group().elements() {
            for w in a2.group().elements() {
                let d = d_csm(u, w, w).unwrap();
                assert_eq!(
                    RatFunc::from_poly(d),
                    a2.csm_y_restriction(u, w),
                    "u={u} w={w}"
                );
            }
        }
    }

    #[test]
    fn csm_nonequivariant_sign_relation() {
        let a2 = flag("A2");
        for u in a2.group().elements() {
            for v in a2.group().elements() {
                for w in a2.group().elements() {
                    let c0 = euler_limit_of(&c_ssm(u, v, w)).unwrap();
                    let d = d_csm(u, v, w).unwrap();
                    let d0 = RatFunc::from_poly(d).specialize_zero().unwrap().to_integer();
                    let parity = (u.length() + v.length() + w.length()) % 2;
                    let signed = if parity == 1 { -c0.clone() } else { c0.clone() };
                    assert_eq!(d0, signed, "u={u} v={v} w={w}");
                }
            }
        }
    }

    #[test]
    fn stable_constant_examples() {
        let a1 = flag("A1");
        let id = elem(&a1, "");
        let e = e_stable(&id, &id, &id).unwrap();
        // -(1 - a1) homogenized in degree 1: a1 - h
        let expected = &Poly::var(2, 1) - &Poly::var(2, 2);
        assert_eq!(e, expected);
        assert!(e.is_homogeneous_of_degree(1));

        let a2 = flag("A2");
        let dim = a2.group().datum().dim_gb();
        for u in a2.group().elements() {
            for w in a2.group().elements() {
                let e = e_stable(u, w, w).unwrap();
                if e.is_zero() {
                    continue;
                }
                assert!(e.is_homogeneous_of_degree(dim));
                let mut back = e.dehomogenize_last();
                if dim % 2 == 1 {
                    back = -&back;
                }
                assert_eq!(back, d_csm(u, w, w).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_trivial_cases() {
        let a2 = flag("A2");
        let empty = PartialFlag::new(&a2, BTreeSet::new());
        let s1 = elem(&a2, "1");
        let s2 = elem(&a2, "2");
        let w0 = elem(&a2, "121");
        assert_eq!(
            c_parabolic(&a2, &empty, &s1, &s2, &w0).unwrap(),
            c_ssm(&s1, &s2, &w0)
        );

        // Full parabolic: the only representative is the identity.
        let full = PartialFlag::new(&a2, [1, 2].into());
        let id = elem(&a2, "");
        assert_eq!(
            c_parabolic(&a2, &full, &id, &id, &id).unwrap(),
            RatFunc::one(2)
        );
        assert!(matches!(
            c_parabolic(&a2, &full, &s1, &id, &id),
            Err(ConstantsError::Flag(FlagError::NotMinimal { .. }))
        ));
    }

    #[test]
    fn parabolic_matches_oracle_on_projective_plane() {
        let a2 = flag("A2");
        let gp = PartialFlag::new(&a2, [1].into());
        for &u_id in gp.reps() {
            for &v_id in gp.reps() {
                let product = gp
                    .ssm_yp(u_id)
                    .unwrap()
                    .mul_pointwise(&gp.ssm_yp(v_id).unwrap());
                let oracle = gp.expand_in_ssm_basis(&product).unwrap();
                for &w_id in gp.reps() {
                    let direct = c_parabolic(
                        &a2,
                        &gp,
                        a2.group().element(u_id),
                        a2.group().element(v_id),
                        a2.group().element(w_id),
                    )
                    .unwrap();
                    let expected = oracle.get(&w_id).cloned().unwrap_or_else(|| RatFunc::zero(2));
                    assert_eq!(direct, expected, "u={u_id} v={v_id} w={w_id}");
                }
            }
        }
    }

    #[test]
    fn euler_diagonal_is_kronecker() {
        // The limit of c(u, w, w) is 1 for u = id and 0 otherwise: every
        // nonempty subword term carries a positive-root factor vanishing
        // at alpha = 0.
        let a2 = flag("A2");
        for u in a2.group().elements() {
            for w in a2.group().elements() {
                if !u.bruhat_leq(w) {
                    continue;
                }
                let chi = euler_characteristic(u, w, w).unwrap();
                let expected = if u.is_identity() { 1 } else { 0 };
                assert_eq!(chi, BigInt::from(expected), "u={u} w={w}");
            }
        }
    }
}
