//! Exact JSON serialization for polynomials, rational functions, localized
//! classes and result records.
//!
//! Integers are emitted as JSON numbers with arbitrary precision (no
//! float round-trip anywhere). Objects use sorted keys, so equal values
//! serialize to identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::symfunc::{LinearForm, Poly, RatFunc};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed value: expected {expected} at {context}")]
    BadSchema {
        expected: &'static str,
        context: &'static str,
    },
    #[error("not a valid integer: `{0}`")]
    BadInteger(String),
}

fn bigint_to_number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("integer strings are valid JSON numbers")
}

fn bigint_value(n: &BigInt) -> Value {
    Value::Number(bigint_to_number(n))
}

fn i64_value(n: i64) -> Value {
    Value::Number(n.into())
}

fn value_to_bigint(v: &Value, context: &'static str) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| JsonError::BadInteger(n.to_string()))
        }
        _ => Err(JsonError::BadSchema {
            expected: "integer",
            context,
        }),
    }
}

fn value_to_i64(v: &Value, context: &'static str) -> Result<i64, JsonError> {
    v.as_i64().ok_or(JsonError::BadSchema {
        expected: "small integer",
        context,
    })
}

fn value_to_u16(v: &Value, context: &'static str) -> Result<u16, JsonError> {
    let n = value_to_i64(v, context)?;
    u16::try_from(n).map_err(|_| JsonError::BadSchema {
        expected: "exponent in 0..65536",
        context,
    })
}

/// `[[numer, denom, [e_1..e_n]], ...]` in the polynomial's term order.
pub fn poly_to_value(p: &Poly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exp, coeff)| {
            json!([
                bigint_value(coeff.numer()),
                bigint_value(coeff.denom()),
                exp.iter().map(|&e| i64_value(e as i64)).collect::<Vec<_>>(),
            ])
        })
        .collect();
    Value::Array(terms)
}

pub fn poly_from_value(v: &Value, nvars: usize) -> Result<Poly, JsonError> {
    let arr = v.as_array().ok_or(JsonError::BadSchema {
        expected: "array of terms",
        context: "polynomial",
    })?;
    let mut terms = Vec::with_capacity(arr.len());
    for term in arr {
        let triple = term.as_array().filter(|t| t.len() == 3).ok_or(
            JsonError::BadSchema {
                expected: "[numer, denom, exponents]",
                context: "polynomial term",
            },
        )?;
        let numer = value_to_bigint(&triple[0], "term numerator")?;
        let denom = value_to_bigint(&triple[1], "term denominator")?;
        let exp_arr = triple[2].as_array().ok_or(JsonError::BadSchema {
            expected: "exponent array",
            context: "polynomial term",
        })?;
        if exp_arr.len() != nvars {
            return Err(JsonError::BadSchema {
                expected: "exponent array of length nvars",
                context: "polynomial term",
            });
        }
        let mut exp = Vec::with_capacity(nvars);
        for e in exp_arr {
            exp.push(value_to_u16(e, "exponent")?);
        }
        terms.push((exp, BigRational::new(numer, denom)));
    }
    Ok(Poly::from_terms(nvars, terms))
}

/// `{num, den, scalar}` with factored denominator:
/// `den: [{lin: {const, coeffs}, mult}, ...]`, `scalar: [p, q]`.
pub fn ratfunc_to_value(f: &RatFunc) -> Value {
    let den: Vec<Value> = f
        .den_factors()
        .map(|(form, mult)| {
            json!({
                "lin": {
                    "const": i64_value(form.constant()),
                    "coeffs": form.coeffs().iter().map(|&c| i64_value(c)).collect::<Vec<_>>(),
                },
                "mult": i64_value(mult as i64),
            })
        })
        .collect();
    json!({
        "num": poly_to_value(f.num()),
        "den": Value::Array(den),
        "scalar": [bigint_value(f.scalar().numer()), bigint_value(f.scalar().denom())],
    })
}

pub fn ratfunc_from_value(v: &Value, nvars: usize) -> Result<RatFunc, JsonError> {
    let obj = v.as_object().ok_or(JsonError::BadSchema {
        expected: "object with num/den/scalar",
        context: "rational function",
    })?;
    let num = poly_from_value(
        obj.get("num").ok_or(JsonError::BadSchema {
            expected: "num field",
            context: "rational function",
        })?,
        nvars,
    )?;
    let mut den: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let mut scalar = match obj.get("scalar") {
        Some(Value::Array(pair)) if pair.len() == 2 => BigRational::new(
            value_to_bigint(&pair[0], "scalar numerator")?,
            value_to_bigint(&pair[1], "scalar denominator")?,
        ),
        _ => {
            return Err(JsonError::BadSchema {
                expected: "scalar pair",
                context: "rational function",
            })
        }
    };
    let den_arr = obj
        .get("den")
        .and_then(Value::as_array)
        .ok_or(JsonError::BadSchema {
            expected: "den array",
            context: "rational function",
        })?;
    for entry in den_arr {
        let lin = entry.get("lin").ok_or(JsonError::BadSchema {
            expected: "lin field",
            context: "denominator factor",
        })?;
        let constant = value_to_i64(
            lin.get("const").ok_or(JsonError::BadSchema {
                expected: "const field",
                context: "denominator factor",
            })?,
            "factor constant",
        )?;
        let coeffs_arr = lin
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or(JsonError::BadSchema {
                expected: "coeffs array",
                context: "denominator factor",
            })?;
        let mut coeffs = Vec::with_capacity(coeffs_arr.len());
        for c in coeffs_arr {
            coeffs.push(value_to_i64(c, "factor coefficient")?);
        }
        let mult = value_to_i64(
            entry.get("mult").ok_or(JsonError::BadSchema {
                expected: "mult field",
                context: "denominator factor",
            })?,
            "factor multiplicity",
        )? as u32;
        let (scale, form) = LinearForm::normalized(constant, coeffs);
        for _ in 0..mult {
            scalar = &scalar * &scale;
        }
        *den.entry(form).or_insert(0) += mult;
    }
    Ok(RatFunc::from_parts(num, den, scalar))
}

/// A keyed restriction map (fixed-point label to rational function), the dump
/// format shared by flag-variety and Bott-Samelson classes.
pub fn restrictions_to_value<'a>(
    entries: impl Iterator<Item = (String, &'a RatFunc)>,
) -> Value {
    let mut map = Map::new();
    for (label, value) in entries {
        map.insert(label, ratfunc_to_value(value));
    }
    Value::Object(map)
}

/// Dump of a class on `G/B` or `G/P`: fixed points keyed by the canonical
/// reduced word of the (minimal representative) element.
pub fn localized_class_to_value(
    group: &crate::weyl::WeylGroup,
    point_ids: &[usize],
    class: &crate::flagloc::LocalizedClass,
) -> Value {
    restrictions_to_value(
        point_ids
            .iter()
            .enumerate()
            .map(|(pos, &id)| (group.element(id).reduced_word().to_string(), class.restriction(pos))),
    )
}

/// Dump of a Bott-Samelson class keyed by subword mask strings like `"101"`.
pub fn bs_class_to_value(class: &crate::bott_samelson::BsClass) -> Value {
    restrictions_to_value(
        class
            .mask_labels()
            .zip(class.values().iter())
            .map(|(label, value)| (label, value)),
    )
}

/// One computed constant, as written to result files and tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRecord {
    /// Root-system label (`"A2"`) or `"cartan:<hash prefix>"` for raw input.
    pub system: String,
    pub basis: String,
    pub u: String,
    pub v: String,
    pub w: String,
    pub parabolic: Vec<usize>,
    pub value: Value,
    pub euler_limit: Option<BigInt>,
}

impl ConstantRecord {
    pub fn to_value(&self) -> Value {
        json!({
            "type": self.system,
            "basis": self.basis,
            "u": self.u,
            "v": self.v,
            "w": self.w,
            "parabolic": self.parabolic.iter().map(|&i| i64_value(i as i64)).collect::<Vec<_>>(),
            "value": self.value,
            "euler_limit": match &self.euler_limit {
                Some(n) => bigint_value(n),
                None => Value::Null,
            },
        })
    }

    pub fn from_value(v: &Value) -> Result<Self, JsonError> {
        let obj = v.as_object().ok_or(JsonError::BadSchema {
            expected: "record object",
            context: "constant record",
        })?;
        let get_str = |key: &'static str| -> Result<String, JsonError> {
            obj.get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or(JsonError::BadSchema {
                    expected: "string field",
                    context: "constant record",
                })
        };
        let parabolic = obj
            .get("parabolic")
            .and_then(Value::as_array)
            .ok_or(JsonError::BadSchema {
                expected: "parabolic array",
                context: "constant record",
            })?
            .iter()
            .map(|x| value_to_i64(x, "parabolic index").map(|n| n as usize))
            .collect::<Result<Vec<_>, _>>()?;
        let euler_limit = match obj.get("euler_limit") {
            None | Some(Value::Null) => None,
            Some(v) => Some(value_to_bigint(v, "euler_limit")?),
        };
        Ok(ConstantRecord {
            system: get_str("type")?,
            basis: get_str("basis")?,
            u: get_str("u")?,
            v: get_str("v")?,
            w: get_str("w")?,
            parabolic,
            value: obj
                .get("value")
                .cloned()
                .ok_or(JsonError::BadSchema {
                    expected: "value field",
                    context: "constant record",
                })?,
            euler_limit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RatFunc {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        (&RatFunc::var(2, 1).scale(&third) - &RatFunc::int_constant(2, 2))
            .div_linear(1, vec![1, 1])
            .div_linear(0, vec![-2, 0])
    }

    #[test]
    fn ratfunc_roundtrip() {
        for f in [
            sample(),
            RatFunc::zero(2),
            RatFunc::one(2),
            RatFunc::int_constant(2, -7).div_linear(1, vec![1, 0]),
        ] {
            let v = ratfunc_to_value(&f);
            let back = ratfunc_from_value(&v, 2).unwrap();
            assert_eq!(back, f);
            // byte-identical reserialization
            assert_eq!(
                serde_json::to_string(&v).unwrap(),
                serde_json::to_string(&ratfunc_to_value(&back)).unwrap()
            );
        }
    }

    #[test]
    fn big_coefficients_survive() {
        let huge = BigRational::new(
            BigInt::from_str("123456789012345678901234567890").unwrap(),
            BigInt::from(7),
        );
        let p = Poly::constant(1, huge);
        let v = poly_to_value(&p);
        assert_eq!(poly_from_value(&v, 1).unwrap(), p);
    }

    #[test]
    fn record_roundtrip() {
        let record = ConstantRecord {
            system: "A2".to_string(),
            basis: "ssm".to_string(),
            u: "1".to_string(),
            v: "2".to_string(),
            w: "121".to_string(),
            parabolic: vec![],
            value: ratfunc_to_value(&sample()),
            euler_limit: Some(BigInt::from(-2)),
        };
        let v = record.to_value();
        assert_eq!(ConstantRecord::from_value(&v).unwrap(), record);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("{\"basis\""));
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(ratfunc_from_value(&json!([1, 2]), 2).is_err());
        assert!(poly_from_value(&json!([[1, 2]]), 2).is_err());
        assert!(ConstantRecord::from_value(&json!({"basis": "ssm"})).is_err());
    }

    #[test]
    fn class_dumps_are_keyed_maps() {
        use crate::cartan::CartanDatum;
        use crate::flagloc::FlagVariety;
        use crate::weyl::WeylGroup;
        use std::sync::Arc;

        let datum = Arc::new(CartanDatum::of_type("A2").unwrap());
        let group = Arc::new(WeylGroup::enumerate(datum.clone()).unwrap());
        let flag = FlagVariety::new(group.clone());
        let ids: Vec<usize> = (0..group.len()).collect();
        let dump = localized_class_to_value(&group, &ids, &flag.ssm_y(0));
        let keys: Vec<&String> = dump.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6);
        assert!(dump.get("").is_some(), "identity fixed point key");
        assert!(dump.get("121").is_some());

        let bs = crate::bott_samelson::BottSamelson::new(
            datum,
            crate::weyl::Word::parse("121", 2).unwrap(),
        );
        let dump = bs_class_to_value(&bs.dual_class(0b010));
        assert_eq!(dump.as_object().unwrap().len(), 8);
        let restriction = dump.get("010").unwrap();
        assert_eq!(
            ratfunc_from_value(restriction, 2).unwrap(),
            bs.dual_restriction(0b010, 0b010)
        );
    }
}
