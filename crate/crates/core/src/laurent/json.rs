//! JSON form `{"k": int, "terms": [{"e": [int...], "c": int | [re, im]}...]}`.

use super::{Coefficient, ExponentVector, LaurentPoly};
use crate::error::{Error, Result};
use crate::json_int::{bigint_from_value, bigint_to_value};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

impl LaurentPoly {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| {
                let c = match c {
                    Coefficient::Int(n) => bigint_to_value(n),
                    Coefficient::Complex(z) => json!([z.re, z.im]),
                };
                json!({ "e": e.as_slice(), "c": c })
            })
            .collect();
        json!({ "k": self.k(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("polynomial needs a nonnegative integer field \"k\"".into()))?
            as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("polynomial needs an array field \"terms\"".into()))?;
        let mut p = LaurentPoly::zero(k);
        for t in terms {
            let e = t
                .get("e")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("term needs an exponent array \"e\"".into()))?;
            let e: Vec<i64> = e
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Json("exponents must be integers".into()))
                })
                .collect::<Result<_>>()?;
            if e.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "exponent vector length",
                    expected: k,
                    found: e.len(),
                });
            }
            let c = t
                .get("c")
                .ok_or_else(|| Error::Json("term needs a coefficient \"c\"".into()))?;
            let c = match c {
                Value::Array(pair) => {
                    let parts: Option<Vec<f64>> = pair.iter().map(Value::as_f64).collect();
                    match parts.as_deref() {
                        Some([re, im]) if re.is_finite() && im.is_finite() => {
                            Coefficient::from_complex(Complex64::new(*re, *im))
                        }
                        _ => {
                            return Err(Error::Json(
                                "complex coefficient must be [re, im] with finite parts".into(),
                            ))
                        }
                    }
                }
                other => Coefficient::Int(bigint_from_value(other)?),
            };
            p.add_term(ExponentVector(e), c);
        }
        Ok(p)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        Self::from_json(&v)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        LaurentPoly::from_json(&v).map_err(serde::de::Error::custom)
    }
}
