//! Arbitrary-precision integers in JSON: plain numbers when they fit in 64
//! bits, decimal strings otherwise.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

pub(crate) fn bigint_to_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(n.to_string()),
    }
}

pub(crate) fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(num) => {
            if let Some(x) = num.as_i64() {
                Ok(BigInt::from(x))
            } else if let Some(x) = num.as_u64() {
                Ok(BigInt::from(x))
            } else {
                Err(Error::Json(format!("expected an integer, found {num}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Json(format!("expected an integer string, found {s:?}"))),
        other => Err(Error::Json(format!("expected an integer, found {other}"))),
    }
}
