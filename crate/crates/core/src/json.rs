//! Exact integer <-> JSON number conversion (no f64 round trip).

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

pub fn number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integer is a valid JSON number"))
}

pub fn to_bigint(n: &Number) -> Result<BigInt, String> {
    BigInt::from_str(&n.to_string()).map_err(|_| format!("expected an integer, found {n}"))
}

pub fn numbers<'a>(items: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(items.into_iter().map(number).collect())
}
