//! Canonical JSON numbers: 17 significant digits, signed exponent.

use std::str::FromStr;

use genroots::Complex64;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

/// Formats `x` as `d.dddddddddddddddde+N`; non-finite values have no JSON form.
pub fn format_real(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    let s = format!("{x:.16e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp = if exp.starts_with('-') { exp.to_string() } else { format!("+{exp}") };
    Some(format!("{mantissa}e{exp}"))
}

pub fn real_value(x: f64) -> Value {
    match format_real(x) {
        Some(s) => Value::Number(Number::from_str(&s).expect("valid JSON number")),
        None => Value::Null,
    }
}

/// A real serialized canonically; `null` stands for a non-finite value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        real_value(self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Real(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Pair(pub Real, pub Real);

impl From<Complex64> for Pair {
    fn from(z: Complex64) -> Self {
        Pair(Real(z.re), Real(z.im))
    }
}

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0 .0, p.1 .0)
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    // going through Value sorts object keys
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
