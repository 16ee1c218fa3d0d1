//! Locale-independent number formatting shared by every subcommand.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Serializes `value` with every float rounded to 12 significant digits.
pub fn rounded<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).unwrap_or(Value::Null);
    round_in_place(&mut v);
    v
}

fn round_in_place(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = serde_json::Number::from_f64(sig12(x)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_in_place),
        Value::Object(map) => map.values_mut().for_each(round_in_place),
        _ => {}
    }
}

/// A CSV field. `NaN` and infinities become empty fields.
pub fn field(x: f64) -> String {
    if x.is_finite() {
        format!("{}", sig12(x))
    } else {
        String::new()
    }
}

pub fn csv_row(out: &mut impl Write, fields: &[f64]) -> std::io::Result<()> {
    let line: Vec<String> = fields.iter().map(|&x| field(x)).collect();
    writeln!(out, "{}", line.join(","))
}

pub fn print_json(v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::input(e.to_string()))?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(sig12(2.610770464107849), 2.61077046411);
        assert_eq!(sig12(-1.0 / 3.0), -0.333333333333);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(field(1e-7), "0.0000001");
        assert_eq!(field(f64::NAN), "");
    }

    #[test]
    fn rounds_nested_values() {
        let v = rounded(&serde_json::json!({"a": [0.1234567890123456], "b": {"c": 2}}));
        assert_eq!(v["a"][0].as_f64(), Some(0.123456789012));
        assert_eq!(v["b"]["c"].as_u64(), Some(2));
    }
}
