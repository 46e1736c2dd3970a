//! Deterministic float formatting and JSON emission.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

pub const DEFAULT_PRECISION: usize = 17;

/// Significant digits for printed floats, from `AKL_PRECISION` if set.
pub fn precision_from_env() -> Result<usize, String> {
    match std::env::var("AKL_PRECISION") {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(p) if (1..=17).contains(&p) => Ok(p),
            _ => Err(format!("AKL_PRECISION must be an integer in 1..=17, got `{s}`")),
        },
    }
}

/// `%.{digits}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros removed.
pub fn fmt_float(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Pretty JSON with every float printed by [`fmt_float`].
pub fn to_json<T: Serialize>(value: &T, digits: usize) -> String {
    let v = serde_json::to_value(value).expect("serializable report");
    let mut out = String::new();
    write_value(&mut out, &v, digits, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, digits: usize, depth: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => write!(out, "{i}").unwrap(),
            (_, Some(u), _) => write!(out, "{u}").unwrap(),
            (_, _, Some(f)) => out.push_str(&fmt_float(f, digits)),
            _ => out.push_str(&n.to_string()),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, digits, depth);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, digits, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, digits, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-9, 6.02214076e23, 1e16, 123456.789] {
            let s = fmt_float(v, 17);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn formatting_shapes() {
        assert_eq!(fmt_float(0.0, 17), "0");
        assert_eq!(fmt_float(1.0, 17), "1");
        assert_eq!(fmt_float(0.1, 17), "0.10000000000000001");
        assert_eq!(fmt_float(0.1, 6), "0.1");
        assert_eq!(fmt_float(-1.5e-7, 6), "-1.5e-7");
        assert_eq!(fmt_float(2.5e20, 17), "2.5e20");
    }

    #[test]
    fn json_floats_use_the_precision() {
        let s = to_json(&serde_json::json!({"a": [0.1, 2], "b": {"c": true}}), 3);
        assert_eq!(s, "{\n  \"a\": [0.1, 2],\n  \"b\": {\n    \"c\": true\n  }\n}\n");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"][0], 0.1);
    }
}
