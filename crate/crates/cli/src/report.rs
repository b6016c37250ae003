use serde::Serialize;
use serde_json::{Map, Value};

/// Machine-readable record of one invocation. `results` depends only on
/// the input graph and `parameters`; `timings` is the only
/// non-reproducible part.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub graph: GraphDescriptor,
    pub parameters: Value,
    pub results: Value,
    pub timings: Timings,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDescriptor {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

pub const SIGNIFICANT_DIGITS: usize = 9;

/// `x` rounded to nine significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Rounds every floating-point number in `v`. Integers are left alone.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
            {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Serializes `value` and rounds its floats.
pub fn to_rounded<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("report values serialize");
    round_floats(&mut v);
    v
}

/// Builder for JSON objects. Keys come out sorted.
#[derive(Default)]
pub struct Obj(Map<String, Value>);

impl Obj {
    pub fn new() -> Self {
        Obj(Map::new())
    }

    pub fn set<T: Serialize>(mut self, key: &str, value: T) -> Self {
        self.0.insert(key.to_string(), to_rounded(&value));
        self
    }

    pub fn build(self) -> Value {
        Value::Object(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn rounding() {
        assert_eq!(round_sig(std::f64::consts::SQRT_2), 1.41421356);
        assert_eq!(round_sig(1.8477590650225735), 1.84775907);
        assert_eq!(round_sig(2.0), 2.0);
        assert_eq!(round_sig(-1.234567891234e-12), -1.23456789e-12);
        let mut v = serde_json::json!({"a": [1, 2.00000000001, {"b": 3}]});
        round_floats(&mut v);
        assert_eq!(v.to_string(), r#"{"a":[1,2.0,{"b":3}]}"#);
    }
}
