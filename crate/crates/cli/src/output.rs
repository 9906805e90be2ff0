use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use cyclesq::{to_decimal, Rational};

/// Integers past this magnitude are serialized as strings.
const MAX_JSON_INT: u64 = 999_999_999_999_999;

pub fn json_uint(v: u64) -> Value {
    if v > MAX_JSON_INT {
        Value::String(v.to_string())
    } else {
        Value::from(v)
    }
}

/// Floats keep JSON number form only when their shortest representation
/// has at most 15 significant digits.
pub fn json_f64(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let repr = format!("{v}");
    let sig = repr
        .chars()
        .filter(char::is_ascii_digit)
        .collect::<String>();
    let sig = sig.trim_start_matches('0').trim_end_matches('0');
    if sig.len() > 15 {
        Value::String(repr)
    } else {
        Value::from(v)
    }
}

/// Decimal rendering with at most `digits` fractional digits, trailing
/// zeros dropped.
pub fn render_decimal(q: &Rational, digits: usize) -> String {
    let s = to_decimal(q, digits);
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s
    }
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub num: String,
    pub den: String,
    pub decimal: String,
    pub digits: usize,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(
        command: &'static str,
        params: Map<String, Value>,
        value: &Rational,
        digits: usize,
    ) -> Self {
        Self {
            command,
            params,
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            decimal: render_decimal(value, digits),
            digits,
            extra: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), v.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// One line of `key=value` pairs.
    pub fn to_text(&self) -> String {
        let mut out = String::from(self.command);
        for (k, v) in &self.params {
            let _ = write!(out, " {k}={}", plain(v));
        }
        let _ = write!(
            out,
            " num={} den={} decimal={}",
            self.num, self.den, self.decimal
        );
        for (k, v) in &self.extra {
            let _ = write!(out, " {k}={}", plain(v));
        }
        out
    }

    pub fn emit(&self, json: bool) {
        if json {
            println!("{}", self.to_json());
        } else {
            println!("{}", self.to_text());
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

#[macro_export]
macro_rules! params {
    ($($k:literal => $v:expr),* $(,)?) => {{
        let mut m = serde_json::Map::new();
        $( m.insert($k.to_string(), serde_json::Value::from($v)); )*
        m
    }};
}
