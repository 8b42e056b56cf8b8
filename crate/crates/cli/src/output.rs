//! Locale-independent number formatting shared by every command.

use serde::Serialize;
use serde_json::{Number, Value};

pub const DEFAULT_DIGITS: usize = 6;
pub const DIGITS_ENV: &str = "QFT_LAB_FLOAT_DIGITS";

/// Significant digits from the environment, or the default.
pub fn digits_from_env() -> Result<usize, String> {
    match std::env::var(DIGITS_ENV) {
        Err(_) => Ok(DEFAULT_DIGITS),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(d),
            _ => Err(format!("{DIGITS_ENV} must be an integer in 1..=17, got {v:?}")),
        },
    }
}

/// C-style `%.{digits}g`: fixed or scientific notation, whichever is
/// shorter for the exponent, with trailing zeros stripped.
pub fn fmt_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= p as i32 {
        let m = strip_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Float rounded to `digits` significant digits, re-read as a double.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    fmt_g(x, digits).parse().unwrap_or(x)
}

/// JSON text with every non-integral float rounded to `digits` significant
/// digits. Non-finite floats become strings.
pub fn json<T: Serialize>(value: &T, digits: usize) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize to JSON");
    round_value(&mut v, digits);
    serde_json::to_string_pretty(&v).expect("JSON values print")
}

fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            *v = Number::from_f64(round_sig(x, digits))
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(fmt_g(x, digits)));
        }
        Value::Array(items) => items.iter_mut().for_each(|i| round_value(i, digits)),
        Value::Object(map) => map.values_mut().for_each(|i| round_value(i, digits)),
        _ => {}
    }
}

/// Comma-separated rows under a header, `\n` line endings.
pub struct Csv {
    out: String,
    digits: usize,
}

pub enum Cell {
    Int(u64),
    Float(f64),
    Text(&'static str),
    Empty,
}

impl Csv {
    pub fn new(header: &[&str], digits: usize) -> Self {
        Self {
            out: format!("{}\n", header.join(",")),
            digits,
        }
    }

    pub fn row(&mut self, cells: &[Cell]) {
        let line: Vec<String> = cells
            .iter()
            .map(|c| match c {
                Cell::Int(i) => i.to_string(),
                Cell::Float(x) => fmt_g(*x, self.digits),
                Cell::Text(t) => t.to_string(),
                Cell::Empty => String::new(),
            })
            .collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}
