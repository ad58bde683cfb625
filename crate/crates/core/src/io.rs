//! Number formatting and the JSON-lines check summary.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One verification result: a residual or drift against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes when `value < tolerance` (and `value` is not NaN).
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value < tolerance }
    }

    /// Passes when `value == expected` exactly; `tolerance` is recorded as 0.
    pub fn exact(name: impl Into<String>, value: f64, expected: f64) -> Self {
        Self { name: name.into(), value, tolerance: 0.0, pass: value == expected }
    }
}

/// Writes records as JSON lines with fields `name, value, tolerance, pass`.
pub fn write_json_lines<W: Write>(mut w: W, records: &[CheckRecord]) -> io::Result<()> {
    for r in records {
        // hand-formatted to keep the 17-digit number format and field order stable
        writeln!(
            w,
            "{{\"name\":{},\"value\":{},\"tolerance\":{},\"pass\":{}}}",
            json_string(&r.name),
            json_number(r.value),
            json_number(r.tolerance),
            r.pass
        )?;
    }
    Ok(())
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        fmt17(x)
    } else {
        "null".to_string()
    }
}
