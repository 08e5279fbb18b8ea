//! Deterministic text and JSON output. JSON encodes rationals as `num/den`
//! strings and polynomials in the text syntax; object keys are sorted.

use mmm_core::algebra::{format_rational, Rational};
use mmm_core::GradedPolynomial;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A command result in both renderings, plus whether every claim held.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

pub fn rational(value: &Rational) -> Value {
    json!(format_rational(value))
}

pub fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational).collect())
}

pub fn polynomials(values: &[GradedPolynomial]) -> Value {
    Value::Array(values.iter().map(|p| json!(p.to_string())).collect())
}

/// One item per line, or `[]` when there are none.
pub fn text_list(items: impl IntoIterator<Item = String>) -> String {
    let lines: Vec<String> = items.into_iter().map(|s| format!("  {s}")).collect();
    if lines.is_empty() {
        "  []".to_string()
    } else {
        lines.join("\n")
    }
}

pub fn rational_list(values: &[Rational]) -> String {
    let items: Vec<String> = values.iter().map(format_rational).collect();
    format!("[{}]", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mmm_core::algebra::rat;

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational(&rat(3, 2)), json!("3/2"));
        assert_eq!(rationals(&[rat(-5, 8), rat(2, 1)]), json!(["-5/8", "2"]));
    }

    #[test]
    fn empty_list() {
        assert_eq!(text_list(Vec::new()), "  []");
        let out = Output {
            text: "x".into(),
            json: json!([]),
            ok: true,
        };
        assert_eq!(out.render(Format::Json), "[]\n");
        assert_eq!(out.render(Format::Text), "x\n");
    }
}
