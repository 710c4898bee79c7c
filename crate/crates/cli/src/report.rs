//! Deterministic report rendering. Floating-point values are written with 17
//! significant digits so serialized reports round-trip exactly and identical
//! runs produce byte-identical files.

use std::fmt::Write as _;

/// JSON value with ordered object fields.
#[derive(Debug, Clone)]
pub enum Jv {
    Str(String),
    Num(f64),
    Int(i64),
    Bool(bool),
    Arr(Vec<Jv>),
    Obj(Vec<(String, Jv)>),
}

/// 17 significant digits, scientific form; valid as a JSON number.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn escape(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

impl Jv {
    pub fn obj(fields: Vec<(&str, Jv)>) -> Jv {
        Jv::Obj(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }

    fn write(&self, indent: usize, out: &mut String) {
        match self {
            Jv::Str(s) => escape(s, out),
            Jv::Num(x) => out.push_str(&fmt_f64(*x)),
            Jv::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Jv::Bool(b) => {
                let _ = write!(out, "{b}");
            }
            Jv::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write(indent + 1, out);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Jv::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    escape(k, out);
                    out.push_str(": ");
                    v.write(indent + 1, out);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(0, &mut out);
        out.push('\n');
        out
    }
}

/// CSV assembly with the same float convention.
pub struct Csv {
    lines: Vec<String>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            lines: vec![header.join(",")],
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.lines.push(cells.join(","));
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trips_exactly() {
        for x in [4.0, 1.0 / 3.0, 2.220446049250313e-16, -1.5e300] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_rendering_is_stable() {
        let v = Jv::obj(vec![
            ("name", Jv::Str("x".into())),
            ("value", Jv::Num(0.5)),
            ("flags", Jv::Arr(vec![Jv::Bool(true), Jv::Int(3)])),
        ]);
        assert_eq!(v.render(), v.render());
        assert!(v.render().contains("\"value\": 5.0000000000000000e-1"));
    }
}
