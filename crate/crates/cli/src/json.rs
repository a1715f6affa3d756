//! Minimal JSON document builder with deterministic field order and
//! 17-significant-digit numbers, so identical arguments always produce
//! byte-identical output.

use biharm_core::numfmt::fmt_f64;
use biharm_core::Vec3;

/// A JSON object whose fields render in insertion order.
pub struct Obj {
    fields: Vec<(&'static str, String)>,
}

impl Obj {
    pub fn new() -> Obj {
        Obj { fields: Vec::new() }
    }

    pub fn num(self, key: &'static str, value: f64) -> Obj {
        self.push(key, fmt_f64(value))
    }

    pub fn int(self, key: &'static str, value: usize) -> Obj {
        self.push(key, value.to_string())
    }

    pub fn flag(self, key: &'static str, value: bool) -> Obj {
        self.push(key, value.to_string())
    }

    pub fn text(self, key: &'static str, value: &str) -> Obj {
        self.push(key, quoted(value))
    }

    /// Inserts an already-rendered JSON value (a nested object or array).
    pub fn raw(self, key: &'static str, value: String) -> Obj {
        self.push(key, value)
    }

    pub fn vec3(self, key: &'static str, v: Vec3) -> Obj {
        let rendered = format!("[{},{},{}]", fmt_f64(v.x), fmt_f64(v.y), fmt_f64(v.z));
        self.push(key, rendered)
    }

    fn push(mut self, key: &'static str, rendered: String) -> Obj {
        self.fields.push((key, rendered));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::from("{");
        for (i, (key, value)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("\"{key}\":{value}"));
        }
        out.push('}');
        out
    }
}

pub fn array(items: impl IntoIterator<Item = String>) -> String {
    let body: Vec<String> = items.into_iter().collect();
    format!("[{}]", body.join(","))
}

pub fn pair(lo: f64, hi: f64) -> String {
    format!("[{},{}]", fmt_f64(lo), fmt_f64(hi))
}

fn quoted(s: &str) -> String {
    let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}
