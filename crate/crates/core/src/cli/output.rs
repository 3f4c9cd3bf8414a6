//! Report documents and their table/JSON renderings.
//!
//! Numbers are rounded to 12 significant digits before rendering so that
//! identical inputs give byte-identical output.

use serde_json::{Map, Number, Value};

/// Output format selected by `--format` or `MONO_FORMAT`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// `x` with 12 significant digits, shortest form, no locale.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "+inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A number rounded to 12 significant digits; infinities become strings.
pub fn num(x: f64) -> Value {
    let rounded: f64 = fmt_sig(x).parse().unwrap_or(x);
    match Number::from_f64(rounded) {
        Some(n) => Value::Number(n),
        None => Value::String(fmt_sig(x)),
    }
}

/// `num(x)` or the string `"undefined"`.
pub fn num_or_undefined(x: Option<f64>) -> Value {
    x.map_or_else(|| Value::String("undefined".into()), num)
}

/// `{command, input, results, warnings}`.
#[derive(Debug, Clone)]
pub struct Document {
    pub command: &'static str,
    pub input: Map<String, Value>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl Document {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            input: Map::new(),
            results: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.into()));
        root.insert("input".into(), Value::Object(self.input.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        root.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::String).collect()),
        );
        Value::Object(root)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut rows = Vec::new();
        flatten("", &Value::Object(self.input.clone()), &mut rows);
        let input_rows = rows.len();
        flatten("", &Value::Object(self.results.clone()), &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);

        let mut out = format!("{}\n", self.command);
        for (i, (k, v)) in rows.iter().enumerate() {
            if i == input_rows {
                out.push_str(&format!("{}\n", "-".repeat(width + 2 + 12)));
            }
            out.push_str(&format!("  {k:<width$}  {v}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.is_empty() => out.push((prefix.to_string(), "[]".into())),
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => out.push((prefix.to_string(), fmt_sig(n.as_f64().unwrap_or(f64::NAN)))),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), if *b { "yes" } else { "no" }.into())),
        Value::Null => out.push((prefix.to_string(), "none".into())),
    }
}
