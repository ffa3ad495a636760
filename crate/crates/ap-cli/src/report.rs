use apsurf::exactfield::{FieldElement, QPoly, Rational, SubfieldDescription};
use apsurf::io::{element_to_file, field_to_file, parse_rational, rational_string};
use apsurf::wedge::{Mat2, PlanarVector, Slope};
use serde_json::{json, Map, Value};

/// Outcome of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    /// `None` for commands that only compute; otherwise the checked verdict.
    pub verdict: Option<bool>,
    pub summary: Vec<(String, String)>,
    pub data: Map<String, Value>,
    pub advisory: Option<Value>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn line(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.summary.push((key.to_string(), value.to_string()));
        self
    }

    pub fn put(&mut self, key: &str, value: Value) -> &mut Self {
        self.data.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        if let Some(v) = self.verdict {
            m.insert("verdict".into(), json!(v));
        }
        m.insert("data".into(), Value::Object(self.data.clone()));
        if let Some(a) = &self.advisory {
            let mut a = a.clone();
            if let Value::Object(o) = &mut a {
                o.insert("advisory".into(), json!(true));
            }
            m.insert("diagnostics".into(), a);
        }
        m.insert("timing".into(), json!({ "elapsed_ms": self.elapsed_ms }));
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = self.verdict {
            out.push_str(&format!("{}: {}\n", self.command, if v { "PASS" } else { "FAIL" }));
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(a) = &self.advisory {
            out.push_str(&format!("advisory (floating point, not a verdict): {a}\n"));
        }
        out
    }
}

pub fn rat_json(q: &Rational) -> Value {
    json!(rational_string(q))
}

pub fn qmatrix_json(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect())
}

pub fn elem_json(x: &FieldElement) -> Value {
    json!(element_to_file(x))
}

pub fn vec_json(v: &PlanarVector) -> Value {
    json!([elem_json(&v.x), elem_json(&v.y)])
}

pub fn mat2_json(m: &Mat2) -> Value {
    json!([[elem_json(&m[0][0]), elem_json(&m[0][1])], [elem_json(&m[1][0]), elem_json(&m[1][1])]])
}

pub fn poly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

pub fn slope_json(s: &Slope) -> Value {
    match s {
        Slope::Infinite => json!("inf"),
        Slope::Finite(x) => elem_json(x),
    }
}

pub fn slope_text(s: &Slope) -> String {
    match s {
        Slope::Infinite => "inf".into(),
        Slope::Finite(x) => x.to_string(),
    }
}

/// Subfield as a minimal polynomial plus the embedding of its generator.
pub fn subfield_json(k: &SubfieldDescription) -> Value {
    json!({
        "degree": k.degree(),
        "minpoly": poly_json(&k.primitive_minpoly),
        "generator": elem_json(&k.primitive),
        "qbasis": k.qbasis.iter().map(elem_json).collect::<Vec<_>>(),
        "ambient": field_to_file(&k.ambient),
    })
}

/// Every exact rational in a JSON value outside diagnostic sections.
pub fn collect_rationals(v: &Value, out: &mut Vec<Rational>) {
    match v {
        Value::String(s) if s.chars().next().is_some_and(|c| c.is_ascii_digit() || c == '-') => {
            if let Ok(q) = parse_rational(s) {
                out.push(q);
            }
        }
        Value::Array(a) => a.iter().for_each(|x| collect_rationals(x, out)),
        Value::Object(o) => o
            .iter()
            .filter(|(k, _)| k.as_str() != "diagnostics" && k.as_str() != "timing")
            .for_each(|(_, x)| collect_rationals(x, out)),
        _ => {}
    }
}
