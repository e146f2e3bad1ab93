use serde::Serialize;
use serde_json::{Map, Value};

/// Result of one subcommand before rendering.
pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Map<String, Value>,
    /// False when a residual is above its tolerance; maps to exit code 1.
    pub verified: bool,
}

impl Outcome {
    pub fn new(inputs: Value, outputs: impl Serialize) -> Self {
        Outcome { inputs, outputs: to_value(outputs), residuals: Map::new(), verified: true }
    }

    pub fn residual(mut self, name: &str, value: f64, tol: f64) -> Self {
        self.residuals.insert(name.into(), Value::from(value));
        if !(value <= tol) {
            self.verified = false;
        }
        self
    }

    /// Records a value that does not take part in the pass/fail decision.
    pub fn info(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.into(), Value::from(value));
        self
    }

    pub fn require(mut self, ok: bool) -> Self {
        self.verified &= ok;
        self
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Map<String, Value>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::String(s) => out.push((prefix.into(), s.clone())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

impl Report {
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render_table(&self) -> String {
        let mut rows = vec![("command".to_string(), self.command.clone())];
        flatten("inputs", &self.inputs, &mut rows);
        flatten("outputs", &self.outputs, &mut rows);
        flatten("residuals", &Value::Object(self.residuals.clone()), &mut rows);
        rows.push(("verified".into(), self.verified.to_string()));
        if let Some(t) = self.wall_time_ms {
            rows.push(("wall_time_ms".into(), format!("{t:.3}")));
        }
        let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:w$}  {v}\n")).collect()
    }
}
