use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Everything a subcommand produces, before formatting.
#[derive(Debug, Default)]
pub struct Report {
    pub params: Map<String, Value>,
    pub result: Value,
    pub assertions: Vec<Assertion>,
    pub text: String,
    pub csv: Option<String>,
}

impl Report {
    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: Option<String>) {
        self.assertions.push(Assertion {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn failed(&self) -> bool {
        self.assertions.iter().any(|a| a.status == Status::Fail)
    }

    pub fn to_json(&self, command: &str, timing_ms: Option<f64>) -> String {
        #[derive(Serialize)]
        struct Envelope<'a> {
            tool_version: &'a str,
            command: &'a str,
            params: &'a Map<String, Value>,
            result: &'a Value,
            assertions: &'a [Assertion],
            timing_ms: Option<f64>,
        }
        let env = Envelope {
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            params: &self.params,
            result: &self.result,
            assertions: &self.assertions,
            timing_ms,
        };
        serde_json::to_string_pretty(&env).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.text.clone();
        for a in &self.assertions {
            let tag = match a.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out += &format!("[{tag}] {}", a.name);
            if let Some(w) = &a.witness {
                out += &format!(" ({w})");
            }
            out.push('\n');
        }
        out
    }
}
