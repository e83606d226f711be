#![allow(dead_code)]

pub mod corpus;
pub mod fixtures;
pub mod oracles;

use std::io::Read;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use rhythm_coach::pipeline::Analyzer;
use rhythm_coach::service::{spawn, AppState, RunningService, Store};
use serde_json::Value;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Validator for one definition of the published API schema.
pub struct SchemaCheck {
    schema: jsonschema::JSONSchema,
}

impl SchemaCheck {
    pub fn new(def: &str) -> Self {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema/api.schema.json");
        let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json");
        doc["$ref"] = Value::String(format!("#/$defs/{def}"));
        let schema = jsonschema::JSONSchema::options()
            .with_draft(jsonschema::Draft::Draft202012)
            .compile(&doc)
            .expect("schema compiles");
        Self { schema }
    }

    pub fn check(&self, value: &Value) -> Result<(), String> {
        self.schema.validate(value).map_err(|errors| {
            errors
                .map(|e| format!("{} at {}", e, e.instance_path))
                .collect::<Vec<_>>()
                .join("; ")
        })
    }
}

/// A service on an ephemeral port backed by a temporary store.
pub struct TestServer {
    pub service: RunningService,
    pub state: Arc<AppState>,
    pub dir: tempfile::TempDir,
}

impl TestServer {
    pub fn start() -> Self {
        Self::with_analyzer(Analyzer::default())
    }

    pub fn with_analyzer(analyzer: Analyzer) -> Self {
        let dir = tempfile::tempdir().expect("tempdir");
        let state = AppState::new(Store::open(dir.path()).expect("store"), analyzer);
        let service = spawn(state.clone(), "127.0.0.1:0").expect("spawn");
        Self { service, state, dir }
    }

    pub fn url(&self, path: &str) -> String {
        self.service.url(path)
    }
}

pub struct Reply {
    pub status: u16,
    pub content_type: String,
    pub body: Vec<u8>,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or_else(|e| panic!("status {} body is not JSON: {e}", self.status))
    }

    pub fn text(&self) -> String {
        String::from_utf8_lossy(&self.body).into_owned()
    }
}

fn agent() -> ureq::Agent {
    ureq::AgentBuilder::new().timeout(Duration::from_secs(120)).build()
}

fn finish(result: Result<ureq::Response, ureq::Error>) -> Reply {
    let resp = match result {
        Ok(r) => r,
        Err(ureq::Error::Status(_, r)) => r,
        Err(e) => panic!("transport error: {e}"),
    };
    let status = resp.status();
    let content_type = resp.content_type().to_string();
    let mut body = Vec::new();
    resp.into_reader().read_to_end(&mut body).expect("body");
    Reply {
        status,
        content_type,
        body,
    }
}


pub fn get(url: &str) -> Reply {
    finish(agent().get(url).call())
}

pub fn post_raw(url: &str, content_type: &str, body: &[u8]) -> Reply {
    finish(agent().post(url).set("Content-Type", content_type).send_bytes(body))
}

pub fn post_form(url: &str, parts: &[(&str, &[u8])]) -> Reply {
    let (content_type, body) = multipart(parts);
    post_raw(url, &content_type, &body)
}

/// `multipart/form-data` body with one part per (name, bytes).
pub fn multipart(parts: &[(&str, &[u8])]) -> (String, Vec<u8>) {
    let boundary = "rhythm-test-boundary-7MA4YWxkTrZu0gW";
    let mut body = Vec::new();
    for (name, data) in parts {
        body.extend_from_slice(format!("--{boundary}\r\n").as_bytes());
        let disposition = if *name == "audio" {
            format!("Content-Disposition: form-data; name=\"{name}\"; filename=\"{name}.wav\"\r\nContent-Type: audio/wav\r\n\r\n")
        } else {
            format!("Content-Disposition: form-data; name=\"{name}\"\r\n\r\n")
        };
        body.extend_from_slice(disposition.as_bytes());
        body.extend_from_slice(data);
        body.extend_from_slice(b"\r\n");
    }
    body.extend_from_slice(format!("--{boundary}--\r\n").as_bytes());
    (format!("multipart/form-data; boundary={boundary}"), body)
}
