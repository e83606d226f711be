//! Runs the HTTP service on an ephemeral port and walks through one dubbing
//! loop: upload material, submit an attempt, fetch the notation.
//!
//! ```text
//! cargo run --example service_roundtrip
//! ```

use rhythm_coach::ingest::{encode_wav, write_alignment};
use rhythm_coach::pipeline::Analyzer;
use rhythm_coach::service::{spawn, AppState, Store};
use rhythm_coach::synth::{self, Voice};
use serde_json::Value;

const BOUNDARY: &str = "rhythm-example-boundary";

fn form(parts: &[(&str, &[u8])]) -> Vec<u8> {
    let mut body = Vec::new();
    for (name, data) in parts {
        body.extend_from_slice(
            format!("--{BOUNDARY}\r\nContent-Disposition: form-data; name=\"{name}\"; filename=\"{name}\"\r\n\r\n").as_bytes(),
        );
        body.extend_from_slice(data);
        body.extend_from_slice(b"\r\n");
    }
    body.extend_from_slice(format!("--{BOUNDARY}--\r\n").as_bytes());
    body
}

fn post(url: &str, parts: &[(&str, &[u8])]) -> Result<Value, Box<dyn std::error::Error>> {
    let resp = ureq::post(url)
        .set("Content-Type", &format!("multipart/form-data; boundary={BOUNDARY}"))
        .send_bytes(&form(parts))?;
    Ok(serde_json::from_str(&resp.into_string()?)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store_dir = std::env::temp_dir().join(format!("rhythm-example-{}", std::process::id()));
    let state = AppState::new(Store::open(&store_dir)?, Analyzer::default());
    let service = spawn(state, "127.0.0.1:0")?;
    println!("service on http://{} with store {}", service.addr, store_dir.display());

    let script = [("so", false), ("take", true), ("the", false), ("chance", true), ("when", false), ("it", false), ("comes", true), ("now", true)];
    let bursts = synth::on_grid(&script, 0.4, 0.33, &Voice::default());
    let wav = encode_wav(&synth::render(&bursts, 3.4));
    let tsv = write_alignment(&synth::rows(&bursts, false));

    let material = post(
        &service.url("/materials"),
        &[("audio", &wav), ("alignment", tsv.as_bytes()), ("title", b"example")],
    )?;
    let id = material["material_id"].as_str().unwrap_or_default();
    println!("material {id}: {} clip(s)", material["clips"].as_array().map_or(0, Vec::len));

    let attempt = post(
        &service.url(&format!("/materials/{id}/clips/0/attempts")),
        &[("audio", &wav), ("alignment", tsv.as_bytes())],
    )?;
    println!("attempt {}: all green = {}", attempt["attempt_id"], attempt["report"]["all_green"]);
    for item in attempt["report"]["feedback"].as_array().into_iter().flatten() {
        println!("  waterfall {}: {} {}", item["waterfall_id"], item["verdict"], item["messages"]);
    }

    let svg = ureq::get(&service.url(&format!("/materials/{id}/clips/0/notation.svg"))).call()?.into_string()?;
    println!("notation.svg: {} bytes, {} notes", svg.len(), svg.matches("<circle").count());

    drop(service);
    std::fs::remove_dir_all(&store_dir)?;
    Ok(())
}
