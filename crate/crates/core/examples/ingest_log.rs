// Parse a JSON-lines chat log, trim greeting and farewell records and build
// the session graph.
//
// Run with: `cargo run --example ingest_log`

use chat_owa::ingest::{parse_log, ParseMode};

const LOG: &str = r#"{"session":"demo","t":"2024-03-01T18:00:00Z","from":"Therapist","to":"P1","text":"Good evening everyone"}
{"session":"demo","t":"2024-03-01T18:00:20Z","from":"P1","to":"Therapist","text":"hi"}
{"session":"demo","t":"2024-03-01T18:01:05Z","from":"P2","to":"Therapist","text":"hello, rough week"}
{"session":"demo","t":"2024-03-01T18:01:40Z","from":"Therapist","to":"P2","text":"Tell us about it"}
{"session":"demo","t":"2024-03-01T18:03:10Z","from":"P2","to":"Therapist","text":"work was hard and I slept badly"}
{"session":"demo","t":"2024-03-01T18:03:10Z","from":"P1","to":"P2","text":"same here"}
{"session":"demo","t":"2024-03-01T18:04:00Z","from":"P3","to":"P2","text":"sorry to hear"}
{"session":"demo","t":1709316300000,"from":"P2","to":"P3","text":"thanks"}
{"session":"demo","t":"2024-03-01T18:06:00Z","from":"P2"}
{"session":"demo","t":"2024-03-01T18:59:00Z","from":"Therapist","to":"P1","text":"see you next week"}
"#;

pub fn run_example() -> chat_owa::Result<usize> {
    let parsed = parse_log(LOG.as_bytes(), ParseMode::Lenient)?;
    for skipped in &parsed.skipped {
        println!("skipped line {}: {}", skipped.line, skipped.message);
    }
    let session = &parsed.sessions["demo"];
    println!("session `{}`: {} records", session.session(), session.len());

    let graph = session.build_graph();
    let (first, last) = graph.time_span().unwrap_or_default();
    println!(
        "graph: nodes={} edges={} span={}s",
        graph.node_count(),
        graph.edge_count(),
        (last - first) / 1000
    );

    let trimmed = session.trim_boilerplate(2);
    println!("\nafter trimming 2 records at each end:");
    for r in trimmed.records() {
        println!("  {}  {} -> {}: {}", r.t, r.from, r.to, r.text);
    }
    Ok(trimmed.len())
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
