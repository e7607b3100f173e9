// Degree per 10-minute window as OWA features: a member who is present in
// every window keeps a high rank as andness grows, a member who is very
// busy in a single window does not.
//
// Run with: `cargo run --example interval_degree`

use chat_owa::features::FeatureMatrix;
use chat_owa::features::feature_interval_degree;
use chat_owa::grid::Grid;
use chat_owa::ingest::{ChatRecord, SessionLog};
use chat_owa::ranking::sweep;
use chat_owa::{NodeId, RankTrajectory};

const MINUTE: i64 = 60_000;

fn record(t: i64, from: &str, to: &str) -> chat_owa::Result<ChatRecord> {
    Ok(ChatRecord {
        session: "hour".into(),
        t,
        from: NodeId::new(from)?,
        to: NodeId::new(to)?,
        text: "…".into(),
    })
}

pub fn run_example() -> chat_owa::Result<RankTrajectory> {
    let mut records = Vec::new();
    // steady talks to one partner in each of the six windows
    for w in 0..6 {
        records.push(record(w * 10 * MINUTE + MINUTE, "steady", &format!("P{w}"))?);
    }
    // burst addresses five partners, all within the first window
    for k in 0..5 {
        records.push(record(2 * MINUTE + k * 1000, "burst", &format!("Q{k}"))?);
    }
    records.push(record(60 * MINUTE, "P5", "steady")?);
    let log = SessionLog::new("hour", records)?;

    let columns = feature_interval_degree(&log, 10 * MINUTE)?;
    println!("{} windows of 10 minutes", columns.len());
    let nodes: Vec<NodeId> = columns[0].1.keys().cloned().collect();
    let raw = columns
        .into_iter()
        .map(|(name, col)| (name, nodes.iter().map(|n| col[n] as f64).collect()))
        .collect();
    let matrix = FeatureMatrix::from_columns(nodes, raw)?;

    let trajectory = sweep(&matrix, &"0,1,5".parse::<Grid>()?)?;
    println!("node    beta=0  beta=1  beta=5");
    for name in ["steady", "burst"] {
        let t = trajectory.get(&NodeId::new(name)?).expect("node");
        println!("{name:<7} {:>6}  {:>6}  {:>6}", t.ranks[0], t.ranks[1], t.ranks[2]);
    }
    Ok(trajectory)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
