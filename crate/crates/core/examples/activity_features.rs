// Extract the four activity features from a synthetic session and print
// the raw and normalized matrices.
//
// Run with: `cargo run --example activity_features`

use std::io;

use chat_owa::features::FeatureExtractor;
use chat_owa::synth::{generate, SessionSpec};
use chat_owa::FeatureMatrix;

pub fn run_example() -> chat_owa::Result<FeatureMatrix> {
    let (log, truth) = generate(&SessionSpec {
        members: 6,
        records: 400,
        ..SessionSpec::default()
    });
    println!("{} statements from {} members", truth.records, truth.members.len());

    let matrix = FeatureExtractor::default().extract(&log)?;
    println!("\nraw (a4 in milliseconds):");
    matrix.write_csv(io::stdout().lock(), false)?;
    println!("\nnormalized:");
    matrix.write_csv(io::stdout().lock(), true)?;
    Ok(matrix)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
