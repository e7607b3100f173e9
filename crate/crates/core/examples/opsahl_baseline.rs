// Opsahl's degree/strength blend as a two-feature baseline, including the
// crossover point of two members.
//
// Run with: `cargo run --example opsahl_baseline`

use chat_owa::fuzzy::opsahl_degree;
use chat_owa::grid::Grid;
use chat_owa::ranking::opsahl_sweep;
use chat_owa::NodeId;

pub fn run_example() -> chat_owa::Result<f64> {
    // few partners, many statements vs. more partners, fewer statements
    let nodes = [NodeId::new("focused")?, NodeId::new("broad")?];
    let degree = [2.0, 3.0];
    let strength = [9.0, 4.0];

    let alphas: Grid = "0:1:0.125".parse()?;
    let trajectory = opsahl_sweep(&nodes, &degree, &strength, &alphas)?;
    println!("alpha   focused  broad   rank(focused)");
    for (k, &alpha) in alphas.points().iter().enumerate() {
        println!(
            "{alpha:<6.3}  {:>7.3}  {:>5.3}   {}",
            opsahl_degree(degree[0], strength[0], alpha),
            opsahl_degree(degree[1], strength[1], alpha),
            trajectory.nodes[0].ranks[k]
        );
    }
    // (1 - a) ln(2/3) + a ln(9/4) = 0
    let crossover = (3.0f64 / 2.0).ln() / (27.0f64 / 8.0).ln();
    println!("\nscores cross at alpha = {crossover:.6}");
    Ok(crossover)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
