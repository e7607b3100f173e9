// Sweep beta over the embedded 33-member fixture and follow the members
// whose rank depends most on the operator's andness.
//
// Run with: `cargo run --example table1_sweep`

use chat_owa::fixture::table1_matrix;
use chat_owa::grid::{Grid, DEFAULT_BETAS};
use chat_owa::ranking::sweep;
use chat_owa::{NodeId, RankTrajectory};

pub fn run_example() -> chat_owa::Result<RankTrajectory> {
    let matrix = table1_matrix();
    let betas: Grid = DEFAULT_BETAS.parse()?;
    let trajectory = sweep(&matrix, &betas)?;

    println!("rank {} is the top of {} members\n", matrix.node_count(), matrix.node_count());
    println!("node       beta=0  beta=1  beta=5   score@5");
    let at = |b: f64| betas.points().iter().position(|p| *p == b).expect("grid point");
    for name in ["Therapist", "P6", "P7", "P17", "P28"] {
        let t = trajectory.get(&NodeId::new(name)?).expect("fixture node");
        println!(
            "{name:<10} {:>6}  {:>6}  {:>6}   {:.6}",
            t.ranks[at(0.0)],
            t.ranks[at(1.0)],
            t.ranks[at(5.0)],
            t.scores[at(5.0)]
        );
    }
    Ok(trajectory)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
