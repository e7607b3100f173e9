// Render the fixture's rank trajectories as an SVG bump chart with three
// highlighted members.
//
// Run with: `cargo run --example rank_plot -- target/ranks.svg`

use chat_owa::fixture::table1_matrix;
use chat_owa::grid::DEFAULT_BETAS;
use chat_owa::plot::{render_svg, PlotOptions};
use chat_owa::ranking::sweep;
use chat_owa::NodeId;

pub fn run_example() -> chat_owa::Result<String> {
    let trajectory = sweep(&table1_matrix(), &DEFAULT_BETAS.parse()?)?;
    let highlight = ["P7", "P17", "P28"]
        .into_iter()
        .map(NodeId::new)
        .collect::<chat_owa::Result<_>>()?;
    let opts = PlotOptions {
        highlight,
        title: Some("Rank by OWA score, beta in [0, 5]".into()),
        ..PlotOptions::default()
    };
    Ok(render_svg(&trajectory, &opts))
}

fn main() -> chat_owa::Result<()> {
    let svg = run_example()?;
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, svg)?;
            println!("wrote {path}");
        }
        None => print!("{svg}"),
    }
    Ok(())
}
