// Build a small temporal multi-graph by hand and aggregate it into a
// weighted digraph.
//
// Run with: `cargo run --example temporal_graph`

use chat_owa::graph::{TemporalEdge, TemporalMultiGraph, WeightMode};
use chat_owa::{NodeId, WeightedDigraph};

pub fn run_example() -> chat_owa::Result<WeightedDigraph> {
    let id = NodeId::new;
    // (from, to, time in ms, words)
    let statements = [
        ("A", "B", 1_000, 4),
        ("B", "A", 2_500, 2),
        ("A", "B", 3_000, 7),
        ("C", "A", 3_000, 1),
        ("A", "C", 6_200, 3),
        ("A", "B", 8_000, 5),
        ("B", "C", 9_100, 6),
    ];
    let mut builder = TemporalMultiGraph::builder();
    for (from, to, t, words) in statements {
        builder.add_edge(TemporalEdge::new(id(from)?, id(to)?, t, words))?;
    }
    let temporal = builder.build();
    println!("temporal graph: {} nodes, {} time-stamped edges", temporal.node_count(), temporal.edge_count());
    for e in temporal.edges() {
        println!("  t={:>5}  {} -> {}  ({} words)", e.timestamp, e.source, e.target, e.word_count);
    }

    let weighted = temporal.aggregate();
    println!("\nweighted digraph (statements / words):");
    for (u, v, w) in weighted.arcs() {
        println!("  {u} -> {v}: {} / {}", w.statements, w.words);
    }

    println!("\nnode  degree  out-strength  in-strength  words-out");
    for n in weighted.nodes() {
        println!(
            "{:<5} {:>6}  {:>12}  {:>11}  {:>9}",
            n,
            weighted.degree_inplusout(n)?,
            weighted.out_strength(n)?,
            weighted.in_strength(n)?,
            weighted.out_strength_by(n, WeightMode::Words)?
        );
    }
    Ok(weighted)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
