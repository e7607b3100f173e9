// Quantifier-generated OWA weights, their orness, and the aggregate of one
// member's feature row as the operator moves from "or" to "and".
//
// Run with: `cargo run --example owa_weights`

use chat_owa::fuzzy::{orness_discrete, owa, quantifier_weights, Quantifier};

pub fn run_example() -> chat_owa::Result<Vec<f64>> {
    let row = [0.196, 0.127, 0.056, 0.104];
    println!("feature row {row:?}\n");
    println!(" beta  orness  andness  discrete  weights                              owa");
    let mut scores = Vec::new();
    for beta in [0.0, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let q = Quantifier::new(beta)?;
        let w = quantifier_weights(q, row.len())?;
        let score = owa(&row, &w)?;
        let ws: Vec<String> = w.as_slice().iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{beta:>5}  {:.4}  {:.4}   {:.4}    [{}]  {score:.5}",
            q.orness(),
            q.andness(),
            orness_discrete(&w)?,
            ws.join(", ")
        );
        scores.push(score);
    }
    Ok(scores)
}

fn main() -> chat_owa::Result<()> {
    run_example().map(|_| ())
}
