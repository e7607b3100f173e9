//! Published normalized activity features for 33 of the 52 members of one
//! group-therapy chat session (the top ranks by normalized degree).
//!
//! Columns are `a1` (degree), `a2` (out-strength), `a3` (words) and `a4`
//! (reaction time), already min-max normalized over the full session.

use crate::error::Result;
use crate::features::FeatureMatrix;
use crate::graph::NodeId;

/// `(rank by degree, node, [a1, a2, a3, a4])`.
pub const TABLE1: [(usize, &str, [f64; 4]); 33] = [
    (52, "Therapist", [1.0, 1.0, 1.0, 1.0]),
    (51, "P6", [0.588, 0.423, 0.196, 0.407]),
    (50, "P1", [0.51, 0.276, 0.224, 0.257]),
    (49, "P36", [0.49, 0.265, 0.168, 0.249]),
    (48, "P37", [0.451, 0.217, 0.145, 0.2]),
    (47, "P11", [0.431, 0.229, 0.204, 0.205]),
    (46, "P22", [0.431, 0.044, 0.064, 0.037]),
    (45, "P3", [0.392, 0.116, 0.042, 0.109]),
    (44, "P30", [0.392, 0.104, 0.136, 0.105]),
    (43, "P39", [0.373, 0.161, 0.145, 0.151]),
    (42, "P27", [0.333, 0.033, 0.02, 0.032]),
    (41, "P24", [0.314, 0.061, 0.048, 0.059]),
    (40, "P28", [0.314, 0.01, 0.008, 0.011]),
    (39, "P41", [0.314, 0.092, 0.073, 0.083]),
    (38, "P5", [0.294, 0.183, 0.152, 0.173]),
    (37, "P10", [0.294, 0.031, 0.044, 0.031]),
    (36, "P18", [0.294, 0.182, 0.167, 0.168]),
    (35, "P23", [0.294, 0.043, 0.027, 0.043]),
    (34, "P25", [0.294, 0.091, 0.066, 0.09]),
    (33, "P4", [0.275, 0.102, 0.139, 0.096]),
    (32, "P16", [0.255, 0.033, 0.056, 0.028]),
    (31, "P14", [0.235, 0.043, 0.037, 0.039]),
    (30, "P20", [0.235, 0.024, 0.014, 0.02]),
    (29, "P15", [0.216, 0.034, 0.03, 0.035]),
    (28, "P7", [0.196, 0.127, 0.056, 0.104]),
    (27, "P33", [0.196, 0.003, 0.003, 0.003]),
    (26, "P51", [0.196, 0.063, 0.04, 0.053]),
    (25, "P17", [0.176, 0.0, 0.0, 0.0]),
    (24, "P42", [0.176, 0.027, 0.02, 0.026]),
    (23, "P8", [0.157, 0.022, 0.024, 0.02]),
    (22, "P31", [0.157, 0.003, 0.004, 0.002]),
    (21, "P35", [0.157, 0.002, 0.003, 0.003]),
    (20, "P43", [0.157, 0.004, 0.006, 0.004]),
];

/// Names accepted by `--fixture`.
pub const FIXTURES: [&str; 1] = ["table1"];

/// The fixture as a normalized feature matrix, rows in published order.
pub fn table1_matrix() -> FeatureMatrix {
    let nodes = TABLE1
        .iter()
        .map(|(_, n, _)| NodeId::new(*n).expect("fixture id"))
        .collect();
    let names = ["a1", "a2", "a3", "a4"].map(String::from).to_vec();
    let rows = TABLE1.iter().map(|(_, _, r)| r.to_vec()).collect();
    FeatureMatrix::from_normalized_rows(nodes, names, rows).expect("fixture is normalized")
}

pub fn load(name: &str) -> Result<FeatureMatrix> {
    match name {
        "table1" => Ok(table1_matrix()),
        other => Err(crate::Error::Usage(format!(
            "unknown fixture `{other}` (available: {})",
            FIXTURES.join(", ")
        ))),
    }
}
