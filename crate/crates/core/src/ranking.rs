//! Ranks from scores, and rank trajectories across a parameter sweep.
//!
//! Rank numbers run from `n` for the top node down to `1` for the bottom
//! one. Equal scores are ordered by [`NodeId`] so every grid point yields a
//! total order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{csv_writer, FeatureMatrix};
use crate::fuzzy::{opsahl_degree, owa, quantifier_weights, Quantifier};
use crate::graph::NodeId;
use crate::grid::Grid;

#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub parameter: f64,
    /// `(node, score, rank)`, best first.
    pub entries: Vec<(NodeId, f64, usize)>,
    /// Adjacent pairs in the ordering that had equal scores.
    pub ties: Vec<(NodeId, NodeId)>,
}

impl RankTable {
    pub fn rank_of(&self, node: &NodeId) -> Option<usize> {
        self.entries.iter().find(|(n, _, _)| n == node).map(|e| e.2)
    }

    pub fn score_of(&self, node: &NodeId) -> Option<f64> {
        self.entries.iter().find(|(n, _, _)| n == node).map(|e| e.1)
    }

    /// Nodes from top to bottom.
    pub fn order(&self) -> Vec<&NodeId> {
        self.entries.iter().map(|e| &e.0).collect()
    }
}

/// Sorts by score descending, then node ascending; the first node gets rank
/// `n`, the last rank `1`.
pub fn rank_nodes(parameter: f64, scores: &[(NodeId, f64)]) -> RankTable {
    let mut sorted: Vec<(NodeId, f64)> = scores.to_vec();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let n = sorted.len();
    let ties: Vec<(NodeId, NodeId)> = sorted
        .windows(2)
        .filter(|w| w[0].1 == w[1].1)
        .map(|w| (w[0].0.clone(), w[1].0.clone()))
        .collect();
    if !ties.is_empty() {
        log::debug!("{} score ties at parameter {parameter}, ordered by node id", ties.len());
    }
    RankTable {
        parameter,
        entries: sorted
            .into_iter()
            .enumerate()
            .map(|(i, (node, score))| (node, score, n - i))
            .collect(),
        ties,
    }
}

/// Which parameter a trajectory was swept over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    /// Quantifier exponent of the OWA weights.
    Beta,
    /// Opsahl degree/strength exponent.
    Alpha,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Beta => "beta",
            SweepParameter::Alpha => "alpha",
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeTrajectory {
    pub node: NodeId,
    /// Empty when read back from CSV, which stores ranks only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scores: Vec<f64>,
    pub ranks: Vec<usize>,
}

/// Per-node ranks over a strictly increasing parameter grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTrajectory {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
    pub nodes: Vec<NodeTrajectory>,
}

impl RankTrajectory {
    fn from_tables(parameter: SweepParameter, grid: &Grid, nodes: &[NodeId], tables: &[RankTable]) -> Self {
        let nodes = nodes
            .iter()
            .map(|node| NodeTrajectory {
                node: node.clone(),
                scores: tables.iter().map(|t| t.score_of(node).expect("ranked")).collect(),
                ranks: tables.iter().map(|t| t.rank_of(node).expect("ranked")).collect(),
            })
            .collect();
        RankTrajectory {
            parameter,
            grid: grid.points().to_vec(),
            nodes,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn get(&self, node: &NodeId) -> Option<&NodeTrajectory> {
        self.nodes.iter().find(|t| &t.node == node)
    }

    /// Checks grid order and that each column is a permutation of `1..=n`.
    pub fn validate(&self) -> Result<()> {
        Grid::new(self.grid.clone()).map_err(|e| Error::validation(e.to_string()))?;
        let n = self.nodes.len();
        for t in &self.nodes {
            if t.ranks.len() != self.grid.len() {
                return Err(Error::validation(format!(
                    "node `{}` has {} ranks for {} grid points",
                    t.node,
                    t.ranks.len(),
                    self.grid.len()
                )));
            }
            if !t.scores.is_empty() && t.scores.len() != self.grid.len() {
                return Err(Error::validation(format!("node `{}` has a ragged score row", t.node)));
            }
        }
        for k in 0..self.grid.len() {
            let mut seen = vec![false; n];
            for t in &self.nodes {
                let r = t.ranks[k];
                if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                    return Err(Error::validation(format!(
                        "ranks at {}={} are not a permutation of 1..={n}",
                        self.parameter, self.grid[k]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Maps rank `r` to `n + 1 - r`, so the top node is 1.
    pub fn inverted(&self) -> RankTrajectory {
        let n = self.nodes.len();
        let mut out = self.clone();
        for t in &mut out.nodes {
            for r in &mut t.ranks {
                *r = n + 1 - *r;
            }
        }
        out
    }

    /// Header `node,<param>_<p1>,...`; one row of integer ranks per node.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        let mut header = vec!["node".to_string()];
        header.extend(self.grid.iter().map(|p| format!("{}_{p}", self.parameter)));
        w.write_record(&header)?;
        for t in &self.nodes {
            let mut rec = vec![t.node.to_string()];
            rec.extend(t.ranks.iter().map(usize::to_string));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<RankTrajectory> {
        let mut rdr = csv::ReaderBuilder::new().from_reader(input);
        let header = rdr.headers()?.clone();
        if header.get(0) != Some("node") {
            return Err(Error::validation("trajectory must start with a `node` column"));
        }
        let mut parameter = None;
        let mut grid = Vec::new();
        for col in header.iter().skip(1) {
            let (name, value) = col
                .split_once('_')
                .ok_or_else(|| Error::validation(format!("bad trajectory column `{col}`")))?;
            let p = match name {
                "beta" => SweepParameter::Beta,
                "alpha" => SweepParameter::Alpha,
                _ => return Err(Error::validation(format!("bad trajectory column `{col}`"))),
            };
            if parameter.is_some_and(|q| q != p) {
                return Err(Error::validation("trajectory mixes beta and alpha columns"));
            }
            parameter = Some(p);
            grid.push(
                value
                    .parse::<f64>()
                    .map_err(|_| Error::validation(format!("bad grid value in `{col}`")))?,
            );
        }
        let parameter =
            parameter.ok_or_else(|| Error::validation("trajectory has no grid columns"))?;
        let mut nodes = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            let node = NodeId::new(&rec[0]).map_err(|e| Error::Line {
                line,
                message: e.to_string(),
            })?;
            let ranks = rec
                .iter()
                .skip(1)
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::Line {
                        line,
                        message: format!("`{s}` is not a rank"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            nodes.push(NodeTrajectory {
                node,
                scores: Vec::new(),
                ranks,
            });
        }
        let t = RankTrajectory {
            parameter,
            grid,
            nodes,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(input: R) -> Result<RankTrajectory> {
        let t: RankTrajectory = serde_json::from_reader(input)?;
        t.validate()?;
        Ok(t)
    }
}

/// OWA scores of every row of `fm` under the `Q(r) = r^beta` weights.
pub fn owa_scores(fm: &FeatureMatrix, beta: f64) -> Result<Vec<(NodeId, f64)>> {
    let w = quantifier_weights(Quantifier::new(beta)?, fm.feature_count())?;
    fm.nodes()
        .iter()
        .zip(fm.normalized_rows())
        .map(|(n, row)| Ok((n.clone(), owa(row, &w)?)))
        .collect()
}

/// Scores and ranks every node at each beta in the grid.
pub fn sweep(fm: &FeatureMatrix, betas: &Grid) -> Result<RankTrajectory> {
    if fm.node_count() == 0 {
        return Err(Error::validation("cannot rank an empty feature matrix"));
    }
    let tables = betas
        .points()
        .par_iter()
        .map(|&beta| Ok(rank_nodes(beta, &owa_scores(fm, beta)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RankTrajectory::from_tables(SweepParameter::Beta, betas, fm.nodes(), &tables))
}

/// Ranks by Opsahl's `deg * (s / deg)^alpha` at each alpha.
pub fn opsahl_sweep(
    nodes: &[NodeId],
    degree: &[f64],
    strength: &[f64],
    alphas: &Grid,
) -> Result<RankTrajectory> {
    if degree.len() != nodes.len() || strength.len() != nodes.len() {
        return Err(Error::Dimension {
            expected: nodes.len(),
            actual: degree.len().min(strength.len()),
        });
    }
    if nodes.is_empty() {
        return Err(Error::validation("cannot rank an empty node set"));
    }
    if let Some(d) = degree.iter().chain(strength).find(|d| d.is_nan() || **d < 0.0) {
        return Err(Error::domain(format!("degree and strength must be >= 0, got {d}")));
    }
    let tables: Vec<RankTable> = alphas
        .points()
        .iter()
        .map(|&alpha| {
            let scores: Vec<(NodeId, f64)> = nodes
                .iter()
                .zip(degree.iter().zip(strength))
                .map(|(n, (&d, &s))| (n.clone(), opsahl_degree(d, s, alpha)))
                .collect();
            rank_nodes(alpha, &scores)
        })
        .collect();
    Ok(RankTrajectory::from_tables(SweepParameter::Alpha, alphas, nodes, &tables))
}

/// Ranks as a map, for convenience in tests and examples.
pub fn rank_map(table: &RankTable) -> BTreeMap<NodeId, usize> {
    table.entries.iter().map(|(n, _, r)| (n.clone(), *r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> NodeId {
        NodeId::new(s).unwrap()
    }

    #[test]
    fn two_nodes() {
        let t = rank_nodes(0.0, &[(id("A"), 0.9), (id("B"), 0.1)]);
        assert_eq!(t.rank_of(&id("A")), Some(2));
        assert_eq!(t.rank_of(&id("B")), Some(1));
        assert!(t.ties.is_empty());
    }

    #[test]
    fn equal_scores_fall_back_to_node_order() {
        let t = rank_nodes(1.0, &[(id("C"), 0.5), (id("A"), 0.5), (id("B"), 0.5)]);
        assert_eq!(t.order(), [&id("A"), &id("B"), &id("C")]);
        assert_eq!(rank_map(&t)[&id("A")], 3);
        assert_eq!(t.ties.len(), 2);
    }

    #[test]
    fn single_feature_ranking_is_constant() {
        let fm = FeatureMatrix::from_columns(
            vec![id("A"), id("B"), id("C")],
            vec![("x".into(), vec![3.0, 1.0, 2.0])],
        )
        .unwrap();
        let t = sweep(&fm, &"0:5:0.5".parse().unwrap()).unwrap();
        for n in &t.nodes {
            assert!(n.ranks.windows(2).all(|w| w[0] == w[1]));
        }
        assert_eq!(t.get(&id("A")).unwrap().ranks[0], 3);
    }

    #[test]
    fn opsahl_endpoints_and_crossover() {
        let nodes = [id("n1"), id("n2")];
        let t = opsahl_sweep(&nodes, &[2.0, 3.0], &[9.0, 4.0], &"0,1".parse().unwrap()).unwrap();
        assert_eq!(t.get(&nodes[0]).unwrap().ranks, [1, 2]);
        assert_eq!(t.get(&nodes[1]).unwrap().ranks, [2, 1]);
        assert_eq!(t.parameter, SweepParameter::Alpha);
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let fm = crate::fixture::table1_matrix();
        let t = sweep(&fm, &"0,1,5".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("node,beta_0,beta_1,beta_5\nTherapist,33,33,33\n"));
        let back = RankTrajectory::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.grid, t.grid);
        for (a, b) in back.nodes.iter().zip(&t.nodes) {
            assert_eq!((&a.node, &a.ranks), (&b.node, &b.ranks));
        }

        let dup = "node,beta_0\nA,1\nB,1\n";
        assert!(RankTrajectory::read_csv(dup.as_bytes()).is_err());
        let unordered = "node,beta_1,beta_0\nA,1\nB,2\n";
        assert!(RankTrajectory::read_csv(unordered.as_bytes()).is_err());
        let mixed = "node,beta_0,alpha_1\nA,1,1\n";
        assert!(RankTrajectory::read_csv(mixed.as_bytes()).is_err());
        assert!(RankTrajectory::read_csv("node,beta_0\nA,x\n".as_bytes()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let fm = crate::fixture::table1_matrix();
        let t = sweep(&fm, &"0,2".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        assert_eq!(RankTrajectory::read_json(buf.as_slice()).unwrap(), t);
    }

    #[test]
    fn inversion() {
        let t = rank_nodes(0.0, &[(id("A"), 0.9), (id("B"), 0.1)]);
        let traj = RankTrajectory::from_tables(
            SweepParameter::Beta,
            &Grid::new(vec![0.0]).unwrap(),
            &[id("A"), id("B")],
            &[t],
        );
        assert_eq!(traj.inverted().get(&id("A")).unwrap().ranks, [1]);
    }
}
