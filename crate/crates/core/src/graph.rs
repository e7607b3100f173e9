//! Directed temporal multi-graphs and their weighted aggregation.
//!
//! A chat session becomes a [`TemporalMultiGraph`]: one time-stamped edge per
//! statement, parallel edges allowed. [`TemporalMultiGraph::aggregate`]
//! collapses the parallel edges into a [`WeightedDigraph`] whose arc weights
//! count the statements (and, alongside, the words) sent from one member to
//! another.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque participant identifier.
///
/// Ordering is natural: runs of ASCII digits compare by numeric value, so
/// `P7 < P10 < P33`. Identifiers that compare equal under that rule fall back
/// to byte order, which keeps the order total and consistent with `Eq`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::validation("node id must be non-empty"));
        }
        Ok(NodeId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for NodeId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        NodeId::new(value)
    }
}

impl TryFrom<&str> for NodeId {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        NodeId::new(value)
    }
}

impl From<NodeId> for String {
    fn from(id: NodeId) -> String {
        id.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Ord for NodeId {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NodeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let la = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let (da, db) = (trim_zeros(&a[..la]), trim_zeros(&b[..lb]));
                let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[la..];
                b = &b[lb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let lead = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[lead..]
}

/// One statement: `source` addressed `target` at `timestamp` (epoch ms).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub source: NodeId,
    pub target: NodeId,
    pub timestamp: i64,
    pub word_count: u64,
}

impl TemporalEdge {
    pub fn new(source: NodeId, target: NodeId, timestamp: i64, word_count: u64) -> Self {
        TemporalEdge {
            source,
            target,
            timestamp,
            word_count,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

/// Accumulates edges, keeping them ordered by `(timestamp, insertion index)`.
#[derive(Debug, Clone, Default)]
pub struct TemporalGraphBuilder {
    nodes: BTreeSet<NodeId>,
    edges: Vec<TemporalEdge>,
}

impl TemporalGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a node that may have no edges.
    pub fn add_node(&mut self, id: NodeId) -> &mut Self {
        self.nodes.insert(id);
        self
    }

    pub fn add_edge(&mut self, edge: TemporalEdge) -> Result<&mut Self> {
        if edge.timestamp < 0 {
            return Err(Error::validation(format!(
                "negative timestamp {} on edge {} -> {}",
                edge.timestamp, edge.source, edge.target
            )));
        }
        self.nodes.insert(edge.source.clone());
        self.nodes.insert(edge.target.clone());
        // Upper bound keeps equal timestamps in insertion order.
        let at = self
            .edges
            .partition_point(|e| e.timestamp <= edge.timestamp);
        self.edges.insert(at, edge);
        Ok(self)
    }

    pub fn build(self) -> TemporalMultiGraph {
        TemporalMultiGraph {
            nodes: self.nodes,
            edges: self.edges,
        }
    }
}

/// Frozen directed temporal multi-graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemporalMultiGraph {
    nodes: BTreeSet<NodeId>,
    edges: Vec<TemporalEdge>,
}

impl TemporalMultiGraph {
    pub fn builder() -> TemporalGraphBuilder {
        TemporalGraphBuilder::new()
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(first, last)` timestamps, or `None` for an edgeless graph.
    pub fn time_span(&self) -> Option<(i64, i64)> {
        Some((self.edges.first()?.timestamp, self.edges.last()?.timestamp))
    }

    /// Collapses parallel edges into weighted arcs.
    pub fn aggregate(&self) -> WeightedDigraph {
        let mut arcs: BTreeMap<NodeId, BTreeMap<NodeId, ArcWeight>> = BTreeMap::new();
        for e in &self.edges {
            let w = arcs
                .entry(e.source.clone())
                .or_default()
                .entry(e.target.clone())
                .or_default();
            w.statements += 1;
            w.words += e.word_count;
        }
        let mut in_neighbors: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
        for (u, targets) in &arcs {
            for v in targets.keys().filter(|v| *v != u) {
                in_neighbors.entry(v.clone()).or_default().insert(u.clone());
            }
        }
        WeightedDigraph {
            nodes: self.nodes.clone(),
            arcs,
            in_neighbors,
        }
    }
}

/// Which quantity an arc weight measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// Number of statements (multi-edge multiplicity).
    #[default]
    Statements,
    /// Total words over those statements.
    Words,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArcWeight {
    pub statements: u64,
    pub words: u64,
}

impl ArcWeight {
    pub fn get(&self, mode: WeightMode) -> u64 {
        match mode {
            WeightMode::Statements => self.statements,
            WeightMode::Words => self.words,
        }
    }
}

/// Weighted directed graph obtained by summing parallel temporal edges.
///
/// Self-loops keep their weight here (so the total multiplicity equals the
/// multi-edge count) but are ignored by degree and strength.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedDigraph {
    nodes: BTreeSet<NodeId>,
    arcs: BTreeMap<NodeId, BTreeMap<NodeId, ArcWeight>>,
    in_neighbors: BTreeMap<NodeId, BTreeSet<NodeId>>,
}

impl WeightedDigraph {
    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn weight(&self, source: &NodeId, target: &NodeId) -> Option<ArcWeight> {
        self.arcs.get(source)?.get(target).copied()
    }

    /// All arcs in `(source, target)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (&NodeId, &NodeId, ArcWeight)> + '_ {
        self.arcs
            .iter()
            .flat_map(|(u, ts)| ts.iter().map(move |(v, w)| (u, v, *w)))
    }

    /// Sum of statement multiplicities over all arcs, self-loops included.
    pub fn total_statements(&self) -> u64 {
        self.arcs().map(|(_, _, w)| w.statements).sum()
    }

    fn check(&self, node: &NodeId) -> Result<()> {
        if self.nodes.contains(node) {
            Ok(())
        } else {
            Err(Error::NodeNotFound(node.to_string()))
        }
    }

    fn out_arcs<'a>(&'a self, node: &'a NodeId) -> impl Iterator<Item = (&'a NodeId, &'a ArcWeight)> {
        self.arcs
            .get(node)
            .into_iter()
            .flat_map(|ts| ts.iter())
            .filter(move |(v, _)| *v != node)
    }

    /// Distinct out-neighbours plus distinct in-neighbours.
    pub fn degree_inplusout(&self, node: &NodeId) -> Result<usize> {
        self.check(node)?;
        let out = self.out_arcs(node).count();
        let inn = self.in_neighbors.get(node).map_or(0, BTreeSet::len);
        Ok(out + inn)
    }

    pub fn out_degree(&self, node: &NodeId) -> Result<usize> {
        self.check(node)?;
        Ok(self.out_arcs(node).count())
    }

    pub fn out_strength(&self, node: &NodeId) -> Result<u64> {
        self.out_strength_by(node, WeightMode::Statements)
    }

    pub fn out_strength_by(&self, node: &NodeId, mode: WeightMode) -> Result<u64> {
        self.check(node)?;
        Ok(self.out_arcs(node).map(|(_, w)| w.get(mode)).sum())
    }

    pub fn in_strength(&self, node: &NodeId) -> Result<u64> {
        self.in_strength_by(node, WeightMode::Statements)
    }

    pub fn in_strength_by(&self, node: &NodeId, mode: WeightMode) -> Result<u64> {
        self.check(node)?;
        let Some(sources) = self.in_neighbors.get(node) else {
            return Ok(0);
        };
        Ok(sources
            .iter()
            .filter_map(|u| self.weight(u, node))
            .map(|w| w.get(mode))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> NodeId {
        NodeId::new(s).unwrap()
    }

    fn edge(s: &str, t: &str, ts: i64, wc: u64) -> TemporalEdge {
        TemporalEdge::new(id(s), id(t), ts, wc)
    }

    fn graph(edges: &[(&str, &str, i64)]) -> TemporalMultiGraph {
        let mut b = TemporalMultiGraph::builder();
        for &(s, t, ts) in edges {
            b.add_edge(edge(s, t, ts, 1)).unwrap();
        }
        b.build()
    }

    #[test]
    fn natural_order() {
        let mut ids: Vec<NodeId> = ["P10", "P7", "Therapist", "P33", "P5", "P007", "P7a"]
            .into_iter()
            .map(id)
            .collect();
        ids.sort();
        let names: Vec<&str> = ids.iter().map(NodeId::as_str).collect();
        assert_eq!(names, ["P5", "P007", "P7", "P7a", "P10", "P33", "Therapist"]);
        assert_ne!(id("P007").cmp(&id("P7")), Ordering::Equal);
    }

    #[test]
    fn empty_node_id_rejected() {
        assert!(NodeId::new("").is_err());
    }

    #[test]
    fn add_edge_to_empty_graph() {
        let mut b = TemporalMultiGraph::builder();
        b.add_edge(edge("A", "B", 5, 3)).unwrap();
        let g = b.build();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn add_edge_keeps_time_order() {
        let g = graph(&[("A", "B", 7), ("B", "A", 3)]);
        let ts: Vec<i64> = g.edges().iter().map(|e| e.timestamp).collect();
        assert_eq!(ts, [3, 7]);
    }

    #[test]
    fn equal_timestamps_keep_insertion_order() {
        let g = graph(&[("A", "B", 4), ("C", "D", 2), ("B", "C", 4), ("D", "A", 4)]);
        let order: Vec<(&str, i64)> = g
            .edges()
            .iter()
            .map(|e| (e.source.as_str(), e.timestamp))
            .collect();
        assert_eq!(order, [("C", 2), ("A", 4), ("B", 4), ("D", 4)]);
    }

    #[test]
    fn negative_timestamp_rejected() {
        let mut b = TemporalMultiGraph::builder();
        let err = b.add_edge(edge("A", "B", -1, 0)).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn aggregate_counts_parallel_edges() {
        let g = graph(&[("A", "B", 1), ("A", "B", 2), ("B", "A", 3), ("A", "B", 4)]);
        let w = g.aggregate();
        assert_eq!(w.weight(&id("A"), &id("B")).unwrap().statements, 3);
        assert_eq!(w.weight(&id("B"), &id("A")).unwrap().statements, 1);
        assert_eq!(w.arcs().count(), 2);
        assert_eq!(w.degree_inplusout(&id("A")).unwrap(), 2);
    }

    #[test]
    fn aggregate_empty_graph() {
        let w = TemporalMultiGraph::default().aggregate();
        assert_eq!(w.arcs().count(), 0);
        assert_eq!(w.node_count(), 0);
    }

    // Three members: a temporal graph with repeated exchanges collapses to
    // directed arcs weighted by multiplicity.
    #[test]
    fn three_node_pipeline() {
        let g = graph(&[
            ("A", "B", 1),
            ("B", "A", 2),
            ("A", "B", 3),
            ("C", "A", 4),
            ("A", "C", 5),
            ("A", "B", 6),
            ("B", "C", 7),
        ]);
        let w = g.aggregate();
        let arcs: Vec<(&str, &str, u64)> = w
            .arcs()
            .map(|(u, v, a)| (u.as_str(), v.as_str(), a.statements))
            .collect();
        assert_eq!(
            arcs,
            [("A", "B", 3), ("A", "C", 1), ("B", "A", 1), ("B", "C", 1), ("C", "A", 1)]
        );
        assert_eq!(w.total_statements(), g.edge_count() as u64);
    }

    #[test]
    fn isolated_node_has_zero_degree() {
        let mut b = TemporalMultiGraph::builder();
        b.add_node(id("Z"));
        b.add_edge(edge("A", "B", 0, 0)).unwrap();
        let w = b.build().aggregate();
        assert_eq!(w.degree_inplusout(&id("Z")).unwrap(), 0);
        assert_eq!(w.out_strength(&id("Z")).unwrap(), 0);
    }

    #[test]
    fn unknown_node_is_not_found() {
        let w = graph(&[("A", "B", 0)]).aggregate();
        assert!(matches!(
            w.degree_inplusout(&id("Q")),
            Err(Error::NodeNotFound(_))
        ));
        assert!(matches!(w.out_strength(&id("Q")), Err(Error::NodeNotFound(_))));
    }

    #[test]
    fn star_degree_matches_neighbor_enumeration() {
        let mut edges = Vec::new();
        for i in 1..=9 {
            edges.push(("Hub".to_string(), format!("L{i}")));
        }
        for i in [2, 4, 6, 8] {
            edges.push((format!("L{i}"), "Hub".to_string()));
        }
        let mut b = TemporalMultiGraph::builder();
        for (k, (s, t)) in edges.iter().enumerate() {
            b.add_edge(edge(s, t, k as i64, 1)).unwrap();
        }
        let w = b.build().aggregate();

        let outs: BTreeSet<&String> = edges.iter().filter(|(s, _)| s == "Hub").map(|(_, t)| t).collect();
        let ins: BTreeSet<&String> = edges.iter().filter(|(_, t)| t == "Hub").map(|(s, _)| s).collect();
        assert_eq!(outs.len() + ins.len(), 13);
        assert_eq!(w.degree_inplusout(&id("Hub")).unwrap(), 13);
    }

    #[test]
    fn out_strength_sums_weights() {
        let w = graph(&[("A", "B", 0), ("A", "B", 1), ("A", "B", 2), ("A", "C", 3), ("A", "C", 4)])
            .aggregate();
        assert_eq!(w.out_strength(&id("A")).unwrap(), 5);
        assert_eq!(w.out_strength(&id("B")).unwrap(), 0);
        assert_eq!(w.in_strength(&id("C")).unwrap(), 2);
    }

    #[test]
    fn self_loops_stored_but_not_counted() {
        let w = graph(&[("A", "A", 0), ("A", "B", 1)]).aggregate();
        assert_eq!(w.weight(&id("A"), &id("A")).unwrap().statements, 1);
        assert_eq!(w.total_statements(), 2);
        assert_eq!(w.degree_inplusout(&id("A")).unwrap(), 1);
        assert_eq!(w.out_strength(&id("A")).unwrap(), 1);
        assert_eq!(w.in_strength(&id("A")).unwrap(), 0);
    }

    #[test]
    fn word_weight_mode() {
        let mut b = TemporalMultiGraph::builder();
        b.add_edge(edge("A", "B", 0, 4)).unwrap();
        b.add_edge(edge("A", "B", 1, 6)).unwrap();
        b.add_edge(edge("A", "C", 1, 0)).unwrap();
        let w = b.build().aggregate();
        assert_eq!(w.out_strength_by(&id("A"), WeightMode::Words).unwrap(), 10);
        assert_eq!(w.in_strength_by(&id("B"), WeightMode::Words).unwrap(), 10);
        // zero-word arcs still count as partners
        assert_eq!(w.degree_inplusout(&id("A")).unwrap(), 2);
    }
}
