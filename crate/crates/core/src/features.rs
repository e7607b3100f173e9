//! Per-member activity features and min-max normalization.
//!
//! The built-in features are
//!
//! | name | feature                                   | unit         |
//! |------|-------------------------------------------|--------------|
//! | `a1` | distinct partners (in- plus out-degree)   | count        |
//! | `a2` | statements sent (out-strength)            | count        |
//! | `a3` | words submitted                           | words        |
//! | `a4` | summed reaction time of the other members | milliseconds |
//!
//! Columns are computed independently and assembled by name into a
//! [`FeatureMatrix`], so externally computed columns can sit next to them.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::ingest::{word_count, SessionLog};

/// Default number of records trimmed at each end of a session before the
/// reaction-time feature is computed.
pub const DEFAULT_TRIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    Degree,
    OutStrength,
    WordTotal,
    ReactionTime,
}

impl Feature {
    pub const ALL: [Feature; 4] = [
        Feature::Degree,
        Feature::OutStrength,
        Feature::WordTotal,
        Feature::ReactionTime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Degree => "a1",
            Feature::OutStrength => "a2",
            Feature::WordTotal => "a3",
            Feature::ReactionTime => "a4",
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a1" | "degree" => Feature::Degree,
            "a2" | "strength" | "out_strength" => Feature::OutStrength,
            "a3" | "words" => Feature::WordTotal,
            "a4" | "reaction" | "reaction_time" => Feature::ReactionTime,
            other => return Err(Error::Usage(format!("unknown feature `{other}`"))),
        })
    }
}

/// Nodes in the graph, in node order, paired with a computed value.
pub type Column = Vec<(NodeId, f64)>;

/// a1: in- plus out-degree for every node.
pub fn feature_degree(g: &WeightedDigraph) -> Column {
    g.nodes()
        .iter()
        .map(|n| {
            let d = g.degree_inplusout(n).expect("node from graph");
            (n.clone(), d as f64)
        })
        .collect()
}

/// a2: statements sent.
pub fn feature_out_strength(g: &WeightedDigraph) -> Column {
    g.nodes()
        .iter()
        .map(|n| {
            let s = g.out_strength(n).expect("node from graph");
            (n.clone(), s as f64)
        })
        .collect()
}

/// a3: words submitted, over every member appearing in the log.
pub fn feature_word_total(log: &SessionLog) -> BTreeMap<NodeId, u64> {
    let mut totals = members(log);
    for r in log.records() {
        *totals.get_mut(&r.from).expect("member") += word_count(&r.text);
    }
    totals
}

/// a4: for every record of member `i` in the trimmed session, the gap to
/// the next record sent by somebody else. Records never followed by another
/// member contribute nothing.
///
/// Members of the full session that fall entirely inside the trimmed
/// margins are reported with zero.
pub fn feature_reaction_time(log: &SessionLog, trim: usize) -> BTreeMap<NodeId, u64> {
    let mut totals = members(log);
    let trimmed = log.trim_boilerplate(trim);
    let records = trimmed.records();

    // next_other[p]: first index after p whose sender differs from records[p]
    let mut next_other: Vec<Option<usize>> = vec![None; records.len()];
    for p in (0..records.len().saturating_sub(1)).rev() {
        next_other[p] = if records[p + 1].from != records[p].from {
            Some(p + 1)
        } else {
            next_other[p + 1]
        };
    }
    for (p, r) in records.iter().enumerate() {
        if let Some(q) = next_other[p] {
            *totals.get_mut(&r.from).expect("member") += (records[q].t - r.t) as u64;
        }
    }
    totals
}

fn members(log: &SessionLog) -> BTreeMap<NodeId, u64> {
    log.records()
        .iter()
        .flat_map(|r| [r.from.clone(), r.to.clone()])
        .map(|n| (n, 0))
        .collect()
}

/// Window boundaries `[start, end)` covering the session span, anchored at
/// the first timestamp. The last window is closed so the final record
/// belongs to it.
pub fn interval_windows(log: &SessionLog, interval_ms: i64) -> Result<Vec<(i64, i64)>> {
    if interval_ms <= 0 {
        return Err(Error::domain(format!("interval must be positive, got {interval_ms} ms")));
    }
    let Some((first, last)) = log.time_span() else {
        return Ok(Vec::new());
    };
    let span = last - first;
    let count = ((span + interval_ms - 1) / interval_ms).max(1);
    Ok((0..count)
        .map(|k| {
            let start = first + k * interval_ms;
            let end = if k == count - 1 { last + 1 } else { start + interval_ms };
            (start, end)
        })
        .collect())
}

/// Degree of every session member inside consecutive windows of
/// `interval_ms`. Returns one `(name, column)` pair per window, named
/// `deg_w1`, `deg_w2`, ...
pub fn feature_interval_degree(
    log: &SessionLog,
    interval_ms: i64,
) -> Result<Vec<(String, BTreeMap<NodeId, u64>)>> {
    let windows = interval_windows(log, interval_ms)?;
    let base = members(log);
    Ok(windows
        .iter()
        .enumerate()
        .map(|(k, &(start, end))| {
            let g = log.window(start, end).build_graph().aggregate();
            let mut col = base.clone();
            for n in g.nodes() {
                col.insert(n.clone(), g.degree_inplusout(n).expect("node") as u64);
            }
            (format!("deg_w{}", k + 1), col)
        })
        .collect())
}

/// `(x - min) / (max - min)`; a constant column maps to zeros.
pub fn normalize_minmax(raw: &[f64]) -> Vec<f64> {
    let Some(min) = raw.iter().copied().reduce(f64::min) else {
        return Vec::new();
    };
    let max = raw.iter().copied().fold(min, f64::max);
    let range = max - min;
    if range == 0.0 {
        return vec![0.0; raw.len()];
    }
    raw.iter().map(|x| (x - min) / range).collect()
}

/// Per-node feature rows, raw and normalized to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    nodes: Vec<NodeId>,
    names: Vec<String>,
    raw: Vec<Vec<f64>>,
    normalized: Vec<Vec<f64>>,
    constant: Vec<String>,
}

impl FeatureMatrix {
    /// Assembles named raw columns over `nodes` and min-max normalizes each.
    pub fn from_columns(nodes: Vec<NodeId>, columns: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let n = nodes.len();
        check_names(columns.iter().map(|(name, _)| name.as_str()))?;
        let mut constant = Vec::new();
        let mut norm_cols = Vec::with_capacity(columns.len());
        for (name, col) in &columns {
            if col.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: col.len(),
                });
            }
            if let Some(v) = col.iter().find(|v| !v.is_finite()) {
                return Err(Error::validation(format!("non-finite value {v} in column `{name}`")));
            }
            let normalized = normalize_minmax(col);
            if n > 1 && col.iter().all(|v| *v == col[0]) {
                log::warn!("feature `{name}` is constant; it normalizes to zero for every node");
                constant.push(name.clone());
            }
            norm_cols.push(normalized);
        }
        let names = columns.iter().map(|(name, _)| name.clone()).collect();
        let raw = transpose(columns.iter().map(|(_, c)| c.as_slice()), n);
        let normalized = transpose(norm_cols.iter().map(Vec::as_slice), n);
        Ok(FeatureMatrix {
            nodes,
            names,
            raw,
            normalized,
            constant,
        })
    }

    /// Rows that are already normalized; raw values are taken to be equal.
    pub fn from_normalized_rows(
        nodes: Vec<NodeId>,
        names: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if rows.len() != nodes.len() {
            return Err(Error::Dimension {
                expected: nodes.len(),
                actual: rows.len(),
            });
        }
        check_names(names.iter().map(String::as_str))?;
        for (node, row) in nodes.iter().zip(&rows) {
            if row.len() != names.len() {
                return Err(Error::Dimension {
                    expected: names.len(),
                    actual: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::validation(format!(
                    "value {v} for node `{node}` is outside [0, 1]"
                )));
            }
        }
        Ok(FeatureMatrix {
            nodes,
            names,
            raw: rows.clone(),
            normalized: rows,
            constant: Vec::new(),
        })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn feature_names(&self) -> &[String] {
        &self.names
    }

    pub fn raw_rows(&self) -> &[Vec<f64>] {
        &self.raw
    }

    pub fn normalized_rows(&self) -> &[Vec<f64>] {
        &self.normalized
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn feature_count(&self) -> usize {
        self.names.len()
    }

    /// Names of columns that had no variation before normalization.
    pub fn constant_features(&self) -> &[String] {
        &self.constant
    }

    pub fn row(&self, node: &NodeId) -> Option<&[f64]> {
        let i = self.nodes.iter().position(|n| n == node)?;
        Some(&self.normalized[i])
    }

    pub fn raw_column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.names.iter().position(|n| n == name)?;
        Some(self.raw.iter().map(|r| r[j]).collect())
    }

    /// Keeps the named columns, in the order given.
    pub fn select(&self, names: &[String]) -> Result<FeatureMatrix> {
        let idx: Vec<usize> = names
            .iter()
            .map(|name| {
                self.names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Usage(format!("no feature named `{name}`")))
            })
            .collect::<Result<_>>()?;
        let pick = |rows: &[Vec<f64>]| -> Vec<Vec<f64>> {
            rows.iter().map(|r| idx.iter().map(|&j| r[j]).collect()).collect()
        };
        Ok(FeatureMatrix {
            nodes: self.nodes.clone(),
            names: names.to_vec(),
            raw: pick(&self.raw),
            normalized: pick(&self.normalized),
            constant: self
                .constant
                .iter()
                .filter(|c| names.contains(c))
                .cloned()
                .collect(),
        })
    }

    /// Writes `node,<feature names...>` followed by one row per node with
    /// values at six significant digits.
    pub fn write_csv<W: Write>(&self, out: W, normalized: bool) -> Result<()> {
        let mut w = csv_writer(out);
        let mut header = vec!["node".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        let rows = if normalized { &self.normalized } else { &self.raw };
        for (node, row) in self.nodes.iter().zip(rows) {
            let mut rec = vec![node.to_string()];
            rec.extend(row.iter().map(|v| format_sig(*v, 6)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for name in names {
        if name.is_empty() || name == "node" {
            return Err(Error::validation(format!("invalid feature name `{name}`")));
        }
        if !seen.insert(name) {
            return Err(Error::validation(format!("duplicate feature `{name}`")));
        }
    }
    Ok(())
}

fn transpose<'a>(cols: impl Iterator<Item = &'a [f64]>, n: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![Vec::new(); n];
    for col in cols {
        for (row, v) in rows.iter_mut().zip(col) {
            row.push(*v);
        }
    }
    rows
}

/// Reads a CSV with header `node,<names...>` into a node-keyed table.
pub fn read_feature_table<R: Read>(input: R) -> Result<(Vec<String>, Vec<(NodeId, Vec<f64>)>)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rdr.headers()?.clone();
    if header.get(0) != Some("node") {
        return Err(Error::validation("feature table must start with a `node` column"));
    }
    let names: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != names.len() + 1 {
            return Err(Error::Line {
                line,
                message: format!("expected {} fields, found {}", names.len() + 1, rec.len()),
            });
        }
        let node = NodeId::new(&rec[0]).map_err(|e| Error::Line {
            line,
            message: e.to_string(),
        })?;
        let values = rec
            .iter()
            .skip(1)
            .map(|s| {
                s.trim().parse::<f64>().map_err(|_| Error::Line {
                    line,
                    message: format!("`{s}` is not a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push((node, values));
    }
    Ok((names, rows))
}

pub(crate) fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reproduces the rounded value.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float");
    format!("{rounded}")
}

/// Builds the four-feature matrix (or a subset) for one session.
#[derive(Debug, Clone)]
pub struct FeatureExtractor {
    pub features: Vec<Feature>,
    pub trim: usize,
    pub interval_ms: Option<i64>,
}

impl Default for FeatureExtractor {
    fn default() -> Self {
        FeatureExtractor {
            features: Feature::ALL.to_vec(),
            trim: DEFAULT_TRIM,
            interval_ms: None,
        }
    }
}

impl FeatureExtractor {
    pub fn raw_columns(&self, log: &SessionLog) -> Result<(Vec<NodeId>, Vec<(String, Vec<f64>)>)> {
        let g = log.build_graph().aggregate();
        let nodes: Vec<NodeId> = g.nodes().iter().cloned().collect();
        let mut columns = Vec::new();
        for f in &self.features {
            let values: Vec<f64> = match f {
                Feature::Degree => feature_degree(&g).into_iter().map(|(_, v)| v).collect(),
                Feature::OutStrength => {
                    feature_out_strength(&g).into_iter().map(|(_, v)| v).collect()
                }
                Feature::WordTotal => align(&nodes, &feature_word_total(log)),
                Feature::ReactionTime => align(&nodes, &feature_reaction_time(log, self.trim)),
            };
            columns.push((f.name().to_string(), values));
        }
        if let Some(ms) = self.interval_ms {
            for (name, col) in feature_interval_degree(log, ms)? {
                columns.push((name, align(&nodes, &col)));
            }
        }
        Ok((nodes, columns))
    }

    pub fn extract(&self, log: &SessionLog) -> Result<FeatureMatrix> {
        let (nodes, columns) = self.raw_columns(log)?;
        FeatureMatrix::from_columns(nodes, columns)
    }
}

fn align(nodes: &[NodeId], values: &BTreeMap<NodeId, u64>) -> Vec<f64> {
    nodes
        .iter()
        .map(|n| values.get(n).copied().unwrap_or(0) as f64)
        .collect()
}

/// Appends columns from an external table, matched by node.
pub fn append_external(
    nodes: &[NodeId],
    columns: &mut Vec<(String, Vec<f64>)>,
    names: Vec<String>,
    rows: Vec<(NodeId, Vec<f64>)>,
) -> Result<()> {
    let table: BTreeMap<NodeId, Vec<f64>> = rows.into_iter().collect();
    for (j, name) in names.into_iter().enumerate() {
        let col = nodes
            .iter()
            .map(|n| {
                table
                    .get(n)
                    .map(|r| r[j])
                    .ok_or_else(|| Error::validation(format!("external table has no row for `{n}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        columns.push((name, col));
    }
    Ok(())
}
