//! JSON-lines chat logs.
//!
//! One object per line with the keys `session`, `t`, `from`, `to` and
//! `text`. `t` is either an integer number of epoch milliseconds or an
//! RFC 3339 string. Blank lines are ignored.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalEdge, TemporalMultiGraph};

/// A single statement from `from` directed at `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatRecord {
    pub session: String,
    pub t: i64,
    pub from: NodeId,
    pub to: NodeId,
    pub text: String,
}

/// All records of one session, stably sorted by timestamp.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SessionLog {
    session: String,
    records: Vec<ChatRecord>,
}

impl SessionLog {
    /// Sorts `records` by timestamp, keeping input order among equal
    /// timestamps. Every record must belong to `session`.
    pub fn new(session: impl Into<String>, mut records: Vec<ChatRecord>) -> Result<Self> {
        let session = session.into();
        if session.is_empty() {
            return Err(Error::validation("session id must be non-empty"));
        }
        if let Some(r) = records.iter().find(|r| r.session != session) {
            return Err(Error::validation(format!(
                "record from session `{}` in log for session `{session}`",
                r.session
            )));
        }
        if let Some(r) = records.iter().find(|r| r.t < 0) {
            return Err(Error::validation(format!("negative timestamp {}", r.t)));
        }
        records.sort_by_key(|r| r.t);
        Ok(SessionLog { session, records })
    }

    pub fn session(&self) -> &str {
        &self.session
    }

    pub fn records(&self) -> &[ChatRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn time_span(&self) -> Option<(i64, i64)> {
        Some((self.records.first()?.t, self.records.last()?.t))
    }

    /// Drops the first `k` and the last `k` records. Sessions with at most
    /// `2k` records come back empty.
    pub fn trim_boilerplate(&self, k: usize) -> SessionLog {
        let records = if k.saturating_mul(2) >= self.records.len() {
            Vec::new()
        } else {
            self.records[k..self.records.len() - k].to_vec()
        };
        SessionLog {
            session: self.session.clone(),
            records,
        }
    }

    /// Records falling in `[start, end)`, in session order.
    pub fn window(&self, start: i64, end: i64) -> SessionLog {
        SessionLog {
            session: self.session.clone(),
            records: self
                .records
                .iter()
                .filter(|r| r.t >= start && r.t < end)
                .cloned()
                .collect(),
        }
    }

    /// One temporal edge per record, weighted by the record's word count.
    pub fn build_graph(&self) -> TemporalMultiGraph {
        let mut b = TemporalMultiGraph::builder();
        for r in &self.records {
            let e = TemporalEdge::new(r.from.clone(), r.to.clone(), r.t, word_count(&r.text));
            // timestamps were validated on construction
            b.add_edge(e).expect("validated record");
        }
        b.build()
    }

    /// Writes the records back as JSON lines with integer timestamps.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Number of maximal runs of non-whitespace characters.
pub fn word_count(text: &str) -> u64 {
    text.split_whitespace().count() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Abort on the first malformed line.
    #[default]
    Strict,
    /// Skip malformed lines and report them.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedLog {
    pub sessions: BTreeMap<String, SessionLog>,
    /// Lines dropped in lenient mode.
    pub skipped: Vec<LineError>,
}

impl ParsedLog {
    pub fn record_count(&self) -> usize {
        self.sessions.values().map(SessionLog::len).sum()
    }
}

pub fn parse_log<R: BufRead>(input: R, mode: ParseMode) -> Result<ParsedLog> {
    let mut grouped: BTreeMap<String, Vec<ChatRecord>> = BTreeMap::new();
    let mut skipped = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(&line) {
            Ok(rec) => grouped.entry(rec.session.clone()).or_default().push(rec),
            Err(message) => match mode {
                ParseMode::Strict => return Err(Error::Line { line: line_no, message }),
                ParseMode::Lenient => {
                    log::warn!("skipping line {line_no}: {message}");
                    skipped.push(LineError { line: line_no, message });
                }
            },
        }
    }
    let mut sessions = BTreeMap::new();
    for (id, records) in grouped {
        let log = SessionLog::new(id.clone(), records)?;
        sessions.insert(id, log);
    }
    Ok(ParsedLog { sessions, skipped })
}

fn parse_record(line: &str) -> std::result::Result<ChatRecord, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value
        .as_object()
        .ok_or_else(|| "expected a JSON object".to_string())?;
    let field = |key: &str| obj.get(key).ok_or_else(|| format!("missing field `{key}`"));
    let string = |key: &str| -> std::result::Result<String, String> {
        field(key)?
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| format!("field `{key}` must be a string"))
    };
    let non_empty = |key: &str| -> std::result::Result<String, String> {
        let s = string(key)?;
        if s.is_empty() {
            Err(format!("field `{key}` must be non-empty"))
        } else {
            Ok(s)
        }
    };

    let session = non_empty("session")?;
    let t = parse_timestamp(field("t")?)?;
    let from = NodeId::new(non_empty("from")?).map_err(|e| e.to_string())?;
    let to = NodeId::new(non_empty("to")?).map_err(|e| e.to_string())?;
    let text = string("text")?;
    Ok(ChatRecord {
        session,
        t,
        from,
        to,
        text,
    })
}

fn parse_timestamp(v: &Value) -> std::result::Result<i64, String> {
    let t = match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| format!("timestamp `{n}` is not an integer number of milliseconds"))?,
        Value::String(s) => chrono::DateTime::parse_from_rfc3339(s)
            .map_err(|e| format!("unparsable timestamp `{s}`: {e}"))?
            .timestamp_millis(),
        other => return Err(format!("unparsable timestamp `{other}`")),
    };
    if t < 0 {
        return Err(format!("negative timestamp {t}"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(t: i64, from: &str, to: &str, text: &str) -> ChatRecord {
        ChatRecord {
            session: "s".into(),
            t,
            from: NodeId::new(from).unwrap(),
            to: NodeId::new(to).unwrap(),
            text: text.into(),
        }
    }

    fn parse(input: &str, mode: ParseMode) -> Result<ParsedLog> {
        parse_log(input.as_bytes(), mode)
    }

    #[test]
    fn word_counts() {
        assert_eq!(word_count(""), 0);
        assert_eq!(word_count("hello  world "), 2);
        assert_eq!(word_count("a b\tc\nd"), 4);
        assert_eq!(word_count("x\u{3000}y\u{a0}z"), 3);
    }

    #[test]
    fn parses_one_session() {
        let input = r#"{"session":"s1","t":0,"from":"A","to":"B","text":"hi"}
{"session":"s1","t":5,"from":"B","to":"A","text":"hello there"}
{"session":"s1","t":9,"from":"A","to":"B","text":""}
"#;
        let parsed = parse(input, ParseMode::Strict).unwrap();
        assert_eq!(parsed.sessions.len(), 1);
        assert_eq!(parsed.sessions["s1"].len(), 3);
    }

    #[test]
    fn missing_to_strict_and_lenient() {
        let input = r#"{"session":"s1","t":0,"from":"A","to":"B","text":"hi"}
{"session":"s1","t":1,"from":"A","text":"no recipient"}
"#;
        match parse(input, ParseMode::Strict) {
            Err(Error::Line { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("`to`"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let parsed = parse(input, ParseMode::Lenient).unwrap();
        assert_eq!(parsed.record_count(), 1);
        assert_eq!(parsed.skipped.len(), 1);
        assert_eq!(parsed.skipped[0].line, 2);
    }

    #[test]
    fn rejects_bad_fields() {
        let bad = [
            r#"{"session":"s","t":"yesterday","from":"A","to":"B","text":""}"#,
            r#"{"session":"s","t":1.5,"from":"A","to":"B","text":""}"#,
            r#"{"session":"s","t":-3,"from":"A","to":"B","text":""}"#,
            r#"{"session":"s","t":1,"from":"","to":"B","text":""}"#,
            r#"{"session":"","t":1,"from":"A","to":"B","text":""}"#,
            r#"{"session":"s","t":1,"from":"A","to":"B"}"#,
            r#"not json"#,
        ];
        for line in bad {
            assert!(
                matches!(parse(line, ParseMode::Strict), Err(Error::Line { line: 1, .. })),
                "{line}"
            );
        }
    }

    #[test]
    fn rfc3339_timestamps() {
        let input = r#"{"session":"s","t":"1970-01-01T00:00:01.250Z","from":"A","to":"B","text":""}
{"session":"s","t":"1970-01-01T01:00:00+01:00","from":"A","to":"B","text":""}"#;
        let parsed = parse(input, ParseMode::Strict).unwrap();
        let ts: Vec<i64> = parsed.sessions["s"].records().iter().map(|r| r.t).collect();
        assert_eq!(ts, [0, 1250]);
    }

    #[test]
    fn equal_timestamps_keep_file_order() {
        let input = r#"{"session":"s","t":7,"from":"C","to":"A","text":""}
{"session":"s","t":3,"from":"A","to":"B","text":""}
{"session":"s","t":7,"from":"B","to":"C","text":""}
{"session":"s","t":7,"from":"A","to":"C","text":""}"#;
        let parsed = parse(input, ParseMode::Strict).unwrap();
        let order: Vec<(i64, &str)> = parsed.sessions["s"]
            .records()
            .iter()
            .map(|r| (r.t, r.from.as_str()))
            .collect();
        assert_eq!(order, [(3, "A"), (7, "C"), (7, "B"), (7, "A")]);
    }

    #[test]
    fn groups_sessions() {
        let input = r#"{"session":"b","t":1,"from":"A","to":"B","text":""}
{"session":"a","t":1,"from":"A","to":"B","text":""}

{"session":"b","t":2,"from":"B","to":"A","text":""}"#;
        let parsed = parse(input, ParseMode::Strict).unwrap();
        let sizes: Vec<(&str, usize)> = parsed
            .sessions
            .iter()
            .map(|(k, v)| (k.as_str(), v.len()))
            .collect();
        assert_eq!(sizes, [("a", 1), ("b", 2)]);
    }

    #[test]
    fn build_graph_counts() {
        let log = SessionLog::new(
            "s",
            vec![rec(0, "A", "B", "hi there"), rec(1, "A", "B", "ok"), rec(2, "B", "A", "")],
        )
        .unwrap();
        let g = log.build_graph();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges().iter().map(|e| e.word_count).sum::<u64>(), 3);
        assert_eq!(SessionLog::new("s", vec![]).unwrap().build_graph().edge_count(), 0);
    }

    #[test]
    fn trim_rules() {
        let records: Vec<ChatRecord> = (0..30).map(|i| rec(i, "A", "B", "")).collect();
        let log = SessionLog::new("s", records).unwrap();
        let trimmed = log.trim_boilerplate(10);
        let ts: Vec<i64> = trimmed.records().iter().map(|r| r.t).collect();
        assert_eq!(ts, (10..20).collect::<Vec<_>>());
        assert_eq!(log.trim_boilerplate(0), log);

        let short = SessionLog::new("s", (0..15).map(|i| rec(i, "A", "B", "")).collect()).unwrap();
        assert!(short.trim_boilerplate(10).is_empty());
        let exact = SessionLog::new("s", (0..20).map(|i| rec(i, "A", "B", "")).collect()).unwrap();
        assert!(exact.trim_boilerplate(10).is_empty());
    }

    #[test]
    fn trim_large_session() {
        let log = SessionLog::new("s", (0..29590).map(|i| rec(i, "A", "B", "")).collect()).unwrap();
        let trimmed = log.trim_boilerplate(10);
        assert_eq!(trimmed.len(), 29570);
        // the 11th record has index 10
        assert_eq!(trimmed.records()[0].t, 10);
    }

    #[test]
    fn session_log_rejects_foreign_records() {
        let mut r = rec(0, "A", "B", "");
        r.session = "other".into();
        assert!(SessionLog::new("s", vec![r]).is_err());
    }
}
