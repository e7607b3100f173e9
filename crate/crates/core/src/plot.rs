//! SVG bump chart of rank trajectories.
//!
//! The x axis carries the sweep parameter, the y axis the rank. For beta
//! sweeps a second axis along the top shows the andness `1 - 1/(beta + 1)`.
//! Output depends only on the trajectory and the options.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::NodeId;
use crate::ranking::{RankTrajectory, SweepParameter};

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub width: f64,
    pub height: f64,
    pub highlight: BTreeSet<NodeId>,
    /// Ranks run 1 (top) to n instead of n (top) to 1.
    pub inverted: bool,
    pub title: Option<String>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            width: 960.0,
            height: 720.0,
            highlight: BTreeSet::new(),
            inverted: false,
            title: None,
        }
    }
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 110.0;
const MARGIN_TOP: f64 = 70.0;
const MARGIN_BOTTOM: f64 = 60.0;
const MAX_TICK_LABELS: usize = 11;

const STYLE: &str = "\
.axis{stroke:#333;stroke-width:1}\
.xtick,.ytick{stroke:#333;stroke-width:1}\
.grid{stroke:#ddd;stroke-width:0.5}\
.trajectory{fill:none;stroke:#9aa5b1;stroke-width:1;opacity:0.8}\
.trajectory.highlight{stroke:#c0392b;stroke-width:2.5;opacity:1}\
.label{font:10px sans-serif;fill:#555}\
.label.highlight{fill:#c0392b;font-weight:bold}\
.ticklabel{font:11px sans-serif;fill:#333}\
.title{font:14px sans-serif;fill:#111}";

pub fn render_svg(traj: &RankTrajectory, opts: &PlotOptions) -> String {
    let n = traj.node_count().max(1);
    let grid = &traj.grid;
    let (x0, x1) = (MARGIN_LEFT, opts.width - MARGIN_RIGHT);
    let (y0, y1) = (MARGIN_TOP, opts.height - MARGIN_BOTTOM);
    let (pmin, pmax) = (grid.first().copied().unwrap_or(0.0), grid.last().copied().unwrap_or(0.0));

    let x_of = |p: f64| {
        if pmax > pmin {
            x0 + (p - pmin) / (pmax - pmin) * (x1 - x0)
        } else {
            (x0 + x1) / 2.0
        }
    };
    // Top of the plot area holds the best rank.
    let top_rank = if opts.inverted { 1 } else { n };
    let y_of = |r: usize| {
        if n == 1 {
            return (y0 + y1) / 2.0;
        }
        let from_top = (r as f64 - top_rank as f64).abs();
        y0 + from_top / (n - 1) as f64 * (y1 - y0)
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(opts.width),
        h = num(opts.height)
    );
    let _ = writeln!(s, "<style>{STYLE}</style>");
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        num(opts.width),
        num(opts.height)
    );
    if let Some(title) = &opts.title {
        let _ = writeln!(
            s,
            r#"<text class="title" x="{}" y="18" text-anchor="middle">{}</text>"#,
            num(opts.width / 2.0),
            escape(title)
        );
    }

    // axes
    let _ = writeln!(s, r#"<g class="axes">"#);
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x0),
        num(y1),
        num(x1),
        num(y1)
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x0),
        num(y0),
        num(x0),
        num(y1)
    );
    let label_every = grid.len().div_ceil(MAX_TICK_LABELS).max(1);
    for (k, &p) in grid.iter().enumerate() {
        let x = num(x_of(p));
        let _ = writeln!(
            s,
            r#"<line class="xtick" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            num(y1),
            num(y1 + 5.0)
        );
        if k % label_every == 0 || k == grid.len() - 1 {
            let _ = writeln!(
                s,
                r#"<text class="ticklabel" x="{x}" y="{}" text-anchor="middle">{}</text>"#,
                num(y1 + 18.0),
                short(p)
            );
            if traj.parameter == SweepParameter::Beta {
                let andness = 1.0 - 1.0 / (p + 1.0);
                let _ = writeln!(
                    s,
                    r#"<text class="ticklabel andness" x="{x}" y="{}" text-anchor="middle">{andness:.3}</text>"#,
                    num(y0 - 10.0)
                );
            }
        }
    }
    let _ = writeln!(
        s,
        r#"<text class="ticklabel" x="{}" y="{}" text-anchor="middle">{}</text>"#,
        num((x0 + x1) / 2.0),
        num(y1 + 40.0),
        traj.parameter
    );
    if traj.parameter == SweepParameter::Beta {
        let _ = writeln!(
            s,
            r#"<text class="ticklabel" x="{}" y="{}" text-anchor="middle">andness</text>"#,
            num((x0 + x1) / 2.0),
            num(y0 - 30.0)
        );
    }
    let rank_step = if n <= 20 { 1 } else { 5 };
    for r in (1..=n).filter(|r| *r == 1 || r % rank_step == 0 || *r == n) {
        let y = num(y_of(r));
        let _ = writeln!(
            s,
            r#"<line class="ytick" x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            num(x0 - 5.0),
            num(x0)
        );
        let _ = writeln!(
            s,
            r#"<text class="ticklabel" x="{}" y="{y}" text-anchor="end" dominant-baseline="middle">{r}</text>"#,
            num(x0 - 8.0)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="ticklabel" x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">rank</text>"#,
        num((y0 + y1) / 2.0),
        num((y0 + y1) / 2.0)
    );
    let _ = writeln!(s, "</g>");

    // Highlighted series are drawn last so they sit on top.
    let (plain, marked): (Vec<_>, Vec<_>) = traj
        .nodes
        .iter()
        .partition(|t| !opts.highlight.contains(&t.node));
    let _ = writeln!(s, r#"<g class="trajectories">"#);
    for (t, hl) in plain.iter().map(|t| (t, false)).chain(marked.iter().map(|t| (t, true))) {
        let class = if hl { "trajectory highlight" } else { "trajectory" };
        let points: Vec<String> = grid
            .iter()
            .zip(&t.ranks)
            .map(|(&p, &r)| format!("{},{}", num(x_of(p)), num(y_of(r))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="{class}" data-node="{}" points="{}"/>"#,
            escape(t.node.as_str()),
            points.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="labels">"#);
    for t in &traj.nodes {
        let Some(&last) = t.ranks.last() else { continue };
        let class = if opts.highlight.contains(&t.node) { "label highlight" } else { "label" };
        let _ = writeln!(
            s,
            r#"<text class="{class}" x="{}" y="{}" dominant-baseline="middle">{}</text>"#,
            num(x1 + 6.0),
            num(y_of(last)),
            escape(t.node.as_str())
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn short(p: f64) -> String {
    let s = format!("{p:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::NodeTrajectory;

    fn small() -> RankTrajectory {
        let node = |n: &str, ranks: Vec<usize>| NodeTrajectory {
            node: NodeId::new(n).unwrap(),
            scores: Vec::new(),
            ranks,
        };
        RankTrajectory {
            parameter: SweepParameter::Beta,
            grid: vec![0.0, 1.0],
            nodes: vec![node("A", vec![3, 1]), node("B<x>", vec![2, 3]), node("C", vec![1, 2])],
        }
    }

    #[test]
    fn structure() {
        let svg = render_svg(&small(), &PlotOptions::default());
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert_eq!(svg.matches(r#"class="xtick""#).count(), 2);
        assert!(svg.contains("B&lt;x&gt;"));
        assert!(svg.contains(">0.500</text>"));
        assert!(!svg.contains("highlight\""));
    }

    #[test]
    fn top_rank_is_drawn_at_the_top() {
        let svg = render_svg(&small(), &PlotOptions::default());
        // A holds rank 3 = n at beta 0, so it starts at the top margin
        assert!(svg.contains(r#"data-node="A" points="60,70 850,"#), "{svg}");
        let inv = PlotOptions {
            inverted: true,
            ..PlotOptions::default()
        };
        let svg = render_svg(&small(), &inv);
        assert!(svg.contains(r#"data-node="C" points="60,70 "#), "{svg}");
    }

    #[test]
    fn highlight_class() {
        let opts = PlotOptions {
            highlight: [NodeId::new("C").unwrap()].into_iter().collect(),
            ..PlotOptions::default()
        };
        let svg = render_svg(&small(), &opts);
        assert_eq!(svg.matches(r#"class="trajectory highlight""#).count(), 1);
        assert!(svg.contains(r#"<polyline class="trajectory highlight" data-node="C""#));
    }

    #[test]
    fn number_formatting() {
        assert_eq!(num(70.0), "70");
        assert_eq!(num(12.346), "12.35");
        assert_eq!(num(-0.001), "0");
        assert_eq!(short(0.1), "0.1");
    }
}
