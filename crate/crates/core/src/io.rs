//! Line-oriented text formats.
//!
//! Every file starts with the comment `# locgame-format 1`. Other lines
//! starting with `#` are comments, except the `#cols` directive. Vertex
//! lists are comma-separated and sorted; `-` is the empty list.
//!
//! Design files come in two layouts. The block list is a header `v b`
//! followed by one line of point indices per block. The column layout starts
//! with `#cols` and has one row per position in a block, each row holding
//! one label per block; a row written as a single token is read one
//! character per block. Labels become indices in order of first
//! appearance, reading block by block.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::design::{Design, DesignError};
use crate::game::GameTranscript;
use crate::graph::{Graph, IncidenceGraph, Side};
use crate::solver::{Certificate, CopCertificate, RobberCertificate, RobberEntry};
use crate::strategies::BoundReport;
use crate::vset::VertexSet;

pub const FORMAT_LINE: &str = "# locgame-format 1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        msg: msg.into(),
    })
}

/// Non-comment lines with their 1-based line numbers. `#cols` is kept.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && (!l.starts_with('#') || l.starts_with("#cols")))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, IoError> {
    tok.parse()
        .or_else(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

fn parse_list(line: usize, tok: &str, n: usize) -> Result<VertexSet, IoError> {
    if tok == "-" {
        return Ok(VertexSet::empty(n));
    }
    let mut s = VertexSet::empty(n);
    for part in tok.split(',') {
        let x = parse_usize(line, part)?;
        if x >= n {
            return parse_err(line, format!("vertex {x} outside 0..{n}"));
        }
        s.insert(x);
    }
    Ok(s)
}

pub fn write_design(design: &Design) -> String {
    let mut out = format!("{FORMAT_LINE}\n{} {}\n", design.v(), design.b());
    for block in design.blocks() {
        let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses either design layout.
pub fn read_design(text: &str) -> Result<Design, IoError> {
    let mut lines = content_lines(text).peekable();
    match lines.peek() {
        Some((_, l)) if l.starts_with("#cols") => {
            lines.next();
            read_columns(lines)
        }
        Some(_) => read_block_list(lines),
        None => parse_err(0, "empty design file"),
    }
}

fn read_block_list<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Design, IoError> {
    let (ln, header) = lines.next().expect("caller checked");
    let head: Vec<&str> = header.split_whitespace().collect();
    let [v, b] = head[..] else {
        return parse_err(ln, "header must be \"v b\"");
    };
    let (v, b) = (parse_usize(ln, v)?, parse_usize(ln, b)?);
    let mut blocks = Vec::with_capacity(b);
    for (ln, l) in lines {
        let block = l
            .split_whitespace()
            .map(|t| parse_usize(ln, t))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    if blocks.len() != b {
        return parse_err(0, format!("header announces {b} blocks, found {}", blocks.len()));
    }
    Ok(Design::new(v, blocks)?)
}

fn read_columns<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Design, IoError> {
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<String> = l.split_whitespace().map(str::to_string).collect();
        let toks = match toks.len() {
            1 => toks[0].chars().map(String::from).collect(),
            _ => toks,
        };
        rows.push((ln, toks));
    }
    let Some(b) = rows.first().map(|r| r.1.len()) else {
        return parse_err(0, "no rows after #cols");
    };
    if let Some((ln, r)) = rows.iter().find(|r| r.1.len() != b) {
        return parse_err(*ln, format!("row has {} columns, expected {b}", r.len()));
    }
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut blocks = Vec::with_capacity(b);
    for c in 0..b {
        let block = rows
            .iter()
            .map(|(_, r)| {
                let next = index.len();
                *index.entry(r[c].as_str()).or_insert(next)
            })
            .collect();
        blocks.push(block);
    }
    Ok(Design::new(index.len(), blocks)?)
}

/// Adjacency list: `graph n`, then `id side neighbours` per vertex, with
/// side `P` (point), `B` (block) or `V` (plain graph).
pub fn write_graph(g: &Graph, sides: Option<&IncidenceGraph>) -> String {
    let mut out = format!("{FORMAT_LINE}\ngraph {}\n", g.n());
    for x in 0..g.n() {
        let tag = match sides.map(|ig| ig.side(x)) {
            Some(Side::Point) => "P",
            Some(Side::Block) => "B",
            None => "V",
        };
        let mut nb = g.neighbors(x).to_vec();
        nb.sort_unstable();
        let nb: Vec<String> = nb.iter().map(|y| y.to_string()).collect();
        let _ = writeln!(out, "{x} {tag} {}", if nb.is_empty() { "-".into() } else { nb.join(",") });
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return parse_err(0, "empty graph file");
    };
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["graph", n] => parse_usize(ln, n)?,
        _ => return parse_err(ln, "header must be \"graph n\""),
    };
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [id, _, nb] = toks[..] else {
            return parse_err(ln, "expected \"id side neighbours\"");
        };
        let x = parse_usize(ln, id)?;
        if x >= n {
            return parse_err(ln, format!("vertex {x} outside 0..{n}"));
        }
        for y in parse_list(ln, nb, n)?.iter() {
            if x < y {
                edges.push((x, y));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// True when the text is a graph file rather than a design file.
pub fn is_graph_file(text: &str) -> bool {
    content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.starts_with("graph "))
}

/// `round i probes P vector D cell C` per survived round.
pub fn write_transcript(t: &GameTranscript) -> String {
    let mut out = format!("{FORMAT_LINE}\n");
    for (i, r) in t.rounds.iter().enumerate() {
        let vector: Vec<String> = r.vector.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "round {i} probes {} vector {} cell {}",
            r.placement,
            if vector.is_empty() { "-".into() } else { vector.join(",") },
            r.cell
        );
    }
    out
}

/// Fixed-width table, one row per bound.
pub fn write_report_text(report: &BoundReport) -> String {
    let mut out = format!("{FORMAT_LINE}\ndesign {}\n", report.design);
    for row in &report.rows {
        let rounds = row.rounds.map_or("-".to_string(), |r| r.to_string());
        let _ = write!(
            out,
            "{} {} {} {} rounds={}",
            row.kind.as_str(),
            row.value,
            row.theorem,
            row.verdict.as_str(),
            rounds
        );
        if !row.note.is_empty() {
            let _ = write!(out, " # {}", row.note);
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    format: &'static str,
    design: &'a str,
    rows: Vec<RowDoc<'a>>,
}

#[derive(Serialize)]
struct RowDoc<'a> {
    design: &'a str,
    kind: &'static str,
    value: usize,
    theorem: &'a str,
    verdict: &'static str,
    rounds: Option<usize>,
    note: &'a str,
}

pub fn write_report_json(report: &BoundReport) -> String {
    let doc = ReportDoc {
        format: "locgame-format 1",
        design: &report.design,
        rows: report
            .rows
            .iter()
            .map(|r| RowDoc {
                design: &report.design,
                kind: r.kind.as_str(),
                value: r.value,
                theorem: &r.theorem,
                verdict: r.verdict.as_str(),
                rounds: r.rounds,
                note: &r.note,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Cop certificates: `cops k K rounds R n N`, then `state S probe P`.
/// Robber certificates: `robber k K n N`, then
/// `state S probe P cell C next T`.
pub fn write_certificate(cert: &Certificate, n: usize) -> String {
    let mut out = format!("{FORMAT_LINE}\n");
    match cert {
        Certificate::Cops(c) => {
            let _ = writeln!(out, "cops k {} rounds {} n {n}", c.k, c.rounds);
            for (s, p) in &c.entries {
                let _ = writeln!(out, "state {s} probe {p}");
            }
        }
        Certificate::Robber(c) => {
            let _ = writeln!(out, "robber k {} n {n}", c.k);
            for e in &c.entries {
                let _ = writeln!(
                    out,
                    "state {} probe {} cell {} next {}",
                    e.state, e.probe, e.cell, e.next
                );
            }
        }
    }
    out
}

/// Reads a certificate and the vertex count it was written for.
pub fn read_certificate(text: &str) -> Result<(Certificate, usize), IoError> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return parse_err(0, "empty certificate");
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    match head[..] {
        ["cops", "k", k, "rounds", r, "n", n] => {
            let (k, rounds, n) = (parse_usize(ln, k)?, parse_usize(ln, r)?, parse_usize(ln, n)?);
            let mut entries = BTreeMap::new();
            for (ln, l) in lines {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let ["state", s, "probe", p] = toks[..] else {
                    return parse_err(ln, "expected \"state S probe P\"");
                };
                entries.insert(parse_list(ln, s, n)?, parse_list(ln, p, n)?);
            }
            let entries = entries.into_iter().collect();
            Ok((Certificate::Cops(CopCertificate { k, rounds, entries }), n))
        }
        ["robber", "k", k, "n", n] => {
            let (k, n) = (parse_usize(ln, k)?, parse_usize(ln, n)?);
            let mut entries = Vec::new();
            for (ln, l) in lines {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let ["state", s, "probe", p, "cell", c, "next", t] = toks[..] else {
                    return parse_err(ln, "expected \"state S probe P cell C next T\"");
                };
                entries.push(RobberEntry {
                    state: parse_list(ln, s, n)?,
                    probe: parse_list(ln, p, n)?,
                    cell: parse_list(ln, c, n)?,
                    next: parse_list(ln, t, n)?,
                });
            }
            entries.sort();
            Ok((Certificate::Robber(RobberCertificate { k, entries }), n))
        }
        _ => parse_err(ln, "unknown certificate header"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::projective_plane;
    use crate::graph::{incidence_graph, named};

    const BIBD_7_3_A: &str = "#cols\n000000000111111222222\n111333555333444333444\n222444666555666666555\n";

    #[test]
    fn columns_and_block_list_agree() {
        let d = read_design(BIBD_7_3_A).unwrap();
        assert_eq!((d.v(), d.b()), (7, 21));
        assert_eq!(d.block(3), &[0, 3, 4]);
        let again = read_design(&write_design(&d)).unwrap();
        assert_eq!(write_design(&again), write_design(&d));
    }

    #[test]
    fn spaced_labels_map_by_first_appearance() {
        let d = read_design("#cols\nx x y\ny z z\n").unwrap();
        assert_eq!(d.blocks(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn bad_header_is_reported() {
        assert!(matches!(read_design("3\n0 1\n"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(read_design("3 2\n0 1\n"), Err(IoError::Parse { .. })));
    }

    #[test]
    fn graph_round_trip() {
        let ig = incidence_graph(&projective_plane(2).unwrap()).unwrap();
        let text = write_graph(&ig, Some(&ig));
        assert!(text.lines().nth(2).unwrap().starts_with("0 P "));
        assert!(text.lines().nth(9).unwrap().starts_with("7 B "));
        assert!(is_graph_file(&text));
        let g = read_graph(&text).unwrap();
        assert_eq!(write_graph(&g, Some(&ig)), text);
        let c = named::cycle(5);
        assert_eq!(write_graph(&read_graph(&write_graph(&c, None)).unwrap(), None), write_graph(&c, None));
    }
}
