//! The instance file format.
//!
//! Line-oriented, DIMACS-flavored:
//!
//! ```text
//! c any comment
//! p onep <n> <m> <k>
//! e <u> <v> <w>        (m lines, 1-based ids, signed weight)
//! x <u1> <v1> <u2> <v2> (k lines, both pairs previously declared edges)
//! ```
//!
//! The header comes first among non-comment lines, all edges precede all
//! crossings, and ids live in `[1, n]`. Every violation is reported with
//! its line number.
//!
//! Serialization is canonical: edges sorted, crossings sorted with each
//! edge's smaller endpoint first, comments dropped. The header names every
//! id up to the largest one, so id gaps turn into isolated nodes when read
//! back; parser- and generator-built instances always have contiguous ids
//! and round-trip byte-identically.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::graph::{Edge, NodeId, WeightedGraph};
use crate::model::{Crossing, CrossingSet, OnePlanarInstance};
use crate::{Error, Result};

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn token<'a, T: FromStr>(
    tokens: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<T> {
    let raw = match tokens.next() {
        Some(t) => t,
        None => return fail(line, format!("missing {what}")),
    };
    match raw.parse() {
        Ok(v) => Ok(v),
        Err(_) => fail(line, format!("malformed {what} {raw:?}")),
    }
}

fn finish<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match tokens.next() {
        None => Ok(()),
        Some(extra) => fail(line, format!("unexpected trailing token {extra:?}")),
    }
}

pub fn parse_instance(text: &str) -> Result<OnePlanarInstance> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut graph = WeightedGraph::new();
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut last_line = 1;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut tokens = raw.split_whitespace();
        let tag = match tokens.next() {
            None => continue,
            Some(t) => t,
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return fail(line, "second header line");
                }
                match tokens.next() {
                    Some("onep") => {}
                    Some(other) => return fail(line, format!("unknown format {other:?}")),
                    None => return fail(line, "missing format name"),
                }
                let n: u32 = token(&mut tokens, line, "node count")?;
                let m: usize = token(&mut tokens, line, "edge count")?;
                let k: usize = token(&mut tokens, line, "crossing count")?;
                finish(tokens, line)?;
                for v in 1..=n {
                    graph.add_node(NodeId(v));
                }
                header = Some((n, m, k));
            }
            "e" => {
                let Some((n, m, _)) = header else {
                    return fail(line, "edge line before the header");
                };
                if !crossings.is_empty() {
                    return fail(line, "edge line after a crossing line");
                }
                if graph.edge_count() == m {
                    return fail(line, format!("more than {m} edge lines"));
                }
                let u: u32 = token(&mut tokens, line, "node id")?;
                let v: u32 = token(&mut tokens, line, "node id")?;
                let w: i64 = token(&mut tokens, line, "weight")?;
                finish(tokens, line)?;
                for id in [u, v] {
                    if id < 1 || id > n {
                        return fail(line, format!("node id {id} outside 1..={n}"));
                    }
                }
                if u == v {
                    return fail(line, format!("self-loop at node {u}"));
                }
                let e = Edge::new(NodeId(u), NodeId(v));
                if graph.has_edge(e) {
                    return fail(line, format!("duplicate edge {e}"));
                }
                graph.add_edge(NodeId(u), NodeId(v), w)?;
            }
            "x" => {
                let Some((n, _, k)) = header else {
                    return fail(line, "crossing line before the header");
                };
                if crossings.len() == k {
                    return fail(line, format!("more than {k} crossing lines"));
                }
                let mut ids = [0u32; 4];
                for slot in &mut ids {
                    *slot = token(&mut tokens, line, "node id")?;
                    if *slot < 1 || *slot > n {
                        return fail(line, format!("node id {slot} outside 1..={n}"));
                    }
                }
                finish(tokens, line)?;
                for a in 0..4 {
                    for b in (a + 1)..4 {
                        if ids[a] == ids[b] {
                            return fail(
                                line,
                                format!("crossing endpoints must be distinct, got {} twice", ids[a]),
                            );
                        }
                    }
                }
                let e1 = Edge::new(NodeId(ids[0]), NodeId(ids[1]));
                let e2 = Edge::new(NodeId(ids[2]), NodeId(ids[3]));
                for e in [e1, e2] {
                    if !graph.has_edge(e) {
                        return fail(line, format!("edge {e} is not declared"));
                    }
                }
                crossings.push(Crossing::new(e1, e2));
            }
            other => return fail(line, format!("unknown line type {other:?}")),
        }
    }

    let Some((_, m, k)) = header else {
        return fail(last_line, "missing header line");
    };
    if graph.edge_count() != m {
        return fail(
            last_line,
            format!("expected {m} edge lines, found {}", graph.edge_count()),
        );
    }
    if crossings.len() != k {
        return fail(
            last_line,
            format!("expected {k} crossing lines, found {}", crossings.len()),
        );
    }
    Ok(OnePlanarInstance {
        graph,
        crossings: CrossingSet::new(crossings),
    })
}

pub fn serialize_instance(inst: &OnePlanarInstance) -> String {
    let n = inst.graph.max_node_id().map_or(0, |v| v.0);
    let mut out = String::new();
    writeln!(
        out,
        "p onep {n} {} {}",
        inst.graph.edge_count(),
        inst.crossings.len()
    )
    .unwrap();
    for (e, w) in inst.graph.edges() {
        let (u, v) = e.endpoints();
        writeln!(out, "e {u} {v} {w}").unwrap();
    }
    let mut xs: Vec<&Crossing> = inst.crossings.iter().collect();
    xs.sort();
    for x in xs {
        let (a, b) = x.first().endpoints();
        let (c, d) = x.second().endpoints();
        writeln!(out, "x {a} {b} {c} {d}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, String) {
        match parse_instance(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_instance() {
        let inst = parse_instance("p onep 2 1 0\ne 1 2 5\n").unwrap();
        assert_eq!(inst.graph.node_count(), 2);
        assert_eq!(inst.graph.weight(Edge::new(NodeId(1), NodeId(2))), Some(5));
        assert!(inst.crossings.is_empty());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "c a comment\n\np onep 2 1 0\nc another\ne 1 2 -3\nc end\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph.weight(Edge::new(NodeId(1), NodeId(2))), Some(-3));
    }

    #[test]
    fn k5_with_one_crossing_round_trips() {
        let mut text = String::from("p onep 5 10 1\n");
        for u in 1..=5u32 {
            for v in (u + 1)..=5 {
                text.push_str(&format!("e {u} {v} 1\n"));
            }
        }
        text.push_str("x 1 3 2 4\n");
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.crossings.len(), 1);
        assert_eq!(serialize_instance(&inst), text);
    }

    #[test]
    fn serialization_is_canonical() {
        // Edges and crossing endpoints deliberately scrambled.
        let scrambled =
            "p onep 4 5 1\ne 3 4 1\ne 2 1 7\ne 4 1 1\ne 1 3 1\ne 4 2 1\nx 4 2 3 1\n";
        let inst = parse_instance(scrambled).unwrap();
        let canonical = serialize_instance(&inst);
        assert_eq!(
            canonical,
            "p onep 4 5 1\ne 1 2 7\ne 1 3 1\ne 1 4 1\ne 2 4 1\ne 3 4 1\nx 1 3 2 4\n"
        );
        let again = parse_instance(&canonical).unwrap();
        assert_eq!(again, inst);
        assert_eq!(serialize_instance(&again), canonical);
    }

    #[test]
    fn header_only_empty_graph() {
        let inst = parse_instance("p onep 0 0 0\n").unwrap();
        assert_eq!(inst.graph.node_count(), 0);
        assert_eq!(serialize_instance(&inst), "p onep 0 0 0\n");
    }

    #[test]
    fn isolated_nodes_come_from_the_header() {
        let inst = parse_instance("p onep 4 1 0\ne 1 2 3\n").unwrap();
        assert_eq!(inst.graph.node_count(), 4);
        assert!(inst.graph.has_node(NodeId(4)));
        assert_eq!(serialize_instance(&inst), "p onep 4 1 0\ne 1 2 3\n");
    }

    #[test]
    fn missing_header_is_reported() {
        assert_eq!(parse_err("e 1 2 3\n"), (1, "edge line before the header".into()));
        let (line, message) = parse_err("c only a comment\n");
        assert_eq!(line, 1);
        assert_eq!(message, "missing header line");
    }

    #[test]
    fn malformed_headers_are_reported() {
        assert_eq!(parse_err("p wrong 1 0 0\n").0, 1);
        assert_eq!(parse_err("p onep x 0 0\n").1, "malformed node count \"x\"");
        assert_eq!(parse_err("p onep 2 1\n").1, "missing crossing count");
        assert_eq!(parse_err("p onep 2 1 0 9\n").1, "unexpected trailing token \"9\"");
        assert_eq!(
            parse_err("p onep 2 1 0\np onep 2 1 0\n").1,
            "second header line"
        );
    }

    #[test]
    fn bad_edge_lines_are_reported() {
        assert_eq!(
            parse_err("p onep 2 1 0\ne 1 1 5\n"),
            (2, "self-loop at node 1".into())
        );
        assert_eq!(
            parse_err("p onep 2 2 0\ne 1 2 5\ne 2 1 4\n"),
            (3, "duplicate edge (1, 2)".into())
        );
        assert_eq!(
            parse_err("p onep 2 1 0\ne 1 3 5\n"),
            (2, "node id 3 outside 1..=2".into())
        );
        assert_eq!(
            parse_err("p onep 2 1 0\ne 0 2 5\n"),
            (2, "node id 0 outside 1..=2".into())
        );
        assert_eq!(parse_err("p onep 2 1 0\ne 1 2 five\n").0, 2);
        assert_eq!(
            parse_err("p onep 2 1 0\ne 1 2 5\ne 1 2 5\n").1,
            "more than 1 edge lines"
        );
    }

    #[test]
    fn wrong_counts_are_reported() {
        assert_eq!(parse_err("p onep 2 1 0\n").1, "expected 1 edge lines, found 0");
        let text = "p onep 4 2 1\ne 1 2 1\ne 3 4 1\n";
        assert_eq!(parse_err(text).1, "expected 1 crossing lines, found 0");
    }

    #[test]
    fn bad_crossing_lines_are_reported() {
        let base = "p onep 4 4 1\ne 1 2 1\ne 3 4 1\ne 1 3 1\ne 2 4 1\n";
        assert_eq!(
            parse_err(&format!("{base}x 1 2 2 4\n")).1,
            "crossing endpoints must be distinct, got 2 twice"
        );
        assert_eq!(
            parse_err(&format!("{base}x 1 4 2 3\n")).1,
            "edge (1, 4) is not declared"
        );
        assert_eq!(
            parse_err(&format!("{base}x 1 2 3 9\n")).1,
            "node id 9 outside 1..=4"
        );
    }

    #[test]
    fn edges_after_crossings_are_rejected() {
        let text = "p onep 4 2 1\ne 1 2 1\nx 1 2 3 4\ne 3 4 1\n";
        let (line, message) = parse_err(text);
        // The crossing line already fails: its second edge is undeclared.
        assert_eq!((line, message.as_str()), (3, "edge (3, 4) is not declared"));

        let text = "p onep 4 3 1\ne 1 2 1\ne 3 4 1\nx 1 2 3 4\ne 1 3 1\n";
        assert_eq!(
            parse_err(text),
            (5, "edge line after a crossing line".into())
        );
    }

    #[test]
    fn unknown_tags_are_rejected() {
        assert_eq!(
            parse_err("p onep 1 0 0\nq zzz\n"),
            (2, "unknown line type \"q\"".into())
        );
    }
}
