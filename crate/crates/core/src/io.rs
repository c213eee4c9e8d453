//! Text formats: whitespace edge lists and graph6.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edge-list" | "edgelist" | "edges" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimpleGraph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            parse_graph6(line.trim_end())
        }
    }
}

pub fn write_graph(g: &SimpleGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Graph6 => to_graph6(g),
    }
}

/// Guesses the format: a first token that parses as an integer means edge list.
pub fn detect_format(text: &str) -> GraphFormat {
    let first = text.split_whitespace().next().unwrap_or("");
    if first.parse::<usize>().is_ok() {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    }
}

/// Parses `n m` followed by `m` lines `u v` (0-indexed).
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(1, 0, "empty input"))?;
    let nums = parse_ints(hline, header, 2)?;
    let (n, m) = (nums[0], nums[1]);
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices { n, max: MAX_ORDER });
    }
    let mut g = SimpleGraph::empty(n)?;
    let mut seen = 0;
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if seen == m {
            return Err(Error::parse(
                ln,
                0,
                format!("more than the declared {m} edges"),
            ));
        }
        let uv = parse_ints(ln, line, 2)?;
        match g.add_edge(uv[0], uv[1]) {
            Ok(_) => {}
            Err(e @ Error::VertexOutOfRange { .. }) | Err(e @ Error::SelfLoop(_)) => {
                return Err(Error::parse(ln, 0, e.to_string()))
            }
            Err(e) => return Err(e),
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(
            hline,
            0,
            format!("header declares {m} edges but {seen} were given"),
        ));
    }
    Ok(g)
}

fn parse_ints(line_no: usize, line: &str, want: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(want);
    let mut offset = 0;
    for tok in line.split_whitespace() {
        let byte = line[offset..]
            .find(tok)
            .map(|p| p + offset)
            .unwrap_or(offset);
        offset = byte + tok.len();
        let v = tok.parse::<usize>().map_err(|_| {
            Error::parse(
                line_no,
                byte,
                format!("expected a non-negative integer, found `{tok}`"),
            )
        })?;
        out.push(v);
    }
    if out.len() != want {
        return Err(Error::parse(
            line_no,
            0,
            format!("expected {want} integers, found {}", out.len()),
        ));
    }
    Ok(out)
}

pub fn to_edge_list(g: &SimpleGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

const G6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(line: &str) -> Result<SimpleGraph> {
    let (skip, body) = match line.strip_prefix(G6_HEADER) {
        Some(rest) => (G6_HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                1,
                skip + i,
                format!("byte {b:#04x} outside the graph6 range"),
            ));
        }
    }
    let (n, header_len) = match body {
        [] => return Err(Error::parse(1, skip, "missing order byte")),
        [126, 126, ..] => {
            return Err(Error::parse(
                1,
                skip,
                "orders above 258047 are not supported",
            ))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(1, skip + body.len(), "truncated order field"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices { n, max: MAX_ORDER });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != need {
        return Err(Error::parse(
            1,
            skip + header_len + data.len().min(need),
            format!("expected {need} adjacency bytes, found {}", data.len()),
        ));
    }
    let mut g = SimpleGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = data[need - 1] - 63;
        if pad & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::parse(
                1,
                skip + header_len + need - 1,
                "nonzero padding bits",
            ));
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle_edge_list() {
        let g = parse_graph("3 3\n0 1\n1 2\n0 2", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, SimpleGraph::complete(3));
    }

    #[test]
    fn out_of_range_vertex_reports_line() {
        match parse_graph("2 1\n0 5", GraphFormat::EdgeList) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_token_reports_byte() {
        match parse_graph("3 1\n0  x", GraphFormat::EdgeList) {
            Err(Error::Parse {
                line: 2, byte: 3, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_graph("3 2\n0 1\n", GraphFormat::EdgeList).is_err());
    }

    #[test]
    fn graph6_k4() {
        assert_eq!(to_graph6(&SimpleGraph::complete(4)), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), SimpleGraph::complete(4));
        assert_eq!(
            parse_graph6(">>graph6<<C~").unwrap(),
            SimpleGraph::complete(4)
        );
    }

    #[test]
    fn graph6_known_strings() {
        // Petersen graph and the 5-cycle as printed by nauty's tools.
        assert_eq!(to_graph6(&SimpleGraph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&SimpleGraph::empty(0).unwrap()), "?");
        assert_eq!(to_graph6(&SimpleGraph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&SimpleGraph::complete(2)), "A_");
        let big = SimpleGraph::path(64);
        assert_eq!(parse_graph6(&to_graph6(&big)).unwrap(), big);
        assert!(to_graph6(&big).starts_with("~?@"));
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
        assert!(parse_graph6("B@").is_err(), "padding bits must be zero");
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (0usize..=20).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = SimpleGraph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn formats_round_trip(g in arb_graph()) {
            prop_assert_eq!(&parse_graph6(&to_graph6(&g)).unwrap(), &g);
            prop_assert_eq!(&parse_edge_list(&to_edge_list(&g)).unwrap(), &g);
        }
    }
}
