//! Text formats: graph6, edge lists and structure JSON documents.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;
use crate::structure::{RelationalStructure, StructureDoc};

const G6_HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// graph6 encoding without header or trailing newline.
pub fn to_graph6(g: &FiniteGraph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

/// Parses one graph6 line; `line` is used for error positions.
pub fn parse_graph6_line(text: &str, line: usize) -> Result<FiniteGraph> {
    let body = text.strip_prefix(G6_HEADER).unwrap_or(text);
    let offset = text.len() - body.len();
    let bytes = body.as_bytes();
    let bad = |pos: usize, msg: &str| Error::parse(line, offset + pos + 1, msg);
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(i, "byte outside the graph6 range 63..=126"));
        }
    }
    let (n, start) = match bytes.first() {
        None => return Err(bad(0, "empty graph6 string")),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(bad(1, "graphs with more than 258047 vertices are not supported"));
            }
            if bytes.len() < 4 {
                return Err(bad(bytes.len(), "truncated vertex count"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if bytes.len() - start != needed {
        return Err(bad(
            bytes.len().min(start + needed),
            &format!("expected {needed} data bytes for {n} vertices, found {}", bytes.len() - start),
        ));
    }
    let mut g = FiniteGraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = bytes[start + k / 6] - 63;
            if b >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// All graphs in a graph6 file (blank lines skipped).
pub fn parse_graph6(text: &str) -> Result<Vec<FiniteGraph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6_line(l.trim_end(), i + 1))
        .collect()
}

/// Edge list: an `n m` header followed by `m` lines `u v`; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<FiniteGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing 'n m' header"))?;
    let head = numbers(header, hl, 2)?;
    let (n, m) = (head[0], head[1]);
    let mut g = FiniteGraph::new(n);
    let mut seen = 0;
    for (ln, l) in lines {
        let uv = numbers(l, ln, 2)?;
        let col = column_of_token(l, 0);
        g.try_add_edge(uv[0], uv[1]).map_err(|e| Error::parse(ln, col, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(hl, 1, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

fn column_of_token(line: &str, index: usize) -> usize {
    let mut col = 1;
    let mut count = 0;
    let mut in_token = false;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_token = false;
        } else if !in_token {
            in_token = true;
            if count == index {
                col = i + 1;
                break;
            }
            count += 1;
        }
    }
    col
}

fn numbers(line: &str, ln: usize, expected: usize) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != expected {
        return Err(Error::parse(
            ln,
            column_of_token(line, tokens.len().min(expected)),
            format!("expected {expected} integers, found {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, column_of_token(line, i), format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

/// Edge list text with header.
pub fn to_edge_list(g: &FiniteGraph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads a graph from graph6 (optionally with header) or edge-list text.
pub fn parse_graph(text: &str) -> Result<FiniteGraph> {
    let first = text
        .lines()
        .enumerate()
        .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match first {
        Some((i, l)) if l.trim().split_whitespace().count() == 1 => parse_graph6_line(l.trim(), i + 1),
        Some(_) => parse_edge_list(text),
        None => Err(Error::parse(1, 1, "no graph found")),
    }
}

pub fn parse_structure_json(text: &str) -> Result<RelationalStructure> {
    let doc: StructureDoc =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    RelationalStructure::from_document(&doc)
}

pub fn structure_to_json(s: &RelationalStructure) -> String {
    serde_json::to_string(&s.to_document()).expect("documents serialise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&named::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&named::petersen()), "IheA@GUAo");
        assert_eq!(parse_graph6_line("Dhc", 1).unwrap(), named::cycle(5));
        assert_eq!(parse_graph6_line(">>graph6<<Dhc", 1).unwrap(), named::cycle(5));
    }

    #[test]
    fn long_form_vertex_count() {
        let g = named::cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6_line(&s, 1).unwrap(), g);
    }

    #[test]
    fn graph6_errors_have_positions() {
        match parse_graph6_line("Dh", 3) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6_line("D h", 1) {
            Err(Error::Parse { column: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = named::petersen();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_graph(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_errors() {
        match parse_edge_list("3 1\n0 x\n") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 7\n").is_err());
    }
}
