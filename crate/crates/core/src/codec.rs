//! Interchange formats: graph6 (canonical machine format) and a whitespace
//! edge-list format (for hand-authored inputs).

use crate::graph::Graph;
use crate::{Error, Result};
use std::collections::HashMap;

const HEADER: &str = ">>graph6<<";

/// Decode a single graph6 record. `n <= 62` only (single length byte).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match text.strip_prefix(HEADER) {
        Some(rest) => (rest, HEADER.len()),
        None => (text, 0),
    };
    let bytes = body.as_bytes();
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset: base + offset,
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty record"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b} outside printable range 63..=126")));
        }
    }
    if bytes[0] == 126 {
        return Err(err(0, "multi-byte order encoding not supported (n > 62)"));
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - 1 < need {
        return Err(err(
            bytes.len(),
            &format!("truncated payload: need {need} bytes, got {}", bytes.len() - 1),
        ));
    }
    if bytes.len() - 1 > need {
        return Err(err(1 + need, "trailing bytes after payload"));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            let val = (byte - 63) >> (5 - bit % 6) & 1;
            if val == 1 {
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Encode as graph6 (no `>>graph6<<` prefix). Errors for `n > 62`.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > 62 {
        return Err(Error::OrderTooLarge(n));
    }
    let mut out = vec![63 + n as u8];
    let mut cur = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | u8::from(g.adjacent(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(cur + 63);
                cur = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((cur << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).unwrap())
}

/// Parse the edge-list format: one `u v` pair per line, `#` comments and
/// blank lines ignored, optional leading `n=<count>` line declaring the
/// minimum order (for isolated vertices). Vertex names are arbitrary
/// tokens, assigned ids in first-appearance order and kept as labels.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut saw_data = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if !saw_data {
            if let Some(rest) = line.strip_prefix("n=") {
                declared_n = Some(rest.trim().parse().map_err(|_| Error::EdgeList {
                    line: lineno + 1,
                    reason: format!("bad vertex count {rest:?}"),
                })?);
                saw_data = true;
                continue;
            }
        }
        saw_data = true;
        let mut toks = line.split_whitespace();
        let (u, v) = match (toks.next(), toks.next(), toks.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::EdgeList {
                    line: lineno + 1,
                    reason: format!("expected two tokens, got {line:?}"),
                })
            }
        };
        if u == v {
            return Err(Error::EdgeList {
                line: lineno + 1,
                reason: format!("self-loop on {u:?}"),
            });
        }
        let mut id_of = |name: &str| -> usize {
            *ids.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() - 1
            })
        };
        let (ui, vi) = (id_of(u), id_of(v));
        edges.push((ui, vi));
    }

    let n = declared_n.unwrap_or(0).max(labels.len());
    while labels.len() < n {
        labels.push(labels.len().to_string());
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.set_labels(labels);
    Ok(g)
}

/// Edge-list rendering using vertex labels, one edge per line; isolated
/// vertices are declared with a leading `n=` header.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let n = g.order();
    let isolated = (0..n).any(|v| g.degree(v) == 0);
    if isolated || n == 0 {
        out.push_str(&format!("n={n}\n"));
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.adjacent(u, v) {
                out.push_str(&format!("{} {}\n", g.label_of(u), g.label_of(v)));
            }
        }
    }
    out
}
