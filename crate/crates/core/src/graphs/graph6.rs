//! graph6 text encoding.
//!
//! A graph on `n < 63` vertices is one byte `n + 63` followed by the upper triangle of the
//! adjacency matrix, read column by column (`(0,1), (0,2), (1,2), (0,3), …`), packed
//! big-endian into 6-bit groups, zero-padded, each group offset by 63. For
//! `63 ≤ n ≤ 258047` the size is written as byte 126 followed by three 6-bit groups.

use super::graph::{Graph, MAX_VERTICES};
use super::GraphError;

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bad = |why: &str| GraphError::Graph6(format!("{why} in {s:?}"));
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, ..] => return Err(bad("sizes above 258047 are not supported")),
        [126, a, b, c, rest @ ..] => {
            (((*a as usize - 63) << 12) | ((*b as usize - 63) << 6) | (*c as usize - 63), rest)
        }
        [126, ..] => return Err(bad("truncated size")),
        [first, rest @ ..] => (*first as usize - 63, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(bad("wrong body length"));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
