//! Text codecs for graphs: graph6 and a plain edge-list format.
//!
//! graph6 layout (for orders up to 62): byte 0 is `n + 63`; the upper
//! triangle of the adjacency matrix is read column by column
//! (x01, x02, x12, x03, ...), packed big-endian into 6-bit groups, zero
//! padded, and each group is offset by 63 into the printable range.
//!
//! Edge-list layout: a first line `n m`, then `m` lines `u v` with
//! 0-indexed endpoints.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

/// Parse failures, with enough position information to point at the
/// offending byte or line.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("byte {offset}: invalid graph6 byte 0x{byte:02x} (printable range is 63..=126)")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("byte 0: order {n} exceeds the supported maximum of {MAX_VERTICES} vertices")]
    OrderTooLarge { n: usize },
    #[error("byte 0: zero-vertex graphs are not representable here")]
    ZeroVertices,
    #[error("input ends at byte {got}; {expected} bytes are required for this order")]
    Truncated { expected: usize, got: usize },
    #[error("byte {offset}: trailing data after a complete graph6 string")]
    TrailingData { offset: usize },
    #[error("byte {offset}: padding bits must be zero")]
    NonzeroPadding { offset: usize },
    #[error("line {line}: expected {expected}")]
    Malformed { line: usize, expected: String },
    #[error("line {line}: vertex {v} out of range for order {n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: loop edge at vertex {v}")]
    LoopEdge { line: usize, v: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: {m} edges declared but {got} provided")]
    EdgeCountMismatch { line: usize, m: usize, got: usize },
    #[error("graph structure: {0}")]
    Structure(#[from] GraphError),
}

/// Number of bytes a graph6 string of order `n` occupies.
fn graph6_len(n: usize) -> usize {
    1 + (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph as a graph6 string.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(graph6_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string. Strict: padding bits must be zero and no
/// trailing bytes are tolerated, so encoding is a left inverse.
pub fn decode_graph6(s: &str) -> Result<Graph, ParseError> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::InvalidByte { offset, byte: b });
        }
    }
    let n = (bytes[0] - 63) as usize;
    if n == 0 {
        return Err(ParseError::ZeroVertices);
    }
    if n == 63 || n > MAX_VERTICES {
        // 126 ('~') starts a multi-byte order header; those orders are all
        // beyond this library's capacity anyway.
        return Err(ParseError::OrderTooLarge {
            n: if bytes[0] == 126 { 63 } else { n },
        });
    }
    let expected = graph6_len(n);
    if bytes.len() < expected {
        return Err(ParseError::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(ParseError::TrailingData { offset: expected });
    }
    let mut edges = Vec::new();
    let mut pos = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + pos / 6] - 63;
            if byte >> (5 - pos % 6) & 1 == 1 {
                edges.push((u, v));
            }
            pos += 1;
        }
    }
    // Remaining bits of the last group must be zero padding.
    while pos % 6 != 0 {
        let byte = bytes[1 + pos / 6] - 63;
        if byte >> (5 - pos % 6) & 1 == 1 {
            return Err(ParseError::NonzeroPadding { offset: 1 + pos / 6 });
        }
        pos += 1;
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Formats a graph in the edge-list format.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}

/// Parses the edge-list format. Lines are 1-indexed in diagnostics; blank
/// lines and surrounding whitespace are tolerated, duplicate edges are not.
pub fn parse_edge_list(s: &str) -> Result<Graph, ParseError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(ParseError::Empty)?;
    let mut it = header.split_whitespace();
    let expected = "two integers `n m`";
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::Malformed {
            line,
            expected: expected.into(),
        })?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::Malformed {
            line,
            expected: expected.into(),
        })?;
    if it.next().is_some() {
        return Err(ParseError::Malformed {
            line,
            expected: expected.into(),
        });
    }
    if n == 0 {
        return Err(ParseError::Structure(GraphError::ZeroVertices));
    }
    if n > MAX_VERTICES {
        return Err(ParseError::Structure(GraphError::CapacityExceeded { n }));
    }
    let mut g = Graph::empty(n)?;
    let mut got = 0usize;
    let mut last_line = line;
    for (line, text) in lines {
        last_line = line;
        let mut it = text.split_whitespace();
        let expected = "two vertex indices `u v`";
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::Malformed {
                line,
                expected: expected.into(),
            })?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ParseError::Malformed {
                line,
                expected: expected.into(),
            })?;
        if it.next().is_some() {
            return Err(ParseError::Malformed {
                line,
                expected: expected.into(),
            });
        }
        if u >= n {
            return Err(ParseError::VertexOutOfRange { line, v: u, n });
        }
        if v >= n {
            return Err(ParseError::VertexOutOfRange { line, v, n });
        }
        if u == v {
            return Err(ParseError::LoopEdge { line, v });
        }
        if g.has_edge(u, v) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: u.min(v),
                v: u.max(v),
            });
        }
        got += 1;
        if got > m {
            return Err(ParseError::EdgeCountMismatch {
                line,
                m,
                got,
            });
        }
        g = g.toggle_edge(u, v)?;
    }
    if got != m {
        return Err(ParseError::EdgeCountMismatch {
            line: last_line,
            m,
            got,
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        // K4 and the 4-cycle, checked against the de-facto standard layout
        // by hand: K4 upper triangle is all ones -> 111111 -> '~' = 126.
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(encode_graph6(&k4), "C~");
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        // bits x01 x02 x12 x03 x13 x23 = 1 0 1 1 0 1 -> 101101 = 45 -> 45+63 = 'l'
        assert_eq!(encode_graph6(&c4), "Cl");
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(encode_graph6(&k1), "@");
    }

    #[test]
    fn decode_rejects_bad_bytes_with_offset() {
        let err = decode_graph6("C\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::InvalidByte {
                offset: 1,
                byte: b'\n'
            }
        );
        assert_eq!(decode_graph6("").unwrap_err(), ParseError::Empty);
    }

    #[test]
    fn decode_rejects_truncation_and_trailing() {
        assert_eq!(
            decode_graph6("C").unwrap_err(),
            ParseError::Truncated {
                expected: 2,
                got: 1
            }
        );
        assert_eq!(
            decode_graph6("C~~").unwrap_err(),
            ParseError::TrailingData { offset: 2 }
        );
    }

    #[test]
    fn decode_rejects_nonzero_padding() {
        // order 2: one adjacency bit + 5 padding bits; 63+1 = '@'+1 = 'A'
        // with a padding bit set is 0b000001 -> still fine; set a lower bit.
        assert!(decode_graph6("A_").is_ok()); // 0b100000: edge present
        assert!(decode_graph6("A?").is_ok()); // 0b000000: no edge
        let err = decode_graph6("A@").unwrap_err(); // 0b000001: padding bit
        assert_eq!(err, ParseError::NonzeroPadding { offset: 1 });
    }

    #[test]
    fn decode_guards_order() {
        let too_big = String::from_utf8(vec![63 + 40]).unwrap();
        assert!(matches!(
            decode_graph6(&too_big).unwrap_err(),
            ParseError::OrderTooLarge { n: 40 }
        ));
        assert_eq!(decode_graph6("?").unwrap_err(), ParseError::ZeroVertices);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let text = format_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_diagnostics() {
        assert!(matches!(
            parse_edge_list("3 1\n0 0\n").unwrap_err(),
            ParseError::LoopEdge { line: 2, v: 0 }
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err(),
            ParseError::DuplicateEdge { line: 3, u: 0, v: 1 }
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n").unwrap_err(),
            ParseError::EdgeCountMismatch { m: 2, got: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 7\n").unwrap_err(),
            ParseError::VertexOutOfRange { line: 2, v: 7, n: 3 }
        ));
        assert!(matches!(
            parse_edge_list("nope\n").unwrap_err(),
            ParseError::Malformed { line: 1, .. }
        ));
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 1usize..=13, bits in any::<u128>()) {
            let g = crate::graph::tests::arbitrary_graph(n, bits);
            let s = encode_graph6(&g);
            prop_assert_eq!(decode_graph6(&s).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trip_prop(n in 1usize..=13, bits in any::<u128>()) {
            let g = crate::graph::tests::arbitrary_graph(n, bits);
            prop_assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        }
    }
}
