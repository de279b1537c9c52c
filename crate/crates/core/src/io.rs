//! graph6 and edge-list text formats.
//!
//! graph6: a size header (`63 + n` for `n <= 62`, otherwise `126` followed by
//! three 6-bit groups) and the upper triangle of the adjacency matrix in
//! column-major order (`x01, x02, x12, x03, ...`), six bits per byte, each
//! byte offset by 63 and the last one zero-padded.
//!
//! Edge list: one `u v` pair per line (0-indexed), `#` starts a comment, and
//! an optional `n <count>` line before the first edge fixes the order.

use std::io::BufRead;

use thiserror::Error;

use crate::bits::bit;
use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed graph6 header byte {0:#04x}")]
    BadHeader(u8),
    #[error("graph6 order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("invalid graph6 payload byte {byte:#04x} at offset {offset}")]
    BadByte { byte: u8, offset: usize },
    #[error("truncated graph6 payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 payload ({0} extra bytes)")]
    Trailing(usize),
    #[error("nonzero padding bits in the final graph6 byte")]
    NonzeroPadding,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const HEADER_PREFIX: &[u8] = b">>graph6<<";

fn sixbits(byte: u8, offset: usize) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::BadByte { byte, offset })
    }
}

/// Parses a single graph6 string (an optional `>>graph6<<` prefix and a
/// trailing newline are accepted).
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let mut s = text.strip_prefix(HEADER_PREFIX).unwrap_or(text);
    while let Some((&last, rest)) = s.split_last() {
        if last == b'\n' || last == b'\r' {
            s = rest;
        } else {
            break;
        }
    }
    let (&first, _) = s.split_first().ok_or(Graph6Error::Empty)?;
    let (n, header_len) = if first == 126 {
        if s.get(1) == Some(&126) {
            // 8-byte form for n >= 258048; never within the cap.
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        if s.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: s.len(),
            });
        }
        let mut n = 0usize;
        for (i, &b) in s[1..4].iter().enumerate() {
            n = (n << 6) | sixbits(b, i + 1)? as usize;
        }
        (n, 4)
    } else if (63..126).contains(&first) {
        ((first - 63) as usize, 1)
    } else {
        return Err(Graph6Error::BadHeader(first));
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let payload = &s[header_len..];
    if payload.len() < nbytes {
        return Err(Graph6Error::Truncated {
            expected: nbytes,
            found: payload.len(),
        });
    }
    if payload.len() > nbytes {
        return Err(Graph6Error::Trailing(payload.len() - nbytes));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    let mut values = Vec::with_capacity(nbytes);
    for (i, &b) in payload.iter().enumerate() {
        values.push(sixbits(b, header_len + i)?);
    }
    for j in 1..n {
        for i in 0..j {
            let byte = values[k / 6];
            if byte & (0x20 >> (k % 6)) != 0 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let used = nbits % 6;
        if values[nbytes - 1] & ((1u8 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_rows(rows).expect("graph6 decoding yields a simple graph"))
}

/// Encodes `g` as graph6 (no trailing newline), canonical for its labeling.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(63 + acc);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(63 + (acc << (6 - used)));
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Reads a newline-delimited graph6 corpus; blank lines are skipped.
pub fn read_graph6_corpus<R: BufRead>(reader: R) -> Result<Vec<Graph>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let g = parse_graph6(trimmed.as_bytes()).map_err(|source| FormatError::Graph6 { line: i + 1, source })?;
        out.push(g);
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| FormatError::EdgeList { line: line_no, message };
        if fields.len() != 2 {
            return Err(bad(format!("expected two fields, found {}", fields.len())));
        }
        if fields[0] == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(bad("the order line must precede every edge and appear once".into()));
            }
            let n = fields[1]
                .parse::<usize>()
                .map_err(|e| bad(format!("invalid vertex count {:?}: {e}", fields[1])))?;
            declared = Some(n);
            continue;
        }
        let parse = |f: &str| {
            f.parse::<usize>()
                .map_err(|e| FormatError::EdgeList {
                    line: line_no,
                    message: format!("invalid vertex index {f:?}: {e}"),
                })
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangle_and_singleton() {
        assert_eq!(parse_graph6(b"Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(emit_graph6(&Graph::complete(1).unwrap()), "@");
        assert_eq!(emit_graph6(&Graph::complete(0).unwrap()), "?");
        assert_eq!(parse_graph6(b"Bw\n").unwrap().edge_count(), 3);
        assert_eq!(parse_graph6(b">>graph6<<Bw").unwrap().n(), 3);
    }

    #[test]
    fn known_encodings() {
        // P_4 = 0-1-2-3: bits x01 x02 x12 x03 x13 x23 = 1 0 1 0 0 1.
        assert_eq!(emit_graph6(&path(4).unwrap()), "Ch");
        assert_eq!(emit_graph6(&cycle(5).unwrap()), "Dhc");
    }

    #[test]
    fn distinct_errors() {
        assert_eq!(parse_graph6(b""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6(b" w"), Err(Graph6Error::BadHeader(b' ')));
        assert_eq!(parse_graph6(b"D"), Err(Graph6Error::Truncated { expected: 2, found: 0 }));
        assert_eq!(parse_graph6(b"Bww"), Err(Graph6Error::Trailing(1)));
        assert_eq!(parse_graph6(b"B\x7f"), Err(Graph6Error::BadByte { byte: 0x7f, offset: 1 }));
        assert_eq!(parse_graph6(b"B~"), Err(Graph6Error::NonzeroPadding));
        assert_eq!(parse_graph6(b"~?@A"), Err(Graph6Error::TooLarge(66)));
    }

    #[test]
    fn extended_header_round_trip() {
        let g = Graph::complete(64).unwrap().without_edge(3, 60).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
        let g63 = path(63).unwrap();
        assert_eq!(parse_graph6(emit_graph6(&g63).as_bytes()).unwrap(), g63);
    }

    #[test]
    fn seeded_round_trip_200() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a6);
        for _ in 0..200 {
            let n = rng.random_range(0..=20);
            let p: f64 = rng.random();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(parse_graph6(emit_graph6(&g).as_bytes()).unwrap(), g);
        }
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..=64, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        g = g.with_edge(u, v).unwrap();
                    }
                }
            }
            let text = emit_graph6(&g);
            prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# a 4-cycle\nn 5\n0 1\n1 2 # inline\n2 3\n3 0\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        let g = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3).unwrap());
        assert!(matches!(
            parse_edge_list("0 1 2\n"),
            Err(FormatError::EdgeList { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list("0 x\n"), Err(FormatError::EdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\nn 3\n"), Err(FormatError::EdgeList { line: 2, .. })));
        assert!(matches!(parse_edge_list("n 2\n0 2\n"), Err(FormatError::Graph(_))));
    }

    #[test]
    fn corpus_reports_line_numbers() {
        let text = "Bw\n\n@\nB!\n";
        let err = read_graph6_corpus(text.as_bytes()).unwrap_err();
        assert!(matches!(err, FormatError::Graph6 { line: 4, .. }), "{err}");
        assert_eq!(read_graph6_corpus("Bw\n@\n".as_bytes()).unwrap().len(), 2);
    }
}
