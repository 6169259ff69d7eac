//! File formats.
//!
//! **digraph6** (bit-exact): byte `&` (0x26), then byte `n + 63` with
//! `n <= 62`, then the `n * n` adjacency bits in row-major order
//! (diagonal included, always 0), packed big-endian six bits per byte,
//! each byte offset by 63, zero-padded to a multiple of six bits. One
//! digraph per newline-terminated line. An optional `>>digraph6<<`
//! header prefix on the first line is tolerated when reading.
//!
//! **edge list**: first significant line holds the order `n`, then one
//! `u v` pair per line, 0-indexed and whitespace-separated. Blank lines
//! and `#` comments are ignored throughout.

use std::io::{BufRead, Write};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

const D6_HEADER: &str = ">>digraph6<<";

/// Encodes one digraph as a digraph6 line (no trailing newline).
pub fn to_digraph6(g: &Digraph) -> String {
    let n = g.order();
    debug_assert!(n <= Digraph::MAX_ORDER);
    let mut out = Vec::with_capacity(2 + (n * n).div_ceil(6));
    out.push(b'&');
    out.push(b'?' + n as u8); // '?' is 63
    let mut acc = 0u8;
    let mut filled = 0u8;
    for i in 0..n {
        for j in 0..n {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("digraph6 bytes are printable ASCII")
}

/// Decodes one digraph6 line. `line_no` is used for error reporting.
pub fn from_digraph6(line: &str, line_no: usize) -> Result<Digraph> {
    let parse_err = |msg: String| Error::Parse { format: "digraph6", line: line_no, msg };
    let line = line.strip_prefix(D6_HEADER).unwrap_or(line);
    let bytes = line.trim_end().as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(parse_err("missing leading '&'".into()));
    }
    let Some(&order_byte) = bytes.get(1) else {
        return Err(parse_err("missing order byte".into()));
    };
    if !(63..=125).contains(&order_byte) {
        return Err(parse_err(format!("order byte {order_byte} out of range")));
    }
    let n = (order_byte - 63) as usize;
    let payload = &bytes[2..];
    let needed = (n * n).div_ceil(6);
    if payload.len() != needed {
        return Err(parse_err(format!(
            "expected {needed} payload bytes for order {n}, got {}",
            payload.len()
        )));
    }

    let mut g = Digraph::new(n)?;
    let mut bit_index = 0usize;
    for &b in payload {
        if !(63..=126).contains(&b) {
            return Err(parse_err(format!("payload byte {b} out of range")));
        }
        let chunk = b - 63;
        for k in (0..6).rev() {
            let bit = (chunk >> k) & 1;
            if bit_index < n * n {
                if bit == 1 {
                    let (i, j) = (bit_index / n, bit_index % n);
                    if i == j {
                        return Err(parse_err(format!("loop bit set at vertex {i}")));
                    }
                    g.add_edge(i, j)
                        .map_err(|e| parse_err(e.to_string()))?;
                }
            } else if bit == 1 {
                return Err(parse_err("nonzero padding bits".into()));
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

/// Reads every digraph from a digraph6 stream, one per line.
pub fn read_digraph6_stream(reader: impl BufRead) -> Result<Vec<Digraph>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(from_digraph6(&line, idx + 1)?);
    }
    Ok(out)
}

pub fn write_digraph6_stream(mut writer: impl Write, graphs: &[Digraph]) -> Result<()> {
    for g in graphs {
        writeln!(writer, "{}", to_digraph6(g))?;
    }
    Ok(())
}

/// Serializes a digraph in the edge-list text format.
pub fn to_edge_list(g: &Digraph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list text format.
pub fn from_edge_list(text: &str) -> Result<Digraph> {
    let mut graph: Option<Digraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let parse_err =
            |msg: String| Error::Parse { format: "edge list", line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match &mut graph {
            None => {
                let n: usize = line
                    .parse()
                    .map_err(|_| parse_err(format!("expected order, got {line:?}")))?;
                graph = Some(Digraph::new(n)?);
            }
            Some(g) => {
                let mut it = line.split_whitespace();
                let (u, v) = (it.next(), it.next());
                let trailing = it.next();
                let (Some(u), Some(v), None) = (u, v, trailing) else {
                    return Err(parse_err(format!("expected 'u v', got {line:?}")));
                };
                let u: usize = u
                    .parse()
                    .map_err(|_| parse_err(format!("bad vertex {u:?}")))?;
                let v: usize = v
                    .parse()
                    .map_err(|_| parse_err(format!("bad vertex {v:?}")))?;
                g.add_edge(u, v).map_err(|e| parse_err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        format: "edge list",
        line: 0,
        msg: "no order line found".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn digraph6_hand_computed_bytes() {
        // Single edge 0 -> 1 on two vertices: bits 0100, padded 010000.
        let g = Digraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(to_digraph6(&g), "&AO");

        // Dicycle(3): bits 010 001 100 -> 010001 100000 -> 17, 32.
        let d3 = Digraph::dicycle(3).unwrap();
        assert_eq!(to_digraph6(&d3), "&BP_");

        // Null digraph.
        assert_eq!(to_digraph6(&Digraph::new(0).unwrap()), "&?");
    }

    #[test]
    fn digraph6_rejects_malformed_lines() {
        assert!(matches!(
            from_digraph6("BP_", 3),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(from_digraph6("&B", 1).is_err()); // truncated payload
        assert!(from_digraph6("&BP_?", 1).is_err()); // extra payload
        assert!(from_digraph6("&B\u{7f}_", 1).is_err()); // byte out of range
                                                         // Loop bit: order 2, bits 1000 -> chunk 100000 = 32 -> '_'.
        assert!(from_digraph6("&A_", 1).is_err());
    }

    #[test]
    fn digraph6_header_prefix_tolerated() {
        let g = Digraph::dicycle(3).unwrap();
        let line = format!("{D6_HEADER}{}", to_digraph6(&g));
        assert_eq!(from_digraph6(&line, 1).unwrap(), g);
    }

    #[test]
    fn digraph6_stream_round_trip() {
        let graphs = vec![
            Digraph::new(0).unwrap(),
            Digraph::dicycle(5).unwrap(),
            Digraph::imploding_star(4, 2).unwrap(),
        ];
        let mut buf = Vec::new();
        write_digraph6_stream(&mut buf, &graphs).unwrap();
        let back = read_digraph6_stream(buf.as_slice()).unwrap();
        assert_eq!(back, graphs);
    }

    #[test]
    fn edge_list_round_trip_with_comments() {
        let text = "# a comment\n\n4\n0 1\n1 2 # trailing comment\n\n2 3\n";
        let g = from_edge_list(text).unwrap();
        assert_eq!(g, Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap());
        let back = from_edge_list(&to_edge_list(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        match from_edge_list("3\n0 1\n0 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn digraph6_round_trip(n in 0usize..10, seed in any::<u64>()) {
            let mut g = Digraph::new(n).unwrap();
            let mut state = seed;
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        if state >> 63 == 1 {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
            }
            let line = to_digraph6(&g);
            prop_assert_eq!(from_digraph6(&line, 1).unwrap(), g);
        }
    }
}
