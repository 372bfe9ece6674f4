//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column-major order, packed six bits per printable
//! byte (value + 63).

use crate::bitset::MAX_VERTICES;
use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        None => Err(err(offset, "unexpected end of input")),
        Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok(b - BIAS),
        Some(&b) => Err(err(
            offset,
            format!("byte 0x{b:02x} outside the graph6 range"),
        )),
    }
}

/// Parses the size header; returns `(n, header_len)`.
fn parse_order(bytes: &[u8], start: usize) -> Result<(usize, usize)> {
    let first = sextet(bytes, start).map_err(|e| match e {
        Error::Graph6 { offset, .. } if offset >= bytes.len() => err(offset, "missing size header"),
        other => other,
    })?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    // 126: either 3 or 6 following sextets.
    let wide = bytes.get(start + 1) == Some(&126);
    let (skip, groups) = if wide { (2, 6) } else { (1, 3) };
    let mut n = 0usize;
    for i in 0..groups {
        n = (n << 6) | sextet(bytes, start + skip + i)? as usize;
    }
    Ok((n, skip + groups))
}

/// Parses one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed_start = text.len() - text.trim_start().len();
    let text_trimmed = text.trim();
    let bytes = text.as_bytes();
    let mut pos = trimmed_start;
    let end = trimmed_start + text_trimmed.len();
    if text_trimmed.starts_with(HEADER) {
        pos += HEADER.len();
    }
    let bytes = &bytes[..end];

    let (n, header_len) = parse_order(bytes, pos)?;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        });
    }
    pos += header_len;

    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let mut g = Graph::empty(n)?;
    let (mut i, mut j) = (0usize, 1usize);
    for k in 0..body_len {
        let word = sextet(bytes, pos + k)?;
        for b in (0..6).rev() {
            let bit_index = k * 6 + (5 - b);
            let set = word >> b & 1 == 1;
            if bit_index >= bits {
                if set {
                    return Err(err(pos + k, "nonzero padding bits"));
                }
                continue;
            }
            if set {
                g.add_edge(i, j)?;
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    let tail = pos + body_len;
    if tail < bytes.len() {
        return Err(err(tail, "trailing bytes after graph body"));
    }
    Ok(g)
}

/// Encodes `g` as graph6 without the optional `>>graph6<<` prefix.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }

    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + BIAS);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Iterates over the graph lines of a graph6 file, skipping blank lines and
/// `>>` header lines. Yields `(1-based line number, trimmed text)`.
pub fn graph6_lines<'a>(text: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| is_graph_line(l))
}

/// True if the line carries a graph rather than a blank or a `>>` format
/// header. A `>>graph6<<` prefix followed by a graph on the same line counts
/// as a graph line.
pub fn is_graph_line(line: &str) -> bool {
    let l = line.trim();
    if let Some(rest) = l.strip_prefix(HEADER) {
        return !rest.is_empty();
    }
    !l.is_empty() && !l.starts_with(">>")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_small_examples() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(k3.size(), 3);

        let p3 = parse_graph6("Bg").unwrap();
        assert_eq!(p3.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let k1 = parse_graph6("@").unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn encodes_small_examples() {
        assert_eq!(write_graph6(&edgeless(1)), "@");
        assert_eq!(write_graph6(&complete(3)), "Bw");
        assert_eq!(write_graph6(&path(3)), "Bg");
        assert_eq!(
            parse_graph6(&write_graph6(&petersen())).unwrap(),
            petersen()
        );
    }

    #[test]
    fn long_header_round_trip() {
        let g = cycle(70);
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn accepts_optional_prefix_and_whitespace() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), complete(3));
        assert_eq!(parse_graph6("  Bw  ").unwrap(), complete(3));
    }

    #[test]
    fn errors_name_the_byte_offset() {
        match parse_graph6("") {
            Err(Error::Graph6 { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        // K4 needs one body byte.
        match parse_graph6("C") {
            Err(Error::Graph6 { offset: 1, reason }) => assert!(reason.contains("end")),
            other => panic!("{other:?}"),
        }
        match parse_graph6("BwX") {
            Err(Error::Graph6 { offset: 2, reason }) => assert!(reason.contains("trailing")),
            other => panic!("{other:?}"),
        }
        match parse_graph6("B\u{7f}") {
            Err(Error::Graph6 { offset: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        // "Bx" sets a padding bit.
        assert!(matches!(
            parse_graph6("Bx"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
    }

    #[test]
    fn line_filter_skips_headers_and_blanks() {
        let text = ">>graph6<<\n\nBw\n  \n>>sparse6 header\nBg\n";
        let lines: Vec<_> = graph6_lines(text).collect();
        assert_eq!(lines, vec![(3, "Bw"), (6, "Bg")]);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                    if state % 3 == 0 { edges.push((u, v)); }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = write_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }
}
