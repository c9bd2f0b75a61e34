//! graph6 encoding and decoding.
//!
//! Layout: optional `>>graph6<<` banner, the size prefix `N(n)`, then the
//! upper-triangle bits in column order `x(0,1), x(0,2), x(1,2), x(0,3), …`
//! packed six per byte, big-endian within each group, each byte offset by 63.

use crate::graph::Graph;
use crate::{Error, Result};

const BANNER: &str = ">>graph6<<";
const MAX_N: usize = 68_719_476_735; // 2^36 − 1

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= MAX_N, "graph too large for graph6");
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as a graph6 string (no banner, no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let digit = |i: usize| -> Result<usize> {
        let b = *bytes
            .get(i)
            .ok_or_else(|| Error::Graph6("truncated size prefix".into()))?;
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} out of range")));
        }
        Ok((b - 63) as usize)
    };
    let first = digit(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if bytes.get(1) == Some(&126) {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | digit(i)?;
        }
        return Ok((n, 8));
    }
    let mut n = 0;
    for i in 1..4 {
        n = (n << 6) | digit(i)?;
    }
    Ok((n, 4))
}

/// Decodes a single graph6 line. A leading `>>graph6<<` banner and
/// surrounding whitespace are tolerated.
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(BANNER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, off) = read_size(bytes)?;
    let body = &bytes[off..];
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[k / 6];
            if !(63..=126).contains(&b) {
                return Err(Error::Graph6(format!("byte {b} out of range")));
            }
            if ((b - 63) >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[need - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, turan};

    #[test]
    fn known_strings() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&complete(4)), "C~");
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn banner_and_whitespace() {
        assert_eq!(decode(">>graph6<<C~\n").unwrap(), complete(4));
    }

    #[test]
    fn large_size_prefix() {
        let g = turan(70, 3);
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("C").is_err());
        assert!(decode("C~~").is_err());
        assert!(decode("C\x10").is_err());
        // n=2 has one data bit; "A_" sets it, "A`" sets a padding bit
        assert!(decode("A_").is_ok());
        assert!(decode("A`").is_err());
    }
}
