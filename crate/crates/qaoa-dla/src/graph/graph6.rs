use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    /// Parse a graph6 string (an optional `>>graph6<<` header is accepted).
    /// Padding bits must be zero so that parsing and printing are inverse.
    pub fn from_graph6(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Error::Parse(format!("graph6 byte {b} outside 63..=126")));
        }
        let (n, body) = if bytes[0] != 126 {
            ((bytes[0] - 63) as usize, &bytes[1..])
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            let n = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            return Err(Error::Parse("graph6 vertex counts above 258047 are not supported".into()));
        };
        if n == 0 {
            return Err(Error::Parse("graph6 graph with no vertices".into()));
        }
        if n > super::MAX_VERTICES {
            return Err(Error::Parse(format!("graph6 vertex count {n} exceeds {}", super::MAX_VERTICES)));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if body.len() != nbytes {
            return Err(Error::Parse(format!("graph6 body has {} bytes, expected {nbytes}", body.len())));
        }
        let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        for k in nbits..nbytes * 6 {
            if bit(k) {
                return Err(Error::Parse("nonzero graph6 padding bits".into()));
            }
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(n, &edges)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n();
        let mut out = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            for s in [12, 6, 0] {
                out.push(((n >> s) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
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
        String::from_utf8(out).expect("graph6 is ASCII")
    }
}
