//! graph6 and sparse6 interchange (the formats distributed with nauty).
//!
//! graph6 packs the upper adjacency triangle column by column,
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, six bits per byte, each byte
//! offset by 63. sparse6 lines start with `:` and list edges as
//! (flag, vertex) groups.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER_G6: &str = ">>graph6<<";
const HEADER_S6: &str = ">>sparse6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn byte_at(data: &[u8], pos: usize, base: usize) -> Result<u8> {
    let b = *data.get(pos).ok_or(Error::Parse { pos: base + pos, msg: "unexpected end of input".into() })?;
    if !(63..=126).contains(&b) {
        return Err(Error::Parse { pos: base + pos, msg: format!("byte {b} outside 63..=126") });
    }
    Ok(b - 63)
}

/// Returns (n, bytes consumed).
fn decode_n(data: &[u8], base: usize) -> Result<(usize, usize)> {
    let b0 = byte_at(data, 0, base)?;
    if b0 < 63 {
        return Ok((b0 as usize, 1));
    }
    let b1 = *data.get(1).ok_or(Error::Parse { pos: base + 1, msg: "truncated size".into() })?;
    let (len, start) = if b1 == 126 { (6, 2) } else { (3, 1) };
    let mut n = 0usize;
    for i in 0..len {
        n = (n << 6) | byte_at(data, start + i, base)? as usize;
    }
    Ok((n, start + len))
}

struct BitWriter {
    bytes: Vec<u8>,
    acc: u8,
    used: u8,
}

impl BitWriter {
    fn new() -> Self {
        BitWriter { bytes: Vec::new(), acc: 0, used: 0 }
    }

    fn push(&mut self, b: bool) {
        self.acc = (self.acc << 1) | b as u8;
        self.used += 1;
        if self.used == 6 {
            self.bytes.push(self.acc + 63);
            self.acc = 0;
            self.used = 0;
        }
    }

    fn push_bits(&mut self, x: usize, width: usize) {
        for i in (0..width).rev() {
            self.push((x >> i) & 1 == 1);
        }
    }

    fn pending(&self) -> u8 {
        self.used
    }

    fn finish(mut self, pad_with_ones: bool) -> Vec<u8> {
        while self.used != 0 {
            self.push(pad_with_ones);
        }
        self.bytes
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut w = BitWriter::new();
    for j in 1..n {
        for i in 0..j {
            w.push(g.has_edge(i, j));
        }
    }
    out.extend(w.finish(false));
    String::from_utf8(out).expect("graph6 is ASCII")
}

fn check_size(n: usize, pos: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Parse { pos, msg: format!("{n} vertices exceeds the supported {MAX_VERTICES}") });
    }
    Ok(())
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(HEADER_G6) {
        Some(rest) => (rest, HEADER_G6.len()),
        None => (trimmed, 0),
    };
    let data = body.as_bytes();
    let (n, used) = decode_n(data, base)?;
    check_size(n, base)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if data.len() != used + need {
        return Err(Error::Parse {
            pos: base + data.len().min(used + need),
            msg: format!("expected {} edge bytes for n={n}, found {}", need, data.len().saturating_sub(used)),
        });
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = byte_at(data, used + k / 6, base)?;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if pairs % 6 != 0 {
        let last = byte_at(data, used + need - 1, base)?;
        if last & ((1u8 << (6 - pairs % 6)) - 1) != 0 {
            return Err(Error::Parse { pos: base + used + need - 1, msg: "non-zero padding bits".into() });
        }
    }
    Ok(g)
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

pub fn encode_sparse6(g: &Graph) -> String {
    let n = g.n();
    let k = bits_for(n);
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    let mut edges: Vec<(usize, usize)> = g.edges();
    edges.sort_by_key(|&(i, j)| (j, i));
    let mut w = BitWriter::new();
    let mut v = 0usize;
    for (i, j) in edges {
        if j == v {
            w.push(false);
            w.push_bits(i, k);
        } else if j == v + 1 {
            w.push(true);
            w.push_bits(i, k);
            v = j;
        } else {
            w.push(true);
            w.push_bits(j, k);
            w.push(false);
            w.push_bits(i, k);
            v = j;
        }
    }
    let pending = w.pending();
    if pending != 0 {
        let pad = 6 - pending as usize;
        if k < 6 && n == (1 << k) && v + 2 == n && pad > k {
            w.push(false);
        }
    }
    out.extend(w.finish(true));
    String::from_utf8(out).expect("sparse6 is ASCII")
}

pub fn decode_sparse6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match trimmed.strip_prefix(HEADER_S6) {
        Some(rest) => (rest, HEADER_S6.len()),
        None => (trimmed, 0),
    };
    let data = body.as_bytes();
    if data.first() != Some(&b':') {
        return Err(Error::Parse { pos: base, msg: "sparse6 must start with ':'".into() });
    }
    let (n, used) = decode_n(&data[1..], base + 1)?;
    check_size(n, base + 1)?;
    let k = bits_for(n);
    let mut bits = Vec::new();
    for (idx, _) in data.iter().enumerate().skip(1 + used) {
        let b = byte_at(data, idx, base)?;
        for s in (0..6).rev() {
            bits.push((b >> s) & 1 == 1);
        }
    }
    let mut g = Graph::new(n);
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let mut x = 0usize;
        for i in 0..k {
            x = (x << 1) | bits[pos + 1 + i] as usize;
        }
        pos += 1 + k;
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(Error::Parse { pos: base + 1 + used + pos / 6, msg: format!("loop at vertex {v}") });
            }
            g.add_edge(x, v);
        }
    }
    Ok(g)
}

/// Decodes either format, dispatching on a leading `:`.
pub fn decode(text: &str) -> Result<Graph> {
    let t = text.trim();
    if t.starts_with(':') || t.starts_with(HEADER_S6) {
        decode_sparse6(t)
    } else {
        decode_graph6(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty};

    #[test]
    fn known_strings() {
        assert_eq!(encode_graph6(&complete(3)), "Bw");
        assert_eq!(encode_graph6(&empty(1)), "@");
        assert_eq!(encode_graph6(&cycle(5)), "Dhc");
        assert_eq!(encode_graph6(&empty(0)), "?");
    }

    #[test]
    fn independent_bit_unpack() {
        // unpack "Dhc" by hand: 'h' = 104 - 63 = 41 = 101001, 'c' = 36 = 100100
        let bits = "101001100100";
        let mut expected = Vec::new();
        let mut k = 0;
        for j in 1..5 {
            for i in 0..j {
                if &bits[k..k + 1] == "1" {
                    expected.push((i, j));
                }
                k += 1;
            }
        }
        let g = decode_graph6("Dhc").unwrap();
        let mut got = g.edges();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn long_size_form() {
        let g = cycle(63);
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_accepted() {
        assert_eq!(decode_graph6(">>graph6<<Bw").unwrap(), complete(3));
    }

    #[test]
    fn malformed() {
        assert!(matches!(decode_graph6("Bw!"), Err(Error::Parse { .. })));
        assert!(matches!(decode_graph6("D"), Err(Error::Parse { pos: 1, .. })));
        assert!(decode_graph6("Bx").is_err()); // padding bit set
    }

    #[test]
    fn sparse6_reference_example() {
        // example from the nauty format notes: n=7, edges 0-1 0-2 1-2 5-6
        let g = decode_sparse6(":Fa@x^").unwrap();
        let mut e = g.edges();
        e.sort();
        assert_eq!(e, vec![(0, 1), (0, 2), (1, 2), (5, 6)]);
        assert_eq!(encode_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn sparse6_padding_special_case() {
        // n = 4 = 2^2 with the last edge ending at n-2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(decode_sparse6(&encode_sparse6(&g)).unwrap(), g);
    }
}
