//! graph6 encoder/decoder and a read-only sparse6 decoder.
//!
//! Both formats pack data into printable bytes 63..=126, six payload bits
//! per byte. graph6 stores the upper triangle column by column; sparse6
//! stores an edge stream. Files are newline-separated lines, optionally
//! preceded by the `>>graph6<<` / `>>sparse6<<` banner.

use thiserror::Error;

use super::{Graph, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input line")]
    Empty,
    #[error("malformed order header")]
    BadHeader,
    #[error("order {order} exceeds the supported maximum of {max} vertices")]
    OrderTooLarge { order: usize, max: usize },
    #[error("payload truncated: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("unexpected data after the edge payload")]
    TrailingData,
    #[error("byte {0:#04x} is outside the printable range 63..=126")]
    BadByte(u8),
    #[error("padding bits of the final payload byte are not zero")]
    BadPadding,
    #[error("sparse6 stream encodes a loop at vertex {0}")]
    LoopEncoded(usize),
}

const BIAS: u8 = 63;

fn strip_banner(text: &str) -> &str {
    let text = text.trim_end_matches(['\r', '\n']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    text.strip_prefix(">>sparse6<<").unwrap_or(text)
}

fn checked_byte(b: u8) -> Result<u8, Graph6Error> {
    if (BIAS..=126).contains(&b) {
        Ok(b - BIAS)
    } else {
        Err(Graph6Error::BadByte(b))
    }
}

/// Decodes the order header, returning `(n, bytes consumed)`.
fn decode_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    if first != b'~' {
        return Ok((checked_byte(first)? as usize, 1));
    }
    // '~' introduces an 18-bit order in the next three bytes; a second '~'
    // (36-bit form) starts at 258048 and is far beyond the supported range.
    if bytes.len() >= 2 && bytes[1] == b'~' {
        return Err(Graph6Error::OrderTooLarge { order: 258048, max: MAX_ORDER });
    }
    if bytes.len() < 4 {
        return Err(Graph6Error::BadHeader);
    }
    let mut n = 0usize;
    for &b in &bytes[1..4] {
        n = n << 6 | checked_byte(b)? as usize;
    }
    if n <= 62 {
        // Long form used where the short form is mandatory.
        return Err(Graph6Error::BadHeader);
    }
    Ok((n, 4))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + BIAS);
        out.push(((n >> 6) & 0x3f) as u8 + BIAS);
        out.push((n & 0x3f) as u8 + BIAS);
    }
}

pub(super) fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("biased bytes are ASCII")
}

pub(super) fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = strip_banner(text).as_bytes();
    let (n, consumed) = decode_order(bytes)?;
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let payload = &bytes[consumed..];
    let bit_count = n * (n.saturating_sub(1)) / 2;
    let expected = bit_count.div_ceil(6);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated { expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingData);
    }
    let mut g = Graph::empty(n).expect("order checked above");
    let mut bit = 0usize;
    for &b in payload {
        let v = checked_byte(b)?;
        for k in (0..6).rev() {
            let set = v >> k & 1 == 1;
            if bit >= bit_count {
                if set {
                    return Err(Graph6Error::BadPadding);
                }
                continue;
            }
            if set {
                let (i, j) = triangle_position(bit);
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Maps a flat upper-triangle index (column-major: x_{0,1}, x_{0,2}, x_{1,2}, …)
/// back to the pair `(i, j)` with `i < j`.
fn triangle_position(mut bit: usize) -> (usize, usize) {
    let mut j = 1;
    while bit >= j {
        bit -= j;
        j += 1;
    }
    (bit, j)
}

pub(super) fn decode_sparse6(text: &str) -> Result<Graph, Graph6Error> {
    let stripped = strip_banner(text);
    let bytes = stripped.strip_prefix(':').ok_or(Graph6Error::BadHeader)?.as_bytes();
    let (n, consumed) = decode_order(bytes)?;
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let mut g = Graph::empty(n).expect("order checked above");
    if n == 0 {
        return Ok(g);
    }
    let k = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize;
    let mut bits = BitReader::new(&bytes[consumed..]);
    let mut v = 0usize;
    while let Some(b) = bits.take(1) {
        let Some(x) = bits.take(k) else { break };
        if b == 1 {
            v += 1;
        }
        if v >= n || x >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(Graph6Error::LoopEncoded(v));
        } else {
            g.add_edge(x, v);
        }
    }
    bits.finish()?;
    Ok(g)
}

pub(super) fn decode_line(text: &str) -> Result<Graph, Graph6Error> {
    if strip_banner(text).starts_with(':') {
        decode_sparse6(text)
    } else {
        decode_graph6(text)
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize, // bit position
    error: Option<Graph6Error>,
}

impl<'a> BitReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0, error: None }
    }

    /// Reads `width` bits MSB-first, or `None` when the stream is exhausted.
    fn take(&mut self, width: usize) -> Option<usize> {
        if self.error.is_some() || self.pos + width > self.bytes.len() * 6 {
            return None;
        }
        let mut out = 0usize;
        for _ in 0..width {
            let byte = self.bytes[self.pos / 6];
            let v = match checked_byte(byte) {
                Ok(v) => v,
                Err(e) => {
                    self.error = Some(e);
                    return None;
                }
            };
            out = out << 1 | (v >> (5 - self.pos % 6) & 1) as usize;
            self.pos += 1;
        }
        Some(out)
    }

    fn finish(self) -> Result<(), Graph6Error> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}
