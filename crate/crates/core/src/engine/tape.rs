//! Read-once advice tape and the self-delimited integer code.

use crate::error::{Error, Result};

/// A sequential bit source. Reads past the provided content return 0; the
/// counter always records the furthest position read.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdviceTape {
    content: Vec<bool>,
    cursor: usize,
    bits_read: usize,
}

impl AdviceTape {
    pub fn new(content: Vec<bool>) -> Self {
        AdviceTape { content, cursor: 0, bits_read: 0 }
    }

    pub fn empty() -> Self {
        AdviceTape::default()
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_str_bits(s: &str) -> Result<Self> {
        Ok(AdviceTape::new(parse_bits(s)?))
    }

    pub fn read_bit(&mut self) -> bool {
        let bit = self.content.get(self.cursor).copied().unwrap_or(false);
        self.cursor += 1;
        self.bits_read = self.bits_read.max(self.cursor);
        bit
    }

    /// Reads `width` bits, most significant first.
    pub fn read_uint(&mut self, width: usize) -> u64 {
        (0..width).fold(0u64, |acc, _| acc << 1 | self.read_bit() as u64)
    }

    pub fn bits_read(&self) -> usize {
        self.bits_read
    }

    pub fn content(&self) -> &[bool] {
        &self.content
    }

    pub fn len(&self) -> usize {
        self.content.len()
    }

    pub fn is_empty(&self) -> bool {
        self.content.is_empty()
    }
}

/// Concatenates advice parts in order.
pub fn compose_advice(parts: &[Vec<bool>]) -> AdviceTape {
    AdviceTape::new(parts.concat())
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Input(format!("bit {i}: expected 0 or 1, found {other:?}"))),
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// `width`-bit big-endian field.
pub fn uint_bits(value: u64, width: usize) -> Vec<bool> {
    debug_assert!(width >= 64 || value >> width == 0, "{value} does not fit in {width} bits");
    (0..width).rev().map(|i| i < 64 && value >> i & 1 == 1).collect()
}

/// Number of bits in a fixed-width field able to hold `0..n`: `ceil(log2 n)`.
pub fn index_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn bit_length(x: u64) -> usize {
    (u64::BITS - x.leading_zeros()) as usize
}

/// Self-delimited code for a non-negative integer.
///
/// Writes `m = n + 1` as: `L - 1` zeros and a one, where `L` is the bit length
/// of `l + 1` and `l = floor(log2 m)`; then the low `L - 1` bits of `l + 1`;
/// then the low `l` bits of `m`. Total length is `l + 2 floor(log2(l + 1)) + 1`.
pub fn encode_self_delimited(n: u64) -> Vec<bool> {
    let m = n as u128 + 1;
    let l = (u128::BITS - m.leading_zeros() - 1) as u64;
    let len_len = bit_length(l + 1);
    let mut out = vec![false; len_len - 1];
    out.push(true);
    out.extend(uint_bits(l + 1, len_len).into_iter().skip(1));
    out.extend((0..l).rev().map(|i| m >> i & 1 == 1));
    out
}

/// Decodes a prefix produced by [`encode_self_delimited`]; returns the value
/// and the number of bits consumed.
pub fn decode_self_delimited(bits: &[bool]) -> Result<(u64, usize)> {
    let mut pos = 0;
    let mut next = |pos: &mut usize| -> Result<bool> {
        let b = *bits.get(*pos).ok_or(Error::Decode { position: *pos, msg: "unexpected end of input".into() })?;
        *pos += 1;
        Ok(b)
    };
    decode_with(&mut pos, &mut next)
}

/// Decodes a self-delimited integer from the tape.
pub fn read_self_delimited(tape: &mut AdviceTape) -> Result<u64> {
    let mut pos = 0;
    let mut next = |pos: &mut usize| -> Result<bool> {
        *pos += 1;
        Ok(tape.read_bit())
    };
    decode_with(&mut pos, &mut next).map(|(v, _)| v)
}

fn decode_with(pos: &mut usize, next: &mut dyn FnMut(&mut usize) -> Result<bool>) -> Result<(u64, usize)> {
    let mut zeros = 0usize;
    while !next(pos)? {
        zeros += 1;
        if zeros > 6 {
            return Err(Error::Decode { position: *pos - 1, msg: "length prefix longer than any 64-bit value needs".into() });
        }
    }
    let mut lp1: u64 = 1;
    for _ in 0..zeros {
        lp1 = lp1 << 1 | next(pos)? as u64;
    }
    let l = lp1 - 1;
    if l > 64 {
        return Err(Error::Decode { position: *pos, msg: format!("value length {l} exceeds 64 bits") });
    }
    let mut m: u128 = 1;
    for _ in 0..l {
        m = m << 1 | next(pos)? as u128;
    }
    let n = m - 1;
    if n > u64::MAX as u128 {
        return Err(Error::Decode { position: *pos, msg: "value exceeds 64 bits".into() });
    }
    Ok((n as u64, *pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_past_end_are_zero_and_counted() {
        let mut t = AdviceTape::from_str_bits("11").unwrap();
        assert!(t.read_bit() && t.read_bit());
        for _ in 0..5 {
            assert!(!t.read_bit());
        }
        assert_eq!(t.bits_read(), 7);
    }

    #[test]
    fn empty_composition() {
        let mut t = compose_advice(&[vec![], vec![]]);
        assert!(t.is_empty());
        assert!(!t.read_bit());
        assert_eq!(t.bits_read(), 1);
    }

    #[test]
    fn zero_and_small_values() {
        assert_eq!(encode_self_delimited(0), vec![true]);
        assert_eq!(decode_self_delimited(&[true]).unwrap(), (0, 1));
        let e42 = encode_self_delimited(42);
        assert!(e42.len() <= 6 + 2 * 3 + 2);
        assert_eq!(decode_self_delimited(&e42).unwrap(), (42, e42.len()));
    }

    #[test]
    fn length_formula() {
        for n in [0u64, 1, 2, 3, 7, 8, 100, 1 << 20, u64::MAX - 1, u64::MAX] {
            let m = n as u128 + 1;
            let floor_log = (127 - m.leading_zeros()) as usize;
            let expect = floor_log + 2 * ((floor_log + 1).ilog2() as usize) + 1;
            assert_eq!(encode_self_delimited(n).len(), expect, "n={n}");
            assert_eq!(decode_self_delimited(&encode_self_delimited(n)).unwrap().0, n);
        }
    }

    #[test]
    fn compose_and_decode() {
        let enc3 = encode_self_delimited(3);
        let mut t = compose_advice(&[enc3.clone(), parse_bits("101").unwrap()]);
        assert_eq!(read_self_delimited(&mut t).unwrap(), 3);
        assert_eq!((t.read_bit(), t.read_bit(), t.read_bit()), (true, false, true));
        assert_eq!(t.bits_read(), enc3.len() + 3);
    }

    #[test]
    fn malformed_prefixes() {
        assert!(matches!(decode_self_delimited(&[]), Err(Error::Decode { position: 0, .. })));
        assert!(matches!(decode_self_delimited(&[false, false, true, true]), Err(Error::Decode { .. })));
        assert!(matches!(decode_self_delimited(&[false; 10]), Err(Error::Decode { .. })));
        // an all-zero tape never terminates the unary prefix
        let mut t = AdviceTape::empty();
        assert!(read_self_delimited(&mut t).is_err());
    }

    #[test]
    fn index_widths() {
        assert_eq!(index_width(1), 0);
        assert_eq!(index_width(2), 1);
        assert_eq!(index_width(16), 4);
        assert_eq!(index_width(17), 5);
        assert_eq!(uint_bits(5, 4), parse_bits("0101").unwrap());
    }
}
