use std::fmt;
use std::ops::Range;

/// A sequence of bits. One `bool` per bit; the simulator works at desk
/// scale, so clarity wins over packing.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        Self(Vec::with_capacity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn extend_bits(&mut self, other: &[bool]) {
        self.0.extend_from_slice(other);
    }

    pub fn slice(&self, r: Range<usize>) -> &[bool] {
        &self.0[r]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    /// Right-pads with zeros to length `n` (no-op if already longer).
    pub fn padded(&self, n: usize) -> BitString {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, false);
        }
        Self(v)
    }

    pub fn truncated(mut self, n: usize) -> BitString {
        self.0.truncate(n);
        self
    }

    /// Packs MSB-first into bytes; the final byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i))))
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], n: usize) -> BitString {
        let v = (0..n).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1).collect();
        Self(v)
    }
}

/// `a xor b` after zero-padding both to `n` bits.
pub fn xor_padded(a: &[bool], b: &[bool], n: usize) -> Vec<bool> {
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(false) ^ b.get(i).copied().unwrap_or(false))
        .collect()
}

impl From<Vec<bool>> for BitString {
    fn from(v: Vec<bool>) -> Self {
        Self(v)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString[{}](", self.len())?;
        for &b in self.0.iter().take(64) {
            f.write_str(if b { "1" } else { "0" })?;
        }
        if self.len() > 64 {
            f.write_str("…")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_packing() {
        let b: BitString = [true, false, true, true, false, false, false, false, true].into_iter().collect();
        assert_eq!(b.to_bytes(), vec![0b1011_0000, 0b1000_0000]);
        assert_eq!(BitString::from_bytes(&b.to_bytes(), 9), b);
    }

    #[test]
    fn xor_pads_short_inputs() {
        assert_eq!(xor_padded(&[true, true], &[true], 3), vec![false, true, false]);
    }
}
