//! Static binary arithmetic coder.
//!
//! Integer coder in the style of Witten, Neal and Cleary with 32-bit code
//! registers held in `u64`, so `range * freq` never overflows. The bit
//! probability is quantized to 16 bits and known to both ends, as is the
//! symbol count, so the stream carries no header. Termination emits two
//! disambiguating bits plus pending underflow bits; the decoder reads zeros
//! past the end of the stream.

use super::bits::BitString;

const CODE_BITS: u32 = 32;
const TOP: u64 = (1 << CODE_BITS) - 1;
const HALF: u64 = 1 << (CODE_BITS - 1);
const QUARTER: u64 = 1 << (CODE_BITS - 2);
const PROB_BITS: u32 = 16;
const PROB_ONE: u64 = 1 << PROB_BITS;

/// Quantized probability of a zero bit, in `[1, 2^16 - 1]`.
fn freq_zero(p_one: f64) -> u64 {
    let ones = (p_one * PROB_ONE as f64).round() as u64;
    PROB_ONE - ones.clamp(1, PROB_ONE - 1)
}

fn split(low: u64, high: u64, f0: u64) -> u64 {
    let range = high - low + 1;
    low + ((range * f0) >> PROB_BITS) - 1
}

struct Emitter {
    out: BitString,
    pending: usize,
}

impl Emitter {
    fn emit(&mut self, bit: bool) {
        self.out.push(bit);
        for _ in 0..self.pending {
            self.out.push(!bit);
        }
        self.pending = 0;
    }
}

/// Encodes `bits` assuming i.i.d. `Bern(p_one)`.
pub fn encode(bits: &[bool], p_one: f64) -> BitString {
    let f0 = freq_zero(p_one);
    let (mut low, mut high) = (0u64, TOP);
    let mut e = Emitter {
        out: BitString::with_capacity(bits.len() / 2),
        pending: 0,
    };
    for &b in bits {
        let mid = split(low, high, f0);
        if b {
            low = mid + 1;
        } else {
            high = mid;
        }
        loop {
            if high < HALF {
                e.emit(false);
            } else if low >= HALF {
                e.emit(true);
                low -= HALF;
                high -= HALF;
            } else if low >= QUARTER && high < 3 * QUARTER {
                e.pending += 1;
                low -= QUARTER;
                high -= QUARTER;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
        }
    }
    e.pending += 1;
    e.emit(low >= QUARTER);
    e.out
}

/// Decodes `n` bits produced by [`encode`] with the same `p_one`.
pub fn decode(code: &BitString, n: usize, p_one: f64) -> Vec<bool> {
    let f0 = freq_zero(p_one);
    let src = code.as_slice();
    let mut pos = 0;
    let mut next = || {
        let b = src.get(pos).copied().unwrap_or(false);
        pos += 1;
        b as u64
    };
    let (mut low, mut high) = (0u64, TOP);
    let mut value = 0u64;
    for _ in 0..CODE_BITS {
        value = (value << 1) | next();
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mid = split(low, high, f0);
        let b = value > mid;
        if b {
            low = mid + 1;
        } else {
            high = mid;
        }
        out.push(b);
        loop {
            if high < HALF {
            } else if low >= HALF {
                low -= HALF;
                high -= HALF;
                value -= HALF;
            } else if low >= QUARTER && high < 3 * QUARTER {
                low -= QUARTER;
                high -= QUARTER;
                value -= QUARTER;
            } else {
                break;
            }
            low <<= 1;
            high = (high << 1) | 1;
            value = (value << 1) | next();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_and_tiny_inputs() {
        for n in 0..6 {
            for pattern in 0..(1u32 << n) {
                let bits: Vec<bool> = (0..n).map(|i| pattern >> i & 1 == 1).collect();
                for p in [0.01, 0.3, 0.5, 0.97] {
                    assert_eq!(decode(&encode(&bits, p), n, p), bits);
                }
            }
        }
    }

    #[test]
    fn rate_is_close_to_entropy() {
        let p = 0.112_701_665_379_258_31;
        let n = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bits: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < p).collect();
        let ones = bits.iter().filter(|b| **b).count() as f64;
        let ideal = -(ones * p.log2() + (n as f64 - ones) * (1.0 - p).log2());
        let code = encode(&bits, p);
        assert!((code.len() as f64) < ideal * 1.001 + 16.0, "{} vs {ideal}", code.len());
        assert_eq!(decode(&code, n, p), bits);
    }

    proptest! {
        #[test]
        fn round_trip(bits in proptest::collection::vec(any::<bool>(), 0..400), p in 0.001f64..0.999) {
            let code = encode(&bits, p);
            prop_assert_eq!(decode(&code, bits.len(), p), bits);
        }
    }
}
