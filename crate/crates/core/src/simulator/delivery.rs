use serde::Serialize;

use super::bits::{xor_padded, BitString};
use super::gw::{gw_decode, DescriptionFormat, Descriptions};
use super::placement::{half_lens, CacheContents, Corner, Manifest, Segment};
use super::source::LibraryRealization;
use crate::error::{Error, Result};

/// Demands `(d1, d2)` with entries in `{1, 2}`.
pub type Demand = [usize; 2];

pub const ALL_DEMANDS: [Demand; 4] = [[1, 1], [1, 2], [2, 1], [2, 2]];

fn check_demand(d: Demand) -> Result<()> {
    if d.iter().all(|x| (1..=2).contains(x)) {
        Ok(())
    } else {
        Err(Error::Dimension(format!("demand {d:?} must be in {{1, 2}}^2")))
    }
}

/// Payload length for one segment; both encoder and decoders use it.
fn payload_len(s: &Segment, same: bool) -> usize {
    let h = half_lens(s.len);
    match (s.corner, same) {
        (Corner::Empty, false) => 2 * s.len,
        (Corner::Empty, true) | (Corner::XorHalves, _) => s.len,
        (Corner::SplitHalves, _) => h[0],
        (Corner::Full, _) => 0,
    }
}

fn segment_payload(s: &Segment, f: &[bool], g: &[bool], same: bool) -> Vec<bool> {
    let [r1, r2] = s.halves();
    let whole = s.start..s.start + s.len;
    let h = half_lens(s.len);
    match (s.corner, same) {
        (Corner::Empty, false) => [&f[whole.clone()], &g[whole]].concat(),
        (Corner::Empty, true) | (Corner::XorHalves, true) => f[whole].to_vec(),
        (Corner::XorHalves, false) => [&f[r2], &g[r1]].concat(),
        (Corner::SplitHalves, false) => xor_padded(&f[r2], &g[r1], h[0]),
        (Corner::SplitHalves, true) => xor_padded(&f[r1], &f[r2], h[0]),
        (Corner::Full, _) => Vec::new(),
    }
}

/// Builds the multicast codeword: the uncached suffix of `w0`, then the
/// coded payload of every placement segment.
pub fn multicast_encode(desc: &Descriptions, caches: &[CacheContents; 2], demand: Demand) -> Result<BitString> {
    check_demand(demand)?;
    let m = &caches[0].manifest;
    let len = m.tc.len;
    let f = desc.private(demand[0]).padded(len);
    let g = desc.private(demand[1]).padded(len);
    let same = demand[0] == demand[1];
    let mut out = BitString::from(desc.w0().slice(m.w0_cached..m.w0_len).to_vec());
    for s in &m.tc.segments {
        out.extend_bits(&segment_payload(s, f.as_slice(), g.as_slice(), same));
    }
    Ok(out)
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
    what: &'static str,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [bool]> {
        if self.pos + n > self.bits.len() {
            return Err(Error::Decode(format!("{} ended early", self.what)));
        }
        let s = &self.bits[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.bits.len() {
            return Err(Error::Decode(format!("{} has trailing bits", self.what)));
        }
        Ok(())
    }
}

/// Receiver-side decoding from its own cache, the codeword and public
/// knowledge only. Returns the requested file.
pub fn decode_at_receiver(
    format: &DescriptionFormat,
    cache: &CacheContents,
    demand: Demand,
    codeword: &BitString,
) -> Result<Vec<u8>> {
    check_demand(demand)?;
    let m: &Manifest = &cache.manifest;
    let k = m.receiver - 1;
    let same = demand[0] == demand[1];
    let mut z = Reader { bits: cache.bits.as_slice(), pos: 0, what: "cache" };
    let mut y = Reader { bits: codeword.as_slice(), pos: 0, what: "codeword" };

    let mut w0 = BitString::from(z.take(m.w0_cached)?.to_vec());
    w0.extend_bits(y.take(m.w0_len - m.w0_cached)?);

    let mut want = BitString::with_capacity(m.tc.len);
    for s in &m.tc.segments {
        let h = half_lens(s.len);
        let stored = z.take(s.corner.stored_len(s.len, k))?;
        let p = y.take(payload_len(s, same))?;
        match (s.corner, same) {
            (Corner::Empty, false) => want.extend_bits(&p[k * s.len..(k + 1) * s.len]),
            (Corner::Empty, true) | (Corner::XorHalves, true) => want.extend_bits(p),
            (Corner::XorHalves, false) => {
                // p = F2 ∥ G1; receiver 1 holds F1^G1, receiver 2 holds F2^G2
                let (f2, g1) = p.split_at(h[1]);
                if k == 0 {
                    want.extend_bits(&xor_padded(stored, g1, h[0]));
                    want.extend_bits(f2);
                } else {
                    want.extend_bits(g1);
                    want.extend_bits(&xor_padded(stored, f2, h[1]));
                }
            }
            (Corner::SplitHalves, false) => {
                // p = pad(F2) ^ G1; receiver k holds the k-th halves of both files
                let (own_a, own_b) = stored.split_at(h[k]);
                let [own_f, own_g] = if demand[0] == 1 { [own_a, own_b] } else { [own_b, own_a] };
                if k == 0 {
                    want.extend_bits(own_f);
                    want.extend_bits(&xor_padded(p, own_g, h[0])[..h[1]]);
                } else {
                    want.extend_bits(&xor_padded(p, own_f, h[0]));
                    want.extend_bits(own_g);
                }
            }
            (Corner::SplitHalves, true) => {
                // p = F1 ^ pad(F2)
                let own = &stored[(demand[0] - 1) * h[k]..demand[0] * h[k]];
                let other = xor_padded(p, own, h[0]);
                if k == 0 {
                    want.extend_bits(own);
                    want.extend_bits(&other[..h[1]]);
                } else {
                    want.extend_bits(&other);
                    want.extend_bits(own);
                }
            }
            (Corner::Full, _) => {
                let d = demand[k] - 1;
                want.extend_bits(&stored[d * s.len..(d + 1) * s.len]);
            }
        }
    }
    z.finish()?;
    y.finish()?;
    let d = demand[k];
    let wd = want.truncated(m.private_lens[d - 1]);
    gw_decode(format, &w0, &wd, d)
}

#[derive(Debug, Clone, Serialize)]
pub struct DeliveryTranscript {
    pub demand: Demand,
    #[serde(skip)]
    pub codeword: BitString,
    pub bits_sent: usize,
    #[serde(skip)]
    pub decoded: [Option<Vec<u8>>; 2],
    pub success: bool,
}

/// Encodes, decodes at both receivers and checks the result against the
/// library. A decode error counts as a failed delivery.
pub fn deliver(
    lib: &LibraryRealization,
    desc: &Descriptions,
    caches: &[CacheContents; 2],
    demand: Demand,
) -> Result<DeliveryTranscript> {
    let codeword = multicast_encode(desc, caches, demand)?;
    let decoded = [0, 1].map(|k| decode_at_receiver(&desc.format, &caches[k], demand, &codeword).ok());
    let success = (0..2).all(|k| decoded[k].as_deref() == Some(lib.file(demand[k])));
    Ok(DeliveryTranscript {
        demand,
        bits_sent: codeword.len(),
        codeword,
        decoded,
        success,
    })
}
