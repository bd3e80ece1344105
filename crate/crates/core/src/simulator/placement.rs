use serde::{Deserialize, Serialize};

use super::bits::BitString;
use super::gw::Descriptions;
use crate::error::{out_of_range, Result};

/// Corner schemes of the two-user, two-file coded placement, named by the
/// per-receiver memory they use on an `ℓ`-bit block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    /// Nothing stored.
    Empty,
    /// Receiver k stores `A_k xor B_k` (`⌈ℓ/2⌉` bits).
    XorHalves,
    /// Receiver k stores `A_k ∥ B_k`.
    SplitHalves,
    /// Both blocks stored in full.
    Full,
}

impl Corner {
    fn memory(self, len: usize) -> usize {
        match self {
            Self::Empty => 0,
            Self::XorHalves => half_lens(len)[0],
            Self::SplitHalves => 2 * half_lens(len)[0],
            Self::Full => 2 * len,
        }
    }

    /// Bits this corner leaves in receiver `k`'s cache (0-based).
    pub fn stored_len(self, len: usize, k: usize) -> usize {
        let h = half_lens(len);
        match self {
            Self::Empty => 0,
            Self::XorHalves => h[k],
            Self::SplitHalves => 2 * h[k],
            Self::Full => 2 * len,
        }
    }
}

/// First half `⌈ℓ/2⌉`, second half `⌊ℓ/2⌋`.
pub fn half_lens(len: usize) -> [usize; 2] {
    [len.div_ceil(2), len / 2]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub len: usize,
    pub corner: Corner,
}

impl Segment {
    /// Index ranges of the two halves, relative to the padded description.
    pub fn halves(&self) -> [std::ops::Range<usize>; 2] {
        let h = half_lens(self.len);
        [self.start..self.start + h[0], self.start + h[0]..self.start + self.len]
    }
}

/// Memory-shared layout of the padded private descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcPlan {
    /// Padded length `L`.
    pub len: usize,
    pub budget: usize,
    pub segments: Vec<Segment>,
}

impl TcPlan {
    pub fn memory(&self) -> usize {
        self.segments.iter().map(|s| s.corner.memory(s.len)).sum()
    }
}

/// Splits `[0, L)` between two adjacent corners so the stored bits fit in
/// `budget`, giving the higher corner as many bits as possible.
pub fn tc_plan(len: usize, budget: usize) -> Result<TcPlan> {
    if budget > 2 * len {
        return Err(out_of_range("placement budget", budget as f64, format!("[0, {}]", 2 * len)));
    }
    let (lo, hi) = if budget < Corner::XorHalves.memory(len) {
        (Corner::Empty, Corner::XorHalves)
    } else if budget < Corner::SplitHalves.memory(len) {
        (Corner::XorHalves, Corner::SplitHalves)
    } else {
        (Corner::SplitHalves, Corner::Full)
    };
    let fits = |hi_len: usize| lo.memory(len - hi_len) + hi.memory(hi_len) <= budget;
    // memory is nondecreasing in the high-corner share
    let (mut a, mut b) = (0, len);
    while a < b {
        let mid = (a + b).div_ceil(2);
        if fits(mid) {
            a = mid;
        } else {
            b = mid - 1;
        }
    }
    let lo_len = len - a;
    let segments = [(0, lo_len, lo), (lo_len, a, hi)]
        .into_iter()
        .filter(|&(_, l, _)| l > 0)
        .map(|(start, len, corner)| Segment { start, len, corner })
        .collect();
    Ok(TcPlan { len, budget, segments })
}

/// Bits receiver `k` (0-based) stores for the plan; `a`, `b` are the two
/// private descriptions padded to `plan.len`.
pub fn tc_store(plan: &TcPlan, a: &[bool], b: &[bool], k: usize) -> BitString {
    let mut out = BitString::new();
    for s in &plan.segments {
        let halves = s.halves();
        let r = halves[k].clone();
        match s.corner {
            Corner::Empty => {}
            Corner::XorHalves => out.extend_bits(&super::bits::xor_padded(&a[r.clone()], &b[r], halves[k].len())),
            Corner::SplitHalves => {
                out.extend_bits(&a[r.clone()]);
                out.extend_bits(&b[r]);
            }
            Corner::Full => {
                out.extend_bits(&a[s.start..s.start + s.len]);
                out.extend_bits(&b[s.start..s.start + s.len]);
            }
        }
    }
    out
}

/// Places two private descriptions (shorter one zero-padded) into two caches
/// of `budget` bits each.
pub fn tc_place(w1: &BitString, w2: &BitString, budget: usize) -> Result<(TcPlan, [BitString; 2])> {
    let len = w1.len().max(w2.len());
    let plan = tc_plan(len, budget)?;
    let (a, b) = (w1.padded(len), w2.padded(len));
    let stores = [0, 1].map(|k| tc_store(&plan, a.as_slice(), b.as_slice(), k));
    Ok((plan, stores))
}

/// Which part of the common description is cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Memory below `ρ`: privates only.
    PrivateOnly,
    /// Privates get `ρ`, the rest holds a prefix of `w0`.
    PartialCommon,
    /// `w0` cached in full, the rest goes to the privates.
    FullCommon,
}

/// Everything a receiver needs to parse its own cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub receiver: usize,
    pub budget_bits: usize,
    pub regime: Regime,
    pub w0_len: usize,
    pub w0_cached: usize,
    /// Unpadded private description lengths.
    pub private_lens: [usize; 2],
    pub tc: TcPlan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CacheContents {
    pub bits: BitString,
    pub manifest: Manifest,
}

/// `⌊nM⌋`, tolerant of `M` values like 0.29 that sit a hair below their
/// decimal value.
pub fn budget_bits(n: usize, m: f64) -> usize {
    (n as f64 * m + 1e-7).floor() as usize
}

pub fn cache_encode(desc: &Descriptions, m: f64) -> Result<[CacheContents; 2]> {
    let n = desc.format.n;
    let l0 = desc.w0().len();
    let len = desc.w[1].len().max(desc.w[2].len());
    if !(m >= 0.0) {
        return Err(out_of_range("M", m, "[0, r0 + 2 rho]"));
    }
    let budget = budget_bits(n, m);
    if budget > l0 + 2 * len {
        let top = (l0 + 2 * len) as f64 / n.max(1) as f64;
        return Err(out_of_range("M", m, format!("[0, {top}]")));
    }
    let (regime, w0_cached, tc_budget) = if budget < len {
        (Regime::PrivateOnly, 0, budget)
    } else if budget < l0 + len {
        (Regime::PartialCommon, budget - len, len)
    } else {
        (Regime::FullCommon, l0, budget - l0)
    };
    let (plan, stores) = tc_place(&desc.w[1], &desc.w[2], tc_budget)?;
    Ok([0, 1].map(|k| {
        let mut bits = BitString::from(desc.w0().slice(0..w0_cached).to_vec());
        bits.extend_bits(stores[k].as_slice());
        assert!(bits.len() <= budget, "cache overflow: {} > {budget}", bits.len());
        CacheContents {
            bits,
            manifest: Manifest {
                receiver: k + 1,
                budget_bits: budget,
                regime,
                w0_len: l0,
                w0_cached,
                private_lens: [desc.w[1].len(), desc.w[2].len()],
                tc: plan.clone(),
            },
        }
    }))
}
