use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::delivery::{deliver, Demand, DeliveryTranscript, ALL_DEMANDS};
use super::gw::{gw_encode, Descriptions};
use super::placement::{cache_encode, CacheContents, Regime};
use super::source::{LibraryRealization, SourceSpec};
use crate::achievable::{r_ach, OperatingPoint};
use crate::error::{out_of_range, Result};

#[derive(Debug, Clone, Serialize)]
pub struct MeasuredRates {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimPoint {
    pub m: f64,
    pub budget_bits: usize,
    pub regime: Regime,
    pub cache_bits: [usize; 2],
    pub deliveries: Vec<DeliveryTranscript>,
    pub peak_bits: usize,
    pub peak_rate: f64,
    pub analytical_rate: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimRun {
    pub source: SourceSpec,
    pub n: usize,
    pub seed: u64,
    pub rates: MeasuredRates,
    pub points: Vec<SimPoint>,
    pub all_decoded: bool,
    pub max_deviation: f64,
}

impl SimRun {
    /// Every transcript in the run, in grid then demand order.
    pub fn transcripts(&self) -> impl Iterator<Item = &DeliveryTranscript> {
        self.points.iter().flat_map(|p| p.deliveries.iter())
    }
}

fn run_point(lib: &LibraryRealization, desc: &Descriptions, op: &OperatingPoint, m: f64) -> Result<SimPoint> {
    let caches = cache_encode(desc, m)?;
    let deliveries = ALL_DEMANDS
        .iter()
        .map(|&d| deliver(lib, desc, &caches, d))
        .collect::<Result<Vec<_>>>()?;
    let n = lib.n as f64;
    let peak_bits = deliveries.iter().map(|t| t.bits_sent).max().unwrap_or(0);
    let peak_rate = peak_bits as f64 / n;
    let analytical_rate = r_ach(op, m)?.value;
    Ok(SimPoint {
        m,
        budget_bits: caches[0].manifest.budget_bits,
        regime: caches[0].manifest.regime,
        cache_bits: [caches[0].bits.len(), caches[1].bits.len()],
        deliveries,
        peak_bits,
        peak_rate,
        analytical_rate,
        deviation: (peak_rate - analytical_rate).abs(),
    })
}

/// Generates one library, describes it once and runs every memory value in
/// `grid` against all four demands. The analytical comparison uses the
/// measured description rates `(|w0|/n, max |wi|/n)`.
pub fn run_experiment(source: &SourceSpec, grid: &[f64], n: usize, seed: u64) -> Result<SimRun> {
    if n == 0 {
        return Err(out_of_range("n", 0.0, "[1, inf)"));
    }
    let lib = source.generate(n, seed)?;
    let desc = gw_encode(&lib)?;
    let [r0, r1, r2] = desc.rates();
    let rho = r1.max(r2);
    let op = OperatingPoint { r0, rho };
    let points = grid
        .par_iter()
        .map(|&m| run_point(&lib, &desc, &op, m))
        .collect::<Result<Vec<_>>>()?;
    let all_decoded = points.iter().all(|p| p.deliveries.iter().all(|t| t.success));
    let max_deviation = points.iter().map(|p| p.deviation).fold(0.0, f64::max);
    Ok(SimRun {
        source: *source,
        n,
        seed,
        rates: MeasuredRates { r0, r1, r2, rho },
        points,
        all_decoded,
        max_deviation,
    })
}

/// Writes transcripts as: magic `GWTX`, `u32` LE version (1), `u64` LE
/// record count, then per record two demand bytes, a `u64` LE bit length
/// and `⌈len/8⌉` MSB-first packed bytes.
pub fn write_transcripts<'a, W: Write>(
    mut w: W,
    transcripts: impl IntoIterator<Item = &'a DeliveryTranscript>,
) -> Result<()> {
    let ts: Vec<_> = transcripts.into_iter().collect();
    w.write_all(b"GWTX")?;
    w.write_all(&1u32.to_le_bytes())?;
    w.write_all(&(ts.len() as u64).to_le_bytes())?;
    for t in ts {
        w.write_all(&[t.demand[0] as u8, t.demand[1] as u8])?;
        w.write_all(&(t.codeword.len() as u64).to_le_bytes())?;
        w.write_all(&t.codeword.to_bytes())?;
    }
    Ok(())
}

/// Fault injected into the placement to check that verification notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Flip the last stored bit of receiver 1's cache.
    FlipCacheBit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub v: Vec<bool>,
    pub x1: Vec<bool>,
    pub x2: Vec<bool>,
    pub m: f64,
    pub demand: Demand,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub realizations: u64,
    pub deliveries: u64,
    pub counterexample: Option<Counterexample>,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub const DEFAULT_EXHAUSTIVE_BUDGETS: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];

pub fn exhaustive_verify(n: usize, budgets: &[f64]) -> Result<ExhaustiveReport> {
    exhaustive_verify_with(n, budgets, Mutation::None)
}

/// Runs every fair-bit shared-component realization of length `n` through
/// every memory value and demand, stopping at the first failure.
pub fn exhaustive_verify_with(n: usize, budgets: &[f64], mutation: Mutation) -> Result<ExhaustiveReport> {
    if !(1..=8).contains(&n) {
        return Err(out_of_range("n_small", n as f64, "[1, 8]"));
    }
    let total = 1u64 << (3 * n);
    let mut deliveries = 0u64;
    for idx in 0..total {
        let bit = |i: usize| idx >> i & 1 == 1;
        let v: Vec<bool> = (0..n).map(bit).collect();
        let x1: Vec<bool> = (n..2 * n).map(bit).collect();
        let x2: Vec<bool> = (2 * n..3 * n).map(bit).collect();
        let lib = LibraryRealization::from_shared_bits(v.clone(), x1.clone(), x2.clone(), 0.5, [0.5, 0.5]);
        let desc = gw_encode(&lib)?;
        for &m in budgets {
            let mut caches: [CacheContents; 2] = cache_encode(&desc, m)?;
            if mutation == Mutation::FlipCacheBit && !caches[0].bits.is_empty() {
                let last = caches[0].bits.len() - 1;
                caches[0].bits.flip(last);
            }
            for d in ALL_DEMANDS {
                deliveries += 1;
                if !deliver(&lib, &desc, &caches, d)?.success {
                    return Ok(ExhaustiveReport {
                        n,
                        realizations: idx + 1,
                        deliveries,
                        counterexample: Some(Counterexample { v, x1, x2, m, demand: d }),
                    });
                }
            }
        }
    }
    Ok(ExhaustiveReport {
        n,
        realizations: total,
        deliveries,
        counterexample: None,
    })
}
