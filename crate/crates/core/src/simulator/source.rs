use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Result};
use crate::gray_wyner::dsbs_p1;

/// Stream ids used with [`stream_rng`]: the shared latent (V or U) is drawn
/// from stream 0 and the two private latents (X1', X2' or Z1, Z2) from
/// streams 1 and 2.
pub const STREAM_COMMON: u64 = 0;
pub const STREAM_PRIVATE: [u64; 2] = [1, 2];

/// ChaCha8 keyed by `seed`, on the given stream. Portable and
/// reproducible across platforms.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn bernoulli_stream(n: usize, p: f64, seed: u64, stream: u64) -> Vec<bool> {
    let mut rng = stream_rng(seed, stream);
    (0..n).map(|_| rng.random::<f64>() < p).collect()
}

/// Source families the simulator can code exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SourceSpec {
    /// `Xi = (Xi', V)` with independent Bernoulli components.
    SharedComponent { pv: f64, p1: f64, p2: f64 },
    /// Doubly symmetric binary source realized as `Xi = U xor Zi`.
    DsbsWyner { p0: f64 },
}

impl SourceSpec {
    pub fn fair_bits() -> Self {
        Self::SharedComponent { pv: 0.5, p1: 0.5, p2: 0.5 }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<LibraryRealization> {
        match *self {
            Self::SharedComponent { pv, p1, p2 } => gen_shared_component(n, pv, p1, p2, seed),
            Self::DsbsWyner { p0 } => gen_dsbs_wyner(n, p0, seed),
        }
    }
}

/// Latent streams kept alongside the files so they can be described exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Latent {
    SharedComponent {
        v: Vec<bool>,
        private: [Vec<bool>; 2],
        pv: f64,
        p_private: [f64; 2],
    },
    DsbsWyner {
        u: Vec<bool>,
        noise: [Vec<bool>; 2],
        p1: f64,
    },
}

/// Two length-`n` files. Shared-component symbols are `2v + x'` over a
/// 4-ary alphabet; DSBS symbols are bits.
#[derive(Debug, Clone, PartialEq)]
pub struct LibraryRealization {
    pub n: usize,
    pub alphabet: usize,
    pub files: [Vec<u8>; 2],
    pub latent: Option<Latent>,
}

impl LibraryRealization {
    pub fn file(&self, d: usize) -> &[u8] {
        &self.files[d - 1]
    }

    /// Builds a shared-component library from explicit component bits.
    pub fn from_shared_bits(v: Vec<bool>, x1p: Vec<bool>, x2p: Vec<bool>, pv: f64, p: [f64; 2]) -> Self {
        let n = v.len();
        let compose = |xp: &[bool]| v.iter().zip(xp).map(|(&a, &b)| 2 * a as u8 + b as u8).collect();
        let files = [compose(&x1p), compose(&x2p)];
        Self {
            n,
            alphabet: 4,
            files,
            latent: Some(Latent::SharedComponent {
                v,
                private: [x1p, x2p],
                pv,
                p_private: p,
            }),
        }
    }
}

fn check_bias(name: &'static str, p: f64, hi: f64) -> Result<()> {
    if !(0.0..=hi).contains(&p) {
        return Err(out_of_range(name, p, if hi == 1.0 { "[0, 1]" } else { "[0, 1/2]" }));
    }
    Ok(())
}

pub fn gen_shared_component(n: usize, pv: f64, p1: f64, p2: f64, seed: u64) -> Result<LibraryRealization> {
    check_bias("pv", pv, 1.0)?;
    check_bias("p1", p1, 1.0)?;
    check_bias("p2", p2, 1.0)?;
    let v = bernoulli_stream(n, pv, seed, STREAM_COMMON);
    let x1p = bernoulli_stream(n, p1, seed, STREAM_PRIVATE[0]);
    let x2p = bernoulli_stream(n, p2, seed, STREAM_PRIVATE[1]);
    Ok(LibraryRealization::from_shared_bits(v, x1p, x2p, pv, [p1, p2]))
}

pub fn gen_dsbs_wyner(n: usize, p0: f64, seed: u64) -> Result<LibraryRealization> {
    check_bias("p0", p0, 0.5)?;
    let p1 = dsbs_p1(p0)?;
    let u = bernoulli_stream(n, 0.5, seed, STREAM_COMMON);
    let noise = STREAM_PRIVATE.map(|s| bernoulli_stream(n, p1, seed, s));
    let files = [0, 1].map(|i| u.iter().zip(&noise[i]).map(|(&a, &z)| (a ^ z) as u8).collect());
    Ok(LibraryRealization {
        n,
        alphabet: 2,
        files,
        latent: Some(Latent::DsbsWyner { u, noise, p1 }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::JointPmf2;

    #[test]
    fn zero_biases_give_constant_files() {
        let lib = gen_shared_component(50, 0.0, 0.0, 0.0, 1).unwrap();
        assert!(lib.files.iter().all(|f| f.iter().all(|&s| s == 0)));
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(
            gen_shared_component(4, 0.5, 0.5, 0.5, 7).unwrap(),
            gen_shared_component(4, 0.5, 0.5, 0.5, 7).unwrap()
        );
        assert_eq!(gen_dsbs_wyner(64, 0.2, 7).unwrap(), gen_dsbs_wyner(64, 0.2, 7).unwrap());
        assert_ne!(gen_dsbs_wyner(64, 0.2, 7).unwrap(), gen_dsbs_wyner(64, 0.2, 8).unwrap());
    }

    #[test]
    fn fair_bits_have_three_bits_of_joint_entropy() {
        let n = 100_000;
        let lib = gen_shared_component(n, 0.5, 0.5, 0.5, 11).unwrap();
        let mut counts = vec![0.0; 16];
        for (a, b) in lib.files[0].iter().zip(&lib.files[1]) {
            counts[(*a as usize) * 4 + *b as usize] += 1.0 / n as f64;
        }
        let h = JointPmf2::new(4, 4, counts).unwrap().joint_entropy();
        assert!((h - 3.0).abs() < 0.02, "{h}");
    }

    #[test]
    fn dsbs_without_noise_repeats_u() {
        let lib = gen_dsbs_wyner(100, 0.0, 3).unwrap();
        assert_eq!(lib.files[0], lib.files[1]);
    }

    #[test]
    fn dsbs_disagreement_rate() {
        let n = 100_000;
        let p0 = 0.2;
        let lib = gen_dsbs_wyner(n, p0, 5).unwrap();
        let diff = lib.files[0].iter().zip(&lib.files[1]).filter(|(a, b)| a != b).count() as f64 / n as f64;
        let sigma = (p0 * (1.0 - p0) / n as f64).sqrt();
        assert!((diff - p0).abs() <= 3.0 * sigma, "{diff}");
    }
}
