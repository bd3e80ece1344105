use serde::{Deserialize, Serialize};

use super::arith;
use super::bits::BitString;
use super::source::{Latent, LibraryRealization};
use crate::error::{Error, Result};

/// How one latent bit stream is turned into a description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamCodec {
    /// One bit per symbol; used for fair bits.
    Raw,
    /// Deterministic stream, described with zero bits.
    Constant { value: bool },
    /// Static arithmetic coder with known bias.
    Arithmetic { p_one: f64 },
}

impl StreamCodec {
    pub fn for_bias(p: f64) -> Self {
        if p == 0.0 || p == 1.0 {
            Self::Constant { value: p == 1.0 }
        } else if p == 0.5 {
            Self::Raw
        } else {
            Self::Arithmetic { p_one: p }
        }
    }

    pub fn encode(&self, bits: &[bool]) -> BitString {
        match *self {
            Self::Raw => BitString::from(bits.to_vec()),
            Self::Constant { .. } => BitString::new(),
            Self::Arithmetic { p_one } => arith::encode(bits, p_one),
        }
    }

    pub fn decode(&self, code: &BitString, n: usize) -> Result<Vec<bool>> {
        match *self {
            Self::Raw => {
                if code.len() != n {
                    return Err(Error::Decode(format!("raw stream has {} bits, expected {n}", code.len())));
                }
                Ok(code.as_slice().to_vec())
            }
            Self::Constant { value } => Ok(vec![value; n]),
            Self::Arithmetic { p_one } => Ok(arith::decode(code, n, p_one)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SharedComponent,
    DsbsWyner,
}

/// Public codebook information: what every party knows before any bit is sent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptionFormat {
    pub n: usize,
    pub family: Family,
    pub codecs: [StreamCodec; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptions {
    pub format: DescriptionFormat,
    pub w: [BitString; 3],
}

impl Descriptions {
    pub fn w0(&self) -> &BitString {
        &self.w[0]
    }

    pub fn private(&self, d: usize) -> &BitString {
        &self.w[d]
    }

    /// Measured lengths divided by `n`.
    pub fn rates(&self) -> [f64; 3] {
        let n = self.format.n.max(1) as f64;
        self.w.each_ref().map(|w| w.len() as f64 / n)
    }
}

pub fn gw_encode(lib: &LibraryRealization) -> Result<Descriptions> {
    let Some(latent) = &lib.latent else {
        return Err(Error::Unsupported(
            "library has no latent structure; only shared-component and DSBS sources can be described".into(),
        ));
    };
    let (family, streams, biases) = match latent {
        Latent::SharedComponent { v, private, pv, p_private } => (
            Family::SharedComponent,
            [v, &private[0], &private[1]],
            [*pv, p_private[0], p_private[1]],
        ),
        Latent::DsbsWyner { u, noise, p1 } => (Family::DsbsWyner, [u, &noise[0], &noise[1]], [0.5, *p1, *p1]),
    };
    let codecs = biases.map(StreamCodec::for_bias);
    let w = [0, 1, 2].map(|i| codecs[i].encode(streams[i]));
    Ok(Descriptions {
        format: DescriptionFormat { n: lib.n, family, codecs },
        w,
    })
}

/// Rebuilds file `d` from the common description and private description `d`.
pub fn gw_decode(format: &DescriptionFormat, w0: &BitString, wd: &BitString, d: usize) -> Result<Vec<u8>> {
    if !(1..=2).contains(&d) {
        return Err(Error::Dimension(format!("file index {d} not in {{1, 2}}")));
    }
    let n = format.n;
    let common = format.codecs[0].decode(w0, n)?;
    let private = format.codecs[d].decode(wd, n)?;
    Ok(match format.family {
        Family::SharedComponent => common.iter().zip(&private).map(|(&v, &x)| 2 * v as u8 + x as u8).collect(),
        Family::DsbsWyner => common.iter().zip(&private).map(|(&u, &z)| (u ^ z) as u8).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::binary_entropy;
    use crate::simulator::source::{gen_dsbs_wyner, gen_shared_component};

    #[test]
    fn fair_common_stream_is_raw() {
        let lib = gen_shared_component(1000, 0.5, 0.3, 0.5, 1).unwrap();
        let d = gw_encode(&lib).unwrap();
        assert_eq!(d.w0().len(), 1000);
        assert_eq!(d.w[2].len(), 1000);
        for k in 1..=2 {
            assert_eq!(gw_decode(&d.format, d.w0(), d.private(k), k).unwrap(), lib.files[k - 1]);
        }
    }

    #[test]
    fn dsbs_private_rate_near_binary_entropy() {
        let lib = gen_dsbs_wyner(100_000, 0.2, 9).unwrap();
        let d = gw_encode(&lib).unwrap();
        let r = d.rates();
        assert_eq!(r[0], 1.0);
        assert!((0.503..=0.513).contains(&r[1]), "{r:?}");
        let target = binary_entropy(crate::gray_wyner::dsbs_p1(0.2).unwrap()).unwrap();
        assert!((r[1] - target).abs() <= 0.01 * target);
        for seed in 0..5 {
            let lib = gen_dsbs_wyner(5000, 0.2, seed).unwrap();
            let d = gw_encode(&lib).unwrap();
            for k in 1..=2 {
                assert_eq!(gw_decode(&d.format, d.w0(), d.private(k), k).unwrap(), lib.files[k - 1]);
            }
        }
    }

    #[test]
    fn latent_free_library_is_rejected() {
        let mut lib = gen_dsbs_wyner(10, 0.2, 1).unwrap();
        lib.latent = None;
        assert!(matches!(gw_encode(&lib), Err(Error::Unsupported(_))));
    }
}
