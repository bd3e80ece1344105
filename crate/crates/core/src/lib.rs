//! Two-user, two-file broadcast caching with correlated sources.
//!
//! The crate is organised bottom-up:
//!
//! * [`info`] exact discrete information measures and the binary entropy
//!   machinery,
//! * [`gray_wyner`] corner points of the Gray-Wyner region for a given
//!   auxiliary channel and the closed-form DSBS boundary on the symmetric
//!   plane,
//! * [`bounds`] lower bounds on the peak rate-memory function,
//! * [`achievable`] the GW-LFU-TC peak rate and the correlation-unaware
//!   baselines,
//! * [`optimizer`] projected-gradient search over auxiliary channels,
//! * [`simulator`] a bit-exact execution of the caching and delivery
//!   protocol.
//!
//! All rates and memories are in bits per source symbol, logarithms are
//! base 2.

pub mod achievable;
pub mod bounds;
mod error;
pub mod gray_wyner;
pub mod info;
pub mod optimizer;
pub mod simulator;

pub use error::{Error, Result};
pub use gray_wyner::{AuxChannel, RateTriplet};
pub use info::{Bits, JointPmf2};
pub use optimizer::OptimizerConfig;
