//! Bit-exact simulation of the two-receiver caching protocol: sources,
//! description coding, placement, delivery and rate measurement.

mod arith;
pub mod bits;
pub mod delivery;
pub mod experiment;
pub mod gw;
pub mod placement;
pub mod source;

pub use bits::BitString;
pub use delivery::{decode_at_receiver, deliver, multicast_encode, Demand, DeliveryTranscript, ALL_DEMANDS};
pub use experiment::{
    exhaustive_verify, exhaustive_verify_with, run_experiment, write_transcripts, Counterexample, ExhaustiveReport,
    MeasuredRates, Mutation, SimPoint, SimRun, DEFAULT_EXHAUSTIVE_BUDGETS,
};
pub use gw::{gw_decode, gw_encode, DescriptionFormat, Descriptions, Family, StreamCodec};
pub use placement::{budget_bits, cache_encode, tc_place, tc_plan, CacheContents, Corner, Manifest, Regime, Segment, TcPlan};
pub use source::{gen_dsbs_wyner, gen_shared_component, LibraryRealization, SourceSpec};
