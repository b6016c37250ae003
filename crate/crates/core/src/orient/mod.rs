//! Conditional expectations over partial orientations, greedy extremal
//! searches, brute-force oracles, and interlacing-family checks.

mod brute;
mod expect;
mod family;
mod greedy;
mod witness;

pub use brute::{brute_force_extremes, brute_force_extremes_capped, Extremes, RadiusBucket};
pub use expect::{
    expected_charpoly_brute, expected_charpoly_brute_capped, expected_charpoly_fast,
    DEFAULT_BRUTE_CAP,
};
pub use family::{
    verify_interlacing_family, verify_interlacing_family_capped, FailureKind, FamilyFailure,
    FamilyReport, DEFAULT_TREE_CAP,
};
pub use greedy::{
    greedy_orient, greedy_orient_max, greedy_orient_min, GreedyOutcome, GreedyStep, Mode,
};
pub use witness::{
    check_outer_sum_identity, mss_witness_check, orientation_outer_sum, MssWitness,
    OuterSumIdentity, WitnessReport,
};
