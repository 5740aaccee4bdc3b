//! Finite-window combinatorics on the positive integers: finite-sums sets,
//! the `FS_X` filter, FAL levels and finite-sums extraction.

mod extract;
mod fal;
mod fs;
mod fsx;
mod oracle;
mod window;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use extract::{galvin_extract, weak_extract, Extraction, ExtractionStep, ShiftTerm};
pub use fal::{fal_level, fal_level_with_workers};
pub use fs::{
    fs_set, fu_set, subset_sums, FSGenerator, FSWitness, WitnessReport, MAX_FU_BLOCKS,
    MAX_WITNESS_SIZE,
};
pub use fsx::{fsx_member, fsx_member_detail, fsx_shift_preimage, ShiftPreimage};
pub use oracle::{FsxOracle, PrincipalOracle, UltrafilterOracle};
pub use window::{shift_set, WindowJson, WindowSet, MAX_HORIZON};

/// Answer to a membership query asked inside a bounded window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NatError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("horizon {horizon} exceeds the supported maximum {max}")]
    HorizonTooLarge { horizon: u64, max: u64 },
    #[error("{member} is outside the window [1, {horizon}]")]
    MemberOutOfWindow { member: u64, horizon: u64 },
    #[error("shift {shift} leaves nothing of the window [1, {horizon}]")]
    ShiftBeyondHorizon { shift: u64, horizon: u64 },
    #[error("generator is not strictly increasing ({previous} then {next})")]
    NotIncreasing { previous: u64, next: u64 },
    #[error("generator elements must be positive")]
    NonPositive,
    #[error("a witness needs at least one element")]
    EmptyWitness,
    #[error("witness of size {size} exceeds the enumerable maximum {max}")]
    WitnessTooLarge { size: usize, max: usize },
    #[error("subset sum {sum} is not in the target set")]
    SumOutsideTarget { sum: u64 },
    #[error("blocks {first} and {second} are not disjoint")]
    NonDisjointBlocks { first: usize, second: usize },
    #[error("{count} blocks exceed the maximum of {max}")]
    TooManyBlocks { count: usize, max: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("oracle does not place the target set in the filter (answer: {0:?})")]
    NotInOracle(Decision),
    #[error("no admissible pick for x{index}: the window is exhausted")]
    OracleUndecided { index: usize },
    #[error("oracle picked {picked}, which is not an admissible candidate for x{index}")]
    OracleInconsistent { index: usize, picked: u64 },
    #[error(
        "oracle keeps returning {picked} for x{index}; strictly increasing picks are impossible"
    )]
    PrincipalOracleDetected { index: usize, picked: u64 },
    #[error("principal branch needs {multiple} in the target set")]
    PrincipalMultiplesMissing { multiple: u64 },
    #[error("expected {expected} oracle powers, got {got}")]
    ChainTooShort { expected: usize, got: usize },
}
