//! Colored-partition counting and Stanley–Elder–Fine-type identity
//! checking.
//!
//! The crate computes the counting sequences of colored partitions
//! (prefabs), overpartitions and their odd/distinct variants two
//! independent ways (closed-form recurrences over coefficient series, and
//! exhaustive enumeration) and machine-verifies the frequency/repetition
//! identities that connect them over user-chosen ranges.
//!
//! Layers, bottom up:
//!
//! - [`series`]: generating products ([`FactorSpec`]) expanded into
//!   truncated big-integer coefficient series ([`CoeffSeries`]).
//! - [`partitions`]: concrete colored-partition objects, exhaustive
//!   enumeration, and the brute-force statistic oracle.
//! - [`stats`]: every statistic as a closed-form recurrence on a series.
//! - [`identities`]: theorem sweeps comparing the two routes and reporting
//!   counterexamples.

pub mod error;
pub mod identities;
pub mod partitions;
pub mod series;
pub mod stats;

pub use error::{Error, Result};
pub use identities::{IdentityReport, TheoremId, VerifyMode, VerifyOptions};
pub use partitions::{
    enumerate, oracle_stat, oracle_tables, ColoredPart, ColoredPartition, MergeMode, OracleStat,
    DEFAULT_ORACLE_CAP,
};
pub use series::{CoeffSeries, Factor, FactorKind, FactorSpec, SpecFamily};
pub use stats::{StatKind, StatTable};
