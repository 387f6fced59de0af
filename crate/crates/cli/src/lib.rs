//! IO companion to `kneser-core`: certificate persistence, Ramsey table
//! snapshot files, replayable oracles, and output rendering. The `kneser`
//! binary wires these to the command line.

pub mod certstore;
pub mod oracles;
pub mod render;
pub mod snapshots;

pub use certstore::{verify, Certificate, Claim, Provenance};
