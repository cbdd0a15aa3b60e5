//! Seeded experiments on the Jacobian covariants: tame-automorphism sampling,
//! vanishing scans with control populations, the witness computation, and a
//! suite of identity checks. Every run is reproducible from its configuration.

pub mod error;
pub mod lemmas;
pub mod quarantine;
pub mod report;
pub mod sampler;
pub mod scans;
pub mod witness;

pub use error::{LabError, Result};
pub use report::{Outcome, ScanConfig, ScanKind, ScanReport, Verdict};
