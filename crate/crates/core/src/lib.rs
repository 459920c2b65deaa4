//! S-limited shifts: languages, classification, presentations, entropy and
//! conjugacy tools.

pub mod classify;
pub mod conjugacy;
pub mod entropy;
pub mod error;
pub mod language;
pub mod presentation;
pub mod sets;
pub mod word;

pub use classify::{ClassificationReport, MixingVerdict, SftVerdict, Verdict};
pub use conjugacy::{BlockMap, BlockRule, EvidenceParams, EvidenceReport, OffsetCheck, OffsetVector, Refutation};
pub use entropy::{Certificate, EntropyResult, GenfunBounds};
pub use error::{Error, Result};
pub use language::{CoreBlock, CoreLengthSpectrum, Decomposition, ShiftSpec, Variant};
pub use presentation::{AdjacencyMatrix, Edge, GraphPresentation, State, StateTag};
pub use sets::{DeltaSequence, Membership, SetClass, SetSpec};
pub use word::{Run, RunWord};

/// Letters are `1..=p`.
pub type Letter = u32;
