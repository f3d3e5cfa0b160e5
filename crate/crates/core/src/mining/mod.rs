//! Rule mining from aligned transcription pairs.
//!
//! Pairs of canonical and annotated transcriptions are aligned, differing
//! stretches become candidate occurrences, and candidates whose rate
//! (occurrences over opportunities in the canonical corpus) reaches a
//! threshold are accepted. Mined rules can then be partitioned against a
//! literature list, and annotator agreement measured with Cohen's kappa.

pub mod aggregate;
pub mod align;
pub mod categorize;
pub mod corpus;
pub mod extract;
pub mod kappa;

pub use aggregate::{
    aggregate, mine, opportunity, CandidateRule, MiningConfig, MiningResult, DEFAULT_THETA,
};
pub use align::{align, Aligner, Alignment, EditKind, EditOp};
pub use categorize::{categorize, CategoryPartition};
pub use corpus::{format_pairs, load_pairs, parse_pairs, TranscriptPair};
pub use extract::{extract, Grouping, Occurrence};
pub use kappa::{cohens_kappa, load_labels, parse_labels, KappaResult};
