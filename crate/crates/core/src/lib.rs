//! Phonological rewrite rules for adapting British English (RP)
//! pronunciations to Indian English, with rule mining from transcription
//! pairs, native-language inventory analytics and rule validation.
//!
//! ```
//! use accentforge_core::{data, rewrite, RuleQuery};
//!
//! let table = data::symbol_table();
//! let rules = data::default_rules(&table).select(&RuleQuery::universal()).unwrap();
//! let (out, _trace) = rewrite::apply(&"b E d".parse::<accentforge_core::PhoneSeq>().unwrap(), &rules.compile());
//! assert_eq!(out.to_string(), "b e dd");
//! ```

pub mod data;
pub mod error;
pub mod inventory;
pub mod languages;
pub mod lexicon;
pub mod mining;
pub mod phoneset;
pub mod rewrite;
pub mod rules;

pub use error::{Error, Result};
pub use inventory::{CharacteristicTag, LanguageProfile, RuleVerdict, TierReport, Verdict};
pub use languages::{Family, Language, LANGUAGES};
pub use lexicon::{AdaptStats, Lexicon, LexiconEntry};
pub use mining::{
    Alignment, CandidateRule, CategoryPartition, KappaResult, MiningConfig, TranscriptPair,
};
pub use phoneset::{ParseMode, Phone, PhoneSeq, PhoneSet, SymbolTable, BOUNDARY};
pub use rewrite::{apply, RewriteTrace, TraceStep};
pub use rules::{
    Category, CompiledRuleSet, Context, RewriteRule, RuleQuery, RuleSet, Scope, Status,
};
