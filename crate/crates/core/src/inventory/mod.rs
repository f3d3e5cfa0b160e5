//! Native-language profiles, phoneme frequency tiers and rule validation.

pub mod profiles;
pub mod tags;
pub mod tiers;
pub mod validate;

pub use profiles::{load_profiles, parse_profiles, LanguageProfile};
pub use tags::CharacteristicTag;
pub use tiers::{
    nearest_rank, phoneme_frequencies, tier_assignment, tier_report, PhoneFrequencies, Tier,
    TierReport, DEFAULT_P_HIGH, DEFAULT_P_MID,
};
pub use validate::{
    validate_rule, validate_rules, RuleTagMap, RuleVerdict, ValidationConfig, Verdict,
    VerdictFixture, VerdictMismatch,
};
