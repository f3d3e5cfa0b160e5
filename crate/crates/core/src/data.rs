//! Fixture data shipped with the crate.
//!
//! Every file is embedded at build time. A [`FixtureSource`] pointing at a
//! directory (for instance from `ACCENTFORGE_DATA`) takes precedence for
//! any file present there.

use std::borrow::Cow;
use std::path::{Path, PathBuf};

use crate::error::{read_to_string, Result};
use crate::inventory::{parse_profiles, LanguageProfile, RuleTagMap, VerdictFixture};
use crate::lexicon::Lexicon;
use crate::phoneset::{ParseMode, PhoneSet, SymbolTable};
use crate::rules::RuleSet;

pub const DATA_ENV: &str = "ACCENTFORGE_DATA";

pub const SYMBOLS_TSV: &str = include_str!("../data/symbols.tsv");
pub const GOLDEN_RULES: &str = include_str!("../data/golden.rules");
pub const DISCARDED_RULES: &str = include_str!("../data/discarded.rules");
pub const PROFILES_TSV: &str = include_str!("../data/profiles.tsv");
pub const RULE_TAGS_TSV: &str = include_str!("../data/rule_tags.tsv");
pub const VERDICTS_TSV: &str = include_str!("../data/verdicts.tsv");
pub const SAMPLE_DICT: &str = include_str!("../data/sample.dict");
pub const SAMPLE_EXPECTED_DICT: &str = include_str!("../data/sample.expected.dict");

/// File names of the fixtures, as looked up in a data directory.
pub const FILES: [(&str, &str); 8] = [
    ("symbols.tsv", SYMBOLS_TSV),
    ("golden.rules", GOLDEN_RULES),
    ("discarded.rules", DISCARDED_RULES),
    ("profiles.tsv", PROFILES_TSV),
    ("rule_tags.tsv", RULE_TAGS_TSV),
    ("verdicts.tsv", VERDICTS_TSV),
    ("sample.dict", SAMPLE_DICT),
    ("sample.expected.dict", SAMPLE_EXPECTED_DICT),
];

/// Where fixture files are read from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureSource {
    dir: Option<PathBuf>,
}

impl FixtureSource {
    pub fn embedded() -> Self {
        FixtureSource::default()
    }

    pub fn dir(dir: impl Into<PathBuf>) -> Self {
        FixtureSource {
            dir: Some(dir.into()),
        }
    }

    /// The directory named by `ACCENTFORGE_DATA`, else the embedded copies.
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_ENV) {
            Some(d) if !d.is_empty() => FixtureSource::dir(d),
            _ => FixtureSource::embedded(),
        }
    }

    pub fn directory(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Contents of fixture `name`, from the directory if the file exists
    /// there, else embedded.
    pub fn text(&self, name: &str) -> Result<Cow<'static, str>> {
        if let Some(dir) = &self.dir {
            let path = dir.join(name);
            if path.exists() {
                return read_to_string(&path).map(Cow::Owned);
            }
        }
        let embedded = FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t);
        match embedded {
            Some(t) => Ok(Cow::Borrowed(t)),
            None => {
                read_to_string(&self.dir.clone().unwrap_or_default().join(name)).map(Cow::Owned)
            }
        }
    }

    pub fn symbol_table(&self) -> Result<SymbolTable> {
        SymbolTable::parse(&self.text("symbols.tsv")?)
    }

    pub fn golden_rules(&self, table: &SymbolTable) -> Result<RuleSet> {
        let mut set = RuleSet::parse(&self.text("golden.rules")?, table)?;
        set.name = "golden.rules".to_string();
        Ok(set)
    }

    pub fn discarded_rules(&self, table: &SymbolTable) -> Result<RuleSet> {
        let mut set = RuleSet::parse(&self.text("discarded.rules")?, table)?;
        set.name = "discarded.rules".to_string();
        Ok(set)
    }

    /// Golden rules with the discarded overlay applied.
    pub fn default_rules(&self, table: &SymbolTable) -> Result<RuleSet> {
        let mut set = self.golden_rules(table)?;
        set.merge(&self.discarded_rules(table)?);
        Ok(set)
    }

    pub fn profiles(&self, table: &SymbolTable) -> Result<Vec<LanguageProfile>> {
        parse_profiles(&self.text("profiles.tsv")?, table)
    }

    pub fn rule_tags(&self) -> Result<RuleTagMap> {
        RuleTagMap::parse(&self.text("rule_tags.tsv")?)
    }

    pub fn verdicts(&self) -> Result<VerdictFixture> {
        VerdictFixture::parse(&self.text("verdicts.tsv")?)
    }
}

// Infallible accessors for the embedded copies, which the test suite
// checks for validity.

pub fn symbol_table() -> SymbolTable {
    SymbolTable::parse(SYMBOLS_TSV).expect("embedded symbol table is valid")
}

pub fn golden_rules(table: &SymbolTable) -> RuleSet {
    FixtureSource::embedded()
        .golden_rules(table)
        .expect("embedded rules are valid")
}

pub fn discarded_rules(table: &SymbolTable) -> RuleSet {
    FixtureSource::embedded()
        .discarded_rules(table)
        .expect("embedded rules are valid")
}

pub fn default_rules(table: &SymbolTable) -> RuleSet {
    FixtureSource::embedded()
        .default_rules(table)
        .expect("embedded rules are valid")
}

pub fn profiles(table: &SymbolTable) -> Vec<LanguageProfile> {
    parse_profiles(PROFILES_TSV, table).expect("embedded profiles are valid")
}

pub fn rule_tags() -> RuleTagMap {
    RuleTagMap::parse(RULE_TAGS_TSV).expect("embedded rule tags are valid")
}

/// Expected verdict for every golden and discarded rule.
pub fn expected_verdicts() -> VerdictFixture {
    VerdictFixture::parse(VERDICTS_TSV).expect("embedded verdicts are valid")
}

pub fn sample_lexicon(table: &SymbolTable) -> Lexicon {
    Lexicon::parse(SAMPLE_DICT, PhoneSet::Canonical, table, ParseMode::Strict)
        .expect("embedded sample lexicon is valid")
        .lexicon
}
