//! Classification of rules by the native languages whose phonology explains
//! them.
//!
//! A rule is supported by every language carrying one of its characteristic
//! tags. Support from at least two thirds of the languages makes it
//! universal; support confined to at most two groups makes it regional.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::profiles::LanguageProfile;
use super::tags::CharacteristicTag;
use crate::error::{read_to_string, Error, Result};
use crate::languages;
use crate::rules::{RewriteRule, RuleSet, Status};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Universal,
    Regional(BTreeSet<u8>),
    Discarded,
    Unsupported,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Universal => f.write_str("universal"),
            Verdict::Regional(gs) => {
                let list: Vec<String> = gs.iter().map(u8::to_string).collect();
                write!(f, "regional:{}", list.join(","))
            }
            Verdict::Discarded => f.write_str("discarded"),
            Verdict::Unsupported => f.write_str("unsupported"),
        }
    }
}

/// Serialized in its text form, e.g. `"regional:4,5"`.
impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "universal" => Ok(Verdict::Universal),
            "discarded" => Ok(Verdict::Discarded),
            "unsupported" => Ok(Verdict::Unsupported),
            _ => {
                let list = s
                    .strip_prefix("regional:")
                    .ok_or_else(|| format!("unknown verdict `{s}`"))?;
                let groups = list
                    .split(',')
                    .map(|g| {
                        g.trim()
                            .parse::<u8>()
                            .ok()
                            .filter(|g| languages::is_group(*g))
                    })
                    .collect::<Option<BTreeSet<u8>>>()
                    .ok_or_else(|| format!("bad group list in `{s}`"))?;
                Ok(Verdict::Regional(groups))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleVerdict {
    pub rule: String,
    pub verdict: Verdict,
    pub tags: Vec<CharacteristicTag>,
    /// Languages carrying at least one of the tags, in profile order.
    pub languages: Vec<String>,
    pub groups: BTreeSet<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationConfig {
    /// Universal when supporting languages >= ceil(num / den * total).
    pub universal_num: usize,
    pub universal_den: usize,
    pub max_regional_groups: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            universal_num: 2,
            universal_den: 3,
            max_regional_groups: 2,
        }
    }
}

impl ValidationConfig {
    pub fn universal_min(&self, total: usize) -> usize {
        (self.universal_num * total).div_ceil(self.universal_den)
    }
}

/// Classifies one rule. Discarded rules stay discarded, unresolved rules
/// are unsupported, and rules without tags are discarded.
pub fn validate_rule(
    rule: &RewriteRule,
    tags: &[CharacteristicTag],
    profiles: &[LanguageProfile],
    config: &ValidationConfig,
) -> RuleVerdict {
    let supporting: Vec<&LanguageProfile> = profiles
        .iter()
        .filter(|p| tags.iter().any(|t| p.has(*t)))
        .collect();
    let groups: BTreeSet<u8> = supporting.iter().map(|p| p.group).collect();
    let verdict = match rule.status {
        Status::Discarded => Verdict::Discarded,
        Status::Unresolved => Verdict::Unsupported,
        Status::Active if tags.is_empty() => Verdict::Discarded,
        Status::Active if supporting.len() >= config.universal_min(profiles.len()) => {
            Verdict::Universal
        }
        Status::Active if !groups.is_empty() && groups.len() <= config.max_regional_groups => {
            Verdict::Regional(groups.clone())
        }
        Status::Active => Verdict::Unsupported,
    };
    RuleVerdict {
        rule: rule.id.clone(),
        verdict,
        tags: tags.to_vec(),
        languages: supporting.iter().map(|p| p.name.clone()).collect(),
        groups,
    }
}

/// Supporting characteristics per rule id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleTagMap(pub BTreeMap<String, Vec<CharacteristicTag>>);

impl RuleTagMap {
    /// Reads `rule_id<TAB>tag,tag` lines; `-` stands for no tag.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, tags) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(idx + 1, "expected `rule_id<TAB>tags`"))?;
            let tags = tags
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty() && *t != "-")
                .map(str::parse)
                .collect::<Result<Vec<CharacteristicTag>>>()?;
            if map.insert(id.trim().to_string(), tags).is_some() {
                return Err(Error::parse(
                    idx + 1,
                    format!("duplicate rule id `{}`", id.trim()),
                ));
            }
        }
        Ok(RuleTagMap(map))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    pub fn tags(&self, rule_id: &str) -> &[CharacteristicTag] {
        self.0.get(rule_id).map_or(&[], Vec::as_slice)
    }
}

pub fn validate_rules(
    rules: &RuleSet,
    tags: &RuleTagMap,
    profiles: &[LanguageProfile],
    config: &ValidationConfig,
) -> Vec<RuleVerdict> {
    rules
        .rules()
        .iter()
        .map(|r| validate_rule(r, tags.tags(&r.id), profiles, config))
        .collect()
}

/// Expected verdict per rule id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerdictFixture(pub BTreeMap<String, Verdict>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictMismatch {
    pub rule: String,
    pub expected: Option<Verdict>,
    pub actual: Option<Verdict>,
}

impl fmt::Display for VerdictMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show =
            |v: &Option<Verdict>| v.as_ref().map_or("(none)".to_string(), Verdict::to_string);
        write!(
            f,
            "{}: expected {}, got {}",
            self.rule,
            show(&self.expected),
            show(&self.actual)
        )
    }
}

impl VerdictFixture {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, verdict) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(idx + 1, "expected `rule_id<TAB>verdict`"))?;
            let verdict: Verdict = verdict
                .trim()
                .parse()
                .map_err(|m| Error::parse(idx + 1, m))?;
            if map.insert(id.trim().to_string(), verdict).is_some() {
                return Err(Error::parse(
                    idx + 1,
                    format!("duplicate rule id `{}`", id.trim()),
                ));
            }
        }
        Ok(VerdictFixture(map))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    /// Differences between `verdicts` and the fixture, including rules
    /// present on only one side, ordered by rule id.
    pub fn compare(&self, verdicts: &[RuleVerdict]) -> Vec<VerdictMismatch> {
        let actual: BTreeMap<&str, &Verdict> = verdicts
            .iter()
            .map(|v| (v.rule.as_str(), &v.verdict))
            .collect();
        let ids: BTreeSet<&str> = actual
            .keys()
            .copied()
            .chain(self.0.keys().map(String::as_str))
            .collect();
        ids.into_iter()
            .filter_map(|id| {
                let expected = self.0.get(id);
                let got = actual.get(id).copied();
                (expected != got).then(|| VerdictMismatch {
                    rule: id.to_string(),
                    expected: expected.cloned(),
                    actual: got.cloned(),
                })
            })
            .collect()
    }
}
