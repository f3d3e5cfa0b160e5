//! The 18 native languages of the speaker pool and their five regional groups.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "Indo-Aryan")]
    IndoAryan,
    Dravidian,
    #[serde(rename = "Tibeto-Burman")]
    TibetoBurman,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::IndoAryan => "Indo-Aryan",
            Family::Dravidian => "Dravidian",
            Family::TibetoBurman => "Tibeto-Burman",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Indo-Aryan" => Ok(Family::IndoAryan),
            "Dravidian" => Ok(Family::Dravidian),
            "Tibeto-Burman" => Ok(Family::TibetoBurman),
            other => Err(format!("unknown language family `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Language {
    pub name: &'static str,
    pub group: u8,
    pub family: Family,
}

/// Regional speaker groups, numbered 1-5.
pub const GROUPS: [(u8, &str); 5] = [
    (1, "Northeast and East"),
    (2, "North and Central"),
    (3, "West"),
    (4, "Upper South"),
    (5, "Lower South"),
];

const fn lang(name: &'static str, group: u8, family: Family) -> Language {
    Language {
        name,
        group,
        family,
    }
}

pub const LANGUAGES: [Language; 18] = [
    lang("Dimasa", 1, Family::TibetoBurman),
    lang("Mog", 1, Family::TibetoBurman),
    lang("Maithili", 1, Family::IndoAryan),
    lang("Oriya", 1, Family::IndoAryan),
    lang("Bengali", 1, Family::IndoAryan),
    lang("Assamese", 1, Family::IndoAryan),
    lang("Nepali", 1, Family::IndoAryan),
    lang("Punjabi", 2, Family::IndoAryan),
    lang("Marwari", 2, Family::IndoAryan),
    lang("Hindi", 2, Family::IndoAryan),
    lang("Malwi", 2, Family::IndoAryan),
    lang("Gujarati", 3, Family::IndoAryan),
    lang("Marathi", 3, Family::IndoAryan),
    lang("Konkani", 3, Family::IndoAryan),
    lang("Kannada", 4, Family::Dravidian),
    lang("Telugu", 4, Family::Dravidian),
    lang("Malayalam", 5, Family::Dravidian),
    lang("Tamil", 5, Family::Dravidian),
];

/// Case-insensitive lookup by name.
pub fn find(name: &str) -> Option<&'static Language> {
    LANGUAGES.iter().find(|l| l.name.eq_ignore_ascii_case(name))
}

pub fn is_group(group: u8) -> bool {
    (1..=5).contains(&group)
}

pub fn group_name(group: u8) -> Option<&'static str> {
    GROUPS.iter().find(|(g, _)| *g == group).map(|(_, n)| *n)
}

pub fn in_group(group: u8) -> impl Iterator<Item = &'static Language> {
    LANGUAGES.iter().filter(move |l| l.group == group)
}
