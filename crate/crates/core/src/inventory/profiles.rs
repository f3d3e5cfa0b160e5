use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use super::tags::CharacteristicTag;
use crate::error::{read_to_string, Error, Result};
use crate::languages::{self, Family};
use crate::phoneset::{Phone, SymbolTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LanguageProfile {
    pub name: String,
    pub group: u8,
    pub region: String,
    pub family: Family,
    pub inventory: BTreeSet<Phone>,
    pub characteristics: BTreeSet<CharacteristicTag>,
}

impl LanguageProfile {
    pub fn has(&self, tag: CharacteristicTag) -> bool {
        self.characteristics.contains(&tag)
    }
}

/// Reads the profile TSV:
/// `language  group  region  family  declared_count  phones  tags`.
///
/// Phones must be symbols of `table`, and the number listed must equal the
/// declared count. Languages with a known name must carry their usual group.
pub fn parse_profiles(text: &str, table: &SymbolTable) -> Result<Vec<LanguageProfile>> {
    let mut out: Vec<LanguageProfile> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [name, group, region, family, declared, phones, tags] = cols[..] else {
            return Err(Error::parse(
                line_no,
                format!("expected 7 tab-separated columns, found {}", cols.len()),
            ));
        };
        if name.is_empty() {
            return Err(Error::parse(line_no, "empty language name"));
        }
        let group: u8 = group
            .parse()
            .ok()
            .filter(|g| languages::is_group(*g))
            .ok_or_else(|| Error::parse(line_no, format!("group `{group}` is not 1-5")))?;
        if let Some(known) = languages::find(name) {
            if known.group != group {
                return Err(Error::parse(
                    line_no,
                    format!("{name} belongs to group {}, not {group}", known.group),
                ));
            }
        }
        if out.iter().any(|p| p.name.eq_ignore_ascii_case(name)) {
            return Err(Error::parse(
                line_no,
                format!("duplicate language `{name}`"),
            ));
        }
        let family: Family = family.parse().map_err(|msg| Error::parse(line_no, msg))?;
        let declared: usize = declared
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad phone count `{declared}`")))?;

        let mut inventory = BTreeSet::new();
        for p in phones.split_whitespace() {
            if !table.is_phone(p) {
                return Err(Error::parse(line_no, format!("unknown phone `{p}`")));
            }
            if !inventory.insert(Phone::new(p)) {
                return Err(Error::parse(line_no, format!("phone `{p}` listed twice")));
            }
        }
        if inventory.len() != declared {
            return Err(Error::CountMismatch {
                language: name.to_string(),
                declared,
                listed: inventory.len(),
            });
        }
        let characteristics = tags
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "-")
            .map(str::parse)
            .collect::<Result<BTreeSet<CharacteristicTag>>>()?;

        out.push(LanguageProfile {
            name: name.to_string(),
            group,
            region: region.to_string(),
            family,
            inventory,
            characteristics,
        });
    }
    Ok(out)
}

pub fn load_profiles(path: impl AsRef<Path>, table: &SymbolTable) -> Result<Vec<LanguageProfile>> {
    parse_profiles(&read_to_string(path.as_ref())?, table)
}
