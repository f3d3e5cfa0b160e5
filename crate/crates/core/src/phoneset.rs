//! Canonical phone symbols and conversion to and from external phone sets.
//!
//! Internally every pronunciation is a [`PhoneSeq`] of canonical ASCII
//! symbols (X-SAMPA flavoured: `dd` is the retroflex /ɖ/, `t_dh` the
//! aspirated dental /t̪ʰ/). IPA, ARPAbet and the Common Phone Set (CPS) are
//! renderings selected through a [`SymbolTable`].
//!
//! Aspiration, retroflexion and vowel length are features of single phones:
//! `kh` is one phone, `a` and `a:` are two different phones.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{read_to_string, Error, Result};

/// Symbol of the word boundary. Only valid as a rule context.
pub const BOUNDARY: &str = "#";

const UNKNOWN_PREFIX: &str = "unk:";

/// A canonical phone symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Phone(String);

impl Phone {
    pub fn new(symbol: impl Into<String>) -> Self {
        Phone(symbol.into())
    }

    /// Placeholder for a token that could not be resolved in lenient mode.
    pub fn unknown(token: &str) -> Self {
        Phone(format!("{UNKNOWN_PREFIX}{token}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_boundary(&self) -> bool {
        self.0 == BOUNDARY
    }

    /// The original token if this is a lenient-mode placeholder.
    pub fn unknown_token(&self) -> Option<&str> {
        self.0.strip_prefix(UNKNOWN_PREFIX)
    }
}

impl fmt::Display for Phone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Phone {
    fn from(s: &str) -> Self {
        Phone::new(s)
    }
}

/// Ordered phone sequence. Never contains the boundary symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhoneSeq(Vec<Phone>);

impl PhoneSeq {
    pub fn new() -> Self {
        PhoneSeq(Vec::new())
    }

    pub fn push(&mut self, phone: Phone) {
        debug_assert!(!phone.is_boundary());
        self.0.push(phone);
    }

    pub fn extend_from_slice(&mut self, phones: &[Phone]) {
        self.0.extend_from_slice(phones);
    }

    pub fn into_vec(self) -> Vec<Phone> {
        self.0
    }
}

impl Deref for PhoneSeq {
    type Target = [Phone];

    fn deref(&self) -> &[Phone] {
        &self.0
    }
}

impl From<&[Phone]> for PhoneSeq {
    fn from(phones: &[Phone]) -> Self {
        PhoneSeq(phones.to_vec())
    }
}

impl FromIterator<Phone> for PhoneSeq {
    fn from_iter<I: IntoIterator<Item = Phone>>(iter: I) -> Self {
        PhoneSeq(iter.into_iter().collect())
    }
}

/// Splits canonical symbols on whitespace without consulting a symbol
/// table. Rejects the boundary symbol.
impl FromStr for PhoneSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .enumerate()
            .map(|(position, tok)| {
                if tok == BOUNDARY {
                    Err(Error::UnknownToken {
                        token: tok.to_string(),
                        position,
                        set: PhoneSet::Canonical,
                    })
                } else {
                    Ok(Phone::new(tok))
                }
            })
            .collect()
    }
}

impl fmt::Display for PhoneSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(p.as_str())?;
        }
        Ok(())
    }
}

/// External symbol sets a sequence can be read from or written to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhoneSet {
    Canonical,
    Ipa,
    Arpabet,
    Cps,
}

impl PhoneSet {
    pub const ALL: [PhoneSet; 4] = [
        PhoneSet::Canonical,
        PhoneSet::Ipa,
        PhoneSet::Arpabet,
        PhoneSet::Cps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PhoneSet::Canonical => "canonical",
            PhoneSet::Ipa => "ipa",
            PhoneSet::Arpabet => "arpabet",
            PhoneSet::Cps => "cps",
        }
    }
}

impl fmt::Display for PhoneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhoneSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        PhoneSet::ALL
            .into_iter()
            .find(|set| set.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown phone set `{s}` (expected canonical, ipa, arpabet or cps)")
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhoneCategory {
    Vowel,
    Consonant,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Place {
    Velar,
    Palatal,
    Retroflex,
    Dental,
    Bilabial,
    Alveolar,
    Postalveolar,
    Labiodental,
    LabialVelar,
    Glottal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Manner {
    Stop,
    Affricate,
    Nasal,
    Fricative,
    Approximant,
    Lateral,
    Trill,
    Flap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VowelLength {
    Short,
    Long,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Height {
    Close,
    NearClose,
    CloseMid,
    Mid,
    OpenMid,
    NearOpen,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backness {
    Front,
    Central,
    Back,
}

/// Articulatory features of one phone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Features {
    pub category: PhoneCategory,
    pub place: Option<Place>,
    pub manner: Option<Manner>,
    pub voiced: bool,
    pub aspirated: bool,
    pub nasalized: bool,
    pub diphthong: bool,
    pub length: Option<VowelLength>,
    pub height: Option<Height>,
    pub backness: Option<Backness>,
}

impl Features {
    /// Parses the comma-separated tag column of the symbol table.
    pub fn parse_tags(tags: &str) -> std::result::Result<Features, String> {
        let mut category = None;
        let mut f = Features {
            category: PhoneCategory::Consonant,
            place: None,
            manner: None,
            voiced: false,
            aspirated: false,
            nasalized: false,
            diphthong: false,
            length: None,
            height: None,
            backness: None,
        };
        for tag in tags.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tag {
                "vowel" => category = Some(PhoneCategory::Vowel),
                "consonant" => category = Some(PhoneCategory::Consonant),
                "boundary" => category = Some(PhoneCategory::Boundary),
                "velar" => f.place = Some(Place::Velar),
                "palatal" => f.place = Some(Place::Palatal),
                "retroflex" => f.place = Some(Place::Retroflex),
                "dental" => f.place = Some(Place::Dental),
                "bilabial" => f.place = Some(Place::Bilabial),
                "alveolar" => f.place = Some(Place::Alveolar),
                "postalveolar" => f.place = Some(Place::Postalveolar),
                "labiodental" => f.place = Some(Place::Labiodental),
                "labial-velar" => f.place = Some(Place::LabialVelar),
                "glottal" => f.place = Some(Place::Glottal),
                "stop" => f.manner = Some(Manner::Stop),
                "affricate" => f.manner = Some(Manner::Affricate),
                "nasal" => f.manner = Some(Manner::Nasal),
                "fricative" => f.manner = Some(Manner::Fricative),
                "approximant" => f.manner = Some(Manner::Approximant),
                "lateral" => f.manner = Some(Manner::Lateral),
                "trill" => f.manner = Some(Manner::Trill),
                "flap" => f.manner = Some(Manner::Flap),
                "voiced" => f.voiced = true,
                "aspirated" => f.aspirated = true,
                "nasalized" => f.nasalized = true,
                "diphthong" => f.diphthong = true,
                "short" => f.length = Some(VowelLength::Short),
                "long" => f.length = Some(VowelLength::Long),
                "close" => f.height = Some(Height::Close),
                "near-close" => f.height = Some(Height::NearClose),
                "close-mid" => f.height = Some(Height::CloseMid),
                "mid" => f.height = Some(Height::Mid),
                "open-mid" => f.height = Some(Height::OpenMid),
                "near-open" => f.height = Some(Height::NearOpen),
                "open" => f.height = Some(Height::Open),
                "front" => f.backness = Some(Backness::Front),
                "central" => f.backness = Some(Backness::Central),
                "back" => f.backness = Some(Backness::Back),
                other => return Err(format!("unknown feature tag `{other}`")),
            }
        }
        f.category = category.ok_or("features must name vowel, consonant or boundary")?;
        if f.category == PhoneCategory::Vowel {
            f.voiced = true;
        }
        Ok(f)
    }
}

/// One row of the symbol table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhoneInfo {
    pub symbol: Phone,
    pub ipa: String,
    pub arpabet: Option<String>,
    pub cps: Option<String>,
    pub features: Features,
}

impl PhoneInfo {
    pub fn token(&self, set: PhoneSet) -> Option<&str> {
        match set {
            PhoneSet::Canonical => Some(self.symbol.as_str()),
            PhoneSet::Ipa => Some(&self.ipa),
            PhoneSet::Arpabet => self.arpabet.as_deref(),
            PhoneSet::Cps => self.cps.as_deref(),
        }
    }
}

/// Result of reading a token string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPhones {
    pub seq: PhoneSeq,
    /// Tokens passed through as `unk:<token>` (lenient mode only).
    pub unknown: usize,
}

/// The canonical symbol universe with its external renderings.
///
/// Immutable once loaded.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    entries: Vec<PhoneInfo>,
    by_symbol: HashMap<String, usize>,
    by_ipa: HashMap<String, usize>,
    by_arpabet: HashMap<String, usize>,
    by_cps: HashMap<String, usize>,
}

impl SymbolTable {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read_to_string(path.as_ref())?)
    }

    /// Parses the TSV form:
    /// `canonical<TAB>ipa<TAB>arpabet<TAB>cps<TAB>features`, `-` for absent.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = SymbolTable::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || is_comment(line) {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(Error::parse(
                    line_no,
                    format!("expected 5 tab-separated columns, found {}", cols.len()),
                ));
            }
            let symbol = cols[0];
            if symbol.is_empty() || symbol == "-" || symbol.contains(char::is_whitespace) {
                return Err(Error::parse(
                    line_no,
                    format!("invalid canonical symbol `{symbol}`"),
                ));
            }
            let ipa = optional(cols[1]).ok_or_else(|| Error::MissingIpa {
                line: line_no,
                symbol: symbol.to_string(),
            })?;
            let features =
                Features::parse_tags(cols[4]).map_err(|msg| Error::parse(line_no, msg))?;
            if (symbol == BOUNDARY) != (features.category == PhoneCategory::Boundary) {
                return Err(Error::parse(
                    line_no,
                    format!("only `{BOUNDARY}` may carry the boundary category"),
                ));
            }
            table.insert(
                line_no,
                PhoneInfo {
                    symbol: Phone::new(symbol),
                    ipa: ipa.to_string(),
                    arpabet: optional(cols[2]).map(str::to_string),
                    cps: optional(cols[3]).map(str::to_string),
                    features,
                },
            )?;
        }
        Ok(table)
    }

    fn insert(&mut self, line: usize, info: PhoneInfo) -> Result<()> {
        let idx = self.entries.len();
        let columns: [(&'static str, Option<&str>); 4] = [
            ("canonical", Some(info.symbol.as_str())),
            ("ipa", Some(info.ipa.as_str())),
            ("arpabet", info.arpabet.as_deref()),
            ("cps", info.cps.as_deref()),
        ];
        for (column, token) in columns {
            let Some(token) = token else { continue };
            let map = match column {
                "canonical" => &self.by_symbol,
                "ipa" => &self.by_ipa,
                "arpabet" => &self.by_arpabet,
                _ => &self.by_cps,
            };
            if map.contains_key(token) {
                return Err(Error::DuplicateSymbol {
                    line,
                    column,
                    token: token.to_string(),
                });
            }
        }
        self.by_symbol.insert(info.symbol.as_str().to_string(), idx);
        self.by_ipa.insert(info.ipa.clone(), idx);
        if let Some(a) = &info.arpabet {
            self.by_arpabet.insert(a.clone(), idx);
        }
        if let Some(c) = &info.cps {
            self.by_cps.insert(c.clone(), idx);
        }
        self.entries.push(info);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PhoneInfo> {
        self.entries.iter()
    }

    pub fn get(&self, phone: &Phone) -> Option<&PhoneInfo> {
        self.get_symbol(phone.as_str())
    }

    pub fn get_symbol(&self, symbol: &str) -> Option<&PhoneInfo> {
        self.by_symbol.get(symbol).map(|&i| &self.entries[i])
    }

    /// True if `symbol` is a phone that may appear inside a pronunciation.
    pub fn is_phone(&self, symbol: &str) -> bool {
        self.get_symbol(symbol)
            .is_some_and(|info| info.features.category != PhoneCategory::Boundary)
    }

    pub fn boundary_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.features.category == PhoneCategory::Boundary)
            .count()
    }

    /// Resolves one external token, without stress handling.
    pub fn lookup(&self, token: &str, set: PhoneSet) -> Option<&PhoneInfo> {
        let map = match set {
            PhoneSet::Canonical => &self.by_symbol,
            PhoneSet::Ipa => &self.by_ipa,
            PhoneSet::Arpabet => &self.by_arpabet,
            PhoneSet::Cps => &self.by_cps,
        };
        map.get(token)
            .map(|&i| &self.entries[i])
            .filter(|info| info.features.category != PhoneCategory::Boundary)
    }

    /// Reads whitespace-separated tokens of `set` into canonical phones.
    ///
    /// ARPAbet stress digits are dropped before lookup. In lenient mode
    /// unknown tokens become `unk:<token>` placeholders and are counted.
    pub fn parse_phone_string(
        &self,
        text: &str,
        set: PhoneSet,
        mode: ParseMode,
    ) -> Result<ParsedPhones> {
        let mut seq = PhoneSeq::new();
        let mut unknown = 0;
        for (position, token) in text.split_whitespace().enumerate() {
            let key = match set {
                PhoneSet::Arpabet => strip_stress(token),
                _ => token,
            };
            match self.lookup(key, set) {
                Some(info) => seq.push(info.symbol.clone()),
                None if mode == ParseMode::Lenient => {
                    unknown += 1;
                    seq.push(Phone::unknown(token));
                }
                None => {
                    return Err(Error::UnknownToken {
                        token: token.to_string(),
                        position,
                        set,
                    })
                }
            }
        }
        Ok(ParsedPhones { seq, unknown })
    }

    /// Renders `seq` as space-separated tokens of `set`.
    ///
    /// In lenient mode, placeholders are written back as their original
    /// token and unmapped phones as their canonical symbol.
    pub fn convert(&self, seq: &[Phone], set: PhoneSet, mode: ParseMode) -> Result<String> {
        let mut out = String::new();
        for (i, phone) in seq.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let token = self
                .get(phone)
                .filter(|_| !phone.is_boundary())
                .and_then(|info| info.token(set));
            match (token, mode) {
                (Some(t), _) => out.push_str(t),
                (None, ParseMode::Lenient) => {
                    out.push_str(phone.unknown_token().unwrap_or(phone.as_str()))
                }
                (None, ParseMode::Strict) => {
                    return Err(Error::Unmapped {
                        phone: phone.to_string(),
                        set,
                    })
                }
            }
        }
        Ok(out)
    }

    /// True if every phone of `seq` has a token in `set`.
    pub fn is_mapped(&self, seq: &[Phone], set: PhoneSet) -> bool {
        seq.iter()
            .all(|p| self.get(p).is_some_and(|info| info.token(set).is_some()))
    }
}

/// Comment lines start with `#` not followed by a tab; `#<TAB>` opens the
/// boundary row.
fn is_comment(line: &str) -> bool {
    line.starts_with('#') && !line.starts_with("#\t")
}

fn optional(col: &str) -> Option<&str> {
    match col {
        "" | "-" => None,
        other => Some(other),
    }
}

/// Drops a trailing ARPAbet stress digit (0, 1 or 2).
pub fn strip_stress(token: &str) -> &str {
    match token.as_bytes() {
        [.., b'0' | b'1' | b'2'] if token.len() > 1 => &token[..token.len() - 1],
        _ => token,
    }
}
