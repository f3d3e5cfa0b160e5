use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{read_to_string, Error, Result};
use crate::languages;
use crate::phoneset::{ParseMode, PhoneSeq, PhoneSet, SymbolTable};

/// A word with its reference (RP) and observed (IE) transcriptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptPair {
    pub word: String,
    pub canonical: PhoneSeq,
    pub annotated: PhoneSeq,
    pub language: Option<String>,
    pub group: Option<u8>,
}

impl TranscriptPair {
    pub fn new(word: impl Into<String>, canonical: PhoneSeq, annotated: PhoneSeq) -> Self {
        TranscriptPair {
            word: word.into(),
            canonical,
            annotated,
            language: None,
            group: None,
        }
    }
}

/// Reads `word<TAB>canonical<TAB>annotated[<TAB>language]` lines of
/// canonical symbols. Blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str, table: &SymbolTable) -> Result<Vec<TranscriptPair>> {
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(3..=4).contains(&cols.len()) {
            return Err(Error::parse(
                line_no,
                format!(
                    "expected 3 or 4 tab-separated columns, found {}",
                    cols.len()
                ),
            ));
        }
        let phones = |col: &str, what: &str| -> Result<PhoneSeq> {
            let seq = table
                .parse_phone_string(col, PhoneSet::Canonical, ParseMode::Strict)
                .map_err(|e| Error::parse(line_no, format!("{what}: {e}")))?
                .seq;
            if seq.is_empty() {
                return Err(Error::parse(line_no, format!("empty {what} transcription")));
            }
            Ok(seq)
        };
        let word = cols[0].trim();
        if word.is_empty() {
            return Err(Error::parse(line_no, "empty word"));
        }
        let mut pair = TranscriptPair::new(
            word,
            phones(cols[1], "canonical")?,
            phones(cols[2], "annotated")?,
        );
        if let Some(name) = cols
            .get(3)
            .map(|c| c.trim())
            .filter(|c| !c.is_empty() && *c != "-")
        {
            let lang = languages::find(name)
                .ok_or_else(|| Error::parse(line_no, format!("unknown language `{name}`")))?;
            pair.language = Some(lang.name.to_string());
            pair.group = Some(lang.group);
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

pub fn load_pairs(path: impl AsRef<Path>, table: &SymbolTable) -> Result<Vec<TranscriptPair>> {
    parse_pairs(&read_to_string(path.as_ref())?, table)
}

/// Writes pairs in the format read by [`parse_pairs`].
pub fn format_pairs(pairs: &[TranscriptPair]) -> String {
    let mut out = String::new();
    for p in pairs {
        let _ = write!(out, "{}\t{}\t{}", p.word, p.canonical, p.annotated);
        if let Some(l) = &p.language {
            let _ = write!(out, "\t{l}");
        }
        out.push('\n');
    }
    out
}
