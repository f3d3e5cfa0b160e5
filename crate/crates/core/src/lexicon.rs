//! CMU-style pronunciation dictionaries.
//!
//! One entry per line: the word, a separator of a tab or two or more
//! spaces, then the phone tokens. Lines starting with `;;;` are comments.
//! Variant suffixes such as `READ(2)` are kept verbatim.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{read_to_string, Error, Result};
use crate::phoneset::{ParseMode, PhoneSeq, PhoneSet, SymbolTable};
use crate::rewrite::{apply, RewriteTrace};
use crate::rules::CompiledRuleSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexiconEntry {
    pub word: String,
    pub pron: PhoneSeq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    pub entries: Vec<LexiconEntry>,
    /// Phone set the lexicon was read from.
    pub phone_set: PhoneSet,
}

/// A parsed lexicon plus the number of problems tolerated in lenient mode
/// (skipped lines and unknown tokens).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub lexicon: Lexicon,
    pub warnings: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdaptStats {
    pub entries: usize,
    /// Entries with at least one rule application.
    pub changed: usize,
    pub applications: usize,
    pub per_rule: BTreeMap<String, usize>,
}

fn split_entry(line: &str) -> Option<(&str, &str)> {
    if let Some((w, p)) = line.split_once('\t') {
        return Some((w.trim_end(), p));
    }
    let at = line.find("  ")?;
    Some((&line[..at], &line[at..]))
}

impl Lexicon {
    pub fn new(phone_set: PhoneSet) -> Self {
        Lexicon {
            entries: Vec::new(),
            phone_set,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn load(
        path: impl AsRef<Path>,
        set: PhoneSet,
        table: &SymbolTable,
        mode: ParseMode,
    ) -> Result<Loaded> {
        Self::parse(&read_to_string(path.as_ref())?, set, table, mode)
    }

    pub fn parse(
        text: &str,
        set: PhoneSet,
        table: &SymbolTable,
        mode: ParseMode,
    ) -> Result<Loaded> {
        let mut lexicon = Lexicon::new(set);
        let mut warnings = 0;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() || line.starts_with(";;;") {
                continue;
            }
            let entry = split_entry(line)
                .filter(|(w, p)| !w.trim().is_empty() && !p.trim().is_empty())
                .ok_or_else(|| {
                    Error::parse(
                        line_no,
                        format!("expected `WORD  PHONES`, got `{}`", line.trim()),
                    )
                })
                .and_then(|(word, pron)| {
                    let parsed = table
                        .parse_phone_string(pron, set, mode)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    warnings += parsed.unknown;
                    Ok(LexiconEntry {
                        word: word.trim().to_string(),
                        pron: parsed.seq,
                    })
                });
            match (entry, mode) {
                (Ok(e), _) => lexicon.entries.push(e),
                (Err(_), ParseMode::Lenient) => warnings += 1,
                (Err(e), ParseMode::Strict) => return Err(e),
            }
        }
        Ok(Loaded { lexicon, warnings })
    }

    /// Rewrites every pronunciation; words and order are unchanged.
    pub fn adapt(&self, crs: &CompiledRuleSet) -> (Lexicon, AdaptStats) {
        let (lex, traces) = self.adapt_traced(crs);
        let stats = stats(&traces);
        (lex, stats)
    }

    /// As [`Lexicon::adapt`], keeping the trace of every entry.
    pub fn adapt_traced(&self, crs: &CompiledRuleSet) -> (Lexicon, Vec<RewriteTrace>) {
        let (entries, traces): (Vec<_>, Vec<_>) = self
            .entries
            .par_iter()
            .map(|e| {
                let (pron, trace) = apply(&e.pron, crs);
                let entry = LexiconEntry {
                    word: e.word.clone(),
                    pron,
                };
                (entry, trace)
            })
            .unzip();
        let lex = Lexicon {
            entries,
            phone_set: self.phone_set,
        };
        (lex, traces)
    }

    /// Renders the lexicon in `set`, in the input file format.
    ///
    /// In strict mode every word with an unmapped phone is reported.
    pub fn emit(&self, set: PhoneSet, table: &SymbolTable, mode: ParseMode) -> Result<String> {
        let mut out = String::new();
        let mut unmapped = Vec::new();
        for e in &self.entries {
            match table.convert(&e.pron, set, mode) {
                Ok(tokens) => {
                    out.push_str(&e.word);
                    out.push_str("  ");
                    out.push_str(&tokens);
                    out.push('\n');
                }
                Err(err) if err.is_mapping() => unmapped.push(e.word.clone()),
                Err(err) => return Err(err),
            }
        }
        if !unmapped.is_empty() {
            return Err(Error::UnmappedWords {
                set,
                words: unmapped,
            });
        }
        Ok(out)
    }

    pub fn write(
        &self,
        path: impl AsRef<Path>,
        set: PhoneSet,
        table: &SymbolTable,
        mode: ParseMode,
    ) -> Result<()> {
        let path = path.as_ref();
        let text = self.emit(set, table, mode)?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

pub fn stats(traces: &[RewriteTrace]) -> AdaptStats {
    let mut s = AdaptStats {
        entries: traces.len(),
        ..AdaptStats::default()
    };
    for t in traces {
        if !t.is_empty() {
            s.changed += 1;
        }
        s.applications += t.len();
        for step in &t.steps {
            *s.per_rule.entry(step.rule.clone()).or_default() += 1;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::rules::{RuleQuery, RuleSet};

    fn table() -> SymbolTable {
        data::symbol_table()
    }

    fn universal() -> CompiledRuleSet {
        let t = table();
        data::default_rules(&t)
            .select(&RuleQuery::universal())
            .unwrap()
            .compile()
    }

    #[test]
    fn arpabet_entry() {
        let t = table();
        let lex = Lexicon::parse(
            ";;; header\nBED  B EH1 D\n",
            PhoneSet::Arpabet,
            &t,
            ParseMode::Strict,
        )
        .unwrap()
        .lexicon;
        assert_eq!(lex.entries.len(), 1);
        assert_eq!(lex.entries[0].word, "BED");
        assert_eq!(lex.entries[0].pron, "b E d".parse().unwrap());
    }

    #[test]
    fn tab_separator_and_variants() {
        let t = table();
        let lex = Lexicon::parse(
            "READ(2)\tR EH1 D\n",
            PhoneSet::Arpabet,
            &t,
            ParseMode::Strict,
        )
        .unwrap()
        .lexicon;
        assert_eq!(lex.entries[0].word, "READ(2)");
        let out = lex.emit(PhoneSet::Arpabet, &t, ParseMode::Strict).unwrap();
        assert_eq!(out, "READ(2)  R EH D\n");
    }

    #[test]
    fn empty_input() {
        let loaded = Lexicon::parse("", PhoneSet::Arpabet, &table(), ParseMode::Strict).unwrap();
        assert!(loaded.lexicon.is_empty());
        assert_eq!(
            loaded
                .lexicon
                .emit(PhoneSet::Cps, &table(), ParseMode::Strict)
                .unwrap(),
            ""
        );
    }

    #[test]
    fn missing_pronunciation() {
        let text = "BED  B EH1 D\nBED\n";
        match Lexicon::parse(text, PhoneSet::Arpabet, &table(), ParseMode::Strict) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let loaded = Lexicon::parse(text, PhoneSet::Arpabet, &table(), ParseMode::Lenient).unwrap();
        assert_eq!((loaded.lexicon.len(), loaded.warnings), (1, 1));
    }

    #[test]
    fn single_space_is_not_a_separator() {
        assert!(Lexicon::parse(
            "BED B EH1 D\n",
            PhoneSet::Arpabet,
            &table(),
            ParseMode::Strict
        )
        .is_err());
    }

    #[test]
    fn lenient_unknown_tokens_round_trip() {
        let t = table();
        let loaded =
            Lexicon::parse("ODD  AA1 XX D\n", PhoneSet::Arpabet, &t, ParseMode::Lenient).unwrap();
        assert_eq!(loaded.warnings, 1);
        let out = loaded
            .lexicon
            .emit(PhoneSet::Arpabet, &t, ParseMode::Lenient)
            .unwrap();
        assert_eq!(out, "ODD  AA XX D\n");
        assert!(
            Lexicon::parse("ODD  AA1 XX D\n", PhoneSet::Arpabet, &t, ParseMode::Strict).is_err()
        );
    }

    #[test]
    fn adapt_counts_changed_entries() {
        let t = table();
        let lex = Lexicon::parse(
            "BED  b E d\nSING  s I N\nDAY  d eI\n",
            PhoneSet::Canonical,
            &t,
            ParseMode::Strict,
        )
        .unwrap()
        .lexicon;
        let (out, stats) = lex.adapt(&universal());
        assert_eq!(out.len(), 3);
        assert_eq!(stats.changed, 2);
        assert_eq!(stats.applications, 4);
        assert_eq!(out.entries[0].pron, "b e dd".parse().unwrap());
        assert_eq!(out.entries[1], lex.entries[1]);
    }

    #[test]
    fn adapt_with_no_rules_is_identity() {
        let t = table();
        let lex = data::sample_lexicon(&t);
        let (out, stats) = lex.adapt(&RuleSet::new("none").compile());
        assert_eq!(out, lex);
        assert_eq!(stats.changed, 0);
    }

    #[test]
    fn unmapped_words_are_listed() {
        let t = table();
        let lex = Lexicon::parse(
            "HARD  a: rr\nBAD  b a: d_d\n",
            PhoneSet::Canonical,
            &t,
            ParseMode::Strict,
        )
        .unwrap()
        .lexicon;
        match lex.emit(PhoneSet::Cps, &t, ParseMode::Strict) {
            Err(Error::UnmappedWords { words, .. }) => assert_eq!(words, ["HARD"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn write_then_load() {
        let t = table();
        let lex = data::sample_lexicon(&t);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.dict");
        lex.write(&path, PhoneSet::Ipa, &t, ParseMode::Strict)
            .unwrap();
        let back = Lexicon::load(&path, PhoneSet::Ipa, &t, ParseMode::Strict).unwrap();
        assert_eq!(back.lexicon.entries, lex.entries);
        assert_eq!(back.warnings, 0);
    }

    #[test]
    fn sample_matches_expected() {
        let t = table();
        let (out, stats) = data::sample_lexicon(&t).adapt(&universal());
        let text = out
            .emit(PhoneSet::Canonical, &t, ParseMode::Strict)
            .unwrap();
        assert_eq!(text, data::SAMPLE_EXPECTED_DICT);
        assert_eq!(stats.entries, 20);
    }
}
