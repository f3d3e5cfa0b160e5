use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::align::Aligner;
use super::corpus::TranscriptPair;
use super::extract::{extract, Grouping, Occurrence};
use crate::error::{Error, Result};
use crate::phoneset::{Phone, PhoneSeq, SymbolTable};
use crate::rules::{Context, RewriteRule, RuleSet};

/// Rate threshold used when none is given. The value is a convention of
/// this crate, not a measured quantity.
pub const DEFAULT_THETA: f64 = 0.3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateRule {
    pub source: PhoneSeq,
    pub target: PhoneSeq,
    pub left: Option<Context>,
    pub right: Option<Context>,
    pub count: usize,
    /// Positions in the canonical corpus where the source (with its
    /// contexts) occurs.
    pub opportunity: usize,
    pub rate: f64,
}

impl CandidateRule {
    pub fn to_rule(&self, id: impl Into<String>) -> RewriteRule {
        RewriteRule::new(id, self.source.clone(), self.target.clone())
            .with_context(self.left.clone(), self.right.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningConfig {
    pub theta: f64,
    pub grouping: Grouping,
    /// Merge occurrences that differ only in context. Insertions keep
    /// their contexts since they are meaningless without them.
    pub context_free: bool,
    pub place_discount: bool,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            theta: DEFAULT_THETA,
            grouping: Grouping::default(),
            context_free: false,
            place_discount: false,
        }
    }
}

impl MiningConfig {
    pub fn check(&self) -> Result<()> {
        if self.theta > 0.0 && self.theta <= 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidThreshold(self.theta))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MiningResult {
    /// Accepted candidates, highest rate first.
    pub accepted: Vec<CandidateRule>,
    /// Number of distinct candidates below the threshold.
    pub rejected: usize,
    pub warnings: Vec<String>,
}

impl MiningResult {
    /// Accepted candidates as a rule set with ids `m1`, `m2`, ...
    pub fn rule_set(&self) -> RuleSet {
        let rules = self
            .accepted
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_rule(format!("m{}", i + 1)))
            .collect();
        RuleSet::from_rules("mined", rules).expect("mined ids are unique and rules well formed")
    }
}

type Key = (PhoneSeq, PhoneSeq, Option<Context>, Option<Context>);

fn key(o: &Occurrence, context_free: bool) -> Key {
    if context_free && !o.source.is_empty() {
        (o.source.clone(), o.target.clone(), None, None)
    } else {
        (
            o.source.clone(),
            o.target.clone(),
            Some(o.left.clone()),
            Some(o.right.clone()),
        )
    }
}

fn ctx_ok(ctx: &Option<Context>, word: &[Phone], pos: isize) -> bool {
    ctx.as_ref().is_none_or(|c| c.matches(word, pos))
}

/// Positions in `corpus` where `source` occurs between the given contexts.
pub fn opportunity(
    source: &[Phone],
    left: &Option<Context>,
    right: &Option<Context>,
    corpus: &[PhoneSeq],
) -> usize {
    corpus
        .iter()
        .map(|word| {
            if source.len() > word.len() {
                return 0;
            }
            (0..=word.len() - source.len())
                .filter(|&k| {
                    word[k..k + source.len()] == *source
                        && ctx_ok(left, word, k as isize - 1)
                        && ctx_ok(right, word, (k + source.len()) as isize)
                })
                .count()
        })
        .sum()
}

fn by_rate(a: &CandidateRule, b: &CandidateRule) -> Ordering {
    b.rate
        .total_cmp(&a.rate)
        .then_with(|| a.source.cmp(&b.source))
        .then_with(|| a.target.cmp(&b.target))
        .then_with(|| a.left.cmp(&b.left))
        .then_with(|| a.right.cmp(&b.right))
}

/// Merges occurrences, computes rates against `corpus` (the canonical
/// sides) and keeps candidates with rate at least `config.theta`.
pub fn aggregate(
    occurrences: &[Occurrence],
    corpus: &[PhoneSeq],
    config: &MiningConfig,
) -> Result<MiningResult> {
    config.check()?;
    let mut counts: BTreeMap<Key, usize> = BTreeMap::new();
    for o in occurrences {
        *counts.entry(key(o, config.context_free)).or_default() += 1;
    }
    let mut result = MiningResult::default();
    let scored: Vec<(Key, usize, usize)> = counts
        .into_par_iter()
        .map(|(k, count)| {
            let opp = opportunity(&k.0, &k.2, &k.3, corpus);
            (k, count, opp)
        })
        .collect();
    for ((source, target, left, right), count, opp) in scored {
        if opp == 0 {
            result.warnings.push(format!(
                "dropped `{source}` -> `{target}`: source never occurs in the canonical corpus"
            ));
            continue;
        }
        let rate = count as f64 / opp as f64;
        if rate >= config.theta {
            result.accepted.push(CandidateRule {
                source,
                target,
                left,
                right,
                count,
                opportunity: opp,
                rate,
            });
        } else {
            result.rejected += 1;
        }
    }
    result.accepted.sort_by(by_rate);
    Ok(result)
}

/// Aligns every pair, extracts occurrences and aggregates them.
pub fn mine(
    pairs: &[TranscriptPair],
    config: &MiningConfig,
    table: &SymbolTable,
) -> Result<MiningResult> {
    config.check()?;
    let aligner = if config.place_discount {
        Aligner::with_place_discount(table)
    } else {
        Aligner::unit()
    };
    let occurrences: Vec<Occurrence> = pairs
        .par_iter()
        .flat_map_iter(|p| {
            let a = aligner.align(&p.canonical, &p.annotated);
            extract(&a, &p.canonical, &p.annotated, config.grouping)
        })
        .collect();
    let corpus: Vec<PhoneSeq> = pairs.iter().map(|p| p.canonical.clone()).collect();
    let mut result = aggregate(&occurrences, &corpus, config)?;
    if pairs.is_empty() {
        result.warnings.push("empty corpus".to_string());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> PhoneSeq {
        s.parse().unwrap()
    }

    fn occ(src: &str, tgt: &str) -> Occurrence {
        Occurrence {
            source: seq(src),
            target: seq(tgt),
            left: Context::Boundary,
            right: Context::Boundary,
        }
    }

    fn free(theta: f64) -> MiningConfig {
        MiningConfig {
            theta,
            context_free: true,
            ..MiningConfig::default()
        }
    }

    #[test]
    fn rate_at_and_below_threshold() {
        let corpus: Vec<PhoneSeq> = (0..100).map(|_| seq("t")).collect();
        let occs: Vec<Occurrence> = (0..40).map(|_| occ("t", "tt")).collect();
        let r = aggregate(&occs, &corpus, &free(0.3)).unwrap();
        assert_eq!(r.accepted.len(), 1);
        assert_eq!((r.accepted[0].count, r.accepted[0].opportunity), (40, 100));
        assert!((r.accepted[0].rate - 0.4).abs() < 1e-12);

        let occs: Vec<Occurrence> = (0..29).map(|_| occ("t", "tt")).collect();
        let r = aggregate(&occs, &corpus, &free(0.3)).unwrap();
        assert!(r.accepted.is_empty());
        assert_eq!(r.rejected, 1);
    }

    #[test]
    fn zero_opportunity_is_dropped_with_warning() {
        let r = aggregate(&[occ("T", "t_dh")], &[seq("a")], &free(0.3)).unwrap();
        assert!(r.accepted.is_empty());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn contexts_split_candidates_unless_context_free() {
        let corpus = [seq("t a"), seq("a t")];
        let occs = [
            Occurrence {
                source: seq("t"),
                target: seq("tt"),
                left: Context::Boundary,
                right: Context::Phone(Phone::new("a")),
            },
            Occurrence {
                source: seq("t"),
                target: seq("tt"),
                left: Context::Phone(Phone::new("a")),
                right: Context::Boundary,
            },
        ];
        let full = aggregate(&occs, &corpus, &MiningConfig::default()).unwrap();
        assert_eq!(full.accepted.len(), 2);
        assert!(full.accepted.iter().all(|c| c.opportunity == 1));
        let merged = aggregate(&occs, &corpus, &free(0.3)).unwrap();
        assert_eq!(merged.accepted.len(), 1);
        assert_eq!(merged.accepted[0].opportunity, 2);
    }

    #[test]
    fn insertion_opportunity_counts_gaps() {
        let ins = Occurrence {
            source: PhoneSeq::new(),
            target: seq("@"),
            left: Context::Boundary,
            right: Context::Phone(Phone::new("l")),
        };
        let r = aggregate(&[ins], &[seq("l a"), seq("a l")], &free(0.3)).unwrap();
        assert_eq!(r.accepted[0].opportunity, 1);
        assert!(r.accepted[0].left.is_some());
    }

    #[test]
    fn sorted_by_rate_then_source() {
        let corpus = [seq("t d E"), seq("t d E")];
        let occs = [
            occ("t", "tt"),
            occ("E", "e"),
            occ("E", "e"),
            occ("d", "dd"),
            occ("d", "dd"),
        ];
        let r = aggregate(&occs, &corpus, &free(0.3)).unwrap();
        let srcs: Vec<String> = r.accepted.iter().map(|c| c.source.to_string()).collect();
        assert_eq!(srcs, ["E", "d", "t"]);
    }

    #[test]
    fn invalid_theta() {
        assert!(aggregate(&[], &[], &free(0.0)).is_err());
        assert!(aggregate(&[], &[], &free(1.5)).is_err());
        assert!(aggregate(&[], &[], &free(1.0)).is_ok());
    }

    #[test]
    fn empty_corpus_warns() {
        let t = crate::data::symbol_table();
        let r = mine(&[], &MiningConfig::default(), &t).unwrap();
        assert!(r.accepted.is_empty());
        assert_eq!(r.warnings, ["empty corpus"]);
    }
}
