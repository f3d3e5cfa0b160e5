//! Single-pass application of a compiled rule set.
//!
//! The input is scanned once from left to right. At each position the
//! longest matching source wins, ties go to the rule listed first, and the
//! emitted target is never rescanned. Contexts always read the original
//! input, padded with a virtual `#` on both sides.
//!
//! Insertion rules (empty source) compete at every position as zero-length
//! matches, so any consuming rule beats them. When one fires, its target is
//! emitted and the phone at that position is copied unchanged.

use serde::{Deserialize, Serialize};

use crate::phoneset::{Phone, PhoneSeq};
use crate::rules::CompiledRuleSet;

/// One rule application: `input[start..end]` was replaced by `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub start: usize,
    pub end: usize,
    pub source: PhoneSeq,
    pub target: PhoneSeq,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Rebuilds the output from the input and this trace alone.
    pub fn replay(&self, input: &[Phone]) -> PhoneSeq {
        let mut out = PhoneSeq::new();
        let mut pos = 0;
        for step in &self.steps {
            out.extend_from_slice(&input[pos..step.start]);
            out.extend_from_slice(&step.target);
            pos = step.end;
        }
        out.extend_from_slice(&input[pos..]);
        out
    }
}

fn matches_at(input: &[Phone], i: usize, crs: &CompiledRuleSet, idx: usize) -> bool {
    let rule = crs.rule(idx);
    let end = i + rule.source.len();
    end <= input.len()
        && input[i..end] == rule.source[..]
        && rule
            .left
            .as_ref()
            .is_none_or(|c| c.matches(input, i as isize - 1))
        && rule
            .right
            .as_ref()
            .is_none_or(|c| c.matches(input, end as isize))
}

/// Index of the winning rule at `i`: longest source, then earliest.
fn best_at(input: &[Phone], i: usize, crs: &CompiledRuleSet) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut best_len = 0;
    if let Some(phone) = input.get(i) {
        for &idx in crs.anchored_at(phone) {
            let len = crs.rule(idx).source.len();
            if (best.is_none() || len > best_len) && matches_at(input, i, crs, idx) {
                best = Some(idx);
                best_len = len;
            }
        }
    }
    if best.is_none() {
        best = crs
            .insertions()
            .iter()
            .copied()
            .find(|&idx| matches_at(input, i, crs, idx));
    }
    best
}

/// Rewrites `input` with `crs`, returning the output and the steps taken.
pub fn apply(input: &[Phone], crs: &CompiledRuleSet) -> (PhoneSeq, RewriteTrace) {
    let mut out = PhoneSeq::new();
    let mut trace = RewriteTrace::default();
    let mut i = 0;
    while i <= input.len() {
        match best_at(input, i, crs) {
            Some(idx) => {
                let rule = crs.rule(idx);
                let end = i + rule.source.len();
                out.extend_from_slice(&rule.target);
                trace.steps.push(TraceStep {
                    rule: rule.id.clone(),
                    start: i,
                    end,
                    source: rule.source.clone(),
                    target: rule.target.clone(),
                });
                if end == i {
                    if let Some(p) = input.get(i) {
                        out.push(p.clone());
                    }
                    i += 1;
                } else {
                    i = end;
                }
            }
            None => {
                if let Some(p) = input.get(i) {
                    out.push(p.clone());
                }
                i += 1;
            }
        }
    }
    (out, trace)
}

/// Output only, for callers that do not need the trace.
pub fn rewrite(input: &[Phone], crs: &CompiledRuleSet) -> PhoneSeq {
    apply(input, crs).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::rules::{RuleQuery, RuleSet};

    fn seq(s: &str) -> PhoneSeq {
        s.parse().unwrap()
    }

    fn compile(text: &str) -> CompiledRuleSet {
        RuleSet::parse(text, &data::symbol_table())
            .unwrap()
            .compile()
    }

    fn universal() -> CompiledRuleSet {
        let t = data::symbol_table();
        data::default_rules(&t)
            .select(&RuleQuery::universal())
            .unwrap()
            .compile()
    }

    #[test]
    fn bed_and_day() {
        let crs = universal();
        assert_eq!(apply(&seq("b E d"), &crs).0, seq("b e dd"));
        let (out, trace) = apply(&seq("d eI"), &crs);
        assert_eq!(out, seq("dd e:"));
        let ids: Vec<&str> = trace.steps.iter().map(|s| s.rule.as_str()).collect();
        assert_eq!(ids, ["c1r3.d", "c3r6"]);
    }

    #[test]
    fn empty_rule_set_is_identity() {
        let crs = RuleSet::new("none").compile();
        let input = seq("T I n");
        let (out, trace) = apply(&input, &crs);
        assert_eq!(out, input);
        assert!(trace.is_empty());
        assert!(apply(&[], &crs).0.is_empty());
    }

    #[test]
    fn longest_match_wins() {
        let crs = compile("rule short : U -> u ;\nrule long : j U -> u ;\n");
        let (out, trace) = apply(&seq("j U"), &crs);
        assert_eq!(out, seq("u"));
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].rule, "long");
    }

    #[test]
    fn file_order_breaks_ties() {
        let crs = compile("rule a : T -> t_d ;\nrule b : T -> t_dh ;\n");
        assert_eq!(apply(&seq("T"), &crs).0, seq("t_d"));
    }

    #[test]
    fn no_cascade() {
        let crs = compile("rule ab : a -> b ;\nrule bc : b -> k ;\n");
        assert_eq!(apply(&seq("a"), &crs).0, seq("b"));
        assert_eq!(apply(&seq("a b"), &crs).0, seq("b k"));
    }

    #[test]
    fn contexts_read_the_original_input() {
        // `n` is word-final in the input even though the rule before it fired.
        let crs = compile("rule a : @ -> e ;\nrule b : n -> @ n / @ _ # ;\n");
        assert_eq!(apply(&seq("s @ n"), &crs).0, seq("s e @ n"));
        assert_eq!(apply(&seq("s @ n t"), &crs).0, seq("s e n t"));
    }

    #[test]
    fn insertion_rules() {
        let crs = compile("rule pro : -> i / # _ s ;\nrule fin : -> @ / l _ # ;\n");
        let (out, trace) = apply(&seq("s k u l"), &crs);
        assert_eq!(out, seq("i s k u l @"));
        assert_eq!(trace.steps[0].start, 0);
        assert_eq!(trace.steps[0].end, 0);
        assert_eq!(trace.steps[1].start, 4);
        assert_eq!(trace.replay(&seq("s k u l")), out);
    }

    #[test]
    fn consuming_rule_beats_insertion() {
        let crs = compile("rule ins : -> i / # _ s ;\nrule sub : s -> S ;\n");
        assert_eq!(apply(&seq("s"), &crs).0, seq("S"));
    }

    #[test]
    fn deletion() {
        let crs = compile("rule del : h -> ;\n");
        assert_eq!(apply(&seq("a h a"), &crs).0, seq("a a"));
    }

    #[test]
    fn trace_serializes_as_json() {
        let (_, trace) = apply(&seq("b E d"), &universal());
        let json = serde_json::to_string(&trace.steps[0]).unwrap();
        assert_eq!(
            json,
            r#"{"rule":"c1r1","start":1,"end":2,"source":["E"],"target":["e"]}"#
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const ALPHABET: [&str; 8] = ["a", "b", "d", "E", "t", "U", "j", "eI"];

        fn phones() -> impl Strategy<Value = PhoneSeq> {
            proptest::collection::vec(proptest::sample::select(ALPHABET.to_vec()), 0..12)
                .prop_map(|v| v.into_iter().map(Phone::new).collect())
        }

        proptest! {
            #[test]
            fn replay_reproduces_output(input in phones()) {
                let crs = universal();
                let (out, trace) = apply(&input, &crs);
                prop_assert_eq!(trace.replay(&input), out);
            }

            #[test]
            fn spans_increase_and_do_not_overlap(input in phones()) {
                let crs = compile(
                    "rule a : j U -> u ;\nrule b : U -> u ;\nrule c : -> @ / # _ b ;\nrule d : t -> ;\n",
                );
                let (_, trace) = apply(&input, &crs);
                for w in trace.steps.windows(2) {
                    prop_assert!(w[0].start < w[1].start);
                    prop_assert!(w[0].end <= w[1].start);
                }
            }

            #[test]
            fn deterministic_and_bounded(input in phones()) {
                let crs = universal();
                let a = apply(&input, &crs);
                let b = apply(&input, &crs);
                let max_target = crs.rules().iter().map(|r| r.target.len()).max().unwrap_or(1).max(1);
                prop_assert!(a.0.len() <= input.len() * max_target);
                prop_assert_eq!(a, b);
            }
        }
    }
}
