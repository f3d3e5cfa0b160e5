use serde::Serialize;

use super::align::{Alignment, EditKind, EditOp};
use crate::phoneset::{Phone, PhoneSeq};
use crate::rules::Context;

/// One observed difference between a canonical and an annotated form,
/// with the canonical phones flanking it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub source: PhoneSeq,
    pub target: PhoneSeq,
    pub left: Context,
    pub right: Context,
}

/// How adjacent non-match operations are turned into candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Grouping {
    /// A maximal run of consecutive edits is one candidate, so
    /// `I d -> e dd` is found as a unit.
    #[default]
    MaximalRun,
    /// Every edit is its own candidate.
    PerOperation,
}

/// Candidate occurrences of one aligned pair, in order of position.
pub fn extract(
    alignment: &Alignment,
    canonical: &[Phone],
    annotated: &[Phone],
    grouping: Grouping,
) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let mut run: Vec<&EditOp> = Vec::new();
    let flush = |run: &mut Vec<&EditOp>, out: &mut Vec<Occurrence>| {
        if let (Some(first), Some(last)) = (run.first(), run.last()) {
            let (start, end) = (first.src.start, last.src.end);
            out.push(Occurrence {
                source: canonical[start..end].into(),
                target: annotated[first.tgt.start..last.tgt.end].into(),
                left: Context::at(canonical, start as isize - 1),
                right: Context::at(canonical, end as isize),
            });
        }
        run.clear();
    };
    for op in &alignment.ops {
        if op.kind == EditKind::Match {
            flush(&mut run, &mut out);
            continue;
        }
        run.push(op);
        if grouping == Grouping::PerOperation {
            flush(&mut run, &mut out);
        }
    }
    flush(&mut run, &mut out);
    out
}
