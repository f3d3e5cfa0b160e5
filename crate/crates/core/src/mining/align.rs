//! Levenshtein alignment of phone sequences.
//!
//! Costs are kept in half units so the optional place-of-articulation
//! discount (substitution cost 0.5) stays exact.

use std::ops::Range;

use serde::Serialize;

use crate::phoneset::{Phone, SymbolTable};

const UNIT: u32 = 2;
const HALF: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EditKind {
    Match,
    Substitute,
    /// A phone present only in the annotated sequence.
    Insert,
    /// A canonical phone missing from the annotated sequence.
    Delete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EditOp {
    pub kind: EditKind,
    pub src: Range<usize>,
    pub tgt: Range<usize>,
    /// Cost in half units.
    pub half_cost: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alignment {
    pub ops: Vec<EditOp>,
    /// Total cost in half units.
    pub half_cost: u32,
}

impl Alignment {
    pub fn cost(&self) -> f64 {
        f64::from(self.half_cost) / f64::from(UNIT)
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|op| op.kind == EditKind::Match)
    }
}

/// Edit-distance aligner. The default uses unit costs throughout.
#[derive(Clone, Copy, Debug, Default)]
pub struct Aligner<'a> {
    place_discount: Option<&'a SymbolTable>,
}

impl<'a> Aligner<'a> {
    pub fn unit() -> Self {
        Aligner::default()
    }

    /// Substitutions between phones sharing a place of articulation cost 0.5.
    pub fn with_place_discount(table: &'a SymbolTable) -> Self {
        Aligner {
            place_discount: Some(table),
        }
    }

    fn substitution(&self, a: &Phone, b: &Phone) -> u32 {
        if a == b {
            return 0;
        }
        let place = |p: &Phone| {
            self.place_discount
                .and_then(|t| t.get(p))
                .and_then(|i| i.features.place)
        };
        match (place(a), place(b)) {
            (Some(x), Some(y)) if x == y => HALF,
            _ => UNIT,
        }
    }

    /// Minimal-cost alignment. Backtrace ties prefer match or substitution,
    /// then deletion, then insertion.
    pub fn align(&self, src: &[Phone], tgt: &[Phone]) -> Alignment {
        let (n, m) = (src.len(), tgt.len());
        let w = m + 1;
        let mut dp = vec![0u32; (n + 1) * w];
        for i in 0..=n {
            dp[i * w] = i as u32 * UNIT;
        }
        for (j, cell) in dp[..w].iter_mut().enumerate() {
            *cell = j as u32 * UNIT;
        }
        for i in 1..=n {
            for j in 1..=m {
                let diag = dp[(i - 1) * w + j - 1] + self.substitution(&src[i - 1], &tgt[j - 1]);
                let del = dp[(i - 1) * w + j] + UNIT;
                let ins = dp[i * w + j - 1] + UNIT;
                dp[i * w + j] = diag.min(del).min(ins);
            }
        }

        let mut ops = Vec::with_capacity(n.max(m));
        let (mut i, mut j) = (n, m);
        while i > 0 || j > 0 {
            let here = dp[i * w + j];
            if i > 0 && j > 0 {
                let c = self.substitution(&src[i - 1], &tgt[j - 1]);
                if dp[(i - 1) * w + j - 1] + c == here {
                    let kind = if c == 0 {
                        EditKind::Match
                    } else {
                        EditKind::Substitute
                    };
                    ops.push(EditOp {
                        kind,
                        src: i - 1..i,
                        tgt: j - 1..j,
                        half_cost: c,
                    });
                    i -= 1;
                    j -= 1;
                    continue;
                }
            }
            if i > 0 && dp[(i - 1) * w + j] + UNIT == here {
                ops.push(EditOp {
                    kind: EditKind::Delete,
                    src: i - 1..i,
                    tgt: j..j,
                    half_cost: UNIT,
                });
                i -= 1;
            } else {
                ops.push(EditOp {
                    kind: EditKind::Insert,
                    src: i..i,
                    tgt: j - 1..j,
                    half_cost: UNIT,
                });
                j -= 1;
            }
        }
        ops.reverse();
        Alignment {
            ops,
            half_cost: dp[n * w + m],
        }
    }
}

/// Unit-cost alignment.
pub fn align(src: &[Phone], tgt: &[Phone]) -> Alignment {
    Aligner::unit().align(src, tgt)
}
