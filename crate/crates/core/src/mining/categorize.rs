use std::collections::HashSet;

use serde::Serialize;

use crate::rules::{RewriteRule, RuleIdentity};

/// Mined rules split against a literature list by rule identity.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CategoryPartition {
    /// In both lists (literature entries are kept).
    pub cat1: Vec<RewriteRule>,
    /// Mined only.
    pub cat2: Vec<RewriteRule>,
    /// Literature only.
    pub cat3: Vec<RewriteRule>,
}

impl CategoryPartition {
    pub fn counts(&self) -> [usize; 3] {
        [self.cat1.len(), self.cat2.len(), self.cat3.len()]
    }
}

/// Partitions `mined ∪ literature` by identity (source, target, contexts).
/// Duplicate identities within one list are reported once.
pub fn categorize(mined: &[RewriteRule], literature: &[RewriteRule]) -> CategoryPartition {
    let mined_ids: HashSet<RuleIdentity> = mined.iter().map(RewriteRule::identity).collect();
    let lit_ids: HashSet<RuleIdentity> = literature.iter().map(RewriteRule::identity).collect();
    let mut part = CategoryPartition::default();
    let mut seen = HashSet::new();
    for r in literature {
        let id = r.identity();
        if !seen.insert(id.clone()) {
            continue;
        }
        if mined_ids.contains(&id) {
            part.cat1.push(r.clone());
        } else {
            part.cat3.push(r.clone());
        }
    }
    for r in mined {
        let id = r.identity();
        if !lit_ids.contains(&id) && seen.insert(id) {
            part.cat2.push(r.clone());
        }
    }
    part
}
