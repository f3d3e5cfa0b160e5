use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::profiles::LanguageProfile;
use crate::error::{Error, Result};
use crate::phoneset::Phone;

pub const DEFAULT_P_HIGH: f64 = 66.7;
pub const DEFAULT_P_MID: f64 = 33.3;

/// Number of languages whose inventory contains each phone.
pub type PhoneFrequencies = BTreeMap<Phone, usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    High,
    Mid,
    Low,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::High => "high",
            Tier::Mid => "mid",
            Tier::Low => "low",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TierReport {
    pub languages: usize,
    pub frequencies: PhoneFrequencies,
    pub tiers: BTreeMap<Phone, Tier>,
    pub t_high: usize,
    pub t_mid: usize,
    /// Phones present in every language.
    pub universal_phones: BTreeSet<Phone>,
}

impl TierReport {
    pub fn members(&self, tier: Tier) -> impl Iterator<Item = &Phone> {
        self.tiers
            .iter()
            .filter(move |(_, t)| **t == tier)
            .map(|(p, _)| p)
    }
}

pub fn phoneme_frequencies(profiles: &[LanguageProfile]) -> PhoneFrequencies {
    let mut freq = PhoneFrequencies::new();
    for p in profiles {
        for phone in &p.inventory {
            *freq.entry(phone.clone()).or_default() += 1;
        }
    }
    freq
}

/// Nearest-rank percentile of an ascending slice: the value at rank
/// `ceil(p / 100 * n)`, clamped to `1..=n`.
pub fn nearest_rank(sorted: &[usize], p: f64) -> Option<usize> {
    if sorted.is_empty() {
        return None;
    }
    let n = sorted.len();
    // The epsilon keeps exact products such as 0.5 * 10 from rounding up.
    let rank = ((p / 100.0) * n as f64 - 1e-9).ceil() as isize;
    let rank = rank.clamp(1, n as isize) as usize;
    Some(sorted[rank - 1])
}

/// Splits phones into frequency tiers at the `p_high` and `p_mid`
/// percentiles of the frequency multiset.
pub fn tier_assignment(
    frequencies: &PhoneFrequencies,
    languages: usize,
    p_high: f64,
    p_mid: f64,
) -> Result<TierReport> {
    let mut values: Vec<usize> = frequencies.values().copied().collect();
    values.sort_unstable();
    let t_high = nearest_rank(&values, p_high).ok_or(Error::EmptyFrequencies)?;
    let t_mid = nearest_rank(&values, p_mid).ok_or(Error::EmptyFrequencies)?;
    let tiers = frequencies
        .iter()
        .map(|(p, &f)| {
            let tier = if f >= t_high {
                Tier::High
            } else if f >= t_mid {
                Tier::Mid
            } else {
                Tier::Low
            };
            (p.clone(), tier)
        })
        .collect();
    let universal_phones = frequencies
        .iter()
        .filter(|(_, &f)| f == languages)
        .map(|(p, _)| p.clone())
        .collect();
    Ok(TierReport {
        languages,
        frequencies: frequencies.clone(),
        tiers,
        t_high,
        t_mid,
        universal_phones,
    })
}

/// Frequencies and tiers of `profiles` at the default percentiles.
pub fn tier_report(profiles: &[LanguageProfile]) -> Result<TierReport> {
    tier_assignment(
        &phoneme_frequencies(profiles),
        profiles.len(),
        DEFAULT_P_HIGH,
        DEFAULT_P_MID,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::Family;

    fn freqs(values: &[usize]) -> PhoneFrequencies {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| (Phone::new(format!("p{i:03}")), v))
            .collect()
    }

    fn profile(phones: &str) -> LanguageProfile {
        LanguageProfile {
            name: phones.to_string(),
            group: 1,
            region: String::new(),
            family: Family::IndoAryan,
            inventory: phones.split(' ').map(Phone::new).collect(),
            characteristics: BTreeSet::new(),
        }
    }

    #[test]
    fn direct_count() {
        let f = phoneme_frequencies(&[profile("a b"), profile("b c")]);
        let got: Vec<(&str, usize)> = f.iter().map(|(p, &n)| (p.as_str(), n)).collect();
        assert_eq!(got, [("a", 1), ("b", 2), ("c", 1)]);
    }

    #[test]
    fn one_to_nine() {
        let r = tier_assignment(&freqs(&[1, 2, 3, 4, 5, 6, 7, 8, 9]), 9, 66.7, 33.3).unwrap();
        assert_eq!((r.t_high, r.t_mid), (7, 3));
        let count = |t| r.members(t).count();
        assert_eq!(
            (count(Tier::High), count(Tier::Mid), count(Tier::Low)),
            (3, 4, 2)
        );
        assert_eq!(r.universal_phones.len(), 1);
    }

    #[test]
    fn degenerate_distribution() {
        let r = tier_assignment(&freqs(&[18; 5]), 18, 66.7, 33.3).unwrap();
        assert_eq!(r.members(Tier::High).count(), 5);
        assert_eq!(r.universal_phones.len(), 5);
    }

    #[test]
    fn empty_map() {
        assert!(matches!(
            tier_assignment(&freqs(&[]), 0, 66.7, 33.3),
            Err(Error::EmptyFrequencies)
        ));
    }

    #[test]
    fn percentile_edges() {
        assert_eq!(nearest_rank(&[10, 20, 30, 40], 50.0), Some(20));
        assert_eq!(nearest_rank(&[10, 20, 30, 40], 0.0), Some(10));
        assert_eq!(nearest_rank(&[10, 20, 30, 40], 100.0), Some(40));
        assert_eq!(nearest_rank(&[5], 66.7), Some(5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Smallest value with at least p% of the multiset at or below it.
        fn oracle(values: &[usize], p: f64) -> usize {
            let mut v = values.to_vec();
            v.sort();
            let n = v.len() as f64;
            *v.iter()
                .find(|&&x| v.iter().filter(|&&y| y <= x).count() as f64 * 100.0 >= p * n - 1e-6)
                .unwrap()
        }

        proptest! {
            #[test]
            fn matches_definition(values in proptest::collection::vec(1usize..=18, 1..200)) {
                let r = tier_assignment(&freqs(&values), 18, 66.7, 33.3).unwrap();
                prop_assert_eq!(r.t_high, oracle(&values, 66.7));
                prop_assert_eq!(r.t_mid, oracle(&values, 33.3));
                for p in &r.universal_phones {
                    prop_assert_eq!(r.tiers[p], Tier::High);
                    prop_assert_eq!(r.frequencies[p], 18);
                }
                let universal = values.iter().filter(|&&v| v == 18).count();
                prop_assert_eq!(r.universal_phones.len(), universal);
            }
        }
    }
}
