//! Checks on the fixture data embedded in the crate.

use std::collections::{BTreeMap, BTreeSet};

use accentforge_core::data;
use accentforge_core::inventory::{self, tier_report, validate_rules, Tier, ValidationConfig};
use accentforge_core::phoneset::{ParseMode, PhoneCategory, PhoneSet};
use accentforge_core::{Phone, PhoneSeq, RuleQuery, Status, LANGUAGES};

const INVENTORY_SIZES: [(&str, usize); 18] = [
    ("Dimasa", 21),
    ("Mog", 36),
    ("Maithili", 56),
    ("Oriya", 49),
    ("Bengali", 47),
    ("Assamese", 40),
    ("Nepali", 46),
    ("Punjabi", 51),
    ("Marwari", 50),
    ("Hindi", 55),
    ("Malwi", 46),
    ("Gujarati", 47),
    ("Marathi", 48),
    ("Konkani", 55),
    ("Kannada", 50),
    ("Telugu", 55),
    ("Malayalam", 54),
    ("Tamil", 37),
];

#[test]
fn symbol_table_has_one_boundary_and_the_native_universe() {
    let t = data::symbol_table();
    assert_eq!(t.boundary_count(), 1);
    let profiles = data::profiles(&t);
    let union: BTreeSet<&Phone> = profiles.iter().flat_map(|p| p.inventory.iter()).collect();
    assert_eq!(union.len(), 70);
    for p in union {
        assert!(t.get(p).is_some(), "{p} missing from the symbol table");
    }
}

#[test]
fn every_mapped_phone_round_trips() {
    let t = data::symbol_table();
    for set in PhoneSet::ALL {
        for info in t
            .iter()
            .filter(|i| i.features.category != PhoneCategory::Boundary)
        {
            let Some(_) = info.token(set) else { continue };
            let seq: PhoneSeq = [info.symbol.clone()].into_iter().collect();
            let text = t.convert(&seq, set, ParseMode::Strict).unwrap();
            let back = t.parse_phone_string(&text, set, ParseMode::Strict).unwrap();
            assert_eq!(back.seq, seq, "{} via {set}", info.symbol);
        }
    }
}

#[test]
fn arpabet_chart() {
    let t = data::symbol_table();
    let parsed = t
        .parse_phone_string("DH IH1 S", PhoneSet::Arpabet, ParseMode::Strict)
        .unwrap();
    assert_eq!(parsed.seq.to_string(), "D I s");
    assert_eq!(
        t.convert(&parsed.seq, PhoneSet::Ipa, ParseMode::Strict)
            .unwrap(),
        "ð ɪ s"
    );
}

#[test]
fn profiles_match_language_list_and_counts() {
    let profiles = data::profiles(&data::symbol_table());
    let got: Vec<(&str, usize)> = profiles
        .iter()
        .map(|p| (p.name.as_str(), p.inventory.len()))
        .collect();
    assert_eq!(got, INVENTORY_SIZES);
    for (p, l) in profiles.iter().zip(LANGUAGES.iter()) {
        assert_eq!((p.group, p.family), (l.group, l.family), "{}", p.name);
    }
}

#[test]
fn frequency_tiers() {
    let profiles = data::profiles(&data::symbol_table());
    let report = tier_report(&profiles).unwrap();
    assert_eq!(report.frequencies.len(), 70);
    assert_eq!(report.universal_phones.len(), 9);
    assert_eq!((report.t_high, report.t_mid), (16, 10));
    assert!(report
        .universal_phones
        .iter()
        .all(|p| report.tiers[p] == Tier::High));
}

#[test]
fn regional_characteristics_follow_groups() {
    use accentforge_core::CharacteristicTag as T;
    let profiles = data::profiles(&data::symbol_table());
    let with = |tag: T| -> BTreeSet<&str> {
        profiles
            .iter()
            .filter(|p| p.has(tag))
            .map(|p| p.name.as_str())
            .collect()
    };
    let names = |s: &[&'static str]| s.iter().copied().collect::<BTreeSet<_>>();
    assert_eq!(
        with(T::NonPhonemicAspiration),
        names(&["Kannada", "Telugu", "Malayalam", "Tamil"])
    );
    assert_eq!(with(T::TrillsAndFlaps), names(&["Malayalam", "Tamil"]));
    assert_eq!(with(T::NoVoicedConsonants), names(&["Tamil"]));
    assert_eq!(with(T::IntervocalicVoicing), names(&["Tamil", "Telugu"]));
    assert_eq!(with(T::ReducedPhonemeSet), names(&["Dimasa", "Mog"]));
    assert_eq!(with(T::InherentSchwa).len(), 18);
    // Only one characteristic of the language table is shared by all.
    let universal: Vec<T> = inventory::CharacteristicTag::ALL
        .iter()
        .copied()
        .filter(|t| t.is_listed() && with(*t).len() == 18)
        .collect();
    assert_eq!(universal, [T::InherentSchwa]);
}

#[test]
fn validation_reproduces_expected_verdicts() {
    let t = data::symbol_table();
    let rules = data::default_rules(&t);
    let verdicts = validate_rules(
        &rules,
        &data::rule_tags(),
        &data::profiles(&t),
        &ValidationConfig::default(),
    );
    let mismatches = data::expected_verdicts().compare(&verdicts);
    assert!(mismatches.is_empty(), "{mismatches:#?}");
    assert_eq!(verdicts.len(), 30);
}

#[test]
fn every_rule_has_tags_entry_and_verdict() {
    let t = data::symbol_table();
    let tags = data::rule_tags();
    let fixture = data::expected_verdicts();
    for r in data::golden_rules(&t).rules() {
        assert!(tags.0.contains_key(&r.id), "{} has no tag row", r.id);
        assert!(fixture.0.contains_key(&r.id), "{} has no verdict", r.id);
    }
}

#[test]
fn discarded_overlay_only_changes_status() {
    let t = data::symbol_table();
    let golden = data::golden_rules(&t);
    for d in data::discarded_rules(&t).rules() {
        let g = golden
            .get(&d.id)
            .expect("overlay ids exist in the golden file");
        assert_eq!(d.status, Status::Discarded);
        assert_eq!(
            (&g.source, &g.target, &g.left, &g.right, &g.scope),
            (&d.source, &d.target, &d.left, &d.right, &d.scope)
        );
    }
}

#[test]
fn sample_lexicon_exercises_the_universal_rules() {
    let t = data::symbol_table();
    let crs = data::default_rules(&t)
        .select(&RuleQuery::universal())
        .unwrap()
        .compile();
    let (_, traces) = data::sample_lexicon(&t).adapt_traced(&crs);
    let mut fired: BTreeMap<&str, usize> = BTreeMap::new();
    for step in traces.iter().flat_map(|tr| tr.steps.iter()) {
        *fired.entry(step.rule.as_str()).or_default() += 1;
    }
    for id in [
        "c1r1", "c1r2", "c1r3.d", "c1r3.t", "c1r4.th", "c1r5", "c3r5", "c3r6", "c3r7",
    ] {
        assert!(fired.contains_key(id), "{id} never fires on the sample");
    }
}
