//! Seeded workloads for the benchmarks.

use accentforge_core::mining::TranscriptPair;
use accentforge_core::rewrite::apply;
use accentforge_core::{CompiledRuleSet, Lexicon, LexiconEntry, Phone, PhoneSeq, PhoneSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// English phones of the kind found in RP lexicons.
pub const RP_PHONES: [&str; 30] = [
    "b", "d", "f", "g", "h", "k", "l", "m", "n", "N", "p", "r", "s", "S", "t", "T", "D", "v", "w",
    "j", "z", "E", "I", "U", "V", "@", "{", "eI", "aU", "oU",
];

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> PhoneSeq {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| Phone::new(*RP_PHONES.choose(rng).unwrap()))
        .collect()
}

pub fn random_lexicon(entries: usize, seed: u64) -> Lexicon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lex = Lexicon::new(PhoneSet::Canonical);
    lex.entries = (0..entries)
        .map(|i| LexiconEntry {
            word: format!("W{i}"),
            pron: random_word(&mut rng, 10),
        })
        .collect();
    lex
}

/// Random words paired with their rewrite under `crs`.
pub fn random_pairs(n: usize, crs: &CompiledRuleSet, seed: u64) -> Vec<TranscriptPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let w = random_word(&mut rng, 8);
            let out = apply(&w, crs).0;
            TranscriptPair::new(format!("W{i}"), w, out)
        })
        .collect()
}

pub fn random_frequencies(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(1..=18)).collect()
}
