use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

macro_rules! tags {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Phonological characteristic of a native language.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(rename_all = "snake_case")]
        pub enum CharacteristicTag {
            $($variant,)*
        }

        impl CharacteristicTag {
            pub const ALL: &'static [CharacteristicTag] = &[$(CharacteristicTag::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(CharacteristicTag::$variant => $name,)*
                }
            }
        }

        impl FromStr for CharacteristicTag {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($name => Ok(CharacteristicTag::$variant),)*
                    other => Err(Error::UnknownTag(other.to_string())),
                }
            }
        }
    };
}

tags! {
    InherentSchwa => "inherent_schwa",
    VowelLengthDistinction => "vowel_length_distinction",
    NonPhonemicAspiration => "non_phonemic_aspiration",
    IntervocalicVoicing => "intervocalic_voicing",
    NoVoicedConsonants => "no_voiced_consonants",
    TrillsAndFlaps => "trills_and_flaps",
    VowelHarmony => "vowel_harmony",
    SemivowelProthesis => "semivowel_prothesis",
    InherentVowelCentral => "inherent_vowel_central",
    InherentVowelOpenO => "inherent_vowel_open_o",
    ConsonantPalatalisation => "consonant_palatalisation",
    WordFinalSchwaDeletion => "word_final_schwa_deletion",
    WordMedialSchwaDeletion => "word_medial_schwa_deletion",
    SchwaDeletion => "schwa_deletion",
    SchwaFronting => "schwa_fronting",
    VowelNasalisation => "vowel_nasalisation",
    NoVowelNasalisation => "no_vowel_nasalisation",
    Tonality => "tonality",
    ConsonantGemination => "consonant_gemination",
    VowelQualityContrast => "vowel_quality_contrast",
    ComplexPhonotactics => "complex_phonotactics",
    InterchangeableVowelsSemivowels => "interchangeable_vowels_semivowels",
    NoConsonantClusters => "no_consonant_clusters",
    ReducedPhonemeSet => "reduced_phoneme_set",
    DentalRetroflexStops => "dental_retroflex_stops",
    NoDentalFricatives => "no_dental_fricatives",
    TenseVowels => "tense_vowels",
    Monophthongisation => "monophthongisation",
}

impl CharacteristicTag {
    /// False for the four substitution characteristics shared by every
    /// language, which support rule validation but are not listed among the
    /// per-language characteristics.
    pub fn is_listed(self) -> bool {
        !matches!(
            self,
            CharacteristicTag::DentalRetroflexStops
                | CharacteristicTag::NoDentalFricatives
                | CharacteristicTag::TenseVowels
                | CharacteristicTag::Monophthongisation
        )
    }
}

impl fmt::Display for CharacteristicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
