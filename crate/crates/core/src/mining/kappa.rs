use std::collections::HashMap;
use std::hash::Hash;
use std::path::Path;

use serde::Serialize;

use crate::error::{read_to_string, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaResult {
    pub p_o: f64,
    pub p_e: f64,
    pub kappa: f64,
}

/// Cohen's kappa for two raters over the same items.
///
/// When chance agreement is 1 (both raters use one shared label) kappa is
/// 1 for perfect agreement and an error otherwise.
pub fn cohens_kappa<T: Eq + Hash>(a: &[T], b: &[T]) -> Result<KappaResult> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyLabels);
    }
    let n = a.len() as f64;
    let mut agree = 0usize;
    let mut margins: HashMap<&T, (usize, usize)> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        if x == y {
            agree += 1;
        }
        margins.entry(x).or_default().0 += 1;
        margins.entry(y).or_default().1 += 1;
    }
    let p_o = agree as f64 / n;
    let p_e: f64 = margins
        .values()
        .map(|&(ca, cb)| (ca as f64 / n) * (cb as f64 / n))
        .sum();
    if (1.0 - p_e).abs() < 1e-12 {
        return if agree == a.len() {
            Ok(KappaResult {
                p_o,
                p_e: 1.0,
                kappa: 1.0,
            })
        } else {
            Err(Error::DegenerateKappa { p_o })
        };
    }
    Ok(KappaResult {
        p_o,
        p_e,
        kappa: (p_o - p_e) / (1.0 - p_e),
    })
}

/// Reads two label columns separated by a tab (or other whitespace).
/// Blank lines and `#` comments are skipped.
pub fn parse_labels(text: &str) -> Result<(Vec<String>, Vec<String>)> {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = if line.contains('\t') {
            line.split('\t').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        let [x, y] = cols[..] else {
            return Err(Error::parse(
                idx + 1,
                format!("expected 2 label columns, found {}", cols.len()),
            ));
        };
        a.push(x.to_string());
        b.push(y.to_string());
    }
    Ok((a, b))
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<(Vec<String>, Vec<String>)> {
    parse_labels(&read_to_string(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 20 yes/yes, 15 no/no, 5 yes/no, 10 no/yes.
    fn confusion() -> (Vec<&'static str>, Vec<&'static str>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (x, y, n) in [
            ("yes", "yes", 20),
            ("no", "no", 15),
            ("yes", "no", 5),
            ("no", "yes", 10),
        ] {
            for _ in 0..n {
                a.push(x);
                b.push(y);
            }
        }
        (a, b)
    }

    #[test]
    fn hand_computed_example() {
        let (a, b) = confusion();
        let k = cohens_kappa(&a, &b).unwrap();
        assert!((k.p_o - 0.7).abs() < 1e-12);
        assert!((k.p_e - 0.5).abs() < 1e-12);
        assert!((k.kappa - 0.4).abs() < 1e-9);
    }

    #[test]
    fn perfect_agreement() {
        let a = ["x", "y", "x", "z"];
        assert_eq!(cohens_kappa(&a, &a).unwrap().kappa, 1.0);
    }

    #[test]
    fn single_shared_label() {
        assert_eq!(cohens_kappa(&["a", "a"], &["a", "a"]).unwrap().kappa, 1.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            cohens_kappa(&["a"], &["a", "b"]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(
            cohens_kappa::<&str>(&[], &[]),
            Err(Error::EmptyLabels)
        ));
    }

    #[test]
    fn label_file() {
        let (a, b) = parse_labels("# a b\nyes\tno\nno no\n\n").unwrap();
        assert_eq!(a, ["yes", "no"]);
        assert_eq!(b, ["no", "no"]);
        assert!(matches!(
            parse_labels("x\ny z\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn labels() -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
            (1usize..60).prop_flat_map(|n| {
                (
                    proptest::collection::vec(0u8..4, n),
                    proptest::collection::vec(0u8..4, n),
                )
            })
        }

        proptest! {
            #[test]
            fn invariant_under_renaming((a, b) in labels()) {
                let rename = |v: &[u8]| v.iter().map(|x| (3 - x) * 10).collect::<Vec<_>>();
                match (cohens_kappa(&a, &b), cohens_kappa(&rename(&a), &rename(&b))) {
                    (Ok(x), Ok(y)) => prop_assert!((x.kappa - y.kappa).abs() < 1e-12),
                    (Err(_), Err(_)) => {}
                    other => prop_assert!(false, "{other:?}"),
                }
            }

            #[test]
            fn bounded_and_one_iff_perfect((a, b) in labels()) {
                if let Ok(k) = cohens_kappa(&a, &b) {
                    prop_assert!(k.kappa <= 1.0 + 1e-12);
                    prop_assert_eq!(k.kappa == 1.0, a == b);
                }
                prop_assert_eq!(cohens_kappa(&a, &a).unwrap().kappa, 1.0);
            }
        }
    }
}
