//! Deterministic generators for the named automaton families and the fixed
//! corpus of worked examples with expected-property manifests.
//!
//! All families share the circulating letter `a` with `q_i · a = q_{i+1 mod n}`:
//!
//! - `cerny n` (n >= 2): `b` fixes everything except `q_n · b = q_1`.
//! - `fold n` (even n >= 4): `b` fixes the first half and folds the second
//!   half back, `q_i · b = q_{n-i+1}` for `i > n/2`.
//! - `tail n` (n >= 5): `b` sends `q_n` and `q_{n-1}` to `q_1` and fixes the
//!   rest.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::Automaton;
use crate::format::parse_automaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Cerny { n: usize },
    Fold { n: usize },
    Tail { n: usize },
}

impl FamilySpec {
    pub fn from_name(name: &str, n: usize) -> Option<FamilySpec> {
        match name {
            "cerny" => Some(FamilySpec::Cerny { n }),
            "fold" => Some(FamilySpec::Fold { n }),
            "tail" => Some(FamilySpec::Tail { n }),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family} requires {requirement}, got n = {n}")]
    ParameterOutOfRange {
        family: &'static str,
        requirement: &'static str,
        n: usize,
    },
}

/// Build the family automaton over the alphabet `{a, b}`.
pub fn generate(spec: &FamilySpec) -> Result<Automaton, FamilyError> {
    let (n, b): (usize, Vec<usize>) = match *spec {
        FamilySpec::Cerny { n } => {
            if n < 2 {
                return Err(FamilyError::ParameterOutOfRange {
                    family: "cerny",
                    requirement: "n >= 2",
                    n,
                });
            }
            let mut b: Vec<usize> = (0..n).collect();
            b[n - 1] = 0;
            (n, b)
        }
        FamilySpec::Fold { n } => {
            if n < 4 || n % 2 != 0 {
                return Err(FamilyError::ParameterOutOfRange {
                    family: "fold",
                    requirement: "even n >= 4",
                    n,
                });
            }
            let b = (0..n).map(|j| if j < n / 2 { j } else { n - 1 - j }).collect();
            (n, b)
        }
        FamilySpec::Tail { n } => {
            if n < 5 {
                return Err(FamilyError::ParameterOutOfRange {
                    family: "tail",
                    requirement: "n >= 5",
                    n,
                });
            }
            let mut b: Vec<usize> = (0..n).collect();
            b[n - 1] = 0;
            b[n - 2] = 0;
            (n, b)
        }
    };
    let a: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Ok(Automaton::new(vec!["a".into(), "b".into()], vec![a, b], n).expect("family table is valid"))
}

/// Provenance tag for a golden value in the corpus manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source material for the example.
    Paper,
    /// Produced by this crate's own independent oracles and frozen.
    Derived,
    /// Forced by the definitions.
    Trivial,
}

/// One golden value with its provenance tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden<T> {
    pub value: T,
    pub provenance: Provenance,
}

/// Expected invariant line of the synchronized representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedLine {
    /// Eigenline index `k` (eigenvalue is the k-th power of the n-th root of unity).
    pub k: usize,
    /// Whether the line admits an all-rational spanning vector.
    pub rational: bool,
}

/// Golden expected report for one corpus automaton. Fields are asserted
/// bit-exactly by the corpus tests; 1-based state pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedReport {
    pub synchronizing: Golden<bool>,
    pub shortest_reset_length: Golden<usize>,
    /// A known reset word, as letter names.
    pub reset_word: Golden<String>,
    pub weakly_defective: Golden<bool>,
    pub simple: Golden<bool>,
    pub weakly_contracting: Golden<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_contracting_witness: Option<Golden<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weakly_contracting_gcd: Option<Golden<u64>>,
    pub contracting: Golden<bool>,
    pub c_irreducible: Golden<bool>,
    pub algebra_dimension: Golden<usize>,
    pub invariant_lines: Golden<Vec<ExpectedLine>>,
    pub monoid_size: Golden<usize>,
    pub max_deficient_rank: Golden<usize>,
}

/// A named corpus automaton with its golden expected report.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub automaton: Automaton,
    pub expected: ExpectedReport,
}

const CORPUS_SOURCES: [(&str, &str); 5] = [
    ("example3", include_str!("../../../corpus/example3.aut")),
    ("example4-fold", include_str!("../../../corpus/example4-fold.aut")),
    ("example4-irr", include_str!("../../../corpus/example4-irr.aut")),
    ("example6", include_str!("../../../corpus/example6.aut")),
    ("example8", include_str!("../../../corpus/example8.aut")),
];

const MANIFEST: &str = include_str!("../../../corpus/manifest.json");

/// The fixed example corpus, in name order, with golden reports.
pub fn corpus() -> Vec<CorpusEntry> {
    let manifest: std::collections::BTreeMap<String, ExpectedReport> =
        serde_json::from_str(MANIFEST).expect("corpus manifest is well-formed");
    CORPUS_SOURCES
        .iter()
        .map(|(name, text)| CorpusEntry {
            name,
            automaton: parse_automaton(text).expect("corpus file is well-formed"),
            expected: manifest
                .get(*name)
                .unwrap_or_else(|| panic!("manifest entry for {name}"))
                .clone(),
        })
        .collect()
}

/// The raw `.aut` text of a corpus automaton, for tests and the CLI.
pub fn corpus_source(name: &str) -> Option<&'static str> {
    CORPUS_SOURCES
        .iter()
        .find(|(entry, _)| *entry == name)
        .map(|(_, text)| *text)
}
