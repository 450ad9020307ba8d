//! The aggregated property report for one automaton, its JSON form
//! (schema 1), and the internal consistency gate.

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{Automaton, ResetLength, Word, SUBSET_BFS_MAX_STATES};
use crate::congruence;
use crate::contraction::{self, Contracting, WeaklyContracting};
use crate::cyclotomic::{invariant_lines, InvariantLine};
use crate::monoid::{self, Rank2Isolated};
use crate::poly::render_rational;
use crate::representation::{
    self, rank_bound_audit, sufficiency_from_parts, RankBoundAudit, SufficiencyCheck,
};

/// A boolean property that may not apply (non-circular inputs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    Holds(bool),
    NotApplicable,
}

impl Applicability {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Applicability::Holds(b) => Some(*b),
            Applicability::NotApplicable => None,
        }
    }
}

impl Serialize for Applicability {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Applicability::Holds(b) => serializer.serialize_bool(*b),
            Applicability::NotApplicable => serializer.serialize_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomatonSummary {
    pub n: usize,
    pub k: usize,
    pub letters: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResetStatus {
    Exact,
    NotSynchronizing,
    CapExceeded,
    Skipped,
    /// n beyond the subset-search guard; only `synchronizing` is reported.
    TooLarge,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantLineReport {
    /// Eigenvalue is the k-th power of the primitive n-th root of unity.
    pub k: usize,
    pub eigenvalue: String,
    pub vector: Vec<String>,
    pub rational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_vector: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonoidReport {
    /// Exact size when not truncated.
    pub size: usize,
    pub truncated: bool,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Rank2Report {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    /// 1-based isolated state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<usize>,
}

/// The full JSON report (schema 1). Field order is fixed by this struct,
/// so serialization is byte-deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub automaton: AutomatonSummary,
    pub circular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circulating_letter: Option<String>,
    pub synchronizing: bool,
    pub reset_status: ResetStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortest_reset_length: Option<usize>,
    pub weakly_defective: bool,
    pub simple: bool,
    /// 1-based pair generating a proper congruence when not simple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simple_witness: Option<[usize; 2]>,
    pub weakly_contracting: Applicability,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_contracting_witness: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_contracting_gcd: Option<u64>,
    pub contracting: Applicability,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contracting_witness: Option<[usize; 2]>,
    pub representation: &'static str,
    pub algebra_dimension: usize,
    pub c_irreducible: bool,
    /// `None` means undecided by the implemented evidence.
    pub q_irreducible: Option<bool>,
    pub q_irreducible_note: String,
    pub invariant_lines: Vec<InvariantLineReport>,
    pub rank_audit: RankBoundAudit,
    pub monoid: MonoidReport,
    pub rank2_isolated: Rank2Report,
    pub sufficiency: SufficiencyCheck,
    /// All principal congruences as sorted 1-based blocks, keyed by pair.
    pub congruence_lattice: Vec<LatticeEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeEntry {
    /// 1-based generating pair.
    pub pair: [usize; 2],
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Cap for transition-monoid enumeration.
    pub monoid_cap: usize,
    /// Skip the shortest-reset BFS (report only `synchronizing`).
    pub reset_bfs: bool,
    /// Depth cap for the reset BFS.
    pub reset_cap: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            monoid_cap: 1_000_000,
            reset_bfs: true,
            reset_cap: None,
        }
    }
}

/// An internal cross-check failed; reports are refused rather than emitted
/// inconsistent.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("internal consistency violation: {0}")]
pub struct ConsistencyViolation(pub String);

/// Run every analysis and assemble the report.
///
/// The cross-implications that must hold by theory (irreducible ⟹ simple,
/// contracting ⟹ weakly contracting, invariant line ⟹ reducible, satisfied
/// sufficiency precondition ⟹ irreducible, rank-bound violation) are
/// verified before returning; a failure is an implementation bug surfaced as
/// [`ConsistencyViolation`].
pub fn analyze(aut: &Automaton, options: &AnalyzeOptions) -> Result<Report, ConsistencyViolation> {
    let n = aut.state_count();
    let circular = aut.find_circular_structure();

    let synchronizing = aut.is_synchronizing();
    let (reset_status, shortest_reset_length) = if !options.reset_bfs {
        (ResetStatus::Skipped, None)
    } else if n > SUBSET_BFS_MAX_STATES {
        (ResetStatus::TooLarge, None)
    } else {
        match aut
            .shortest_reset_length(options.reset_cap)
            .expect("guard checked above")
        {
            ResetLength::Length(len) => (ResetStatus::Exact, Some(len)),
            ResetLength::NotSynchronizing => (ResetStatus::NotSynchronizing, None),
            ResetLength::CapExceeded => (ResetStatus::CapExceeded, None),
        }
    };

    let weakly_defective = aut.is_weakly_defective();
    let simplicity = congruence::is_simple(aut);
    let simple = simplicity.is_simple();

    let (weakly_contracting, wc_witness, wc_gcd, contracting, contracting_witness) = match &circular
    {
        None => (
            Applicability::NotApplicable,
            None,
            None,
            Applicability::NotApplicable,
            None,
        ),
        Some(cs) => {
            let wc = contraction::is_weakly_contracting(aut, cs);
            let (wc_flag, wc_witness, wc_gcd) = match wc {
                WeaklyContracting::Yes => (Applicability::Holds(true), None, None),
                WeaklyContracting::No { witness, gcd } => (
                    Applicability::Holds(false),
                    Some([witness.0 + 1, witness.1 + 1]),
                    Some(gcd as u64),
                ),
            };
            let contracting = contraction::is_contracting(aut, cs);
            let (c_flag, c_witness) = match contracting {
                Contracting::Yes => (Applicability::Holds(true), None),
                Contracting::No { witness } => (
                    Applicability::Holds(false),
                    Some([witness.0 + 1, witness.1 + 1]),
                ),
            };
            (wc_flag, wc_witness, wc_gcd, c_flag, c_witness)
        }
    };

    let algebra_dimension = representation::algebra_dimension(aut);
    let full = (n - 1) * (n - 1);
    let c_irreducible = algebra_dimension == full;

    let lines: Vec<InvariantLine> = match &circular {
        Some(cs) => invariant_lines(aut, cs),
        None => Vec::new(),
    };
    let line_reports: Vec<InvariantLineReport> = lines
        .iter()
        .map(|line| InvariantLineReport {
            k: line.k,
            eigenvalue: line.eigenvalue.render(),
            vector: line
                .vector
                .components()
                .iter()
                .map(|c| c.render())
                .collect(),
            rational: line.rational_vector.is_some(),
            rational_vector: line
                .rational_vector
                .as_ref()
                .map(|v| v.iter().map(render_rational).collect()),
        })
        .collect();

    let (q_irreducible, q_irreducible_note) =
        q_irreducibility_evidence(n, circular.is_some(), c_irreducible, &lines);

    let audit = rank_bound_audit(aut, !lines.is_empty());

    let monoid_enum = monoid::enumerate_monoid(aut, options.monoid_cap);
    let monoid_report = MonoidReport {
        size: monoid_enum.len(),
        truncated: monoid_enum.truncated,
        cap: options.monoid_cap,
    };

    let rank2 = monoid::rank2_isolated_witness(aut, options.monoid_cap);
    let rank2_report = match &rank2 {
        Rank2Isolated::Found { word, state } => Rank2Report {
            status: "found",
            word: Some(aut.format_word(word)),
            state: Some(state + 1),
        },
        Rank2Isolated::None => Rank2Report {
            status: "none",
            word: None,
            state: None,
        },
        Rank2Isolated::Unknown => Rank2Report {
            status: "unknown",
            word: None,
            state: None,
        },
    };

    let rystov = weakly_defective && simple;
    let sufficiency = sufficiency_from_parts(
        rystov,
        contracting.holds(),
        &rank2,
        c_irreducible,
    );

    let lattice = congruence::principal_congruence_table(aut)
        .into_iter()
        .map(|((p, q), blocks)| LatticeEntry {
            pair: [p + 1, q + 1],
            blocks,
        })
        .collect();

    let report = Report {
        schema: 1,
        automaton: AutomatonSummary {
            n,
            k: aut.letter_count(),
            letters: aut.letters().to_vec(),
        },
        circular: circular.is_some(),
        circulating_letter: circular
            .as_ref()
            .map(|cs| aut.letters()[cs.letter].clone()),
        synchronizing,
        reset_status,
        shortest_reset_length,
        weakly_defective,
        simple,
        simple_witness: simplicity.witness().map(|(p, q)| [p + 1, q + 1]),
        weakly_contracting,
        weakly_contracting_witness: wc_witness,
        weakly_contracting_gcd: wc_gcd,
        contracting,
        contracting_witness: contracting_witness,
        representation: if synchronizing {
            "synchronized (Rees quotient by the reset ideal)"
        } else {
            "deficiency action (no reset ideal; not a Rees quotient)"
        },
        algebra_dimension,
        c_irreducible,
        q_irreducible,
        q_irreducible_note,
        invariant_lines: line_reports,
        rank_audit: audit,
        monoid: monoid_report,
        rank2_isolated: rank2_report,
        sufficiency,
        congruence_lattice: lattice,
    };

    verify_consistency(&report)?;
    Ok(report)
}

fn q_irreducibility_evidence(
    n: usize,
    circular: bool,
    c_irreducible: bool,
    lines: &[InvariantLine],
) -> (Option<bool>, String) {
    if c_irreducible {
        return (
            Some(true),
            "implied by C-irreducibility".to_string(),
        );
    }
    if lines.iter().any(|l| l.rational_vector.is_some()) {
        return (
            Some(false),
            "a rational invariant eigenline exists".to_string(),
        );
    }
    if circular && n == 3 {
        // dim 2: every proper invariant subspace is an eigenline of the
        // circulating matrix, and none admits a rational spanning vector.
        return (
            Some(true),
            "by eigenline criterion (no rational eigenline in dimension 2)".to_string(),
        );
    }
    (
        None,
        "undecided: only C-irreducibility and eigenline evidence are computed".to_string(),
    )
}

fn verify_consistency(report: &Report) -> Result<(), ConsistencyViolation> {
    let mut violations = Vec::new();
    if report.c_irreducible && !report.simple {
        violations.push("c_irreducible holds but simple fails".to_string());
    }
    if report.contracting.holds() == Some(true)
        && report.weakly_contracting.holds() == Some(false)
    {
        violations.push("contracting holds but weakly_contracting fails".to_string());
    }
    if !report.invariant_lines.is_empty() && report.c_irreducible {
        violations.push("an invariant line exists for an irreducible representation".to_string());
    }
    if !report.sufficiency.consistent() {
        violations.push(
            "a sufficiency precondition holds but the representation is reducible".to_string(),
        );
    }
    if report.rank_audit.violation {
        violations.push(format!(
            "deficient rank {} exceeds the bound {} despite an invariant line",
            report.rank_audit.max_deficient_rank.unwrap_or(0),
            report.rank_audit.bound
        ));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ConsistencyViolation(violations.join("; ")))
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering for the CLI.
    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let a = &self.automaton;
        let _ = writeln!(
            out,
            "automaton: {} states, {} letters ({})",
            a.n,
            a.k,
            a.letters.join(" ")
        );
        match &self.circulating_letter {
            Some(letter) => {
                let _ = writeln!(out, "circular: yes (circulating letter {letter})");
            }
            None => {
                let _ = writeln!(out, "circular: no");
            }
        }
        let _ = match (self.synchronizing, self.shortest_reset_length) {
            (true, Some(len)) => writeln!(out, "synchronizing: yes (shortest reset length {len})"),
            (true, None) => writeln!(
                out,
                "synchronizing: yes (reset length {})",
                match self.reset_status {
                    ResetStatus::Skipped => "not computed",
                    ResetStatus::TooLarge => "skipped: is_synchronizing only at this size",
                    ResetStatus::CapExceeded => "above the depth cap",
                    _ => "unknown",
                }
            ),
            (false, _) => writeln!(out, "synchronizing: no"),
        };
        let _ = writeln!(out, "weakly defective: {}", yes_no(self.weakly_defective));
        match self.simple_witness {
            Some([p, q]) => {
                let _ = writeln!(out, "simple: no (witness pair q{p}, q{q})");
            }
            None => {
                let _ = writeln!(out, "simple: {}", yes_no(self.simple));
            }
        }
        match (self.weakly_contracting, self.weakly_contracting_witness) {
            (Applicability::NotApplicable, _) => {
                let _ = writeln!(out, "weakly contracting: n/a (not circular)");
            }
            (Applicability::Holds(true), _) => {
                let _ = writeln!(out, "weakly contracting: yes");
            }
            (Applicability::Holds(false), witness) => {
                let gcd = self.weakly_contracting_gcd.unwrap_or(0);
                let pair = witness.map_or(String::new(), |[p, q]| format!("pair q{p}, q{q}, "));
                let _ = writeln!(out, "weakly contracting: no ({pair}gcd certificate {gcd})");
            }
        }
        match (self.contracting, self.contracting_witness) {
            (Applicability::NotApplicable, _) => {
                let _ = writeln!(out, "contracting: n/a (not circular)");
            }
            (Applicability::Holds(true), _) => {
                let _ = writeln!(out, "contracting: yes");
            }
            (Applicability::Holds(false), witness) => {
                let pair = witness.map_or(String::new(), |[p, q]| format!(" (witness q{p}, q{q})"));
                let _ = writeln!(out, "contracting: no{pair}");
            }
        }
        let full = (a.n - 1) * (a.n - 1);
        let _ = writeln!(
            out,
            "representation: {}; algebra dimension {}/{}",
            self.representation, self.algebra_dimension, full
        );
        let _ = writeln!(out, "C-irreducible: {}", yes_no(self.c_irreducible));
        let _ = writeln!(
            out,
            "Q-irreducible: {} ({})",
            match self.q_irreducible {
                Some(true) => "yes",
                Some(false) => "no",
                None => "undecided",
            },
            self.q_irreducible_note
        );
        if self.invariant_lines.is_empty() {
            let _ = writeln!(out, "invariant lines: none");
        } else {
            for line in &self.invariant_lines {
                let rational = match &line.rational_vector {
                    Some(v) => format!("rational, spanned by ({})", v.join(", ")),
                    None => "non-rational".to_string(),
                };
                let _ = writeln!(
                    out,
                    "invariant line k={} (eigenvalue {}): {}",
                    line.k, line.eigenvalue, rational
                );
            }
        }
        let _ = writeln!(
            out,
            "rank audit: max deficient rank {} (bound {}, {})",
            self.rank_audit
                .max_deficient_rank
                .map_or("none".to_string(), |r| r.to_string()),
            self.rank_audit.bound,
            if self.rank_audit.applicable {
                "binding"
            } else {
                "not applicable"
            }
        );
        let _ = writeln!(
            out,
            "monoid: {}{} elements",
            if self.monoid.truncated { ">= " } else { "" },
            self.monoid.size
        );
        let _ = match (&self.rank2_isolated.word, &self.rank2_isolated.state) {
            (Some(word), Some(state)) => writeln!(
                out,
                "isolated rank-2 witness: word {word}, isolated state q{state}"
            ),
            _ => writeln!(out, "isolated rank-2 witness: {}", self.rank2_isolated.status),
        };
        let _ = writeln!(out, "sufficiency verdict: {:?}", self.sufficiency.verdict);
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Convenience wrapper: analyze a word-renderable automaton with defaults.
pub fn analyze_default(aut: &Automaton) -> Result<Report, ConsistencyViolation> {
    analyze(aut, &AnalyzeOptions::default())
}

/// Format a word with this report's letter names (used by search findings).
pub fn format_word_with(letters: &[String], word: &Word) -> String {
    let single = letters.iter().all(|l| l.chars().count() == 1);
    let names: Vec<&str> = word.0.iter().map(|&x| letters[x].as_str()).collect();
    if single {
        names.concat()
    } else {
        names.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{corpus_source, generate, FamilySpec};
    use crate::format::parse_automaton;

    #[test]
    fn example6_report_matches_the_headline_facts() {
        let aut = parse_automaton(corpus_source("example6").unwrap()).unwrap();
        let report = analyze_default(&aut).unwrap();
        assert!(report.synchronizing);
        assert_eq!(report.shortest_reset_length, Some(2));
        assert!(!report.simple);
        assert_eq!(report.weakly_contracting.holds(), Some(false));
        assert_eq!(report.weakly_contracting_witness, Some([1, 4]));
        assert_eq!(report.weakly_contracting_gcd, Some(3));
        assert!(!report.c_irreducible);
    }

    #[test]
    fn example3_report_q_irreducibility_evidence() {
        let aut = parse_automaton(corpus_source("example3").unwrap()).unwrap();
        let report = analyze_default(&aut).unwrap();
        assert!(!report.c_irreducible);
        assert_eq!(report.q_irreducible, Some(true));
        assert_eq!(report.invariant_lines.len(), 2);
        assert!(report.invariant_lines.iter().all(|l| !l.rational));
    }

    #[test]
    fn fold_report_has_rational_eigenline_and_q_reducible() {
        let aut = generate(&FamilySpec::Fold { n: 6 }).unwrap();
        let report = analyze_default(&aut).unwrap();
        assert!(!report.c_irreducible);
        assert_eq!(report.q_irreducible, Some(false));
        assert_eq!(report.invariant_lines.len(), 1);
        assert_eq!(report.invariant_lines[0].k, 3);
        assert!(report.invariant_lines[0].rational);
    }

    #[test]
    fn non_circular_inputs_report_not_applicable() {
        // both letters fix state 0, no letter is a full cycle
        let aut = crate::automaton::Automaton::new(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0, 1], vec![0, 2, 2]],
            3,
        )
        .unwrap();
        let report = analyze_default(&aut).unwrap();
        assert!(!report.circular);
        assert_eq!(report.weakly_contracting.holds(), None);
        assert_eq!(report.contracting.holds(), None);
    }

    #[test]
    fn json_is_deterministic() {
        let aut = parse_automaton(corpus_source("example8").unwrap()).unwrap();
        let a = analyze_default(&aut).unwrap().to_json();
        let b = analyze_default(&aut).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
    }

    #[test]
    fn text_rendering_mentions_the_eigenline_evidence() {
        let aut = parse_automaton(corpus_source("example3").unwrap()).unwrap();
        let report = analyze_default(&aut).unwrap();
        let text = report.render_text();
        assert!(text.contains("C-irreducible: no"));
        assert!(text.contains("eigenline criterion"));
    }
}
