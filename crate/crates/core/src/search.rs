//! Exhaustive and seeded-random searches for counterexamples to the
//! conjecture predicates.
//!
//! Exhaustive mode enumerates transition tables in lexicographic order —
//! either the circular space (first letter pinned to the standard n-cycle,
//! remaining letters free) or the general space (all letters free) — and
//! analyzes one representative per relabeling class: the table must equal the
//! lexicographically least relabeling over the admissible permutations
//! (cycle rotations in circular mode, all permutations in general mode).
//!
//! Random mode draws seeded tables with the pinned SplitMix64 generator;
//! sample `i` of a run with seed `s` uses the stream seeded by
//! `s + i·GOLDEN_GAMMA`, so findings are replayable from `(seed, i)` alone
//! and independent of thread scheduling.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::automaton::Automaton;
use crate::congruence;
use crate::contraction;
use crate::format::to_aut;
use crate::report::{analyze, AnalyzeOptions, Report};
use crate::representation::is_c_irreducible_fast;
use crate::rng::SplitMix64;

/// The four counterexample predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateId {
    /// Synchronizing, shortest reset ≥ (n−1)² − slack, yet C-reducible.
    ExtremalNotIrreducible,
    /// C-irreducible yet no word of rank 2 exists.
    IrreducibleNoRank2,
    /// Circular, C-reducible, yet no invariant eigenline.
    ReducibleNoEigenline,
    /// Simplicity and weak contraction disagree (must never fire).
    SimpleNeqWeaklyContracting,
}

impl PredicateId {
    pub fn from_name(name: &str) -> Option<PredicateId> {
        match name {
            "extremal-not-irreducible" => Some(PredicateId::ExtremalNotIrreducible),
            "irreducible-no-rank2" => Some(PredicateId::IrreducibleNoRank2),
            "reducible-no-eigenline" => Some(PredicateId::ReducibleNoEigenline),
            "simple-neq-weakly-contracting" => Some(PredicateId::SimpleNeqWeaklyContracting),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PredicateId::ExtremalNotIrreducible => "extremal-not-irreducible",
            PredicateId::IrreducibleNoRank2 => "irreducible-no-rank2",
            PredicateId::ReducibleNoEigenline => "reducible-no-eigenline",
            PredicateId::SimpleNeqWeaklyContracting => "simple-neq-weakly-contracting",
        }
    }

    /// The search space the predicate ranges over.
    pub fn space(&self) -> SearchSpace {
        match self {
            PredicateId::ExtremalNotIrreducible | PredicateId::IrreducibleNoRank2 => {
                SearchSpace::General
            }
            PredicateId::ReducibleNoEigenline | PredicateId::SimpleNeqWeaklyContracting => {
                SearchSpace::Circular
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpace {
    /// First letter pinned to the standard n-cycle.
    Circular,
    /// Every letter free.
    General,
}

impl SearchSpace {
    pub fn name(&self) -> &'static str {
        match self {
            SearchSpace::Circular => "circular",
            SearchSpace::General => "general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { count: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct SearchTask {
    pub predicate: PredicateId,
    pub n: usize,
    pub k: usize,
    pub mode: SearchMode,
    /// Extremality slack: accept shortest reset ≥ (n−1)² − slack.
    pub slack: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("guard violation: {0}")]
    Guard(String),
    #[error("internal consistency violation while reporting a finding: {0}")]
    Internal(String),
}

/// One automaton that satisfied its predicate, with the full report.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    /// Enumeration index (exhaustive) or sample index (random).
    pub index: u64,
    pub detail: String,
    /// The automaton in `.aut` form.
    pub automaton: String,
    pub report: Report,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub schema: u32,
    pub predicate: &'static str,
    pub space: &'static str,
    pub n: usize,
    pub k: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    pub slack: usize,
    /// Tables iterated (exhaustive) or samples drawn (random).
    pub examined: u64,
    /// Canonical representatives (exhaustive) or samples (random) evaluated.
    pub analyzed: u64,
    pub findings: Vec<Finding>,
}

impl SearchOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}

/// Default guards for exhaustive enumeration; the general space carries the
/// full n! relabeling group, so it stops one size earlier.
fn check_exhaustive_guard(space: SearchSpace, n: usize, k: usize) -> Result<(), SearchError> {
    let (max_n, reason) = match space {
        SearchSpace::Circular => (5usize, "circular exhaustive search"),
        SearchSpace::General => (4usize, "general exhaustive search"),
    };
    if n < 1 || n > max_n || k < 1 || k > 2 {
        return Err(SearchError::Guard(format!(
            "{reason} is guarded to 1 <= n <= {max_n}, 1 <= k <= 2 (got n = {n}, k = {k})"
        )));
    }
    Ok(())
}

fn letter_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            char::from_u32('a' as u32 + i as u32)
                .expect("alphabet within a..z")
                .to_string()
        })
        .collect()
}

fn cycle_row(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Assemble an automaton from free rows according to the space.
fn build_automaton(space: SearchSpace, n: usize, k: usize, free_rows: &[Vec<usize>]) -> Automaton {
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(k);
    match space {
        SearchSpace::Circular => {
            rows.push(cycle_row(n));
            rows.extend(free_rows.iter().cloned());
        }
        SearchSpace::General => rows.extend(free_rows.iter().cloned()),
    }
    Automaton::new(letter_names(k), rows, n).expect("search tables are valid")
}

/// Relabel rows by a permutation (`perm[q]` is the new name of `q`).
fn relabel_rows(rows: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|row| {
            let mut out = vec![0usize; row.len()];
            for (q, &t) in row.iter().enumerate() {
                out[perm[q]] = perm[t];
            }
            out
        })
        .collect()
}

/// Is this full table the lexicographically least among its relabelings?
fn is_canonical(space: SearchSpace, n: usize, rows: &[Vec<usize>]) -> bool {
    match space {
        SearchSpace::Circular => {
            // rotations keep the first letter the standard n-cycle; the
            // canonical form picks the base point making the table least
            for t in 1..n {
                let perm: Vec<usize> = (0..n).map(|q| (q + t) % n).collect();
                if relabel_rows(rows, &perm).as_slice() < rows {
                    return false;
                }
            }
            true
        }
        SearchSpace::General => {
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                if perm.iter().enumerate().any(|(i, &p)| p != i)
                    && relabel_rows(rows, &perm).as_slice() < rows
                {
                    return false;
                }
                if !next_permutation(&mut perm) {
                    return true;
                }
            }
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Visit one canonical representative per rotation class of the circular
/// space (first letter the standard n-cycle, remaining letters free), in
/// enumeration order. Used by the exhaustive property suites.
pub fn for_each_canonical_circular(n: usize, k: usize, mut visit: impl FnMut(&Automaton)) {
    assert!(k >= 1, "need at least the circulating letter");
    let free_letters = k - 1;
    let digit_count = n * free_letters;
    let mut digits = vec![0usize; digit_count];
    loop {
        let free_rows: Vec<Vec<usize>> = (0..free_letters)
            .map(|l| digits[l * n..(l + 1) * n].to_vec())
            .collect();
        let aut = build_automaton(SearchSpace::Circular, n, k, &free_rows);
        if is_canonical(SearchSpace::Circular, n, aut.delta()) {
            visit(&aut);
        }
        let mut pos = digit_count;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Predicate check; `Some(detail)` means a finding.
fn evaluate(predicate: PredicateId, aut: &Automaton, slack: usize) -> Option<String> {
    match predicate {
        PredicateId::ExtremalNotIrreducible => {
            if !aut.is_synchronizing() {
                return None;
            }
            let n = aut.state_count();
            let reset = aut
                .shortest_reset_length(None)
                .expect("search sizes within guard")
                .length()?;
            let threshold = (n - 1) * (n - 1) - slack.min((n - 1) * (n - 1));
            if reset < threshold {
                return None;
            }
            if is_c_irreducible_fast(aut) {
                return None;
            }
            Some(format!(
                "shortest reset {reset} reaches the extremal threshold but the representation is reducible"
            ))
        }
        PredicateId::IrreducibleNoRank2 => {
            if !aut.is_synchronizing() {
                return None;
            }
            let ranks = aut.reachable_ranks().expect("search sizes within guard");
            if ranks.contains(&2) {
                return None;
            }
            if !is_c_irreducible_fast(aut) {
                return None;
            }
            Some("C-irreducible but the monoid has no rank-2 element".to_string())
        }
        PredicateId::ReducibleNoEigenline => {
            if !aut.is_synchronizing() {
                return None;
            }
            let cs = aut.find_circular_structure()?;
            if !crate::cyclotomic::invariant_lines(aut, &cs).is_empty() {
                return None;
            }
            if is_c_irreducible_fast(aut) {
                return None;
            }
            Some(
                "C-reducible circular automaton with no invariant eigenline \
                 (every invariant subspace has dimension >= 2)"
                    .to_string(),
            )
        }
        PredicateId::SimpleNeqWeaklyContracting => {
            if !aut.is_synchronizing() {
                return None;
            }
            let cs = aut.find_circular_structure()?;
            let simple = congruence::is_simple(aut).is_simple();
            let wc = contraction::is_weakly_contracting(aut, &cs).holds();
            if simple == wc {
                return None;
            }
            Some(format!(
                "simplicity ({simple}) and weak contraction ({wc}) disagree"
            ))
        }
    }
}

fn make_finding(
    index: u64,
    aut: &Automaton,
    detail: String,
) -> Result<Finding, SearchError> {
    let report = analyze(aut, &AnalyzeOptions::default())
        .map_err(|e| SearchError::Internal(e.to_string()))?;
    Ok(Finding {
        index,
        detail,
        automaton: to_aut(aut),
        report,
    })
}

/// Run the task to completion; findings come back in deterministic
/// enumeration/sample order regardless of parallel scheduling.
pub fn run_search(task: &SearchTask) -> Result<SearchOutcome, SearchError> {
    let space = task.predicate.space();
    let (examined, analyzed, findings) = match task.mode {
        SearchMode::Exhaustive => {
            check_exhaustive_guard(space, task.n, task.k)?;
            run_exhaustive(task, space)?
        }
        SearchMode::Random { count, seed } => run_random(task, space, count, seed)?,
    };
    Ok(SearchOutcome {
        schema: 1,
        predicate: task.predicate.name(),
        space: space.name(),
        n: task.n,
        k: task.k,
        mode: match task.mode {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Random { .. } => "random",
        },
        seed: match task.mode {
            SearchMode::Random { seed, .. } => Some(seed),
            SearchMode::Exhaustive => None,
        },
        count: match task.mode {
            SearchMode::Random { count, .. } => Some(count),
            SearchMode::Exhaustive => None,
        },
        slack: task.slack,
        examined,
        analyzed,
        findings,
    })
}

fn run_exhaustive(
    task: &SearchTask,
    space: SearchSpace,
) -> Result<(u64, u64, Vec<Finding>), SearchError> {
    let n = task.n;
    let free_letters = match space {
        SearchSpace::Circular => task.k - 1,
        SearchSpace::General => task.k,
    };
    let digit_count = n * free_letters;
    let mut digits = vec![0usize; digit_count];
    let mut examined = 0u64;
    let mut analyzed = 0u64;
    let mut findings = Vec::new();
    loop {
        examined += 1;
        let free_rows: Vec<Vec<usize>> = (0..free_letters)
            .map(|l| digits[l * n..(l + 1) * n].to_vec())
            .collect();
        let aut = build_automaton(space, n, task.k, &free_rows);
        if is_canonical(space, n, aut.delta()) {
            analyzed += 1;
            if let Some(detail) = evaluate(task.predicate, &aut, task.slack) {
                findings.push(make_finding(examined - 1, &aut, detail)?);
            }
        }
        // odometer
        let mut pos = digit_count;
        loop {
            if pos == 0 {
                return Ok((examined, analyzed, findings));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn run_random(
    task: &SearchTask,
    space: SearchSpace,
    count: u64,
    seed: u64,
) -> Result<(u64, u64, Vec<Finding>), SearchError> {
    let n = task.n;
    let free_letters = match space {
        SearchSpace::Circular => task.k - 1,
        SearchSpace::General => task.k,
    };
    let results: Result<Vec<Option<Finding>>, SearchError> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::stream(seed, i);
            let free_rows: Vec<Vec<usize>> = (0..free_letters)
                .map(|_| (0..n).map(|_| rng.below(n)).collect())
                .collect();
            let aut = build_automaton(space, n, task.k, &free_rows);
            match evaluate(task.predicate, &aut, task.slack) {
                Some(detail) => make_finding(i, &aut, detail).map(Some),
                None => Ok(None),
            }
        })
        .collect();
    let mut findings: Vec<Finding> = results?.into_iter().flatten().collect();
    findings.sort_by_key(|f| f.index);
    Ok((count, count, findings))
}
