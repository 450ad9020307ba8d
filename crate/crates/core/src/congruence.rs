//! Congruences generated by state pairs and the simplicity test.
//!
//! A congruence is an equivalence on `Q` compatible with the letter action.
//! The principal congruence of a pair is computed by congruence closure:
//! union-find with a worklist of merged pairs, applying every letter to each
//! newly merged pair.

use crate::automaton::Automaton;

/// An equivalence relation on `0..n`, behind a union-find with path
/// compression and union by rank.
#[derive(Debug, Clone)]
pub struct Partition {
    parent: Vec<usize>,
    rank: Vec<u8>,
    blocks: usize,
}

impl Partition {
    /// The diagonal relation: every state in its own block.
    pub fn discrete(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
            rank: vec![0; n],
            blocks: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, q: usize) -> usize {
        if self.parent[q] != q {
            self.parent[q] = self.find(self.parent[q]);
        }
        self.parent[q]
    }

    /// Merge the blocks of `p` and `q`; true when they were distinct.
    pub fn union(&mut self, p: usize, q: usize) -> bool {
        let (rp, rq) = (self.find(p), self.find(q));
        if rp == rq {
            return false;
        }
        let (hi, lo) = if self.rank[rp] >= self.rank[rq] {
            (rp, rq)
        } else {
            (rq, rp)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.blocks -= 1;
        true
    }

    pub fn same(&mut self, p: usize, q: usize) -> bool {
        self.find(p) == self.find(q)
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    /// True when the partition is the universal relation (one block).
    pub fn is_universal(&self) -> bool {
        self.blocks == 1
    }

    /// True when the partition is the diagonal (all singletons).
    pub fn is_discrete(&self) -> bool {
        self.blocks == self.parent.len()
    }

    /// Blocks as sorted lists of sorted 0-based states.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            let root = self.find(q);
            by_root[root].push(q);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort();
        blocks
    }

    /// Blocks as sorted lists of sorted 1-based states, for JSON reports.
    pub fn blocks_one_based(&mut self) -> Vec<Vec<usize>> {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|q| q + 1).collect())
            .collect()
    }
}

/// The least congruence of `aut` containing every listed pair.
pub fn congruence_closure(aut: &Automaton, pairs: &[(usize, usize)]) -> Partition {
    let mut partition = Partition::discrete(aut.state_count());
    let mut worklist: Vec<(usize, usize)> = Vec::new();
    for &(p, q) in pairs {
        if partition.union(p, q) {
            worklist.push((p, q));
        }
    }
    while let Some((p, q)) = worklist.pop() {
        for letter in 0..aut.letter_count() {
            let (ip, iq) = (aut.step(p, letter), aut.step(q, letter));
            if partition.union(ip, iq) {
                worklist.push((ip, iq));
            }
        }
    }
    partition
}

/// The least congruence containing `(p, q)` for `p != q`.
pub fn principal_congruence(aut: &Automaton, p: usize, q: usize) -> Partition {
    assert!(p != q, "principal congruence needs a distinct pair");
    congruence_closure(aut, &[(p, q)])
}

/// Outcome of the simplicity test, with a generating pair when not simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// This pair generates a proper nontrivial congruence.
    NotSimple { witness: (usize, usize) },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match self {
            Simplicity::Simple => None,
            Simplicity::NotSimple { witness } => Some(*witness),
        }
    }
}

/// Decide simplicity: every principal congruence must be universal.
///
/// Any nontrivial congruence contains a principal one, so scanning unordered
/// pairs suffices; the scan short-circuits on the first proper congruence.
pub fn is_simple(aut: &Automaton) -> Simplicity {
    let n = aut.state_count();
    for p in 0..n {
        for q in (p + 1)..n {
            if !principal_congruence(aut, p, q).is_universal() {
                return Simplicity::NotSimple { witness: (p, q) };
            }
        }
    }
    Simplicity::Simple
}

/// All principal congruences, for the CLI lattice dump: one entry per
/// unordered pair, as (pair, blocks in 1-based form).
pub fn principal_congruence_table(aut: &Automaton) -> Vec<((usize, usize), Vec<Vec<usize>>)> {
    let n = aut.state_count();
    let mut table = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            let mut partition = principal_congruence(aut, p, q);
            table.push(((p, q), partition.blocks_one_based()));
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{corpus_source, generate, FamilySpec};
    use crate::format::parse_automaton;

    #[test]
    fn adjacent_pair_in_cerny_collapses_everything() {
        for n in 3..=6 {
            let aut = generate(&FamilySpec::Cerny { n }).unwrap();
            let congruence = principal_congruence(&aut, 0, 1);
            assert!(congruence.is_universal(), "n = {n}");
        }
    }

    #[test]
    fn example6_pair_q1_q4_generates_mod3_blocks() {
        let aut = parse_automaton(corpus_source("example6").unwrap()).unwrap();
        let mut congruence = principal_congruence(&aut, 0, 3);
        assert!(!congruence.is_universal());
        assert!(!congruence.is_discrete());
        assert_eq!(
            congruence.blocks_one_based(),
            vec![vec![1, 4], vec![2, 5], vec![3, 6]]
        );
    }

    #[test]
    fn cerny_5_every_pair_is_universal() {
        let aut = generate(&FamilySpec::Cerny { n: 5 }).unwrap();
        for p in 0..5 {
            for q in (p + 1)..5 {
                assert!(principal_congruence(&aut, p, q).is_universal());
            }
        }
    }

    #[test]
    fn cerny_automata_are_simple() {
        for n in 3..=8 {
            let aut = generate(&FamilySpec::Cerny { n }).unwrap();
            assert!(is_simple(&aut).is_simple(), "n = {n}");
        }
    }

    #[test]
    fn example6_is_not_simple_with_witness_q1_q4() {
        let aut = parse_automaton(corpus_source("example6").unwrap()).unwrap();
        assert_eq!(is_simple(&aut).witness(), Some((0, 3)));
    }

    #[test]
    fn computed_congruences_are_compatible_with_the_action() {
        for name in ["example3", "example4-fold", "example6", "example8"] {
            let aut = parse_automaton(corpus_source(name).unwrap()).unwrap();
            let n = aut.state_count();
            for p in 0..n {
                for q in (p + 1)..n {
                    let mut congruence = principal_congruence(&aut, p, q);
                    for s in 0..n {
                        for t in 0..n {
                            if congruence.same(s, t) {
                                for x in 0..aut.letter_count() {
                                    assert!(
                                        congruence.same(aut.step(s, x), aut.step(t, x)),
                                        "{name}: ({s},{t}) breaks compatibility under letter {x}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_state_automata_are_always_simple() {
        let aut = crate::automaton::Automaton::new(
            vec!["a".into()],
            vec![vec![1, 0]],
            2,
        )
        .unwrap();
        assert!(is_simple(&aut).is_simple());
    }
}
