//! Bounded enumeration of the transition monoid.
//!
//! BFS over compositions with the letter actions, deduplicating by the
//! transformation array. Witness words are reconstructed from parent links;
//! BFS by length with letters in declaration order makes each witness the
//! lexicographically least among the shortest ones.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::automaton::{Automaton, Transformation, Word};

/// The enumerated monoid: `elements[0]` is the identity (empty word).
#[derive(Debug, Clone)]
pub struct MonoidEnumeration {
    elements: Vec<Transformation>,
    /// `(parent element index, letter)` for every element except the identity.
    parents: Vec<Option<(usize, usize)>>,
    /// True when the cap was hit before the monoid was closed.
    pub truncated: bool,
}

impl MonoidEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    /// Shortest witness word for the element at `idx`.
    pub fn witness(&self, idx: usize) -> Word {
        let mut letters = Vec::new();
        let mut at = idx;
        while let Some((parent, letter)) = self.parents[at] {
            letters.push(letter);
            at = parent;
        }
        letters.reverse();
        Word(letters)
    }

    pub fn iter_with_witness(&self) -> impl Iterator<Item = (&Transformation, Word)> + '_ {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t, self.witness(i)))
    }
}

/// BFS the monoid, calling `visit` on each new element (including the
/// identity). `visit` may break out early with a result.
pub fn enumerate_monoid_with<B>(
    aut: &Automaton,
    cap: usize,
    mut visit: impl FnMut(&MonoidEnumeration, usize) -> ControlFlow<B>,
) -> (MonoidEnumeration, Option<B>) {
    assert!(cap > 0, "cap must be positive");
    let identity = Transformation::identity(aut.state_count());
    let mut seen: HashMap<Transformation, usize> = HashMap::new();
    seen.insert(identity.clone(), 0);
    let mut monoid = MonoidEnumeration {
        elements: vec![identity],
        parents: vec![None],
        truncated: false,
    };
    if let ControlFlow::Break(b) = visit(&monoid, 0) {
        return (monoid, Some(b));
    }
    let mut at = 0usize;
    while at < monoid.elements.len() {
        for letter in 0..aut.letter_count() {
            let child = aut.extend_transformation(&monoid.elements[at], letter);
            if seen.contains_key(&child) {
                continue;
            }
            if monoid.elements.len() >= cap {
                monoid.truncated = true;
                return (monoid, None);
            }
            let idx = monoid.elements.len();
            seen.insert(child.clone(), idx);
            monoid.elements.push(child);
            monoid.parents.push(Some((at, letter)));
            if let ControlFlow::Break(b) = visit(&monoid, idx) {
                return (monoid, Some(b));
            }
        }
        at += 1;
    }
    (monoid, None)
}

/// All distinct transformations reachable from the identity, or a truncated
/// prefix when the monoid is larger than `cap`.
pub fn enumerate_monoid(aut: &Automaton, cap: usize) -> MonoidEnumeration {
    enumerate_monoid_with::<()>(aut, cap, |_, _| ControlFlow::Continue(())).0
}

/// Result of the isolated-rank-2 search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank2Isolated {
    /// A rank-2 word together with a state whose image no other state shares.
    Found { word: Word, state: usize },
    /// The full monoid was enumerated and no such element exists.
    None,
    /// Enumeration was truncated at the cap before an answer was reached.
    Unknown,
}

impl Rank2Isolated {
    pub fn found(&self) -> Option<(&Word, usize)> {
        match self {
            Rank2Isolated::Found { word, state } => Some((word, *state)),
            _ => None,
        }
    }
}

/// Search the monoid for a rank-2 element with an isolated preimage class.
///
/// The witness word is the shortest one (lexicographically least tie-break)
/// because the underlying enumeration is breadth first.
pub fn rank2_isolated_witness(aut: &Automaton, cap: usize) -> Rank2Isolated {
    let (monoid, hit) = enumerate_monoid_with(aut, cap, |monoid, idx| {
        let t = &monoid.elements()[idx];
        if t.rank() == 2 {
            if let Some(state) = t.isolated_state() {
                return ControlFlow::Break((monoid.witness(idx), state));
            }
        }
        ControlFlow::Continue(())
    });
    match hit {
        Some((word, state)) => Rank2Isolated::Found { word, state },
        None if monoid.truncated => Rank2Isolated::Unknown,
        None => Rank2Isolated::None,
    }
}
