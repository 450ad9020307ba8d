//! The contracting and weakly contracting properties of circular automata,
//! decided by BFS on the pair automaton.
//!
//! Distances are taken in the canonical relabeling of the circular structure.
//! A pair is weakly contracting when the gcd, over all reachable unmerged
//! image pairs, of `gcd(d(image), n)` equals 1. The contracting property asks
//! that every pair at distance above 1 reach a strictly smaller nonzero
//! distance; reaching distance exactly 1 is an equivalent criterion and both
//! are computed and compared on every input.

use std::collections::VecDeque;

use crate::automaton::{Automaton, CircularStructure};

/// Reachable unmerged images of one state pair, with their distances.
#[derive(Debug, Clone)]
pub struct PairOrbit {
    pub source: (usize, usize),
    /// Unordered pairs `(p·u, q·u)` with distinct components, `p < q`.
    pub pairs: Vec<(usize, usize)>,
    /// `d(pair)` for each reachable pair, parallel to `pairs`.
    pub distances: Vec<usize>,
}

impl PairOrbit {
    /// gcd over the orbit of `gcd(d(pair), n)`; 0 for an empty orbit.
    pub fn distance_gcd(&self, n: usize) -> usize {
        self.distances
            .iter()
            .fold(0usize, |acc, &d| gcd(acc, gcd(d, n)))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// BFS the unordered pair automaton from `(p, q)`, dropping merged images.
pub fn pair_orbit(aut: &Automaton, cs: &CircularStructure, p: usize, q: usize) -> PairOrbit {
    assert!(p != q, "pair orbit needs a distinct pair");
    let n = aut.state_count();
    let normalize = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let source = normalize(p, q);
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([source]);
    seen[source.0 * n + source.1] = true;
    let mut pairs = Vec::new();
    let mut distances = Vec::new();
    while let Some((a, b)) = queue.pop_front() {
        pairs.push((a, b));
        distances.push(cs.distance(a, b));
        for letter in 0..aut.letter_count() {
            let (ia, ib) = (aut.step(a, letter), aut.step(b, letter));
            if ia == ib {
                continue;
            }
            let next = normalize(ia, ib);
            if !seen[next.0 * n + next.1] {
                seen[next.0 * n + next.1] = true;
                queue.push_back(next);
            }
        }
    }
    PairOrbit {
        source,
        pairs,
        distances,
    }
}

/// Outcome of the weak-contraction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeaklyContracting {
    Yes,
    /// The offending pair and the gcd its orbit achieves (always > 1).
    No { witness: (usize, usize), gcd: usize },
}

impl WeaklyContracting {
    pub fn holds(&self) -> bool {
        matches!(self, WeaklyContracting::Yes)
    }
}

/// Every distinct pair must have orbit gcd 1.
pub fn is_weakly_contracting(aut: &Automaton, cs: &CircularStructure) -> WeaklyContracting {
    let n = aut.state_count();
    for p in 0..n {
        for q in (p + 1)..n {
            let orbit = pair_orbit(aut, cs, p, q);
            let g = orbit.distance_gcd(n);
            if g != 1 {
                return WeaklyContracting::No {
                    witness: (p, q),
                    gcd: g,
                };
            }
        }
    }
    WeaklyContracting::Yes
}

/// Outcome of the contraction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contracting {
    Yes,
    /// A pair at distance > 1 that never reaches a smaller nonzero distance.
    No { witness: (usize, usize) },
}

impl Contracting {
    pub fn holds(&self) -> bool {
        matches!(self, Contracting::Yes)
    }
}

/// Every pair at distance > 1 must reach a strictly smaller nonzero distance.
///
/// The equivalent reach-distance-1 criterion is computed alongside and the
/// two are asserted to agree pair by pair.
pub fn is_contracting(aut: &Automaton, cs: &CircularStructure) -> Contracting {
    let n = aut.state_count();
    for p in 0..n {
        for q in (p + 1)..n {
            let d = cs.distance(p, q);
            if d <= 1 {
                continue;
            }
            let orbit = pair_orbit(aut, cs, p, q);
            let strict_decrease = orbit.distances.iter().any(|&e| e >= 1 && e < d);
            let reaches_one = orbit.distances.contains(&1);
            assert_eq!(
                strict_decrease, reaches_one,
                "contracting criteria disagree on pair ({p},{q})"
            );
            if !strict_decrease {
                return Contracting::No { witness: (p, q) };
            }
        }
    }
    Contracting::Yes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{corpus_source, generate, FamilySpec};
    use crate::format::parse_automaton;

    fn circular(aut: &Automaton) -> CircularStructure {
        aut.find_circular_structure().expect("circular input")
    }

    #[test]
    fn example6_orbit_of_q1_q4_sits_at_distance_3() {
        let aut = parse_automaton(corpus_source("example6").unwrap()).unwrap();
        let cs = circular(&aut);
        let orbit = pair_orbit(&aut, &cs, 0, 3);
        assert!(!orbit.distances.is_empty());
        assert!(orbit.distances.iter().all(|&d| d == 3));
    }

    #[test]
    fn example6_fails_weak_contraction_on_q1_q4_with_gcd_3() {
        let aut = parse_automaton(corpus_source("example6").unwrap()).unwrap();
        let cs = circular(&aut);
        assert_eq!(
            is_weakly_contracting(&aut, &cs),
            WeaklyContracting::No {
                witness: (0, 3),
                gcd: 3
            }
        );
    }

    #[test]
    fn example8_distance_2_pair_reaches_distance_3() {
        let aut = parse_automaton(corpus_source("example8").unwrap()).unwrap();
        let cs = circular(&aut);
        let orbit = pair_orbit(&aut, &cs, 3, 5); // {q4, q6}
        assert_eq!(cs.distance(3, 5), 2);
        assert!(orbit.distances.contains(&3));
    }

    #[test]
    fn example8_is_weakly_contracting_but_not_contracting() {
        let aut = parse_automaton(corpus_source("example8").unwrap()).unwrap();
        let cs = circular(&aut);
        assert!(is_weakly_contracting(&aut, &cs).holds());
        assert!(!is_contracting(&aut, &cs).holds());
    }

    #[test]
    fn two_state_circular_orbit_distances_are_one() {
        let aut = crate::automaton::Automaton::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 0], vec![0, 0]],
            2,
        )
        .unwrap();
        let cs = circular(&aut);
        let orbit = pair_orbit(&aut, &cs, 0, 1);
        assert!(orbit.distances.iter().all(|&d| d == 1));
        assert!(is_contracting(&aut, &cs).holds());
    }

    #[test]
    fn cerny_automata_are_contracting() {
        for n in 3..=8 {
            let aut = generate(&FamilySpec::Cerny { n }).unwrap();
            let cs = circular(&aut);
            assert!(is_contracting(&aut, &cs).holds(), "n = {n}");
        }
    }

    #[test]
    fn tail_family_is_contracting() {
        for n in 5..=8 {
            let aut = generate(&FamilySpec::Tail { n }).unwrap();
            let cs = circular(&aut);
            assert!(is_contracting(&aut, &cs).holds(), "n = {n}");
        }
    }

    #[test]
    fn prime_state_synchronizing_circular_automata_are_weakly_contracting() {
        for n in [5usize, 7] {
            let aut = generate(&FamilySpec::Cerny { n }).unwrap();
            let cs = circular(&aut);
            assert!(is_weakly_contracting(&aut, &cs).holds(), "n = {n}");
        }
    }

    #[test]
    fn orbit_is_symmetric_in_its_source() {
        let aut = parse_automaton(corpus_source("example8").unwrap()).unwrap();
        let cs = circular(&aut);
        let fwd = pair_orbit(&aut, &cs, 1, 6);
        let rev = pair_orbit(&aut, &cs, 6, 1);
        assert_eq!(fwd.pairs, rev.pairs);
        assert_eq!(fwd.distances, rev.distances);
    }
}
