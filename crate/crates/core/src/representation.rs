//! The synchronized representation on the deficiency space ω⊥ and the exact
//! irreducibility decision.
//!
//! Vectors in ω⊥ carry coordinates over the difference basis {q_i − q_1},
//! i = 2..n, as columns; a word acts on the left through its matrix. With
//! that column convention the matrix of the circulating letter is the one
//! with −1 across the first row and an identity block below, and composition
//! is anti-homomorphic in word order: `M(uv) = M(v)·M(u)`.
//!
//! Irreducibility over ℂ is decided by Burnside's criterion: the span of all
//! word matrices is the full (n−1)×(n−1) algebra exactly when the
//! representation is irreducible. All generators are integer matrices, so the
//! dimension over ℚ — computed by fraction-free integer elimination — equals
//! the dimension over ℂ.

use std::collections::VecDeque;

use num::traits::{One, Signed, Zero};
use num::BigInt;
use thiserror::Error;

use crate::automaton::{Automaton, Transformation, Word};
use crate::poly::Rational;

/// An exact (n−1)×(n−1) rational matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(dim: usize) -> Self {
        RationalMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut matrix = RationalMatrix::zero(dim);
        for i in 0..dim {
            matrix.entries[i * dim + i] = Rational::one();
        }
        matrix
    }

    pub fn from_flat_integers(dim: usize, flat: &[i64]) -> Self {
        assert_eq!(flat.len(), dim * dim);
        RationalMatrix {
            dim,
            entries: flat
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut out = RationalMatrix::zero(dim);
        for i in 0..dim {
            for l in 0..dim {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Apply to a column vector of ω⊥ coordinates.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, value) in v.iter().enumerate() {
                    let entry = self.get(i, j);
                    if !entry.is_zero() {
                        acc += entry * value;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim)
            .map(|i| self.get(i, i).clone())
            .fold(Rational::zero(), |acc, d| acc + d)
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        RationalMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Flattened integer matrix of a transformation on ω⊥ (entries in {−1,0,1}):
/// column j−1 is `ind(q_j·t) − ind(q_1·t)` where `ind(q_1)` is the zero
/// vector and `ind(q_m)`, m ≥ 2, the unit vector at position m−1.
fn transformation_matrix_flat(n: usize, t: &Transformation) -> Vec<i64> {
    let dim = n - 1;
    let mut flat = vec![0i64; dim * dim];
    let base = t.apply(0);
    for s in 1..n {
        let col = s - 1;
        let target = t.apply(s);
        if target > 0 {
            flat[(target - 1) * dim + col] += 1;
        }
        if base > 0 {
            flat[(base - 1) * dim + col] -= 1;
        }
    }
    flat
}

/// Matrix of a transformation's action on ω⊥.
pub fn transformation_matrix(aut: &Automaton, t: &Transformation) -> RationalMatrix {
    let n = aut.state_count();
    RationalMatrix::from_flat_integers(n - 1, &transformation_matrix_flat(n, t))
}

/// Matrix of one letter's action on ω⊥.
pub fn letter_matrix(aut: &Automaton, letter: usize) -> RationalMatrix {
    transformation_matrix(aut, &aut.letter_transformation(letter))
}

/// Matrix of a word's action: the product of letter matrices in the order
/// fixed by the right action, `M(x_1 … x_m) = M(x_m) ⋯ M(x_1)`.
///
/// The result is the zero matrix exactly when the word has rank 1.
pub fn word_matrix(aut: &Automaton, word: &Word) -> RationalMatrix {
    let dim = aut.state_count() - 1;
    word.0.iter().fold(RationalMatrix::identity(dim), |acc, &x| {
        letter_matrix(aut, x).mul(&acc)
    })
}

/// The matrix of the canonical circulating letter in dimension n−1: all −1
/// across the first row, an (n−2)-identity below, zeros elsewhere.
pub fn circulating_matrix(n: usize) -> RationalMatrix {
    assert!(n >= 2);
    let dim = n - 1;
    let mut matrix = RationalMatrix::zero(dim);
    for col in 0..dim {
        matrix.set(0, col, -Rational::one());
        if col + 1 < dim {
            matrix.set(col + 1, col, Rational::one());
        }
    }
    matrix
}

/// A vector of ℂQ tagged with its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientVector {
    /// Length-n coordinates over the state basis of ℂQ; membership in ω⊥
    /// means the coordinates sum to zero.
    States(Vec<Rational>),
    /// Length-(n−1) coordinates over the difference basis {q_i − q_1}.
    Differences(Vec<Rational>),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("state-basis coordinates must sum to zero (the vector is not in the deficiency space)")]
pub struct NotInDeficiencySpace;

impl AmbientVector {
    /// Exact conversion to the other basis.
    ///
    /// The coordinate at state position j (j ≥ 2) is zero exactly when the
    /// difference-basis coordinate at position j−1 is zero.
    pub fn convert(&self) -> Result<AmbientVector, NotInDeficiencySpace> {
        match self {
            AmbientVector::Differences(v) => {
                let sum: Rational = v.iter().fold(Rational::zero(), |acc, c| acc + c);
                let mut coords = Vec::with_capacity(v.len() + 1);
                coords.push(-sum);
                coords.extend(v.iter().cloned());
                Ok(AmbientVector::States(coords))
            }
            AmbientVector::States(c) => {
                let sum: Rational = c.iter().fold(Rational::zero(), |acc, v| acc + v);
                if !sum.is_zero() {
                    return Err(NotInDeficiencySpace);
                }
                Ok(AmbientVector::Differences(c[1..].to_vec()))
            }
        }
    }
}

/// Fraction-free integer echelon used as the independence certificate.
struct IntEchelon {
    width: usize,
    /// Rows with strictly increasing pivot columns, primitive, pivot > 0.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    fn new(width: usize) -> Self {
        IntEchelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Reduce against the current rows; insert when independent.
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let a = row[p].clone();
            let b = std::mem::replace(&mut v[p], BigInt::zero());
            for i in 0..self.width {
                if i == p {
                    continue;
                }
                let scaled = &v[i] * &a - &row[i] * &b;
                v[i] = scaled;
            }
        }
        let Some(pivot) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let mut content = BigInt::zero();
        for e in &v {
            content = num::integer::gcd(content, e.abs());
        }
        if v[pivot].is_negative() {
            content = -content;
        }
        for e in &mut v {
            *e = &*e / &content;
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        true
    }
}

/// Linearly independent word matrices spanning the algebra generated by the
/// representation: seeded with the identity and the letter matrices, closed
/// under left multiplication by letters (BFS by word length, letters in
/// declaration order).
pub struct AlgebraBasis {
    pub matrices: Vec<RationalMatrix>,
    /// Transformations whose matrices form the basis, in insertion order.
    pub witnesses: Vec<Transformation>,
}

impl AlgebraBasis {
    pub fn dimension(&self) -> usize {
        self.matrices.len()
    }
}

/// Compute the algebra basis by the Burnside closure.
pub fn algebra_basis(aut: &Automaton) -> AlgebraBasis {
    let n = aut.state_count();
    let dim = n - 1;
    let mut echelon = IntEchelon::new(dim * dim);
    let mut basis = AlgebraBasis {
        matrices: Vec::new(),
        witnesses: Vec::new(),
    };
    let mut queue: VecDeque<Transformation> = VecDeque::new();
    let offer = |t: Transformation,
                     echelon: &mut IntEchelon,
                     basis: &mut AlgebraBasis,
                     queue: &mut VecDeque<Transformation>| {
        let flat = transformation_matrix_flat(n, &t);
        let big: Vec<BigInt> = flat.iter().map(|&v| BigInt::from(v)).collect();
        if echelon.insert(big) {
            basis.matrices.push(RationalMatrix::from_flat_integers(dim, &flat));
            basis.witnesses.push(t.clone());
            queue.push_back(t);
        }
    };
    offer(
        Transformation::identity(n),
        &mut echelon,
        &mut basis,
        &mut queue,
    );
    for x in 0..aut.letter_count() {
        offer(
            aut.letter_transformation(x),
            &mut echelon,
            &mut basis,
            &mut queue,
        );
    }
    while let Some(t) = queue.pop_front() {
        for x in 0..aut.letter_count() {
            offer(
                aut.extend_transformation(&t, x),
                &mut echelon,
                &mut basis,
                &mut queue,
            );
        }
    }
    basis
}

/// Exact dimension of the matrix algebra generated by the representation.
pub fn algebra_dimension(aut: &Automaton) -> usize {
    algebra_basis(aut).dimension()
}

/// Burnside: irreducible over ℂ exactly when the algebra is all of
/// 𝕄_{n−1}; dimensions over ℚ and ℂ agree because all generators are
/// rational.
pub fn is_c_irreducible(aut: &Automaton) -> bool {
    let dim = aut.state_count() - 1;
    algebra_dimension(aut) == dim * dim
}

/// Irreducibility with a fast certificate: run the same closure modulo a
/// 61-bit prime first. Full dimension mod p forces full dimension over ℚ
/// (a primitive integer dependency would survive reduction mod p), so that
/// branch is exact; anything else falls back to the exact closure.
pub fn is_c_irreducible_fast(aut: &Automaton) -> bool {
    let dim = aut.state_count() - 1;
    if modp::closure_dimension(aut) == dim * dim {
        return true;
    }
    is_c_irreducible(aut)
}

/// The Burnside closure carried out in GF(p), p = 2^61 − 1.
pub(crate) mod modp {
    use std::collections::VecDeque;

    use crate::automaton::{Automaton, Transformation};

    pub const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    fn inv(a: u64) -> u64 {
        // Fermat: a^(p-2) mod p
        let mut base = a;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    }

    struct Echelon {
        width: usize,
        rows: Vec<Vec<u64>>,
        pivots: Vec<usize>,
    }

    impl Echelon {
        fn insert(&mut self, mut v: Vec<u64>) -> bool {
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if v[p] != 0 {
                    let factor = v[p];
                    for i in 0..self.width {
                        v[i] = sub(v[i], mul(factor, row[i]));
                    }
                }
            }
            let Some(pivot) = v.iter().position(|&e| e != 0) else {
                return false;
            };
            let scale = inv(v[pivot]);
            for e in &mut v {
                *e = mul(*e, scale);
            }
            let at = self.pivots.partition_point(|&p| p < pivot);
            self.rows.insert(at, v);
            self.pivots.insert(at, pivot);
            true
        }
    }

    /// Dimension of the closure mod p; a full answer certifies exact
    /// irreducibility, anything smaller is inconclusive.
    pub(crate) fn closure_dimension(aut: &Automaton) -> usize {
        let n = aut.state_count();
        let dim = n - 1;
        let mut echelon = Echelon {
            width: dim * dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        let mut queue: VecDeque<Transformation> = VecDeque::new();
        let mut count = 0usize;
        let offer =
            |t: Transformation, echelon: &mut Echelon, queue: &mut VecDeque<Transformation>, count: &mut usize| {
                let flat = super::transformation_matrix_flat(n, &t);
                let v: Vec<u64> = flat
                    .iter()
                    .map(|&x| if x >= 0 { x as u64 } else { P - ((-x) as u64) })
                    .collect();
                if echelon.insert(v) {
                    *count += 1;
                    queue.push_back(t);
                }
            };
        offer(Transformation::identity(n), &mut echelon, &mut queue, &mut count);
        for x in 0..aut.letter_count() {
            offer(aut.letter_transformation(x), &mut echelon, &mut queue, &mut count);
        }
        while let Some(t) = queue.pop_front() {
            for x in 0..aut.letter_count() {
                offer(aut.extend_transformation(&t, x), &mut echelon, &mut queue, &mut count);
            }
        }
        count
    }
}

/// Rank-bound audit against the invariant-line theorem: with an invariant
/// line present, every word of deficient rank must have rank at most n/2.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RankBoundAudit {
    /// Largest rank among words of rank < n, if any word is deficient.
    pub max_deficient_rank: Option<usize>,
    /// ⌊n/2⌋.
    pub bound: usize,
    /// Whether an invariant line exists, making the bound binding.
    pub applicable: bool,
    /// True would falsify the theorem and therefore signals a bug.
    pub violation: bool,
}

/// The set of ranks of monoid elements equals the set of reachable image
/// sizes of `Q`, so the audit enumerates image sets (exact, no cap).
pub fn rank_bound_audit(aut: &Automaton, invariant_line_exists: bool) -> RankBoundAudit {
    let n = aut.state_count();
    let ranks = aut
        .reachable_ranks()
        .expect("rank audit within the subset-search guard");
    let max_deficient_rank = ranks.iter().copied().filter(|&r| r < n).max();
    let bound = n / 2;
    let violation = invariant_line_exists && max_deficient_rank.is_some_and(|r| r > bound);
    RankBoundAudit {
        max_deficient_rank,
        bound,
        applicable: invariant_line_exists,
        violation,
    }
}

/// Rystov's precondition: simple and weakly defective (then irreducibility
/// is forced).
pub fn rystov_precondition(aut: &Automaton) -> bool {
    aut.is_weakly_defective() && crate::congruence::is_simple(aut).is_simple()
}

/// Which sufficient irreducibility condition applies, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SufficiencyVerdict {
    Rystov,
    ContractingIsolatedRank2,
    None,
    /// Monoid enumeration was truncated before the rank-2 search finished.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SufficiencyCheck {
    pub rystov_applies: bool,
    pub contracting_isolated_applies: bool,
    pub verdict: SufficiencyVerdict,
    /// Must be true whenever either precondition holds.
    pub c_irreducible: bool,
}

impl SufficiencyCheck {
    /// No counterexample tolerated: a satisfied precondition forces
    /// irreducibility.
    pub fn consistent(&self) -> bool {
        (!self.rystov_applies && !self.contracting_isolated_applies) || self.c_irreducible
    }
}

/// Assemble the sufficiency verdict from the already-computed pieces.
pub fn sufficiency_from_parts(
    rystov_applies: bool,
    contracting: Option<bool>,
    rank2_isolated: &crate::monoid::Rank2Isolated,
    c_irreducible: bool,
) -> SufficiencyCheck {
    use crate::monoid::Rank2Isolated;
    let contracting = contracting.unwrap_or(false);
    let contracting_isolated_applies =
        contracting && matches!(rank2_isolated, Rank2Isolated::Found { .. });
    let verdict = if rystov_applies {
        SufficiencyVerdict::Rystov
    } else if contracting_isolated_applies {
        SufficiencyVerdict::ContractingIsolatedRank2
    } else if contracting && matches!(rank2_isolated, Rank2Isolated::Unknown) {
        SufficiencyVerdict::Unknown
    } else {
        SufficiencyVerdict::None
    };
    SufficiencyCheck {
        rystov_applies,
        contracting_isolated_applies,
        verdict,
        c_irreducible,
    }
}

/// Full check from scratch (the report path precomputes the pieces instead).
pub fn theorem_sufficiency_check(aut: &Automaton, monoid_cap: usize) -> SufficiencyCheck {
    let rystov = rystov_precondition(aut);
    let contracting = aut
        .find_circular_structure()
        .map(|cs| crate::contraction::is_contracting(aut, &cs).holds());
    let rank2 = crate::monoid::rank2_isolated_witness(aut, monoid_cap);
    sufficiency_from_parts(rystov, contracting, &rank2, is_c_irreducible(aut))
}
