//! Independent oracles for cross-checking the main implementation paths.
//!
//! Each oracle deliberately takes a different route than the operation it
//! certifies: the brute-force congruence closure works on a full relation
//! matrix instead of union-find, the circulant rank eliminates the explicit
//! n×n matrix instead of taking a polynomial gcd, and the characteristic
//! polynomial comes from the Faddeev–LeVerrier recurrence instead of the
//! closed formula. The subset-BFS reset length is the primary source for
//! derived shortest-reset values.

use num::traits::{One, Zero};

use crate::automaton::{Automaton, ResetLength, StateSpaceTooLarge};
use crate::poly::{Rational, RationalPolynomial};
use crate::representation::RationalMatrix;

/// Shortest reset length by subset BFS (the minting oracle for derived
/// reset-length goldens).
pub fn reset_bfs(aut: &Automaton) -> Result<ResetLength, StateSpaceTooLarge> {
    aut.shortest_reset_length(None)
}

/// Brute-force congruence closure over an explicit relation matrix:
/// start from the given pairs, close under the letter action, reflexivity,
/// symmetry, and transitivity until fixpoint, rescanning everything each
/// round. Returns sorted blocks of 0-based states.
pub fn congruence_closure_bruteforce(aut: &Automaton, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = aut.state_count();
    let mut related = vec![false; n * n];
    for q in 0..n {
        related[q * n + q] = true;
    }
    for &(p, q) in pairs {
        related[p * n + q] = true;
        related[q * n + p] = true;
    }
    loop {
        let mut changed = false;
        for s in 0..n {
            for t in 0..n {
                if !related[s * n + t] {
                    continue;
                }
                for x in 0..aut.letter_count() {
                    let (is, it) = (aut.step(s, x), aut.step(t, x));
                    if !related[is * n + it] {
                        related[is * n + it] = true;
                        related[it * n + is] = true;
                        changed = true;
                    }
                }
            }
        }
        // transitive closure, one full pass
        for mid in 0..n {
            for s in 0..n {
                if !related[s * n + mid] {
                    continue;
                }
                for t in 0..n {
                    if related[mid * n + t] && !related[s * n + t] {
                        related[s * n + t] = true;
                        related[t * n + s] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for s in 0..n {
        if assigned[s] {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&t| related[s * n + t]).collect();
        for &t in &block {
            assigned[t] = true;
        }
        blocks.push(block);
    }
    blocks.sort();
    blocks
}

/// Rank of the explicit n×n circulant with first column
/// `(v_1, …, v_{n−1}, −Σv_i)`, by rational Gaussian elimination.
pub fn circulant_rank_elimination(coords: &[Rational]) -> usize {
    let n = coords.len() + 1;
    let mut first_column: Vec<Rational> = coords.to_vec();
    let total: Rational = coords.iter().fold(Rational::zero(), |acc, c| acc + c);
    first_column.push(-total);
    // column j is the first column rotated down by j
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| first_column[(i + n - j) % n].clone())
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..n {
                let sub = &rows[rank][c] * &factor;
                rows[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an arbitrary exact rational matrix given as rows.
pub fn matrix_rank(rows_in: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = rows_in.to_vec();
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for col in 0..width {
        let Some(pivot_row) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in (rank + 1)..height {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..width {
                let sub = &rows[rank][c] * &factor;
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

/// Monic characteristic polynomial `det(λI − M)` by Faddeev–LeVerrier.
pub fn char_poly(matrix: &RationalMatrix) -> RationalPolynomial {
    let dim = matrix.dim();
    let mut coeffs = vec![Rational::zero(); dim + 1];
    coeffs[dim] = Rational::one();
    let mut auxiliary = RationalMatrix::zero(dim);
    for step in 1..=dim {
        // M_k = A · (M_{k-1} + c_{k-1} I); c_k = −tr(M_k)/k
        let mut shifted = auxiliary.clone();
        if step > 1 {
            let c = coeffs[dim - step + 1].clone();
            for i in 0..dim {
                let cur = shifted.get(i, i) + &c;
                shifted.set(i, i, cur);
            }
            auxiliary = matrix.mul(&shifted);
        } else {
            auxiliary = matrix.clone();
        }
        let c = -(auxiliary.trace() / Rational::from_integer(step.into()));
        coeffs[dim - step] = c;
    }
    RationalPolynomial::from_coeffs(coeffs)
}

/// `(n−1)-minor` of an n×n rational matrix: determinant after deleting
/// `row` and `col`. Used by the circulant minor shift-symmetry checks.
pub fn minor(rows: &[Vec<Rational>], row: usize, col: usize) -> Rational {
    let n = rows.len();
    let sub: Vec<Vec<Rational>> = (0..n)
        .filter(|&r| r != row)
        .map(|r| {
            (0..n)
                .filter(|&c| c != col)
                .map(|c| rows[r][c].clone())
                .collect()
        })
        .collect();
    determinant(&sub)
}

/// Exact determinant by fraction-free-ish rational elimination.
pub fn determinant(rows_in: &[Vec<Rational>]) -> Rational {
    let n = rows_in.len();
    if n == 0 {
        return Rational::one();
    }
    let mut rows = rows_in.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != col {
            rows.swap(col, pivot_row);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= pivot.clone();
        for r in (col + 1)..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..n {
                let sub = &rows[col][c] * &factor;
                rows[r][c] -= sub;
            }
        }
    }
    det
}

/// The explicit circulant rows for the coordinates, shared by the minor
/// symmetry tests: entry (i, j) is `w[(i − j) mod n]` for the first column
/// `w = (v_1, …, v_{n−1}, −Σv_i)`.
pub fn circulant_rows(coords: &[Rational]) -> Vec<Vec<Rational>> {
    let n = coords.len() + 1;
    let mut w: Vec<Rational> = coords.to_vec();
    let total: Rational = coords.iter().fold(Rational::zero(), |acc, c| acc + c);
    w.push(-total);
    (0..n)
        .map(|i| (0..n).map(|j| w[(i + n - j) % n].clone()).collect())
        .collect()
}
