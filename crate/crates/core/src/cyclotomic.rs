//! Exact arithmetic in the cyclotomic fields ℚ(ζ_n), circulant ranks, and
//! the eigenstructure of the circulating-letter matrix.
//!
//! Elements of ℚ(ζ_n) are residue polynomials modulo the n-th cyclotomic
//! polynomial Φ_n (a field; reducing modulo x^n − 1 instead would introduce
//! zero divisors). Equality is coefficient equality, so every zero test in
//! the invariant-line search is exact.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num::traits::{One, Signed, Zero};
use num::BigInt;

use crate::automaton::{Automaton, CircularStructure};
use crate::poly::{Rational, RationalPolynomial};
use crate::representation::{letter_matrix, RationalMatrix};

/// The n-th cyclotomic polynomial, monic with integer coefficients.
///
/// Computed by dividing x^n − 1 by Φ_d over every proper divisor d of n;
/// results are memoized (same input always yields the identical value).
pub fn cyclotomic_polynomial(n: usize) -> RationalPolynomial {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    static CACHE: OnceLock<Mutex<BTreeMap<usize, RationalPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut quotient = RationalPolynomial::x_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = quotient.div_rem(&cyclotomic_polynomial(d));
            debug_assert!(r.is_zero());
            quotient = q;
        }
    }
    cache.lock().unwrap().insert(n, quotient.clone());
    quotient
}

/// An element of ℚ(ζ_n): a residue polynomial of degree < deg Φ_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    order: usize,
    poly: RationalPolynomial,
}

impl CyclotomicNumber {
    pub fn zero(order: usize) -> Self {
        CyclotomicNumber {
            order,
            poly: RationalPolynomial::zero(),
        }
    }

    pub fn one(order: usize) -> Self {
        CyclotomicNumber {
            order,
            poly: RationalPolynomial::one(),
        }
    }

    pub fn from_rational(order: usize, value: Rational) -> Self {
        CyclotomicNumber::from_poly(order, RationalPolynomial::constant(value))
    }

    /// Reduce an arbitrary polynomial in ζ_n modulo Φ_n.
    pub fn from_poly(order: usize, poly: RationalPolynomial) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let (_, residue) = poly.div_rem(&modulus);
        CyclotomicNumber {
            order,
            poly: residue,
        }
    }

    /// ζ_n^k.
    pub fn zeta_pow(order: usize, k: usize) -> Self {
        CyclotomicNumber::from_poly(
            order,
            RationalPolynomial::monomial(Rational::one(), k % order),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn residue(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `Some(r)` when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.poly.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    fn merge_order(&self, other: &Self) -> usize {
        assert_eq!(
            self.order, other.order,
            "cyclotomic arithmetic needs a shared order"
        );
        self.order
    }

    pub fn add(&self, other: &Self) -> Self {
        CyclotomicNumber {
            order: self.merge_order(other),
            poly: self.poly.add(&other.poly),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CyclotomicNumber {
            order: self.merge_order(other),
            poly: self.poly.sub(&other.poly),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            poly: self.poly.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CyclotomicNumber::from_poly(self.merge_order(other), self.poly.mul(&other.poly))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            poly: self.poly.scale(c),
        }
    }

    /// Multiplicative inverse; Φ_n is irreducible so every nonzero residue
    /// is a unit. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero cyclotomic number");
        let modulus = cyclotomic_polynomial(self.order);
        let (g, s, _) = self.poly.extended_gcd(&modulus);
        debug_assert_eq!(g.degree(), Some(0));
        let g0 = g.coeff(0);
        CyclotomicNumber::from_poly(self.order, s.scale(&(Rational::one() / g0)))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Render as a polynomial string in `z` with the order annotation.
    pub fn render(&self) -> String {
        format!("{} (order {})", self.poly.render("z"), self.order)
    }
}

/// A vector over ℚ(ζ_n) with a shared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicVector {
    order: usize,
    components: Vec<CyclotomicNumber>,
}

impl CyclotomicVector {
    pub fn new(order: usize, components: Vec<CyclotomicNumber>) -> Self {
        assert!(components.iter().all(|c| c.order() == order));
        CyclotomicVector { order, components }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[CyclotomicNumber] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(CyclotomicNumber::is_zero)
    }

    /// Apply an exact rational matrix on the left (column convention).
    pub fn apply_matrix(&self, matrix: &RationalMatrix) -> CyclotomicVector {
        assert_eq!(matrix.dim(), self.len());
        let components = (0..matrix.dim())
            .map(|i| {
                let mut acc = CyclotomicNumber::zero(self.order);
                for (j, component) in self.components.iter().enumerate() {
                    let entry = matrix.get(i, j);
                    if !entry.is_zero() {
                        acc = acc.add(&component.scale(entry));
                    }
                }
                acc
            })
            .collect();
        CyclotomicVector::new(self.order, components)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> CyclotomicVector {
        CyclotomicVector::new(
            self.order,
            self.components.iter().map(|v| v.mul(c)).collect(),
        )
    }
}

/// The polynomial associated to the circulant of `(v_1, …, v_{n−1}, −Σv_i)`:
/// `f_v = v_1 + v_2·x + … + v_{n−1}·x^{n−2} − (Σv_i)·x^{n−1}`.
///
/// `f_v(1) = 0` always holds by construction.
pub fn f_polynomial(coords: &[Rational]) -> RationalPolynomial {
    let mut coeffs: Vec<Rational> = coords.to_vec();
    let total: Rational = coords.iter().fold(Rational::zero(), |acc, c| acc + c);
    coeffs.push(-total);
    RationalPolynomial::from_coeffs(coeffs)
}

/// Rank of the circulant built from the `n−1` coordinates of `v`:
/// `n − deg gcd(f_v, x^n − 1)`. The zero vector yields rank 0 by convention.
pub fn circulant_rank(coords: &[Rational]) -> usize {
    let n = coords.len() + 1;
    let f = f_polynomial(coords);
    if f.is_zero() {
        return 0;
    }
    let g = f.gcd(&RationalPolynomial::x_pow_minus_one(n));
    n - g.degree().expect("gcd with x^n - 1 is nonzero")
}

/// Characteristic polynomial of the circulating-letter matrix:
/// `(−1)^{n−1} · (1 + λ + … + λ^{n−1})`.
pub fn circulating_char_poly(n: usize) -> RationalPolynomial {
    assert!(n >= 2, "the circulating matrix needs n >= 2");
    let ones = RationalPolynomial::from_coeffs(vec![Rational::one(); n]);
    if (n - 1) % 2 == 0 {
        ones
    } else {
        ones.neg()
    }
}

/// The k-th eigenpair of the circulating-letter matrix:
/// eigenvalue ζ_n^k, eigenvector `v_k = (ζ^{(n−1)k}, ζ^{(n−2)k}, …, ζ^k)`,
/// satisfying `A·v_k = ζ_n^k·v_k` exactly.
pub fn eigenvector(n: usize, k: usize) -> (CyclotomicNumber, CyclotomicVector) {
    assert!(n >= 2, "eigenvectors need n >= 2");
    assert!(k >= 1 && k < n, "eigenvector index out of range: k = {k}");
    let value = CyclotomicNumber::zeta_pow(n, k);
    let components = (1..n)
        .map(|i| CyclotomicNumber::zeta_pow(n, ((n - i) * k) % n))
        .collect();
    (value, CyclotomicVector::new(n, components))
}

/// A monoid-invariant eigenline of the circulating-letter matrix.
#[derive(Debug, Clone)]
pub struct InvariantLine {
    /// Eigenline index: the eigenvalue is ζ_n^k.
    pub k: usize,
    pub eigenvalue: CyclotomicNumber,
    pub vector: CyclotomicVector,
    /// A primitive integer spanning vector when the line is rational.
    pub rational_vector: Option<Vec<Rational>>,
}

/// All eigenlines of the circulating letter that every letter matrix maps
/// into themselves (scalar multiple or zero), in canonical coordinates.
///
/// Every 1-dimensional invariant subspace of the synchronized representation
/// of a circular automaton is such an eigenline, so an empty result means no
/// invariant line exists at all.
pub fn invariant_lines(aut: &Automaton, cs: &CircularStructure) -> Vec<InvariantLine> {
    let n = aut.state_count();
    if n <= 2 {
        // dim 0 or 1: no proper nonzero subspace exists.
        return Vec::new();
    }
    let canonical = aut.canonicalize(cs);
    let matrices: Vec<RationalMatrix> = (0..canonical.letter_count())
        .map(|x| letter_matrix(&canonical, x))
        .collect();
    let mut lines = Vec::new();
    'next_k: for k in 1..n {
        let (value, vector) = eigenvector(n, k);
        for matrix in &matrices {
            let image = vector.apply_matrix(matrix);
            if image.is_zero() {
                continue;
            }
            // components of v_k are roots of unity, hence invertible
            let lambda = image.components()[0].div(&vector.components()[0]);
            if vector.scale(&lambda) != image {
                continue 'next_k;
            }
        }
        let rational_vector = rational_spanning_vector(&vector);
        lines.push(InvariantLine {
            k,
            eigenvalue: value,
            vector,
            rational_vector,
        });
    }
    lines
}

/// Normalize by the last component and test whether the whole line is
/// rational; returns the primitive integer spanning vector if so.
fn rational_spanning_vector(vector: &CyclotomicVector) -> Option<Vec<Rational>> {
    let last = vector.components().last()?;
    let normalized = vector.scale(&last.inv());
    let rationals: Option<Vec<Rational>> = normalized
        .components()
        .iter()
        .map(CyclotomicNumber::as_rational)
        .collect();
    let rationals = rationals?;
    // clear denominators, divide by content; last component stays positive
    let lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, r| num::integer::lcm(acc, r.denom().clone()));
    let integers: Vec<BigInt> = rationals
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let content = integers
        .iter()
        .fold(BigInt::zero(), |acc, i| num::integer::gcd(acc, i.abs()));
    debug_assert!(!content.is_zero());
    Some(
        integers
            .into_iter()
            .map(|i| Rational::from_integer(i / &content))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{corpus_source, generate, FamilySpec};
    use crate::format::parse_automaton;
    use crate::poly::integer;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(
            cyclotomic_polynomial(1),
            RationalPolynomial::from_integers(&[-1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(2),
            RationalPolynomial::from_integers(&[1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(3),
            RationalPolynomial::from_integers(&[1, 1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(8),
            RationalPolynomial::from_integers(&[1, 0, 0, 0, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            RationalPolynomial::from_integers(&[1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn product_of_cyclotomics_over_divisors_is_x_pow_minus_one() {
        for n in 1..=16 {
            let mut product = RationalPolynomial::one();
            for d in 1..=n {
                if n % d == 0 {
                    product = product.mul(&cyclotomic_polynomial(d));
                }
            }
            assert_eq!(product, RationalPolynomial::x_pow_minus_one(n), "n = {n}");
        }
    }

    #[test]
    fn zeta_arithmetic_in_order_5() {
        let z = CyclotomicNumber::zeta_pow(5, 1);
        let mut pow = CyclotomicNumber::one(5);
        for _ in 0..5 {
            pow = pow.mul(&z);
        }
        assert_eq!(pow, CyclotomicNumber::one(5));
        // 1 + z + z^2 + z^3 + z^4 = 0
        let mut sum = CyclotomicNumber::zero(5);
        for k in 0..5 {
            sum = sum.add(&CyclotomicNumber::zeta_pow(5, k));
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_of_roots_of_unity() {
        for n in 2..=12 {
            for k in 1..n {
                let z = CyclotomicNumber::zeta_pow(n, k);
                assert_eq!(z.mul(&z.inv()), CyclotomicNumber::one(n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn f_polynomial_of_e1_has_gcd_x_minus_one() {
        for n in 3..=8 {
            let mut e1 = vec![integer(0); n - 1];
            e1[0] = integer(1);
            let f = f_polynomial(&e1);
            let g = f.gcd(&RationalPolynomial::x_pow_minus_one(n));
            assert_eq!(g, RationalPolynomial::from_integers(&[-1, 1]), "n = {n}");
            assert_eq!(circulant_rank(&e1), n - 1, "n = {n}");
        }
    }

    #[test]
    fn f_polynomial_vanishes_at_one() {
        let coords = vec![integer(3), integer(-5), integer(7)];
        let f = f_polynomial(&coords);
        assert!(f.eval(&integer(1)).is_zero());
    }

    #[test]
    fn zero_vector_has_rank_zero() {
        assert_eq!(circulant_rank(&[integer(0), integer(0)]), 0);
        assert!(f_polynomial(&[integer(0), integer(0)]).is_zero());
    }

    #[test]
    fn alternating_vector_in_dim_3_has_rank_one() {
        let coords = vec![integer(1), integer(-1), integer(1)];
        let f = f_polynomial(&coords);
        let g = f.gcd(&RationalPolynomial::x_pow_minus_one(4));
        assert_eq!(g.degree(), Some(3));
        assert_eq!(circulant_rank(&coords), 1);
    }

    #[test]
    fn char_poly_for_two_states_is_minus_lambda_minus_one() {
        assert_eq!(
            circulating_char_poly(2),
            RationalPolynomial::from_integers(&[-1, -1])
        );
    }

    #[test]
    fn eigenpairs_satisfy_the_eigen_equation_exactly() {
        for n in 2..=12 {
            let a = crate::representation::circulating_matrix(n);
            for k in 1..n {
                let (value, vector) = eigenvector(n, k);
                let lhs = vector.apply_matrix(&a);
                let rhs = vector.scale(&value);
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn fold_4_has_the_rational_minus_one_eigenline() {
        let aut = generate(&FamilySpec::Fold { n: 4 }).unwrap();
        let cs = aut.find_circular_structure().unwrap();
        let lines = invariant_lines(&aut, &cs);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].k, 2);
        assert_eq!(
            lines[0].rational_vector,
            Some(vec![integer(1), integer(-1), integer(1)])
        );
    }

    #[test]
    fn example3_has_exactly_the_two_nonrational_eigenlines() {
        let aut = parse_automaton(corpus_source("example3").unwrap()).unwrap();
        let cs = aut.find_circular_structure().unwrap();
        let lines = invariant_lines(&aut, &cs);
        let ks: Vec<usize> = lines.iter().map(|l| l.k).collect();
        assert_eq!(ks, vec![1, 2]);
        assert!(lines.iter().all(|l| l.rational_vector.is_none()));
    }

    #[test]
    fn cerny_5_has_no_invariant_line() {
        let aut = generate(&FamilySpec::Cerny { n: 5 }).unwrap();
        let cs = aut.find_circular_structure().unwrap();
        assert!(invariant_lines(&aut, &cs).is_empty());
    }

    #[test]
    fn rendering_uses_z_and_order() {
        let z = CyclotomicNumber::zeta_pow(8, 2);
        assert_eq!(z.render(), "z^2 (order 8)");
    }
}
