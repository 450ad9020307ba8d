//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.
//! Degrees stay below a few dozen here, so dense storage and schoolbook
//! multiplication are the right trade.

use num::traits::{One, Zero};
use num::BigRational;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RationalPolynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalPolynomial { coeffs: vec![c] }.trimmed()
    }

    /// Build from low-first coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        RationalPolynomial { coeffs }.trimmed()
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        RationalPolynomial::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `c · x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        if c.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        RationalPolynomial { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = -Rational::one();
        coeffs[n] = Rational::one();
        RationalPolynomial { coeffs }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RationalPolynomial { coeffs }.trimmed()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - other.coeff(i)).collect();
        RationalPolynomial { coeffs }.trimmed()
    }

    pub fn neg(&self) -> Self {
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalPolynomial::zero();
        }
        RationalPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPolynomial { coeffs }.trimmed()
    }

    /// Exact Euclidean division: `self = q · divisor + r` with
    /// `deg r < deg divisor`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (RationalPolynomial::zero(), self.clone());
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dlen + 1];
        for top in (dlen - 1..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let factor = &rem[top] / lead;
            let shift = top + 1 - dlen;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let sub = d * &factor;
                rem[shift + i] -= sub;
            }
            quot[shift] = factor;
        }
        (
            RationalPolynomial { coeffs: quot }.trimmed(),
            RationalPolynomial { coeffs: rem }.trimmed(),
        )
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`,
    /// `g` the monic gcd.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = RationalPolynomial::one();
        let mut s1 = RationalPolynomial::zero();
        let mut t0 = RationalPolynomial::zero();
        let mut t1 = RationalPolynomial::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lead) => {
                let inv = Rational::one() / lead.clone();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Divide by the leading coefficient (zero stays zero).
    pub fn into_monic(self) -> Self {
        match self.coeffs.last() {
            None => self,
            Some(lead) if lead.is_one() => self,
            Some(lead) => {
                let lead = lead.clone();
                RationalPolynomial {
                    coeffs: self.coeffs.iter().map(|c| c / &lead).collect(),
                }
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = render_rational(&abs);
            match deg {
                0 => out.push_str(&coeff_str),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&coeff_str);
                        out.push('*');
                    }
                    out.push_str(var);
                    if deg > 1 {
                        out.push_str(&format!("^{deg}"));
                    }
                }
            }
        }
        out
    }
}

/// Render an exact rational as `p` or `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(num: i64) -> Rational {
    Rational::from_integer(num.into())
}
