//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Coefficient `i` is the coefficient of `q^i`; trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(a q + b)^k`.
    pub fn linear_power(a: i64, b: i64, k: usize) -> Self {
        let base = Self::from_i64s(&[b, a]);
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * &base;
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients `0..len`, zero padded.
    pub fn padded(&self, len: usize) -> Vec<BigInt> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Keeps the terms of degree `≤ m`.
    pub fn truncate(&self, m: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(m + 1).cloned().collect())
    }

    /// Whether the coefficients `0..=n` read the same backwards, i.e.
    /// `q^n p(1/q) = p(q)`.
    pub fn is_palindromic(&self, n: usize) -> bool {
        if self.degree().is_some_and(|d| d > n) {
            return false;
        }
        (0..=n).all(|i| self.coeff(i) == self.coeff(n - i))
    }

    /// Division by `q + 1`: returns `(quotient, remainder)`.
    pub fn div_rem_one_plus_q(&self) -> (Self, BigInt) {
        // Synthetic division at q = -1, from the top coefficient down.
        let Some(deg) = self.degree() else {
            return (Self::zero(), BigInt::zero());
        };
        if deg == 0 {
            return (Self::zero(), self.coeffs[0].clone());
        }
        let mut quotient = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for i in (1..=deg).rev() {
            carry = &self.coeffs[i] - &carry;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] - &carry;
        (Self::from_coeffs(quotient), remainder)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Serializes big integers as JSON numbers when they fit in `i64`, and as
/// decimal strings otherwise.
pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match x.to_i64() {
                Some(i) => seq.serialize_element(&i)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::monomial(3, 2), p(&[0, 0, 3]));
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(IntPolynomial::linear_power(1, -1, 3), p(&[-1, 3, -3, 1]));
        assert_eq!(IntPolynomial::linear_power(-1, 1, 0), IntPolynomial::one());
    }

    #[test]
    fn division_by_one_plus_q() {
        // 2 + q(4 + 4q) + 2q^3 = (1 + q)(2 + 2q + 2q^2).
        let (quo, rem) = p(&[2, 4, 4, 2]).div_rem_one_plus_q();
        assert_eq!(quo, p(&[2, 2, 2]));
        assert!(rem.is_zero());
        let (_, rem) = p(&[1, 0, 1]).div_rem_one_plus_q();
        assert_eq!(rem, BigInt::from(2));
    }

    #[test]
    fn palindromes() {
        assert!(p(&[1, 2, 1]).is_palindromic(2));
        assert!(!p(&[1, 2]).is_palindromic(1));
        assert!(p(&[0, 1]).is_palindromic(2));
        assert!(IntPolynomial::zero().is_palindromic(0));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "1 - 2q + q^3");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
    }

    #[test]
    fn no_overflow() {
        let big = IntPolynomial::linear_power(1, 1, 80);
        assert_eq!(big.coeff(40).to_string(), "107507208733336176461620");
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec(-50i64..50, 0..6).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn division_roundtrip(a in small_poly()) {
            let one_plus_q = p(&[1, 1]);
            let (quo, rem) = (&a * &one_plus_q).div_rem_one_plus_q();
            prop_assert_eq!(quo, a.clone());
            prop_assert!(rem.is_zero());
            let (quo, rem) = a.div_rem_one_plus_q();
            prop_assert_eq!(&(&quo * &one_plus_q) + &IntPolynomial::constant(rem), a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_poly(), b in small_poly(), x in -5i64..5) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
