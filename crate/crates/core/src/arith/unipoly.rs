use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Polynomial in one variable (the angle `θ`) with rational coefficients.
///
/// `coeffs[k]` multiplies `θ^k`; the highest stored coefficient is nonzero,
/// so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `θ`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, theta: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * theta + c)
    }

    /// The antiderivative vanishing at `θ = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / Rational::from_integer(BigInt::from(k + 1)));
        }
        UniPoly::new(out)
    }

    /// `∫₀¹ dλ ∫_θ^λ p(u) du` for the integrand `p = self`.
    ///
    /// With `Q` the antiderivative of `p` and `R` the antiderivative of `Q`
    /// (both vanishing at zero) this is `R(1) − Q(θ)`.
    pub fn nested_integral(&self) -> Self {
        let q = self.antiderivative();
        let r = q.antiderivative();
        let r1 = r.eval(&Rational::one());
        &UniPoly::constant(r1) - &q
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(cs: &[(i64, i64)]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        let p = poly(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(poly(&[(0, 1)]).is_zero());
    }

    #[test]
    fn nested_integral_of_constant() {
        // ∫₀¹dλ∫_θ^λ 1 = 1/2 − θ
        assert_eq!(poly(&[(1, 1)]).nested_integral(), poly(&[(1, 2), (-1, 1)]));
    }

    #[test]
    fn nested_integral_of_leaf_angle() {
        let p = poly(&[(1, 2), (-1, 1)]);
        assert_eq!(p.nested_integral(), poly(&[(1, 12), (-1, 2), (1, 2)]));
    }

    #[test]
    fn nested_integral_of_zero() {
        assert!(UniPoly::zero().nested_integral().is_zero());
    }

    #[test]
    fn horner_evaluation() {
        let p = poly(&[(1, 12), (-1, 2), (1, 2)]);
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 12) - rat(1, 4) + rat(1, 8));
    }
}
