//! Bernoulli numbers with `B₁ = −1/2`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;

/// `B_0 ..= B_n` from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`, `B_0 = 1`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // binomial(m+1, k) for k = 0..m, built incrementally
        let mut binom = BigInt::one();
        let mut sum = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            sum += bk * Rational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        // binom is now C(m+1, m) = m+1
        b.push(-sum / Rational::from_integer(binom));
    }
    b
}
