//! Scalar layer: arbitrary-precision rationals plus the small combinatorial
//! quantities (factorials, generalized binomials) the operator calculus needs.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

/// The scalar of every computation: an exact rational with arbitrary
/// precision integer numerator and positive denominator, always reduced.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// n! as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Double factorial of an odd argument: (2k-1)!! = 1·3·5···(2k-1), with
/// (-1)!! = 1 for k = 0.
pub fn odd_double_factorial(k: u64) -> Rational {
    let mut acc = BigInt::one();
    let mut m: u64 = 1;
    while m <= 2 * k {
        if m % 2 == 1 {
            acc *= BigInt::from(m);
        }
        m += 1;
    }
    BigRational::from_integer(acc)
}

/// Falling product j·(j-1)···(j-i+1) with i factors; empty product is 1.
/// Defined for any integer j, which extends binomial coefficients to
/// negative upper index.
pub fn falling(j: i64, i: u64) -> Rational {
    let mut acc = BigInt::one();
    for step in 0..i {
        acc *= BigInt::from(j - step as i64);
    }
    BigRational::from_integer(acc)
}

/// Generalized binomial coefficient C(j, i) = j(j-1)···(j-i+1)/i! for any
/// integer j and i ≥ 0. This is the coefficient in the extended Leibniz rule
/// ∂^j ∘ f = Σ_i C(j, i) f^{(i)} ∂^{j-i}.
pub fn binom_gen(j: i64, i: u64) -> Rational {
    falling(j, i) / factorial(i)
}

/// 2^k as a rational, k may be negative.
pub fn pow2(k: i64) -> Rational {
    let two = rat_int(2);
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &two;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}
