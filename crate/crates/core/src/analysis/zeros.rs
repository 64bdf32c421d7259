use num_bigint::BigInt;
use num_traits::One;

use crate::Rational;

/// Chance that a number of 1..=`max_digits` digits, with nonzero first and
/// last digit, has a zero somewhere in between.
pub fn embedded_zero_probability(base: u32, max_digits: u32) -> Rational {
    let b = BigInt::from(base);
    let b1: BigInt = &b - 1u32;
    let mut without = BigInt::from(0);
    let mut all = BigInt::from(0);
    for n in 1..=max_digits {
        without += num_traits::pow(b1.clone(), n as usize);
        all += if n == 1 { b1.clone() } else { &b1 * &b1 * num_traits::pow(b.clone(), n as usize - 2) };
    }
    Rational::one() - Rational::new(without, all)
}
