//! Small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Least common multiple of the denominators of `values`; 1 for an empty list.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn check_denominator(value: &Rational, limit: &BigInt) -> Result<()> {
    if value.denom().abs() > *limit {
        return Err(Error::DenominatorTooLarge {
            value: value.to_string(),
            limit: limit.to_string(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_examples() {
        assert_eq!(
            lcm_of_denominators(&[rat(1, 2), rat(1, 3)]),
            BigInt::from(6)
        );
        assert_eq!(lcm_of_denominators(&[rat(2, 4), int(3)]), BigInt::from(2));
        assert_eq!(lcm_of_denominators(&[]), BigInt::from(1));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(rat(4, 18).to_string(), "2/9");
        assert_eq!(rat(-6, 3).to_string(), "-2");
    }
}
