//! Exact rational numbers and the handful of combinatorial numbers the
//! engine needs (binomials, factorials, Bernoulli numbers).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(2k-1)!!` style double factorial: product of `n, n-2, ...` down to 1 or 2.
pub fn double_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0, ..., B_k` with the convention `B_1 = -1/2`,
/// from the recurrence `sum_{j<=k} C(k+1, j) B_j = 0`.
pub fn bernoulli_table(k: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(k + 1);
    table.push(Rational::one());
    for n in 1..=k {
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            sum += Rational::from_integer(binomial(n as u32 + 1, j as u32)) * b;
        }
        table.push(-sum / Rational::from_integer(BigInt::from(n + 1)));
    }
    table
}

pub fn bernoulli(k: usize) -> Rational {
    let value = bernoulli_table(k).pop().expect("table is non-empty");
    if k >= 2 && k.is_multiple_of(2) {
        assert!(!value.is_zero(), "B_{k} vanished");
    }
    value
}

/// Renders `num/den`, or just `num` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(3), int(0));
    }

    #[test]
    fn even_bernoulli_numbers_never_vanish() {
        let table = bernoulli_table(40);
        for k in 1..=20 {
            assert!(!table[2 * k].is_zero(), "B_{} is zero", 2 * k);
        }
        for k in 1..=19 {
            assert!(table[2 * k + 1].is_zero());
        }
    }

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(6), BigInt::from(48));
        assert_eq!(double_factorial(0), BigInt::from(1));
    }

    #[test]
    fn rational_text_round_trip() {
        for (n, d) in [(3, 2), (-7, 45), (4, 1), (0, 1)] {
            let r = rat(n, d);
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
    }
}
