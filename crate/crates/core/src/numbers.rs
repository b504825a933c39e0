//! Small exact-integer helpers shared by the other modules.

use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)` with the usual conventions: zero when `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `x (x - 1) ... (x - n + 1)`; the empty product is one.
pub fn falling_factorial<T>(x: &T, n: usize) -> T
where
    T: Clone + One + Mul<Output = T> + Sub<Output = T>,
{
    let mut acc = T::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term - T::one();
    }
    acc
}

/// `x (x + 1) ... (x + n - 1)`; the empty product is one.
pub fn rising_factorial<T>(x: &T, n: usize) -> T
where
    T: Clone + One + Mul<Output = T> + std::ops::Add<Output = T>,
{
    let mut acc = T::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + T::one();
    }
    acc
}

/// `(n)_k` for integer `n >= 0`, zero when `k > n`, zero for negative inputs.
pub fn falling_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 {
        return BigInt::zero();
    }
    falling_factorial(&BigInt::from(n), k as usize)
}

/// Exact value of a decimal (`0.001`), exponent (`1e-9`, `2.5E-3`) or
/// fraction (`1/1000`) literal; `None` when the text is none of these.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num.trim().parse().ok()?, den));
    }
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (whole, fraction) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits_only = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    let unsigned = whole.strip_prefix(['-', '+']).unwrap_or(whole);
    if unsigned.is_empty() && fraction.is_empty() || !digits_only(unsigned) || !digits_only(fraction) {
        return None;
    }
    let value: BigInt = format!("{whole}{fraction}").parse().ok()?;
    let scale = exponent - fraction.len() as i32;
    let power = BigInt::from(10).pow(scale.unsigned_abs());
    Some(if scale >= 0 {
        BigRational::from_integer(value * power)
    } else {
        BigRational::new(value, power)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn factorial_powers() {
        assert_eq!(falling_factorial(&BigInt::from(5), 2), BigInt::from(20));
        assert_eq!(rising_factorial(&BigInt::from(7), 0), BigInt::one());
        assert_eq!(falling_factorial(&BigInt::from(7), 0), BigInt::one());
        assert_eq!(rising_factorial(&BigInt::from(2), 3), BigInt::from(24));
        assert_eq!(falling_factorial(&BigInt::from(2), 3), BigInt::zero());
        let half = BigRational::new(1.into(), 2.into());
        // (1/2)(-1/2) = -1/4
        assert_eq!(falling_factorial(&half, 2), BigRational::new((-1).into(), 4.into()));
        assert_eq!(falling_int(3, 5), BigInt::zero());
        assert_eq!(falling_int(6, 3), BigInt::from(120));
    }

    #[test]
    fn rational_literals() {
        let nano = BigRational::new(1.into(), BigInt::from(10).pow(9));
        assert_eq!(parse_rational("1e-9"), Some(nano.clone()));
        assert_eq!(parse_rational("0.000000001"), Some(nano.clone()));
        assert_eq!(parse_rational("1/1000000000"), Some(nano));
        assert_eq!(parse_rational("2.5E-1"), Some(BigRational::new(1.into(), 4.into())));
        assert_eq!(parse_rational("3"), Some(BigRational::from_integer(3.into())));
        assert_eq!(parse_rational(".5"), Some(BigRational::new(1.into(), 2.into())));
        for bad in ["", "x", "1/0", "1e", "1.2.3", "-", "e5"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }
}
