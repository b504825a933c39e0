//! Truncated power series with exact rational coefficients.
//!
//! Every series carries an explicit truncation order `N` and stores exactly
//! `N + 1` coefficients. Binary operations refuse operands of different
//! orders instead of silently truncating.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numbers::factorial;
use crate::sizeset::SizeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("constant term must be zero")]
    NonzeroConstantTerm,
    #[error("linear coefficient is zero, series has no compositional inverse")]
    ZeroLinearTerm,
    #[error("coefficient index {index} exceeds order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("extracted coefficient {value} at index {index} is not an integer")]
    NonInteger { index: usize, value: BigRational },
}

/// How the members of a size set weight the monomials of a generated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// `sum x^s`
    Plain,
    /// `sum x^s / s!`
    Factorial,
    /// `sum s x^(s-1)`
    DerivativePlain,
    /// `sum x^(s-1) / (s-1)!`
    DerivativeFactorial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactSeries {
    pub fn zero(order: usize) -> Self {
        ExactSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x` (which is `0` at order 0).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros or
    /// truncating to reach `order`.
    pub fn from_coeffs(coeffs: Vec<BigRational>, order: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, BigRational::zero());
        ExactSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    /// EGF-style series: coefficient `j` is `values[j] / j!`.
    pub fn from_egf_values(values: &[BigInt], order: usize) -> Self {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(j, v)| BigRational::new(v.clone(), factorial(j)))
            .collect();
        Self::from_coeffs(coeffs, order)
    }

    pub fn from_sizeset(set: &SizeSet, weight: Weight, order: usize) -> Self {
        let mut s = Self::zero(order);
        match weight {
            Weight::Plain | Weight::Factorial => {
                for size in set.members_up_to(order) {
                    s.coeffs[size] = match weight {
                        Weight::Plain => BigRational::one(),
                        _ => BigRational::new(BigInt::one(), factorial(size)),
                    };
                }
            }
            Weight::DerivativePlain | Weight::DerivativeFactorial => {
                for size in set.members_up_to(order + 1) {
                    s.coeffs[size - 1] = match weight {
                        Weight::DerivativePlain => rat(size as i64),
                        _ => BigRational::new(BigInt::one(), factorial(size - 1)),
                    };
                }
            }
        }
        s
    }

    /// `e^x - 1`
    pub fn exp_minus_one(order: usize) -> Self {
        Self::from_sizeset(&SizeSet::all(), Weight::Factorial, order)
    }

    /// `-log(1 - x)`
    pub fn neg_log_one_minus_x(order: usize) -> Self {
        let mut s = Self::zero(order);
        for j in 1..=order {
            s.coeffs[j] = BigRational::new(BigInt::one(), BigInt::from(j));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same series at a different order: truncates, or pads with zeros.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    fn check_order(&self, other: &Self) -> Result<usize, SeriesError> {
        if self.order() == other.order() {
            Ok(self.order())
        } else {
            Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(ExactSeries { coeffs })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(ExactSeries { coeffs })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let order = self.check_order(other)?;
        Ok(self.mul_unchecked(other, order))
    }

    fn mul_unchecked(&self, other: &Self, order: usize) -> Self {
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn pow_int(&self, exponent: u32) -> Self {
        let order = self.order();
        let mut result = Self::one(order);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base, order);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, order);
            }
        }
        result
    }

    /// Multiplicative inverse.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let order = self.order();
        let inv0 = c0.recip();
        let mut out = Self::zero(order);
        out.coeffs[0] = inv0.clone();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = -(acc * &inv0);
        }
        Ok(out)
    }

    /// `exp(a)` for `a(0) = 0`, via `n b_n = sum_k k a_k b_(n-k)`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut out = Self::zero(order);
        out.coeffs[0] = BigRational::one();
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * rat(k as i64) * &out.coeffs[n - k];
                }
            }
            out.coeffs[n] = acc / rat(n as i64);
        }
        Ok(out)
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let order = self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        // Horner from the top coefficient down
        let mut out = Self::zero(order);
        for c in self.coeffs.iter().rev() {
            out = out.mul_unchecked(inner, order);
            out.coeffs[0] += c;
        }
        Ok(out)
    }

    /// Termwise derivative; the result has order one less (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let order = self.order();
        if order == 0 {
            return Self::zero(0);
        }
        let coeffs =
            (1..=order).map(|j| &self.coeffs[j] * rat(j as i64)).collect::<Vec<_>>();
        Self::from_coeffs(coeffs, order - 1)
    }

    /// Compositional inverse by Newton iteration, doubling the working
    /// precision at each step.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        if order == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(SeriesError::ZeroLinearTerm);
        }
        let mut g = Self::zero(1);
        g.coeffs[1] = self.coeffs[1].recip();
        let mut prec = 1;
        while prec < order {
            prec = (2 * prec).min(order);
            let f = self.with_order(prec);
            let g_cur = g.with_order(prec);
            let residual = f.compose(&g_cur)?.sub(&Self::x(prec))?;
            let slope = f.derivative().with_order(prec).compose(&g_cur)?;
            let step = residual.mul(&slope.reciprocal()?)?;
            g = g_cur.sub(&step)?;
        }
        Ok(g)
    }

    /// `n! [x^n]`
    pub fn egf_coeff(&self, n: usize) -> Result<BigRational, SeriesError> {
        if n > self.order() {
            return Err(SeriesError::IndexOutOfRange { index: n, order: self.order() });
        }
        Ok(&self.coeffs[n] * BigRational::from_integer(factorial(n)))
    }

    /// `n! [x^n]` asserted to be an integer.
    pub fn egf_integer(&self, n: usize) -> Result<BigInt, SeriesError> {
        let value = self.egf_coeff(n)?;
        if value.is_integer() {
            Ok(value.to_integer())
        } else {
            Err(SeriesError::NonInteger { index: n, value })
        }
    }

    /// All of `0! c_0, 1! c_1, ..., N! c_N` as integers.
    pub fn egf_integers(&self) -> Result<Vec<BigInt>, SeriesError> {
        (0..=self.order()).map(|n| self.egf_integer(n)).collect()
    }
}

impl fmt::Display for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match j {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if j == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{j}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
