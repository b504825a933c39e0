//! Exponential Riordan arrays, the restricted Lah matrices, their inverses
//! and the Lah polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::{MatrixError, TriangularMatrix};
use crate::numbers::factorial;
use crate::report::IdentityReport;
use crate::sequences::{self, SequenceError};
use crate::series::{ExactSeries, SeriesError, Weight};
use crate::sizeset::SizeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error("Riordan condition g(0) != 0 fails: g(0) = 0")]
    ZeroLeadingG,
    #[error("Riordan condition f(0) = 0 fails: f(0) = {0}")]
    NonzeroConstantF(BigRational),
    #[error("Riordan condition f'(0) != 0 fails: f'(0) = 0")]
    ZeroDerivativeF,
    #[error("requested dimension {dim} exceeds series order {order}")]
    DimensionTooLarge { dim: usize, order: usize },
    #[error("inverse refused: the matrix diagonal is not all ones")]
    NonUnitDiagonal,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

type Result<T> = std::result::Result<T, RiordanError>;

/// Triangle with entry `(n, k) = n!/k! [x^n] g f^k` for `0 <= k <= n <= n_max`.
///
/// `g` and `f` need order at least `n_max`; every entry is asserted integral.
pub fn column_triangle(g: &ExactSeries, f: &ExactSeries, n_max: usize) -> std::result::Result<TriangularMatrix, SeriesError> {
    let g = g.with_order(n_max);
    let f = f.with_order(n_max);
    let mut rows: Vec<Vec<BigInt>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut column = g;
    for k in 0..=n_max {
        let k_fact = BigRational::from_integer(factorial(k));
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            let value = column.egf_coeff(n)? / &k_fact;
            if !value.is_integer() {
                return Err(SeriesError::NonInteger { index: n, value });
            }
            row.push(value.to_integer());
        }
        if k < n_max {
            column = column.mul(&f)?;
        }
    }
    Ok(TriangularMatrix::from_rows(rows).expect("rows have increasing length"))
}

/// A validated pair `<g, f>` with `g(0) != 0`, `f(0) = 0`, `f'(0) != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpRiordan {
    g: ExactSeries,
    f: ExactSeries,
}

impl ExpRiordan {
    pub fn new(g: ExactSeries, f: ExactSeries) -> Result<Self> {
        if g.order() != f.order() {
            return Err(SeriesError::OrderMismatch { left: g.order(), right: f.order() }.into());
        }
        if g.coeff(0).is_zero() {
            return Err(RiordanError::ZeroLeadingG);
        }
        if !f.coeff(0).is_zero() {
            return Err(RiordanError::NonzeroConstantF(f.coeff(0).clone()));
        }
        if f.order() >= 1 && f.coeff(1).is_zero() {
            return Err(RiordanError::ZeroDerivativeF);
        }
        Ok(ExpRiordan { g, f })
    }

    pub fn identity(order: usize) -> Self {
        ExpRiordan { g: ExactSeries::one(order), f: ExactSeries::x(order) }
    }

    /// `<e^x, x>`, the binomial triangle.
    pub fn pascal(order: usize) -> Self {
        let g = ExactSeries::exp_minus_one(order).add(&ExactSeries::one(order)).expect("equal orders");
        ExpRiordan { g, f: ExactSeries::x(order) }
    }

    /// `<1, -log(1-x)>`, unsigned Stirling numbers of the first kind.
    pub fn stirling1(order: usize) -> Self {
        ExpRiordan { g: ExactSeries::one(order), f: ExactSeries::neg_log_one_minus_x(order) }
    }

    /// `<1, e^x - 1>`, Stirling numbers of the second kind.
    pub fn stirling2(order: usize) -> Self {
        ExpRiordan { g: ExactSeries::one(order), f: ExactSeries::exp_minus_one(order) }
    }

    /// `<(sum s x^(s-1))^r, sum x^s>`; valid only when `1` is in `S`.
    pub fn lah(set: &SizeSet, r: usize, order: usize) -> Result<Self> {
        let g = ExactSeries::from_sizeset(set, Weight::DerivativePlain, order).pow_int(r as u32);
        let f = ExactSeries::from_sizeset(set, Weight::Plain, order);
        Self::new(g, f)
    }

    pub fn g(&self) -> &ExactSeries {
        &self.g
    }

    pub fn f(&self) -> &ExactSeries {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Rows `0..=n_max` of the array.
    pub fn to_matrix(&self, n_max: usize) -> Result<TriangularMatrix> {
        if n_max > self.order() {
            return Err(RiordanError::DimensionTooLarge { dim: n_max, order: self.order() });
        }
        Ok(column_triangle(&self.g, &self.f, n_max)?)
    }

    /// `<g, f> * <h, l> = <g h(f), l(f)>`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let g = self.g.mul(&other.g.compose(&self.f)?)?;
        let f = other.f.compose(&self.f)?;
        Self::new(g, f)
    }

    /// Image of a column with EGF `h`: the column with EGF `g h(f)`.
    pub fn apply(&self, h: &ExactSeries) -> Result<ExactSeries> {
        Ok(self.g.mul(&h.compose(&self.f)?)?)
    }

    /// `<1/g(fbar), fbar>` with `fbar` the compositional inverse of `f`.
    pub fn inverse(&self) -> Result<Self> {
        let f_bar = self.f.reversion()?;
        let g_star = self.g.compose(&f_bar)?.reciprocal()?;
        Self::new(g_star, f_bar)
    }
}

impl fmt::Display for ExpRiordan {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "<{}, {}>", self.g, self.f)
    }
}

/// `(S,r)`-Lah matrix, rows `0..=n_max`; defined for every `S`.
pub fn lah_matrix(set: &SizeSet, r: usize, n_max: usize) -> Result<TriangularMatrix> {
    Ok(sequences::lah_triangle(set, r, n_max)?)
}

/// Inverse `(S,r)`-Lah matrix by series reversion.
pub fn lah_inverse_matrix(set: &SizeSet, r: usize, n_max: usize) -> Result<TriangularMatrix> {
    ExpRiordan::lah(set, r, n_max)?.inverse()?.to_matrix(n_max)
}

/// Inverse `(S,r)`-Lah matrix by forward substitution on the forward matrix.
pub fn lah_inverse_matrix_by_elimination(set: &SizeSet, r: usize, n_max: usize) -> Result<TriangularMatrix> {
    let forward = lah_matrix(set, r, n_max)?;
    if !forward.is_unit_diagonal() {
        return Err(RiordanError::NonUnitDiagonal);
    }
    Ok(forward.inverse_unit_lower()?)
}

/// `sum_k c_k x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LahPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl LahPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for LahPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {sign} ")?;
            }
            first = false;
            let magnitude = c.abs();
            match (k, magnitude.is_one()) {
                (0, _) => write!(out, "{magnitude}")?,
                (1, true) => write!(out, "x")?,
                (1, false) => write!(out, "{magnitude}*x")?,
                (_, true) => write!(out, "x^{k}")?,
                (_, false) => write!(out, "{magnitude}*x^{k}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

pub fn lah_polynomial(n: usize, set: &SizeSet, r: usize) -> Result<LahPolynomial> {
    Ok(LahPolynomial { coeffs: lah_matrix(set, r, n)?.row(n).to_vec() })
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let size = matrix.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut a = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for p in 0..size {
        if a[p][p].is_zero() {
            let Some(swap) = (p + 1..size).find(|&i| !a[i][p].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, swap);
            sign = -sign;
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let value = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &previous;
                a[i][j] = value;
            }
            a[i][p] = BigInt::zero();
        }
        previous = a[p][p].clone();
    }
    sign * &a[size - 1][size - 1]
}

/// Coefficients of `det` for the matrix whose first row is `1, x, ..., x^n`
/// and whose row `i >= 1` holds the inverse-matrix column `i - 1`, expanded
/// along the first row.
pub fn determinantal_polynomial(n: usize, inverse: &TriangularMatrix) -> Vec<BigInt> {
    let lower: Vec<Vec<BigInt>> = (1..=n)
        .map(|i| (0..=n).map(|j| inverse.at(j as i64, i as i64 - 1)).collect())
        .collect();
    (0..=n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = lower
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let cofactor = integer_determinant(&minor);
            if j % 2 == 0 { cofactor } else { -cofactor }
        })
        .collect()
}

/// Checks `L_{n,S,r}(x) = (-1)^n det(...)` coefficientwise.
pub fn verify_determinantal(n: usize, set: &SizeSet, r: usize) -> Result<IdentityReport> {
    let inverse = lah_inverse_matrix(set, r, n)?;
    let polynomial = lah_polynomial(n, set, r)?;
    let det = determinantal_polynomial(n, &inverse);
    let mut report = IdentityReport::new(format!("determinantal Lah polynomial [{set}, r={r}]"), format!("n={n}"));
    for (j, value) in det.into_iter().enumerate() {
        let signed = if n.is_multiple_of(2) { value } else { -value };
        report.check(format!("x^{j}"), polynomial.coeffs[j].clone(), signed);
    }
    Ok(report)
}

/// Applies the forward matrix then the inverse (and the reverse) to
/// `sequence`; both round trips must be the identity.
pub fn verify_inverse_relation(set: &SizeSet, r: usize, n_max: usize, sequence: &[BigInt]) -> Result<IdentityReport> {
    let forward = lah_matrix(set, r, n_max)?;
    let inverse = lah_inverse_matrix(set, r, n_max)?;
    let mut report = IdentityReport::new(format!("inverse relation [{set}, r={r}]"), format!("N={n_max}"));
    let there = inverse.apply(&forward.apply(sequence)?)?;
    let back = forward.apply(&inverse.apply(sequence)?)?;
    for (n, value) in sequence.iter().enumerate() {
        report.check(format!("F(L f) n={n}"), there[n].clone(), value.clone());
        report.check(format!("L(F g) n={n}"), back[n].clone(), value.clone());
    }
    Ok(report)
}

/// `L F = I` entrywise at rows `0..=n_max`.
pub fn verify_orthogonality(set: &SizeSet, r: usize, n_max: usize) -> Result<IdentityReport> {
    let product = lah_matrix(set, r, n_max)?.mul(&lah_inverse_matrix(set, r, n_max)?)?;
    let mut report = IdentityReport::new(format!("orthogonality [{set}, r={r}]"), format!("N={n_max}"));
    for n in 0..=n_max {
        for k in 0..=n {
            let delta = if n == k { BigInt::one() } else { BigInt::zero() };
            report.check(format!("n={n},k={k}"), product.get(n, k), delta);
        }
    }
    Ok(report)
}

/// The two inversion routes agree entrywise.
pub fn verify_inverse_routes(set: &SizeSet, r: usize, n_max: usize) -> Result<IdentityReport> {
    let by_series = lah_inverse_matrix(set, r, n_max)?;
    let by_elimination = lah_inverse_matrix_by_elimination(set, r, n_max)?;
    let mut report = IdentityReport::new(format!("inverse routes [{set}, r={r}]"), format!("N={n_max}"));
    for n in 0..=n_max {
        for k in 0..=n {
            report.check(format!("n={n},k={k}"), by_series.get(n, k), by_elimination.get(n, k));
        }
    }
    Ok(report)
}
