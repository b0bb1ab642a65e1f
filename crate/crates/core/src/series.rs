//! Truncated power series with exact rational coefficients.
//!
//! A series carries exactly `order()` coefficients, c_0 .. c_{order-1}.
//! Binary operations truncate to the shorter operand, so every coefficient
//! of a result is one the inputs fully determine.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("series of order {have} is shorter than the required {need}")]
    OrderTooSmall { have: usize, need: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
}

impl RatSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        RatSeries { coeffs }
    }

    /// First `order` terms of an integer sequence, as exact rationals.
    pub fn from_terms(terms: &[i64], order: usize) -> Result<Self, SeriesError> {
        if terms.len() < order {
            return Err(SeriesError::OrderTooSmall {
                have: terms.len(),
                need: order,
            });
        }
        Ok(RatSeries {
            coeffs: terms[..order]
                .iter()
                .map(|&t| BigRational::from_integer(BigInt::from(t)))
                .collect(),
        })
    }

    /// A polynomial viewed as a series of the given order.
    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        RatSeries {
            coeffs: (0..order)
                .map(|i| BigRational::from_integer(p.coeff(i)))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        RatSeries {
            coeffs: self.coeffs[..order.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn add(&self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        RatSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        RatSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, rhs: &RatSeries) -> RatSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        RatSeries { coeffs: out }
    }

    /// Multiplicative inverse at the same order; the constant term must be
    /// nonzero.
    pub fn recip(&self) -> Result<RatSeries, SeriesError> {
        let c0 = self
            .coeffs
            .first()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::ZeroConstantTerm)?;
        let n = self.order();
        let mut inv = Vec::with_capacity(n);
        inv.push(c0.recip());
        for i in 1..n {
            let mut s = BigRational::zero();
            for j in 1..=i {
                s += &self.coeffs[j] * &inv[i - j];
            }
            inv.push(-s / c0);
        }
        Ok(RatSeries { coeffs: inv })
    }

    /// Substitute x -> x^k, truncated to the original order.
    pub fn spread(&self, k: usize) -> RatSeries {
        assert!(k >= 1);
        let n = self.order();
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k >= n {
                break;
            }
            out[i * k] = c.clone();
        }
        RatSeries { coeffs: out }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first coefficient on which the two series disagree.
    pub fn first_mismatch(&self, rhs: &RatSeries) -> Option<usize> {
        let n = self.order().min(rhs.order());
        (0..n).find(|&i| self.coeffs[i] != rhs.coeffs[i])
    }
}

/// Power-series expansion of a(x)/b(x) to the requested order; b(0) must be
/// nonzero.
pub fn poly_quotient_series(
    a: &IntPoly,
    b: &IntPoly,
    order: usize,
) -> Result<RatSeries, SeriesError> {
    if b.coeff(0).is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let bs = RatSeries::from_poly(b, order);
    Ok(RatSeries::from_poly(a, order).mul(&bs.recip()?))
}

impl RatSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order];
        if order > 0 {
            coeffs[0] = BigRational::one();
        }
        RatSeries { coeffs }
    }
}
