//! `[k-1/k]` Padé approximants of a power series in exact rational
//! arithmetic.
//!
//! When the order-k Hankel determinant of the coefficient sequence is
//! nonzero, the approximant exists and is unique up to scaling, and the
//! error expansion starts at z^{2k} with leading coefficient
//! H_{k+1}/H_k. The solver normalizes Q(0) = 1; `integer_cleared` rescales
//! to the primitive integer pair when integrality matters downstream.

use crate::linalg::IntMatrix;
use crate::poly::IntPoly;
use crate::series::{RatSeries, SeriesError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadeError {
    #[error("series of order {have} is too short, need at least {need}")]
    OrderTooSmall { have: usize, need: usize },
    #[error("order-{k} Hankel determinant vanishes, the [k-1/k] construction does not apply")]
    DegenerateOrder { k: usize },
    #[error("order must be at least 1")]
    OrderZero,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("contact linear system is singular despite a nonzero Hankel determinant")]
    InconsistentSystem,
}

/// Exact Hankel determinant of the coefficient sequence: the k-by-k
/// determinant with entry (i, j) = c_{i+j}.
pub fn hankel_of_series(series: &RatSeries, k: usize) -> Result<BigRational, PadeError> {
    if k == 0 {
        return Ok(BigRational::one());
    }
    if series.order() < 2 * k - 1 {
        return Err(PadeError::OrderTooSmall {
            have: series.order(),
            need: 2 * k - 1,
        });
    }
    // scale each row to integers; the determinant divides by the scales
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut lcm = BigInt::one();
        for j in 0..k {
            lcm = lcm.lcm(series.coeff(i + j).denom());
        }
        rows.push(
            (0..k)
                .map(|j| {
                    let c = series.coeff(i + j);
                    c.numer() * (&lcm / c.denom())
                })
                .collect(),
        );
        scale *= lcm;
    }
    let flat: Vec<BigInt> = rows.into_iter().flatten().collect();
    let det = IntMatrix::new(k, k, flat)
        .expect("square by construction")
        .det_exact()
        .expect("square by construction");
    Ok(BigRational::new(det, scale))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PadeApproximant {
    pub k: usize,
    /// Numerator coefficients, degree <= k-1.
    pub p: Vec<BigRational>,
    /// Denominator coefficients, degree <= k, normalized to `q[0] = 1`.
    pub q: Vec<BigRational>,
    /// Leading error coefficient H_{k+1}/H_k; zero exactly when H_{k+1}
    /// vanishes, flagged by `degenerate`.
    pub h: BigRational,
    /// True when H_{k+1} = 0: the approximant exists but the error opens
    /// with a higher-order term.
    pub degenerate: bool,
}

/// Gaussian elimination over exact rationals, first nonzero pivot.
#[allow(clippy::needless_range_loop)]
fn solve_rational(
    mut m: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..n {
            m[col][j] = &m[col][j] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n {
                    let t = &f * &m[col][j];
                    m[r][j] = &m[r][j] - t;
                }
                let t = &f * &rhs[col];
                rhs[r] = &rhs[r] - t;
            }
        }
    }
    Some(rhs)
}

/// Builds the [k-1/k] approximant. Requires series order >= 2k+2 and a
/// nonvanishing order-k Hankel determinant.
pub fn pade(series: &RatSeries, k: usize) -> Result<PadeApproximant, PadeError> {
    if k == 0 {
        return Err(PadeError::OrderZero);
    }
    if series.order() < 2 * k + 2 {
        return Err(PadeError::OrderTooSmall {
            have: series.order(),
            need: 2 * k + 2,
        });
    }
    let hk = hankel_of_series(series, k)?;
    if hk.is_zero() {
        return Err(PadeError::DegenerateOrder { k });
    }

    // contact conditions for coefficients k..2k-1 of f*Q, unknowns q_1..q_k:
    // sum_{j=1..k} c_{i-j} q_j = -c_i
    let m: Vec<Vec<BigRational>> = (k..2 * k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    if i >= j {
                        series.coeff(i - j).clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = (k..2 * k).map(|i| -series.coeff(i)).collect();
    let tail = solve_rational(m, rhs).ok_or(PadeError::InconsistentSystem)?;

    let mut q = Vec::with_capacity(k + 1);
    q.push(BigRational::one());
    q.extend(tail);

    // numerator: the low-order part of f*Q
    let fq = series.mul(&RatSeries::from_coeffs({
        let mut c = q.clone();
        c.resize(series.order(), BigRational::zero());
        c
    }));
    let p: Vec<BigRational> = (0..k).map(|i| fq.coeff(i).clone()).collect();

    // leading error coefficient, cross-checked against the determinant ratio
    let err = error_series(series, &p, &q, 2 * k + 1);
    let h = err.coeff(2 * k).clone();
    let hk1 = hankel_of_series(series, k + 1)?;
    assert_eq!(
        h,
        &hk1 / &hk,
        "error coefficient disagrees with determinant ratio"
    );

    Ok(PadeApproximant {
        k,
        degenerate: h.is_zero(),
        p,
        q,
        h,
    })
}

/// f - P/Q as a series of the given order.
pub fn error_series(
    series: &RatSeries,
    p: &[BigRational],
    q: &[BigRational],
    order: usize,
) -> RatSeries {
    let order = order.min(series.order());
    let mut qc = q.to_vec();
    qc.resize(order, BigRational::zero());
    let mut pc = p.to_vec();
    pc.resize(order, BigRational::zero());
    let q_inv = RatSeries::from_coeffs(qc).recip().expect("Q(0) != 0");
    let pq = RatSeries::from_coeffs(pc).mul(&q_inv);
    series.truncate(order).sub(&pq)
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorExpansionReport {
    pub k: usize,
    /// Coefficients 0..2k-1 of f - P/Q all vanish.
    pub contact_ok: bool,
    pub first_nonzero_below_contact: Option<usize>,
    /// Coefficient 2k equals H_{k+1}/H_k.
    pub leading_matches: bool,
    pub leading: String,
    pub expected_leading: String,
}

impl ErrorExpansionReport {
    pub fn ok(&self) -> bool {
        self.contact_ok && self.leading_matches
    }
}

/// Expands f - P/Q exactly and checks the contact order and the leading
/// error coefficient against the Hankel determinant ratio. Failures are
/// report content.
pub fn verify_error_expansion(
    series: &RatSeries,
    ap: &PadeApproximant,
) -> Result<ErrorExpansionReport, PadeError> {
    let k = ap.k;
    if series.order() < 2 * k + 2 {
        return Err(PadeError::OrderTooSmall {
            have: series.order(),
            need: 2 * k + 2,
        });
    }
    let err = error_series(series, &ap.p, &ap.q, 2 * k + 1);
    let first_nonzero_below_contact = (0..2 * k).find(|&i| !err.coeff(i).is_zero());
    let hk = hankel_of_series(series, k)?;
    let expected = if hk.is_zero() {
        // caller constructed the approximant some other way; report only
        // the observed leading coefficient
        err.coeff(2 * k).clone()
    } else {
        hankel_of_series(series, k + 1)? / hk
    };
    let leading = err.coeff(2 * k).clone();
    Ok(ErrorExpansionReport {
        k,
        contact_ok: first_nonzero_below_contact.is_none(),
        first_nonzero_below_contact,
        leading_matches: leading == expected,
        leading: leading.to_string(),
        expected_leading: expected.to_string(),
    })
}

impl PadeApproximant {
    /// The primitive integer pair (P, Q, lambda): both polynomials scaled by
    /// the least common denominator lambda, so Q(0) = lambda and P/Q is
    /// unchanged.
    pub fn integer_cleared(&self) -> (IntPoly, IntPoly, BigInt) {
        let mut lambda = BigInt::one();
        for c in self.p.iter().chain(&self.q) {
            lambda = lambda.lcm(c.denom());
        }
        let scale = |cs: &[BigRational]| {
            IntPoly::new(
                cs.iter()
                    .map(|c| c.numer() * (&lambda / c.denom()))
                    .collect(),
            )
        };
        (scale(&self.p), scale(&self.q), lambda)
    }
}
