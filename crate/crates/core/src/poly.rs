//! Dense integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial division is not exact (remainder of degree {remainder_degree})")]
    InexactDivision { remainder_degree: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {degree} exceeds scaling exponent {exponent}")]
    DegreeAboveScale { degree: usize, exponent: usize },
}

/// Integer-coefficient polynomial in canonical form: trailing zero
/// coefficients trimmed, so the zero polynomial has an empty coefficient
/// list and `degree()` is `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial x^d.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[d] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
    pub fn order_of_vanishing(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Substitute x -> x^k.
    pub fn spread(&self, k: usize) -> Self {
        assert!(k >= 1, "spread exponent must be >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * k] = v.clone();
        }
        IntPoly { coeffs: c }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// b^d * p(1/b), an integer whenever deg p <= d.
    pub fn eval_scaled_reciprocal(&self, b: &BigInt, d: usize) -> Result<BigInt, PolyError> {
        if let Some(deg) = self.degree() {
            if deg > d {
                return Err(PolyError::DegreeAboveScale {
                    degree: deg,
                    exponent: d,
                });
            }
        }
        if self.coeffs.is_empty() {
            return Ok(BigInt::zero());
        }
        // sum c_i b^{d-i}, Horner from the high end of b-powers
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc = acc * b + c;
        }
        let remaining = (d + 1 - self.coeffs.len()) as u32;
        Ok(acc * b.pow(remaining))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dn = self.coeffs.len();
        let dd = divisor.coeffs.len();
        if dn < dd {
            return Err(PolyError::InexactDivision {
                remainder_degree: dn - 1,
            });
        }
        let mut rem = self.coeffs.clone();
        let lead = &divisor.coeffs[dd - 1];
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision {
                    remainder_degree: i + dd - 1,
                });
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = d * &q;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        if let Some(pos) = rem.iter().position(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision {
                remainder_degree: pos,
            });
        }
        Ok(IntPoly::new(quot))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in rhs.coeffs.iter().enumerate() {
            c[i] += v;
        }
        IntPoly::new(c)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in rhs.coeffs.iter().enumerate() {
            c[i] -= v;
        }
        IntPoly::new(c)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn canonical_trim_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0]).degree(), None);
        assert!(p(&[]).is_zero());
        assert_eq!(p(&[0, 0, 5]).degree(), Some(2));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 0, 0, 0, -1]); // 1 - x^4
        let b = p(&[1, 1]);
        assert_eq!(&a + &b, p(&[2, 1, 0, 0, -1]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(p(&[0, 1]).spread(3), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn exact_division() {
        let prod = &p(&[1, 0, 0, 0, -1]) * &p(&[1, 0, 0, 0, 0, 0, 0, 0, -1]);
        assert_eq!(
            prod.div_exact(&p(&[1, 0, 0, 0, -1])).unwrap(),
            p(&[1, 0, 0, 0, 0, 0, 0, 0, -1])
        );
        assert_eq!(
            p(&[1, 1]).div_exact(&p(&[1, -1])),
            Err(PolyError::InexactDivision {
                remainder_degree: 0
            })
        );
        assert_eq!(
            p(&[1]).div_exact(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn scaled_reciprocal_evaluation() {
        // (1 - x^4) at x = 1/2 scaled by 2^4: 16 - 1 = 15
        let b = BigInt::from(2);
        assert_eq!(
            p(&[1, 0, 0, 0, -1]).eval_scaled_reciprocal(&b, 4).unwrap(),
            BigInt::from(15)
        );
        // scale larger than the degree multiplies through
        assert_eq!(
            p(&[1, 1]).eval_scaled_reciprocal(&b, 3).unwrap(),
            BigInt::from(12)
        );
        assert!(p(&[1, 1, 1]).eval_scaled_reciprocal(&b, 1).is_err());
    }

    #[test]
    fn vanishing_order_and_eta() {
        assert_eq!(p(&[0, 1]).order_of_vanishing(), 1);
        assert_eq!(p(&[0, 0, 3, 4]).order_of_vanishing(), 2);
        assert_eq!(p(&[1, -7, 2]).max_abs_coeff(), BigInt::from(7));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 0, 0, -1]).to_string(), "1 - x^4");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[-2, 3]).to_string(), "-2 + 3x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
