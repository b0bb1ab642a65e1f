//! Rigorous natural-logarithm enclosures for positive big rationals.
//!
//! Values are handled in fixed point at a given fractional bit count with
//! directed rounding, so the returned pair brackets the true logarithm.
//! Precision far exceeds what effective-exponent reporting needs; interval
//! width is a few units in the last place of the chosen scale.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fractional bits used by [`ln_interval`] callers in this crate.
pub(crate) const DEFAULT_SCALE: u32 = 192;

fn unit(scale: u32) -> BigInt {
    BigInt::one() << scale
}

// directed fixed-point primitives on nonnegative mantissas

fn mul_lo(a: &BigInt, b: &BigInt, scale: u32) -> BigInt {
    (a * b) >> scale
}

fn mul_hi(a: &BigInt, b: &BigInt, scale: u32) -> BigInt {
    let mask = (BigInt::one() << scale) - 1;
    ((a * b) + mask) >> scale
}

fn div_lo(a: &BigInt, b: &BigInt, scale: u32) -> BigInt {
    num_integer::Integer::div_floor(&(a << scale), b)
}

fn div_hi(a: &BigInt, b: &BigInt, scale: u32) -> BigInt {
    let num = a << scale;
    let (q, r) = num_integer::Integer::div_rem(&num, b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// atanh series bounds: lower/upper mantissas of
/// 2 * sum z^{2t+1} / (2t+1) for a mantissa interval [z_lo, z_hi] with
/// z_hi <= 0.34 * 2^scale.
fn atanh2_interval(z_lo: &BigInt, z_hi: &BigInt, scale: u32) -> (BigInt, BigInt) {
    debug_assert!(!z_lo.is_negative());
    // lower: floor rounding throughout, positive tail dropped
    let z2_lo = mul_lo(z_lo, z_lo, scale);
    let mut pow = z_lo.clone();
    let mut sum_lo = BigInt::zero();
    let mut t = 0u32;
    while !pow.is_zero() && t < 4 * scale {
        sum_lo += num_integer::Integer::div_floor(&pow, &BigInt::from(2 * t + 1));
        pow = mul_lo(&pow, &z2_lo, scale);
        t += 1;
    }
    // upper: ceil rounding, explicit tail bound once the power is tiny.
    // remaining terms are below pow * (1 + z^2 + z^4 + ...) <= 2 * pow for
    // z^2 <= 1/2
    let z2_hi = mul_hi(z_hi, z_hi, scale);
    let mut pow = z_hi.clone();
    let mut sum_hi = BigInt::zero();
    let mut t = 0u32;
    let cutoff = BigInt::from(8);
    while pow > cutoff && t < 4 * scale {
        sum_hi += div_hi(&pow, &BigInt::from(2 * t + 1), 0);
        pow = mul_hi(&pow, &z2_hi, scale);
        t += 1;
    }
    sum_hi += 2 * &pow;
    (sum_lo << 1, sum_hi << 1)
}

fn div_hi0(a: &BigInt, b: &BigInt) -> BigInt {
    div_hi(a, b, 0)
}

/// ln 2 as a mantissa interval at the given scale, via 2 atanh(1/3).
fn ln2_interval(scale: u32) -> (BigInt, BigInt) {
    let three = BigInt::from(3);
    let z_lo = num_integer::Integer::div_floor(&unit(scale), &three);
    let z_hi = div_hi0(&unit(scale), &three);
    atanh2_interval(&z_lo, &z_hi, scale)
}

/// Rigorous enclosure of ln(x) for a positive rational, returned as exact
/// dyadic rationals with lo <= ln x <= hi.
pub(crate) fn ln_interval(x: &BigRational, scale: u32) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "logarithm needs a positive argument");
    // normalize x = m * 2^e with m in [1, 2)
    let mut e: i64 =
        i64::try_from(x.numer().bits()).unwrap() - i64::try_from(x.denom().bits()).unwrap();
    let mut m = shift_rational(x, -e);
    if m < BigRational::one() {
        e -= 1;
        m = shift_rational(x, -e);
    } else if m >= BigRational::from_integer(BigInt::from(2)) {
        e += 1;
        m = shift_rational(x, -e);
    }
    debug_assert!(m >= BigRational::one() && m < BigRational::from_integer(BigInt::from(2)));

    // dyadic bracket of the mantissa
    let scaled_num = m.numer() << scale;
    let m_lo = num_integer::Integer::div_floor(&scaled_num, m.denom());
    let m_hi = div_hi0(&scaled_num, m.denom());

    // z = (m - 1)/(m + 1), increasing in m
    let u = unit(scale);
    let z_lo = div_lo(&(&m_lo - &u), &(&m_lo + &u), scale);
    let z_hi = div_hi(&(&m_hi - &u), &(&m_hi + &u), scale);
    let z_lo = if z_lo.is_negative() {
        BigInt::zero()
    } else {
        z_lo
    };
    let (lnm_lo, lnm_hi) = atanh2_interval(&z_lo, &z_hi, scale);

    let (l2_lo, l2_hi) = ln2_interval(scale);
    let (shift_lo, shift_hi) = if e >= 0 {
        (&l2_lo * e, &l2_hi * e)
    } else {
        (&l2_hi * e, &l2_lo * e)
    };
    let denom = unit(scale);
    (
        BigRational::new(lnm_lo + shift_lo, denom.clone()),
        BigRational::new(lnm_hi + shift_hi, denom),
    )
}

/// x * 2^e for signed e.
fn shift_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::new(x.numer() << e as usize, x.denom().clone())
    } else {
        BigRational::new(x.numer().clone(), x.denom() << (-e) as usize)
    }
}

/// f64 approximation that survives numerators/denominators far beyond the
/// f64 exponent range.
pub(crate) fn rat_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let neg = x.is_negative();
    let a = x.numer().abs();
    let b = x.denom().clone();
    let shift_a = a.bits().saturating_sub(64);
    let shift_b = b.bits().saturating_sub(64);
    let a_top: u64 = u64::try_from(&(&a >> shift_a)).unwrap();
    let a_top = a_top as f64 * 2f64.powi(shift_a as i32 - shift_b as i32);
    let b_top: u64 = u64::try_from(&(b >> shift_b)).unwrap();
    let v = a_top / b_top as f64;
    if neg {
        -v
    } else {
        v
    }
}
