//! Constructive irrationality-exponent machinery.
//!
//! Starting from a Mahler-type functional equation
//! f(x) = A(x)/B(x) + C(x) f(x^k) and a `[l-1/l]` Padé approximant of f,
//! iterating the equation m times composes the approximant into a rational
//! approximation P_{l,m}/Q_{l,m} of f whose quality at x = 1/b is pinned by
//! an exact two-sided error bracket. Evaluating at 1/b and scaling by
//! b^{Y_l k^m} (Y_l = alpha + beta + gamma + l) gives integer pairs (p, q)
//! whose effective exponents converge into the [delta_l, rho_l] band, and
//! the bound calculators turn those exponents into certified upper bounds
//! on the irrationality exponent.
//!
//! Everything is exact rational arithmetic; the only approximate numbers
//! are f64 renderings placed next to rigorous rational interval endpoints.

use crate::linalg::{hankel_block, BitMatrix};
use crate::lnum;
use crate::pade::PadeApproximant;
use crate::poly::{IntPoly, PolyError};
use crate::seq::{FunctionalEquation, SeqError, SequenceSpec};
use crate::series::{poly_quotient_series, RatSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IrrError {
    #[error("iteration depth must be at least 1")]
    DepthZero,
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),
    #[error("k^m overflows the machine word (k = {k}, m = {m})")]
    SpreadOverflow { k: usize, m: usize },
    #[error("internal consistency failure while iterating the equation: {0}")]
    Iteration(#[from] PolyError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error("sequence terms outside {{0, 1}} at index {index}: tail bound invalid")]
    UnsupportedAlphabet { index: usize },
    #[error("approximant has a vanishing leading error coefficient; the bracket construction needs h != 0")]
    DegenerateLeadingCoefficient,
    #[error("C(1/{base}) = 0: the lower error bound degenerates at this base")]
    ShiftVanishesAtBase { base: u64 },
    #[error("denominator Q_{{l,m}}(1/b) evaluated to zero")]
    DegenerateEvaluation,
    #[error("enclosure of the target number cannot be tightened enough (last tail_at {tail_at})")]
    PrecisionExhausted { tail_at: usize },
    #[error("error bracket missing; run the bracket computation first")]
    MissingBracket,
    #[error("effective exponent needs err_lo > 0 and q >= 2")]
    ExponentPrecondition,
    #[error("bound needs 0 < delta <= rho and theta >= 1")]
    BoundDomain,
    #[error("bound inapplicable: delta <= 1 at order {l}; smallest usable order is {minimal_l}")]
    BoundInapplicable { l: usize, minimal_l: usize },
    #[error("Hankel determinant of order {order} vanishes; nonvanishing certification failed")]
    VanishingHankel { order: usize },
    #[error(
        "covering condition fails: {uncovered} is not within the radius of any admitted order"
    )]
    Uncovered { uncovered: u64 },
    #[error("admitted orders must lie inside the window [{lo}, {hi}]")]
    OutsideWindow { lo: u64, hi: u64 },
    #[error("no admissible orders in the window")]
    EmptyWindow,
    #[error("sandwich threshold not found below the iteration cap")]
    ThresholdNotFound,
}

fn pow_usize(k: usize, m: usize) -> Result<usize, IrrError> {
    let mut acc: usize = 1;
    for _ in 0..m {
        acc = acc
            .checked_mul(k)
            .ok_or(IrrError::SpreadOverflow { k, m })?;
    }
    Ok(acc)
}

/// The functional equation composed with itself m times:
/// f(x) = A_m(x)/B_m(x) + C_m(x) f(x^{k^m}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedEquation {
    pub m: usize,
    pub a_m: IntPoly,
    pub b_m: IntPoly,
    pub c_m: IntPoly,
}

/// Builds A_m, B_m, C_m by exact polynomial products and divisions and
/// checks the degree bounds
/// deg A_m <= (alpha+beta+gamma) k^m, deg B_m <= beta k^m,
/// deg C_m <= gamma k^m.
pub fn iterate_equation(fe: &FunctionalEquation, m: usize) -> Result<IteratedEquation, IrrError> {
    if m == 0 {
        return Err(IrrError::DepthZero);
    }
    let k = fe.k();
    pow_usize(k, m)?;

    // B_m and C_m as running products of the spread factors
    let mut b_m = IntPoly::one();
    let mut c_m = IntPoly::one();
    let mut spreads_b = Vec::with_capacity(m);
    let mut c_partials = Vec::with_capacity(m); // prefix products of spread C
    for j in 0..m {
        let kj = pow_usize(k, j)?;
        let bj = fe.b().spread(kj);
        c_partials.push(c_m.clone());
        b_m = &b_m * &bj;
        c_m = &c_m * &fe.c().spread(kj);
        spreads_b.push(bj);
    }

    // A_m = A * B_m/B + sum_{j=1}^{m-1} (prod_{i<j} C(x^{k^i})) A(x^{k^j}) B_m / B(x^{k^j})
    let mut a_m = fe.a() * &b_m.div_exact(&spreads_b[0])?;
    for j in 1..m {
        let kj = pow_usize(k, j)?;
        let term = &(&c_partials[j] * &fe.a().spread(kj)) * &b_m.div_exact(&spreads_b[j])?;
        a_m = &a_m + &term;
    }

    let it = IteratedEquation { m, a_m, b_m, c_m };
    let km = pow_usize(k, m)?;
    let bound = |deg: Option<usize>, cap: usize| deg.is_none_or(|d| d <= cap);
    assert!(
        bound(it.a_m.degree(), (fe.alpha() + fe.beta() + fe.gamma()) * km)
            && bound(it.b_m.degree(), fe.beta() * km)
            && bound(it.c_m.degree(), fe.gamma() * km),
        "iterated equation degree bound violated"
    );
    Ok(it)
}

impl IteratedEquation {
    /// Coefficientwise check of f = A_m/B_m + C_m f(x^{k^m}) through
    /// `order` terms; returns the first mismatching index if any.
    pub fn check_series_identity(
        &self,
        fe: &FunctionalEquation,
        seq: &SequenceSpec,
        order: usize,
    ) -> Result<Option<usize>, IrrError> {
        let terms = seq.prefix(order)?;
        let f = RatSeries::from_terms(&terms, order).map_err(SeqError::Series)?;
        let km = pow_usize(fe.k(), self.m)?;
        let rhs = poly_quotient_series(&self.a_m, &self.b_m, order)
            .map_err(SeqError::Series)?
            .add(&RatSeries::from_poly(&self.c_m, order).mul(&f.spread(km)));
        Ok(f.first_mismatch(&rhs))
    }
}

/// One constructed rational approximation to f(1/b).
#[derive(Clone, Debug)]
pub struct ApproximationRecord {
    pub l: usize,
    pub m: usize,
    pub b: u64,
    /// Unreduced integer pair; q > 0 after sign normalization. The growth
    /// bounds concern this pair.
    pub p: BigInt,
    pub q: BigInt,
    /// The gcd-reduced pair, reported as metadata.
    pub p_reduced: BigInt,
    pub q_reduced: BigInt,
    /// Exact bracket of |f(1/b) - p/q| once the bracket pass ran.
    pub err_lo: Option<BigRational>,
    pub err_hi: Option<BigRational>,
    pub eff_exp: Option<EffectiveExponent>,
}

/// f64 rendering of an exact rational, safe for values far outside the
/// f64 exponent range.
pub fn approx_f64(x: &BigRational) -> f64 {
    lnum::rat_to_f64(x)
}

/// Scale Y_l = alpha + beta + gamma + l.
pub fn scale_exponent(fe: &FunctionalEquation, l: usize) -> usize {
    fe.alpha() + fe.beta() + fe.gamma() + l
}

/// Composes the approximant with the m-fold iterated equation and evaluates
/// at 1/b:
/// P_{l,m} = A_m Q_l(x^{k^m}) + B_m C_m P_l(x^{k^m}),
/// Q_{l,m} = B_m Q_l(x^{k^m}),
/// p = b^{Y_l k^m} P_{l,m}(1/b), q likewise. The integer-cleared primitive
/// (P_l, Q_l) pair keeps both evaluations integral.
pub fn build_convergent(
    fe: &FunctionalEquation,
    ap: &PadeApproximant,
    m: usize,
    b: u64,
) -> Result<ApproximationRecord, IrrError> {
    if b < 2 {
        return Err(IrrError::BaseTooSmall(b));
    }
    if m == 0 {
        return Err(IrrError::DepthZero);
    }
    if ap.degenerate {
        return Err(IrrError::DegenerateLeadingCoefficient);
    }
    let l = ap.k;
    let km = pow_usize(fe.k(), m)?;
    let it = iterate_equation(fe, m)?;
    let (p_l, q_l, _lambda) = ap.integer_cleared();

    let q_spread = q_l.spread(km);
    let p_lm = &(&it.a_m * &q_spread) + &(&(&it.b_m * &it.c_m) * &p_l.spread(km));
    let q_lm = &it.b_m * &q_spread;

    let y = scale_exponent(fe, l);
    let degree_cap = y
        .checked_mul(km)
        .ok_or(IrrError::SpreadOverflow { k: fe.k(), m })?;
    assert!(
        p_lm.degree().is_none_or(|d| d <= degree_cap),
        "numerator degree exceeds Y_l k^m"
    );
    assert!(
        q_lm.degree().is_none_or(|d| d <= (fe.beta() + l) * km),
        "denominator degree exceeds (beta + l) k^m"
    );

    let base = BigInt::from(b);
    let mut p = p_lm.eval_scaled_reciprocal(&base, degree_cap)?;
    let mut q = q_lm.eval_scaled_reciprocal(&base, degree_cap)?;
    if q.is_zero() {
        return Err(IrrError::DegenerateEvaluation);
    }
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    let g = p.abs().gcd(&q);
    let (p_reduced, q_reduced) = (&p / &g, &q / &g);
    Ok(ApproximationRecord {
        l,
        m,
        b,
        p,
        q,
        p_reduced,
        q_reduced,
        err_lo: None,
        err_hi: None,
        eff_exp: None,
    })
}

/// Exact rational interval [lo, hi] containing f(1/b), from `tail_at`
/// sequence terms and the geometric tail bound for 0/1 terms:
/// hi = lo + b^{-tail_at} * b/(b-1).
pub fn xi_enclosure(
    seq: &SequenceSpec,
    b: u64,
    tail_at: usize,
) -> Result<(BigRational, BigRational), IrrError> {
    assert!(tail_at >= 1, "tail_at must be at least 1");
    if b < 2 {
        return Err(IrrError::BaseTooSmall(b));
    }
    let terms = seq.prefix(tail_at)?;
    if let Some(index) = terms.iter().position(|&t| t != 0 && t != 1) {
        return Err(IrrError::UnsupportedAlphabet { index });
    }
    let base = BigInt::from(b);
    // lo = sum f_i b^{tail-1-i} / b^{tail-1}
    let mut acc = BigInt::zero();
    for &t in &terms {
        acc = acc * &base + t;
    }
    let denom = base.pow((tail_at - 1) as u32);
    let lo = BigRational::new(acc, denom.clone());
    let tail = BigRational::new(BigInt::one(), denom * (&base - 1));
    let hi = &lo + tail;
    Ok((lo, hi))
}

/// Outcome of comparing the exact error of one convergent against the
/// two-sided bracket
/// [ (1/2)|h| zeta^m x^E, 3|h| eta^m x^E ],  E = 2 l k^m + s (k^m - 1)/(k - 1).
#[derive(Clone, Debug, Serialize)]
pub struct SandwichCheck {
    pub l: usize,
    pub m: usize,
    /// Depth from which the bracket provably applies.
    pub m0: usize,
    pub exponent: usize,
    pub applicable: bool,
    /// Whether the rigorous error enclosure sits inside the bracket;
    /// `None` below m0 (reported as not applicable, not as failure).
    pub inside: Option<bool>,
    pub lower: String,
    pub upper: String,
}

/// Smallest depth m0 from which the composed error bracket is provably
/// valid: a constructive tail constant c with
/// |f(y) - P_l(y)/Q_l(y) - h y^{2l}| <= c y^{2l+1}  on (0, 2^{-k^m}]
/// must satisfy c 2^{-k^m} <= |h|/2. Uses coefficient bounds from the
/// normalized denominator and 0/1 sequence terms.
pub fn sandwich_threshold(
    fe: &FunctionalEquation,
    ap: &PadeApproximant,
) -> Result<usize, IrrError> {
    if ap.degenerate {
        return Err(IrrError::DegenerateLeadingCoefficient);
    }
    let habs = ap.h.abs();
    let coeff_sum: BigRational = ap.q.iter().map(Signed::abs).sum();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for m in 1..=16usize {
        let km = match pow_usize(fe.k(), m) {
            Ok(v) if v <= 1 << 20 => v,
            _ => break,
        };
        let rho = BigRational::new(BigInt::one(), BigInt::one() << km);
        // D = 1 - sum_{j>=1} |q_j| rho^j
        let mut d = BigRational::one();
        let mut rho_pow = BigRational::one();
        for qj in ap.q.iter().skip(1) {
            rho_pow *= &rho;
            d -= qj.abs() * &rho_pow;
        }
        if !d.is_positive() {
            continue;
        }
        let c = &coeff_sum * (BigRational::one() + &habs) / ((BigRational::one() - &rho) * d);
        if c * &rho <= &habs * &half {
            return Ok(m);
        }
    }
    Err(IrrError::ThresholdNotFound)
}

/// Computes the exact error bracket of a convergent and checks it against
/// the two-sided bound, auto-tightening the enclosure of f(1/b) until the
/// comparison is decisive.
pub fn error_bracket(
    rec: &mut ApproximationRecord,
    fe: &FunctionalEquation,
    ap: &PadeApproximant,
    seq: &SequenceSpec,
) -> Result<SandwichCheck, IrrError> {
    if ap.degenerate {
        return Err(IrrError::DegenerateLeadingCoefficient);
    }
    let (l, m, b) = (rec.l, rec.m, rec.b);
    let km = pow_usize(fe.k(), m)?;
    let s = fe.s();
    let exponent = 2 * l * km + s * (km - 1) / (fe.k() - 1);

    let habs = ap.h.abs();
    let x_pow = BigRational::new(BigInt::one(), BigInt::from(b).pow(exponent as u32));
    let zeta = fe.zeta(b);
    if zeta.is_zero() {
        return Err(IrrError::ShiftVanishesAtBase { base: b });
    }
    let zeta_m = rational_pow(&zeta, m);
    let eta_m = BigRational::from_integer(fe.eta().pow(m as u32));
    let lower = BigRational::new(BigInt::one(), BigInt::from(2)) * &habs * zeta_m * &x_pow;
    let upper = BigRational::from_integer(BigInt::from(3)) * &habs * eta_m * &x_pow;

    // enclosure tight enough to decide the bracket and to carry ~80 spare
    // bits into the exponent computation
    let lower_bits = (lower.denom().bits() as i64 - lower.numer().bits() as i64).max(1) as usize;
    let target_bits = lower_bits + 96;
    let ratio = BigRational::new(rec.p.clone(), rec.q.clone());
    let bits_per_digit = (63 - b.leading_zeros()) as usize; // floor(log2 b) >= 1
    let mut tail_at = target_bits / bits_per_digit + 2;
    let mut attempts = 0;
    let (err_lo, err_hi) = loop {
        let (xi_lo, xi_hi) = xi_enclosure(seq, b, tail_at)?;
        let d_lo = &xi_lo - &ratio;
        let d_hi = &xi_hi - &ratio;
        if d_lo.is_positive() {
            break (d_lo, d_hi);
        }
        if d_hi.is_negative() {
            break (-d_hi, -d_lo);
        }
        attempts += 1;
        if attempts > 6 {
            return Err(IrrError::PrecisionExhausted { tail_at });
        }
        tail_at *= 2;
    };

    let m0 = sandwich_threshold(fe, ap)?;
    let applicable = m >= m0;
    let inside = applicable.then(|| err_lo >= lower && err_hi <= upper);
    rec.err_lo = Some(err_lo);
    rec.err_hi = Some(err_hi);
    Ok(SandwichCheck {
        l,
        m,
        m0,
        exponent,
        applicable,
        inside,
        lower: lower.to_string(),
        upper: upper.to_string(),
    })
}

fn rational_pow(x: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Effective exponent -log|xi - p/q| / log q with a rigorous rational
/// interval and an f64 rendering of the midpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveExponent {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: f64,
}

/// Computes the effective exponent of a bracketed record through interval
/// logarithms.
pub fn effective_exponent(rec: &ApproximationRecord) -> Result<EffectiveExponent, IrrError> {
    let (err_lo, err_hi) = match (&rec.err_lo, &rec.err_hi) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(IrrError::MissingBracket),
    };
    if !err_lo.is_positive() || rec.q < BigInt::from(2) {
        return Err(IrrError::ExponentPrecondition);
    }
    let scale = lnum::DEFAULT_SCALE;
    let (l1_lo, _) = lnum::ln_interval(err_lo, scale);
    let (_, l2_hi) = lnum::ln_interval(err_hi, scale);
    let q_rat = BigRational::from_integer(rec.q.clone());
    let (lq_lo, lq_hi) = lnum::ln_interval(&q_rat, scale);
    // -ln err in [-l2_hi, -l1_lo], ln q in [lq_lo, lq_hi] with lq_lo > 0
    let num_lo = -l2_hi;
    let num_hi = -l1_lo;
    let candidates = [
        &num_lo / &lq_lo,
        &num_lo / &lq_hi,
        &num_hi / &lq_lo,
        &num_hi / &lq_hi,
    ];
    let lo = candidates.iter().min().unwrap().clone();
    let hi = candidates.iter().max().unwrap().clone();
    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    let value = lnum::rat_to_f64(&mid);
    Ok(EffectiveExponent { lo, hi, value })
}

/// Generic exponent criterion: a sequence of approximations with
/// denominator growth exponent theta and error window exponents
/// [1+delta, 1+rho] forces mu <= (1+rho) theta / delta.
pub fn exponent_upper_bound(
    rho: &BigRational,
    delta: &BigRational,
    theta: &BigRational,
) -> Result<BigRational, IrrError> {
    if !delta.is_positive() || delta > rho || theta < &BigRational::one() {
        return Err(IrrError::BoundDomain);
    }
    Ok((BigRational::one() + rho) * theta / delta)
}

/// How the nonvanishing of the Hankel determinants behind a bound was
/// certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// Determinants computed for the orders in question (exact or odd mod
    /// 2, both decisive).
    #[serde(rename = "verified-direct")]
    VerifiedDirect,
    /// Periodicity of the determinant parities, spot-verified at desk
    /// scale elsewhere.
    #[serde(rename = "theorem")]
    Theorem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundScope {
    SingleOrder { l: usize },
    Window { exponent: usize, lo: u64, hi: u64 },
}

/// A certified upper bound on the irrationality exponent.
#[derive(Clone, Debug)]
pub struct ExponentBound {
    pub scope: BoundScope,
    pub rho: BigRational,
    pub delta: BigRational,
    pub mu: BigRational,
    pub certification: Certification,
}

/// The single-order bound mu <= k rho_l / (delta_l - 1) with
/// rho_l = (2l + gamma)/Y_l and delta_l = 2l/Y_l. Requires delta_l > 1,
/// i.e. l > alpha + beta + gamma, and certifies H_l H_{l+1} != 0 from the
/// sequence (odd parity first, exact determinant as fallback).
pub fn single_order_bound(
    fe: &FunctionalEquation,
    seq: &SequenceSpec,
    l: usize,
) -> Result<ExponentBound, IrrError> {
    let y = scale_exponent(fe, l);
    if 2 * l <= y {
        return Err(IrrError::BoundInapplicable {
            l,
            minimal_l: fe.alpha() + fe.beta() + fe.gamma() + 1,
        });
    }
    let prefix = seq.prefix(2 * l + 2)?;
    for order in [l, l + 1] {
        let odd = BitMatrix::hankel_mod2(&prefix, 0, order, order)
            .and_then(|m| m.det_mod2())
            .expect("window fits the prefix");
        if !odd {
            let det = hankel_block(&prefix, 0, order, order)
                .and_then(|m| m.det_exact())
                .expect("window fits the prefix");
            if det.is_zero() {
                return Err(IrrError::VanishingHankel { order });
            }
        }
    }
    let y_rat = BigRational::from_integer(BigInt::from(y));
    let rho = BigRational::from_integer(BigInt::from(2 * l + fe.gamma())) / &y_rat;
    let delta = BigRational::from_integer(BigInt::from(2 * l)) / &y_rat;
    let k_rat = BigRational::from_integer(BigInt::from(fe.k()));
    let mu = &k_rat * &rho / (&delta - BigRational::one());
    Ok(ExponentBound {
        scope: BoundScope::SingleOrder { l },
        rho,
        delta,
        mu,
        certification: Certification::VerifiedDirect,
    })
}

/// Admissible Padé orders inside a window [k^{L-1}, k^L - 1], with the
/// provenance of their nonvanishing certificates.
#[derive(Clone, Debug)]
pub struct AdmissibleSet {
    pub members: Vec<u64>,
    pub certification: Certification,
}

/// Orders congruent to 1 mod 10 inside the window: for the paperfolding
/// families these have odd Hankel determinants at l and l+1 by the
/// period-10 parity tables.
pub fn admissible_mod10(
    fe: &FunctionalEquation,
    window_exponent: usize,
) -> Result<AdmissibleSet, IrrError> {
    let k = fe.k() as u64;
    let lo = k.pow(window_exponent as u32 - 1);
    let hi = k.pow(window_exponent as u32) - 1;
    let first = lo + (11 - lo % 10) % 10; // smallest l >= lo with l = 1 mod 10
    let members: Vec<u64> = (first..=hi).step_by(10).collect();
    if members.is_empty() {
        return Err(IrrError::EmptyWindow);
    }
    Ok(AdmissibleSet {
        members,
        certification: Certification::Theorem,
    })
}

/// The window bound
/// mu <= (rho_L / (delta_L - 1)) (1 + eps k (k + 1)),
/// with rho_L evaluated at l = k^L, delta_L at l = k^{L-1}, and eps the
/// largest gap between consecutive admissible orders divided by k^{L-1}.
pub fn windowed_bound(
    fe: &FunctionalEquation,
    window_exponent: usize,
    admissible: &AdmissibleSet,
) -> Result<ExponentBound, IrrError> {
    let k = fe.k() as u64;
    let lo = k.pow(window_exponent as u32 - 1);
    let hi = k.pow(window_exponent as u32) - 1;
    if admissible.members.is_empty() {
        return Err(IrrError::EmptyWindow);
    }
    if admissible.members.iter().any(|&l| l < lo || l > hi) {
        return Err(IrrError::OutsideWindow { lo, hi });
    }
    let max_gap = admissible
        .members
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(0)
        .max(1);
    let eps = BigRational::new(BigInt::from(max_gap), BigInt::from(lo));

    let delta_at = |l: u64| {
        let y = BigInt::from(l) + BigInt::from(fe.alpha() + fe.beta() + fe.gamma());
        BigRational::new(BigInt::from(2 * l), y)
    };
    let delta = delta_at(lo);
    if delta <= BigRational::one() {
        return Err(IrrError::BoundInapplicable {
            l: lo as usize,
            minimal_l: fe.alpha() + fe.beta() + fe.gamma() + 1,
        });
    }
    let l_hi = k.pow(window_exponent as u32);
    let y_hi = BigInt::from(l_hi) + BigInt::from(fe.alpha() + fe.beta() + fe.gamma());
    let rho = BigRational::new(BigInt::from(2 * l_hi + fe.gamma() as u64), y_hi);

    let k_rat = BigRational::from_integer(BigInt::from(fe.k()));
    let amplification = BigRational::one() + &eps * &k_rat * (&k_rat + BigRational::one());
    let mu = &rho / (&delta - BigRational::one()) * amplification;
    Ok(ExponentBound {
        scope: BoundScope::Window {
            exponent: window_exponent,
            lo,
            hi,
        },
        rho,
        delta,
        mu,
        certification: admissible.certification,
    })
}

/// Analytic and empirical growth-ratio bounds for the merged sequence
/// { l k^m : l admitted, m >= 1 }.
#[derive(Clone, Debug)]
pub struct RatioBoundReport {
    /// 1 + (k+1) R / k^{L-1}.
    pub analytic: BigRational,
    /// Largest consecutive ratio observed in the enumerated horizon.
    pub empirical_max: BigRational,
    /// First index from which every subsequent ratio stays below the
    /// analytic bound.
    pub stable_from: usize,
    pub enumerated: usize,
}

/// Checks the covering condition of the admitted set inside the window and
/// compares the analytic ratio bound against the enumerated merged
/// sequence.
pub fn merged_ratio_bound(
    members: &[u64],
    k: usize,
    window_exponent: usize,
    radius: u64,
    horizon_depth: usize,
) -> Result<RatioBoundReport, IrrError> {
    if members.is_empty() {
        return Err(IrrError::EmptyWindow);
    }
    let k64 = k as u64;
    let lo = k64.pow(window_exponent as u32 - 1);
    let hi = k64.pow(window_exponent as u32) - 1;
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted[0] < lo || *sorted.last().unwrap() > hi {
        return Err(IrrError::OutsideWindow { lo, hi });
    }
    // covering: every integer of the window within `radius` of a member
    if sorted[0] - lo > radius {
        return Err(IrrError::Uncovered { uncovered: lo });
    }
    if hi - sorted.last().unwrap() > radius {
        return Err(IrrError::Uncovered { uncovered: hi });
    }
    for w in sorted.windows(2) {
        if w[1] - w[0] > 2 * radius {
            return Err(IrrError::Uncovered {
                uncovered: w[0] + radius + 1,
            });
        }
    }

    let analytic = BigRational::one()
        + BigRational::new(BigInt::from((k as u64 + 1) * radius), BigInt::from(lo));

    let mut merged: Vec<u64> = Vec::new();
    for depth in 1..=horizon_depth {
        let factor = k64.pow(depth as u32);
        for &l in &sorted {
            merged.push(l * factor);
        }
    }
    merged.sort_unstable();
    merged.dedup();
    let ratios: Vec<BigRational> = merged
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[1]), BigInt::from(w[0])))
        .collect();
    let empirical_max = ratios
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::one);
    let stable_from = (0..ratios.len())
        .find(|&j| ratios[j..].iter().all(|r| r < &analytic))
        .unwrap_or(ratios.len());
    Ok(RatioBoundReport {
        analytic,
        empirical_max,
        stable_from,
        enumerated: merged.len(),
    })
}

// -- JSON report types ------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct FeReport {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub s: usize,
}

impl FeReport {
    pub fn new(fe: &FunctionalEquation) -> Self {
        FeReport {
            a: fe.a().to_string(),
            b: fe.b().to_string(),
            c: fe.c().to_string(),
            k: fe.k(),
            alpha: fe.alpha(),
            beta: fe.beta(),
            gamma: fe.gamma(),
            s: fe.s(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub l: usize,
    pub m: usize,
    pub b: u64,
    pub p: String,
    pub q: String,
    pub p_reduced: String,
    pub q_reduced: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub err_lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub err_hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eff_exp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eff_exp_lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eff_exp_hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichCheck>,
}

impl RecordReport {
    pub fn new(rec: &ApproximationRecord, sandwich: Option<SandwichCheck>) -> Self {
        RecordReport {
            l: rec.l,
            m: rec.m,
            b: rec.b,
            p: rec.p.to_string(),
            q: rec.q.to_string(),
            p_reduced: rec.p_reduced.to_string(),
            q_reduced: rec.q_reduced.to_string(),
            err_lo: rec.err_lo.as_ref().map(ToString::to_string),
            err_hi: rec.err_hi.as_ref().map(ToString::to_string),
            eff_exp: rec.eff_exp.as_ref().map(|e| e.value),
            eff_exp_lo: rec.eff_exp.as_ref().map(|e| e.lo.to_string()),
            eff_exp_hi: rec.eff_exp.as_ref().map(|e| e.hi.to_string()),
            sandwich,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub window_exponent: Option<usize>,
    pub rho: String,
    pub delta: String,
    pub mu_bound: String,
    pub mu_value: f64,
    pub certification: Certification,
}

impl BoundReport {
    pub fn new(bound: &ExponentBound) -> Self {
        let (kind, l, window_exponent) = match bound.scope {
            BoundScope::SingleOrder { l } => ("single-order", Some(l), None),
            BoundScope::Window { exponent, .. } => ("window", None, Some(exponent)),
        };
        BoundReport {
            kind,
            l,
            window_exponent,
            rho: bound.rho.to_string(),
            delta: bound.delta.to_string(),
            mu_bound: bound.mu.to_string(),
            mu_value: lnum::rat_to_f64(&bound.mu),
            certification: bound.certification,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub fe: FeReport,
    pub records: Vec<RecordReport>,
    pub bounds: Vec<BoundReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::pade;
    use crate::seq::paperfolding_closed;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn paperfolding_series(order: usize) -> RatSeries {
        RatSeries::from_terms(&paperfolding_closed(order), order).unwrap()
    }

    fn pf_pade(l: usize) -> PadeApproximant {
        pade(&paperfolding_series(2 * l + 2), l).unwrap()
    }

    #[test]
    fn iteration_base_and_step() {
        let fe = FunctionalEquation::paperfolding();
        let it1 = iterate_equation(&fe, 1).unwrap();
        assert_eq!(&it1.a_m, fe.a());
        assert_eq!(&it1.b_m, fe.b());
        assert_eq!(&it1.c_m, fe.c());

        let it2 = iterate_equation(&fe, 2).unwrap();
        assert_eq!(
            it2.b_m,
            IntPoly::from_i64(&[1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1])
        );
        assert_eq!(it2.c_m, IntPoly::from_i64(&[0, 0, 0, 1]));
        assert_eq!(it2.a_m, IntPoly::from_i64(&[1, 1, 0, 0, 0, -1, 0, 0, -1]));
    }

    #[test]
    fn iteration_degrees_and_series_identity() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let it5 = iterate_equation(&fe, 5).unwrap();
        assert_eq!(it5.b_m.degree(), Some(4 * 31)); // 4(2^5 - 1) <= 4 * 32
        for m in 1..=6 {
            let it = iterate_equation(&fe, m).unwrap();
            let order = 2 * it.b_m.degree().unwrap_or(1);
            assert_eq!(
                it.check_series_identity(&fe, &seq, order).unwrap(),
                None,
                "m={m}"
            );
        }
        assert_eq!(iterate_equation(&fe, 0).unwrap_err(), IrrError::DepthZero);
    }

    #[test]
    fn enclosure_digits_and_tail() {
        let seq = SequenceSpec::paperfolding();
        let (lo, hi) = xi_enclosure(&seq, 2, 4).unwrap();
        assert_eq!(lo, rat(13, 8));
        assert_eq!(hi, rat(14, 8));
        let (lo1, hi1) = xi_enclosure(&seq, 2, 1).unwrap();
        assert_eq!((lo1, hi1), (rat(1, 1), rat(2, 1)));
        // width shrinks by the base per extra digit
        let w4 = &hi - &lo;
        let (lo5, hi5) = xi_enclosure(&seq, 2, 5).unwrap();
        assert_eq!(&hi5 - &lo5, w4 / rat(2, 1));
        assert_eq!(
            xi_enclosure(&SequenceSpec::thue_morse_pm1(), 2, 4).unwrap_err(),
            IrrError::UnsupportedAlphabet { index: 1 }
        );
    }

    #[test]
    fn convergent_integers_frozen() {
        // frozen from an independent exact computation at l=11, m=3, b=2
        let fe = FunctionalEquation::paperfolding();
        let ap = pf_pade(11);
        let rec = build_convergent(&fe, &ap, 3, 2).unwrap();
        assert_eq!(scale_exponent(&fe, 11), 16);
        assert_eq!(
            rec.p.to_string(),
            "21041766470123466228051085591695763660800"
        );
        assert_eq!(
            rec.q.to_string(),
            "12366798757319679610673306918114164224000"
        );
        assert_eq!((&rec.p / &rec.p_reduced).to_string(), "15667200");
        assert!(rec.q.is_positive());
    }

    #[test]
    fn convergent_rejects_degenerate() {
        let fe = FunctionalEquation::paperfolding();
        let ones = RatSeries::from_terms(&[1, 0, 0, 0, 0, 0], 6).unwrap();
        let ap = pade(&ones, 1).unwrap();
        assert!(ap.degenerate);
        assert_eq!(
            build_convergent(&fe, &ap, 1, 2).unwrap_err(),
            IrrError::DegenerateLeadingCoefficient
        );
        assert_eq!(
            build_convergent(&fe, &pf_pade(1), 1, 1).unwrap_err(),
            IrrError::BaseTooSmall(1)
        );
    }

    #[test]
    fn first_depth_contact_order() {
        // f - P_{l,1}/Q_{l,1} vanishes through order 2 l k - 1
        let fe = FunctionalEquation::paperfolding();
        let l = 3;
        let ap = pf_pade(l);
        let it = iterate_equation(&fe, 1).unwrap();
        let (p_l, q_l, _) = ap.integer_cleared();
        let k = fe.k();
        let p_lm = &(&it.a_m * &q_l.spread(k)) + &(&(&it.b_m * &it.c_m) * &p_l.spread(k));
        let q_lm = &it.b_m * &q_l.spread(k);
        let order = 2 * l * k + 4;
        let f = paperfolding_series(order);
        let err = f.sub(&poly_quotient_series(&p_lm, &q_lm, order).unwrap());
        for i in 0..2 * l * k {
            assert!(err.coeff(i).is_zero(), "coefficient {i}");
        }
        // first surviving term sits at 2 l k + s
        assert!(!err.coeff(2 * l * k + fe.s()).is_zero());
    }

    #[test]
    fn threshold_for_small_orders() {
        // frozen: c(1) = 64/9 at depth 1 (so 64/36 > 1/2 rules depth 1
        // out) and the depth-2 constant 4*(256/225) satisfies the
        // activation inequality; for l=11 the constant activates at 3
        let fe = FunctionalEquation::paperfolding();
        assert_eq!(sandwich_threshold(&fe, &pf_pade(1)).unwrap(), 2);
        assert_eq!(sandwich_threshold(&fe, &pf_pade(11)).unwrap(), 3);
    }

    #[test]
    fn bracket_small_case() {
        // l=1, m=2: exponent 2*1*4 + 3 = 11, bracket [2^-12, 3*2^-11]
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(1);
        assert_eq!(ap.h, rat(-1, 1));
        let mut rec = build_convergent(&fe, &ap, 2, 2).unwrap();
        let check = error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
        assert_eq!(check.exponent, 11);
        assert!(check.applicable);
        assert_eq!(check.inside, Some(true));
        let err_lo = rec.err_lo.clone().unwrap();
        let err_hi = rec.err_hi.clone().unwrap();
        assert!(err_lo >= rat(1, 4096) && err_hi <= rat(3, 2048));
    }

    #[test]
    fn bracket_mid_depth() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let mut rec = build_convergent(&fe, &ap, 6, 2).unwrap();
        let check = error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
        assert_eq!(check.exponent, 22 * 64 + 63);
        assert!(check.applicable);
        assert_eq!(check.inside, Some(true));
    }

    #[test]
    fn bracket_at_base_three() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let mut rec = build_convergent(&fe, &ap, 3, 3).unwrap();
        let check = error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
        assert!(check.applicable);
        assert_eq!(check.inside, Some(true));
        let eff = effective_exponent(&rec).unwrap();
        assert!(eff.value > 1.0 && eff.value < 2.0, "eff {}", eff.value);
    }

    #[test]
    fn effective_exponent_band() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let mut rec = build_convergent(&fe, &ap, 8, 2).unwrap();
        error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
        let eff = effective_exponent(&rec).unwrap();
        assert!(eff.lo <= eff.hi);
        assert!(
            (eff.hi.clone() - eff.lo.clone()) < rat(1, 1_000_000_000),
            "interval too wide"
        );
        assert!(eff.value > 1.370 && eff.value < 1.443, "eff {}", eff.value);
        rec.eff_exp = Some(eff);
    }

    #[test]
    fn effective_exponent_of_perfect_square_error() {
        // |xi - p/q| = q^{-2} exactly gives exponent 2
        let rec = ApproximationRecord {
            l: 1,
            m: 1,
            b: 2,
            p: BigInt::from(22),
            q: BigInt::from(7),
            p_reduced: BigInt::from(22),
            q_reduced: BigInt::from(7),
            err_lo: Some(rat(1, 49)),
            err_hi: Some(rat(1, 49)),
            eff_exp: None,
        };
        let eff = effective_exponent(&rec).unwrap();
        let two = rat(2, 1);
        assert!(eff.lo <= two && two <= eff.hi);
        assert!((eff.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn growth_criterion_values() {
        assert_eq!(
            exponent_upper_bound(&rat(1, 1), &rat(1, 1), &rat(1, 1)).unwrap(),
            rat(2, 1)
        );
        assert_eq!(
            exponent_upper_bound(&rat(7, 16), &rat(6, 16), &rat(2, 1)).unwrap(),
            rat(23, 3)
        );
        assert_eq!(
            exponent_upper_bound(&rat(1, 2), &rat(2, 5), &rat(11, 10)).unwrap(),
            rat(33, 8) // 4.125
        );
        assert_eq!(
            exponent_upper_bound(&rat(1, 2), &rat(-1, 2), &rat(2, 1)).unwrap_err(),
            IrrError::BoundDomain
        );
    }

    #[test]
    fn single_order_values() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let b11 = single_order_bound(&fe, &seq, 11).unwrap();
        assert_eq!(b11.rho, rat(23, 16));
        assert_eq!(b11.delta, rat(22, 16));
        assert_eq!(b11.mu, rat(23, 3));
        let b21 = single_order_bound(&fe, &seq, 21).unwrap();
        assert_eq!(b21.mu, rat(43, 8));
        assert_eq!(
            single_order_bound(&fe, &seq, 5).unwrap_err(),
            IrrError::BoundInapplicable { l: 5, minimal_l: 6 }
        );
    }

    #[test]
    fn ratio_bound_examples() {
        // sparse admitted set
        let r = merged_ratio_bound(&[17, 21, 25, 29], 2, 5, 4, 6).unwrap();
        assert_eq!(r.analytic, rat(7, 4)); // 1 + 3*4/16
        assert_eq!(r.empirical_max, rat(21, 17));
        assert_eq!(r.stable_from, 0);
        // dense window
        let all: Vec<u64> = (16..=31).collect();
        let r = merged_ratio_bound(&all, 2, 5, 1, 6).unwrap();
        assert_eq!(r.analytic, rat(19, 16));
        assert_eq!(r.empirical_max, rat(17, 16));
        // single member: pure geometric growth
        let r = merged_ratio_bound(&[16], 2, 5, 16, 6).unwrap();
        assert_eq!(r.analytic, rat(4, 1));
        assert_eq!(r.empirical_max, rat(2, 1));
        // covering violations are named
        assert_eq!(
            merged_ratio_bound(&[17, 29], 2, 5, 4, 3).unwrap_err(),
            IrrError::Uncovered { uncovered: 22 }
        );
        assert_eq!(
            merged_ratio_bound(&[24], 2, 5, 4, 3).unwrap_err(),
            IrrError::Uncovered { uncovered: 16 }
        );
    }

    #[test]
    fn windowed_bound_values() {
        // frozen exact evaluations of the window formula
        let fe = FunctionalEquation::paperfolding();
        let b10 = windowed_bound(&fe, 10, &admissible_mod10(&fe, 10).unwrap()).unwrap();
        assert_eq!(b10.rho, rat(2049, 1029));
        assert_eq!(b10.delta, rat(1024, 517));
        assert_eq!(b10.mu, rat(3884221, 1712256));
        let b13 = windowed_bound(&fe, 13, &admissible_mod10(&fe, 13).unwrap()).unwrap();
        assert_eq!(b13.mu, rat(69815485515, 34338741248));
        // monotone decreasing over the tested window exponents
        let mut last: Option<BigRational> = None;
        for exp in 8..=13 {
            let b = windowed_bound(&fe, exp, &admissible_mod10(&fe, exp).unwrap()).unwrap();
            if let Some(prev) = last {
                assert!(b.mu < prev, "exponent {exp}");
            }
            last = Some(b.mu);
        }
        assert_eq!(b13.certification, Certification::Theorem);
    }

    #[test]
    fn refuses_base_where_shift_vanishes() {
        // C = x - 2x^2 vanishes at 1/2, so the lower bound has no teeth
        let fe = FunctionalEquation::new(
            IntPoly::one(),
            IntPoly::from_i64(&[1, 0, 0, 0, -1]),
            IntPoly::from_i64(&[0, 1, -2]),
            2,
        )
        .unwrap();
        assert!(fe.zeta(2).is_zero());
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let mut rec = build_convergent(&fe, &ap, 3, 2).unwrap();
        assert_eq!(
            error_bracket(&mut rec, &fe, &ap, &seq).unwrap_err(),
            IrrError::ShiftVanishesAtBase { base: 2 }
        );
    }

    #[test]
    fn band_membership_from_computed_threshold() {
        // find the first depth whose rigorous exponent interval fits the
        // [delta - 0.05, rho + 0.05] band, then demand it stays inside for
        // every deeper computed record
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let lo_band = rat(1375, 1000) - rat(5, 100);
        let hi_band = rat(14375, 10000) + rat(5, 100);
        let mut threshold = None;
        for m in 1..=8 {
            let mut rec = build_convergent(&fe, &ap, m, 2).unwrap();
            error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
            let eff = effective_exponent(&rec).unwrap();
            let inside = eff.lo >= lo_band && eff.hi <= hi_band;
            match threshold {
                None if inside => threshold = Some(m),
                Some(t) => assert!(inside, "band left again at m={m} after entering at {t}"),
                None => {}
            }
        }
        let t = threshold.expect("band never entered");
        assert!(t <= 8);
    }

    #[test]
    fn report_serialization_uses_decimal_strings() {
        let fe = FunctionalEquation::paperfolding();
        let seq = SequenceSpec::paperfolding();
        let ap = pf_pade(11);
        let mut rec = build_convergent(&fe, &ap, 3, 2).unwrap();
        let sandwich = error_bracket(&mut rec, &fe, &ap, &seq).unwrap();
        rec.eff_exp = Some(effective_exponent(&rec).unwrap());
        let report = ExponentReport {
            fe: FeReport::new(&fe),
            records: vec![RecordReport::new(&rec, Some(sandwich))],
            bounds: vec![BoundReport::new(
                &single_order_bound(&fe, &seq, 11).unwrap(),
            )],
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["fe"]["B"], "1 - x^4");
        assert_eq!(
            json["records"][0]["p"],
            "21041766470123466228051085591695763660800"
        );
        assert_eq!(json["bounds"][0]["mu_bound"], "23/3");
        assert_eq!(json["bounds"][0]["certification"], "verified-direct");
    }
}
