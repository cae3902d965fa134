//! Cauchy-transform series, the R-transform by compositional inversion, free
//! convolution, free compression, and dilation.
//!
//! Series live in the variable `w = 1/z`: the Cauchy transform
//! `G(z) = 1/z + sum_k m_k z^{-k-1}` is stored as `G = w M(w)` with
//! `M(w) = 1 + sum_k m_k w^k`, and the compositional inverse
//! `K(z) = 1/z + sum_{k>=1} R_k z^{k-1}` carries the free cumulants.
//! (The convention `R_1 = first moment` pins the index offset; it is
//! validated by the round-trip identity with the cumulants module.)

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::rational_pow;
use crate::cumulants::{CumulantSequence, MomentSequence};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    /// The Cauchy series does not start with coefficient 1 (G ~ 1/z).
    #[error("malformed leading coefficient; expected G ~ 1/z")]
    BadLeadingCoefficient,
    /// An operand is truncated below the requested order.
    #[error("operand order {have} below requested order {want}")]
    OrderTooSmall { have: usize, want: usize },
    /// Compression parameter outside (0, 1].
    #[error("compression parameter must lie in (0, 1]")]
    CompressionOutOfRange,
    /// Dilation by zero.
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    /// Adding cumulants of mismatched kind (should not happen internally).
    #[error("cumulant kind mismatch")]
    KindMismatch,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Coefficients `(1, m_1, .., m_K)` of `M(w)`, so that `G = w M(w)`.
pub fn cauchy_series(moments: &MomentSequence) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(moments.order() + 1);
    coeffs.push(BigRational::one());
    coeffs.extend_from_slice(moments.values());
    TruncatedSeries::new(coeffs)
}

/// Free cumulants by compositional inversion of the Cauchy series.
///
/// With `u(w) = w M(w)` and `P(w) = (1 - M(w)^{-1}) / w`, the defining
/// equation `K(G(z)) = z` becomes `sum_{k>=1} R_k u(w)^{k-1} = P(w)`, which is
/// triangular in the `R_k` because `u^{k-1} = w^{k-1} (1 + ...)`.
pub fn r_coefficients_via_inversion(
    g: &TruncatedSeries,
) -> Result<CumulantSequence, TransformError> {
    if !g.coeff(0).is_one() {
        return Err(TransformError::BadLeadingCoefficient);
    }
    let order = g.order(); // number of cumulants recoverable
    if order == 0 {
        return Ok(CumulantSequence::free(Vec::new()));
    }
    let inv = g.inverse(order)?;
    // (1 - M^{-1}) has zero constant term; divide by w.
    let residual = TruncatedSeries::constant(BigRational::one(), order).sub(&inv);
    let mut residual = residual.shift_down(); // degrees 0..order-1
    let u = g.shift_up().truncate(order - 1); // w*M to the degree we need
    let mut u_power = TruncatedSeries::constant(BigRational::one(), order - 1);
    let mut r = Vec::with_capacity(order);
    for k in 1..=order {
        let rk = residual.coeff(k - 1);
        residual = residual.sub(&u_power.scale(&rk));
        r.push(rk);
        if k < order {
            u_power = u_power.mul_trunc(&u, order - 1);
        }
    }
    Ok(CumulantSequence::free(r))
}

/// The K-series `1/z + sum R_k z^{k-1}` evaluated symbolically: returns
/// `w * K(G)` as a series in `w`, which must equal 1 when the cumulants match
/// the moments (this is `K(G(z)) = z` cleared of the pole).
pub fn compose_k_with_g(
    cumulants: &CumulantSequence,
    g: &TruncatedSeries,
) -> Result<TruncatedSeries, TransformError> {
    if !g.coeff(0).is_one() {
        return Err(TransformError::BadLeadingCoefficient);
    }
    let order = g.order();
    // w * K(G) = M^{-1} + w * sum_k R_k u^{k-1},  u = w M.
    let inv = g.inverse(order)?;
    let u = g.shift_up().truncate(order);
    let mut u_power = TruncatedSeries::constant(BigRational::one(), order);
    let mut tail = TruncatedSeries::constant(BigRational::zero(), order);
    for k in 1..=cumulants.order().min(order) {
        tail = tail.add(&u_power.scale(cumulants.get(k)));
        u_power = u_power.mul_trunc(&u, order);
    }
    Ok(inv.add(&tail.shift_up()))
}

/// Free convolution at the moment level: cumulants add.
pub fn free_convolve(
    a: &MomentSequence,
    b: &MomentSequence,
    order: usize,
) -> Result<MomentSequence, TransformError> {
    let a = truncate_for(a, order)?;
    let b = truncate_for(b, order)?;
    let sum = a
        .to_free_cumulants()
        .add(&b.to_free_cumulants())
        .map_err(|_| TransformError::KindMismatch)?;
    Ok(sum.to_moments())
}

/// Free compression by `t` in (0, 1]: `R_k -> t^{k-1} R_k` on free cumulants,
/// the law of a normalized corner `p a p` with trace(p) = t.
pub fn free_compress(
    moments: &MomentSequence,
    t: &BigRational,
) -> Result<MomentSequence, TransformError> {
    if !t.is_positive() || t > &BigRational::one() {
        return Err(TransformError::CompressionOutOfRange);
    }
    let r = moments.to_free_cumulants();
    let compressed: Vec<BigRational> = r
        .values()
        .iter()
        .enumerate()
        .map(|(i, rk)| rational_pow(t, i as i64) * rk)
        .collect();
    Ok(CumulantSequence::free(compressed).to_moments())
}

/// Apply the compression rule directly to a cumulant sequence.
pub fn compress_cumulants(
    cumulants: &CumulantSequence,
    t: &BigRational,
) -> Result<CumulantSequence, TransformError> {
    if !t.is_positive() || t > &BigRational::one() {
        return Err(TransformError::CompressionOutOfRange);
    }
    let values = cumulants
        .values()
        .iter()
        .enumerate()
        .map(|(i, rk)| rational_pow(t, i as i64) * rk)
        .collect();
    Ok(CumulantSequence::new(cumulants.kind(), values))
}

/// Dilation by `lambda != 0`: `m_k -> lambda^k m_k` (the law of `lambda X`).
pub fn dilate(
    moments: &MomentSequence,
    lambda: &BigRational,
) -> Result<MomentSequence, TransformError> {
    if lambda.is_zero() {
        return Err(TransformError::ZeroDilation);
    }
    let values = moments
        .values()
        .iter()
        .enumerate()
        .map(|(i, mk)| rational_pow(lambda, i as i64 + 1) * mk)
        .collect();
    Ok(MomentSequence::new(values))
}

fn truncate_for(m: &MomentSequence, order: usize) -> Result<MomentSequence, TransformError> {
    if m.order() < order {
        return Err(TransformError::OrderTooSmall {
            have: m.order(),
            want: order,
        });
    }
    Ok(m.truncated(order).expect("checked above"))
}
