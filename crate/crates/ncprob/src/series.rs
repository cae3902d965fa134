//! Truncated formal power series over exact rationals.
//!
//! A `TruncatedSeries` holds coefficients `c_0..c_K` of a series in one
//! variable; all operations truncate at the shorter order involved.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Inverting a series whose constant term is zero.
    #[error("constant term is zero; series is not invertible")]
    NotInvertible,
    /// Composing with an inner series whose constant term is nonzero.
    #[error("inner series must have zero constant term")]
    InnerConstantTerm,
}

/// Coefficients `c_0..c_K` of a truncated formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self { coeffs }
    }

    pub fn constant(value: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// Truncation order `K` (highest retained degree).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs
            .get(degree)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Product truncated at `order`.
    pub fn mul_trunc(&self, other: &Self, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order.min(self.order()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i).min(other.order()) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse to degree `order` (constant term must be nonzero).
    pub fn inverse(&self, order: usize) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let c0 = self.coeffs[0].clone();
        let mut inv = vec![BigRational::zero(); order + 1];
        inv[0] = c0.recip();
        for d in 1..=order {
            // c0 * inv[d] + sum_{i=1..d} c_i inv[d-i] = 0
            let mut acc = BigRational::zero();
            for i in 1..=d.min(self.order()) {
                acc += &self.coeffs[i] * &inv[d - i];
            }
            inv[d] = -acc / c0.clone();
        }
        Ok(Self { coeffs: inv })
    }

    /// Substitute `inner` (zero constant term) into `self`, truncated at `order`.
    pub fn compose(&self, inner: &Self, order: usize) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let mut result = Self::constant(self.coeff(0), order);
        let mut power = Self::constant(BigRational::one(), order);
        for k in 1..=self.order().min(order) {
            power = power.mul_trunc(inner, order);
            result = result.add(&power.scale(&self.coeff(k)));
        }
        Ok(result)
    }

    /// Multiply by the variable: degrees shift up by one, truncating at the
    /// same order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len()];
        coeffs[1..].clone_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self { coeffs }
    }

    /// Divide by the variable (constant term must be zero); order drops by one.
    pub fn shift_down(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "shift_down needs zero constant term");
        Self {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }
}
