//! Discrete probability measures and the named laws used throughout:
//! semicircle, arcsine on `[0,2]`, two-point (Bernoulli), and point masses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{binomial, catalan, parse_rational, rational_pow, rational_to_f64};
use crate::cumulants::MomentSequence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    /// Weights must be strictly positive.
    #[error("atom weight must be positive")]
    NonPositiveWeight,
    /// Weights must sum to one (exactly, or within 1e-12 for float input).
    #[error("atom weights do not sum to 1")]
    NotNormalized,
    /// Two atoms share a position.
    #[error("atom positions must be distinct")]
    RepeatedAtom,
    /// A named-law parameter is outside its valid range.
    #[error("invalid law parameter: {0}")]
    InvalidParameter(String),
    /// Unparseable law tag.
    #[error("invalid law spec `{0}`")]
    Parse(String),
}

/// Finitely many real atoms with positive weights summing to one, positions
/// strictly increasing. Exact rationals throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<(BigRational, BigRational)>,
}

impl DiscreteMeasure {
    /// Exact constructor: weights must sum to 1 exactly.
    pub fn new(mut atoms: Vec<(BigRational, BigRational)>) -> Result<Self, MeasureError> {
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in atoms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(MeasureError::RepeatedAtom);
            }
        }
        let mut total = BigRational::zero();
        for (_, w) in &atoms {
            if !w.is_positive() {
                return Err(MeasureError::NonPositiveWeight);
            }
            total += w;
        }
        if !total.is_one() {
            return Err(MeasureError::NotNormalized);
        }
        Ok(Self { atoms })
    }

    /// Tolerant constructor for float-derived input: accepts a total within
    /// 1e-12 of 1 and renormalizes exactly.
    pub fn new_tolerant(atoms: Vec<(BigRational, BigRational)>) -> Result<Self, MeasureError> {
        let total: BigRational = atoms.iter().map(|(_, w)| w.clone()).sum();
        if (rational_to_f64(&total) - 1.0).abs() > 1e-12 {
            return Err(MeasureError::NotNormalized);
        }
        let scaled = atoms
            .into_iter()
            .map(|(x, w)| (x, w / total.clone()))
            .collect();
        Self::new(scaled)
    }

    pub fn point(a: BigRational) -> Self {
        Self {
            atoms: vec![(a, BigRational::one())],
        }
    }

    pub fn atoms(&self) -> &[(BigRational, BigRational)] {
        &self.atoms
    }

    /// `m_k = sum_i w_i x_i^k`, exact, for `k = 1..=order`.
    pub fn moments(&self, order: usize) -> MomentSequence {
        let mut values = Vec::with_capacity(order);
        let mut powers: Vec<BigRational> = self.atoms.iter().map(|(_, w)| w.clone()).collect();
        for _ in 1..=order {
            for (p, (x, _)) in powers.iter_mut().zip(&self.atoms) {
                *p *= x;
            }
            values.push(powers.iter().sum());
        }
        MomentSequence::new(values)
    }

    /// Float rendering of (position, weight) pairs for the Monte Carlo layer.
    pub fn atoms_f64(&self) -> Vec<(f64, f64)> {
        self.atoms
            .iter()
            .map(|(x, w)| (rational_to_f64(x), rational_to_f64(w)))
            .collect()
    }
}

impl fmt::Display for DiscreteMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(x, w)| {
                format!(
                    "{}*delta({})",
                    crate::arith::format_rational(w),
                    crate::arith::format_rational(x)
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The laws the toolkit knows in closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedLaw {
    /// Semicircle of given variance (support `[-2 sqrt(v), 2 sqrt(v)]`).
    Semicircle { variance: BigRational },
    /// Arcsine on `[0, 2]`: the law of a sum of two free rank-1/2 projections.
    Arcsine02,
    /// Two-point law: weight `1 - p` at `a`, weight `p` at `b`.
    Bernoulli {
        p: BigRational,
        a: BigRational,
        b: BigRational,
    },
    /// Point mass at `a`.
    Point { a: BigRational },
    /// Explicit discrete measure.
    Empirical(DiscreteMeasure),
}

impl NamedLaw {
    pub fn semicircle(variance: BigRational) -> Result<Self, MeasureError> {
        if !variance.is_positive() {
            return Err(MeasureError::InvalidParameter("variance must be > 0".into()));
        }
        Ok(Self::Semicircle { variance })
    }

    pub fn bernoulli(
        p: BigRational,
        a: BigRational,
        b: BigRational,
    ) -> Result<Self, MeasureError> {
        if !p.is_positive() || p >= BigRational::one() {
            return Err(MeasureError::InvalidParameter("need 0 < p < 1".into()));
        }
        if a >= b {
            return Err(MeasureError::InvalidParameter("need a < b".into()));
        }
        Ok(Self::Bernoulli { p, a, b })
    }

    /// Exact moments `m_1..m_order`.
    ///
    /// Semicircle of variance v: `m_{2k} = Catalan(k) v^k`, odd moments 0.
    /// Arcsine on `[0,2]`: `m_k = sum_j binom(k, 2j) binom(2j, j) / 4^j`
    /// (shift by 1 of the standard arcsine law on [-1, 1]).
    pub fn moments(&self, order: usize) -> MomentSequence {
        match self {
            NamedLaw::Semicircle { variance } => {
                let values = (1..=order)
                    .map(|k| {
                        if k % 2 == 0 {
                            BigRational::from(catalan(k as u64 / 2))
                                * rational_pow(variance, (k / 2) as i64)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect();
                MomentSequence::new(values)
            }
            NamedLaw::Arcsine02 => {
                let values = (1..=order)
                    .map(|k| {
                        let mut total = BigRational::zero();
                        for j in 0..=(k / 2) {
                            let term = BigRational::from(
                                binomial(k as u64, 2 * j as u64) * binomial(2 * j as u64, j as u64),
                            ) / BigRational::from(BigInt::from(4).pow(j as u32));
                            total += term;
                        }
                        total
                    })
                    .collect();
                MomentSequence::new(values)
            }
            NamedLaw::Bernoulli { p, a, b } => {
                let q = BigRational::one() - p;
                let values = (1..=order)
                    .map(|k| {
                        q.clone() * rational_pow(a, k as i64) + p * rational_pow(b, k as i64)
                    })
                    .collect();
                MomentSequence::new(values)
            }
            NamedLaw::Point { a } => {
                let values = (1..=order).map(|k| rational_pow(a, k as i64)).collect();
                MomentSequence::new(values)
            }
            NamedLaw::Empirical(measure) => measure.moments(order),
        }
    }

    /// The atomic laws as discrete measures (None for the continuous ones).
    pub fn as_measure(&self) -> Option<DiscreteMeasure> {
        match self {
            NamedLaw::Bernoulli { p, a, b } => Some(
                DiscreteMeasure::new(vec![
                    (a.clone(), BigRational::one() - p),
                    (b.clone(), p.clone()),
                ])
                .expect("validated parameters"),
            ),
            NamedLaw::Point { a } => Some(DiscreteMeasure::point(a.clone())),
            NamedLaw::Empirical(m) => Some(m.clone()),
            _ => None,
        }
    }
}

impl FromStr for NamedLaw {
    type Err = MeasureError;

    /// Law grammar used by the CLI and config files:
    /// `semicircle:V`, `arcsine02`, `bernoulli:P:A:B`, `point:A`,
    /// `proj:T` (projection of trace `T`, i.e. `bernoulli:T:0:1`), and
    /// `pm1` (symmetric two-point law on -1, +1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MeasureError::Parse(s.to_string());
        let mut parts = s.split(':');
        let tag = parts.next().ok_or_else(err)?;
        let mut params: Vec<BigRational> = Vec::new();
        for p in parts {
            params.push(parse_rational(p).map_err(|_| err())?);
        }
        match (tag, params.len()) {
            ("semicircle", 1) => NamedLaw::semicircle(params[0].clone()),
            ("arcsine02", 0) => Ok(NamedLaw::Arcsine02),
            ("bernoulli", 3) => {
                NamedLaw::bernoulli(params[0].clone(), params[1].clone(), params[2].clone())
            }
            ("point", 1) => Ok(NamedLaw::Point {
                a: params[0].clone(),
            }),
            ("proj", 1) => NamedLaw::bernoulli(
                params[0].clone(),
                BigRational::zero(),
                BigRational::one(),
            ),
            ("pm1", 0) => NamedLaw::bernoulli(
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                -BigRational::one(),
                BigRational::one(),
            ),
            _ => Err(err()),
        }
    }
}
