//! Seeded Monte Carlo over Haar-rotated matrix models.
//!
//! Matrices are `X_j = U_j D_j U_j*` with fixed spectra `D_j` and independent
//! Haar unitaries, one ChaCha stream per (trial, generator). Trials run
//! sequentially and reductions are in trial order, so every experiment is
//! bit-reproducible from its seed. Everything here is `f64`; the exact layers
//! provide the predictions to compare against.

mod haar;

pub use haar::{
    complex_gaussian_matrix, sample_haar_unitary, sample_stiefel_rows, sample_unit_vector,
    stream_rng, unitarity_residual,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{rational_from_f64, rational_to_f64};
use crate::cumulants::{classical_cumulants_from_moments_f64, MomentSequence};
use crate::measure::NamedLaw;
use crate::transforms::{free_compress, free_convolve};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RmtError {
    /// Spectrum length disagrees with the model dimension.
    #[error("spectrum length {0} does not match dimension {1}")]
    SpectrumLength(usize, usize),
    /// A word letter does not index a generator.
    #[error("word letter {0} outside 1..={1}")]
    BadWordLetter(usize, usize),
    /// Submatrix fraction does not give an integral corner size.
    #[error("t*N must be a positive integer corner size")]
    NonIntegralCorner,
    /// The dense Hermitian eigensolver failed to converge.
    #[error("eigensolver failed to converge")]
    Eigensolver,
    /// Entry-cumulant experiment is specified for orders up to 6.
    #[error("cumulant order {0} exceeds the supported maximum 6")]
    CumulantOrderTooLarge(usize),
    /// A realized matrix failed its structural validation.
    #[error("realized matrix failed validation: {0}")]
    Validation(String),
    /// Empty input where data is required.
    #[error("empty spectrum or zero trials")]
    EmptyInput,
}

/// Fixed spectra with randomized eigenvectors: the model `X_j = U_j D_j U_j*`.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    dim: usize,
    spectra: Vec<Vec<f64>>,
    seed: u64,
}

impl MatrixModel {
    pub fn new(dim: usize, spectra: Vec<Vec<f64>>, seed: u64) -> Result<Self, RmtError> {
        if dim == 0 || spectra.is_empty() {
            return Err(RmtError::EmptyInput);
        }
        for s in &spectra {
            if s.len() != dim {
                return Err(RmtError::SpectrumLength(s.len(), dim));
            }
        }
        Ok(Self { dim, spectra, seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn spectra(&self) -> &[Vec<f64>] {
        &self.spectra
    }

    /// Realize one generator for one trial and validate it structurally
    /// (hermiticity by construction, trace and Frobenius mass to 1e-9).
    pub fn realize_one(&self, trial: u64, generator: usize) -> Result<DMatrix<Complex64>, RmtError> {
        let spectrum = &self.spectra[generator];
        let mut rng = stream_rng(self.seed, trial, generator as u64);
        let u = sample_haar_unitary(self.dim, &mut rng);
        // X = (U D) U*, then symmetrized to kill floating-point drift.
        let mut scaled = u.clone();
        for (j, &d) in spectrum.iter().enumerate() {
            scaled.column_mut(j).scale_mut(d);
        }
        let x = &scaled * u.adjoint();
        let x = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);

        let scale: f64 = 1.0 + spectrum.iter().map(|d| d.abs()).sum::<f64>();
        let trace: f64 = (0..self.dim).map(|i| x[(i, i)].re).sum();
        let expected_trace: f64 = spectrum.iter().sum();
        if (trace - expected_trace).abs() > 1e-9 * scale {
            return Err(RmtError::Validation(format!(
                "trace {trace} vs {expected_trace}"
            )));
        }
        let mass: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let expected_mass: f64 = spectrum.iter().map(|d| d * d).sum();
        if (mass - expected_mass).abs() > 1e-9 * (1.0 + expected_mass) {
            return Err(RmtError::Validation(format!(
                "Frobenius mass {mass} vs {expected_mass}"
            )));
        }
        Ok(x)
    }

    /// Realize every generator for one trial.
    pub fn realize(&self, trial: u64) -> Result<Vec<DMatrix<Complex64>>, RmtError> {
        (0..self.spectra.len())
            .map(|g| self.realize_one(trial, g))
            .collect()
    }
}

/// A Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    pub stderr: f64,
    pub trials: u64,
}

fn estimate_from_samples(samples: &[f64]) -> MomentEstimate {
    let trials = samples.len() as u64;
    let mean = samples.iter().sum::<f64>() / trials as f64;
    let stderr = if trials > 1 {
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
            / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    MomentEstimate {
        value: mean,
        stderr,
        trials,
    }
}

/// Mean and standard error of `(1/N) Tr(X_{w1} ... X_{wk})` over trials.
/// (The imaginary part averages to zero by conjugation invariance; the real
/// part is reported.)
pub fn mixed_moment_mc(
    model: &MatrixModel,
    word: &[usize],
    trials: u64,
) -> Result<MomentEstimate, RmtError> {
    if trials == 0 || word.is_empty() {
        return Err(RmtError::EmptyInput);
    }
    for &letter in word {
        if letter == 0 || letter > model.spectra.len() {
            return Err(RmtError::BadWordLetter(letter, model.spectra.len()));
        }
    }
    let mut needed: Vec<usize> = word.iter().map(|&l| l - 1).collect();
    needed.sort_unstable();
    needed.dedup();
    let mut samples = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut realized = std::collections::HashMap::new();
        for &g in &needed {
            realized.insert(g, model.realize_one(trial, g)?);
        }
        let mut product = realized[&(word[0] - 1)].clone();
        for &letter in &word[1..] {
            product *= &realized[&(letter - 1)];
        }
        let trace: Complex64 = (0..model.dim).map(|i| product[(i, i)]).sum();
        samples.push(trace.re / model.dim as f64);
    }
    Ok(estimate_from_samples(&samples))
}

/// Histogram with explicit bin edges (`len = bins + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(values: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        assert!(bins > 0 && hi > lo);
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        for &v in values {
            if v < lo || v > hi {
                continue;
            }
            let mut idx = ((v - lo) / width) as usize;
            if idx >= bins {
                idx = bins - 1; // right edge inclusive
            }
            counts[idx] += 1;
        }
        Self { edges, counts }
    }
}

/// Pooled eigenvalues (sorted) with an optional histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSpectrum {
    pub eigenvalues: Vec<f64>,
    pub histogram: Option<Histogram>,
}

impl EmpiricalSpectrum {
    /// `k`-th empirical moment `(1/len) sum lambda^k`.
    pub fn moment(&self, k: usize) -> f64 {
        let n = self.eigenvalues.len() as f64;
        self.eigenvalues.iter().map(|l| l.powi(k as i32)).sum::<f64>() / n
    }

    /// Kolmogorov-Smirnov distance to a reference CDF.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.eigenvalues.len() as f64;
        let mut worst = 0.0f64;
        for (i, &x) in self.eigenvalues.iter().enumerate() {
            let f = cdf(x);
            let hi = (i as f64 + 1.0) / n - f;
            let lo = f - i as f64 / n;
            worst = worst.max(hi.abs().max(lo.abs()));
        }
        worst
    }
}

fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Result<Vec<f64>, RmtError> {
    let eig = m
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or(RmtError::Eigensolver)?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(values)
}

/// Exact moments of a deterministic spectrum (empirical measure of `spec`).
pub fn spectrum_moments_exact(spec: &[f64], order: usize) -> MomentSequence {
    let n = BigRational::from_integer(num_bigint::BigInt::from(spec.len()));
    let exact: Vec<BigRational> = spec
        .iter()
        .map(|&x| rational_from_f64(x).expect("finite spectrum entry"))
        .collect();
    let values = (1..=order)
        .map(|k| {
            exact
                .iter()
                .map(|x| crate::arith::rational_pow(x, k as i64))
                .sum::<BigRational>()
                / n.clone()
        })
        .collect();
    MomentSequence::new(values)
}

/// Result of the sum experiment: pooled spectrum of `X_A + X_B`, empirical
/// moments, and the free-convolution prediction.
#[derive(Debug, Clone)]
pub struct SumExperiment {
    pub spectrum: EmpiricalSpectrum,
    pub empirical_moments: Vec<MomentEstimate>,
    pub predicted_moments: Vec<f64>,
}

/// Pool the eigenvalues of `X_A + X_B` over trials and compare the empirical
/// moments with the free-convolution prediction.
pub fn sum_spectrum_experiment(
    spec_a: &[f64],
    spec_b: &[f64],
    trials: u64,
    seed: u64,
    bins: Option<usize>,
    range: Option<(f64, f64)>,
    order: usize,
) -> Result<SumExperiment, RmtError> {
    if spec_a.len() != spec_b.len() {
        return Err(RmtError::SpectrumLength(spec_b.len(), spec_a.len()));
    }
    let n = spec_a.len();
    let model = MatrixModel::new(n, vec![spec_a.to_vec(), spec_b.to_vec()], seed)?;
    if trials == 0 {
        return Err(RmtError::EmptyInput);
    }
    let mut pooled = Vec::with_capacity(n * trials as usize);
    let mut per_trial_moments: Vec<Vec<f64>> = vec![Vec::new(); order];
    for trial in 0..trials {
        let xs = model.realize(trial)?;
        let sum = &xs[0] + &xs[1];
        let eigenvalues = hermitian_eigenvalues(sum)?;
        for k in 1..=order {
            let m = eigenvalues.iter().map(|l| l.powi(k as i32)).sum::<f64>() / n as f64;
            per_trial_moments[k - 1].push(m);
        }
        pooled.extend(eigenvalues);
    }
    pooled.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let histogram = bins.map(|b| {
        let (lo, hi) = range.unwrap_or_else(|| {
            (
                *pooled.first().expect("nonempty"),
                *pooled.last().expect("nonempty"),
            )
        });
        Histogram::new(&pooled, lo, hi, b)
    });

    let prediction = free_convolve(
        &spectrum_moments_exact(spec_a, order),
        &spectrum_moments_exact(spec_b, order),
        order,
    )
    .expect("orders match by construction");
    Ok(SumExperiment {
        spectrum: EmpiricalSpectrum {
            eigenvalues: pooled,
            histogram,
        },
        empirical_moments: per_trial_moments
            .iter()
            .map(|s| estimate_from_samples(s))
            .collect(),
        predicted_moments: prediction.values().iter().map(rational_to_f64).collect(),
    })
}

/// Result of the corner (free compression) experiment.
#[derive(Debug, Clone)]
pub struct SubmatrixExperiment {
    pub corner_dim: usize,
    pub spectrum: EmpiricalSpectrum,
    pub empirical_moments: Vec<MomentEstimate>,
    pub predicted_moments: Vec<f64>,
}

/// Spectrum of the leading `tN x tN` corner of `U D U*`, against the
/// free-compression prediction. Only the first `tN` rows of `U` matter, and
/// their joint law is the uniform Stiefel frame, which is what gets sampled.
pub fn submatrix_spectrum(
    spec: &[f64],
    t: &BigRational,
    trials: u64,
    seed: u64,
    order: usize,
) -> Result<SubmatrixExperiment, RmtError> {
    let n = spec.len();
    if n == 0 || trials == 0 {
        return Err(RmtError::EmptyInput);
    }
    let corner = t * BigRational::from_integer(num_bigint::BigInt::from(n));
    if !corner.is_integer() {
        return Err(RmtError::NonIntegralCorner);
    }
    let k = corner.to_integer().to_usize().ok_or(RmtError::NonIntegralCorner)?;
    if k == 0 || k > n {
        return Err(RmtError::NonIntegralCorner);
    }
    let mut pooled = Vec::with_capacity(k * trials as usize);
    let mut per_trial_moments: Vec<Vec<f64>> = vec![Vec::new(); order];
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial, 0);
        let v = sample_stiefel_rows(k, n, &mut rng);
        // C = V D V*.
        let mut scaled = v.clone();
        for (j, &d) in spec.iter().enumerate() {
            scaled.column_mut(j).scale_mut(d);
        }
        let c = &scaled * v.adjoint();
        let c = (&c + c.adjoint()) * Complex64::new(0.5, 0.0);
        let eigenvalues = hermitian_eigenvalues(c)?;
        for ord in 1..=order {
            let m = eigenvalues.iter().map(|l| l.powi(ord as i32)).sum::<f64>() / k as f64;
            per_trial_moments[ord - 1].push(m);
        }
        pooled.extend(eigenvalues);
    }
    pooled.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let prediction = free_compress(&spectrum_moments_exact(spec, order), t)
        .expect("t validated in range");
    Ok(SubmatrixExperiment {
        corner_dim: k,
        spectrum: EmpiricalSpectrum {
            eigenvalues: pooled,
            histogram: None,
        },
        empirical_moments: per_trial_moments
            .iter()
            .map(|s| estimate_from_samples(s))
            .collect(),
        predicted_moments: prediction.values().iter().map(rational_to_f64).collect(),
    })
}

/// One row of the entry-cumulant report: the sample classical cumulant of
/// `Y = N X_11` and its rescalings by `N^alpha` for alpha in {1, 2}.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryCumulantRow {
    pub order: usize,
    pub cumulant: f64,
    pub stderr: f64,
    pub rescaled_alpha1: f64,
    pub rescaled_alpha2: f64,
}

/// Sample classical cumulants of `Y = N (U D U*)_{1,1}`.
///
/// `X_11 = sum_i |U_{1i}|^2 d_i` depends on `U` only through its first row,
/// which is a uniform unit vector; that row is sampled directly. Cumulants
/// come from plugging full-sample moments into the exact moment-to-cumulant
/// transform; standard errors are batch means (50 batches).
pub fn entry_cumulant_mc(
    spec: &[f64],
    n_max: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<EntryCumulantRow>, RmtError> {
    if n_max > 6 {
        return Err(RmtError::CumulantOrderTooLarge(n_max));
    }
    let n = spec.len();
    if n == 0 || trials == 0 || n_max == 0 {
        return Err(RmtError::EmptyInput);
    }
    let batches = if trials >= 200 { 50 } else { trials.min(10) as usize };
    let mut totals = vec![0.0f64; n_max];
    let mut batch_totals = vec![vec![0.0f64; n_max]; batches];
    let mut batch_counts = vec![0u64; batches];
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial, 0);
        let row = sample_unit_vector(n, &mut rng);
        let y = n as f64
            * row
                .iter()
                .zip(spec)
                .map(|(z, &d)| z.norm_sqr() * d)
                .sum::<f64>();
        let batch = (trial as usize * batches / trials as usize).min(batches - 1);
        let mut power = 1.0;
        for k in 0..n_max {
            power *= y;
            totals[k] += power;
            batch_totals[batch][k] += power;
        }
        batch_counts[batch] += 1;
    }
    let moments: Vec<f64> = totals.iter().map(|t| t / trials as f64).collect();
    let cumulants = classical_cumulants_from_moments_f64(&moments);
    // Batch means for the standard errors.
    let mut batch_cumulants: Vec<Vec<f64>> = Vec::with_capacity(batches);
    for (b, totals_b) in batch_totals.iter().enumerate() {
        if batch_counts[b] == 0 {
            continue;
        }
        let m: Vec<f64> = totals_b.iter().map(|t| t / batch_counts[b] as f64).collect();
        batch_cumulants.push(classical_cumulants_from_moments_f64(&m));
    }
    let effective = batch_cumulants.len() as f64;
    let rows = (1..=n_max)
        .map(|k| {
            let mean_b: f64 = batch_cumulants.iter().map(|c| c[k - 1]).sum::<f64>() / effective;
            let var_b: f64 = batch_cumulants
                .iter()
                .map(|c| (c[k - 1] - mean_b) * (c[k - 1] - mean_b))
                .sum::<f64>()
                / (effective - 1.0).max(1.0);
            let stderr = (var_b / effective).sqrt();
            let nn = n as f64;
            EntryCumulantRow {
                order: k,
                cumulant: cumulants[k - 1],
                stderr,
                rescaled_alpha1: cumulants[k - 1] / nn,
                rescaled_alpha2: cumulants[k - 1] / (nn * nn),
            }
        })
        .collect();
    Ok(rows)
}

/// Sample variance of `X_11` through the full Haar sampler (exact complex
/// Haar value is `(N sum d^2 - (sum d)^2) / (N^2 (N+1))`), with the
/// asymptotic standard error of the variance estimator.
pub fn entry_variance_mc(spec: &[f64], trials: u64, seed: u64) -> Result<(f64, f64), RmtError> {
    let n = spec.len();
    if n == 0 || trials < 2 {
        return Err(RmtError::EmptyInput);
    }
    let mut samples = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial, 0);
        let u = sample_haar_unitary(n, &mut rng);
        let x11: f64 = (0..n).map(|i| u[(0, i)].norm_sqr() * spec[i]).sum();
        samples.push(x11);
    }
    let t = trials as f64;
    let mean = samples.iter().sum::<f64>() / t;
    let variance = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (t - 1.0);
    let m4 = samples
        .iter()
        .map(|x| (x - mean).powi(4))
        .sum::<f64>()
        / t;
    let se = ((m4 - variance * variance).max(0.0) / t).sqrt();
    Ok((variance, se))
}

/// Deterministic length-`n` spectrum realizing a named law: atomic laws by
/// largest-remainder apportionment of the weights, continuous laws by
/// mid-quantiles.
pub fn spectrum_of_law(law: &NamedLaw, n: usize) -> Result<Vec<f64>, RmtError> {
    if n == 0 {
        return Err(RmtError::EmptyInput);
    }
    if let Some(measure) = law.as_measure() {
        let atoms = measure.atoms_f64();
        // Largest-remainder apportionment of n slots to the weights.
        let ideal: Vec<f64> = atoms.iter().map(|&(_, w)| w * n as f64).collect();
        let mut counts: Vec<usize> = ideal.iter().map(|&x| x.floor() as usize).collect();
        let assigned: usize = counts.iter().sum();
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = ideal[a] - ideal[a].floor();
            let rb = ideal[b] - ideal[b].floor();
            rb.partial_cmp(&ra).expect("finite remainders")
        });
        for &i in order.iter().take(n - assigned) {
            counts[i] += 1;
        }
        let mut spectrum = Vec::with_capacity(n);
        for (&(x, _), &c) in atoms.iter().zip(&counts) {
            spectrum.extend(std::iter::repeat_n(x, c));
        }
        return Ok(spectrum);
    }
    let quantile: Box<dyn Fn(f64) -> f64> = match law {
        NamedLaw::Arcsine02 => Box::new(|q: f64| 1.0 - (std::f64::consts::PI * q).cos()),
        NamedLaw::Semicircle { variance } => {
            let v = rational_to_f64(variance);
            let radius = 2.0 * v.sqrt();
            Box::new(move |q: f64| {
                // Invert the semicircle CDF by bisection.
                let cdf = |x: f64| {
                    0.5 + (x * (radius * radius - x * x).sqrt()
                        + radius * radius * (x / radius).asin())
                        / (std::f64::consts::PI * radius * radius)
                };
                let (mut lo, mut hi) = (-radius, radius);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if cdf(mid) < q {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            })
        }
        _ => unreachable!("atomic laws handled above"),
    };
    Ok((0..n)
        .map(|i| quantile((i as f64 + 0.5) / n as f64))
        .collect())
}
