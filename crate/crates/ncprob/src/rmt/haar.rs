//! Haar-distributed unitary matrices and Stiefel frames.
//!
//! Sampling is Gram-Schmidt orthonormalization (two passes, for numerical
//! orthogonality) of an i.i.d. standard complex Gaussian matrix. Gram-Schmidt
//! produces the unique QR factor with positive real diagonal, which is the
//! phase normalization that makes the law exactly Haar; generic QR routines
//! leave arbitrary phases on the diagonal of R and are not Haar without this
//! correction.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Counter-based derivation of independent per-(trial, generator) streams
/// from one master seed: every trial and generator gets its own ChaCha
/// stream, so results are reproducible regardless of evaluation order.
pub fn stream_rng(seed: u64, trial: u64, generator: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_mul(1 << 16).wrapping_add(generator));
    rng
}

/// i.i.d. standard complex Gaussian entries (real and imaginary parts each
/// N(0, 1/2), so E|g|^2 = 1).
pub fn complex_gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// Orthonormalize the columns in place (classical Gram-Schmidt with one
/// reorthogonalization pass). Norms are real and positive, so the implied
/// triangular factor has positive diagonal.
fn orthonormalize_columns(m: &mut DMatrix<Complex64>) {
    let cols = m.ncols();
    for j in 0..cols {
        let mut v = m.column(j).into_owned();
        for _ in 0..2 {
            for i in 0..j {
                let q = m.column(i);
                let coeff = q.dotc(&v);
                v.axpy(-coeff, &q.into_owned(), Complex64::new(1.0, 0.0));
            }
        }
        let norm = v.norm();
        assert!(norm > 1e-200, "degenerate Gaussian sample");
        v /= Complex64::new(norm, 0.0);
        m.set_column(j, &v);
    }
}

/// An exactly Haar-distributed `n x n` unitary.
pub fn sample_haar_unitary<R: Rng>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut m = complex_gaussian_matrix(n, n, rng);
    orthonormalize_columns(&mut m);
    m
}

/// The first `k` rows of a Haar unitary on `U(n)`, sampled directly as a
/// uniform frame on the Stiefel manifold (`V V* = I_k`).
pub fn sample_stiefel_rows<R: Rng>(k: usize, n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let mut m = complex_gaussian_matrix(n, k, rng);
    orthonormalize_columns(&mut m);
    m.adjoint()
}

/// A uniform unit vector in `C^n`: the law of any single row or column of a
/// Haar unitary.
pub fn sample_unit_vector<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Max-norm residual of unitarity, `max |U* U - I|`.
pub fn unitarity_residual(u: &DMatrix<Complex64>) -> f64 {
    let n = u.ncols();
    let gram = u.adjoint() * u;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { 1.0 } else { 0.0 };
            let diff = (gram[(i, j)] - Complex64::new(expected, 0.0)).norm();
            worst = worst.max(diff);
        }
    }
    worst
}
