//! Python bindings for the ncprob toolkit.
//!
//! Exact rationals cross the boundary as strings (`"3/2"`); moment and
//! cumulant sequences as lists of such strings; diagrams as row lists;
//! cycle types as `{length: count}` dicts. Monte Carlo results come back as
//! plain dicts of floats.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ncprob::arith::{format_rational, parse_rational};
use ncprob::cumulants::{CumulantSequence, MomentSequence};
use ncprob::measure::NamedLaw;
use ncprob::partitions::{self, SetPartition};
use ncprob::rmt;
use ncprob::transforms;
use ncprob::young::{self, CycleType, YoungDiagram};
use num_rational::BigRational;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_moments(values: Vec<String>) -> PyResult<MomentSequence> {
    let parsed: Result<Vec<BigRational>, _> =
        values.iter().map(|s| parse_rational(s)).collect();
    Ok(MomentSequence::new(parsed.map_err(err)?))
}

fn parse_cumulants(values: Vec<String>, kind: &str) -> PyResult<CumulantSequence> {
    let parsed: Result<Vec<BigRational>, _> =
        values.iter().map(|s| parse_rational(s)).collect();
    let parsed = parsed.map_err(err)?;
    match kind {
        "free" => Ok(CumulantSequence::free(parsed)),
        "classical" => Ok(CumulantSequence::classical(parsed)),
        other => Err(err(format!("unknown cumulant kind `{other}`"))),
    }
}

fn render(values: &[BigRational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn diagram(rows: Vec<usize>) -> PyResult<YoungDiagram> {
    YoungDiagram::new(rows).map_err(err)
}

fn cycle_type(counts: BTreeMap<usize, usize>) -> PyResult<CycleType> {
    CycleType::new(counts).map_err(err)
}

/// Number of noncrossing partitions of {1..n}.
#[pyfunction]
fn nc_count(n: usize) -> PyResult<u64> {
    partitions::count_nc(n).map_err(err)
}

/// All noncrossing partitions in canonical text form (`"1,3/2/4"`).
#[pyfunction]
fn enumerate_nc(n: usize) -> PyResult<Vec<String>> {
    Ok(partitions::enumerate_nc(n)
        .map_err(err)?
        .iter()
        .map(SetPartition::to_string)
        .collect())
}

/// Crossing test on the canonical text form.
#[pyfunction]
fn is_noncrossing(partition: &str) -> PyResult<bool> {
    let p: SetPartition = partition.parse().map_err(err)?;
    Ok(p.is_noncrossing())
}

/// Geodesic embedding of a noncrossing partition (one-line permutation).
#[pyfunction]
fn nc_to_permutation(partition: &str) -> PyResult<String> {
    let p: SetPartition = partition.parse().map_err(err)?;
    Ok(ncprob::nc_to_permutation(&p).map_err(err)?.to_string())
}

/// Inverse embedding; `None` when the permutation is off-geodesic.
#[pyfunction]
fn permutation_to_nc(perm: &str) -> PyResult<Option<String>> {
    let s: ncprob::Permutation = perm.parse().map_err(err)?;
    Ok(ncprob::permutation_to_nc(&s).map(|p| p.to_string()))
}

/// Transposition Cayley distance between two one-line permutations.
#[pyfunction]
fn cayley_distance(a: &str, b: &str) -> PyResult<usize> {
    let a: ncprob::Permutation = a.parse().map_err(err)?;
    let b: ncprob::Permutation = b.parse().map_err(err)?;
    ncprob::cayley_distance(&a, &b).map_err(err)
}

/// Moebius value of the full interval of NC(n).
#[pyfunction]
fn moebius_whole_lattice(n: usize) -> PyResult<i64> {
    let interval = partitions::NcInterval::new(
        SetPartition::singletons(n),
        SetPartition::full(n),
    )
    .map_err(err)?;
    partitions::moebius_nc(&interval).map_err(err)
}

#[pyfunction]
fn free_cumulants_from_moments(moments: Vec<String>) -> PyResult<Vec<String>> {
    Ok(render(parse_moments(moments)?.to_free_cumulants().values()))
}

#[pyfunction]
fn classical_cumulants_from_moments(moments: Vec<String>) -> PyResult<Vec<String>> {
    Ok(render(
        parse_moments(moments)?.to_classical_cumulants().values(),
    ))
}

/// Reconstruct moments from cumulants of the given kind ("free"/"classical").
#[pyfunction]
#[pyo3(signature = (cumulants, kind = "free"))]
fn moments_from_cumulants(cumulants: Vec<String>, kind: &str) -> PyResult<Vec<String>> {
    Ok(render(parse_cumulants(cumulants, kind)?.to_moments().values()))
}

/// Free cumulants by compositional inversion of the Cauchy series;
/// agrees exactly with `free_cumulants_from_moments`.
#[pyfunction]
fn free_cumulants_via_inversion(moments: Vec<String>) -> PyResult<Vec<String>> {
    let m = parse_moments(moments)?;
    let r = transforms::r_coefficients_via_inversion(&transforms::cauchy_series(&m))
        .map_err(err)?;
    Ok(render(r.values()))
}

#[pyfunction]
fn free_convolve(a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
    let a = parse_moments(a)?;
    let b = parse_moments(b)?;
    let order = a.order().min(b.order());
    Ok(render(
        transforms::free_convolve(&a, &b, order).map_err(err)?.values(),
    ))
}

#[pyfunction]
fn free_compress(moments: Vec<String>, t: &str) -> PyResult<Vec<String>> {
    let m = parse_moments(moments)?;
    let t = parse_rational(t).map_err(err)?;
    Ok(render(transforms::free_compress(&m, &t).map_err(err)?.values()))
}

#[pyfunction]
fn dilate(moments: Vec<String>, factor: &str) -> PyResult<Vec<String>> {
    let m = parse_moments(moments)?;
    let factor = parse_rational(factor).map_err(err)?;
    Ok(render(transforms::dilate(&m, &factor).map_err(err)?.values()))
}

/// Exact moments of a named law (`"semicircle:1"`, `"arcsine02"`,
/// `"bernoulli:0.5:0:1"`, `"point:2"`, `"proj:0.5"`, `"pm1"`).
#[pyfunction]
fn law_moments(law: &str, order: usize) -> PyResult<Vec<String>> {
    let law: NamedLaw = law.parse().map_err(err)?;
    Ok(render(law.moments(order).values()))
}

/// Mixed moment of a free family given by per-variable moment lists;
/// the word uses 1-based variable indices.
#[pyfunction]
fn free_mixed_moment(marginals: Vec<Vec<String>>, word: Vec<u8>) -> PyResult<String> {
    let marginals: PyResult<Vec<MomentSequence>> =
        marginals.into_iter().map(parse_moments).collect();
    let family = ncprob::FreeFamilySpec::new(marginals?).map_err(err)?;
    Ok(format_rational(&family.free_mixed_moment(&word).map_err(err)?))
}

/// Transition measure of a diagram: list of (position, weight) strings.
#[pyfunction]
fn transition_measure(rows: Vec<usize>) -> PyResult<Vec<(String, String)>> {
    let d = diagram(rows)?;
    let measure =
        young::transition_measure(&young::diagram_to_interlacing(&d)).map_err(err)?;
    Ok(measure
        .atoms()
        .iter()
        .map(|(x, w)| (format_rational(x), format_rational(w)))
        .collect())
}

/// Interlacing coordinates (minima, maxima) of a diagram profile.
#[pyfunction]
fn interlacing(rows: Vec<usize>) -> PyResult<(Vec<i64>, Vec<i64>)> {
    let d = diagram(rows)?;
    let coords = young::diagram_to_interlacing(&d);
    Ok((coords.minima().to_vec(), coords.maxima().to_vec()))
}

#[pyfunction]
fn diagram_free_cumulants(rows: Vec<usize>, order: usize) -> PyResult<Vec<String>> {
    let d = diagram(rows)?;
    Ok(render(young::diagram_free_cumulants(&d, order).values()))
}

/// Leading-order character estimate: returns (value, remainder exponent).
#[pyfunction]
fn character_estimate(
    rows: Vec<usize>,
    cycles: BTreeMap<usize, usize>,
) -> PyResult<(String, f64)> {
    let estimate =
        young::character_estimate(&diagram(rows)?, &cycle_type(cycles)?).map_err(err)?;
    Ok((
        format_rational(estimate.value()),
        estimate.order_bound_exponent(),
    ))
}

/// Exact normalized character via the Murnaghan-Nakayama recursion.
#[pyfunction]
fn mn_character(rows: Vec<usize>, cycles: BTreeMap<usize, usize>) -> PyResult<String> {
    let value = young::mn_character(&diagram(rows)?, &cycle_type(cycles)?).map_err(err)?;
    Ok(format_rational(&value))
}

/// Factorization defect |chi(s1 s2) - chi(s1) chi(s2)| and its comparison
/// scale n^(-1-|s1 s2|/2).
#[pyfunction]
fn factorization_defect(
    rows: Vec<usize>,
    cycles1: BTreeMap<usize, usize>,
    cycles2: BTreeMap<usize, usize>,
) -> PyResult<(f64, f64)> {
    let result = young::factorization_defect(
        &diagram(rows)?,
        &cycle_type(cycles1)?,
        &cycle_type(cycles2)?,
    )
    .map_err(err)?;
    Ok((result.defect_f64(), result.scale))
}

/// Exact induced decomposition: list of (rows, multiplicity).
#[pyfunction]
fn induced_decomposition(
    rows1: Vec<usize>,
    rows2: Vec<usize>,
) -> PyResult<Vec<(Vec<usize>, u64)>> {
    let result = young::induced_decomposition_oracle(&diagram(rows1)?, &diagram(rows2)?)
        .map_err(err)?;
    Ok(result
        .into_iter()
        .map(|(nu, mult)| (nu.rows().to_vec(), mult))
        .collect())
}

/// Free-convolution prediction for the induced-shape transition moments.
#[pyfunction]
fn induce_shape_prediction(
    rows1: Vec<usize>,
    rows2: Vec<usize>,
    order: usize,
) -> PyResult<Vec<String>> {
    let prediction =
        young::induce_shape_prediction(&diagram(rows1)?, &diagram(rows2)?, order)
            .map_err(err)?;
    Ok(render(prediction.values()))
}

#[pyfunction]
fn balanced_check(rows: Vec<usize>, a: f64) -> PyResult<bool> {
    Ok(young::balanced_check(&diagram(rows)?, a))
}

/// Deterministic spectrum realizing a named law at dimension n.
#[pyfunction]
fn spectrum_of_law(law: &str, n: usize) -> PyResult<Vec<f64>> {
    let law: NamedLaw = law.parse().map_err(err)?;
    rmt::spectrum_of_law(&law, n).map_err(err)
}

/// Monte Carlo spectrum of X_A + X_B: dict with empirical/predicted moments
/// and the pooled eigenvalues.
#[pyfunction]
#[pyo3(signature = (law_a, law_b, n, trials, seed, order = 4))]
fn sum_experiment<'py>(
    py: Python<'py>,
    law_a: &str,
    law_b: &str,
    n: usize,
    trials: u64,
    seed: u64,
    order: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let a: NamedLaw = law_a.parse().map_err(err)?;
    let b: NamedLaw = law_b.parse().map_err(err)?;
    let spec_a = rmt::spectrum_of_law(&a, n).map_err(err)?;
    let spec_b = rmt::spectrum_of_law(&b, n).map_err(err)?;
    let result = rmt::sum_spectrum_experiment(&spec_a, &spec_b, trials, seed, None, None, order)
        .map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item(
        "empirical",
        result
            .empirical_moments
            .iter()
            .map(|e| (e.value, e.stderr))
            .collect::<Vec<_>>(),
    )?;
    dict.set_item("predicted", result.predicted_moments.clone())?;
    dict.set_item("eigenvalues", result.spectrum.eigenvalues.clone())?;
    Ok(dict)
}

/// Corner (free compression) experiment: empirical vs predicted moments.
#[pyfunction]
#[pyo3(signature = (law, t, n, trials, seed, order = 4))]
fn submatrix_experiment<'py>(
    py: Python<'py>,
    law: &str,
    t: &str,
    n: usize,
    trials: u64,
    seed: u64,
    order: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let law: NamedLaw = law.parse().map_err(err)?;
    let spec = rmt::spectrum_of_law(&law, n).map_err(err)?;
    let t = parse_rational(t).map_err(err)?;
    let result = rmt::submatrix_spectrum(&spec, &t, trials, seed, order).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("corner_dim", result.corner_dim)?;
    dict.set_item(
        "empirical",
        result
            .empirical_moments
            .iter()
            .map(|e| (e.value, e.stderr))
            .collect::<Vec<_>>(),
    )?;
    dict.set_item("predicted", result.predicted_moments.clone())?;
    Ok(dict)
}

/// Entry-cumulant experiment rows: (order, cumulant, stderr, C/N, C/N^2).
#[pyfunction]
#[pyo3(signature = (law, n, n_max, trials, seed))]
fn entry_cumulant_experiment(
    law: &str,
    n: usize,
    n_max: usize,
    trials: u64,
    seed: u64,
) -> PyResult<Vec<(usize, f64, f64, f64, f64)>> {
    let law: NamedLaw = law.parse().map_err(err)?;
    let spec = rmt::spectrum_of_law(&law, n).map_err(err)?;
    let rows = rmt::entry_cumulant_mc(&spec, n_max, trials, seed).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            (
                r.order,
                r.cumulant,
                r.stderr,
                r.rescaled_alpha1,
                r.rescaled_alpha2,
            )
        })
        .collect())
}

/// Max unitarity residual of one sampled Haar unitary (sanity probe).
#[pyfunction]
fn haar_unitarity_residual(n: usize, seed: u64) -> PyResult<f64> {
    let mut rng = rmt::stream_rng(seed, 0, 0);
    let u = rmt::sample_haar_unitary(n, &mut rng);
    Ok(rmt::unitarity_residual(&u))
}

#[pymodule]
fn ncprob_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(nc_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_nc, m)?)?;
    m.add_function(wrap_pyfunction!(is_noncrossing, m)?)?;
    m.add_function(wrap_pyfunction!(nc_to_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(permutation_to_nc, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_distance, m)?)?;
    m.add_function(wrap_pyfunction!(moebius_whole_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(free_cumulants_from_moments, m)?)?;
    m.add_function(wrap_pyfunction!(classical_cumulants_from_moments, m)?)?;
    m.add_function(wrap_pyfunction!(moments_from_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(free_cumulants_via_inversion, m)?)?;
    m.add_function(wrap_pyfunction!(free_convolve, m)?)?;
    m.add_function(wrap_pyfunction!(free_compress, m)?)?;
    m.add_function(wrap_pyfunction!(dilate, m)?)?;
    m.add_function(wrap_pyfunction!(law_moments, m)?)?;
    m.add_function(wrap_pyfunction!(free_mixed_moment, m)?)?;
    m.add_function(wrap_pyfunction!(transition_measure, m)?)?;
    m.add_function(wrap_pyfunction!(interlacing, m)?)?;
    m.add_function(wrap_pyfunction!(diagram_free_cumulants, m)?)?;
    m.add_function(wrap_pyfunction!(character_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(mn_character, m)?)?;
    m.add_function(wrap_pyfunction!(factorization_defect, m)?)?;
    m.add_function(wrap_pyfunction!(induced_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(induce_shape_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_check, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_of_law, m)?)?;
    m.add_function(wrap_pyfunction!(sum_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(submatrix_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(entry_cumulant_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(haar_unitarity_residual, m)?)?;
    Ok(())
}
