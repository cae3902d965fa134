//! File formats: JSON for moment/cumulant sequences, measures, diagrams,
//! cycle types, and experiment configs; CSV for histograms.
//!
//! Exact rationals travel as strings (`"3/2"`); plain JSON numbers are also
//! accepted on input and converted exactly.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{format_rational, parse_rational, rational_from_f64};
use crate::cumulants::{CumulantKind, CumulantSequence, MomentSequence};
use crate::measure::{DiscreteMeasure, MeasureError, NamedLaw};
use crate::rmt::Histogram;
use crate::young::{CycleType, InterlacingCoords, YoungDiagram, YoungError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational literal `{0}`")]
    Rational(String),
    #[error("diagram JSON must have exactly one of `rows` or `minima`/`maxima`")]
    DiagramShape,
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("invalid cumulant kind `{0}`")]
    Kind(String),
}

/// A rational that serializes as a `"p/q"` string but deserializes from
/// either a string or a JSON number.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Text(String),
    Number(f64),
}

fn to_rational(repr: &RationalRepr) -> Result<BigRational, FormatError> {
    match repr {
        RationalRepr::Text(s) => parse_rational(s).map_err(|e| FormatError::Rational(e.0)),
        RationalRepr::Number(x) => {
            rational_from_f64(*x).ok_or_else(|| FormatError::Rational(x.to_string()))
        }
    }
}

fn from_rational(r: &BigRational) -> RationalRepr {
    RationalRepr::Text(format_rational(r))
}

/// Moment files are bare JSON arrays of rationals: `["1/2", "3/2"]`.
pub fn moments_to_json(m: &MomentSequence) -> String {
    let repr: Vec<RationalRepr> = m.values().iter().map(from_rational).collect();
    serde_json::to_string(&repr).expect("serializable")
}

pub fn moments_from_json(text: &str) -> Result<MomentSequence, FormatError> {
    let repr: Vec<RationalRepr> = serde_json::from_str(text)?;
    let values = repr
        .iter()
        .map(to_rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MomentSequence::new(values))
}

#[derive(Debug, Serialize, Deserialize)]
struct CumulantsRepr {
    kind: String,
    values: Vec<RationalRepr>,
}

/// Cumulant sequences carry their kind tag: `{"kind":"free","values":[...]}`.
pub fn cumulants_to_json(c: &CumulantSequence) -> String {
    let repr = CumulantsRepr {
        kind: match c.kind() {
            CumulantKind::Free => "free".into(),
            CumulantKind::Classical => "classical".into(),
        },
        values: c.values().iter().map(from_rational).collect(),
    };
    serde_json::to_string(&repr).expect("serializable")
}

pub fn cumulants_from_json(text: &str) -> Result<CumulantSequence, FormatError> {
    let repr: CumulantsRepr = serde_json::from_str(text)?;
    let kind = match repr.kind.as_str() {
        "free" => CumulantKind::Free,
        "classical" => CumulantKind::Classical,
        other => return Err(FormatError::Kind(other.to_string())),
    };
    let values = repr
        .values
        .iter()
        .map(to_rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CumulantSequence::new(kind, values))
}

#[derive(Debug, Serialize, Deserialize)]
struct AtomRepr {
    x: RationalRepr,
    w: RationalRepr,
}

#[derive(Debug, Serialize, Deserialize)]
struct MeasureRepr {
    atoms: Vec<AtomRepr>,
}

/// `{"atoms":[{"x":"-1","w":"1/2"},...]}`; numbers allowed for x and w.
pub fn measure_to_json(m: &DiscreteMeasure) -> String {
    let repr = MeasureRepr {
        atoms: m
            .atoms()
            .iter()
            .map(|(x, w)| AtomRepr {
                x: from_rational(x),
                w: from_rational(w),
            })
            .collect(),
    };
    serde_json::to_string(&repr).expect("serializable")
}

pub fn measure_from_json(text: &str) -> Result<DiscreteMeasure, FormatError> {
    let repr: MeasureRepr = serde_json::from_str(text)?;
    let atoms = repr
        .atoms
        .iter()
        .map(|a| Ok((to_rational(&a.x)?, to_rational(&a.w)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    // Tolerant constructor: float-weight input may be off by rounding.
    Ok(DiscreteMeasure::new_tolerant(atoms)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramRepr {
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minima: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maxima: Option<Vec<i64>>,
}

/// `{"rows":[3,2,2,1]}` or `{"minima":[...],"maxima":[...]}`, exclusively.
pub fn diagram_from_json(text: &str) -> Result<YoungDiagram, FormatError> {
    let repr: DiagramRepr = serde_json::from_str(text)?;
    match (repr.rows, repr.minima, repr.maxima) {
        (Some(rows), None, None) => Ok(YoungDiagram::new(rows)?),
        (None, Some(minima), Some(maxima)) => {
            let coords = InterlacingCoords::new(minima, maxima)?;
            Ok(crate::young::interlacing_to_diagram(&coords))
        }
        _ => Err(FormatError::DiagramShape),
    }
}

pub fn diagram_to_json(d: &YoungDiagram) -> String {
    let repr = DiagramRepr {
        rows: Some(d.rows().to_vec()),
        minima: None,
        maxima: None,
    };
    serde_json::to_string(&repr).expect("serializable")
}

/// Cycle types map cycle length to count: `{"2":1,"3":2}`.
pub fn cycle_type_from_json(text: &str) -> Result<CycleType, FormatError> {
    let repr: std::collections::BTreeMap<String, usize> = serde_json::from_str(text)?;
    let mut counts = std::collections::BTreeMap::new();
    for (k, v) in repr {
        let j: usize = k
            .parse()
            .map_err(|_| FormatError::Young(YoungError::ParseCycleType(k.clone())))?;
        counts.insert(j, v);
    }
    Ok(CycleType::new(counts)?)
}

pub fn cycle_type_to_json(ct: &CycleType) -> String {
    let repr: std::collections::BTreeMap<String, usize> = ct
        .counts()
        .iter()
        .map(|(&j, &k)| (j.to_string(), k))
        .collect();
    serde_json::to_string(&repr).expect("serializable")
}

/// Histogram CSV: `bin_left,bin_right,count[,predicted_density]`.
pub fn histogram_to_csv(h: &Histogram, predicted_density: Option<&dyn Fn(f64) -> f64>) -> String {
    let mut out = String::new();
    out.push_str("bin_left,bin_right,count");
    if predicted_density.is_some() {
        out.push_str(",predicted_density");
    }
    out.push('\n');
    for (i, &count) in h.counts.iter().enumerate() {
        let (lo, hi) = (h.edges[i], h.edges[i + 1]);
        out.push_str(&format!("{lo:.12},{hi:.12},{count}"));
        if let Some(f) = predicted_density {
            let mid = 0.5 * (lo + hi);
            out.push_str(&format!(",{:.12}", f(mid)));
        }
        out.push('\n');
    }
    out
}

/// Experiment configuration for the Monte Carlo subcommands; CLI flags
/// override any field provided here.
#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub struct ExperimentConfig {
    #[serde(skip_serializing_if = "Option::is_none", alias = "N")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Named laws (`"proj:0.5"`) or explicit spectra, one per generator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<Vec<SpectrumSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
}

/// A spectrum is either a named law tag or an explicit eigenvalue list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpectrumSpec {
    Law(String),
    Values(Vec<f64>),
}

impl SpectrumSpec {
    pub fn realize(&self, n: usize) -> Result<Vec<f64>, String> {
        match self {
            SpectrumSpec::Law(tag) => {
                let law: NamedLaw = tag.parse().map_err(|e| format!("{e}"))?;
                crate::rmt::spectrum_of_law(&law, n).map_err(|e| format!("{e}"))
            }
            SpectrumSpec::Values(v) => {
                if v.len() != n {
                    return Err(format!("explicit spectrum has {} entries, need {n}", v.len()));
                }
                Ok(v.clone())
            }
        }
    }
}

pub fn config_from_json(text: &str) -> Result<ExperimentConfig, FormatError> {
    Ok(serde_json::from_str(text)?)
}
