//! `ncprob`: lattice enumeration, exact cumulant transforms, free
//! convolution, Young-diagram analytics, and seeded random-matrix
//! experiments, from one binary.
//!
//! Exit codes: 0 success, 2 usage error, 3 size-cap error, 4 numeric failure.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::One;

use ncprob::arith::{format_rational, parse_rational, rational_to_f64};
use ncprob::cumulants::MomentSequence;
use ncprob::io as formats;
use ncprob::measure::NamedLaw;
use ncprob::partitions::{self, PartitionError};
use ncprob::rmt;
use ncprob::transforms;
use ncprob::young::{self, CycleType, YoungDiagram, YoungError};
use render::{Format, Table};

#[derive(Parser)]
#[command(name = "ncprob", version, about = "Noncrossing-partition free probability toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the noncrossing partitions NC(n).
    Nc {
        n: usize,
        /// Annotate each partition with its geodesic permutation image.
        #[arg(long)]
        perm: bool,
        /// Override the enumeration cap (default 14).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Moment-to-cumulant transform (free or classical).
    Cumulants {
        /// JSON moment file (array of rationals).
        #[arg(long, conflicts_with = "law")]
        moments: Option<PathBuf>,
        /// Named law, e.g. `bernoulli:0.5:0:1`, `semicircle:1`, `point:2`.
        #[arg(long)]
        law: Option<String>,
        #[arg(long, value_enum, default_value = "free")]
        kind: KindArg,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Free convolution of two laws, with optional free compression.
    Freeconv {
        #[arg(long, conflicts_with = "moments_a")]
        law_a: Option<String>,
        #[arg(long, conflicts_with = "moments_b")]
        law_b: Option<String>,
        #[arg(long)]
        moments_a: Option<PathBuf>,
        #[arg(long)]
        moments_b: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Apply free compression by t in (0,1] to the convolution.
        #[arg(long)]
        compress: Option<String>,
    },
    /// Young-diagram analytics.
    Diagram {
        /// Row lengths, e.g. `3,2,2,1`.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// Seeded Monte Carlo experiments over Haar-rotated matrix models.
    Rmt {
        #[command(subcommand)]
        experiment: RmtCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum KindArg {
    Free,
    Classical,
}

#[derive(Subcommand)]
enum DiagramAction {
    /// Transition measure of the diagram (exact atoms and weights).
    Transition,
    /// Free cumulants of the transition measure.
    Cumulants {
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Character estimate (and exact character when feasible) for a class.
    Char {
        /// Cycle type as `length:count`, e.g. `2:1` or `2:1,3:2`.
        #[arg(long)]
        cycles: String,
    },
    /// Induction-shape prediction: free convolution with another diagram.
    Induce {
        /// Row lengths of the second diagram.
        #[arg(long = "with", value_delimiter = ',')]
        with: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
}

#[derive(Args, Clone)]
struct RmtCommon {
    /// Master seed (required: no silent entropy).
    #[arg(long)]
    seed: Option<u64>,
    /// Matrix dimension N.
    #[arg(short = 'N', long = "dim")]
    n: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RmtCommand {
    /// Spectrum of X_A + X_B vs the free-convolution prediction.
    Sum {
        #[command(flatten)]
        common: RmtCommon,
        #[arg(long)]
        law_a: Option<String>,
        #[arg(long)]
        law_b: Option<String>,
        /// Emit a histogram CSV with this many bins.
        #[arg(long)]
        bins: Option<usize>,
        /// Histogram range `lo:hi` (defaults to the data range).
        #[arg(long)]
        range: Option<String>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Monte Carlo mixed moment of a word vs the free prediction.
    Word {
        #[command(flatten)]
        common: RmtCommon,
        /// Word over generators, e.g. `1,2,1,2`.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        law_a: Option<String>,
        #[arg(long)]
        law_b: Option<String>,
    },
    /// Corner submatrix spectrum vs the free-compression prediction.
    Submatrix {
        #[command(flatten)]
        common: RmtCommon,
        #[arg(long)]
        law: Option<String>,
        /// Compression fraction with t*N integral, e.g. `1/2` or `0.5`.
        #[arg(short = 't', long)]
        t: Option<String>,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Sample classical cumulants of the rescaled entry Y = N*X_11.
    Entrycum {
        #[command(flatten)]
        common: RmtCommon,
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

/// Errors mapped to process exit codes.
enum CliError {
    Usage(String),
    SizeCap(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::SizeCap(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::SizeCap(m) | CliError::Numeric(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_partition_error(e: PartitionError) -> CliError {
    match e {
        PartitionError::SizeLimit { .. } => CliError::SizeCap(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn from_young_error(e: YoungError) -> CliError {
    match e {
        YoungError::InfeasibleSize(..) => CliError::SizeCap(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn from_rmt_error(e: rmt::RmtError) -> CliError {
    match e {
        rmt::RmtError::Eigensolver | rmt::RmtError::Validation(_) => {
            CliError::Numeric(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(output) => {
            let result = match out {
                Some(path) => fs::write(&path, output).map_err(|e| e.to_string()),
                None => std::io::stdout()
                    .write_all(output.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(4)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Nc { n, perm, cap } => cmd_nc(n, perm, cap, cli.format),
        Command::Cumulants {
            moments,
            law,
            kind,
            order,
        } => cmd_cumulants(moments, law, kind, order, cli.format),
        Command::Freeconv {
            law_a,
            law_b,
            moments_a,
            moments_b,
            order,
            compress,
        } => cmd_freeconv(law_a, law_b, moments_a, moments_b, order, compress, cli.format),
        Command::Diagram { rows, action } => cmd_diagram(rows, action, cli.format),
        Command::Rmt { experiment } => cmd_rmt(experiment, cli.format),
    }
}

fn decimal(r: &BigRational) -> String {
    format!("{:.12}", rational_to_f64(r))
}

fn cmd_nc(n: usize, perm: bool, cap: Option<usize>, format: Format) -> Result<String, CliError> {
    let cap = cap.unwrap_or(partitions::NC_ENUMERATION_CAP);
    let mut count = 0u64;
    let mut body = String::new();
    let mut json_rows: Vec<serde_json::Value> = Vec::new();
    if format == Format::Csv {
        body.push_str(if perm { "partition,perm\n" } else { "partition\n" });
    }
    partitions::for_each_nc_capped(n, cap, |p| {
        count += 1;
        let text = p.to_string();
        let image = perm.then(|| {
            ncprob::nc_to_permutation(p)
                .expect("enumerated partitions are noncrossing")
                .to_string()
        });
        match format {
            Format::Text => {
                body.push_str(&text);
                if let Some(s) = &image {
                    body.push_str(" -> ");
                    body.push_str(s);
                }
                body.push('\n');
            }
            Format::Csv => {
                body.push_str(&text);
                if let Some(s) = &image {
                    body.push(',');
                    body.push_str(s);
                }
                body.push('\n');
            }
            Format::Json => {
                json_rows.push(match &image {
                    Some(s) => serde_json::json!({"partition": text, "perm": s}),
                    None => serde_json::Value::String(text),
                });
            }
        }
    })
    .map_err(from_partition_error)?;
    let catalan = ncprob::arith::catalan(n as u64);
    match format {
        Format::Text => {
            body.push_str(&format!("count={count} catalan={catalan}\n"));
            Ok(body)
        }
        Format::Csv => Ok(body),
        Format::Json => {
            let value = serde_json::json!({
                "n": n,
                "count": count,
                "catalan": catalan.to_string(),
                "partitions": json_rows,
            });
            Ok(value.to_string() + "\n")
        }
    }
}

fn load_moments(
    moments: Option<PathBuf>,
    law: Option<String>,
    order: usize,
) -> Result<MomentSequence, CliError> {
    match (moments, law) {
        (Some(path), None) => {
            let text = fs::read_to_string(&path).map_err(usage)?;
            let m = formats::moments_from_json(&text).map_err(usage)?;
            if m.order() < order {
                return Err(CliError::Usage(format!(
                    "moment file has order {} but --order {order} was requested",
                    m.order()
                )));
            }
            m.truncated(order).map_err(usage)
        }
        (None, Some(tag)) => {
            let law: NamedLaw = tag.parse().map_err(usage)?;
            Ok(law.moments(order))
        }
        _ => Err(CliError::Usage(
            "exactly one of --moments/--law is required".into(),
        )),
    }
}

fn sequence_table(label: &str, values: &[BigRational]) -> Table {
    let mut table = Table::new(vec!["k", label, "decimal"]);
    for (i, v) in values.iter().enumerate() {
        table.push_row(vec![(i + 1).to_string(), format_rational(v), decimal(v)]);
    }
    table
}

fn cmd_cumulants(
    moments: Option<PathBuf>,
    law: Option<String>,
    kind: KindArg,
    order: usize,
    format: Format,
) -> Result<String, CliError> {
    let m = load_moments(moments, law, order)?;
    let cumulants = match kind {
        KindArg::Free => m.to_free_cumulants(),
        KindArg::Classical => m.to_classical_cumulants(),
    };
    let label = match kind {
        KindArg::Free => "R_k",
        KindArg::Classical => "C_k",
    };
    if format == Format::Json {
        return Ok(formats::cumulants_to_json(&cumulants) + "\n");
    }
    Ok(sequence_table(label, cumulants.values()).render(format))
}

fn cmd_freeconv(
    law_a: Option<String>,
    law_b: Option<String>,
    moments_a: Option<PathBuf>,
    moments_b: Option<PathBuf>,
    order: usize,
    compress: Option<String>,
    format: Format,
) -> Result<String, CliError> {
    let a = load_moments(moments_a, law_a, order)?;
    let b = load_moments(moments_b, law_b, order)?;
    let mut result = transforms::free_convolve(&a, &b, order).map_err(usage)?;
    if let Some(t) = compress {
        let t = parse_rational(&t).map_err(usage)?;
        result = transforms::free_compress(&result, &t).map_err(usage)?;
    }
    let cumulants = result.to_free_cumulants();
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "moments": result.values().iter().map(format_rational).collect::<Vec<_>>(),
                "free_cumulants": cumulants.values().iter().map(format_rational).collect::<Vec<_>>(),
            });
            Ok(value.to_string() + "\n")
        }
        _ => {
            let mut table = Table::new(vec!["k", "m_k", "decimal", "R_k"]);
            for k in 1..=order {
                table.push_row(vec![
                    k.to_string(),
                    format_rational(result.get(k)),
                    decimal(result.get(k)),
                    format_rational(cumulants.get(k)),
                ]);
            }
            Ok(table.render(format))
        }
    }
}

fn cmd_diagram(
    rows: Vec<usize>,
    action: DiagramAction,
    format: Format,
) -> Result<String, CliError> {
    let diagram = YoungDiagram::new(rows).map_err(from_young_error)?;
    match action {
        DiagramAction::Transition => {
            let measure = young::transition_measure(&young::diagram_to_interlacing(&diagram))
                .map_err(from_young_error)?;
            if format == Format::Json {
                return Ok(formats::measure_to_json(&measure) + "\n");
            }
            let mut table = Table::new(vec!["x", "weight", "decimal"]);
            for (x, w) in measure.atoms() {
                table.push_row(vec![format_rational(x), format_rational(w), decimal(w)]);
            }
            Ok(table.render(format))
        }
        DiagramAction::Cumulants { order } => {
            let cumulants = young::diagram_free_cumulants(&diagram, order);
            if format == Format::Json {
                return Ok(formats::cumulants_to_json(&cumulants) + "\n");
            }
            Ok(sequence_table("R_k", cumulants.values()).render(format))
        }
        DiagramAction::Char { cycles } => {
            let ct: CycleType = cycles.parse().map_err(from_young_error)?;
            let estimate = young::character_estimate(&diagram, &ct).map_err(from_young_error)?;
            let exact = young::mn_character(&diagram, &ct).map_err(from_young_error)?;
            let error = ncprob::arith::rational_abs(&(exact.clone() - estimate.value().clone()));
            let mut table = Table::new(vec!["quantity", "exact", "decimal"]);
            table.push_row(vec![
                "estimate".to_string(),
                format_rational(estimate.value()),
                decimal(estimate.value()),
            ]);
            table.push_row(vec![
                "mn_character".to_string(),
                format_rational(&exact),
                decimal(&exact),
            ]);
            // Under the fixed profile orientation the estimate pairs with the
            // conjugate diagram's character on odd classes.
            let conjugate = young::mn_character(&diagram.conjugate(), &ct)
                .map_err(from_young_error)?;
            table.push_row(vec![
                "mn_character_conjugate".to_string(),
                format_rational(&conjugate),
                decimal(&conjugate),
            ]);
            table.push_row(vec![
                "abs_error".to_string(),
                format_rational(&error),
                decimal(&error),
            ]);
            table.push_row(vec![
                "remainder_exponent".to_string(),
                format!("{}", estimate.order_bound_exponent()),
                format!("{:.1}", estimate.order_bound_exponent()),
            ]);
            if format == Format::Json {
                return Ok(table.render_json().to_string() + "\n");
            }
            Ok(table.render(format))
        }
        DiagramAction::Induce { with, order } => {
            let other = YoungDiagram::new(with).map_err(from_young_error)?;
            let prediction = young::induce_shape_prediction(&diagram, &other, order)
                .map_err(from_young_error)?;
            if format == Format::Json {
                return Ok(formats::moments_to_json(&prediction) + "\n");
            }
            Ok(sequence_table("m_k", prediction.values()).render(format))
        }
    }
}

/// CLI flags merged over an optional JSON config; flags win.
struct MergedConfig {
    n: usize,
    trials: u64,
    seed: u64,
    config: formats::ExperimentConfig,
}

fn merge_common(common: &RmtCommon, default_trials: u64) -> Result<MergedConfig, CliError> {
    let config = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(usage)?;
            formats::config_from_json(&text).map_err(usage)?
        }
        None => formats::ExperimentConfig::default(),
    };
    let seed = common
        .seed
        .or(config.seed)
        .ok_or_else(|| CliError::Usage("--seed is required for rmt subcommands".into()))?;
    let n = common.n.or(config.n).unwrap_or(64);
    let trials = common.trials.or(config.trials).unwrap_or(default_trials);
    if n == 0 || trials == 0 {
        return Err(CliError::Usage("dimension and trials must be positive".into()));
    }
    Ok(MergedConfig {
        n,
        trials,
        seed,
        config,
    })
}

fn spectrum_from(
    flag: Option<String>,
    config_spectra: &Option<Vec<formats::SpectrumSpec>>,
    index: usize,
    n: usize,
) -> Result<(Vec<f64>, Option<NamedLaw>), CliError> {
    if let Some(tag) = flag {
        let law: NamedLaw = tag.parse().map_err(usage)?;
        let spectrum = rmt::spectrum_of_law(&law, n).map_err(from_rmt_error)?;
        return Ok((spectrum, Some(law)));
    }
    if let Some(spectra) = config_spectra {
        if let Some(spec) = spectra.get(index) {
            let law = match spec {
                formats::SpectrumSpec::Law(tag) => tag.parse::<NamedLaw>().ok(),
                formats::SpectrumSpec::Values(_) => None,
            };
            return Ok((spec.realize(n).map_err(CliError::Usage)?, law));
        }
    }
    Err(CliError::Usage(format!(
        "no spectrum for generator {} (use --law flags or a config file)",
        index + 1
    )))
}

/// Density of the predicted limit law for the sum experiment, when the
/// convolution has one of the closed forms (two half-projections give the
/// arcsine law on [0,2]; semicircles add their variances).
fn predicted_sum_density(
    a: &Option<NamedLaw>,
    b: &Option<NamedLaw>,
) -> Option<Box<dyn Fn(f64) -> f64>> {
    let half = BigRational::new(1.into(), 2.into());
    match (a, b) {
        (
            Some(NamedLaw::Bernoulli { p: pa, a: aa, b: ba }),
            Some(NamedLaw::Bernoulli { p: pb, a: ab, b: bb }),
        ) if *pa == half
            && *pb == half
            && aa.clone() == BigRational::from_integer(0.into())
            && ab.clone() == BigRational::from_integer(0.into())
            && ba.is_one()
            && bb.is_one() =>
        {
            Some(Box::new(|x: f64| {
                if x <= 0.0 || x >= 2.0 {
                    0.0
                } else {
                    1.0 / (std::f64::consts::PI * (x * (2.0 - x)).sqrt())
                }
            }))
        }
        (
            Some(NamedLaw::Semicircle { variance: va }),
            Some(NamedLaw::Semicircle { variance: vb }),
        ) => {
            let v = rational_to_f64(va) + rational_to_f64(vb);
            Some(Box::new(move |x: f64| {
                let support = 4.0 * v;
                if x * x >= support {
                    0.0
                } else {
                    (support - x * x).sqrt() / (2.0 * std::f64::consts::PI * v)
                }
            }))
        }
        _ => None,
    }
}

fn moments_table(
    estimates: &[rmt::MomentEstimate],
    predicted: &[f64],
    footer: String,
    format: Format,
) -> String {
    let mut table = Table::new(vec!["k", "empirical", "stderr", "predicted"]);
    for (k, (est, pred)) in estimates.iter().zip(predicted).enumerate() {
        table.push_row(vec![
            (k + 1).to_string(),
            format!("{:.9}", est.value),
            format!("{:.9}", est.stderr),
            format!("{pred:.9}"),
        ]);
    }
    table.push_footer(footer);
    table.render(format)
}

fn cmd_rmt(experiment: RmtCommand, format: Format) -> Result<String, CliError> {
    match experiment {
        RmtCommand::Sum {
            common,
            law_a,
            law_b,
            bins,
            range,
            order,
        } => {
            let merged = merge_common(&common, 1)?;
            let (spec_a, parsed_a) = spectrum_from(law_a, &merged.config.spectra, 0, merged.n)?;
            let (spec_b, parsed_b) = spectrum_from(law_b, &merged.config.spectra, 1, merged.n)?;
            let bins = bins.or(merged.config.bins);
            let range = match range {
                Some(text) => {
                    let (lo, hi) = text
                        .split_once(':')
                        .ok_or_else(|| CliError::Usage("range must be lo:hi".into()))?;
                    Some((
                        lo.trim().parse::<f64>().map_err(usage)?,
                        hi.trim().parse::<f64>().map_err(usage)?,
                    ))
                }
                None => None,
            };
            let result = rmt::sum_spectrum_experiment(
                &spec_a,
                &spec_b,
                merged.trials,
                merged.seed,
                bins,
                range,
                order,
            )
            .map_err(from_rmt_error)?;

            // With bins the artifact is the histogram CSV (plottable data);
            // otherwise a moment comparison table.
            if let Some(hist) = &result.spectrum.histogram {
                let density = predicted_sum_density(&parsed_a, &parsed_b);
                let csv = formats::histogram_to_csv(
                    hist,
                    density.as_deref().map(|f| f as &dyn Fn(f64) -> f64),
                );
                return Ok(csv);
            }
            Ok(moments_table(
                &result.empirical_moments,
                &result.predicted_moments,
                format!("N={} trials={} seed={}", merged.n, merged.trials, merged.seed),
                format,
            ))
        }
        RmtCommand::Word {
            common,
            word,
            law_a,
            law_b,
        } => {
            let merged = merge_common(&common, 64)?;
            let word: Vec<usize> = match word.map(|w| {
                w.split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
            }) {
                Some(Ok(w)) => w,
                Some(Err(e)) => return Err(usage(e)),
                None => merged
                    .config
                    .word
                    .clone()
                    .ok_or_else(|| CliError::Usage("--word is required".into()))?,
            };
            let (spec_a, _) = spectrum_from(law_a, &merged.config.spectra, 0, merged.n)?;
            let (spec_b, _) = spectrum_from(law_b, &merged.config.spectra, 1, merged.n)?;
            let model = rmt::MatrixModel::new(
                merged.n,
                vec![spec_a.clone(), spec_b.clone()],
                merged.seed,
            )
            .map_err(from_rmt_error)?;
            let estimate =
                rmt::mixed_moment_mc(&model, &word, merged.trials).map_err(from_rmt_error)?;
            let order = word.len();
            let family = ncprob::FreeFamilySpec::new(vec![
                rmt::spectrum_moments_exact(&spec_a, order),
                rmt::spectrum_moments_exact(&spec_b, order),
            ])
            .map_err(usage)?;
            let letters: Vec<u8> = word.iter().map(|&l| l as u8).collect();
            let prediction = family.free_mixed_moment(&letters).map_err(usage)?;
            let mut table = Table::new(vec!["word", "estimate", "stderr", "predicted"]);
            table.push_row(vec![
                word.iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                format!("{:.9}", estimate.value),
                format!("{:.9}", estimate.stderr),
                format!("{:.9}", rational_to_f64(&prediction)),
            ]);
            table.push_footer(format!(
                "N={} trials={} seed={}",
                merged.n, merged.trials, merged.seed
            ));
            Ok(table.render(format))
        }
        RmtCommand::Submatrix {
            common,
            law,
            t,
            order,
        } => {
            let merged = merge_common(&common, 50)?;
            let (spec, _) = spectrum_from(law, &merged.config.spectra, 0, merged.n)?;
            let t_text = t
                .or_else(|| merged.config.t.clone())
                .ok_or_else(|| CliError::Usage("-t is required".into()))?;
            let t = parse_rational(&t_text).map_err(usage)?;
            let result = rmt::submatrix_spectrum(&spec, &t, merged.trials, merged.seed, order)
                .map_err(from_rmt_error)?;
            Ok(moments_table(
                &result.empirical_moments,
                &result.predicted_moments,
                format!(
                    "N={} corner={} trials={} seed={}",
                    merged.n, result.corner_dim, merged.trials, merged.seed
                ),
                format,
            ))
        }
        RmtCommand::Entrycum { common, law, n_max } => {
            let merged = merge_common(&common, 1000)?;
            let (spec, _) = spectrum_from(law, &merged.config.spectra, 0, merged.n)?;
            let n_max = n_max.or(merged.config.n_max).unwrap_or(4);
            let rows = rmt::entry_cumulant_mc(&spec, n_max, merged.trials, merged.seed)
                .map_err(from_rmt_error)?;
            let mut table = Table::new(vec!["n", "C_n", "stderr", "C_n/N", "C_n/N^2"]);
            for row in rows {
                table.push_row(vec![
                    row.order.to_string(),
                    format!("{:.9}", row.cumulant),
                    format!("{:.9}", row.stderr),
                    format!("{:.9}", row.rescaled_alpha1),
                    format!("{:.9}", row.rescaled_alpha2),
                ]);
            }
            table.push_footer(format!(
                "N={} trials={} seed={}",
                merged.n, merged.trials, merged.seed
            ));
            Ok(table.render(format))
        }
    }
}
