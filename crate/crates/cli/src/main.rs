//! Command-line front end: deterministic verification reports, normalization
//! checks, convergence tables and sampler statistics.
//!
//! Exit codes: 0 when the requested check passes (or agrees within its
//! declared tolerance), 1 on verification failure, 2 on invalid
//! configuration. Reports are byte-identical for identical configurations;
//! JSON is the canonical format and CSV/text are projections of it.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::io::Write;
use ubessel_core::exact::{decimal_string, parse_rational, rational_to_f64};
use ubessel_core::identity::{self, SParam};
use ubessel_core::measures;
use ubessel_core::numeric::{self, CMatrix};
use ubessel_core::partitions::{partitions_of, Partition};
use ubessel_core::stats;

#[derive(Parser)]
#[command(
    name = "ubessel",
    about = "Exact and statistical checks for unitary Bessel-series identities and their partition measures",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// RNG seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel verification loops and Monte Carlo.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Report destination; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<String>,
    /// Report format. JSON is canonical; csv and text are projections.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Exact coefficient verification of the power series identity.
    VerifyTheorem1 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Integer value, or `sym` for the rational-function check.
        #[arg(long)]
        s: String,
        /// Total-degree bound on the exponent vectors.
        #[arg(long)]
        degree: u32,
    },
    /// Exact verification of the Schur-weight form of the identity.
    VerifyCorollary {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u64,
        /// Bound on |mu| + |nu|.
        #[arg(long)]
        weight: u32,
    },
    /// Randomized batteries for the Cauchy-type determinant identity and
    /// the extended Andreief integration formula.
    VerifyLemmas {
        #[arg(long, default_value_t = 100)]
        instances: u32,
    },
    /// Brackets the normalization constant by its truncated sum and
    /// compares with the Bessel determinant.
    ZCheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 30)]
        cutoff: u32,
    },
    /// Checks that the determinant formula recovers the one-block series
    /// on the n = 0 face.
    BesselRecovery {
        #[arg(long)]
        m: u32,
        /// Rational scaling, e.g. `1/2`.
        #[arg(long, default_value = "1")]
        beta: String,
        /// Comma-separated rational eigenvalues; defaults to 1,2,...,m.
        #[arg(long)]
        lambdas: Option<String>,
    },
    /// Statistics of Haar-unitary draws: first-entry moments and
    /// unitarity defect.
    HaarCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Draws from a partition measure and compares empirical frequencies
    /// with the exact masses (chi-square).
    Sample {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        /// Poissonized Plancherel rate (rational), e.g. `1` or `3/2`.
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, default_value_t = 100_000)]
        draws: u64,
        /// Partitions up to this size get their own chi-square cell.
        #[arg(long, default_value_t = 3)]
        max_size: u32,
    },
    /// Convergence tables for the diagonal limit m = n = s = t.
    Limits {
        /// Partition for the diagonal measure, e.g. `2,1`; empty for the
        /// empty partition.
        #[arg(long, default_value = "")]
        lam: String,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value = "")]
        nu: String,
        /// Comma-separated diagonal sizes.
        #[arg(long, default_value = "2,4,8,16")]
        t: String,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Plancherel,
    P,
    Q,
}

/// The full configuration of a run, embedded verbatim in every report.
#[derive(Serialize, Clone, Default)]
struct RunConfig {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instances: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambdas: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    draws: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_size: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lam: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    seed: u64,
    threads: usize,
    format: String,
}

struct Rendered {
    verdict: bool,
    payload: serde_json::Value,
    csv: String,
    text: String,
}

fn fail(msg: String) -> ConfigError {
    ConfigError(msg)
}

#[derive(Debug)]
struct ConfigError(String);

fn parse_partition(text: &str) -> Result<Partition, ConfigError> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    if t.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in t.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| fail(format!("invalid partition part: {piece:?}")))?;
        parts.push(v);
    }
    if !parts.windows(2).all(|w| w[0] >= w[1]) {
        return Err(fail(format!(
            "partition parts must be weakly decreasing: {text:?}"
        )));
    }
    Ok(Partition::new(parts))
}

fn parse_rat(text: &str) -> Result<BigRational, ConfigError> {
    parse_rational(text).map_err(|e| fail(e.to_string()))
}

fn check(cond: bool, msg: &str) -> Result<(), ConfigError> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg.to_string()))
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    let common = cli.common.clone();
    check(
        (1..=64).contains(&common.threads),
        "threads must be between 1 and 64",
    )?;
    let mut config = RunConfig {
        seed: common.seed,
        threads: common.threads,
        format: format_name(common.format).to_string(),
        ..RunConfig::default()
    };
    let started = std::time::Instant::now();
    let rendered = dispatch(&cli.command, &common, &mut config)?;
    // Timing goes to stderr so report files stay byte-identical across
    // identical runs.
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());

    let doc = json!({
        "config": config,
        "verdict": if rendered.verdict { "PASS" } else { "FAIL" },
        "report": rendered.payload,
    });
    let body = match common.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
        Format::Csv => {
            let cfg = serde_json::to_string(&config).unwrap();
            format!(
                "# config {cfg}\n# verdict {}\n{}",
                if rendered.verdict { "PASS" } else { "FAIL" },
                rendered.csv
            )
        }
        Format::Text => {
            let cfg = serde_json::to_string(&config).unwrap();
            format!(
                "config: {cfg}\nverdict: {}\n{}",
                if rendered.verdict { "PASS" } else { "FAIL" },
                rendered.text
            )
        }
    };
    match &common.output {
        None => {
            print!("{body}");
            std::io::stdout().flush().ok();
        }
        Some(path) => {
            std::fs::write(path, body).map_err(|e| fail(format!("cannot write {path}: {e}")))?;
        }
    }
    Ok(if rendered.verdict { 0 } else { 1 })
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    }
}

fn verification_rendered(report: &identity::VerificationReport) -> Rendered {
    let mut csv = String::from("index,lhs,rhs\n");
    for f in &report.failures {
        csv.push_str(&format!("{},{},{}\n", f.index, f.lhs, f.rhs));
    }
    let text = format!(
        "check: {}\nchecked: {} coefficients\nfailures: {}\n",
        report.check,
        report.checked,
        report.failures.len()
    );
    Rendered {
        verdict: report.passed(),
        payload: serde_json::to_value(report).unwrap(),
        csv,
        text,
    }
}

fn dispatch(
    command: &Command,
    common: &Common,
    config: &mut RunConfig,
) -> Result<Rendered, ConfigError> {
    match command {
        Command::VerifyTheorem1 { m, n, s, degree } => {
            config.command = "verify-theorem1".into();
            config.m = Some(*m);
            config.n = Some(*n);
            config.s = Some(s.clone());
            config.degree = Some(*degree);
            check((1..=6).contains(m) && (1..=6).contains(n), "need 1 <= m, n <= 6")?;
            check(*degree <= 16, "degree must be at most 16")?;
            let sparam = if s == "sym" {
                SParam::Symbolic
            } else {
                SParam::Integer(
                    s.parse()
                        .map_err(|_| fail(format!("s must be an integer or `sym`, got {s:?}")))?,
                )
            };
            let report = identity::verify_theorem1(*m, *n, sparam, *degree, common.threads);
            Ok(verification_rendered(&report))
        }
        Command::VerifyCorollary { m, n, s, weight } => {
            config.command = "verify-corollary".into();
            config.m = Some(*m);
            config.n = Some(*n);
            config.s = Some(s.to_string());
            config.weight = Some(*weight);
            check((1..=6).contains(m) && (1..=6).contains(n), "need 1 <= m, n <= 6")?;
            check(*weight <= 16, "weight must be at most 16")?;
            check(*s <= 8, "s must be at most 8")?;
            let report = identity::verify_corollary(*m, *n, *s, *weight, common.threads);
            Ok(verification_rendered(&report))
        }
        Command::VerifyLemmas { instances } => {
            config.command = "verify-lemmas".into();
            config.instances = Some(*instances);
            check(
                (1..=100_000).contains(instances),
                "instances must be between 1 and 100000",
            )?;
            let bf = identity::bf94_battery(*instances, common.seed);
            let an = identity::andreief_battery(*instances, common.seed ^ 1);
            let verdict = bf.passed() && an.passed();
            let csv = format!(
                "battery,checked,failures\nbf94,{},{}\nandreief,{},{}\n",
                bf.checked,
                bf.failures.len(),
                an.checked,
                an.failures.len()
            );
            let text = format!(
                "bf94 determinant: {} instances, {} failures\nandreief: {} instances, {} failures\n",
                bf.checked,
                bf.failures.len(),
                an.checked,
                an.failures.len()
            );
            Ok(Rendered {
                verdict,
                payload: json!({ "bf94": bf, "andreief": an }),
                csv,
                text,
            })
        }
        Command::ZCheck { m, n, s, cutoff } => {
            config.command = "z-check".into();
            config.m = Some(*m);
            config.n = Some(*n);
            config.s = Some(s.to_string());
            config.cutoff = Some(*cutoff);
            check(*m <= 6 && *n <= 6 && *m + *n >= 1, "need m, n <= 6 with m + n >= 1")?;
            check(*s <= 8, "s must be at most 8")?;
            check((1..=100).contains(cutoff), "cutoff must be between 1 and 100")?;
            let (partial, tail) = measures::normalization_z_truncated(*m, *n, *s, *cutoff);
            let det = measures::normalization_z_bessel(*m, *n, *s);
            let hi = &partial + &tail;
            let contains = det.upper() >= partial && det.lower() <= hi;
            let diff = (det.value() - &partial).abs();
            let payload = json!({
                "partial_sum": decimal_string(&partial, 30),
                "tail_bound": decimal_string(&tail, 3),
                "bracket_upper": decimal_string(&hi, 30),
                "bessel_determinant": det,
                "bracket_contains_determinant": contains,
                "abs_difference": decimal_string(&diff, 3),
            });
            let csv = format!(
                "quantity,value\npartial_sum,{}\ntail_bound,{}\nbessel,{}\nbessel_abs_error,{}\ncontains,{}\n",
                decimal_string(&partial, 30),
                decimal_string(&tail, 3),
                decimal_string(det.value(), 30),
                decimal_string(det.abs_error(), 3),
                contains
            );
            let text = format!(
                "truncated sum: {}\ntail bound: {}\nBessel determinant: {}\nbracket contains determinant: {}\n",
                decimal_string(&partial, 30),
                decimal_string(&tail, 3),
                det,
                contains
            );
            Ok(Rendered {
                verdict: contains,
                payload,
                csv,
                text,
            })
        }
        Command::BesselRecovery { m, beta, lambdas } => {
            config.command = "bessel-recovery".into();
            config.m = Some(*m);
            config.beta = Some(beta.clone());
            config.lambdas = lambdas.clone();
            check((1..=6).contains(m), "need 1 <= m <= 6")?;
            let beta_r = parse_rat(beta)?;
            let lam: Vec<BigRational> = match lambdas {
                None => (1..=*m as i64)
                    .map(|v| BigRational::from_integer(v.into()))
                    .collect(),
                Some(csv) => csv
                    .split(',')
                    .map(|t| parse_rat(t))
                    .collect::<Result<_, _>>()?,
            };
            check(lam.len() == *m as usize, "need exactly m eigenvalues")?;
            let rhs = numeric::theorem2_rhs(&beta_r, &lam, *m, 0)
                .map_err(|e| fail(e.to_string()))?;
            let z: Vec<BigRational> = lam.iter().map(|l| &beta_r * &beta_r * l * l).collect();
            let series = numeric::series_g(&z, 0, 40).map_err(|e| fail(e.to_string()))?;
            let rel = rational_to_f64(&(rhs.value() - series.value()).abs())
                / rational_to_f64(&series.value().abs());
            let slack = rational_to_f64(&(rhs.abs_error() + series.abs_error()))
                / rational_to_f64(&series.value().abs());
            let verdict = rel <= 1e-6 + slack;
            let payload = json!({
                "determinant_formula": rhs,
                "series": series,
                "relative_error": rel,
                "tolerance": 1e-6,
            });
            let csv = format!(
                "quantity,value\ndeterminant_formula,{}\nseries,{}\nrelative_error,{rel}\n",
                decimal_string(rhs.value(), 30),
                decimal_string(series.value(), 30)
            );
            let text = format!(
                "determinant formula: {rhs}\none-block series:    {series}\nrelative error: {rel:e} (tolerance 1e-6)\n"
            );
            Ok(Rendered {
                verdict,
                payload,
                csv,
                text,
            })
        }
        Command::HaarCheck { n, samples } => {
            config.command = "haar-check".into();
            config.n = Some(*n);
            config.samples = Some(*samples);
            check((1..=6).contains(n), "need 1 <= n <= 6")?;
            check(
                (100..=10_000_000).contains(samples),
                "samples must be between 100 and 10^7",
            )?;
            let mut rng = ChaCha12Rng::seed_from_u64(common.seed);
            let nn = *n as usize;
            let mut sum_sq = 0.0f64;
            let mut sum_sq2 = 0.0f64;
            let mut sum_re = 0.0f64;
            let mut sum_im = 0.0f64;
            let mut max_defect = 0.0f64;
            for _ in 0..*samples {
                let u = numeric::haar_sample(nn, &mut rng);
                max_defect = max_defect.max(u.unitarity_defect());
                let e = u.0[(0, 0)];
                let a = e.norm_sqr();
                sum_sq += a;
                sum_sq2 += a * a;
                sum_re += e.re;
                sum_im += e.im;
            }
            let nf = *samples as f64;
            let mean_sq = sum_sq / nf;
            let se_sq = (((sum_sq2 - nf * mean_sq * mean_sq) / (nf - 1.0)).max(0.0) / nf).sqrt();
            let target = 1.0 / *n as f64;
            let sig_sq = (mean_sq - target).abs() / se_sq;
            // |U_11| <= 1, so a crude per-component bound on the SE of the
            // mean entry suffices for the zero-mean check.
            let mean_entry = (sum_re / nf).hypot(sum_im / nf);
            let sig_entry = mean_entry / (1.0 / nf.sqrt());
            // End-to-end check of the sampler: the Monte Carlo mean of the
            // one-matrix integrand against its exact series value.
            let a = CMatrix::diag(&(1..=*n as i64).map(|v| v as f64).collect::<Vec<_>>());
            let b = CMatrix::identity(*n as usize);
            let est = numeric::mc_integral_g(&a, &b, 0, *samples, common.seed, common.threads);
            let z: Vec<BigRational> = (1..=*n as i64)
                .map(|v| BigRational::from_integer(v.into()))
                .collect();
            let series = numeric::series_g(&z, 0, 40).map_err(|e| fail(e.to_string()))?;
            let sig_integral = est.deviation_sigmas(rational_to_f64(series.value()));
            let verdict = sig_sq <= 3.0
                && sig_entry <= 3.0
                && max_defect <= 1e-12
                && sig_integral <= 5.0;
            let payload = json!({
                "mean_abs_u11_squared": mean_sq,
                "expected": target,
                "sigmas": sig_sq,
                "mean_u11_modulus": mean_entry,
                "mean_u11_sigmas": sig_entry,
                "max_unitarity_defect": max_defect,
                "integral_estimate": est,
                "integral_series": series,
                "integral_sigmas": sig_integral,
            });
            let csv = format!(
                "quantity,value\nmean_abs_u11_squared,{mean_sq}\nexpected,{target}\nsigmas,{sig_sq}\nmax_unitarity_defect,{max_defect}\nintegral_estimate,{}\nintegral_series,{}\nintegral_sigmas,{sig_integral}\n",
                est.mean_re,
                decimal_string(series.value(), 17)
            );
            let text = format!(
                "mean |U_11|^2 = {mean_sq:.6} (expected {target:.6}, {sig_sq:.2} sigma)\nmean U_11 modulus = {mean_entry:.6} ({sig_entry:.2} sigma)\nmax unitarity defect = {max_defect:.3e}\nintegral estimate = {:.6} vs series {} ({sig_integral:.2} sigma)\n",
                est.mean_re,
                decimal_string(series.value(), 10)
            );
            Ok(Rendered {
                verdict,
                payload,
                csv,
                text,
            })
        }
        Command::Sample {
            measure,
            alpha,
            m,
            n,
            s,
            draws,
            max_size,
        } => {
            config.command = "sample".into();
            config.measure = Some(
                match measure {
                    MeasureArg::Plancherel => "plancherel",
                    MeasureArg::P => "p",
                    MeasureArg::Q => "q",
                }
                .to_string(),
            );
            config.draws = Some(*draws);
            config.max_size = Some(*max_size);
            check(
                (100..=10_000_000).contains(draws),
                "draws must be between 100 and 10^7",
            )?;
            check((1..=6).contains(max_size), "max-size must be between 1 and 6")?;
            match measure {
                MeasureArg::Plancherel => {
                    config.alpha = Some(alpha.clone());
                    let alpha_r = parse_rat(alpha)?;
                    check(
                        alpha_r >= BigRational::from_integer(0.into())
                            && alpha_r <= BigRational::from_integer(30.into()),
                        "alpha must be in [0, 30]",
                    )?;
                    sample_plancherel(&alpha_r, *draws, *max_size, common.seed)
                }
                MeasureArg::P => {
                    config.m = Some(*m);
                    config.n = Some(*n);
                    config.s = Some(s.to_string());
                    check((1..=6).contains(m) && (1..=6).contains(n), "need 1 <= m, n <= 6")?;
                    check(*s <= 4, "s must be at most 4")?;
                    sample_p_measure(*m, *n, *s, *draws, *max_size, common.seed)
                }
                MeasureArg::Q => {
                    config.m = Some(*m);
                    config.n = Some(*n);
                    config.s = Some(s.to_string());
                    check((1..=6).contains(m) && (1..=6).contains(n), "need 1 <= m, n <= 6")?;
                    check(*s <= 4, "s must be at most 4")?;
                    sample_q_measure(*m, *n, *s, *draws, *max_size, common.seed)
                }
            }
        }
        Command::Limits { lam, mu, nu, t } => {
            config.command = "limits".into();
            config.lam = Some(lam.clone());
            config.mu = Some(mu.clone());
            config.nu = Some(nu.clone());
            config.t = Some(t.clone());
            let lam_p = parse_partition(lam)?;
            let mu_p = parse_partition(mu)?;
            let nu_p = parse_partition(nu)?;
            let ts: Vec<u32> = t
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u32>()
                        .map_err(|_| fail(format!("invalid t value {v:?}")))
                })
                .collect::<Result<_, _>>()?;
            check(!ts.is_empty(), "need at least one t value")?;
            check(
                ts.iter().all(|&tv| (1..=16).contains(&tv)),
                "t values must be between 1 and 16",
            )?;
            check(
                ts.iter().all(|&tv| {
                    lam_p.len() <= 2 * tv as usize
                        && mu_p.len() <= tv as usize
                        && nu_p.len() <= tv as usize
                }),
                "partitions must fit inside every diagonal size",
            )?;
            let tables = measures::limit_check_54(&lam_p, &mu_p, &nu_p, &ts)
                .map_err(|e| fail(e.to_string()))?;
            let verdict = tables.iter().all(|t| t.strictly_decreasing());
            let mut csv = String::from("table,t,finite,limit,abs_error\n");
            let mut text = String::new();
            for table in &tables {
                text.push_str(&format!("{}\n", table.label));
                for row in &table.rows {
                    csv.push_str(&format!(
                        "{},{},{},{},{}\n",
                        table.label,
                        row.t,
                        decimal_string(row.finite.value(), 17),
                        decimal_string(row.limit.value(), 17),
                        decimal_string(row.abs_error.value(), 6),
                    ));
                    text.push_str(&format!(
                        "  t={:<3} finite {}  limit {}  |error| {}\n",
                        row.t,
                        decimal_string(row.finite.value(), 10),
                        decimal_string(row.limit.value(), 10),
                        decimal_string(row.abs_error.value(), 4),
                    ));
                }
            }
            Ok(Rendered {
                verdict,
                payload: serde_json::to_value(&tables).unwrap(),
                csv,
                text,
            })
        }
    }
}

#[derive(Serialize)]
struct CellRow {
    cell: String,
    count: u64,
    expected: f64,
    observed_freq: f64,
    z_score: f64,
}

fn cells_report(
    rows: Vec<CellRow>,
    counts: Vec<u64>,
    expected: Vec<f64>,
    draws: u64,
) -> Rendered {
    let gof = stats::chi_square_gof(&counts, &expected);
    let verdict = gof.p_value > 0.001;
    let mut csv = String::from("cell,count,expected,observed_freq,z_score\n");
    let mut text = String::new();
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.cell, r.count, r.expected, r.observed_freq, r.z_score
        ));
        text.push_str(&format!(
            "  {:<14} count {:<8} expected {:<10.2} z {:+.2}\n",
            r.cell, r.count, r.expected, r.z_score
        ));
    }
    csv.push_str(&format!(
        "chi_square,{},df,{},p_value,{}\n",
        gof.statistic, gof.degrees_of_freedom, gof.p_value
    ));
    text.push_str(&format!(
        "chi-square {:.3} on {} dof, p = {:.5} over {draws} draws\n",
        gof.statistic, gof.degrees_of_freedom, gof.p_value
    ));
    Rendered {
        verdict,
        payload: json!({ "cells": rows, "chi_square": gof, "draws": draws }),
        csv,
        text,
    }
}

fn finish_cells(
    tally: BTreeMap<String, u64>,
    cells: Vec<(String, f64)>,
    draws: u64,
) -> Rendered {
    let mut rows = Vec::new();
    let mut counts = Vec::new();
    let mut expected = Vec::new();
    let mut covered = 0u64;
    let mut mass = 0.0f64;
    for (name, prob) in &cells {
        let count = tally.get(name).copied().unwrap_or(0);
        covered += count;
        mass += prob;
        let exp = prob * draws as f64;
        let sigma = stats::frequency_sigma(*prob, draws);
        rows.push(CellRow {
            cell: name.clone(),
            count,
            expected: exp,
            observed_freq: count as f64 / draws as f64,
            z_score: (count as f64 / draws as f64 - prob) / sigma,
        });
        counts.push(count);
        expected.push(exp);
    }
    let rest_expected = (1.0 - mass) * draws as f64;
    let rest_count = draws - covered;
    if rest_expected >= 1.0 {
        rows.push(CellRow {
            cell: "rest".into(),
            count: rest_count,
            expected: rest_expected,
            observed_freq: rest_count as f64 / draws as f64,
            z_score: (rest_count as f64 - rest_expected)
                / stats::frequency_sigma(1.0 - mass, draws)
                / draws as f64,
        });
        counts.push(rest_count);
        expected.push(rest_expected);
    }
    cells_report(rows, counts, expected, draws)
}

fn sample_plancherel(
    alpha: &BigRational,
    draws: u64,
    max_size: u32,
    seed: u64,
) -> Result<Rendered, ConfigError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let alpha_f = rational_to_f64(alpha);
    let mut tally: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..draws {
        let shape = measures::plancherel_draw(alpha_f, &mut rng);
        if shape.size() <= max_size as u64 {
            *tally.entry(shape.to_string()).or_insert(0) += 1;
        }
    }
    // Exact masses e^{-alpha} alpha^{|lambda|} / h(lambda)^2.
    let e_pow = numeric::exp_rational(
        &-alpha.clone(),
        &BigRational::new(1.into(), BigInt::from(10u32).pow(25)),
    );
    let measure = measures::PartitionMeasure::new(measures::MeasureKind::PoissonizedPlancherel {
        alpha: alpha.clone(),
    });
    let mut cells = Vec::new();
    for k in 0..=max_size {
        for lam in partitions_of(k, k.max(1)) {
            let prob = rational_to_f64(&(measure.weight(&lam) * e_pow.value()));
            cells.push((lam.to_string(), prob));
        }
    }
    Ok(finish_cells(tally, cells, draws))
}

fn sample_p_measure(
    m: u32,
    n: u32,
    s: u32,
    draws: u64,
    max_size: u32,
    seed: u64,
) -> Result<Rendered, ConfigError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut sampler = measures::PSampler::new(m, n, s);
    let mut tally: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..draws {
        let lam = sampler.draw(&mut rng);
        if lam.size() <= max_size as u64 {
            *tally.entry(lam.to_string()).or_insert(0) += 1;
        }
    }
    let (zlo, zhi) = measures::z_bracket(m, n, s, 30);
    let z = rational_to_f64(&((&zlo + &zhi) / BigRational::from_integer(2.into())));
    let mut cells = Vec::new();
    for k in 0..=max_size {
        for lam in partitions_of(k, m + n) {
            let prob = rational_to_f64(&measures::weight_p(&lam, m, n, s)) / z;
            cells.push((lam.to_string(), prob));
        }
    }
    Ok(finish_cells(tally, cells, draws))
}

fn sample_q_measure(
    m: u32,
    n: u32,
    s: u32,
    draws: u64,
    max_size: u32,
    seed: u64,
) -> Result<Rendered, ConfigError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut sampler = measures::QSampler::new(m, n, s);
    let mut tally: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..draws {
        let (mu, nu) = sampler.draw(&mut rng);
        if mu.size() + nu.size() <= max_size as u64 {
            *tally.entry(format!("{mu}x{nu}")).or_insert(0) += 1;
        }
    }
    let (zlo, zhi) = measures::z_bracket(m, n, s, 30);
    let z = rational_to_f64(&((&zlo + &zhi) / BigRational::from_integer(2.into())));
    let mut cells = Vec::new();
    for w in 0..=max_size {
        for a in 0..=w {
            for mu in partitions_of(a, m) {
                for nu in partitions_of(w - a, n) {
                    let prob = rational_to_f64(
                        &measures::weight_q(&mu, &nu, m, n, s)
                            .map_err(|e| fail(e.to_string()))?,
                    ) / z;
                    cells.push((format!("{mu}x{nu}"), prob));
                }
            }
        }
    }
    Ok(finish_cells(tally, cells, draws))
}
