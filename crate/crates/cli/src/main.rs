//! `qmark`: evaluate, invert and expand generalized Minkowski functions and
//! run the sampling experiments from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmark::analysis::{conjugation_residual, measure_compare, singularity_stats};
use qmark::contfrac::cf_of_value;
use qmark::dynamics::{orbit, IntervalMap};
use qmark::qmark::{luroth_digits_of, q_eval, q_eval_real, q_inverse_rational, RealInterval};
use qmark::{Error, Partition, Rational, Value};
use serde_json::{json, Map, Value as Json};

#[derive(Parser, Debug)]
#[command(name = "qmark", version, about = "Generalized Minkowski question-mark functions")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// dyadic, harmonic, geometric:N/D or power:S
    #[arg(long, global = true, default_value = "dyadic", value_parser = parse_partition)]
    partition: Partition,
    /// Bits of the enclosures used for approximate evaluation
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Step budget for inverses, expansions and orbits
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Decimal digits shown next to exact values
    #[arg(long, global = true, default_value_t = 20)]
    digits: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ?_α(x) for a rational, a surd such as "(-1+sqrt(5))/2", or a decimal
    Eval {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// The preimage of a rational under ?_α
    Inverse { y: String },
    /// Continued fraction or α-Lüroth digits
    Expand {
        kind: ExpandKind,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// ?_α on the grid k/n
    Sample { n: u64 },
    /// Exact orbit of x under the Gauss map or L_α
    Orbit {
        map: MapKind,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExpandKind {
    Cf,
    Luroth,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapKind {
    Gauss,
    Luroth,
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Median symmetric difference quotients at shrinking h
    Singularity {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Comma separated, strictly decreasing
        #[arg(long, default_value = "1/100,1/1000,1/10000", value_delimiter = ',')]
        h: Vec<String>,
    },
    /// ?_α(t) against log₂(1+t) on a grid
    Measure {
        #[arg(long, default_value_t = 100)]
        grid: u64,
    },
    /// Count of exact failures of L_α ∘ ?_α = ?_α ∘ G
    Conjugation {
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced: columns and rows, plus whether its own checks held.
struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Json>>,
    /// Extra `key: value` lines for text output.
    notes: Vec<(String, Json)>,
    /// Text output shows the first cell alone on the first line.
    scalar: bool,
    ok: bool,
}

impl Report {
    fn scalar(column: &'static str, value: String) -> Self {
        Report { columns: vec![column], rows: vec![vec![Json::String(value)]], notes: Vec::new(), scalar: true, ok: true }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidPartition(_) | Error::InvalidArgument(_) => 2,
        Error::Inconclusive(_)
        | Error::Precision { .. }
        | Error::DepthExceeded(_)
        | Error::StateCapExceeded(_)
        | Error::DigitOverflow => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = &cli.config;
    let (report, default_format) = match &cli.command {
        Command::Eval { x } => (eval(cfg, x)?, Format::Text),
        Command::Inverse { y } => (inverse(cfg, y)?, Format::Text),
        Command::Expand { kind, x } => (expand(cfg, *kind, x)?, Format::Text),
        Command::Sample { n } => (sample(cfg, *n)?, Format::Csv),
        Command::Orbit { map, x } => (orbit_table(cfg, *map, x)?, Format::Csv),
        Command::Experiment(Experiment::Singularity { n, h }) => (singularity(cfg, *n, h)?, Format::Csv),
        Command::Experiment(Experiment::Measure { grid }) => (measure(cfg, *grid)?, Format::Csv),
        Command::Experiment(Experiment::Conjugation { n }) => (conjugation(cfg, *n)?, Format::Text),
    };
    let format = cfg.format.unwrap_or(default_format);
    let text = render(cli, &report, format)?;
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.ok)
}

/// Exact text, with integers shown bare.
fn exact(r: &Rational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn exact_value(v: &Value) -> String {
    match v {
        Value::Rational(r) => exact(r),
        Value::Surd(_) => v.to_string(),
    }
}

fn looks_decimal(s: &str) -> bool {
    s.contains('.') && !s.contains("sqrt")
}

fn eval(cfg: &Config, x: &str) -> Result<Report, Failure> {
    let part = &cfg.partition;
    if looks_decimal(x) {
        eprintln!("warning: {x} is a decimal; the result is approximate");
        let digits = cfg.digits.max(1);
        let tol = Rational::frac(1, 10).pow(digits as i64)?;
        let est = q_eval_real(part, &RealInterval::from_decimal(x, cfg.precision)?, &tol, cfg.depth as usize)?;
        let mut report = Report::scalar("value", est.value.to_decimal(digits));
        report.columns.extend(["bound", "exact", "partition"]);
        report.rows[0].extend([json!(est.bound.to_decimal(digits + 2)), json!(false), json!(part.to_string())]);
        report.notes.push(("bound".into(), json!(est.bound.to_decimal(digits + 2))));
        report.notes.push(("partition".into(), json!(part.to_string())));
        return Ok(report);
    }
    let v: Value = x.parse()?;
    let y = q_eval(part, &v)?;
    let mut report = Report::scalar("value", exact(&y));
    let decimal = y.to_decimal(cfg.digits);
    report.columns.extend(["decimal", "exact", "partition"]);
    report.rows[0].extend([json!(decimal), json!(true), json!(part.to_string())]);
    report.notes.push(("decimal".into(), json!(decimal)));
    report.notes.push(("partition".into(), json!(part.to_string())));
    Ok(report)
}

fn inverse(cfg: &Config, y: &str) -> Result<Report, Failure> {
    let y: Rational = y.parse()?;
    let x = q_inverse_rational(&cfg.partition, &y, cfg.depth as usize)?;
    let mut report = Report::scalar("value", exact_value(&x));
    let decimal = x.to_decimal(cfg.digits);
    report.columns.extend(["decimal", "partition"]);
    report.rows[0].extend([json!(decimal), json!(cfg.partition.to_string())]);
    report.notes.push(("decimal".into(), json!(decimal)));
    report.notes.push(("partition".into(), json!(cfg.partition.to_string())));
    Ok(report)
}

fn expand(cfg: &Config, kind: ExpandKind, x: &str) -> Result<Report, Failure> {
    let v: Value = x.parse()?;
    let digits = match kind {
        ExpandKind::Cf => cf_of_value(&v)?.to_string(),
        ExpandKind::Luroth => match &v {
            Value::Rational(r) => luroth_digits_of(&cfg.partition, r, cfg.depth as usize)?.to_string(),
            Value::Surd(_) => {
                let domain = "rationals (α-Lüroth digits of surds are not computed)";
                return Err(Error::OutOfDomain { value: x.to_string(), domain }.into());
            }
        },
    };
    Ok(Report::scalar("digits", digits))
}

fn sample(cfg: &Config, n: u64) -> Result<Report, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let n = i64::try_from(n).map_err(|_| Failure::Usage("n is too large".into()))?;
    let mut rows = Vec::new();
    for k in 0..=n {
        let x = Rational::frac(k, n);
        let y = qmark::qmark::q_eval_rational(&cfg.partition, &x)?;
        rows.push(vec![json!(exact(&x)), json!(exact(&y)), json!(x.to_f64()), json!(y.to_f64())]);
    }
    Ok(Report { columns: vec!["x", "q_alpha", "x_approx", "q_approx"], rows, notes: Vec::new(), scalar: false, ok: true })
}

fn orbit_table(cfg: &Config, map: MapKind, x: &str) -> Result<Report, Failure> {
    let v: Value = x.parse()?;
    let map = match map {
        MapKind::Gauss => IntervalMap::Gauss,
        MapKind::Luroth => IntervalMap::Luroth(cfg.partition.clone()),
    };
    let rec = orbit(&map, &v, cfg.depth as usize)?;
    let rows = rec
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| vec![json!(i), json!(exact_value(p)), json!(p.to_f64())])
        .collect();
    let notes = vec![
        ("preperiod".into(), json!(rec.preperiod_length)),
        ("period".into(), rec.period_length.map_or(Json::Null, |p| json!(p))),
    ];
    Ok(Report { columns: vec!["step", "value", "approx"], rows, notes, scalar: false, ok: true })
}

fn singularity(cfg: &Config, n: usize, h: &[String]) -> Result<Report, Failure> {
    let hs = h.iter().map(|s| s.trim().parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
    let rep = singularity_stats(&cfg.partition, n, &hs, cfg.precision, cfg.seed)?;
    let rows = rep
        .h_values
        .iter()
        .zip(&rep.medians)
        .zip(&rep.small_fraction)
        .map(|((h, m), f)| vec![json!(h.to_f64()), json!(m.to_f64()), json!(f)])
        .collect();
    let notes = vec![
        ("samples".into(), json!(rep.sample_count)),
        ("medians_decreasing".into(), json!(rep.medians_decreasing())),
    ];
    Ok(Report { columns: vec!["h", "median_quotient", "fraction_below_0.1"], rows, notes, scalar: false, ok: rep.check() })
}

fn measure(cfg: &Config, grid: u64) -> Result<Report, Failure> {
    let table = measure_compare(&cfg.partition, grid)?;
    let rows = (0..table.grid.len())
        .map(|i| {
            vec![
                json!(exact(&table.grid[i])),
                json!(exact(&table.q_values[i])),
                json!(table.gauss_values[i].to_decimal(cfg.digits)),
                json!(table.gaps[i].to_decimal(cfg.digits)),
            ]
        })
        .collect();
    let notes = vec![("max_abs_gap".into(), json!(table.max_abs_gap))];
    Ok(Report { columns: vec!["t", "q_alpha", "gauss_cdf", "gap"], rows, notes, scalar: false, ok: table.check() })
}

fn conjugation(cfg: &Config, n: usize) -> Result<Report, Failure> {
    let failures = conjugation_residual(&cfg.partition, n, cfg.seed)?;
    let mut report = Report::scalar("failures", failures.to_string());
    report.rows[0][0] = json!(failures);
    report.columns.push("samples");
    report.rows[0].push(json!(n));
    report.ok = failures == 0;
    Ok(report)
}

fn cell(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(cli: &Cli, report: &Report, format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Failure::Io(io::Error::other(e));
            w.write_record(&report.columns).map_err(io_err)?;
            for row in &report.rows {
                w.write_record(row.iter().map(cell)).map_err(io_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Io(io::Error::other(e.to_string())))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        Format::Json => {
            let cfg = &cli.config;
            let rows: Vec<Json> = report
                .rows
                .iter()
                .map(|row| Json::Object(report.columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect()))
                .collect();
            let mut meta = Map::new();
            meta.insert("command".into(), json!(command_name(&cli.command)));
            meta.insert("partition".into(), json!(cfg.partition.to_string()));
            meta.insert("precision".into(), json!(cfg.precision));
            meta.insert("depth".into(), json!(cfg.depth));
            meta.insert("seed".into(), json!(cfg.seed));
            meta.insert("digits".into(), json!(cfg.digits));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            for (k, v) in &report.notes {
                meta.insert(k.clone(), v.clone());
            }
            let doc = json!({ "meta": meta, "rows": rows });
            Ok(serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n")
        }
        Format::Text => {
            let mut out = String::new();
            if report.scalar {
                let row = &report.rows[0];
                let head = if report.columns[0] == "failures" { format!("failures: {}", cell(&row[0])) } else { cell(&row[0]) };
                out.push_str(&head);
                out.push('\n');
                for (k, v) in &report.notes {
                    out.push_str(&format!("{k}: {}\n", cell(v)));
                }
                return Ok(out);
            }
            let widths: Vec<usize> = (0..report.columns.len())
                .map(|i| report.rows.iter().map(|r| cell(&r[i]).len()).chain([report.columns[i].len()]).max().unwrap())
                .collect();
            let line = |cells: Vec<String>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(report.columns.iter().map(|c| c.to_string()).collect()));
            for row in &report.rows {
                out.push_str(&line(row.iter().map(cell).collect()));
            }
            for (k, v) in &report.notes {
                out.push_str(&format!("{k}: {}\n", cell(v)));
            }
            Ok(out)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Inverse { .. } => "inverse",
        Command::Expand { .. } => "expand",
        Command::Sample { .. } => "sample",
        Command::Orbit { .. } => "orbit",
        Command::Experiment(Experiment::Singularity { .. }) => "experiment singularity",
        Command::Experiment(Experiment::Measure { .. }) => "experiment measure",
        Command::Experiment(Experiment::Conjugation { .. }) => "experiment conjugation",
    }
}
