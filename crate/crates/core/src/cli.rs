//! The `refstate` command-line driver.
//!
//! Every command produces a [`Table`]: a `# key=value` metadata block, a
//! header row and data rows. Floats are written with 17 significant digits
//! so a CSV parses back to the exact library values; JSON carries the same
//! payload.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::fock::{particle_entanglement_single, TwoModeState};
use crate::general::{fit_trial_state, solve_shared_phase, trial_probs};
use crate::phase::{phase_difference_density, PhaseAssignment};
use crate::single::{ansatz_coefficients, ansatz_large_m, polynomial_table, solve_ansatz_exact, solve_recurrence};
use crate::zoo::{Family, MeritReport};

pub const TOOL_VERSION: &str = concat!("refstate ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    OptimizeSingle,
    OptimizeShared,
    Ansatz,
    Compare,
    Phase,
    Sweep,
    Polys,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Phases {
    #[default]
    Zero,
    Linear,
    Random,
    Kerr,
}

#[derive(Debug, Parser)]
#[command(name = "refstate", version, about = "Particle entanglement of bosonic reference ancillae", allow_negative_numbers = true)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Ancilla particle number.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// System particle number; optimize-shared requires N = M.
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Phase grid size; defaults to max(64, 8(M+1)).
    #[arg(long)]
    pub points: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// State family for compare and phase.
    #[arg(long, value_parser = family_parser())]
    pub family: Option<Family>,
    #[arg(long, value_enum, default_value_t = Phases::Zero)]
    pub phases: Phases,
    /// Inclusive range of M, as A:B.
    #[arg(long = "sweep-range", value_parser = parse_range)]
    pub sweep_range: Option<(usize, usize)>,
}

fn family_parser() -> impl clap::builder::TypedValueParser<Value = Family> {
    use clap::builder::TypedValueParser;
    clap::builder::PossibleValuesParser::new(Family::ALL.map(Family::label))
        .map(|s| s.parse::<Family>().expect("listed labels parse"))
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got '{s}'"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Validated configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub m: usize,
    pub n: Option<usize>,
    pub tol: f64,
    pub points: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub family: Option<Family>,
    pub phases: Phases,
    pub sweep_range: Option<(usize, usize)>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(Error::NoRoot { .. }) => 3,
            CliError::Solver(Error::InvalidInput(_) | Error::UndefinedMerit(_)) => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        let m = match (args.m, args.sweep_range) {
            (Some(m), _) => m,
            (None, Some((_, b))) => b,
            (None, None) => return Err(usage("--M is required")),
        };
        let points = args.points.unwrap_or_else(|| (8 * (m + 1)).max(64));
        let config = RunConfig {
            command: args.command,
            m,
            n: args.n,
            tol: args.tol,
            points,
            output_path: args.out,
            format: args.format,
            seed: args.seed,
            family: args.family,
            phases: args.phases,
            sweep_range: args.sweep_range,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0) {
            return Err(usage(format!("--tol must be positive, got {}", self.tol)));
        }
        let needs_particles = matches!(
            self.command,
            Command::OptimizeShared | Command::Ansatz | Command::Compare
        );
        if needs_particles && self.m == 0 && self.sweep_range.is_none() {
            return Err(usage(format!("{} needs M >= 1", self.command_label())));
        }
        if self.command == Command::Phase && self.points < 4 * (self.m + 1) {
            return Err(usage(format!("--points must be at least 4(M+1) = {}", 4 * (self.m + 1))));
        }
        if self.command == Command::OptimizeShared {
            if let Some(n) = self.n {
                if n != self.m {
                    return Err(usage(format!("optimize-shared solves N = M; got N = {n}, M = {}", self.m)));
                }
            }
        }
        if let Some((a, _)) = self.sweep_range {
            if self.command == Command::Compare && a == 0 {
                return Err(usage("compare needs M >= 1 across the sweep range"));
            }
        }
        Ok(())
    }

    fn command_label(&self) -> String {
        self.command.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    fn m_values(&self) -> Vec<usize> {
        match self.sweep_range {
            Some((a, b)) => (a..=b).collect(),
            None if self.command == Command::Sweep => (1..=self.m.max(1)).collect(),
            None => vec![self.m],
        }
    }

    fn echo(&self) -> Vec<(String, String)> {
        let mut meta = vec![
            ("tool".into(), TOOL_VERSION.into()),
            ("command".into(), self.command_label()),
            ("M".into(), self.m.to_string()),
            ("tol".into(), format_float(self.tol)),
        ];
        if let Some(n) = self.n {
            meta.push(("N".into(), n.to_string()));
        }
        match self.command {
            Command::Phase => {
                meta.push(("points".into(), self.points.to_string()));
                meta.push(("phases".into(), self.phase_assignment().label().into()));
                meta.push(("state".into(), self.family.map_or("uniform", Family::label).into()));
                if self.phases == Phases::Random {
                    meta.push(("rng".into(), "ChaCha8".into()));
                    meta.push(("seed".into(), self.seed.to_string()));
                }
            }
            Command::Compare => {
                meta.push(("family".into(), self.family.map_or("all", Family::label).into()));
            }
            _ => {}
        }
        if let Some((a, b)) = self.sweep_range {
            meta.push(("sweep_range".into(), format!("{a}:{b}")));
        }
        meta
    }

    fn phase_assignment(&self) -> PhaseAssignment {
        match self.phases {
            Phases::Zero => PhaseAssignment::Zero,
            Phases::Linear => PhaseAssignment::Linear,
            Phases::Random => PhaseAssignment::Random { seed: self.seed },
            Phases::Kerr => PhaseAssignment::Kerr,
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 17 significant digits, scientific notation; round-trips every `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.16e}")
    }
}

/// Output payload of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(config: &RunConfig, columns: &[&str]) -> Self {
        Table {
            metadata: config.echo(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl Into<Cell>) {
        self.metadata.push((key.into(), value.into().render()));
    }

    fn row(&mut self, cells: Vec<Cell>) {
        self.rows.push(cells);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Payload<'a> {
            metadata: serde_json::Map<String, serde_json::Value>,
            columns: &'a [String],
            rows: Vec<Vec<serde_json::Value>>,
        }
        let metadata = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        // floats as strings keep the fixed 17-digit rendering
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Int(i) => serde_json::Value::from(*i),
                        other => serde_json::Value::String(other.render()),
                    })
                    .collect()
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Payload { metadata, columns: &self.columns, rows })
            .expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Parsed CSV output: metadata pairs, header and raw cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedCsv {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r.get(i)?.parse().ok()).collect()
    }
}

/// Reads back the CSV written by [`Table::to_csv`].
pub fn parse_csv(text: &str) -> Option<ParsedCsv> {
    let mut metadata = Vec::new();
    let mut lines = text.lines();
    let header = loop {
        let line = lines.next()?;
        match line.strip_prefix("# ") {
            Some(kv) => {
                let (k, v) = kv.split_once('=')?;
                metadata.push((k.to_string(), v.to_string()));
            }
            None => break line,
        }
    };
    let columns = header.split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    Some(ParsedCsv { metadata, columns, rows })
}

/// Runs the command and returns its table without writing anything.
pub fn execute(config: &RunConfig) -> Result<Table, CliError> {
    config.validate()?;
    match config.command {
        Command::OptimizeSingle => optimize_single(config),
        Command::OptimizeShared => optimize_shared(config),
        Command::Ansatz => ansatz(config),
        Command::Compare => compare(config),
        Command::Phase => phase(config),
        Command::Sweep => sweep(config),
        Command::Polys => polys(config),
    }
}

fn optimize_single(config: &RunConfig) -> Result<Table, CliError> {
    let sol = solve_recurrence(config.m, config.tol)?;
    let mut t = Table::new(config, &["n", "prob"]);
    t.meta("beta", sol.beta);
    t.meta("E_P", particle_entanglement_single(&sol.state())?);
    t.meta("boundary_residual", sol.boundary_residual);
    for (n, p) in sol.probs.iter().enumerate() {
        t.row(vec![n.into(), (*p).into()]);
    }
    Ok(t)
}

fn optimize_shared(config: &RunConfig) -> Result<Table, CliError> {
    let m = config.m;
    let sol = solve_shared_phase(m, config.tol)?;
    let fit = fit_trial_state(m, &sol.probs)?;
    let trial = trial_probs(m, fit.a, fit.epsilon).ok_or(Error::NoRoot {
        what: "trial-state fit",
        lo: fit.a,
        hi: fit.epsilon,
    })?;
    let single = solve_recurrence(m, config.tol)?;
    let mut t = Table::new(config, &["n", "prob", "trial_prob", "single_prob"]);
    t.meta("fit_A", fit.a);
    t.meta("fit_epsilon", fit.epsilon);
    t.meta("fit_overlap", fit.overlap);
    t.meta("shots", sol.shots);
    t.meta("stationarity_spread", sol.max_stationarity_residual);
    for (n, ((p, q), r)) in sol.probs.iter().zip(&trial).zip(&single.probs).enumerate() {
        t.row(vec![n.into(), (*p).into(), (*q).into(), (*r).into()]);
    }
    Ok(t)
}

fn ansatz(config: &RunConfig) -> Result<Table, CliError> {
    let m = config.m;
    let sol = solve_recurrence(m, config.tol)?;
    // root filtering runs at a fixed tolerance; --tol drives the recurrence
    let params = solve_ansatz_exact(m, 1e-9)?;
    let exact = ansatz_coefficients(&params)?;
    let large = ansatz_large_m(m);
    let mut t = Table::new(config, &["n", "recurrence", "exact", "large_m"]);
    t.meta("A", params.a);
    t.meta("B", params.b);
    t.meta("epsilon", params.epsilon);
    t.meta("beta", params.beta);
    for n in 0..=m {
        t.row(vec![n.into(), sol.probs[n].into(), exact[n].into(), large[n].into()]);
    }
    Ok(t)
}

fn compare(config: &RunConfig) -> Result<Table, CliError> {
    let families: Vec<Family> = match config.family {
        Some(f) => vec![f],
        None => Family::ALL.to_vec(),
    };
    let reports = config
        .m_values()
        .into_par_iter()
        .map(|m| MeritReport::compare(m, &families))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(config, &["label", "M", "E_P", "D"]);
    for r in reports {
        for e in r.entries {
            t.row(vec![e.family.label().into(), r.m.into(), e.e_p.into(), e.d.into()]);
        }
    }
    Ok(t)
}

fn phase(config: &RunConfig) -> Result<Table, CliError> {
    let base = match config.family {
        Some(f) => f.build(config.m)?,
        None => TwoModeState::uniform(config.m),
    };
    let state = config.phase_assignment().apply(&base);
    let density = phase_difference_density(&state, config.points)?;
    let mut t = Table::new(config, &["delta", "density"]);
    let (at, peak) = density.peak();
    t.meta("peak_delta", at);
    t.meta("peak_density", peak);
    t.meta("integral", density.integral());
    t.meta("E_P", particle_entanglement_single(&state)?);
    for (d, v) in density.grid.iter().zip(&density.density) {
        t.row(vec![(*d).into(), (*v).into()]);
    }
    Ok(t)
}

fn sweep(config: &RunConfig) -> Result<Table, CliError> {
    let tol = config.tol;
    let rows = config
        .m_values()
        .into_par_iter()
        .map(|m| -> Result<Vec<Cell>, Error> {
            let sol = solve_recurrence(m, tol)?;
            let e_opt = particle_entanglement_single(&sol.state())?;
            let e_uni = particle_entanglement_single(&TwoModeState::uniform(m))?;
            Ok(vec![m.into(), e_opt.into(), e_uni.into(), sol.beta.into()])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(config, &["M", "E_P_opt", "E_P_uniform", "beta"]);
    for r in rows {
        t.row(r);
    }
    Ok(t)
}

fn polys(config: &RunConfig) -> Result<Table, CliError> {
    let m = config.m;
    let table = polynomial_table(m)?;
    let mut t = Table::new(config, &["n", "degree", "value", "coefficients"]);
    if m >= 1 {
        let sol = solve_recurrence(m, config.tol)?;
        let values = table.eval_all(sol.beta);
        t.meta("beta", sol.beta);
        t.meta("P_M_at_beta", values[m]);
        t.meta("sum_P_at_beta", table.sum_at(sol.beta));
        t.meta("inverse_c0_sq", 1.0 / sol.probs[0]);
        for (n, (p, v)) in table.polys.iter().zip(values).enumerate() {
            t.row(poly_row(n, p, v));
        }
    } else {
        t.row(poly_row(0, &table.polys[0], 1.0));
    }
    Ok(t)
}

fn poly_row(n: usize, p: &crate::single::IntPoly, value: f64) -> Vec<Cell> {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    vec![n.into(), p.degree().unwrap_or(0).into(), value.into(), coeffs.join(" ").into()]
}

/// Executes and writes the result to `--out` or stdout.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let text = execute(config)?.render(config.format);
    match &config.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Parses arguments, runs, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_args(args).and_then(|c| run(&c)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("refstate: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        let mut full = vec!["refstate"];
        full.extend_from_slice(args);
        RunConfig::from_args(Args::try_parse_from(full).unwrap()).unwrap()
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.5, 1.0 / 3.0, 2.0_f64.sqrt(), 1e-300, -7.25e12, f64::MIN_POSITIVE] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn optimize_single_m1() {
        let t = execute(&config(&["optimize-single", "--M", "1"])).unwrap();
        let p = parse_csv(&t.to_csv()).unwrap();
        assert_eq!(p.columns, vec!["n", "prob"]);
        let probs = p.column_f64("prob").unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-12 && (probs[1] - 0.5).abs() < 1e-12);
        let beta: f64 = p.meta("beta").unwrap().parse().unwrap();
        assert!((beta - 2.0).abs() < 1e-12);
        assert_eq!(p.meta("tool"), Some(TOOL_VERSION));
    }

    #[test]
    fn compare_has_zero_optimal_row() {
        let t = execute(&config(&["compare", "--M", "29"])).unwrap();
        let p = parse_csv(&t.to_csv()).unwrap();
        let row = p.rows.iter().find(|r| r[0] == "optimal").unwrap();
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
        assert_eq!(p.rows.len(), Family::ALL.len());
    }

    #[test]
    fn linear_phase_peaks_at_pi() {
        let t = execute(&config(&["phase", "--M", "29", "--phases", "linear"])).unwrap();
        let p = parse_csv(&t.to_csv()).unwrap();
        let at: f64 = p.meta("peak_delta").unwrap().parse().unwrap();
        assert!((at - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn random_phase_records_seed() {
        let a = execute(&config(&["phase", "--M", "9", "--phases", "random", "--seed", "3"])).unwrap();
        let b = execute(&config(&["phase", "--M", "9", "--phases", "random", "--seed", "4"])).unwrap();
        assert!(a.to_csv().contains("# seed=3\n"));
        assert_ne!(a.rows, b.rows);
    }

    #[test]
    fn sweep_is_ordered() {
        let t = execute(&config(&["sweep", "--sweep-range", "1:12"])).unwrap();
        let ms: Vec<i64> = t.rows.iter().map(|r| match r[0] { Cell::Int(m) => m, _ => -1 }).collect();
        assert_eq!(ms, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn polys_report_beta_check() {
        let t = execute(&config(&["polys", "--M", "6"])).unwrap();
        let p = parse_csv(&t.to_csv()).unwrap();
        let pm: f64 = p.meta("P_M_at_beta").unwrap().parse().unwrap();
        assert!((pm - 1.0).abs() < 1e-9);
        assert_eq!(p.rows[2][3], "2 -3 1");
    }

    #[test]
    fn json_mirrors_csv() {
        let t = execute(&config(&["optimize-single", "--M", "3"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["metadata"]["beta"], t.metadata.iter().find(|m| m.0 == "beta").unwrap().1);
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn usage_errors() {
        let parse = |a: &[&str]| {
            let mut full = vec!["refstate"];
            full.extend_from_slice(a);
            RunConfig::from_args(Args::try_parse_from(full).unwrap())
        };
        assert_eq!(parse(&["optimize-single"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["optimize-single", "--M", "3", "--tol", "0"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["phase", "--M", "9", "--points", "39"]).unwrap_err().exit_code(), 2);
        assert_eq!(parse(&["optimize-shared", "--M", "4", "--N", "3"]).unwrap_err().exit_code(), 2);
        assert!(Args::try_parse_from(["refstate", "nonsense"]).is_err());
        assert_eq!(CliError::Solver(Error::NoRoot { what: "x", lo: 0.0, hi: 1.0 }).exit_code(), 3);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }

        #[test]
        fn ranges_parse(a in 0usize..1000, len in 0usize..1000) {
            let forward = format!("{}:{}", a, a + len);
            prop_assert_eq!(parse_range(&forward), Ok((a, a + len)));
            if len > 0 {
                let reversed = format!("{}:{}", a + len, a);
                prop_assert!(parse_range(&reversed).is_err());
            }
        }
    }
}
