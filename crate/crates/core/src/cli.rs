//! Command-line front end.
//!
//! Every command produces a [`Table`]; the table is written either as CSV
//! (a `#` comment line echoing version and configuration, then a header
//! line, then rows) or as one JSON object. Numbers use the shortest
//! representation that round-trips, so identical configurations give
//! byte-identical files.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::limits::{delta_limit_check, DeltaFamily};
use crate::model::WellSpec;
use crate::oracle::{compare_spectra, DEFAULT_EPS_CUT, DEFAULT_POINTS};
use crate::spectrum::{find_bound_states, sweep_l, sweep_v0, SweepRow, DEFAULT_TOL};
use crate::wavefunction::{match_coefficients, normalize, sample, DEFAULT_QUAD_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "triwell",
    version,
    about = "Bound states of the triangular potential well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every bound state of one well.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[command(flatten)]
        well: WellArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectrum of the unit well over a uniform grid of v0.
    #[command(name = "sweep-v0", allow_negative_numbers = true)]
    SweepV0 {
        #[arg(long, default_value_t = 0.1)]
        v0_min: f64,
        #[arg(long, default_value_t = 100.0)]
        v0_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectrum over a uniform grid of L at fixed V0.
    #[command(name = "sweep-L", allow_negative_numbers = true)]
    SweepL {
        #[arg(long = "V0")]
        depth: f64,
        #[arg(long = "L-min", default_value_t = 0.1)]
        l_min: f64,
        #[arg(long = "L-max", default_value_t = 5.0)]
        l_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample the normalized eigenfunction of one state.
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, default_value_t = -3.0)]
        xmin: f64,
        #[arg(long, default_value_t = 3.0)]
        xmax: f64,
        #[arg(long, default_value_t = 601)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_QUAD_TOL)]
        quad_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the spectrum with a finite-difference diagonalization.
    #[command(name = "oracle-check", allow_negative_numbers = true)]
    OracleCheck {
        #[command(flatten)]
        well: WellArgs,
        #[arg(long, default_value_t = DEFAULT_EPS_CUT)]
        eps_cut: f64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        n_points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Follow V0 = lambda / L down a sequence of widths.
    #[command(name = "delta-limit", allow_negative_numbers = true)]
    DeltaLimit {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(
            long = "L-values",
            value_delimiter = ',',
            default_value = "0.1,0.01,0.001,0.0001"
        )]
        l_values: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Either `--V0` with `--L`, or `--v0` (or all three, if consistent).
#[derive(Debug, Args)]
pub struct WellArgs {
    #[arg(long = "V0")]
    pub depth: Option<f64>,
    #[arg(long = "L")]
    pub half_width: Option<f64>,
    #[arg(long = "v0")]
    pub v0: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_INVALID,
            Error::OverflowRange { .. } | Error::Numeric(_) | Error::Consistency(_) => EXIT_NUMERIC,
            Error::Mismatch(_) => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// Shortest round-trip decimal form.
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

/// Emitted data: configuration echo, column names, rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub config: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(config: Vec<(&'static str, Cell)>, columns: &[&'static str]) -> Self {
        Table {
            config,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# triwell v{}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.config {
            let _ = write!(s, " {k}={}", v.csv());
        }
        s.push('\n');
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect();
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let m: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "columns": self.columns,
            "results": results,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON values are finite or null");
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

/// Result of one command: the data and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub passed: bool,
    pub failures: Vec<String>,
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Failure::invalid(format!(
            "--{name} must be positive and finite, got {v:?}"
        )))
    }
}

impl WellArgs {
    /// Resolves the flags to a well, checking that they agree.
    pub fn spec(&self) -> Result<WellSpec<f64>, Failure> {
        let hbar = positive("hbar", self.hbar)?;
        let mass = positive("mass", self.mass)?;
        positive("tol", self.tol)?;
        match (self.depth, self.half_width, self.v0) {
            (Some(d), Some(l), v0) => {
                let spec = WellSpec::with_units(positive("V0", d)?, positive("L", l)?, hbar, mass)?;
                if let Some(v0) = v0 {
                    let implied = crate::model::nondimensionalize(&spec);
                    if (positive("v0", v0)? - implied).abs() > 1e-12 * implied {
                        return Err(Failure::invalid(format!(
                            "--v0 {v0} is inconsistent with --V0 {d} --L {l} (which give v0 = {implied})"
                        )));
                    }
                }
                Ok(spec)
            }
            (None, None, Some(v0)) => {
                let v0 = positive("v0", v0)?;
                Ok(WellSpec::with_units(
                    v0 * hbar * hbar / (2.0 * mass),
                    1.0,
                    hbar,
                    mass,
                )?)
            }
            (Some(_), None, _) => Err(Failure::invalid("--V0 requires --L")),
            (None, Some(_), _) => Err(Failure::invalid("--L requires --V0")),
            (None, None, None) => Err(Failure::invalid("give either --V0 with --L, or --v0")),
        }
    }

    fn config(&self, spec: &WellSpec<f64>) -> Vec<(&'static str, Cell)> {
        vec![
            ("V0", Cell::Num(spec.depth)),
            ("L", Cell::Num(spec.half_width)),
            ("hbar", Cell::Num(spec.hbar)),
            ("mass", Cell::Num(spec.mass)),
            ("v0", Cell::Num(crate::model::nondimensionalize(spec))),
            ("tol", Cell::Num(self.tol)),
        ]
    }
}

const STATE_COLUMNS: [&str; 5] = ["index", "parity", "z0", "epsilon", "energy"];

fn state_cells(s: &crate::model::BoundState<f64>) -> Vec<Cell> {
    vec![
        Cell::Int(s.index),
        Cell::Text(s.parity.as_str().to_string()),
        Cell::Num(s.z0),
        Cell::Num(s.epsilon),
        Cell::Num(s.energy),
    ]
}

fn sweep_table(
    config: Vec<(&'static str, Cell)>,
    name: &'static str,
    rows: &[SweepRow<f64>],
) -> Table {
    let mut columns = vec![name];
    columns.extend_from_slice(&STATE_COLUMNS);
    let mut t = Table::new(config, &columns);
    for r in rows {
        for s in &r.states {
            let mut row = vec![Cell::Num(r.parameter)];
            row.extend(state_cells(s));
            t.rows.push(row);
        }
    }
    t
}

/// Executes a parsed command.
pub fn execute(command: &Command) -> Result<Outcome, Failure> {
    let ok = |table| {
        Ok(Outcome {
            table,
            passed: true,
            failures: Vec::new(),
        })
    };
    match command {
        Command::Solve { well, .. } => {
            let spec = well.spec()?;
            let spectrum = find_bound_states(&spec, well.tol)?;
            let mut config = vec![("command", Cell::Text("solve".into()))];
            config.extend(well.config(&spec));
            let mut t = Table::new(config, &STATE_COLUMNS);
            t.rows = spectrum.states.iter().map(state_cells).collect();
            ok(t)
        }
        Command::SweepV0 {
            v0_min,
            v0_max,
            steps,
            tol,
            ..
        } => {
            positive("tol", *tol)?;
            let rows = sweep_v0(*v0_min, *v0_max, *steps, *tol)?;
            let config = vec![
                ("command", Cell::Text("sweep-v0".into())),
                ("v0-min", Cell::Num(*v0_min)),
                ("v0-max", Cell::Num(*v0_max)),
                ("steps", Cell::Int(*steps)),
                ("tol", Cell::Num(*tol)),
            ];
            ok(sweep_table(config, "v0", &rows))
        }
        Command::SweepL {
            depth,
            l_min,
            l_max,
            steps,
            hbar,
            mass,
            tol,
            ..
        } => {
            positive("tol", *tol)?;
            let template = WellSpec::with_units(
                positive("V0", *depth)?,
                1.0,
                positive("hbar", *hbar)?,
                positive("mass", *mass)?,
            )?;
            let rows = sweep_l(&template, *l_min, *l_max, *steps, *tol)?;
            let config = vec![
                ("command", Cell::Text("sweep-L".into())),
                ("V0", Cell::Num(*depth)),
                ("L-min", Cell::Num(*l_min)),
                ("L-max", Cell::Num(*l_max)),
                ("steps", Cell::Int(*steps)),
                ("hbar", Cell::Num(*hbar)),
                ("mass", Cell::Num(*mass)),
                ("tol", Cell::Num(*tol)),
            ];
            ok(sweep_table(config, "L", &rows))
        }
        Command::Wavefunction {
            well,
            state,
            xmin,
            xmax,
            n,
            quad_tol,
            ..
        } => {
            let spec = well.spec()?;
            positive("quad-tol", *quad_tol)?;
            if !(xmin < xmax && xmin.is_finite() && xmax.is_finite()) {
                return Err(Failure::invalid(format!(
                    "--xmin {xmin} must be below --xmax {xmax}"
                )));
            }
            if *n < 2 {
                return Err(Failure::invalid(format!("--n must be at least 2, got {n}")));
            }
            let spectrum = find_bound_states(&spec, well.tol)?;
            let Some(st) = spectrum.states.get(*state) else {
                return Err(Failure::invalid(format!(
                    "--state {state} out of range: the well has {} bound states",
                    spectrum.len()
                )));
            };
            let psi = normalize(&match_coefficients(st, &spec)?, *quad_tol)?;
            let mut config = vec![("command", Cell::Text("wavefunction".into()))];
            config.extend(well.config(&spec));
            config.extend([
                ("state", Cell::Int(*state)),
                ("xmin", Cell::Num(*xmin)),
                ("xmax", Cell::Num(*xmax)),
                ("n", Cell::Int(*n)),
                ("quad-tol", Cell::Num(*quad_tol)),
            ]);
            let mut t = Table::new(config, &["x", "psi"]);
            t.rows = sample(&psi, *xmin, *xmax, *n)?
                .into_iter()
                .map(|(x, p)| vec![Cell::Num(x), Cell::Num(p)])
                .collect();
            ok(t)
        }
        Command::OracleCheck {
            well,
            eps_cut,
            n_points,
            ..
        } => {
            let spec = well.spec()?;
            positive("eps-cut", *eps_cut)?;
            if *n_points < 7 || n_points % 2 == 0 {
                return Err(Failure::invalid(format!(
                    "--n-points must be odd and at least 7, got {n_points}"
                )));
            }
            let spectrum = find_bound_states(&spec, well.tol)?;
            let report = compare_spectra(&spec, &spectrum.states, *eps_cut, *n_points)?;
            let mut config = vec![("command", Cell::Text("oracle-check".into()))];
            config.extend(well.config(&spec));
            config.extend([
                ("eps-cut", Cell::Num(*eps_cut)),
                ("n-points", Cell::Int(*n_points)),
                ("coarse-points", Cell::Int(report.coarse_points)),
                ("box-half-width", Cell::Num(report.box_half_width)),
            ]);
            let mut t = Table::new(
                config,
                &[
                    "index",
                    "parity",
                    "epsilon_airy",
                    "epsilon_fd",
                    "epsilon_fine",
                    "epsilon_coarse",
                    "difference",
                    "within_tolerance",
                ],
            );
            t.rows = report
                .compared
                .iter()
                .map(|c| {
                    vec![
                        Cell::Int(c.index),
                        Cell::Text(c.parity.as_str().to_string()),
                        Cell::Num(c.epsilon_airy),
                        Cell::Num(c.epsilon_fd),
                        Cell::Num(c.epsilon_fine),
                        Cell::Num(c.epsilon_coarse),
                        Cell::Num(c.difference),
                        Cell::Bool(c.within_tolerance),
                    ]
                })
                .collect();
            let failures = report
                .compared
                .iter()
                .filter(|c| !c.within_tolerance)
                .map(|c| {
                    format!(
                        "state {} differs from the oracle by {}",
                        c.index, c.difference
                    )
                })
                .collect();
            Ok(Outcome {
                table: t,
                passed: report.passed,
                failures,
            })
        }
        Command::DeltaLimit {
            lambda,
            l_values,
            hbar,
            mass,
            ..
        } => {
            let family = DeltaFamily::with_units(
                positive("lambda", *lambda)?,
                positive("hbar", *hbar)?,
                positive("mass", *mass)?,
            )?;
            let report = delta_limit_check(&family, l_values)?;
            let list: Vec<String> = l_values.iter().map(|&l| format_number(l)).collect();
            let config = vec![
                ("command", Cell::Text("delta-limit".into())),
                ("lambda", Cell::Num(*lambda)),
                ("L-values", Cell::Text(list.join(";"))),
                ("hbar", Cell::Num(*hbar)),
                ("mass", Cell::Num(*mass)),
                ("limit-energy", Cell::Num(report.limit_energy)),
                ("odd-threshold-L", Cell::Num(report.odd_threshold_width)),
                ("epsilon-slope", Cell::Num(report.slopes.epsilon)),
            ];
            let mut t = Table::new(
                config,
                &[
                    "L",
                    "v0",
                    "states",
                    "predicted_epsilon",
                    "solver_epsilon",
                    "ratio_error",
                    "energy",
                    "energy_error",
                    "shape_error",
                ],
            );
            t.rows = report
                .cases
                .iter()
                .map(|c| {
                    vec![
                        Cell::Num(c.half_width),
                        Cell::Num(c.v0),
                        Cell::Int(c.state_count),
                        Cell::Num(c.predicted_epsilon),
                        Cell::Num(c.solver_epsilon),
                        Cell::Num(c.ratio_error),
                        Cell::Num(c.energy),
                        Cell::Num(c.energy_error),
                        Cell::Num(c.shape_error),
                    ]
                })
                .collect();
            Ok(Outcome {
                table: t,
                passed: report.passed(),
                failures: report.failures,
            })
        }
    }
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Solve { out, .. }
            | Command::SweepV0 { out, .. }
            | Command::SweepL { out, .. }
            | Command::Wavefunction { out, .. }
            | Command::OracleCheck { out, .. }
            | Command::DeltaLimit { out, .. } => out,
        }
    }
}

/// Parses `args`, runs the command and writes to `stdout` (or `--output`).
/// Returns the process exit status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let out = cli.command.output();
    let text = outcome.table.render(out.format);
    let written = match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write --output {}: {e}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INVALID;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        for f in &outcome.failures {
            let _ = writeln!(stderr, "check failed: {f}");
        }
        EXIT_CHECK_FAILED
    }
}
