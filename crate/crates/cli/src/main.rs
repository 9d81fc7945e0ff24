// Grid guards use `!(min < max)` so NaN inputs fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `corrlimit` — quantum-vs-classical harmonic oscillator tables.
//!
//! Every subcommand writes one deterministic table (CSV or JSON): density
//! profiles, Fourier coefficients, Bessel asymptotics, correction terms,
//! moments, or a convergence sweep. Identical inputs produce byte-identical
//! outputs; there is no randomness anywhere in the pipeline.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrlimit_core::special::scaled_laguerre;
use corrlimit_core::*;
use output::{write_output, Table};
use serde_json::{Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "corrlimit", version, about = "Harmonic-oscillator classical-limit tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Planck constant (action units)
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Oscillator mass
    #[arg(long, global = true, default_value_t = 1.0)]
    mass: f64,
    /// Angular frequency
    #[arg(long, global = true, default_value_t = 1.0)]
    omega: f64,

    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Position,
    Momentum,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Position => Space::Position,
            SpaceArg::Momentum => Space::Momentum,
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Grid minimum; defaults to -1.2 x0 (or -1.2 p0)
    #[arg(long, allow_negative_numbers = true)]
    min: Option<f64>,
    /// Grid maximum; defaults to +1.2 x0 (or +1.2 p0)
    #[arg(long, allow_negative_numbers = true)]
    max: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 4096)]
    points: usize,
}

#[derive(Args)]
struct QuadArgs {
    /// Outer truncation of the correction integral
    #[arg(long, default_value_t = 200.0)]
    alpha_max: f64,
    /// Relative tolerance of accelerated limits
    #[arg(long, default_value_t = 2e-4)]
    rel_tol: f64,
    /// Absolute tolerance floor
    #[arg(long, default_value_t = 1e-8)]
    abs_tol: f64,
}

impl QuadArgs {
    fn spec(&self) -> QuadSpec {
        QuadSpec {
            alpha_max: self.alpha_max,
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            ..QuadSpec::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Quantum probability density on a grid
    Qpd {
        /// Principal quantum number
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
        space: SpaceArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Classical (arcsine) probability density on a grid
    Cpd {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
        space: SpaceArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fourier coefficients: closed form, classical, optional extras
    Fourier {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SpaceArg::Position)]
        space: SpaceArg,
        /// Conjugate-variable grid minimum
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        min: f64,
        /// Conjugate-variable grid maximum
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Add the numeric-oracle column (direct quadrature of the density)
        #[arg(long)]
        oracle: bool,
        /// Add the one-iteration Bessel asymptotic column
        #[arg(long)]
        szego: bool,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Scaled Laguerre function against its Bessel asymptotics over u
    Asymptotic {
        #[arg(long)]
        n: u32,
        /// Upper end of the dimensionless momentum grid (validated up to 3)
        #[arg(long, default_value_t = 1.0)]
        u_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Classical density, k = 1 correction term and their ratio
    Corrections {
        #[arg(long)]
        n: u32,
        /// Ratios x/x0 to evaluate (comma separated)
        #[arg(long, value_delimiter = ',', default_value = "0.5", allow_hyphen_values = true)]
        x_ratio: Vec<f64>,
        /// Highest correction order (0 or 1)
        #[arg(long, default_value_t = 1)]
        kmax: usize,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Second moments and mean energy, quantum vs classical
    Moments {
        /// Quantum numbers (comma separated)
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        /// Profile resolution used for the quantum moments
        #[arg(long, default_value_t = 131073)]
        points: usize,
    },
    /// Convergence sweep over quantum numbers with power-law fits
    Sweep {
        /// Quantum numbers, ascending (comma separated)
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        /// Dimensionless probes s = p x0/hbar for the Fourier residual
        #[arg(long, value_delimiter = ',', default_value = "1,2,5")]
        s_values: Vec<f64>,
        /// Ratio x/x0 where the correction magnitude is sampled
        #[arg(long, default_value_t = 0.3)]
        corr_ratio: f64,
        /// L1 domain as a fraction of the classical bound
        #[arg(long, default_value_t = 0.9)]
        l1_fraction: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("corrlimit: {e}");
            match e {
                CliError::Numerical(_) | CliError::Io(_) => ExitCode::from(1),
                CliError::Config(_) => ExitCode::from(2),
            }
        }
    }
}

/// CORRLIMIT_THREADS caps internal parallelism; 0 or unset means automatic.
fn configure_threads() {
    if let Ok(v) = std::env::var("CORRLIMIT_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

enum CliError {
    Config(String),
    Numerical(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let params = OscillatorParams::new(cli.mass, cli.omega, cli.hbar)?;
    let mut config = Map::new();
    config.insert("hbar".into(), num(cli.hbar));
    config.insert("mass".into(), num(cli.mass));
    config.insert("omega".into(), num(cli.omega));

    let table = match &cli.command {
        Command::Qpd { n, space, grid } => {
            config.insert("command".into(), Value::String("qpd".into()));
            config.insert("n".into(), Value::from(*n));
            density_table(&params, *n, (*space).into(), grid, true, &mut config)?
        }
        Command::Cpd { n, space, grid } => {
            config.insert("command".into(), Value::String("cpd".into()));
            config.insert("n".into(), Value::from(*n));
            density_table(&params, *n, (*space).into(), grid, false, &mut config)?
        }
        Command::Fourier {
            n,
            space,
            min,
            max,
            points,
            oracle,
            szego,
            quad,
        } => {
            config.insert("command".into(), Value::String("fourier".into()));
            config.insert("n".into(), Value::from(*n));
            fourier_table(
                &params,
                *n,
                (*space).into(),
                (*min, *max, *points),
                *oracle,
                *szego,
                &quad.spec(),
                &mut config,
            )?
        }
        Command::Asymptotic {
            n,
            u_max,
            points,
            quad,
        } => {
            config.insert("command".into(), Value::String("asymptotic".into()));
            config.insert("n".into(), Value::from(*n));
            asymptotic_table(*n, *u_max, *points, &quad.spec())?
        }
        Command::Corrections {
            n,
            x_ratio,
            kmax,
            quad,
        } => {
            config.insert("command".into(), Value::String("corrections".into()));
            config.insert("n".into(), Value::from(*n));
            config.insert("kmax".into(), Value::from(*kmax as u64));
            corrections_table(&params, *n, x_ratio, *kmax, &quad.spec())?
        }
        Command::Moments { n, points } => {
            config.insert("command".into(), Value::String("moments".into()));
            moments_table(&params, n, *points)?
        }
        Command::Sweep {
            n,
            s_values,
            corr_ratio,
            l1_fraction,
            quad,
        } => {
            config.insert("command".into(), Value::String("sweep".into()));
            let spec = SweepSpec {
                s_values: s_values.clone(),
                correction_ratio: *corr_ratio,
                l1_domain_fraction: *l1_fraction,
                quad: quad.spec(),
                ..SweepSpec::default()
            };
            sweep_table(&params, n, &spec)?
        }
    };

    let mut table = table;
    table.config.append(&mut config.clone());
    let content = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    write_output(cli.out.as_deref(), &content)?;
    Ok(())
}

fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn validated_grid(
    grid: &GridArgs,
    energy_match: &EnergyMatch,
    space: Space,
) -> CliResult<Vec<f64>> {
    let bound = match space {
        Space::Position => energy_match.x0(),
        Space::Momentum => energy_match.p0(),
    };
    let min = grid.min.unwrap_or(-1.2 * bound);
    let max = grid.max.unwrap_or(1.2 * bound);
    if !(min < max) || grid.points < 2 {
        return Err(CliError::Config(format!(
            "grid requires min < max and points >= 2 (got {min}, {max}, {})",
            grid.points
        )));
    }
    Ok(uniform_grid(min, max, grid.points))
}

fn density_table(
    params: &OscillatorParams,
    n: u32,
    space: Space,
    grid: &GridArgs,
    quantum: bool,
    config: &mut Map<String, Value>,
) -> CliResult<Table> {
    let level = QuantumLevel(n);
    let m = energy_match(params, level);
    let points = validated_grid(grid, &m, space)?;
    config.insert(
        "space".into(),
        Value::String(
            match space {
                Space::Position => "position",
                Space::Momentum => "momentum",
            }
            .into(),
        ),
    );
    let profile = if quantum {
        quantum_profile(params, level, space, points)?
    } else {
        classical_profile(params, &m, space, points)?
    };
    let var = match space {
        Space::Position => "x",
        Space::Momentum => "p",
    };
    let mut table = Table::new(vec![var, "density"], Map::new());
    for (&g, &v) in profile.grid.iter().zip(&profile.values) {
        table.rows.push(vec![g, v]);
    }
    Ok(table)
}

#[allow(clippy::too_many_arguments)]
fn fourier_table(
    params: &OscillatorParams,
    n: u32,
    space: Space,
    (min, max, points): (f64, f64, usize),
    oracle: bool,
    szego: bool,
    quad: &QuadSpec,
    config: &mut Map<String, Value>,
) -> CliResult<Table> {
    if !(min < max) || points < 2 {
        return Err(CliError::Config(format!(
            "grid requires min < max and points >= 2 (got {min}, {max}, {points})"
        )));
    }
    let level = QuantumLevel(n);
    let m = energy_match(params, level);
    let p_grid = uniform_grid(min, max, points);
    config.insert(
        "space".into(),
        Value::String(
            match space {
                Space::Position => "position",
                Space::Momentum => "momentum",
            }
            .into(),
        ),
    );

    let quantum = quantum_fourier_profile(params, level, space, p_grid.clone());
    let classical = classical_fourier_profile(&m, params, space, p_grid.clone());

    let mut columns = vec!["p", "quantum", "classical"];
    let szego_values = if szego {
        columns.push("szego");
        Some(szego_fourier_profile(params, level, space, p_grid.clone(), quad)?)
    } else {
        None
    };
    let oracle_values = if oracle {
        columns.push("oracle");
        let wide = wide_grid(params, &m, space, 65537);
        let profile = quantum_profile(params, level, space, wide)?;
        let tail = density_tail_mass(&profile);
        if tail > ORACLE_TAIL_BOUND {
            eprintln!(
                "corrlimit: warning: oracle profile tail mass {tail:.2e} exceeds {ORACLE_TAIL_BOUND:.0e}"
            );
        }
        Some(numeric_fourier_oracle(&profile, &p_grid)?)
    } else {
        None
    };

    let mut table = Table::new(columns, Map::new());
    for (i, &p) in p_grid.iter().enumerate() {
        let mut row = vec![p, quantum.values[i], classical.values[i]];
        if let Some(s) = &szego_values {
            row.push(s.values[i]);
        }
        if let Some(o) = &oracle_values {
            row.push(o.values[i]);
        }
        table.rows.push(row);
    }
    Ok(table)
}

fn asymptotic_table(n: u32, u_max: f64, points: usize, quad: &QuadSpec) -> CliResult<Table> {
    if !(u_max > 0.0) || points < 2 {
        return Err(CliError::Config(format!(
            "asymptotic grid requires u_max > 0 and points >= 2 (got {u_max}, {points})"
        )));
    }
    let level = QuantumLevel(n);
    let mut table = Table::new(
        vec!["u", "exact", "leading", "iterated", "resid_leading", "resid_iterated"],
        Map::new(),
    );
    for i in 0..points {
        let u = u_max * i as f64 / (points - 1) as f64;
        let args = SzegoArgs::new(level, u)?;
        let exact = scaled_laguerre(n, u * u)?;
        let leading = szego_leading(&args);
        let iterated = szego_iterate(&args, quad)?;
        table.rows.push(vec![
            u,
            exact,
            leading,
            iterated,
            (leading - exact).abs(),
            (iterated - exact).abs(),
        ]);
    }
    Ok(table)
}

fn corrections_table(
    params: &OscillatorParams,
    n: u32,
    ratios: &[f64],
    kmax: usize,
    quad: &QuadSpec,
) -> CliResult<Table> {
    let m = energy_match(params, QuantumLevel(n));
    let mut table = Table::new(
        vec!["x_ratio", "classical", "correction", "corrected", "ratio"],
        Map::new(),
    );
    for &r in ratios {
        let x = r * m.x0();
        let classical = cpd_position(&m, x)?;
        let corrected = corrected_density(&m, x, kmax, quad)?;
        let correction = corrected - classical;
        table
            .rows
            .push(vec![r, classical, correction, corrected, correction / classical]);
    }
    Ok(table)
}

fn moments_table(params: &OscillatorParams, ns: &[u32], points: usize) -> CliResult<Table> {
    if ns.is_empty() {
        return Err(CliError::Config("moments needs at least one --n".into()));
    }
    let mut table = Table::new(
        vec![
            "n",
            "x2_quantum",
            "x2_classical",
            "p2_quantum",
            "p2_classical",
            "h_quantum",
            "e_classical",
        ],
        Map::new(),
    );
    for &n in ns {
        let level = QuantumLevel(n);
        let m = energy_match(params, level);
        let qx = quantum_profile(
            params,
            level,
            Space::Position,
            wide_grid(params, &m, Space::Position, points),
        )?;
        let qp = quantum_profile(
            params,
            level,
            Space::Momentum,
            wide_grid(params, &m, Space::Momentum, points),
        )?;
        let x2 = moment(&qx, 2)?;
        let p2 = moment(&qp, 2)?;
        if x2.tail_mass > 1e-9 || p2.tail_mass > 1e-9 {
            eprintln!(
                "corrlimit: warning: moment tail mass {:.2e} exceeds 1e-9 for n = {n}",
                x2.tail_mass.max(p2.tail_mass)
            );
        }
        table.rows.push(vec![
            n as f64,
            x2.value,
            0.5 * m.x0() * m.x0(),
            p2.value,
            0.5 * m.p0() * m.p0(),
            energy_expectation(params, x2.value, p2.value),
            m.energy(),
        ]);
    }
    Ok(table)
}

fn sweep_table(params: &OscillatorParams, ns: &[u32], spec: &SweepSpec) -> CliResult<Table> {
    if ns.is_empty() {
        return Err(CliError::Config("sweep needs at least one --n".into()));
    }
    let report = convergence_sweep(params, ns, spec)?;
    let mut table = Table::new(
        vec!["n", "l1_x", "l1_p", "fourier_resid", "corr_mag"],
        Map::new(),
    );
    for (i, &n) in report.n_values.iter().enumerate() {
        table.rows.push(vec![
            n as f64,
            report.l1_position[i],
            report.l1_momentum[i],
            report.fourier_residual[i],
            report.correction_magnitude[i],
        ]);
    }
    let mut push_fit = |name: &str, fit: &Option<PowerLawFit>| {
        if let Some(f) = fit {
            table.footer.push((format!("fit_exponent_{name}"), f.exponent));
        }
    };
    push_fit("l1_x", &report.fits.l1_position);
    push_fit("l1_p", &report.fits.l1_momentum);
    push_fit("fourier_resid", &report.fits.fourier_residual);
    push_fit("corr_mag", &report.fits.correction_magnitude);
    Ok(table)
}
