//! `ndpa` command line: spectrum sweeps, wavefunction sampling, geometric
//! phases, Mandel tables, and the verification suites, emitted as CSV or
//! JSON with deterministic 17-digit numeric formatting.

mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ndpa::amplifier::{
    eigenfunction, energy, hamiltonian_matrix, oscillator_wavefunction, AmplifierParams,
    PolarPoint,
};
use ndpa::berry::{berry_phase_closed, berry_phase_quadrature, schrodinger_geometric_phase, DriveProfile};
use ndpa::fock::{QuantumNumbers, SectorBasis, SuGenerators};
use ndpa::numerics::{hermitian_eigen, QuadratureSpec};
use ndpa::photon_stats::{brute_force_q, q_a_params, q_b_params, Mode};
use ndpa::suites;
use ndpa::Error;
use table::{Cell, Table};

#[derive(Parser)]
#[command(name = "ndpa", version, about = "Non-degenerate parametric amplifier toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct PhysicalArgs {
    /// Signal mode frequency.
    #[arg(long, default_value_t = 1.2)]
    omega1: f64,
    /// Idler mode frequency.
    #[arg(long, default_value_t = 0.8)]
    omega2: f64,
    /// Coupling magnitude.
    #[arg(long, default_value_t = 0.6)]
    chi: f64,
    /// Coupling phase (radians).
    #[arg(long, default_value_t = 0.0)]
    psi: f64,
}

impl PhysicalArgs {
    fn params(&self) -> Result<AmplifierParams, Error> {
        let p = AmplifierParams::new(self.omega1, self.omega2, self.chi, self.psi)?;
        if !p.is_stable() {
            return Err(Error::UnstableRegime { twice_chi: 2.0 * p.chi(), omega: p.omega() });
        }
        Ok(p)
    }

    fn meta(&self) -> Vec<(String, String)> {
        vec![
            ("omega1".into(), table::fmt_float(self.omega1)),
            ("omega2".into(), table::fmt_float(self.omega2)),
            ("chi".into(), table::fmt_float(self.chi)),
            ("psi".into(), table::fmt_float(self.psi)),
        ]
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum against sector diagonalization.
    Spectrum {
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Sector angular number m (negative sectors use the mode swap).
        #[arg(long, default_value_t = 0)]
        m: i32,
        /// Fock truncation; AMP_NMAX overrides the default.
        #[arg(long)]
        nmax: Option<u32>,
        /// Comparison tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample an eigenfunction on a polar grid.
    Wavefunction {
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Principal quantum number N.
        #[arg(long = "N", default_value_t = 0)]
        n_principal: u32,
        /// Angular quantum number m >= 0 with N - m even.
        #[arg(long, default_value_t = 0)]
        m: i32,
        /// Radial extent of the sample grid.
        #[arg(long, default_value_t = 6.0)]
        rmax: f64,
        /// Radial sample count (angular count is fixed at 32).
        #[arg(long, default_value_t = 96)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Geometric phase: closed form, quadrature, optional evolution.
    Berry {
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Principal quantum number N.
        #[arg(long = "N", default_value_t = 0)]
        n_principal: u32,
        /// Drive period.
        #[arg(long, default_value_t = 50.0)]
        period: f64,
        /// Pump-phase winding number over one period.
        #[arg(long, default_value_t = 1)]
        winding: i32,
        /// When given, also extract the phase from Schrödinger evolution
        /// with this many integrator steps per orientation.
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mandel Q-parameters, closed form against brute force.
    Mandel {
        #[command(flatten)]
        physical: PhysicalArgs,
        /// Largest principal quantum number in the table.
        #[arg(long = "N", default_value_t = 5)]
        n_principal: u32,
        /// Fock truncation for the brute-force column.
        #[arg(long)]
        nmax: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suites and report residuals.
    Verify {
        /// Restrict to one suite (spectrum, diagonalization, similarity,
        /// coherent, berry, dynamics, invariant, mandel, wavefunction, orbit).
        #[arg(long)]
        suite: Option<String>,
        /// Tolerance override for the tolerance-parameterized suites.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Io(_) => ExitCode::from(3),
                CliError::Domain(_) => ExitCode::from(2),
            }
        }
    }
}

enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn resolve_nmax(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(n) = flag {
        return Ok(n.max(10));
    }
    if let Ok(text) = std::env::var("AMP_NMAX") {
        let parsed: u32 = text
            .parse()
            .map_err(|_| Error::InvalidParams(format!("AMP_NMAX = {text:?} is not an integer")))?;
        return Ok(parsed.max(10));
    }
    Ok(40)
}

fn emit(table: &Table, meta: &[(String, String)], output: &OutputArgs) -> Result<(), CliError> {
    let text = match output.format {
        Format::Csv => table.to_csv(meta),
        Format::Json => table.to_json(meta),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Spectrum { physical, m, nmax, tol, output } => {
            let p = physical.params()?;
            let nmax = resolve_nmax(nmax)?;
            // Negative sectors go through the mode-swap symmetry.
            let (closed_params, closed_m) = if m < 0 {
                (AmplifierParams::new(p.omega2(), p.omega1(), p.chi(), p.psi())?, -m)
            } else {
                (p, m)
            };
            let basis = SectorBasis::new(m, nmax.max(m.unsigned_abs()))?;
            let gens = SuGenerators::on_sector(&basis);
            let h = hamiltonian_matrix(&p, &gens);
            let (vals, vecs) = hermitian_eigen(&h)?;
            let interior = suites::converged_eigen_prefix(&vecs, tol);

            let mut t = Table::new(vec!["N", "m", "n_r", "E_closed", "E_numeric", "abs_diff"]);
            let mut all_within = true;
            for (j, q) in basis.states().iter().enumerate().take(interior) {
                let closed = energy(
                    &closed_params,
                    QuantumNumbers::new(q.principal(), closed_m).expect("sector state is valid"),
                )?;
                let diff = (vals[j] - closed).abs();
                all_within &= diff < tol;
                t.push(vec![
                    Cell::Int(q.principal() as i64),
                    Cell::Int(q.angular() as i64),
                    Cell::Int(q.radial() as i64),
                    Cell::Float(closed),
                    Cell::Float(vals[j]),
                    Cell::Float(diff),
                ]);
            }
            let mut meta = physical.meta();
            meta.push(("m".into(), m.to_string()));
            meta.push(("nmax".into(), nmax.to_string()));
            meta.push(("tol".into(), table::fmt_float(tol)));
            meta.push(("interior_states".into(), interior.to_string()));
            emit(&t, &meta, &output)?;
            Ok(if all_within { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Wavefunction { physical, n_principal, m, rmax, steps, output } => {
            let p = physical.params()?;
            let q = QuantumNumbers::new(n_principal, m)?;
            if m < 0 {
                return Err(Error::NegativeM(m).into());
            }
            let n_r = q.radial();
            let degenerate = p.chi() == 0.0;
            let value = |r: f64, phi: f64| -> Result<_, Error> {
                let pt = PolarPoint::new(r, phi)?;
                if degenerate {
                    oscillator_wavefunction(q, pt)
                } else {
                    eigenfunction(&p, n_r, m as u32, pt)
                }
            };

            let n_angular = 32usize;
            let mut t = Table::new(vec!["r", "phi", "re", "im", "abs2"]);
            for i in 0..steps.max(2) {
                let r = rmax * i as f64 / (steps.max(2) - 1) as f64;
                for k in 0..n_angular {
                    let phi = 2.0 * std::f64::consts::PI * k as f64 / n_angular as f64;
                    let z = value(r, phi)?;
                    t.push(vec![
                        Cell::Float(r),
                        Cell::Float(phi),
                        Cell::Float(z.re),
                        Cell::Float(z.im),
                        Cell::Float(z.norm_sqr()),
                    ]);
                }
            }
            let mut meta = physical.meta();
            meta.push(("N".into(), n_principal.to_string()));
            meta.push(("m".into(), m.to_string()));
            meta.push(("rmax".into(), table::fmt_float(rmax)));
            meta.push((
                "form".into(),
                if degenerate { "oscillator (chi = 0)".into() } else { "displaced".into() },
            ));
            emit(&t, &meta, &output)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Berry { physical, n_principal, period, winding, steps, output } => {
            let p = physical.params()?;
            let closed = berry_phase_closed(n_principal, p.omega(), p.chi())?;
            let drive = DriveProfile::constant(
                p.omega(),
                p.delta_omega(),
                p.chi(),
                p.psi(),
                winding,
                period,
            )?;
            let quad_spec = QuadratureSpec::new(0.0, period, 4096)?;
            let quadrature = berry_phase_quadrature(&drive, n_principal, &quad_spec)?;

            let mut t = Table::new(vec!["quantity", "value"]);
            t.push(vec![Cell::Text("closed_form".into()), Cell::Float(closed)]);
            t.push(vec![Cell::Text("quadrature".into()), Cell::Float(quadrature)]);
            t.push(vec![
                Cell::Text("abs_diff_quadrature".into()),
                Cell::Float((closed - quadrature).abs()),
            ]);
            if let Some(steps) = steps {
                let steps = steps.max(128) + steps % 2;
                let q = QuantumNumbers::new(n_principal, 0)?;
                let extracted = schrodinger_geometric_phase(
                    p.omega(),
                    p.delta_omega(),
                    p.chi(),
                    q,
                    period,
                    steps,
                )?;
                t.push(vec![
                    Cell::Text("schrodinger_extrapolated".into()),
                    Cell::Float(extracted),
                ]);
                t.push(vec![
                    Cell::Text("abs_diff_schrodinger".into()),
                    Cell::Float((closed - extracted).abs()),
                ]);
            }
            let mut meta = physical.meta();
            meta.push(("N".into(), n_principal.to_string()));
            meta.push(("period".into(), table::fmt_float(period)));
            meta.push(("winding".into(), winding.to_string()));
            emit(&t, &meta, &output)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Mandel { physical, n_principal, nmax, output } => {
            let p = physical.params()?;
            let nmax = resolve_nmax(nmax)?;
            let mut t = Table::new(vec![
                "N",
                "m",
                "q_a_closed",
                "q_a_brute",
                "q_b_closed",
                "q_b_brute",
                "class_a",
                "class_b",
                "note",
            ]);
            for n in 0..=n_principal {
                for m in (0..=n as i32).filter(|m| (n as i32 - m) % 2 == 0) {
                    let q = QuantumNumbers::new(n, m).expect("loop generates valid labels");
                    let mut note = Vec::new();
                    let mut cell = |r: Result<ndpa::photon_stats::MandelResult, Error>,
                                    label: &str|
                     -> (Cell, String) {
                        match r {
                            Ok(v) => (Cell::Float(v.q), v.class.label().to_string()),
                            Err(Error::DenominatorVanishes(mode)) => {
                                note.push(format!("{label}: vacuum mode {mode}"));
                                (Cell::Float(f64::NAN), "undefined".to_string())
                            }
                            Err(e) => {
                                note.push(format!("{label}: {e}"));
                                (Cell::Float(f64::NAN), "error".to_string())
                            }
                        }
                    };
                    let (a_closed, class_a) = cell(q_a_params(&p, q), "q_a_closed");
                    let (a_brute, _) = cell(brute_force_q(Mode::A, &p, q, nmax), "q_a_brute");
                    let (b_closed, class_b) = cell(q_b_params(&p, q), "q_b_closed");
                    let (b_brute, _) = cell(brute_force_q(Mode::B, &p, q, nmax), "q_b_brute");
                    t.push(vec![
                        Cell::Int(n as i64),
                        Cell::Int(m as i64),
                        a_closed,
                        a_brute,
                        b_closed,
                        b_brute,
                        Cell::Text(class_a),
                        Cell::Text(class_b),
                        Cell::Text(note.join("; ")),
                    ]);
                }
            }
            let mut meta = physical.meta();
            meta.push(("N".into(), n_principal.to_string()));
            meta.push(("nmax".into(), nmax.to_string()));
            emit(&t, &meta, &output)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { suite, tol, output } => {
            let results = match (&suite, tol) {
                (Some(name), Some(tol)) => match name.as_str() {
                    "spectrum" => Some(suites::spectrum_suite(tol)),
                    "diagonalization" => Some(suites::diagonalization_suite(tol)),
                    "similarity" => Some(suites::similarity_suite(tol)),
                    "mandel" => Some(suites::mandel_suite(tol)),
                    other => suites::run_suite(other),
                },
                (Some(name), None) => suites::run_suite(name),
                (None, _) => {
                    let mut all = Vec::new();
                    for name in suites::SUITE_NAMES {
                        all.extend(suites::run_suite(name).expect("built-in suite names resolve"));
                    }
                    Some(all)
                }
            };
            let results = results.ok_or_else(|| {
                Error::InvalidParams(format!(
                    "unknown suite {:?}; available: {}",
                    suite.unwrap_or_default(),
                    suites::SUITE_NAMES.join(", ")
                ))
            })?;

            let mut t = Table::new(vec!["suite", "check", "measured", "tolerance", "pass"]);
            let mut all_passed = true;
            for r in &results {
                all_passed &= r.passed;
                t.push(vec![
                    Cell::Text(r.suite.to_string()),
                    Cell::Text(r.name.clone()),
                    Cell::Float(r.measured),
                    Cell::Float(r.tolerance),
                    Cell::Text(if r.passed { "pass".into() } else { "FAIL".into() }),
                ]);
            }
            let meta = vec![("suites".into(), results.len().to_string())];
            emit(&t, &meta, &output)?;
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
