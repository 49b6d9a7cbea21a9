use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use udw_core::experiments::{
    evaluate, figure_dataset, run_sweep, run_validation, Output, Param, Row, SweepSpec,
};
use udw_core::{Error, ErrorCategory, QuadratureSpec};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  validation ran but at least one check failed
  2  usage error: bad flags, invalid parameters or configuration
  3  numerical non-convergence
  4  domain error: overflow, underflow, resonance window, special-function domain
  5  I/O failure";

/// Excitation probability of an inertial Unruh-DeWitt detector near a
/// massive particle. All inputs are in units of the packet width sigma.
#[derive(Parser, Debug)]
#[command(name = "udw", version, after_help = EXIT_CODES)]
struct Cli {
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate probabilities at a single parameter point.
    #[command(after_help = EXIT_CODES)]
    Point(PointArgs),
    /// Run a sweep described by a flat JSON configuration file.
    #[command(after_help = EXIT_CODES)]
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV; overrides `output_path`. Without either, CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a figure dataset as <out>/<id>.csv.
    #[command(after_help = EXIT_CODES)]
    Figure {
        /// fig1 .. fig5
        #[arg(long)]
        id: String,
        #[arg(long, env = "UDW_OUT_DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Run the oracle suite; exits 1 if any check fails.
    #[command(after_help = EXIT_CODES)]
    Validate {
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("window").required(true).args(["tau_f", "delta_tau"])))]
struct PointArgs {
    /// Particle mass m/sigma.
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
    /// Detector gap Omega/sigma.
    #[arg(long, allow_negative_numbers = true)]
    omega: f64,
    /// Coupling lambda/sigma.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    /// Switch-on time tau_i*sigma.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    tau_i: f64,
    /// Switch-off time tau_f*sigma.
    #[arg(long, allow_negative_numbers = true)]
    tau_f: Option<f64>,
    /// Duration (tau_f - tau_i)*sigma.
    #[arg(long, allow_negative_numbers = true)]
    delta_tau: Option<f64>,
    /// Initial packet position x0*sigma.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    /// Packet momentum k0/sigma.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k0: f64,
    /// Comma-separated subset of p_v, p_m, p_p, p_avg, ratio_normalized.
    #[arg(long, value_delimiter = ',', default_value = "p_v,p_m,p_p")]
    quantities: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(e.category()),
            message: e.to_string(),
        }
    }
}

fn exit_code(category: ErrorCategory) -> u8 {
    match category {
        ErrorCategory::Usage => 2,
        ErrorCategory::Convergence => 3,
        ErrorCategory::Domain => 4,
        ErrorCategory::Io => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Point(args) => point(args),
        Command::Sweep { config, out } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Failure {
                code: 5,
                message: format!("cannot read {}: {e}", config.display()),
            })?;
            let spec = SweepSpec::from_json_str(&text)?;
            let target = out.or_else(|| spec.output_path.clone());
            sweep(&spec, target.as_deref(), cli.jobs)
        }
        Command::Figure { id, out } => {
            let spec = figure_dataset(&id)?;
            sweep(&spec, Some(&out.join(format!("{id}.csv"))), cli.jobs)
        }
        Command::Validate { report } => validate(report.as_deref()),
    }
}

fn point(args: PointArgs) -> Result<u8, Failure> {
    let outputs = args
        .quantities
        .iter()
        .map(|q| q.trim().parse::<Output>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure {
            code: 2,
            message: format!("{e}; expected a subset of p_v, p_m, p_p, p_avg, ratio_normalized"),
        })?;
    if outputs.is_empty() {
        return Err(Failure {
            code: 2,
            message: "--quantities must name at least one quantity".into(),
        });
    }

    let mut params = BTreeMap::from([
        (Param::M, args.m),
        (Param::Omega, args.omega),
        (Param::Lambda, args.lambda),
        (Param::TauI, args.tau_i),
        (Param::X0, args.x0),
        (Param::K0, args.k0),
    ]);
    if let Some(v) = args.tau_f {
        params.insert(Param::TauF, v);
    }
    if let Some(v) = args.delta_tau {
        params.insert(Param::DeltaTau, v);
    }

    let row = evaluate(&params, &outputs, &QuadratureSpec::default());
    if let Some(f) = &row.failure {
        return Err(Failure {
            code: exit_code(f.category),
            message: f.message.clone(),
        });
    }
    let text = match args.format {
        Format::Text => point_text(&outputs, &row),
        Format::Csv => point_csv(&outputs, &row),
    };
    print!("{text}");
    Ok(0)
}

fn point_text(outputs: &[Output], row: &Row) -> String {
    let mut s = String::new();
    for (o, v) in outputs.iter().zip(&row.values) {
        let e = v.expect("successful row has every value");
        s.push_str(&format!("{o}={:.16e} ±{:.3e}\n", e.value, e.error_estimate));
    }
    s.push_str(&format!("method={}\n", row.method));
    s.push_str(&format!("flags={}\n", row.flags_field()));
    s
}

fn point_csv(outputs: &[Output], row: &Row) -> String {
    let mut header: Vec<String> = outputs.iter().map(|o| o.name().to_string()).collect();
    header.extend(outputs.iter().map(|o| format!("{o}_err")));
    header.extend(["method".to_string(), "flags".to_string()]);
    let mut values: Vec<String> = row
        .values
        .iter()
        .map(|v| format!("{:.16e}", v.expect("value").value))
        .collect();
    values.extend(
        row.values
            .iter()
            .map(|v| format!("{:.16e}", v.expect("value").error_estimate)),
    );
    values.push(row.method.to_string());
    values.push(row.flags_field());
    format!("{}\n{}\n", header.join(","), values.join(","))
}

fn sweep(spec: &SweepSpec, target: Option<&Path>, jobs: usize) -> Result<u8, Failure> {
    let data = run_sweep(spec, jobs)?;
    match target {
        Some(path) => {
            data.write_csv(path)?;
            eprintln!("wrote {} rows to {}", data.rows.len(), path.display());
        }
        None => {
            let bytes = data.to_csv()?;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Failure::from(Error::Io(e)))?;
        }
    }
    let mut code = 0;
    let mut count = 0;
    for (i, f) in data.failures() {
        if count < 10 {
            eprintln!("row {i}: {}", f.message);
        }
        if code == 0 {
            code = exit_code(f.category);
        }
        count += 1;
    }
    if count > 0 {
        eprintln!("{count} of {} grid points failed", data.rows.len());
    }
    Ok(code)
}

fn validate(report_path: Option<&Path>) -> Result<u8, Failure> {
    let report = run_validation(&QuadratureSpec::default());
    for c in &report.checks {
        eprintln!(
            "{} {:<34} discrepancy={:.3e} tolerance={:.1e} ({:.2}s)",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.discrepancy,
            c.tolerance,
            c.seconds
        );
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match report_path {
        Some(p) => std::fs::write(p, json + "\n").map_err(|e| Failure {
            code: 5,
            message: format!("cannot write {}: {e}", p.display()),
        })?,
        None => println!("{json}"),
    }
    Ok(if report.passed { 0 } else { 1 })
}
