use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Output, Param, SweepSpec};
use crate::error::{Error, ErrorCategory, Result};
use crate::kernels::ParticleState;
use crate::quadrature::QuadratureSpec;
use crate::response::{
    normalized_ratio_at, p_avg, p_matter, p_vacuum, DetectorConfig, Estimate, MatterResponse,
    Method, PERTURBATIVITY_LIMIT,
};
use rayon::prelude::*;

/// Why a grid point has no (or only partial) results.
#[derive(Debug, Clone, PartialEq)]
pub struct RowFailure {
    pub category: ErrorCategory,
    pub message: String,
}

impl From<&Error> for RowFailure {
    fn from(e: &Error) -> Self {
        Self {
            category: e.category(),
            message: e.to_string(),
        }
    }
}

/// Results at one grid point. `values` is aligned with the requested outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coordinates: Vec<f64>,
    pub values: Vec<Option<Estimate>>,
    pub method: Method,
    pub flags: Vec<&'static str>,
    pub failure: Option<RowFailure>,
}

impl Row {
    pub fn flags_field(&self) -> String {
        self.flags.join(";")
    }
}

/// A completed sweep.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
}

/// Evaluate every grid point of `spec` on `jobs` worker threads (0 picks
/// the available parallelism). Rows come back in row-major order and do
/// not depend on `jobs`.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<Dataset> {
    let spec = spec.clone().with_defaults();
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| {
        (0..spec.len())
            .into_par_iter()
            .map(|i| {
                let coordinates = spec.coordinates(i);
                let mut params = spec.fixed.clone();
                for (axis, &v) in spec.axes.iter().zip(&coordinates) {
                    params.insert(axis.param, v);
                }
                let mut row = evaluate(&params, &spec.outputs, &spec.quadrature);
                row.coordinates = coordinates;
                row
            })
            .collect()
    });
    Ok(Dataset { spec, rows })
}

/// Evaluate `outputs` at one fully specified parameter point. Missing
/// optional parameters take their defaults.
pub fn evaluate(params: &BTreeMap<Param, f64>, outputs: &[Output], quad: &QuadratureSpec) -> Row {
    let mut row = Row {
        coordinates: Vec::new(),
        values: vec![None; outputs.len()],
        method: Method::Quad1d,
        flags: Vec::new(),
        failure: None,
    };
    let (state, det) = match setup(params) {
        Ok(v) => v,
        Err(e) => {
            row.failure = Some(RowFailure::from(&e));
            return row;
        }
    };

    let needs_vacuum = outputs.iter().any(|o| matches!(o, Output::PV | Output::PP));
    let needs_matter = outputs.iter().any(|o| matches!(o, Output::PM | Output::PP));
    let vacuum = needs_vacuum.then(|| p_vacuum(state.m(), &det, quad));
    let matter = needs_matter.then(|| p_matter(&state, &det, quad));

    if let Some(Ok(MatterResponse {
        method, resonance, ..
    })) = &matter
    {
        row.method = *method;
        if *resonance {
            row.flags.push("resonance");
        }
    }
    if let (Some(Ok(v)), Some(Ok(m))) = (&vacuum, &matter) {
        if v.value + m.estimate.value > PERTURBATIVITY_LIMIT {
            row.flags.push("nonperturbative");
        }
    }
    if !state.is_non_relativistic() {
        row.flags.push("nonrelativistic");
    }

    let mut record = |slot: &mut Option<Estimate>, r: Result<Estimate>| match r {
        Ok(e) => *slot = Some(e),
        Err(e) => {
            if row.failure.is_none() {
                row.failure = Some(RowFailure::from(&e));
            }
        }
    };
    let matter = matter.map(|r| r.map(|m| m.estimate));
    for (slot, output) in row.values.iter_mut().zip(outputs) {
        let result = match output {
            Output::PV => clone_result(vacuum.as_ref()),
            Output::PM => clone_result(matter.as_ref()),
            Output::PP => clone_result(vacuum.as_ref()).and_then(|v| {
                let m = clone_result(matter.as_ref())?;
                Ok(Estimate {
                    value: v.value + m.value,
                    error_estimate: v.error_estimate + m.error_estimate,
                })
            }),
            Output::PAvg => p_avg(&state, &det, quad),
            Output::RatioNormalized => normalized_ratio_at(&state, &det, quad),
        };
        record(slot, result);
    }
    row
}

fn clone_result(r: Option<&Result<Estimate>>) -> Result<Estimate> {
    match r {
        Some(Ok(e)) => Ok(*e),
        Some(Err(e)) => Err(reissue(e)),
        None => unreachable!("quantity requested but not scheduled"),
    }
}

/// `Error` is not `Clone` (it can wrap `io::Error`); rebuild the variants
/// that numerical code can produce.
fn reissue(e: &Error) -> Error {
    match e {
        Error::Domain { func, detail } => Error::domain(func, detail.clone()),
        Error::Overflow { func, detail } => Error::overflow(func, detail.clone()),
        Error::InvalidParameter(s) => Error::InvalidParameter(s.clone()),
        Error::NonConvergence {
            value,
            error_estimate,
            subdivisions,
        } => Error::NonConvergence {
            value: *value,
            error_estimate: *error_estimate,
            subdivisions: *subdivisions,
        },
        Error::NearResonance { detuning } => Error::NearResonance {
            detuning: *detuning,
        },
        Error::Underflow(s) => Error::Underflow(s.clone()),
        Error::Config(s) => Error::Config(s.clone()),
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), io.to_string())),
    }
}

fn setup(params: &BTreeMap<Param, f64>) -> Result<(ParticleState, DetectorConfig)> {
    let get = |p: Param| {
        params
            .get(&p)
            .copied()
            .or_else(|| p.default_value())
            .ok_or_else(|| Error::InvalidParameter(format!("parameter '{p}' is required")))
    };
    let state = ParticleState::new(get(Param::M)?, get(Param::X0)?, get(Param::K0)?)?;
    let (omega, lambda, tau_i) = (get(Param::Omega)?, get(Param::Lambda)?, get(Param::TauI)?);
    let det = match (params.get(&Param::TauF), params.get(&Param::DeltaTau)) {
        (Some(&tau_f), None) => DetectorConfig::new(omega, lambda, tau_i, tau_f)?,
        (None, Some(&dt)) => DetectorConfig::with_duration(omega, lambda, tau_i, dt)?,
        _ => {
            return Err(Error::InvalidParameter(
                "exactly one of tau_f and delta_tau must be given".into(),
            ))
        }
    };
    Ok((state, det))
}

impl Dataset {
    pub fn failures(&self) -> impl Iterator<Item = (usize, &RowFailure)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.failure.as_ref().map(|f| (i, f)))
    }

    pub fn column(&self, output: Output) -> Option<Vec<Option<f64>>> {
        let k = self.spec.outputs.iter().position(|&o| o == output)?;
        Some(
            self.rows
                .iter()
                .map(|r| r.values[k].map(|e| e.value))
                .collect(),
        )
    }

    /// Full CSV document: `# key=value` header, column header, data rows.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        writeln!(out, "# udw_version={}", crate::VERSION)?;
        for (k, v) in self.spec.header_record() {
            writeln!(out, "# {k}={v}")?;
        }
        for note in &self.spec.notes {
            writeln!(out, "# note={}", note.replace('\n', " "))?;
        }

        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let mut header: Vec<String> = self
            .spec
            .axes
            .iter()
            .map(|a| a.param.name().to_string())
            .collect();
        header.extend(self.spec.outputs.iter().map(|o| o.name().to_string()));
        header.extend(self.spec.outputs.iter().map(|o| format!("{o}_err")));
        header.extend(["method", "flags", "error"].map(String::from));
        w.write_record(&header).map_err(csv_error)?;

        for row in &self.rows {
            let mut record: Vec<String> = row.coordinates.iter().map(|&v| float(v)).collect();
            record.extend(
                row.values
                    .iter()
                    .map(|v| v.map_or(String::new(), |e| float(e.value))),
            );
            record.extend(
                row.values
                    .iter()
                    .map(|v| v.map_or(String::new(), |e| float(e.error_estimate))),
            );
            record.push(row.method.as_str().to_string());
            record.push(row.flags_field());
            record.push(
                row.failure
                    .as_ref()
                    .map_or(String::new(), |f| f.message.replace('\n', " ")),
            );
            w.write_record(&record).map_err(csv_error)?;
        }
        w.into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    /// Write atomically: the document goes to a sibling temporary file that
    /// is renamed over `path` once complete.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let bytes = self.to_csv()?;
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
        if let Some(dir) = dir {
            fs::create_dir_all(dir)?;
        }
        let name = path.file_name().ok_or_else(|| {
            Error::Config(format!("output path '{}' has no file name", path.display()))
        })?;
        let mut tmp_name = std::ffi::OsString::from(".");
        tmp_name.push(name);
        tmp_name.push(format!(".{}.tmp", std::process::id()));
        let tmp = path.with_file_name(tmp_name);
        let result = fs::write(&tmp, &bytes).and_then(|_| fs::rename(&tmp, path));
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        Ok(result?)
    }
}

/// Scientific notation with 17 significant digits.
pub(crate) fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}
