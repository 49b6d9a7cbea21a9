//! Parameter sweeps over the response functions.
//!
//! A [`SweepSpec`] fixes some of the physical parameters and sweeps one or
//! two others on uniform grids. [`run_sweep`] evaluates the requested
//! outputs at every grid point (in parallel, emitted in row-major order) and
//! [`Dataset::write_csv`] persists the result with a self-describing header.

mod config;
mod figures;
mod run;
mod validation;

pub use figures::{figure_dataset, FIGURE_IDS};
pub use run::{evaluate, run_sweep, Dataset, Row, RowFailure};
pub use validation::{run_validation, Check, ValidationReport};

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;

/// Physical parameters a sweep can fix or vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    M,
    Omega,
    Lambda,
    TauI,
    TauF,
    DeltaTau,
    X0,
    K0,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::M,
        Param::Omega,
        Param::Lambda,
        Param::TauI,
        Param::TauF,
        Param::DeltaTau,
        Param::X0,
        Param::K0,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Param::M => "m",
            Param::Omega => "omega",
            Param::Lambda => "lambda",
            Param::TauI => "tau_i",
            Param::TauF => "tau_f",
            Param::DeltaTau => "delta_tau",
            Param::X0 => "x0",
            Param::K0 => "k0",
        }
    }

    /// Value used when a parameter is neither fixed nor swept.
    pub fn default_value(&self) -> Option<f64> {
        match self {
            Param::Lambda => Some(1.0),
            Param::TauI | Param::X0 | Param::K0 => Some(0.0),
            _ => None,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown parameter '{s}'")))
    }
}

/// Quantities a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    PV,
    PM,
    PP,
    PAvg,
    RatioNormalized,
}

impl Output {
    pub const ALL: [Output; 5] = [
        Output::PV,
        Output::PM,
        Output::PP,
        Output::PAvg,
        Output::RatioNormalized,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Output::PV => "p_v",
            Output::PM => "p_m",
            Output::PP => "p_p",
            Output::PAvg => "p_avg",
            Output::RatioNormalized => "ratio_normalized",
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Output::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown output '{s}'")))
    }
}

/// Uniform grid `min, ..., max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, steps: usize) -> Self {
        Self {
            param,
            min,
            max,
            steps,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

/// One figure-style experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub sweep_id: String,
    pub fixed: BTreeMap<Param, f64>,
    pub axes: Vec<Axis>,
    pub outputs: Vec<Output>,
    pub quadrature: QuadratureSpec,
    pub output_path: Option<PathBuf>,
    /// Free-text remarks carried into the CSV header.
    pub notes: Vec<String>,
}

impl SweepSpec {
    pub fn new(sweep_id: impl Into<String>) -> Self {
        Self {
            sweep_id: sweep_id.into(),
            fixed: BTreeMap::new(),
            axes: Vec::new(),
            outputs: Vec::new(),
            quadrature: QuadratureSpec::default(),
            output_path: None,
            notes: Vec::new(),
        }
    }

    pub fn fix(mut self, param: Param, value: f64) -> Self {
        self.fixed.insert(param, value);
        self
    }

    pub fn sweep(mut self, axis: Axis) -> Self {
        self.axes.push(axis);
        self
    }

    pub fn output(mut self, output: Output) -> Self {
        self.outputs.push(output);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Parse the flat JSON configuration format.
    pub fn from_json_str(text: &str) -> Result<Self> {
        config::parse(text)
    }

    pub fn is_swept(&self, param: Param) -> bool {
        self.axes.iter().any(|a| a.param == param)
    }

    fn is_set(&self, param: Param) -> bool {
        self.fixed.contains_key(&param) || self.is_swept(param)
    }

    /// Fill unset optional parameters with their defaults.
    pub fn with_defaults(mut self) -> Self {
        for p in Param::ALL {
            if let Some(v) = p.default_value() {
                if !self.is_set(p) {
                    self.fixed.insert(p, v);
                }
            }
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweep_id.is_empty() {
            return Err(Error::Config("sweep_id must not be empty".into()));
        }
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Config(format!(
                "a sweep needs one or two axes, got {}",
                self.axes.len()
            )));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            if axis.steps < 2 {
                return Err(Error::Config(format!(
                    "axis '{}' needs steps >= 2, got {}",
                    axis.param, axis.steps
                )));
            }
            if !(axis.min.is_finite() && axis.max.is_finite()) {
                return Err(Error::Config(format!(
                    "axis '{}' bounds must be finite",
                    axis.param
                )));
            }
            if self.axes[..i].iter().any(|a| a.param == axis.param) {
                return Err(Error::Config(format!(
                    "axis '{}' is swept twice",
                    axis.param
                )));
            }
            if self.fixed.contains_key(&axis.param) {
                return Err(Error::Config(format!(
                    "parameter '{}' is both fixed and swept",
                    axis.param
                )));
            }
        }
        for (p, v) in &self.fixed {
            if !v.is_finite() {
                return Err(Error::Config(format!(
                    "parameter '{p}' must be finite, got {v}"
                )));
            }
        }
        for required in [Param::M, Param::Omega] {
            if !self.is_set(required) {
                return Err(Error::Config(format!("parameter '{required}' is required")));
            }
        }
        match (self.is_set(Param::TauF), self.is_set(Param::DeltaTau)) {
            (true, false) | (false, true) => {}
            _ => {
                return Err(Error::Config(
                    "exactly one of 'tau_f' and 'delta_tau' must be given".into(),
                ))
            }
        }
        if self.outputs.is_empty() {
            return Err(Error::Config("at least one output is required".into()));
        }
        for (i, o) in self.outputs.iter().enumerate() {
            if self.outputs[..i].contains(o) {
                return Err(Error::Config(format!("output '{o}' listed twice")));
            }
        }
        self.quadrature.validate()
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis coordinates of grid point `index` in row-major order (last
    /// axis fastest).
    pub fn coordinates(&self, index: usize) -> Vec<f64> {
        let mut rest = index;
        let mut out = vec![0.0; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = axis.value(rest % axis.steps);
            rest /= axis.steps;
        }
        out
    }

    /// Flat `key=value` description used for CSV headers; mirrors the
    /// configuration format.
    pub fn header_record(&self) -> Vec<(String, String)> {
        let mut out = vec![("sweep_id".to_string(), self.sweep_id.clone())];
        for (p, v) in &self.fixed {
            out.push((p.name().to_string(), format!("{v}")));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            let k = format!("axis{}", i + 1);
            out.push((k.clone(), axis.param.name().to_string()));
            out.push((format!("{k}_min"), format!("{}", axis.min)));
            out.push((format!("{k}_max"), format!("{}", axis.max)));
            out.push((format!("{k}_steps"), format!("{}", axis.steps)));
        }
        let outputs: Vec<_> = self.outputs.iter().map(|o| o.name()).collect();
        out.push(("outputs".into(), outputs.join(",")));
        let q = &self.quadrature;
        out.push(("rel_tol".into(), format!("{:e}", q.rel_tol)));
        out.push(("abs_tol".into(), format!("{:e}", q.abs_tol)));
        out.push(("max_subdivisions".into(), q.max_subdivisions.to_string()));
        out.push((
            "oscillation_panels_per_period".into(),
            q.oscillation_panels_per_period.to_string(),
        ));
        out.push(("eps_regulator".into(), format!("{:e}", q.eps_regulator)));
        out.push((
            "eps_extrapolation_levels".into(),
            q.eps_extrapolation_levels.to_string(),
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SweepSpec {
        SweepSpec::new("t")
            .fix(Param::M, 10.0)
            .fix(Param::Omega, 5.0)
            .fix(Param::DeltaTau, 2.0)
            .sweep(Axis::new(Param::X0, -1.0, 1.0, 3))
            .output(Output::PM)
    }

    #[test]
    fn axis_endpoints_are_exact() {
        let a = Axis::new(Param::Omega, -25.0, 25.0, 201);
        let v = a.values();
        assert_eq!(v[0], -25.0);
        assert_eq!(v[200], 25.0);
        assert_eq!(v[60], -10.0);
        assert_eq!(v[140], 10.0);
        for i in 0..201 {
            assert_eq!(v[i], -v[200 - i]);
        }
    }

    #[test]
    fn row_major_coordinates() {
        let s = base().sweep(Axis::new(Param::K0, 0.0, 1.0, 2));
        assert_eq!(s.len(), 6);
        assert_eq!(s.coordinates(0), vec![-1.0, 0.0]);
        assert_eq!(s.coordinates(1), vec![-1.0, 1.0]);
        assert_eq!(s.coordinates(2), vec![0.0, 0.0]);
        assert_eq!(s.coordinates(5), vec![1.0, 1.0]);
    }

    #[test]
    fn validation_rules() {
        assert!(base().validate().is_ok());
        assert!(base().fix(Param::TauF, 3.0).validate().is_err());
        assert!(base().fix(Param::X0, 0.0).validate().is_err());
        assert!(base().output(Output::PM).validate().is_err());
        let mut s = base();
        s.axes[0].steps = 1;
        assert!(s.validate().is_err());
        let mut s = base();
        s.fixed.remove(&Param::Omega);
        assert!(s.validate().is_err());
        let s = base()
            .sweep(Axis::new(Param::K0, 0.0, 1.0, 2))
            .sweep(Axis::new(Param::TauI, 0.0, 1.0, 2));
        assert!(s.validate().is_err());
    }

    #[test]
    fn defaults_fill_unset_parameters_only() {
        let s = base().with_defaults();
        assert_eq!(s.fixed[&Param::Lambda], 1.0);
        assert_eq!(s.fixed[&Param::TauI], 0.0);
        assert!(!s.fixed.contains_key(&Param::X0));
        assert!(s.validate().is_ok());
    }

    #[test]
    fn names_round_trip() {
        for p in Param::ALL {
            assert_eq!(p.name().parse::<Param>().unwrap(), p);
        }
        for o in Output::ALL {
            assert_eq!(o.name().parse::<Output>().unwrap(), o);
        }
        assert!("mass".parse::<Param>().is_err());
    }
}
