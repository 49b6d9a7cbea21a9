use std::f64::consts::PI;

use super::{Axis, Output, Param, SweepSpec};
use crate::error::{Error, Result};

pub const FIGURE_IDS: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

const MASS: f64 = 10.0;
const COUPLING: f64 = 1.0;
const DURATION: f64 = 4.0;

const PLAUSIBLE: &str =
    "figure parameters are not given in the source; values are plausible defaults, not exact";
const ON_RESONANCE: &str = "omega = m: at this gap the matter response decays more slowly \
    with separation than the averaged intensity; off resonance it decays faster";

/// Built-in sweep behind each figure. All use `m = 10`, `λ = 1`.
pub fn figure_dataset(fig_id: &str) -> Result<SweepSpec> {
    let base = SweepSpec::new(fig_id)
        .fix(Param::M, MASS)
        .fix(Param::Lambda, COUPLING)
        .note(PLAUSIBLE);
    let spec = match fig_id {
        // (m - Ω) = π puts the oscillation period in Δτ at 2.
        "fig1" => base
            .fix(Param::Omega, MASS - PI)
            .fix(Param::X0, 0.0)
            .fix(Param::K0, 0.0)
            .sweep(Axis::new(Param::TauI, 0.0, 2.0, 2))
            .sweep(Axis::new(Param::DeltaTau, 0.0, 20.0, 201))
            .output(Output::PM)
            .output(Output::PV),
        "fig2" => base
            .fix(Param::DeltaTau, DURATION)
            .fix(Param::X0, 0.0)
            .fix(Param::K0, 0.0)
            .sweep(Axis::new(Param::TauI, 0.0, 2.0, 2))
            .sweep(Axis::new(Param::Omega, -25.0, 25.0, 201))
            .output(Output::PM),
        "fig3" => base
            .fix(Param::DeltaTau, DURATION)
            .fix(Param::TauI, 0.0)
            .fix(Param::X0, 0.0)
            .fix(Param::K0, 0.0)
            .sweep(Axis::new(Param::Omega, -25.0, 25.0, 201))
            .output(Output::PM)
            .output(Output::PV),
        "fig4" => base
            .fix(Param::Omega, MASS)
            .fix(Param::TauI, 0.0)
            .fix(Param::DeltaTau, DURATION)
            .sweep(Axis::new(Param::X0, -4.0, 4.0, 101))
            .sweep(Axis::new(Param::K0, -2.0, 2.0, 101))
            .output(Output::PM)
            .output(Output::PV)
            .note(ON_RESONANCE),
        "fig5" => base
            .fix(Param::Omega, MASS)
            .fix(Param::TauI, 0.0)
            .fix(Param::DeltaTau, DURATION)
            .sweep(Axis::new(Param::K0, 0.0, 1.0, 3))
            .sweep(Axis::new(Param::X0, 0.0, 4.0, 201))
            .output(Output::RatioNormalized)
            .output(Output::PAvg)
            .output(Output::PM)
            .note(ON_RESONANCE),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown figure id '{other}'; expected one of {}",
                FIGURE_IDS.join(", ")
            )))
        }
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_figure_is_valid() {
        for id in FIGURE_IDS {
            let s = figure_dataset(id).unwrap();
            assert_eq!(s.sweep_id, id);
            assert_eq!(s.fixed[&Param::M], 10.0);
        }
        assert!(matches!(
            figure_dataset("fig9"),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn fig1_has_two_switch_on_series_over_duration() {
        let s = figure_dataset("fig1").unwrap();
        assert_eq!(s.axes[0].values(), vec![0.0, 2.0]);
        assert_eq!(s.axes[1].param, Param::DeltaTau);
        assert!((s.fixed[&Param::M] - s.fixed[&Param::Omega] - PI).abs() < 1e-15);
    }

    #[test]
    fn fig4_switches_on_at_zero() {
        let s = figure_dataset("fig4").unwrap();
        assert_eq!(s.fixed[&Param::TauI], 0.0);
        let text: Vec<_> = s.header_record();
        assert!(text.contains(&("tau_i".into(), "0".into())));
    }

    #[test]
    fn fig5_grid_contains_the_reference_point() {
        let s = figure_dataset("fig5").unwrap();
        assert!((0..s.len()).any(|i| s.coordinates(i) == vec![0.0, 0.0]));
    }
}
