use num_complex::Complex64;

use super::QuadratureSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    /// Last difference along the diagonal of the tableau.
    pub error_estimate: f64,
}

/// Limit `ε → 0⁺` of `g` from samples at `ε_k = eps_regulator · 2^{-k}`,
/// `k = 0..=eps_extrapolation_levels`, by polynomial (Richardson/Neville)
/// extrapolation.
pub fn extrapolate_eps<G>(g: G, spec: &QuadratureSpec) -> Result<Extrapolated>
where
    G: Fn(f64) -> Result<Complex64>,
{
    spec.validate()?;
    let levels = spec.eps_extrapolation_levels;
    let mut tableau: Vec<Vec<Complex64>> = Vec::with_capacity(levels + 1);
    let mut diagonal_steps: Vec<f64> = Vec::new();

    for k in 0..=levels {
        let eps = spec.eps_regulator * 0.5_f64.powi(k as i32);
        let mut row = vec![g(eps)?];
        for j in 1..=k {
            let factor = 2.0_f64.powi(j as i32) - 1.0;
            let refined = row[j - 1] + (row[j - 1] - tableau[k - 1][j - 1]) / factor;
            row.push(refined);
        }
        if k > 0 {
            diagonal_steps.push((row[k] - tableau[k - 1][k - 1]).norm());
        }
        tableau.push(row);
    }

    let value = tableau[levels][levels];
    let error_estimate = diagonal_steps.last().copied().unwrap_or(0.0);
    if let [.., prev, last] = diagonal_steps[..] {
        if last > prev && last > 10.0 * spec.target(value.norm()) {
            return Err(Error::NonConvergence {
                value: value.norm(),
                error_estimate: last,
                subdivisions: levels,
            });
        }
    }
    Ok(Extrapolated {
        value,
        error_estimate,
    })
}
