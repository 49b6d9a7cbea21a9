use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use super::kronrod::gk15;
use super::{Hints2d, IntegralResult, IntegrandHints, QuadratureSpec};
use crate::error::{Error, Result};

/// Hard ceiling on the oscillation-driven initial partition.
const MAX_INITIAL_PANELS: usize = 200_000;

/// Variable change applied on one segment of the initial partition. Mapped
/// segments are parametrised by `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    /// x = start + len·t², for a singularity at `start`.
    SquareAtStart {
        start: f64,
        len: f64,
    },
    /// x = end - len·(1-t)², for a singularity at `end`.
    SquareAtEnd {
        end: f64,
        len: f64,
    },
    /// x = start + len·(3t² - 2t³), singular at both ends.
    Smoothstep {
        start: f64,
        len: f64,
    },
}

impl Map {
    #[inline]
    fn apply(self, t: f64) -> (f64, f64) {
        match self {
            Map::Identity => (t, 1.0),
            Map::SquareAtStart { start, len } => (start + len * t * t, 2.0 * len * t),
            Map::SquareAtEnd { end, len } => {
                let s = 1.0 - t;
                (end - len * s * s, 2.0 * len * s)
            }
            Map::Smoothstep { start, len } => (
                start + len * t * t * (3.0 - 2.0 * t),
                6.0 * len * t * (1.0 - t),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    segment: usize,
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

#[derive(Debug, PartialEq)]
struct Worst {
    error: f64,
    index: usize,
}

impl Eq for Worst {}

impl Ord for Worst {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Worst {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Adaptive integral of `f` over `[a, b]`.
///
/// Returns `Err` only for invalid input. A run that exhausts its bisection
/// budget comes back with `converged == false` and the best estimate found.
pub fn integrate_1d<F>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    hints: IntegrandHints,
) -> Result<IntegralResult>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "integration limits must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(Error::InvalidParameter(format!(
            "integration limits out of order: a = {a} > b = {b}"
        )));
    }
    if a == b {
        return Ok(IntegralResult::zero());
    }

    let maps = initial_partition(a, b, spec, &hints);
    let eval = |segment: usize, lo: f64, hi: f64| -> Panel {
        let map = maps[segment].1;
        let g = |t: f64| {
            let (x, jac) = map.apply(t);
            f(x) * jac
        };
        let est = gk15(&g, lo, hi);
        Panel {
            segment,
            lo,
            hi,
            value: est.value,
            error: est.error,
        }
    };

    let mut panels: Vec<Panel> = maps
        .iter()
        .enumerate()
        .map(|(i, &((lo, hi), _))| eval(i, lo, hi))
        .collect();
    let mut heap: BinaryHeap<Worst> = panels
        .iter()
        .enumerate()
        .map(|(index, p)| Worst {
            error: p.error,
            index,
        })
        .collect();

    let mut bisections = 0;
    let (mut value, mut error) = totals(&panels);
    while error > spec.target(value.norm()) && bisections < spec.max_subdivisions {
        let Some(worst) = heap.pop() else { break };
        let p = panels[worst.index];
        let mid = 0.5 * (p.lo + p.hi);
        if !(p.lo < mid && mid < p.hi) {
            // Panel at floating-point resolution; leave its error in the total.
            continue;
        }
        let left = eval(p.segment, p.lo, mid);
        let right = eval(p.segment, mid, p.hi);
        panels[worst.index] = left;
        heap.push(Worst {
            error: left.error,
            index: worst.index,
        });
        heap.push(Worst {
            error: right.error,
            index: panels.len(),
        });
        panels.push(right);
        bisections += 1;
        (value, error) = totals(&panels);
    }

    panels.sort_by(|x, y| x.segment.cmp(&y.segment).then(x.lo.total_cmp(&y.lo)));
    let (value, error) = totals(&panels);
    Ok(IntegralResult {
        value,
        error_estimate: error,
        subdivisions_used: panels.len(),
        converged: error <= spec.target(value.norm()),
    })
}

fn totals(panels: &[Panel]) -> (Complex64, f64) {
    panels
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
            (v + p.value, e + p.error)
        })
}

/// Segments of the initial partition: their parameter range and map.
fn initial_partition(
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    hints: &IntegrandHints,
) -> Vec<((f64, f64), Map)> {
    let n = match hints.frequency {
        Some(w) if w.is_finite() && w.abs() > 0.0 => {
            let width = TAU / w.abs() / spec.oscillation_panels_per_period as f64;
            (((b - a) / width).ceil() as usize).clamp(1, MAX_INITIAL_PANELS)
        }
        _ => 1,
    };
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n {
                b
            } else {
                a + h * (i + 1) as f64
            };
            let first = i == 0 && hints.singular_start;
            let last = i + 1 == n && hints.singular_end;
            let len = hi - lo;
            match (first, last) {
                (true, true) => ((0.0, 1.0), Map::Smoothstep { start: lo, len }),
                (true, false) => ((0.0, 1.0), Map::SquareAtStart { start: lo, len }),
                (false, true) => ((0.0, 1.0), Map::SquareAtEnd { end: hi, len }),
                (false, false) => ((lo, hi), Map::Identity),
            }
        })
        .collect()
}

/// Iterated integral `∫_a^b dx ∫_c^d dy f(x, y)`.
///
/// With `diagonal_singular` the inner integral is split at `y = x` and both
/// pieces are treated as endpoint-singular.
pub fn integrate_2d<F>(
    f: F,
    (a, b): (f64, f64),
    (c, d): (f64, f64),
    spec: &QuadratureSpec,
    hints: Hints2d,
) -> Result<IntegralResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    spec.validate()?;
    for (lo, hi) in [(a, b), (c, d)] {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidParameter(format!(
                "invalid rectangle side [{lo}, {hi}]"
            )));
        }
    }
    if a == b || c == d {
        return Ok(IntegralResult::zero());
    }

    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1 / (b - a).max(1.0),
        ..*spec
    };
    let inner_hints = IntegrandHints {
        frequency: hints.inner_frequency,
        ..IntegrandHints::default()
    };
    let inner_error = Cell::new(0.0_f64);
    let inner_failed = Cell::new(false);
    let inner_panels = Cell::new(0_usize);
    let inner_error_first: Cell<Option<Error>> = Cell::new(None);

    let record = |r: Result<IntegralResult>| -> Complex64 {
        match r {
            Ok(r) => {
                inner_error.set(inner_error.get().max(r.error_estimate));
                inner_panels.set(inner_panels.get() + r.subdivisions_used);
                if !r.converged {
                    inner_failed.set(true);
                }
                r.value
            }
            Err(e) => {
                inner_failed.set(true);
                inner_error_first.set(Some(e));
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };

    let outer = |x: f64| -> Complex64 {
        let g = |y: f64| f(x, y);
        if hints.diagonal_singular && x > c && x < d {
            let lower = record(integrate_1d(
                g,
                c,
                x,
                &inner_spec,
                inner_hints.singular_end(),
            ));
            let upper = record(integrate_1d(
                |y: f64| f(x, y),
                x,
                d,
                &inner_spec,
                inner_hints.singular_start(),
            ));
            lower + upper
        } else {
            let mut h = inner_hints;
            if hints.diagonal_singular {
                h.singular_start = x <= c;
                h.singular_end = x >= d;
            }
            record(integrate_1d(g, c, d, &inner_spec, h))
        }
    };

    let outer_hints = IntegrandHints {
        frequency: hints.outer_frequency,
        singular_start: hints.diagonal_singular,
        singular_end: hints.diagonal_singular,
    };
    let result = integrate_1d(outer, a, b, spec, outer_hints)?;
    if let Some(e) = inner_error_first.take() {
        return Err(e);
    }
    let error = result.error_estimate + (b - a) * inner_error.get();
    Ok(IntegralResult {
        value: result.value,
        error_estimate: error,
        subdivisions_used: result.subdivisions_used + inner_panels.get(),
        converged: result.converged && !inner_failed.get(),
    })
}
