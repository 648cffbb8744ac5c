//! Parity-resolved quantization conditions and the bound-state root finder.
//!
//! Matching `c_a Ai(z) + c_b Bi(z)` to the evanescent tail at `x = L` and
//! imposing `psi'(0) = 0` (even) or `psi(0) = 0` (odd) leaves a ratio
//! equation in `z0`. The solver works with its cross-multiplied form
//!
//! ```text
//! even: [Ai'(zL) - a Ai(zL)] Bi'(z0) - [Bi'(zL) - a Bi(zL)] Ai'(z0)
//! odd:  [Ai'(zL) - a Ai(zL)] Bi(z0)  - [Bi'(zL) - a Bi(zL)] Ai(z0)
//! ```
//!
//! with `zL = z0 + v0^{1/3}` and `a = -sqrt(-epsilon) / v0^{1/3}`, which has
//! the same zeros as the ratio form but no poles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{epsilon_of_z0, nondimensionalize, BoundState, Parity, WellSpec};
use crate::real::Real;
use crate::specfun::{airy_eval, AiryQuad, MAX_ARGUMENT};

/// Default bracket width in `z0`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest accepted bracket width.
pub const MAX_TOL: f64 = 1e-6;

/// Window margin as a fraction of `v0^{1/3}`.
const WINDOW_MARGIN: f64 = 1e-9;

/// Roots with `|epsilon| < THRESHOLD_CUT * min(1, v0)` count as unbound.
pub const THRESHOLD_CUT: f64 = 1e-8;

/// Value of the determinant at one `z0`.
///
/// `scale` bounds the size of the terms that enter `value`: each Airy value
/// is replaced by the magnitude of its (value, derivative) pair, so the
/// scale stays meaningful when `z0` sits near a zero of one of them. The
/// rounding floor of `value` is a few ulps of `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingResidual<T> {
    pub z0: T,
    pub parity: Parity,
    pub value: T,
    pub scale: T,
}

impl<T: Real> MatchingResidual<T> {
    /// `|value| / scale`.
    pub fn relative(&self) -> T {
        if self.scale > T::zero() {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

fn check_window<T: Real>(z0: T, v0: T) -> Result<()> {
    if !(v0.is_finite() && v0 > T::zero()) {
        return Err(Error::domain(format!(
            "v0 must be positive and finite, got {v0:?}"
        )));
    }
    let c = v0.cbrt();
    if !(z0 > -c && z0 < T::zero()) {
        return Err(Error::domain(format!(
            "z0 = {z0} outside the bound-state window (-{c}, 0)"
        )));
    }
    Ok(())
}

/// `alpha = -sqrt(-epsilon) / v0^{1/3}` for `z0` inside `(-v0^{1/3}, 0)`.
pub fn alpha_of<T: Real>(z0: T, v0: T) -> Result<T> {
    check_window(z0, v0)?;
    Ok(alpha_unchecked(z0, v0))
}

fn alpha_unchecked<T: Real>(z0: T, v0: T) -> T {
    let eps = epsilon_of_z0(z0, v0).min(T::zero());
    -(-eps).sqrt() / v0.cbrt()
}

struct Pieces<T> {
    origin: AiryQuad<T>,
    edge_a: T,
    edge_b: T,
    edge_a_size: T,
    edge_b_size: T,
}

fn pieces<T: Real>(z0: T, v0: T) -> Result<Pieces<T>> {
    let alpha = alpha_unchecked(z0, v0);
    let edge = airy_eval(z0 + v0.cbrt())?;
    let origin = airy_eval(z0)?;
    Ok(Pieces {
        origin,
        edge_a: edge.ai_prime - alpha * edge.ai,
        edge_b: edge.bi_prime - alpha * edge.bi,
        edge_a_size: edge.ai_prime.abs() + (alpha * edge.ai).abs(),
        edge_b_size: edge.bi_prime.abs() + (alpha * edge.bi).abs(),
    })
}

/// The determinant form of the quantization condition at `z0`.
pub fn matching_residual<T: Real>(z0: T, v0: T, parity: Parity) -> Result<MatchingResidual<T>> {
    check_window(z0, v0)?;
    let p = pieces(z0, v0)?;
    let (bi0, ai0) = match parity {
        Parity::Even => (p.origin.bi_prime, p.origin.ai_prime),
        Parity::Odd => (p.origin.bi, p.origin.ai),
    };
    let o = &p.origin;
    let scale = p.edge_a_size * (o.bi.abs() + o.bi_prime.abs())
        + p.edge_b_size * (o.ai.abs() + o.ai_prime.abs());
    Ok(MatchingResidual {
        z0,
        parity,
        value: p.edge_a * bi0 - p.edge_b * ai0,
        scale,
    })
}

/// Both sides of the ratio form, `(edge ratio, origin ratio)`; they are
/// equal at a root. Poles appear wherever a denominator vanishes.
pub fn quantization_ratio<T: Real>(z0: T, v0: T, parity: Parity) -> Result<(T, T)> {
    check_window(z0, v0)?;
    let p = pieces(z0, v0)?;
    let origin = match parity {
        Parity::Even => p.origin.ai_prime / p.origin.bi_prime,
        Parity::Odd => p.origin.ai / p.origin.bi,
    };
    Ok((p.edge_a / p.edge_b, origin))
}

/// All bound states of one well, sorted by increasing energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    pub spec: WellSpec<T>,
    pub v0: T,
    pub states: Vec<BoundState<T>>,
    /// Index pairs of even/odd roots closer than the bracket tolerance.
    pub coincident: Vec<(usize, usize)>,
}

impl<T: Real> Spectrum<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Sample count per parity for the bracketing scan.
pub fn scan_points<T: Real>(v0: T) -> usize {
    let n = (T::lit(40.0) * (T::one() + v0.sqrt()))
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX);
    n.max(64)
}

fn scan_window<T: Real>(v0: T) -> (T, T) {
    let c = v0.cbrt();
    let margin = T::resolvable(WINDOW_MARGIN, 8.0) * c;
    (-c + margin, -margin)
}

fn residual_value<T: Real>(z0: T, v0: T, parity: Parity) -> Result<T> {
    matching_residual(z0, v0, parity).map(|r| r.value)
}

/// Sign-change brackets of the residual on a uniform grid of `n` points.
fn bracket<T: Real>(v0: T, parity: Parity, n: usize) -> Result<Vec<(T, T)>> {
    let (lo, hi) = scan_window(v0);
    let step = (hi - lo) / T::from_count(n - 1);
    let node = |i: usize| {
        if i == n - 1 {
            hi
        } else {
            lo + step * T::from_count(i)
        }
    };
    let values = (0..n)
        .map(|i| residual_value(node(i), v0, parity))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a == T::zero() {
            out.push((node(i), node(i)));
        } else if (a < T::zero()) != (b < T::zero()) && b != T::zero() {
            out.push((node(i), node(i + 1)));
        }
    }
    if values[n - 1] == T::zero() {
        out.push((node(n - 1), node(n - 1)));
    }
    Ok(out)
}

/// Bisection to width `tol`, then one secant step kept only if it stays in
/// the bracket and lowers the residual.
fn refine<T: Real>(v0: T, parity: Parity, mut a: T, mut b: T, tol: T) -> Result<T> {
    if a == b {
        return Ok(a);
    }
    let mut fa = residual_value(a, v0, parity)?;
    let mut fb = residual_value(b, v0, parity)?;
    let half = T::lit(0.5);
    while b - a > tol {
        let mid = a + half * (b - a);
        if mid <= a || mid >= b {
            break;
        }
        let fm = residual_value(mid, v0, parity)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    let (mut best, mut fbest) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    if fb != fa {
        let s = a - fa * (b - a) / (fb - fa);
        if s >= a && s <= b {
            let fs = residual_value(s, v0, parity)?;
            if fs.abs() < fbest.abs() {
                best = s;
                fbest = fs;
            }
        }
    }
    let _ = fbest;
    Ok(best)
}

fn validate_tol<T: Real>(tol: T) -> Result<T> {
    if !(tol > T::zero() && tol <= T::lit(MAX_TOL)) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, {MAX_TOL:?}], got {tol:?}"
        )));
    }
    Ok(tol.max(T::lit(4.0) * T::epsilon()))
}

/// Finds every bound state of the well.
pub fn find_bound_states<T: Real>(spec: &WellSpec<T>, tol: T) -> Result<Spectrum<T>> {
    spec.validate()?;
    let tol = validate_tol(tol)?;
    let v0 = nondimensionalize(spec);
    if v0.cbrt() > T::lit(MAX_ARGUMENT) {
        return Err(Error::domain(format!(
            "v0 = {v0} exceeds the largest supported value {} (v0^(1/3) <= {MAX_ARGUMENT})",
            MAX_ARGUMENT * MAX_ARGUMENT * MAX_ARGUMENT
        )));
    }
    let n = scan_points(v0);
    let cut = T::lit(THRESHOLD_CUT) * v0.min(T::one());

    let mut roots: Vec<(T, Parity)> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let primary = bracket(v0, parity, n)?;
        let dense = bracket(v0, parity, 2 * n)?;
        if primary.len() != dense.len() {
            return Err(Error::Consistency(format!(
                "{parity} scan found {} roots at {n} points but {} at {} points (v0 = {v0})",
                primary.len(),
                dense.len(),
                2 * n
            )));
        }
        for (a, b) in primary {
            let z0 = refine(v0, parity, a, b, tol)?;
            if -epsilon_of_z0(z0, v0) >= cut {
                roots.push((z0, parity));
            }
        }
    }
    // Increasing energy means decreasing z0.
    roots.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite roots"));

    if roots.is_empty() {
        return Err(Error::Numeric(format!(
            "no bound state resolved inside the window for v0 = {v0}"
        )));
    }
    let mut states = Vec::with_capacity(roots.len());
    let mut expected = Parity::Even;
    for (index, &(z0, parity)) in roots.iter().enumerate() {
        if parity != expected {
            return Err(Error::Consistency(format!(
                "state {index} has {parity} parity where {expected} was expected (v0 = {v0})"
            )));
        }
        expected = expected.flipped();
        states.push(BoundState::new(index, parity, z0, spec));
    }
    let coincident = states
        .windows(2)
        .filter(|w| (w[0].z0 - w[1].z0).abs() <= tol)
        .map(|w| (w[0].index, w[1].index))
        .collect();
    Ok(Spectrum {
        spec: *spec,
        v0,
        states,
        coincident,
    })
}

/// Bound states of the unit-width, unit-constant well with depth `v0`.
pub fn find_bound_states_v0<T: Real>(v0: T, tol: T) -> Result<Spectrum<T>> {
    find_bound_states(&WellSpec::from_dimensionless(v0)?, tol)
}

pub fn count_bound_states<T: Real>(spec: &WellSpec<T>) -> Result<usize> {
    find_bound_states(spec, T::lit(DEFAULT_TOL)).map(|s| s.len())
}

/// One sample of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow<T> {
    /// The swept value (`v0` or `L`).
    pub parameter: T,
    pub states: Vec<BoundState<T>>,
}

fn uniform_grid<T: Real>(min: T, max: T, steps: usize, name: &str) -> Result<Vec<T>> {
    if !(min > T::zero() && max > min && max.is_finite()) {
        return Err(Error::domain(format!(
            "{name} range must satisfy 0 < min < max, got [{min}, {max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::domain(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    let h = (max - min) / T::from_count(steps - 1);
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + h * T::from_count(i)
            }
        })
        .collect())
}

/// Spectrum of the unit well over a uniform grid of depths `v0`.
pub fn sweep_v0<T: Real>(v0_min: T, v0_max: T, steps: usize, tol: T) -> Result<Vec<SweepRow<T>>> {
    let grid = uniform_grid(v0_min, v0_max, steps, "v0")?;
    grid.into_par_iter()
        .map(|v0| {
            find_bound_states_v0(v0, tol)
                .map(|s| SweepRow {
                    parameter: v0,
                    states: s.states,
                })
                .map_err(|e| e.at("v0", v0.as_f64()))
        })
        .collect()
}

/// Spectrum over a uniform grid of half-widths `L`, other parameters taken
/// from `template`.
pub fn sweep_l<T: Real>(
    template: &WellSpec<T>,
    l_min: T,
    l_max: T,
    steps: usize,
    tol: T,
) -> Result<Vec<SweepRow<T>>> {
    template.validate()?;
    let grid = uniform_grid(l_min, l_max, steps, "L")?;
    grid.into_par_iter()
        .map(|l| {
            let spec = WellSpec {
                half_width: l,
                ..*template
            };
            find_bound_states(&spec, tol)
                .map(|s| SweepRow {
                    parameter: l,
                    states: s.states,
                })
                .map_err(|e| e.at("L", l.as_f64()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::z0_of_epsilon;

    #[test]
    fn alpha_examples() {
        let v0 = 20.0_f64;
        let c = v0.cbrt();
        let a = alpha_of(-1e-12, v0).unwrap();
        assert!(
            (a - -20.0_f64.sqrt() / c).abs() < 1e-9 && (a - -1.647_549).abs() < 1e-6,
            "{a}"
        );
        let a = alpha_of(-c + 1e-12, v0).unwrap();
        assert!(a < 0.0 && a > -1e-5);
        let z0 = z0_of_epsilon(-12.502_980_1, v0);
        assert!((alpha_of(z0, v0).unwrap() - -1.302_657).abs() < 1e-6);
    }

    #[test]
    fn alpha_rejects_outside_window() {
        assert!(matches!(alpha_of(0.0, 20.0), Err(Error::Domain(_))));
        assert!(matches!(alpha_of(0.5, 20.0), Err(Error::Domain(_))));
        assert!(matches!(
            alpha_of(-20.0_f64.cbrt(), 20.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(alpha_of(-1.0, -2.0), Err(Error::Domain(_))));
        assert!(matching_residual(-3.0, 20.0, Parity::Even).is_err());
    }

    #[test]
    fn tolerance_is_validated() {
        let spec = WellSpec::new(10.0, 1.0).unwrap();
        assert!(find_bound_states(&spec, 0.0).is_err());
        assert!(find_bound_states(&spec, 1e-3).is_err());
        assert!(find_bound_states(&spec, 1e-6).is_ok());
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(sweep_v0(0.0, 1.0, 3, 1e-12).is_err());
        assert!(sweep_v0(2.0, 1.0, 3, 1e-12).is_err());
        assert!(sweep_v0(1.0, 2.0, 1, 1e-12).is_err());
    }

    #[test]
    fn scan_density() {
        assert_eq!(scan_points(1.0_f64), 80);
        assert_eq!(scan_points(1e-4_f64), 64);
        assert_eq!(scan_points(100.0_f64), 440);
    }
}
