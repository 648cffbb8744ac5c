//! Narrow-well behaviour: scaling laws, the truncated small-`z`
//! quantization condition, and convergence to the delta-function well.
//!
//! Holding `V0 L = lambda` fixed while `L -> 0` turns the triangle into
//! `-lambda delta(x)`, whose only bound state sits at `-m lambda^2 / (2 hbar^2)`
//! with wavefunction `sqrt(kappa) exp(-kappa |x|)`, `kappa = m lambda / hbar^2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{epsilon_of_z0, nondimensionalize, Parity, WellSpec};
use crate::real::Real;
use crate::specfun::{airy_eval, airy_series_truncated, AiryQuad};
use crate::spectrum::{alpha_of, find_bound_states, DEFAULT_TOL};
use crate::wavefunction::{match_coefficients, normalize, DEFAULT_QUAD_TOL};

/// Narrower wells leave too few resolvable `z0` values inside the window.
pub const MIN_HALF_WIDTH: f64 = 1e-5;
/// Samples per unit `L` used for the wavefunction comparison on `|x| <= 5L`.
const SHAPE_SAMPLES: usize = 2001;

/// A family of wells `V0 = lambda / L` of fixed strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaFamily<T> {
    pub lambda: T,
    pub hbar: T,
    pub mass: T,
}

impl<T: Real> DeltaFamily<T> {
    pub fn new(lambda: T) -> Result<Self> {
        Self::with_units(lambda, T::one(), T::one())
    }

    pub fn with_units(lambda: T, hbar: T, mass: T) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("hbar", hbar), ("mass", mass)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v:?}"
                )));
            }
        }
        Ok(Self { lambda, hbar, mass })
    }

    pub fn spec_at(&self, half_width: T) -> Result<WellSpec<T>> {
        WellSpec::with_units(self.lambda / half_width, half_width, self.hbar, self.mass)
    }

    /// `v0 = 2 m lambda L / hbar^2`.
    pub fn v0_at(&self, half_width: T) -> T {
        T::lit(2.0) * self.mass * self.lambda * half_width / (self.hbar * self.hbar)
    }

    /// `kappa = m lambda / hbar^2`.
    pub fn decay(&self) -> T {
        self.mass * self.lambda / (self.hbar * self.hbar)
    }

    /// Bound-state energy of the limiting delta well.
    pub fn limit_energy(&self) -> T {
        let k = self.decay();
        -self.hbar * self.hbar * k * k / (T::lit(2.0) * self.mass)
    }
}

/// Ground-state quantities of one well of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow<T> {
    pub half_width: T,
    pub z0: T,
    pub z_l: T,
    pub alpha: T,
    pub v0: T,
    pub epsilon: T,
}

/// Fitted exponents `p` in `|q| ~ L^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSlopes<T> {
    pub z0: T,
    pub z_l: T,
    pub alpha: T,
    pub v0: T,
    pub epsilon: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingTable<T> {
    pub rows: Vec<ScalingRow<T>>,
    /// Fitted over the last (smallest) three widths.
    pub slopes: ScalingSlopes<T>,
}

fn check_widths<T: Real>(half_widths: &[T]) -> Result<()> {
    if half_widths.len() < 2 {
        return Err(Error::domain("need at least two L values"));
    }
    for &l in half_widths {
        if !(l.is_finite() && l > T::zero()) {
            return Err(Error::domain(format!(
                "L must be positive and finite, got {l:?}"
            )));
        }
        if l < T::lit(MIN_HALF_WIDTH) {
            return Err(Error::domain(format!(
                "L = {l} is below the smallest supported width {MIN_HALF_WIDTH}"
            )));
        }
    }
    if half_widths.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("L values must be strictly decreasing"));
    }
    Ok(())
}

/// Least-squares slope of `ln|y|` against `ln x`.
pub fn log_log_slope<T: Real>(points: &[(T, T)]) -> T {
    let n = T::from_count(points.len());
    let (sx, sy) = points
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(x, y)| {
            (a + x.ln(), b + y.abs().ln())
        });
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(x, y)| {
            let dx = x.ln() - mx;
            (a + dx * (y.abs().ln() - my), b + dx * dx)
        });
    num / den
}

/// Solves the family at each width and tabulates the ground state.
pub fn scaling_table<T: Real>(
    family: &DeltaFamily<T>,
    half_widths: &[T],
) -> Result<ScalingTable<T>> {
    check_widths(half_widths)?;
    let rows = half_widths
        .par_iter()
        .map(|&l| {
            let spec = family.spec_at(l)?;
            let spectrum = find_bound_states(&spec, T::lit(DEFAULT_TOL))?;
            let ground = spectrum.states[0];
            let v0 = spectrum.v0;
            Ok(ScalingRow {
                half_width: l,
                z0: ground.z0,
                z_l: ground.z0 + v0.cbrt(),
                alpha: alpha_of(ground.z0, v0)?,
                v0,
                epsilon: ground.epsilon,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let tail = &rows[rows.len().saturating_sub(3)..];
    let fit = |f: fn(&ScalingRow<T>) -> T| {
        log_log_slope(
            &tail
                .iter()
                .map(|r| (r.half_width, f(r)))
                .collect::<Vec<_>>(),
        )
    };
    let slopes = ScalingSlopes {
        z0: fit(|r| r.z0),
        z_l: fit(|r| r.z_l),
        alpha: fit(|r| r.alpha),
        v0: fit(|r| r.v0),
        epsilon: fit(|r| r.epsilon),
    };
    Ok(ScalingTable { rows, slopes })
}

/// `z_L^2 - z0^2 - 2 alpha`: the even condition with both Airy functions cut
/// after their `z^4` terms, valid when `|z0|` and `|z_L|` are small.
pub fn truncated_even_condition<T: Real>(z0: T, v0: T) -> T {
    let c = v0.cbrt();
    let z_l = z0 + c;
    let eps = epsilon_of_z0(z0, v0).min(T::zero());
    let alpha = -(-eps).sqrt() / c;
    z_l * z_l - z0 * z0 - T::lit(2.0) * alpha
}

/// Exact root of [`truncated_even_condition`] as `epsilon`:
/// `-((sqrt(1 + 2 v0) - 1) / 2)^2`, which is `-v0^2/4 (1 - v0 + O(v0^2))`.
pub fn truncated_root<T: Real>(v0: T) -> T {
    let two = T::lit(2.0);
    // (sqrt(1 + 2v) - 1)/2 written without cancellation
    let s = v0 / ((T::one() + two * v0).sqrt() + T::one());
    -s * s
}

/// Leading-order small-well energy `-v0^2 / 4`.
pub fn predicted_epsilon<T: Real>(v0: T) -> T {
    -v0 * v0 / T::lit(4.0)
}

/// The even determinant built from Airy series truncated after `order`
/// terms, for comparing against the full residual at small `z`.
pub fn series_even_residual<T: Real>(z0: T, v0: T, order: usize) -> Result<T> {
    let c = v0.cbrt();
    let alpha = -(-epsilon_of_z0(z0, v0).min(T::zero())).sqrt() / c;
    let o = airy_series_truncated(z0, order)?;
    let e = airy_series_truncated(z0 + c, order)?;
    Ok((e.ai_prime - alpha * e.ai) * o.bi_prime - (e.bi_prime - alpha * e.bi) * o.ai_prime)
}

/// Smallest `v0` at which an odd state exists: the first zero of
/// `Bi(-c) Ai'(0) - Ai(-c) Bi'(0)` with `c = v0^{1/3}`, where an odd
/// solution reaches `x = L` with zero slope at zero energy.
pub fn odd_threshold_v0<T: Real>() -> Result<T> {
    let at0: AiryQuad<T> = airy_eval(T::zero())?;
    let f = |c: T| -> Result<T> {
        let q = airy_eval(-c)?;
        Ok(q.bi * at0.ai_prime - q.ai * at0.bi_prime)
    };
    // f < 0 on (0, 1.5] and changes sign once before 2.5
    let (mut a, mut b) = (T::lit(1.5), T::lit(2.5));
    let mut fa = f(a)?;
    if fa >= T::zero() || f(b)? <= T::zero() {
        return Err(Error::Numeric("odd threshold is not bracketed".into()));
    }
    let half = T::lit(0.5);
    while b - a > T::lit(4.0) * T::epsilon() * b {
        let m = a + half * (b - a);
        let fm = f(m)?;
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let c = a + half * (b - a);
    Ok(c * c * c)
}

/// One width of the delta-limit sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaLimitCase<T> {
    pub lambda: T,
    pub half_width: T,
    pub v0: T,
    /// `-v0^2 / 4`.
    pub predicted_epsilon: T,
    /// Ground-state `epsilon` from the full solver.
    pub solver_epsilon: T,
    pub state_count: usize,
    pub ground_parity: Parity,
    /// `|solver / predicted - 1|`.
    pub ratio_error: T,
    pub energy: T,
    /// Relative distance of `energy` from the delta-well energy.
    pub energy_error: T,
    /// Relative sup-norm distance of the normalized ground state from
    /// `sqrt(kappa) exp(-kappa |x|)` on `|x| <= 5L`.
    pub shape_error: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaLimitReport<T> {
    pub family: DeltaFamily<T>,
    pub limit_energy: T,
    /// Width above which an odd state exists.
    pub odd_threshold_width: T,
    pub cases: Vec<DeltaLimitCase<T>>,
    pub slopes: ScalingSlopes<T>,
    /// Empty when every check holds.
    pub failures: Vec<String>,
}

impl<T> DeltaLimitReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn shape_error<T: Real>(spec: &WellSpec<T>, family: &DeltaFamily<T>) -> Result<T> {
    let spectrum = find_bound_states(spec, T::lit(DEFAULT_TOL))?;
    let psi = normalize(
        &match_coefficients(&spectrum.states[0], spec)?,
        T::lit(DEFAULT_QUAD_TOL),
    )?;
    let kappa = family.decay();
    let amp = kappa.sqrt();
    let reach = T::lit(5.0) * spec.half_width;
    let n = SHAPE_SAMPLES;
    let mut worst = T::zero();
    for i in 0..n {
        let x = reach * (T::from_count(2 * i) - T::from_count(n - 1)) / T::from_count(n - 1);
        let target = amp * (-kappa * x.abs()).exp();
        worst = worst.max((psi.evaluate(x) - target).abs());
    }
    Ok(worst / amp)
}

fn case_at<T: Real>(family: &DeltaFamily<T>, l: T) -> Result<DeltaLimitCase<T>> {
    let spec = family.spec_at(l)?;
    let spectrum = find_bound_states(&spec, T::lit(DEFAULT_TOL))?;
    let ground = spectrum.states[0];
    let v0 = nondimensionalize(&spec);
    let predicted = predicted_epsilon(v0);
    let limit = family.limit_energy();
    Ok(DeltaLimitCase {
        lambda: family.lambda,
        half_width: l,
        v0,
        predicted_epsilon: predicted,
        solver_epsilon: ground.epsilon,
        state_count: spectrum.len(),
        ground_parity: ground.parity,
        ratio_error: (ground.epsilon / predicted - T::one()).abs(),
        energy: ground.energy,
        energy_error: ((ground.energy - limit) / limit).abs(),
        shape_error: shape_error(&spec, family)?,
    })
}

fn decreasing<T: Real>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

/// Runs the family down a decreasing sequence of widths and checks that
/// the spectrum collapses onto the delta well. Check failures are listed
/// in the report; only numerical failures are returned as errors.
pub fn delta_limit_check<T: Real>(
    family: &DeltaFamily<T>,
    half_widths: &[T],
) -> Result<DeltaLimitReport<T>> {
    check_widths(half_widths)?;
    let cases = half_widths
        .par_iter()
        .map(|&l| case_at(family, l).map_err(|e| e.at("L", l.as_f64())))
        .collect::<Result<Vec<_>>>()?;
    let slopes = scaling_table(family, half_widths)?.slopes;
    let odd_threshold_width = odd_threshold_v0::<T>()? * family.hbar * family.hbar
        / (T::lit(2.0) * family.mass * family.lambda);

    let mut failures = Vec::new();
    for c in &cases {
        if c.half_width < odd_threshold_width
            && (c.state_count != 1 || c.ground_parity != Parity::Even)
        {
            failures.push(format!(
                "L = {} is below the odd threshold {} but has {} states",
                c.half_width, odd_threshold_width, c.state_count
            ));
        }
    }
    let tail = &cases[cases.len().saturating_sub(3)..];
    let pick = |f: fn(&DeltaLimitCase<T>) -> T| tail.iter().map(f).collect::<Vec<_>>();
    for (name, values) in [
        ("epsilon / (-v0^2/4) - 1", pick(|c| c.ratio_error)),
        ("energy error", pick(|c| c.energy_error)),
        ("wavefunction sup-norm error", pick(|c| c.shape_error)),
    ] {
        if !decreasing(&values) {
            failures.push(format!(
                "{name} is not decreasing over the last three L: {values:?}"
            ));
        }
    }
    Ok(DeltaLimitReport {
        family: *family,
        limit_energy: family.limit_energy(),
        odd_threshold_width,
        cases,
        slopes,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_substitution() {
        let f = DeltaFamily::new(1.0_f64).unwrap();
        assert_eq!(f.v0_at(0.25), 0.5);
        assert_eq!(f.limit_energy(), -0.5);
        let spec = f.spec_at(0.25).unwrap();
        assert!((nondimensionalize(&spec) - 0.5).abs() < 1e-15);
        assert!(DeltaFamily::new(0.0_f64).is_err());
    }

    #[test]
    fn width_validation() {
        let f = DeltaFamily::new(1.0_f64).unwrap();
        assert!(delta_limit_check(&f, &[1e-2]).is_err());
        assert!(delta_limit_check(&f, &[1e-2, 1e-1]).is_err());
        assert!(delta_limit_check(&f, &[1e-4, 1e-6]).is_err());
        assert!(scaling_table(&f, &[1e-2, -1.0]).is_err());
    }

    #[test]
    fn odd_threshold_value() {
        // first zero of Bi(-c) Ai'(0) - Ai(-c) Bi'(0): c = 1.9863527074304728
        let v: f64 = odd_threshold_v0().unwrap();
        assert!((v - 7.837_347_438_943_484).abs() < 1e-11, "{v}");
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&x| (x, 3.0 * x * x))
            .collect();
        assert!((log_log_slope(&pts) - 2.0).abs() < 1e-12);
    }
}
