//! Piecewise parity eigenfunctions.
//!
//! For `|x| <= L` the state is `c_a Ai(z) + c_b Bi(z)` with `z` from
//! [`z_of_x`]; beyond, `c exp(-sqrt(-epsilon) |x| / L)`. The left half is
//! the mirror image times `+1` (even) or `-1` (odd).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{nondimensionalize, z_of_x, BoundState, Parity, WellSpec};
use crate::quadrature::adaptive_simpson;
use crate::real::Real;
use crate::specfun::airy_eval;
use crate::spectrum::{find_bound_states, matching_residual};

/// Default relative tolerance for the interior norm integral.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Largest relative determinant residual accepted as a root.
pub const ROOT_CHECK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveCoefficients<T> {
    pub c_a: T,
    pub c_b: T,
    /// Amplitude of the exterior exponential.
    pub c: T,
    pub state: BoundState<T>,
    pub spec: WellSpec<T>,
}

fn airy_pair<T: Real>(z: T) -> (T, T, T, T) {
    let q = airy_eval(z).expect("Airy argument inside the well is in range");
    (q.ai, q.ai_prime, q.bi, q.bi_prime)
}

impl<T: Real> WaveCoefficients<T> {
    pub fn v0(&self) -> T {
        nondimensionalize(&self.spec)
    }

    /// Decay constant `sqrt(-epsilon)` of the tail (per unit `x / L`).
    pub fn decay(&self) -> T {
        (-self.state.epsilon).max(T::zero()).sqrt()
    }

    /// Interior value at `x = L`, equal to `c exp(-sqrt(-epsilon))`.
    pub fn edge_value(&self) -> T {
        self.interior(self.spec.half_width)
    }

    fn interior(&self, ax: T) -> T {
        let z = z_of_x(ax, self.state.z0, self.v0(), self.spec.half_width);
        let (ai, _, bi, _) = airy_pair(z);
        self.c_a * ai + self.c_b * bi
    }

    fn interior_slope(&self, ax: T) -> T {
        let v0 = self.v0();
        let z = z_of_x(ax, self.state.z0, v0, self.spec.half_width);
        let (_, aip, _, bip) = airy_pair(z);
        v0.cbrt() / self.spec.half_width * (self.c_a * aip + self.c_b * bip)
    }

    /// `psi(x)` on the whole line.
    pub fn evaluate(&self, x: T) -> T {
        let l = self.spec.half_width;
        let ax = x.abs();
        let right = if ax <= l {
            self.interior(ax)
        } else {
            // c e^{-s|x|/L} written relative to x = L so that c e^{-s}
            // is formed without overflow for deep wells.
            let s = self.decay();
            self.edge_value() * (-s * (ax - l) / l).exp()
        };
        if x < T::zero() {
            self.state.parity.sign::<T>() * right
        } else {
            right
        }
    }

    /// `d psi / dx` on the whole line.
    pub fn derivative(&self, x: T) -> T {
        let l = self.spec.half_width;
        let ax = x.abs();
        let right = if ax <= l {
            self.interior_slope(ax)
        } else {
            let s = self.decay();
            -s / l * self.edge_value() * (-s * (ax - l) / l).exp()
        };
        if x < T::zero() {
            -self.state.parity.sign::<T>() * right
        } else {
            right
        }
    }

    fn scaled(&self, factor: T) -> Self {
        Self {
            c_a: self.c_a * factor,
            c_b: self.c_b * factor,
            c: self.c * factor,
            ..*self
        }
    }

    /// `∫ |psi|^2 dx` over the whole line.
    pub fn norm_squared(&self, rel_tol: T) -> Result<T> {
        let l = self.spec.half_width;
        let panels = 8 * (self.state.index + 2);
        let interior = adaptive_simpson(
            |x| {
                let v = self.interior(x);
                v * v
            },
            T::zero(),
            l,
            rel_tol,
            panels,
        )?;
        let edge = self.edge_value();
        let tail = edge * edge * l / (T::lit(2.0) * self.decay());
        Ok(T::lit(2.0) * (interior + tail))
    }

    /// Number of sign changes of `psi` on a uniform grid of `n` points
    /// spanning the well and `extra` half-widths on either side.
    pub fn node_count(&self, n: usize, extra: T) -> usize {
        let span = self.spec.half_width * (T::one() + extra);
        let mut count = 0;
        let mut last_sign: Option<bool> = None;
        for (_, v) in grid(-span, span, n).map(|x| (x, self.evaluate(x))) {
            if v == T::zero() {
                continue;
            }
            let s = v > T::zero();
            if let Some(prev) = last_sign {
                if prev != s {
                    count += 1;
                }
            }
            last_sign = Some(s);
        }
        count
    }
}

/// Uniform grid that is exactly mirror-symmetric when `min = -max`.
fn grid<T: Real>(min: T, max: T, n: usize) -> impl Iterator<Item = T> {
    let m = T::from_count(n - 1);
    (0..n).map(move |i| (min * T::from_count(n - 1 - i) + max * T::from_count(i)) / m)
}

/// Coefficients fixed by the origin condition and the value match at `L`.
///
/// `(c_a, c_b)` is the null vector `(Bi'(z0), -Ai'(z0))` for even states and
/// `(Bi(z0), -Ai(z0))` for odd ones; `c` comes from continuity of `psi` at
/// `x = L`. The result is not normalized.
pub fn match_coefficients<T: Real>(
    state: &BoundState<T>,
    spec: &WellSpec<T>,
) -> Result<WaveCoefficients<T>> {
    let v0 = nondimensionalize(spec);
    let residual = matching_residual(state.z0, v0, state.parity)?;
    if residual.relative() > T::lit(ROOT_CHECK) {
        return Err(Error::Consistency(format!(
            "z0 = {} is not a {} root (relative residual {})",
            state.z0,
            state.parity,
            residual.relative()
        )));
    }
    let (ai, aip, bi, bip) = airy_pair(state.z0);
    let (c_a, c_b) = match state.parity {
        Parity::Even => (bip, -aip),
        Parity::Odd => (bi, -ai),
    };
    let (ail, _, bil, _) = airy_pair(state.z0 + v0.cbrt());
    let s = (-state.epsilon).sqrt();
    let c = (c_a * ail + c_b * bil) * s.exp();
    Ok(WaveCoefficients {
        c_a,
        c_b,
        c,
        state: *state,
        spec: *spec,
    })
}

/// Rescales to unit norm with `psi(0) > 0` (even) or `psi'(0) > 0` (odd).
pub fn normalize<T: Real>(coeffs: &WaveCoefficients<T>, rel_tol: T) -> Result<WaveCoefficients<T>> {
    let norm2 = coeffs.norm_squared(rel_tol)?;
    if !(norm2.is_finite() && norm2 > T::zero()) {
        return Err(Error::Numeric(format!("norm integral is {norm2}")));
    }
    let at_origin = match coeffs.state.parity {
        Parity::Even => coeffs.evaluate(T::zero()),
        Parity::Odd => coeffs.derivative(T::zero()),
    };
    let sign = if at_origin < T::zero() {
        -T::one()
    } else {
        T::one()
    };
    Ok(coeffs.scaled(sign / norm2.sqrt()))
}

/// Uniform samples `(x, psi(x))`, `n >= 2`, endpoints included.
pub fn sample<T: Real>(
    coeffs: &WaveCoefficients<T>,
    x_min: T,
    x_max: T,
    n: usize,
) -> Result<Vec<(T, T)>> {
    if !(x_min < x_max && x_min.is_finite() && x_max.is_finite()) {
        return Err(Error::domain(format!(
            "sample range must satisfy x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!("need at least 2 samples, got {n}")));
    }
    Ok(grid(x_min, x_max, n)
        .map(|x| (x, coeffs.evaluate(x)))
        .collect())
}

/// Normalized eigenfunctions of every bound state of `spec`.
pub fn eigenstates<T: Real>(
    spec: &WellSpec<T>,
    root_tol: T,
    quad_tol: T,
) -> Result<Vec<WaveCoefficients<T>>> {
    find_bound_states(spec, root_tol)?
        .states
        .iter()
        .map(|st| normalize(&match_coefficients(st, spec)?, quad_tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DEFAULT_TOL;

    fn states(v0: f64) -> Vec<WaveCoefficients<f64>> {
        let spec = WellSpec::from_dimensionless(v0).unwrap();
        eigenstates(&spec, DEFAULT_TOL, DEFAULT_QUAD_TOL).unwrap()
    }

    #[test]
    fn origin_conditions_hold_by_construction() {
        let spec = WellSpec::from_dimensionless(20.0).unwrap();
        let spectrum = find_bound_states(&spec, DEFAULT_TOL).unwrap();
        for st in &spectrum.states {
            let w = match_coefficients(st, &spec).unwrap();
            let q = airy_eval(st.z0).unwrap();
            match st.parity {
                Parity::Even => assert_eq!(w.c_a * q.ai_prime + w.c_b * q.bi_prime, 0.0),
                Parity::Odd => assert_eq!(w.c_a * q.ai + w.c_b * q.bi, 0.0),
            }
        }
    }

    #[test]
    fn rejects_non_roots() {
        let spec = WellSpec::from_dimensionless(20.0).unwrap();
        let fake = BoundState::new(0, Parity::Even, -1.5, &spec);
        assert!(matches!(
            match_coefficients(&fake, &spec),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn derivative_matching_at_edge() {
        let spec = WellSpec::from_dimensionless(20.0).unwrap();
        let st = find_bound_states(&spec, DEFAULT_TOL).unwrap().states[0];
        let w = match_coefficients(&st, &spec).unwrap();
        let zl = st.z0 + 20.0_f64.cbrt();
        let q = airy_eval(zl).unwrap();
        let alpha = crate::spectrum::alpha_of(st.z0, 20.0).unwrap();
        let s = (-st.epsilon).sqrt();
        let lhs = w.c_a * q.ai_prime + w.c_b * q.bi_prime;
        let rhs = alpha * w.c * (-s).exp();
        assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs(), "{lhs} vs {rhs}");
        let top = w.c_a * q.ai + w.c_b * q.bi;
        assert!((top - w.c * (-s).exp()).abs() <= 1e-12 * top.abs());
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let spec = WellSpec::from_dimensionless(20.0).unwrap();
        for st in find_bound_states(&spec, DEFAULT_TOL).unwrap().states {
            let w = match_coefficients(&st, &spec).unwrap();
            let a = normalize(&w, DEFAULT_QUAD_TOL).unwrap();
            let b = normalize(&w.scaled(2.0), DEFAULT_QUAD_TOL).unwrap();
            let c = normalize(&w.scaled(-3.0), DEFAULT_QUAD_TOL).unwrap();
            for other in [b, c] {
                assert!((a.c_a - other.c_a).abs() <= 1e-12 * a.c_a.abs());
                assert!((a.c_b - other.c_b).abs() <= 1e-12 * a.c_b.abs());
                assert!((a.c - other.c).abs() <= 1e-12 * a.c.abs());
            }
        }
    }

    #[test]
    fn sign_convention() {
        let ws = states(20.0);
        assert!(ws[0].evaluate(0.0) > 0.0);
        assert!(ws[1].derivative(0.0) > 0.0);
        assert_eq!(ws[1].evaluate(0.0), 0.0);
    }

    #[test]
    fn sample_validation_and_symmetry() {
        let ws = states(20.0);
        assert!(sample(&ws[0], 1.0, -1.0, 10).is_err());
        assert!(sample(&ws[0], -1.0, 1.0, 1).is_err());
        let pts = sample(&ws[0], -3.0, 3.0, 601).unwrap();
        assert_eq!(pts.len(), 601);
        for i in 0..601 {
            let (x, v) = pts[i];
            let (xm, vm) = pts[600 - i];
            assert_eq!(x, -xm);
            assert!((v - vm).abs() <= 1e-12);
        }
    }
}
