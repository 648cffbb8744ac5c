//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};
use crate::real::Real;

const MAX_DEPTH: usize = 48;
/// Integrand evaluations allowed before giving up.
const MAX_EVALS: usize = 1_000_000;

struct Simpson<'a, T, F> {
    f: &'a F,
    abs_tol: T,
    evals: usize,
    failed: bool,
}

impl<T: Real, F: Fn(T) -> T> Simpson<'_, T, F> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(&mut self, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: usize) -> T {
        let half = T::lit(0.5);
        let m = half * (a + b);
        let lm = half * (a + m);
        let rm = half * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let six = T::lit(6.0);
        let left = (m - a) / six * (fa + T::lit(4.0) * flm + fm);
        let right = (b - m) / six * (fm + T::lit(4.0) * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= T::lit(15.0) * tol {
            return left + right + delta / T::lit(15.0);
        }
        if depth == 0 || lm <= a || rm >= b || self.evals > MAX_EVALS {
            self.failed = true;
            return left + right + delta / T::lit(15.0);
        }
        self.recurse(a, m, fa, flm, fm, left, half * tol, depth - 1)
            + self.recurse(m, b, fm, frm, fb, right, half * tol, depth - 1)
    }
}

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The interval is first split into `panels` equal pieces so that
/// oscillatory integrands are not accepted on a coarse first guess. On
/// non-convergence the error carries the achieved estimate.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    rel_tol: T,
    panels: usize,
) -> Result<T> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    let panels = panels.max(1);
    let h = (b - a) / T::from_count(panels);
    let node = |i: usize| {
        if i == panels {
            b
        } else {
            a + h * T::from_count(i)
        }
    };

    // Coarse estimate fixes the absolute tolerance.
    let six = T::lit(6.0);
    let mut pieces = Vec::with_capacity(panels);
    let mut coarse = T::zero();
    for i in 0..panels {
        let (x0, x1) = (node(i), node(i + 1));
        let xm = T::lit(0.5) * (x0 + x1);
        let (f0, fm, f1) = (f(x0), f(xm), f(x1));
        let s = (x1 - x0) / six * (f0 + T::lit(4.0) * fm + f1);
        coarse = coarse + s.abs();
        pieces.push((x0, x1, f0, fm, f1, s));
    }
    let abs_tol = rel_tol * coarse.max(T::min_positive_value());
    let mut sim = Simpson {
        f: &f,
        abs_tol,
        evals: 0,
        failed: false,
    };
    let per_panel = sim.abs_tol / T::from_count(panels);
    let mut total = T::zero();
    for (x0, x1, f0, fm, f1, s) in pieces {
        total = total + sim.recurse(x0, x1, f0, fm, f1, s, per_panel, MAX_DEPTH);
    }
    if sim.failed || !total.is_finite() {
        return Err(Error::Numeric(format!(
            "adaptive Simpson did not reach relative tolerance {rel_tol:?}; estimate {total:?}"
        )));
    }
    Ok(total)
}
