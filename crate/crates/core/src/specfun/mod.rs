//! Real Airy functions Ai, Bi and their derivatives.
//!
//! Three regimes:
//!
//! * `|z| <= SERIES_RADIUS`: Maclaurin series `Ai = c1 f - c2 g`,
//!   `Bi = sqrt(3) (c1 f + c2 g)` summed with compensation.
//! * `z > SERIES_RADIUS`: modified Bessel functions of order 1/3 and 2/3 at
//!   `xi = (2/3) z^{3/2}`, with `e^{-xi}` and `e^{+xi}` factored out so
//!   that Ai underflows and Bi overflows gracefully.
//! * `z < -SERIES_RADIUS`: ordinary Bessel functions of order 1/3 and 2/3.
//!
//! The crossover keeps `xi >= 2`, where the continued fractions in
//! [`bessel`] converge quickly to full precision.

mod bessel;
mod gamma;

pub use gamma::gamma;

use crate::error::{Error, Result};
use crate::real::{NeumaierSum, Real};

/// Largest accepted `|z|`. Bi is not representable in `f64` well before this.
pub const MAX_ARGUMENT: f64 = 110.0;

/// Radius of the power-series regime.
pub const SERIES_RADIUS: f64 = 2.5;

const MAX_SERIES_TERMS: usize = 400;

/// Ai, Ai', Bi, Bi' evaluated at one point `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryQuad<T> {
    pub z: T,
    pub ai: T,
    pub ai_prime: T,
    pub bi: T,
    pub bi_prime: T,
}

impl<T: Real> AiryQuad<T> {
    /// `pi (Ai Bi' - Ai' Bi) - 1`, identically zero for exact values.
    pub fn wronskian_defect(&self) -> T {
        T::PI() * (self.ai * self.bi_prime - self.ai_prime * self.bi) - T::one()
    }
}

/// The origin constants `c1 = Ai(0) = 3^{-2/3} / Γ(2/3)` and
/// `c2 = -Ai'(0) = 3^{-1/3} / Γ(1/3)`.
pub fn origin_constants<T: Real>() -> (T, T) {
    let three = T::lit(3.0);
    let third = T::one() / three;
    let c1 = three.powf(-(third + third)) / gamma(third + third);
    let c2 = three.powf(-third) / gamma(third);
    (c1, c2)
}

fn check_argument<T: Real>(z: T) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::domain(format!(
            "Airy argument must be finite, got {z}"
        )));
    }
    if z.abs() > T::lit(MAX_ARGUMENT) {
        return Err(Error::OverflowRange {
            z: z.as_f64(),
            limit: MAX_ARGUMENT,
        });
    }
    Ok(())
}

/// Evaluates all four real Airy values at `z`.
pub fn airy_eval<T: Real>(z: T) -> Result<AiryQuad<T>> {
    check_argument(z)?;
    if z.abs() <= T::lit(SERIES_RADIUS) {
        Ok(from_series(z, None))
    } else if z > T::zero() {
        positive_branch(z)
    } else {
        negative_branch(z)
    }
}

/// Partial-sum approximation keeping `order` terms of each of `f` and `g`
/// (`order = 1` means `f = 1`, `g = z`).
pub fn airy_series_truncated<T: Real>(z: T, order: usize) -> Result<AiryQuad<T>> {
    if order == 0 {
        return Err(Error::domain("series order must be at least 1"));
    }
    check_argument(z)?;
    Ok(from_series(z, Some(order)))
}

/// `(f, f', g, g')` from the Maclaurin series.
///
/// With `terms = None` the sums run until the next terms no longer change
/// the totals.
fn maclaurin_parts<T: Real>(z: T, terms: Option<usize>) -> (T, T, T, T) {
    let one = T::one();
    let z3 = z * z * z;
    let limit = terms.unwrap_or(MAX_SERIES_TERMS);

    // f = sum a_k z^{3k},   a_k = a_{k-1} / ((3k-1)(3k))
    // g = sum b_k z^{3k+1}, b_k = b_{k-1} / ((3k)(3k+1))
    let mut f = NeumaierSum::new();
    let mut fp = NeumaierSum::new();
    let mut g = NeumaierSum::new();
    let mut gp = NeumaierSum::new();
    let mut f_term = one; // a_k z^{3k}
    let mut g_term = z; // b_k z^{3k+1}
    let mut gp_term = one; // b_k (3k+1) z^{3k}
    f.add(f_term);
    g.add(g_term);
    gp.add(gp_term);

    for k in 1..limit {
        let three_k = T::from_count(3 * k);
        // f'_k = a_k 3k z^{3k-1} = a_{k-1} z^{3k-1} / (3k-1) = f_{k-1} z^2 / (3k-1)
        let fp_term = f_term * z * z / (three_k - one);
        f_term = fp_term * z / three_k;
        // g'_k = b_k (3k+1) z^{3k} = g_{k-1} z^2 / (3k)
        gp_term = g_term * z * z / three_k;
        g_term = gp_term * z / (three_k + one);

        f.add(f_term);
        fp.add(fp_term);
        g.add(g_term);
        gp.add(gp_term);

        if terms.is_none() {
            let tiny = |t: T, s: T| t.abs() <= T::epsilon() * T::lit(0.5) * s.abs();
            if tiny(f_term, f.value())
                && tiny(fp_term, fp.value())
                && tiny(g_term, g.value())
                && tiny(gp_term, gp.value())
            {
                break;
            }
        }
        if z3 == T::zero() {
            break;
        }
    }
    (f.value(), fp.value(), g.value(), gp.value())
}

fn from_series<T: Real>(z: T, terms: Option<usize>) -> AiryQuad<T> {
    let (c1, c2) = origin_constants::<T>();
    let sqrt3 = T::lit(3.0).sqrt();
    let (f, fp, g, gp) = maclaurin_parts(z, terms);
    AiryQuad {
        z,
        ai: c1 * f - c2 * g,
        ai_prime: c1 * fp - c2 * gp,
        bi: sqrt3 * (c1 * f + c2 * g),
        bi_prime: sqrt3 * (c1 * fp + c2 * gp),
    }
}

fn positive_branch<T: Real>(z: T) -> Result<AiryQuad<T>> {
    let third = T::one() / T::lit(3.0);
    let sqrt3 = T::lit(3.0).sqrt();
    let root = z.sqrt();
    let xi = T::lit(2.0) * third * z * root;
    let numeric = || Error::Numeric(format!("Bessel continued fraction failed at z = {z}"));
    let (i13, k13, _, _) = bessel::bessel_ik_scaled(xi, third).ok_or_else(numeric)?;
    let (i23, k23, _, _) = bessel::bessel_ik_scaled(xi, third + third).ok_or_else(numeric)?;

    let decay = (-xi).exp();
    let growth = xi.exp();
    let two_over_sqrt3 = T::lit(2.0) / sqrt3;
    let pi = T::PI();
    Ok(AiryQuad {
        z,
        ai: root / (sqrt3 * pi) * k13 * decay,
        ai_prime: -z / (sqrt3 * pi) * k23 * decay,
        bi: root * (k13 * decay / pi + two_over_sqrt3 * i13 * growth),
        bi_prime: z * (k23 * decay / pi + two_over_sqrt3 * i23 * growth),
    })
}

fn negative_branch<T: Real>(z: T) -> Result<AiryQuad<T>> {
    let third = T::one() / T::lit(3.0);
    let inv_sqrt3 = T::one() / T::lit(3.0).sqrt();
    let half = T::lit(0.5);
    let x = -z;
    let root = x.sqrt();
    let xi = T::lit(2.0) * third * x * root;
    let numeric = || Error::Numeric(format!("Bessel continued fraction failed at z = {z}"));
    let (j13, y13, _, _) = bessel::bessel_jy(xi, third).ok_or_else(numeric)?;
    let (j23, y23, _, _) = bessel::bessel_jy(xi, third + third).ok_or_else(numeric)?;
    Ok(AiryQuad {
        z,
        ai: half * root * (j13 - inv_sqrt3 * y13),
        ai_prime: half * x * (inv_sqrt3 * y23 + j23),
        bi: -half * root * (y13 + inv_sqrt3 * j13),
        bi_prime: half * x * (inv_sqrt3 * j23 - y23),
    })
}
