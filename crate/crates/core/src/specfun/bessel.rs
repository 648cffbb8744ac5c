//! Bessel functions of fractional order for arguments `x >= 2`.
//!
//! Both routines follow the Steed/Temme continued-fraction scheme: CF1 gives
//! the logarithmic derivative of the regular solution, CF2 fixes the
//! irregular one, and a Wronskian closes the system. Only orders
//! `0 <= nu < 3/2` are needed here, so the recurrence legs are at most one
//! step long.

use crate::real::Real;

const MAX_ITER: usize = 100_000;

/// Minimum argument for which the CF2 continued fractions are used.
pub const CF_MIN_ARGUMENT: f64 = 2.0;

fn fp_min<T: Real>() -> T {
    T::min_positive_value() / T::epsilon()
}

/// Exponentially scaled modified Bessel functions at `x >= 2`.
///
/// Returns `(e^{-x} I_nu, e^{x} K_nu, e^{-x} I'_nu, e^{x} K'_nu)`.
pub(crate) fn bessel_ik_scaled<T: Real>(x: T, nu: T) -> Option<(T, T, T, T)> {
    debug_assert!(x >= T::lit(CF_MIN_ARGUMENT) && nu >= T::zero());
    let eps = T::epsilon();
    let fpmin = fp_min::<T>();
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);

    let nl = (nu + half).floor().to_usize()?;
    let xmu = nu - T::from_count(nl);
    let xmu2 = xmu * xmu;
    let xi = one / x;
    let xi2 = two * xi;

    // CF1: I'_nu / I_nu.
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = T::zero();
    let mut c = h;
    let mut converged = false;
    for _ in 1..MAX_ITER {
        b = b + xi2;
        d = one / (b + d);
        c = b + one / c;
        let del = c * d;
        h = del * h;
        if (del - one).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    let mut ril = fpmin;
    let mut ripl = h * ril;
    let ril1 = ril;
    let rip1 = ripl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact = fact - xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    // CF2 (Steed) for K_mu, scaled by e^x.
    let mut b = two * (one + x);
    let mut d = one / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = T::zero();
    let mut q2 = one;
    let a1 = T::lit(0.25) - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    let mut converged = false;
    for i in 2..MAX_ITER {
        let fi = T::from_count(i);
        a = a - two * (fi - one);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = one / (b + a * d);
        delh = (b * d - one) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    h = a1 * h;

    let mut rkmu = (T::PI() / (two * x)).sqrt() / s;
    let mut rk1 = rkmu * (xmu + x + half - h) * xi;
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let ri = rimu * ril1 / ril;
    let rip = rimu * rip1 / ril;
    for i in 1..=nl {
        let rktemp = (xmu + T::from_count(i)) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    let rk = rkmu;
    let rkp = nu * xi * rkmu - rk1;
    Some((ri, rk, rip, rkp))
}

/// Ordinary Bessel functions at `x >= 2`: `(J_nu, Y_nu, J'_nu, Y'_nu)`.
pub(crate) fn bessel_jy<T: Real>(x: T, nu: T) -> Option<(T, T, T, T)> {
    debug_assert!(x >= T::lit(CF_MIN_ARGUMENT) && nu >= T::zero());
    let eps = T::epsilon();
    let fpmin = fp_min::<T>();
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);

    let nl = (nu - x + T::lit(1.5)).floor().max(T::zero()).to_usize()?;
    let xmu = nu - T::from_count(nl);
    let xmu2 = xmu * xmu;
    let xi = one / x;
    let xi2 = two * xi;
    let w = xi2 / T::PI();

    // CF1: J'_nu / J_nu, tracking the sign of J_nu.
    let mut negative = false;
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = T::zero();
    let mut c = h;
    let mut converged = false;
    for _ in 1..MAX_ITER {
        b = b + xi2;
        d = b - d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b - one / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = one / d;
        let del = c * d;
        h = del * h;
        if d < T::zero() {
            negative = !negative;
        }
        if (del - one).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    let mut rjl = if negative { -fpmin } else { fpmin };
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact = fact - xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == T::zero() {
        rjl = eps;
    }
    let f = rjpl / rjl;

    // CF2 (Steed): p + iq = (H'_mu / H_mu) in complex arithmetic.
    let mut a = T::lit(0.25) - xmu2;
    let mut p = -half * xi;
    let mut q = one;
    let br = two * x;
    let mut bi = two;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut converged = false;
    for i in 2..MAX_ITER {
        a = a + two * (T::from_count(i) - one);
        bi = bi + two;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < fpmin {
            dr = fpmin;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < fpmin {
            cr = fpmin;
        }
        den = dr * dr + di * di;
        dr = dr / den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - one).abs() + dli.abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;
    let fact = rjmu / rjl;
    let rj = rjl1 * fact;
    let rjp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + T::from_count(i)) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let ry = rymu;
    let ryp = nu * xi * rymu - ry1;
    Some((rj, ry, rjp, ryp))
}
