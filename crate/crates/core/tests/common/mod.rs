//! Test-only oracles, independent of the library's evaluation paths.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;

// Ai(0) and -Ai'(0) to 45 digits from an arbitrary-precision Γ evaluation.
const C1_DIGITS: &str = "0.355028053887817239260063186004183176397979174";
const C2_DIGITS: &str = "0.258819403792806798405183560189203963479091138";
// sqrt(3) to 45 digits.
const SQRT3_DIGITS: &str = "1.73205080756887729352744634150587236694280525";

/// Fixed-point scale: values are carried as integers times 10^-DIGITS.
const DIGITS: usize = 80;

fn scale() -> BigInt {
    num_traits::pow(BigInt::from(10), DIGITS)
}

fn fixed(s: &str) -> BigInt {
    let (int, frac) = s.split_once('.').unwrap();
    let mut digits = format!("{int}{frac}");
    digits.extend(std::iter::repeat_n('0', DIGITS - frac.len()));
    digits.parse().unwrap()
}

fn to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    let (sign, digits) = match s.strip_prefix('-') {
        Some(d) => ("-", d),
        None => ("", s.as_str()),
    };
    let exp = digits.len() as i64 - DIGITS as i64;
    format!("{sign}0.{digits}e{exp}").parse().unwrap()
}

/// Values of Ai, Ai', Bi, Bi' at a rational point from `terms` terms of
/// each Maclaurin series, carried in 80-digit fixed point and rounded to
/// `f64` only at the end.
#[derive(Debug, Clone, Copy)]
pub struct SeriesOracle {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

pub fn airy_series_oracle(num: i64, den: i64, terms: usize) -> SeriesOracle {
    let p = BigInt::from(num);
    let q = BigInt::from(den);
    let one = scale();
    let p3 = &p * &p * &p;
    let q3 = &q * &q * &q;

    // t_f = a_k z^{3k},  t_g = b_k z^{3k+1}
    let mut t_f = one.clone();
    let mut t_g = &one * &p / &q;
    let mut f = t_f.clone();
    let mut g = t_g.clone();
    let mut fp = BigInt::zero();
    let mut gp = one.clone();
    for k in 1..terms {
        let k3 = BigInt::from(3 * k as i64);
        // a_k 3k z^{3k-1} = t_f(k-1) z^2 / (3k-1)
        let fp_term = &t_f * &p * &p / (&q * &q * (&k3 - 1));
        t_f = &t_f * &p3 / (&q3 * (&k3 - 1) * &k3);
        // b_k (3k+1) z^{3k} = t_g(k-1) z^2 / (3k)
        let gp_term = &t_g * &p * &p / (&q * &q * &k3);
        t_g = &t_g * &p3 / (&q3 * &k3 * (&k3 + 1));
        f += &t_f;
        g += &t_g;
        fp += fp_term;
        gp += gp_term;
    }
    let c1 = fixed(C1_DIGITS);
    let c2 = fixed(C2_DIGITS);
    let s3 = fixed(SQRT3_DIGITS);
    let mul = |a: &BigInt, b: &BigInt| a * b / &one;
    let ai = mul(&c1, &f) - mul(&c2, &g);
    let aip = mul(&c1, &fp) - mul(&c2, &gp);
    let bi = mul(&s3, &(mul(&c1, &f) + mul(&c2, &g)));
    let bip = mul(&s3, &(mul(&c1, &fp) + mul(&c2, &gp)));
    SeriesOracle {
        ai: to_f64(&ai),
        ai_prime: to_f64(&aip),
        bi: to_f64(&bi),
        bi_prime: to_f64(&bip),
    }
}

/// Composite Gauss-Legendre quadrature (5 nodes per panel).
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_47,
        0.478_628_670_499_366_47,
        0.236_926_885_056_189_08,
        0.236_926_885_056_189_08,
    ];
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut s = 0.0;
        for (x, w) in X.iter().zip(W.iter()) {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}
