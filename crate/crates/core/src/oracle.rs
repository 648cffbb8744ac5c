//! Finite-difference cross-check of the spectrum.
//!
//! The Hamiltonian is discretized with the three-point Laplacian on a
//! uniform grid over `[-X, X]` with Dirichlet walls, and its negative
//! eigenvalues are bracketed by Sturm-sequence bisection. Nothing here
//! touches the Airy functions or the matching conditions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{potential_value, BoundState, Parity, WellSpec};
use crate::real::Real;

pub const DEFAULT_POINTS: usize = 16_001;
pub const DEFAULT_EPS_CUT: f64 = 0.5;
/// Largest accepted `|epsilon_airy - epsilon_fd|`.
pub const MATCH_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalHamiltonian<T> {
    pub diagonal: Vec<T>,
    /// Sub- and super-diagonal, one shorter than `diagonal`.
    pub off_diagonal: Vec<T>,
    pub grid_step: T,
    /// The grid covers `[-half_width, half_width]`.
    pub half_width: T,
    pub spec: WellSpec<T>,
}

impl<T: Real> TridiagonalHamiltonian<T> {
    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Position of grid point `i` (0-based).
    pub fn position(&self, i: usize) -> T {
        grid_position(self.half_width, self.len(), i)
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                T::zero()
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }
}

// x_i = X (2(i+1) - (n+1)) / (n+1): exactly symmetric, x = 0 at the
// middle point for odd n.
fn grid_position<T: Real>(half_width: T, n: usize, i: usize) -> T {
    let num = T::from_count(2 * (i + 1)) - T::from_count(n + 1);
    half_width * num / T::from_count(n + 1)
}

/// Discretizes `-hbar^2/(2m) psi'' + V psi` on `n_points` interior points.
pub fn build_hamiltonian<T: Real>(
    spec: &WellSpec<T>,
    half_width: T,
    n_points: usize,
) -> Result<TridiagonalHamiltonian<T>> {
    spec.validate()?;
    if !(half_width.is_finite() && half_width > spec.half_width) {
        return Err(Error::domain(format!(
            "box half-width {half_width} must exceed the well half-width {}",
            spec.half_width
        )));
    }
    if n_points < 3 || n_points.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "n_points must be odd and at least 3, got {n_points}"
        )));
    }
    let h = T::lit(2.0) * half_width / T::from_count(n_points + 1);
    let t = spec.hbar * spec.hbar / (T::lit(2.0) * spec.mass * h * h);
    let diagonal = (0..n_points)
        .map(|i| potential_value(grid_position(half_width, n_points, i), spec).map(|v| t + t + v))
        .collect::<Result<Vec<_>>>()?;
    Ok(TridiagonalHamiltonian {
        diagonal,
        off_diagonal: vec![-t; n_points - 1],
        grid_step: h,
        half_width,
        spec: *spec,
    })
}

/// Number of eigenvalues strictly below `shift`: the count of negative
/// pivots in the LDL^T factorization of `H - shift`.
pub fn sturm_count<T: Real>(diagonal: &[T], off_diagonal: &[T], shift: T) -> usize {
    let Some(&first) = diagonal.first() else {
        return 0;
    };
    let max_e2 = off_diagonal.iter().fold(T::one(), |m, &e| m.max(e * e));
    let pivmin = T::min_positive_value() * max_e2;
    let mut count = 0;
    let mut q = first - shift;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < T::zero() {
        count += 1;
    }
    for i in 1..diagonal.len() {
        let e = off_diagonal[i - 1];
        q = (diagonal[i] - shift) - e * e / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// All eigenvalues below `threshold`, ascending, each bracketed to `tol`.
pub fn eigenvalues_below<T: Real>(
    tri: &TridiagonalHamiltonian<T>,
    threshold: T,
    tol: T,
) -> Result<Vec<T>> {
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol:?}"
        )));
    }
    let d = &tri.diagonal;
    let e = &tri.off_diagonal;
    let count = sturm_count(d, e, threshold);
    let (lo, _) = tri.gershgorin();
    let lo = lo - T::one();
    let half = T::lit(0.5);
    let values = (0..count)
        .into_par_iter()
        .map(|k| {
            // smallest x with count(x) > k
            let (mut a, mut b) = (lo, threshold);
            while b - a > tol {
                let mid = a + half * (b - a);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(d, e, mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            a + half * (b - a)
        })
        .collect();
    Ok(values)
}

/// Eigenvector for an eigenvalue estimate, by inverse iteration.
pub fn eigenvector<T: Real>(tri: &TridiagonalHamiltonian<T>, eigenvalue: T) -> Vec<T> {
    let n = tri.len();
    let mut v = vec![T::one(); n];
    let tiny = T::epsilon() * tri.off_diagonal.first().map_or(T::one(), |x| x.abs());
    for _ in 0..3 {
        // Thomas algorithm on (H - lambda I) y = v.
        let mut c = vec![T::zero(); n];
        let mut y = vec![T::zero(); n];
        let mut pivot = tri.diagonal[0] - eigenvalue;
        if pivot.abs() < tiny {
            pivot = tiny;
        }
        y[0] = v[0] / pivot;
        for i in 1..n {
            c[i - 1] = tri.off_diagonal[i - 1] / pivot;
            pivot = tri.diagonal[i] - eigenvalue - tri.off_diagonal[i - 1] * c[i - 1];
            if pivot.abs() < tiny {
                pivot = tiny;
            }
            y[i] = (v[i] - tri.off_diagonal[i - 1] * y[i - 1]) / pivot;
        }
        for i in (0..n - 1).rev() {
            y[i] = y[i] - c[i] * y[i + 1];
        }
        let norm = y.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
        v = y.into_iter().map(|x| x / norm).collect();
    }
    v
}

/// Oracle eigenvalue paired with one solver state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateComparison {
    pub index: usize,
    pub parity: Parity,
    pub epsilon_airy: f64,
    /// Richardson-extrapolated finite-difference value.
    pub epsilon_fd: f64,
    pub epsilon_fine: f64,
    pub epsilon_coarse: f64,
    pub difference: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub eps_cut: f64,
    pub box_half_width: f64,
    pub fine_points: usize,
    pub coarse_points: usize,
    pub compared: Vec<StateComparison>,
    /// Solver states above the cut, reported but not compared.
    pub excluded: Vec<BoundState<f64>>,
    pub solver_count: usize,
    /// Finite-difference eigenvalues below zero on the fine grid.
    pub fd_count: usize,
    pub max_difference: f64,
    pub passed: bool,
}

/// Compares solver energies with Richardson-extrapolated finite-difference
/// eigenvalues for every state with `|epsilon| >= eps_cut`.
///
/// The box is `X = L (1 + 30 / sqrt(eps_cut))`; the coarse grid has
/// `(n_points - 1) / 2` points rounded up to odd, and the extrapolation
/// uses the exact ratio of the two grid steps.
pub fn compare_spectra<T: Real>(
    spec: &WellSpec<T>,
    airy_states: &[BoundState<T>],
    eps_cut: T,
    n_points: usize,
) -> Result<OracleReport> {
    if !(eps_cut > T::zero() && eps_cut.is_finite()) {
        return Err(Error::domain(format!(
            "eps_cut must be positive, got {eps_cut:?}"
        )));
    }
    let box_half = spec.half_width * (T::one() + T::lit(30.0) / eps_cut.sqrt());
    let coarse_points = ((n_points - 1) / 2) | 1;
    let unit = spec.energy_unit();
    let tol = T::lit(1e-12) * spec.depth.max(unit);

    let fine = build_hamiltonian(spec, box_half, n_points)?;
    let coarse = build_hamiltonian(spec, box_half, coarse_points)?;
    let e_fine = eigenvalues_below(&fine, T::zero(), tol)?;
    let e_coarse = eigenvalues_below(&coarse, T::zero(), tol)?;

    let r = coarse.grid_step / fine.grid_step;
    let r2 = r * r;
    let cut = -eps_cut * unit;
    let fd: Vec<(T, T, T)> = e_fine
        .iter()
        .zip(e_coarse.iter())
        .map(|(&f, &c)| ((r2 * f - c) / (r2 - T::one()), f, c))
        .filter(|(x, _, _)| *x <= cut)
        .collect();

    let (inside, outside): (Vec<&BoundState<T>>, Vec<&BoundState<T>>) =
        airy_states.iter().partition(|s| s.epsilon.abs() >= eps_cut);
    if inside.len() != fd.len() {
        return Err(Error::Mismatch(format!(
            "{} solver states but {} finite-difference eigenvalues with |epsilon| >= {eps_cut}",
            inside.len(),
            fd.len()
        )));
    }
    let compared: Vec<StateComparison> = inside
        .iter()
        .zip(fd.iter())
        .map(|(s, &(x, f, c))| {
            let epsilon_fd: f64 = (x / unit).as_f64();
            let difference: f64 = (s.epsilon.as_f64() - epsilon_fd).abs();
            StateComparison {
                index: s.index,
                parity: s.parity,
                epsilon_airy: s.epsilon.as_f64(),
                epsilon_fd,
                epsilon_fine: (f / unit).as_f64(),
                epsilon_coarse: (c / unit).as_f64(),
                difference,
                within_tolerance: difference <= MATCH_TOL,
            }
        })
        .collect();
    let max_difference = compared.iter().map(|c| c.difference).fold(0.0, f64::max);
    let passed = compared.iter().all(|c| c.within_tolerance);
    Ok(OracleReport {
        eps_cut: eps_cut.as_f64(),
        box_half_width: box_half.as_f64(),
        fine_points: n_points,
        coarse_points,
        compared,
        excluded: outside.into_iter().map(to_f64_state).collect(),
        solver_count: airy_states.len(),
        fd_count: e_fine.len(),
        max_difference,
        passed,
    })
}

fn to_f64_state<T: Real>(s: &BoundState<T>) -> BoundState<f64> {
    BoundState {
        index: s.index,
        parity: s.parity,
        z0: s.z0.as_f64(),
        epsilon: s.epsilon.as_f64(),
        energy: s.energy.as_f64(),
    }
}
