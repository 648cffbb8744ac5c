//! Physical and dimensionless parameterizations of the triangular well
//! `V(x) = (V0/L)(|x| - L)` for `|x| < L`, zero outside.
//!
//! Energies are measured in units of `hbar^2 / (2 m L^2)`; the
//! dimensionless depth is `v0` and the dimensionless energy `epsilon`.
//! Inside the well the Schrödinger equation becomes Airy's equation in
//! `z = z0 + v0^{1/3} |x| / L`, with `z0` tied to the energy by
//! `epsilon = -v0 (1 + z0 / v0^{1/3})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Physical parameters of the well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellSpec<T> {
    /// Well depth `V0 > 0`.
    pub depth: T,
    /// Half-range `L > 0`; the potential vanishes for `|x| >= L`.
    pub half_width: T,
    pub hbar: T,
    pub mass: T,
}

impl<T: Real> WellSpec<T> {
    /// Well with `hbar = m = 1`.
    pub fn new(depth: T, half_width: T) -> Result<Self> {
        Self::with_units(depth, half_width, T::one(), T::one())
    }

    pub fn with_units(depth: T, half_width: T, hbar: T, mass: T) -> Result<Self> {
        let spec = Self {
            depth,
            half_width,
            hbar,
            mass,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Well of unit width and unit constants with dimensionless depth `v0`.
    pub fn from_dimensionless(v0: T) -> Result<Self> {
        Self::new(v0 / T::lit(2.0), T::one())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("V0", self.depth),
            ("L", self.half_width),
            ("hbar", self.hbar),
            ("mass", self.mass),
        ] {
            if !(value.is_finite() && value > T::zero()) {
                return Err(Error::domain(format!(
                    "{name} must be positive and finite, got {value:?}"
                )));
            }
        }
        Ok(())
    }

    /// The energy unit `hbar^2 / (2 m L^2)`.
    pub fn energy_unit(&self) -> T {
        self.hbar * self.hbar / (T::lit(2.0) * self.mass * self.half_width * self.half_width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `+1` for even, `-1` for odd.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Parity::Even => T::one(),
            Parity::Odd => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::domain(format!("unknown parity {other:?}"))),
        }
    }
}

/// One bound state. `energy` is fixed at construction from `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState<T> {
    /// 0 for the ground state, ordered by increasing energy.
    pub index: usize,
    pub parity: Parity,
    pub z0: T,
    pub epsilon: T,
    pub energy: T,
}

impl<T: Real> BoundState<T> {
    pub fn new(index: usize, parity: Parity, z0: T, spec: &WellSpec<T>) -> Self {
        let v0 = nondimensionalize(spec);
        let epsilon = epsilon_of_z0(z0, v0);
        Self {
            index,
            parity,
            z0,
            epsilon,
            energy: energy_of_epsilon(epsilon, spec),
        }
    }
}

/// `V(x)`; `V(±L) = 0`.
pub fn potential_value<T: Real>(x: T, spec: &WellSpec<T>) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::domain(format!("position must be finite, got {x}")));
    }
    let ax = x.abs();
    let l = spec.half_width;
    Ok(if ax < l {
        spec.depth / l * (ax - l)
    } else {
        T::zero()
    })
}

/// Dimensionless depth `v0 = 2 m L^2 V0 / hbar^2`.
pub fn nondimensionalize<T: Real>(spec: &WellSpec<T>) -> T {
    spec.depth / spec.energy_unit()
}

/// `epsilon = -v0 (1 + z0 / v0^{1/3})`.
pub fn epsilon_of_z0<T: Real>(z0: T, v0: T) -> T {
    -v0 * (T::one() + z0 / v0.cbrt())
}

/// Inverse of [`epsilon_of_z0`]: `z0 = -v0^{1/3} (1 + epsilon / v0)`.
pub fn z0_of_epsilon<T: Real>(epsilon: T, v0: T) -> T {
    -v0.cbrt() * (T::one() + epsilon / v0)
}

/// Physical energy `E = epsilon hbar^2 / (2 m L^2)`.
pub fn energy_of_epsilon<T: Real>(epsilon: T, spec: &WellSpec<T>) -> T {
    epsilon * spec.energy_unit()
}

/// Closed form `E = -V0 [1 + z0 (hbar^2 / (2 m L^2 V0))^{1/3}]`.
pub fn energy_of_z0<T: Real>(z0: T, spec: &WellSpec<T>) -> T {
    let ratio = spec.energy_unit() / spec.depth;
    -spec.depth * (T::one() + z0 * ratio.cbrt())
}

/// Airy variable at position `x`: `z = z0 + v0^{1/3} |x| / L`.
///
/// Algebraically identical to `(v0^{1/3}/L) [|x| - L (1 + epsilon/v0)]`
/// and exact at `x = 0` and `|x| = L`.
pub fn z_of_x<T: Real>(x: T, z0: T, v0: T, half_width: T) -> T {
    z0 + v0.cbrt() * (x.abs() / half_width)
}
