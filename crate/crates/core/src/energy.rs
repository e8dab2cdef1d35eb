//! Orbit energies with an initial magnetic flux.
//!
//! With the flux counted positive along the orbital angular momentum, the
//! electron charge turns the quantization condition into
//! `∮ p·ds = n h + e Φ`, so
//!
//! ```text
//! W(Φ) = -m_e Z² e⁴ / (8 ε0² (n h + e Φ)²)
//! ```
//!
//! and the first-order shift `dW/dΦ|₀ · Φ = 2 R∞ c e Z² Φ / n³` is positive
//! for a field parallel to the orbital angular momentum. Sublevel shifts are
//! measured from the zero-flux Bohr level of the same `n`.

use serde::{Deserialize, Serialize};

use crate::constants::{convert_energy, EnergyUnit, PhysicalConstants};
use crate::error::{Error, Result};
use crate::flux::FluxValue;
use crate::orbits::QuantumNumbers;

/// Above this value of `|eΦ/(n h)|` the linear shift is logged as unreliable.
pub const LINEAR_REGIME_LIMIT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftOrder {
    Exact,
    FirstOrder,
}

/// An energy perturbation of one state, J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyShift {
    pub value: f64,
    pub order: ShiftOrder,
    pub state: QuantumNumbers,
    pub flux: FluxValue,
}

impl EnergyShift {
    pub fn in_unit(&self, unit: EnergyUnit, consts: &PhysicalConstants) -> f64 {
        // value is finite by construction
        convert_energy(self.value, unit, consts).unwrap_or(f64::NAN)
    }

    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }

    /// `+1`, `-1`, or `0` for a vanishing shift.
    pub fn orientation_sign(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.value.signum()
        }
    }
}

/// Gross-structure energy `-Z² R∞ h c / n²`.
pub fn bohr_energy(n: u32, z: u32, consts: &PhysicalConstants) -> f64 {
    let zf = f64::from(z);
    let nf = f64::from(n);
    -zf * zf * consts.r_inf * consts.h * consts.c / (nf * nf)
}

pub fn energy_exact(qn: &QuantumNumbers, z: u32, flux: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !flux.is_finite() {
        return Err(Error::NonFinite("flux"));
    }
    let n = f64::from(qn.n());
    let nh = n * consts.h;
    if (consts.e * flux).abs() >= nh {
        return Err(Error::FluxTooLarge { ratio: flux / consts.flux_quantum, n });
    }
    let action = nh + consts.e * flux;
    let zf = f64::from(z);
    Ok(-consts.m_e * zf * zf * consts.e.powi(4) / (8.0 * consts.eps0 * consts.eps0 * action * action))
}

/// `dW/dΦ` at zero flux in the Rydberg form `2 R∞ c e Z² / n³`, J/Wb.
pub fn linear_coefficient(n: u32, z: u32, consts: &PhysicalConstants) -> f64 {
    let zf = f64::from(z);
    2.0 * consts.r_inf * consts.c * consts.e * zf * zf / f64::from(n).powi(3)
}

/// The same coefficient from the base constants, `m_e Z² e⁵ / (4 ε0² n³ h³)`.
pub fn linear_coefficient_from_bases(n: u32, z: u32, consts: &PhysicalConstants) -> f64 {
    let zf = f64::from(z);
    consts.m_e * zf * zf * consts.e.powi(5)
        / (4.0 * consts.eps0 * consts.eps0 * f64::from(n).powi(3) * consts.h.powi(3))
}

pub fn energy_shift_linear(
    qn: &QuantumNumbers,
    z: u32,
    flux: FluxValue,
    consts: &PhysicalConstants,
) -> EnergyShift {
    let n = qn.n();
    let ratio = consts.e * flux.total / (f64::from(n) * consts.h);
    if ratio.abs() > LINEAR_REGIME_LIMIT {
        log::warn!("eΦ/(nh) = {ratio:.3e}: first-order shift outside its linear regime");
    }
    EnergyShift {
        value: linear_coefficient(n, z, consts) * flux.total,
        order: ShiftOrder::FirstOrder,
        state: *qn,
        flux,
    }
}

/// Relative tolerance between a closed-form shift and its flux chain.
pub(crate) const CLOSED_FORM_TOL: f64 = 1e-9;

pub(crate) fn ensure_agrees(what: &'static str, closed: f64, chained: f64) -> Result<()> {
    let scale = closed.abs().max(chained.abs());
    if scale == 0.0 || (closed - chained).abs() <= CLOSED_FORM_TOL * scale {
        Ok(())
    } else {
        Err(Error::ClosedFormMismatch { what, closed, chained })
    }
}
