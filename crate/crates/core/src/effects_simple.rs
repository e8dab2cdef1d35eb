//! Level shifts when the electron and nucleus carry magnetic moments but no
//! spin angular momentum.
//!
//! Every shift is computed by the flux chain (geometry → flux → first-order
//! energy) and then checked against its closed form.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::energy::{energy_shift_linear, ensure_agrees, EnergyShift};
use crate::error::{Error, Result};
use crate::flux::{dipole_focus_flux, uniform_field_flux};
use crate::half::Half;
use crate::orbits::{geometry, QuantumNumbers};
use crate::reference::NuclearSpecies;

/// Tilt of the nuclear moment assumed for the hydrogen ground state.
pub const GROUND_STATE_COS_BETA: f64 = 2.0 / 3.0;

/// The hydrogen ground-state preset: `n_r = n_φ = 1/2` and `cos β = 2/3`.
pub fn ground_state_preset() -> (QuantumNumbers, f64) {
    let qn = QuantumNumbers::orbit(Half::HALF, Half::HALF).expect("1/2 + 1/2 is a valid orbit");
    (qn, GROUND_STATE_COS_BETA)
}

fn check_cos(cos_beta: f64) -> Result<()> {
    if !(cos_beta.is_finite() && cos_beta.abs() <= 1.0) {
        return Err(Error::InvalidQuantumNumbers(format!("cos β = {cos_beta} outside [-1, 1]")));
    }
    Ok(())
}

/// Normal Zeeman shift `μ_B n_ψ B` with `n_ψ = n_φ cos α`.
pub fn zeeman_normal(
    qn: &QuantumNumbers,
    z: u32,
    b_field: f64,
    alpha: f64,
    consts: &PhysicalConstants,
) -> Result<EnergyShift> {
    let geom = geometry(qn, z, consts)?;
    let shift = energy_shift_linear(qn, z, uniform_field_flux(&geom, b_field, alpha), consts);
    let n_psi = qn.n_phi().value() * alpha.cos();
    ensure_agrees("normal Zeeman shift", consts.mu_b * n_psi * b_field, shift.value)?;
    Ok(shift)
}

/// Signed closed form of the focal-nucleus shift,
/// `-α² Z³ h R∞ c (μ_c/μ_B) cos β / (n³ n_φ²)`.
pub fn hyperfine_simplified_closed(
    n: u32,
    n_phi: f64,
    z: u32,
    mu_c: f64,
    cos_beta: f64,
    consts: &PhysicalConstants,
) -> f64 {
    let zf = f64::from(z);
    -consts.alpha * consts.alpha * zf.powi(3) * consts.h * consts.r_inf * consts.c * (mu_c / consts.mu_b)
        * cos_beta
        / (f64::from(n).powi(3) * n_phi * n_phi)
}

/// Shift from the nuclear moment at the orbit focus, tilted by `β`.
pub fn hyperfine_simplified(
    qn: &QuantumNumbers,
    species: &NuclearSpecies,
    cos_beta: f64,
    consts: &PhysicalConstants,
) -> Result<EnergyShift> {
    check_cos(cos_beta)?;
    let z = species.z;
    let mu_c = species.moment(consts);
    let geom = geometry(qn, z, consts)?;
    let flux = dipole_focus_flux(&geom, mu_c * cos_beta, consts)?;
    let shift = energy_shift_linear(qn, z, flux, consts);
    let closed = hyperfine_simplified_closed(qn.n(), qn.n_phi().value(), z, mu_c, cos_beta, consts);
    ensure_agrees("simplified hyperfine shift", closed, shift.value)?;
    Ok(shift)
}

/// Splitting between the two opposite nuclear orientations, `2 |ΔW|`, J.
pub fn hyperfine_simplified_interval(
    qn: &QuantumNumbers,
    species: &NuclearSpecies,
    cos_beta: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    Ok(2.0 * hyperfine_simplified(qn, species, cos_beta, consts)?.magnitude())
}

/// Magnitude of the focal-electron-moment shift,
/// `Z³ (μ0/4π) g_s μ_B² 2 cos β / (n³ a0³ n_φ²)`.
pub fn spin_orbit_simplified_closed(
    n: u32,
    n_phi: f64,
    z: u32,
    cos_beta: f64,
    consts: &PhysicalConstants,
) -> f64 {
    f64::from(z).powi(3) * consts.mu0 / (4.0 * PI) * consts.g_s * consts.mu_b * consts.mu_b * 2.0 * cos_beta
        / (f64::from(n).powi(3) * consts.a0.powi(3) * n_phi * n_phi)
}

/// Shift from the electron's own moment `g_s μ_B` placed at the focus.
///
/// The signed value follows the interior-flux convention and is therefore
/// the negative of [`spin_orbit_simplified_closed`] for `cos β > 0`.
pub fn spin_orbit_simplified(
    qn: &QuantumNumbers,
    z: u32,
    cos_beta: f64,
    consts: &PhysicalConstants,
) -> Result<EnergyShift> {
    check_cos(cos_beta)?;
    let geom = geometry(qn, z, consts)?;
    let flux = dipole_focus_flux(&geom, consts.g_s * consts.mu_b * cos_beta, consts)?;
    let shift = energy_shift_linear(qn, z, flux, consts);
    let closed = spin_orbit_simplified_closed(qn.n(), qn.n_phi().value(), z, cos_beta, consts);
    ensure_agrees("simplified spin-orbit shift", -closed, shift.value)?;
    Ok(shift)
}
