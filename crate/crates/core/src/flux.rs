//! Magnetic flux through an elliptic orbit.
//!
//! Dipole sources sit at the occupied focus. The field model is the one used
//! for the focal-point flux integral, `B(r) = (μ0/4π) μ_f / r³` evaluated in
//! the orbital plane, and the interior flux is the negative of the exterior
//! flux (closed field lines).

use std::cell::Cell;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::orbits::OrbitGeometry;
use crate::quadrature::{self, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FluxSource {
    Uniform,
    DipoleFocus,
    Composite,
}

/// A signed flux, Wb, split between the azimuthal and radial quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxValue {
    pub total: f64,
    pub phi_component: f64,
    pub r_component: f64,
    pub source: FluxSource,
}

impl FluxValue {
    /// Flux attributed entirely to the azimuthal quantum number.
    pub fn azimuthal(total: f64, source: FluxSource) -> Self {
        Self { total, phi_component: total, r_component: 0.0, source }
    }

    pub fn split(phi_component: f64, r_component: f64, source: FluxSource) -> Self {
        Self { total: phi_component + r_component, phi_component, r_component, source }
    }

    /// Spin-rule flux: equal azimuthal and radial shares.
    pub fn spin_rule(total: f64, source: FluxSource) -> Self {
        Self { total, phi_component: total / 2.0, r_component: total / 2.0, source }
    }

    pub fn zero() -> Self {
        Self::azimuthal(0.0, FluxSource::Composite)
    }

    pub fn combine(&self, other: &FluxValue) -> FluxValue {
        FluxValue::split(
            self.phi_component + other.phi_component,
            self.r_component + other.r_component,
            FluxSource::Composite,
        )
    }
}

/// Uniform field `B` at angle `alpha` to the orbit normal: `π a b B cos α`.
pub fn uniform_field_flux(geom: &OrbitGeometry, b_field: f64, alpha: f64) -> FluxValue {
    FluxValue::azimuthal(geom.area * b_field * alpha.cos(), FluxSource::Uniform)
}

/// Flux of the focal dipole outside the orbit but within its plane,
/// `μ0 μ_f / (2p)`.
pub fn exterior_dipole_flux(geom: &OrbitGeometry, mu_perp: f64, consts: &PhysicalConstants) -> Result<f64> {
    if geom.p <= 0.0 {
        return Err(Error::DegenerateOrbit("focal parameter is zero".into()));
    }
    Ok(consts.mu0 * mu_perp / (2.0 * geom.p))
}

/// Interior flux of a dipole `mu_perp` (component along the orbit normal)
/// at the focus: `-μ0 μ_f / (2p)`.
pub fn dipole_focus_flux(geom: &OrbitGeometry, mu_perp: f64, consts: &PhysicalConstants) -> Result<FluxValue> {
    let outside = exterior_dipole_flux(geom, mu_perp, consts)?;
    Ok(FluxValue::azimuthal(-outside, FluxSource::DipoleFocus))
}

/// Dipole of magnitude `mu` tilted by `beta` from the orbit normal.
pub fn tilted_dipole_flux(
    geom: &OrbitGeometry,
    mu: f64,
    beta: f64,
    consts: &PhysicalConstants,
) -> Result<FluxValue> {
    dipole_focus_flux(geom, mu * beta.cos(), consts)
}

/// Quadrature oracle for [`dipole_focus_flux`].
///
/// The radial integral `∫_{r(φ)}^∞ B r dr` is reduced to `(μ0/4π) μ / r(φ)`
/// per angle and the angular integral is done adaptively. Returns the
/// interior flux.
pub fn dipole_flux_oracle(
    geom: &OrbitGeometry,
    mu_perp: f64,
    consts: &PhysicalConstants,
    tol: f64,
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonFinite("tolerance must be positive"));
    }
    if geom.p <= 0.0 {
        return Err(Error::DegenerateOrbit("focal parameter is zero".into()));
    }
    let prefactor = consts.mu0 / (4.0 * PI) * mu_perp;
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    let angular = quadrature::integrate(|phi| 1.0 / geom.focal_radius(phi), 0.0, 2.0 * PI, Tolerance::relative(tol))?;
    Ok(-prefactor * angular.value)
}

/// Slow cross-check: integrates `B r` over the plane outside the orbit out
/// to a truncation radius whose tail contributes less than `tol/10` of the
/// flux. Returns the interior flux.
pub fn dipole_flux_cubature(
    geom: &OrbitGeometry,
    mu_perp: f64,
    consts: &PhysicalConstants,
    tol: f64,
) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonFinite("tolerance must be positive"));
    }
    if geom.p <= 0.0 {
        return Err(Error::DegenerateOrbit("focal parameter is zero".into()));
    }
    let prefactor = consts.mu0 / (4.0 * PI) * mu_perp;
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    // tail beyond R is 2π/R against a total of 2π/p
    let r_max = (10.0 * geom.p / tol).max(10.0 * geom.p / (1.0 - geom.eps));
    let log_max = r_max.ln();
    let inner_tol = Tolerance::relative(tol / 10.0);
    let radial = |phi: f64| -> Result<f64> {
        let log_min = geom.focal_radius(phi).ln();
        // B r dr with r = e^u: r^-2 · r du
        Ok(quadrature::integrate(|u: f64| (-u).exp(), log_min, log_max, inner_tol)?.value)
    };
    let failure = Cell::new(None);
    let outer = quadrature::integrate(
        |phi| match radial(phi) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        },
        0.0,
        2.0 * PI,
        Tolerance::relative(tol / 10.0),
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(-prefactor * outer?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    #[test]
    fn uniform_flux_examples() {
        let g = OrbitGeometry::from_axes(k().a0, k().a0).unwrap();
        assert!(uniform_field_flux(&g, 1.0, PI / 2.0).total.abs() < 1e-36);
        let aligned = uniform_field_flux(&g, 1.0, 0.0).total;
        assert_relative_eq!(aligned, PI * k().a0 * k().a0, max_relative = 1e-15);
        assert_relative_eq!(aligned, 8.797e-21, max_relative = 1e-3);
        assert_relative_eq!(aligned / k().flux_quantum, 2.13e-6, max_relative = 2e-3);
        assert_relative_eq!(uniform_field_flux(&g, 1.0, PI).total, -aligned, max_relative = 1e-15);
    }

    #[test]
    fn dipole_on_circle() {
        let r = 3.0 * k().a0;
        let g = OrbitGeometry::from_axes(r, r).unwrap();
        let mu = 1e-26;
        let v = dipole_focus_flux(&g, mu, &k()).unwrap();
        assert_relative_eq!(v.total, -k().mu0 * mu / (2.0 * r), max_relative = 1e-15);
        assert_eq!(dipole_focus_flux(&g, 0.0, &k()).unwrap().total, 0.0);
        assert_eq!(dipole_flux_oracle(&g, 0.0, &k(), 1e-8).unwrap(), 0.0);
        let oracle = dipole_flux_oracle(&g, mu, &k(), 1e-12).unwrap();
        assert_relative_eq!(oracle, v.total, max_relative = 1e-10);
    }

    #[test]
    fn proton_at_focus_of_n2_orbit() {
        // n = 2, n_phi = 1: p = a0
        let g = OrbitGeometry::from_axes(4.0 * k().a0, 2.0 * k().a0).unwrap();
        let mu_p = 1.4106e-26;
        let v = dipole_focus_flux(&g, mu_p, &k()).unwrap();
        assert_relative_eq!(v.total, -k().mu0 * mu_p / (2.0 * k().a0), max_relative = 1e-14);
        let oracle = dipole_flux_oracle(&g, mu_p, &k(), 1e-10).unwrap();
        assert_relative_eq!(oracle, v.total, max_relative = 1e-8);
    }

    #[test]
    fn high_eccentricity_oracle() {
        let g = OrbitGeometry::from_focal(k().a0, 0.9).unwrap();
        let closed = dipole_focus_flux(&g, 2e-26, &k()).unwrap().total;
        let oracle = dipole_flux_oracle(&g, 2e-26, &k(), 1e-9).unwrap();
        assert_relative_eq!(oracle, closed, max_relative = 1e-6);
    }

    #[test]
    fn truncated_cubature_agrees() {
        let g = OrbitGeometry::from_focal(k().a0, 0.6).unwrap();
        let closed = dipole_focus_flux(&g, 1e-26, &k()).unwrap().total;
        let cub = dipole_flux_cubature(&g, 1e-26, &k(), 1e-6).unwrap();
        assert_relative_eq!(cub, closed, max_relative = 1e-6);
    }

    #[test]
    fn tilt_and_closure() {
        let g = OrbitGeometry::from_axes(4.0 * k().a0, 2.0 * k().a0).unwrap();
        assert!(tilted_dipole_flux(&g, 1e-26, PI / 2.0, &k()).unwrap().total.abs() < 1e-30);
        assert_eq!(
            tilted_dipole_flux(&g, 1e-26, 0.0, &k()).unwrap(),
            dipole_focus_flux(&g, 1e-26, &k()).unwrap()
        );
        let inside = dipole_focus_flux(&g, 1e-26, &k()).unwrap().total;
        let outside = exterior_dipole_flux(&g, 1e-26, &k()).unwrap();
        assert_eq!(inside + outside, 0.0);
    }

    #[test]
    fn composite_adds_and_spin_rule_splits_evenly() {
        let a = FluxValue::azimuthal(2.0e-20, FluxSource::Uniform);
        let b = FluxValue::spin_rule(1.0e-20, FluxSource::Uniform);
        assert_eq!(b.phi_component, b.r_component);
        let c = a.combine(&b);
        assert_eq!(c.source, FluxSource::Composite);
        assert_relative_eq!(c.total, a.total + b.total, max_relative = 1e-15);
        assert_relative_eq!(c.total, c.phi_component + c.r_component, max_relative = 1e-15);
    }
}
