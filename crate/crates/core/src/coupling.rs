//! Vector-area coupling of orbital and spin contributions.
//!
//! The orbital (`l`), spin (`s`) and combined (`j`) contributions each own a
//! vector area of magnitude `π n³ √(n_φ(n_φ+1)) a0²/Z²` with
//! `n_φ^l = l`, `n_φ^s = 1/2`, `n_φ^j = j = l ± 1/2`. Areas add linearly, so
//! projections onto `A_j` follow from squaring `A_l = A_j - A_s`.
//!
//! The spin contribution satisfies `n_φ^s = n_r^s` and `Φ_φ^s = Φ_r^s`,
//! which doubles its flux response relative to the orbital one.
//!
//! Field projections use the classical area (`n_φ cos α = n_ψ`), while the
//! projections between vector areas use the quantum magnitudes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::energy::{energy_shift_linear, ensure_agrees, EnergyShift};
use crate::error::{Error, Result};
use crate::flux::{FluxSource, FluxValue};
use crate::half::Half;
use crate::orbits::QuantumNumbers;
use crate::reference::{hyperfine_a_with_denominator, standard_lande, NuclearSpecies};
use crate::spectroscopy::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Orbital,
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorArea {
    pub magnitude: f64,
    pub n_phi: Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorAreaTriple {
    pub orbital: VectorArea,
    pub spin: VectorArea,
    pub total: VectorArea,
    /// `π n³ a0²/Z²`, the area scale shared by all three.
    pub unit: f64,
}

fn magnitude(unit: f64, n_phi: Half) -> VectorArea {
    VectorArea { magnitude: unit * n_phi.casimir().sqrt(), n_phi }
}

impl VectorAreaTriple {
    /// Triple in units of `π n³ a0²/Z²`.
    pub fn normalized(l: u32, j: Half) -> Result<Self> {
        Self::with_unit(l, j, 1.0)
    }

    pub fn new(n: u32, l: u32, j: Half, z: u32, consts: &PhysicalConstants) -> Result<Self> {
        Level::new(n, l, j)?;
        if z == 0 {
            return Err(Error::InvalidQuantumNumbers("Z must be at least 1".into()));
        }
        let zf = f64::from(z);
        Self::with_unit(l, j, PI * f64::from(n).powi(3) * consts.a0 * consts.a0 / (zf * zf))
    }

    pub fn for_state(qn: &QuantumNumbers, z: u32, consts: &PhysicalConstants) -> Result<Self> {
        Self::new(qn.n(), qn.l()?, qn.j()?, z, consts)
    }

    fn with_unit(l: u32, j: Half, unit: f64) -> Result<Self> {
        let l_h = Half::integer(l as i32);
        if !((j - l_h).abs() == Half::HALF && j > Half::ZERO) {
            return Err(Error::InvalidQuantumNumbers(format!("j = {j} is not l ± 1/2 for l = {l}")));
        }
        Ok(Self {
            orbital: magnitude(unit, l_h),
            spin: magnitude(unit, Half::HALF),
            total: magnitude(unit, j),
            unit,
        })
    }
}

/// Projection of `A_l` or `A_s` onto the direction of `A_j`.
pub fn project_area(component: Component, triple: &VectorAreaTriple) -> Result<f64> {
    let aj = triple.total.magnitude;
    if aj == 0.0 {
        return Err(Error::DegenerateOrbit("total vector area vanishes".into()));
    }
    let (al2, as2) = (triple.orbital.magnitude.powi(2), triple.spin.magnitude.powi(2));
    Ok(match component {
        Component::Orbital => 0.5 * (aj * aj - as2 + al2) / aj,
        Component::Spin => 0.5 * (aj * aj + as2 - al2) / aj,
    })
}

/// `(2 A_s + A_l)·Â_j`, the area seen by a weak field.
pub fn effective_zeeman_area(triple: &VectorAreaTriple) -> Result<f64> {
    Ok(2.0 * project_area(Component::Spin, triple)? + project_area(Component::Orbital, triple)?)
}

/// Landé factor from the vector-area projections, checked against the
/// closed form.
pub fn lande_g(l: u32, s: Half, j: Half) -> Result<f64> {
    if s != Half::HALF {
        return Err(Error::InvalidQuantumNumbers(format!("spin contribution must be 1/2, got {s}")));
    }
    let triple = VectorAreaTriple::normalized(l, j)?;
    let g = effective_zeeman_area(&triple)? / triple.total.magnitude;
    ensure_agrees("Landé factor", standard_lande(l, s, j)?, g)?;
    Ok(g)
}

/// Projection of the field onto `Â_j`: `m_j B / √(j(j+1))`.
pub fn field_projection(m_j: Half, j: Half, b_field: f64) -> f64 {
    m_j.value() * b_field / j.casimir().sqrt()
}

/// Weak-field (anomalous) Zeeman shift `μ_B g_j m_j B`.
pub fn zeeman_anomalous(qn: &QuantumNumbers, z: u32, b_field: f64, consts: &PhysicalConstants) -> Result<EnergyShift> {
    let triple = VectorAreaTriple::for_state(qn, z, consts)?;
    let (l, j, m_j) = (qn.l()?, qn.j()?, qn.m_j()?);
    let b_proj = field_projection(m_j, j, b_field);
    let spin = FluxValue::spin_rule(
        2.0 * project_area(Component::Spin, &triple)? * b_proj,
        FluxSource::Uniform,
    );
    let orbital = FluxValue::azimuthal(project_area(Component::Orbital, &triple)? * b_proj, FluxSource::Uniform);
    let shift = energy_shift_linear(qn, z, spin.combine(&orbital), consts);
    let g = standard_lande(l, qn.s(), j)?;
    ensure_agrees("anomalous Zeeman shift", consts.mu_b * g * m_j.value() * b_field, shift.value)?;
    Ok(shift)
}

/// Strong-field (Paschen-Back) shift `μ_B (2 m_s + m_l) B`.
pub fn paschen_back(qn: &QuantumNumbers, z: u32, b_field: f64, consts: &PhysicalConstants) -> Result<EnergyShift> {
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be at least 1".into()));
    }
    let (m_l, m_s) = (qn.m_l()?, qn.m_s()?);
    let zf = f64::from(z);
    let unit = f64::from(qn.n()).powi(3) * PI * consts.a0 * consts.a0 / (zf * zf);
    let spin = FluxValue::spin_rule(2.0 * m_s.value() * unit * b_field, FluxSource::Uniform);
    let orbital = FluxValue::azimuthal(f64::from(m_l) * unit * b_field, FluxSource::Uniform);
    let shift = energy_shift_linear(qn, z, spin.combine(&orbital), consts);
    let closed = consts.mu_b * (2.0 * m_s.value() + f64::from(m_l)) * b_field;
    ensure_agrees("Paschen-Back shift", closed, shift.value)?;
    Ok(shift)
}

/// Sign in the `(2l ± 1)` denominator, tied to `j = l ± 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn for_level(l: u32, j: Half) -> Result<Self> {
        let l2 = 2 * l as i32;
        match j.twice() - l2 {
            1 => Ok(Branch::Plus),
            -1 if l > 0 => Ok(Branch::Minus),
            _ => Err(Error::InvalidQuantumNumbers(format!("j = {j} is not l ± 1/2 for l = {l}"))),
        }
    }

    /// `2l ± 1`.
    pub fn orbital_factor(self, l: u32) -> f64 {
        match self {
            Branch::Plus => f64::from(2 * l + 1),
            Branch::Minus => f64::from(2 * l) - 1.0,
        }
    }
}

/// Allowed total angular momenta `F = |I - j|, …, I + j`.
pub fn allowed_f(j: Half, spin: Half) -> Vec<Half> {
    (spin - j).abs().range_to(spin + j).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperfineLevel {
    pub f: Half,
    /// Hyperfine constant `A_nlj`, J.
    pub a_constant: f64,
    pub branch: Branch,
    /// Additional flux through the orbit from the nuclear dipole.
    pub flux: FluxValue,
    pub shift: EnergyShift,
}

/// Hyperfine constant `A_nlj` with the `(2l ± 1)` denominator, J.
pub fn hyperfine_a(qn: &QuantumNumbers, species: &NuclearSpecies, consts: &PhysicalConstants) -> Result<(f64, Branch)> {
    if species.spin == Half::ZERO {
        return Err(Error::NoHyperfineStructure);
    }
    let (l, j) = (qn.l()?, qn.j()?);
    let branch = Branch::for_level(l, j)?;
    Ok((hyperfine_a_with_denominator(qn.n(), j, branch.orbital_factor(l), species, consts), branch))
}

/// Hyperfine shift of level `F`: `(A/2)[F(F+1) - I(I+1) - j(j+1)]`.
///
/// The flux is built from the rule-d projection `g_s ħ/(2l ± 1)` and the
/// nuclear moment projected on `j`, then converted to energy linearly.
pub fn hyperfine_full(
    qn: &QuantumNumbers,
    species: &NuclearSpecies,
    f: Half,
    consts: &PhysicalConstants,
) -> Result<HyperfineLevel> {
    let (a_constant, branch) = hyperfine_a(qn, species, consts)?;
    let (l, j) = (qn.l()?, qn.j()?);
    let spin = species.spin;
    if !allowed_f(j, spin).contains(&f) {
        return Err(Error::InvalidQuantumNumbers(format!("F = {f} cannot couple I = {spin} and j = {j}")));
    }
    let bracket = f.casimir() - spin.casimir() - j.casimir();
    let z = f64::from(species.z);
    let rule_d = consts.g_s * consts.hbar / branch.orbital_factor(l);
    let j_dot_i = consts.hbar * consts.hbar / 2.0 * bracket;
    let mu_along_j = species.g_i * consts.mu_k * j_dot_i / (j.casimir().sqrt() * consts.hbar * consts.hbar);
    // (μ0/2)(Z/a0) · (Â_j·j)/(n_φ^j)² · (j·μ_I)/|j|²
    let flux_total = consts.mu0 / 2.0 * z / consts.a0 * rule_d * mu_along_j / (j.casimir().sqrt() * consts.hbar);
    let flux = FluxValue::azimuthal(flux_total, FluxSource::DipoleFocus);
    let shift = energy_shift_linear(qn, species.z, flux, consts);
    ensure_agrees("hyperfine shift", a_constant / 2.0 * bracket, shift.value)?;
    Ok(HyperfineLevel { f, a_constant, branch, flux, shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::Registry;
    use approx::assert_relative_eq;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    fn level(s: &str) -> QuantumNumbers {
        QuantumNumbers::from_level(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn s_state_orbital_projection_vanishes() {
        let t = VectorAreaTriple::normalized(0, Half::HALF).unwrap();
        assert_eq!(project_area(Component::Orbital, &t).unwrap(), 0.0);
        assert_relative_eq!(project_area(Component::Spin, &t).unwrap(), t.total.magnitude, max_relative = 1e-15);
    }

    #[test]
    fn p32_projections() {
        // |A_l|² = 2, |A_s|² = 3/4, |A_j|² = 15/4 in units of (π n³ a0²/Z²)²
        let t = VectorAreaTriple::normalized(1, Half::from_twice(3)).unwrap();
        let aj = 15f64.sqrt() / 2.0;
        assert_relative_eq!(project_area(Component::Orbital, &t).unwrap(), 0.5 * (15.0 / 4.0 - 0.75 + 2.0) / aj, max_relative = 1e-15);
        assert_relative_eq!(project_area(Component::Spin, &t).unwrap(), 0.5 * (15.0 / 4.0 + 0.75 - 2.0) / aj, max_relative = 1e-15);
        let sum = project_area(Component::Orbital, &t).unwrap() + project_area(Component::Spin, &t).unwrap();
        assert_relative_eq!(sum, aj, max_relative = 1e-15);
    }

    #[test]
    fn swapping_roles_swaps_projections() {
        let t = VectorAreaTriple::normalized(1, Half::from_twice(3)).unwrap();
        let swapped = VectorAreaTriple { orbital: t.spin, spin: t.orbital, ..t };
        assert_relative_eq!(
            project_area(Component::Orbital, &swapped).unwrap(),
            project_area(Component::Spin, &t).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn lande_spot_values() {
        let h = Half::HALF;
        assert_relative_eq!(lande_g(0, h, h).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(lande_g(1, h, Half::from_twice(3)).unwrap(), 4.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(lande_g(1, h, h).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        assert!(lande_g(1, h, Half::from_twice(5)).is_err());
        assert!(lande_g(0, h, -h).is_err());
    }

    #[test]
    fn anomalous_zeeman_examples() {
        let s = zeeman_anomalous(&level("1s1/2").with_m_j(Half::HALF).unwrap(), 1, 1.0, &k()).unwrap();
        assert_relative_eq!(s.value, k().mu_b, max_relative = 1e-12);
        let s = zeeman_anomalous(&level("2p3/2").with_m_j(Half::from_twice(3)).unwrap(), 1, 0.5, &k()).unwrap();
        assert_relative_eq!(s.value, k().mu_b, max_relative = 1e-12);
        assert!(matches!(
            zeeman_anomalous(&level("2p3/2"), 1, 0.5, &k()),
            Err(Error::MissingQuantumNumber("m_j"))
        ));
    }

    #[test]
    fn paschen_back_examples() {
        let p = level("2p3/2");
        let s = paschen_back(&p.with_decoupled(0, Half::HALF).unwrap(), 1, 1.0, &k()).unwrap();
        assert_relative_eq!(s.value, k().mu_b, max_relative = 1e-12);
        let s = paschen_back(&p.with_decoupled(1, -Half::HALF).unwrap(), 1, 3.7, &k()).unwrap();
        assert!(s.value.abs() < 1e-35);
        let s = paschen_back(&p.with_decoupled(1, Half::HALF).unwrap(), 1, 2.0, &k()).unwrap();
        assert_relative_eq!(s.value, 4.0 * k().mu_b, max_relative = 1e-12);
        // spin flux obeys the spin rule
        assert!(s.flux.phi_component != s.flux.r_component);
    }

    #[test]
    fn hydrogen_ground_hyperfine() {
        let reg = Registry::builtin();
        let h1 = reg.species("H-1").unwrap();
        let qn = level("1s1/2");
        let lo = hyperfine_full(&qn, h1, Half::ZERO, &k()).unwrap();
        let hi = hyperfine_full(&qn, h1, Half::ONE, &k()).unwrap();
        assert_eq!(hi.branch, Branch::Plus);
        let interval_mhz = (hi.shift.value - lo.shift.value) / k().h / 1e6;
        assert_relative_eq!(interval_mhz, hi.a_constant / k().h / 1e6, max_relative = 1e-12);
        assert!((interval_mhz / 1420.4057517667 - 1.0).abs() < 0.01);
        assert!(hyperfine_full(&qn, h1, Half::from_twice(3), &k()).is_err());
        let he4 = reg.species("He-4").unwrap();
        assert_eq!(hyperfine_full(&qn, he4, Half::ZERO, &k()).unwrap_err(), Error::NoHyperfineStructure);
    }

    #[test]
    fn branch_mapping() {
        assert_eq!(Branch::for_level(0, Half::HALF).unwrap(), Branch::Plus);
        assert_eq!(Branch::for_level(1, Half::HALF).unwrap(), Branch::Minus);
        assert!(Branch::for_level(0, -Half::HALF).is_err());
        assert_eq!(Branch::Minus.orbital_factor(1), 1.0);
        assert_eq!(allowed_f(Half::from_twice(3), Half::ONE).len(), 3);
    }
}
