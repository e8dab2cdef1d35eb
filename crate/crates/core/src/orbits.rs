//! Sommerfeld quantum numbers and elliptic orbit geometry.
//!
//! Two area notions are used downstream:
//! - the classical area `π a b = π n³ n_φ a0²/Z²` ([`OrbitGeometry::area`]),
//!   consumed by uniform-field fluxes;
//! - the vector-area magnitude `π n³ √(n_φ(n_φ+1)) a0²/Z²`
//!   ([`vector_area_magnitude`]), consumed by the coupling projections.
//!
//! Orbit normals point along the orbital angular momentum; a flux is positive
//! when the field component threading the orbit is parallel to that normal.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::energy;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::quadrature::{self, Tolerance};
use crate::spectroscopy::{Level, MAX_N};

/// Radial, azimuthal and orientation quantum numbers plus an optional
/// spin/orbit decomposition.
///
/// Both numbering conventions are accepted: integer Sommerfeld numbers
/// (`n_φ = 1..n`, `n_r = n - n_φ ≥ 0`) and the half-step convention in which
/// `n_r` and `n_φ` start at 1/2. In every case `n = n_r + n_φ` is a positive
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n_r: Half,
    n_phi: Half,
    n_psi: Option<Half>,
    l: Option<u32>,
    j: Option<Half>,
    m_j: Option<Half>,
    m_l: Option<i32>,
    m_s: Option<Half>,
}

impl QuantumNumbers {
    pub fn orbit(n_r: Half, n_phi: Half) -> Result<Self> {
        if n_phi < Half::HALF {
            return Err(Error::InvalidQuantumNumbers(format!("n_phi = {n_phi} must be at least 1/2")));
        }
        if n_r < Half::ZERO {
            return Err(Error::InvalidQuantumNumbers(format!("n_r = {n_r} must be non-negative")));
        }
        let n = n_r + n_phi;
        if !n.is_integer() {
            return Err(Error::InvalidQuantumNumbers(format!(
                "n = n_r + n_phi = {n} must be an integer"
            )));
        }
        if n.twice() > 2 * MAX_N as i32 {
            return Err(Error::InvalidQuantumNumbers(format!("n = {n} exceeds {MAX_N}")));
        }
        Ok(Self { n_r, n_phi, n_psi: None, l: None, j: None, m_j: None, m_l: None, m_s: None })
    }

    /// Integer Sommerfeld numbering: `n_φ ∈ 1..=n`.
    pub fn sommerfeld(n: u32, n_phi: u32) -> Result<Self> {
        if n_phi == 0 || n_phi > n {
            return Err(Error::InvalidQuantumNumbers(format!("n_phi = {n_phi} must lie in 1..={n}")));
        }
        Self::orbit(Half::integer((n - n_phi) as i32), Half::integer(n_phi as i32))
    }

    /// Half-step numbering with the spin decomposition `n_φ = l + 1/2`.
    pub fn from_level(level: Level) -> Result<Self> {
        let level = Level::new(level.n, level.l, level.j)?;
        let n_phi = Half::integer(level.l as i32) + Half::HALF;
        let n_r = Half::integer(level.n as i32) - n_phi;
        let mut qn = Self::orbit(n_r, n_phi)?;
        qn.l = Some(level.l);
        qn.j = Some(level.j);
        Ok(qn)
    }

    pub fn with_n_psi(mut self, n_psi: Half) -> Result<Self> {
        if n_psi.abs() > self.n_phi || !(self.n_phi - n_psi).is_integer() {
            return Err(Error::InvalidQuantumNumbers(format!(
                "n_psi = {n_psi} must satisfy |n_psi| ≤ n_phi = {} in unit steps",
                self.n_phi
            )));
        }
        self.n_psi = Some(n_psi);
        Ok(self)
    }

    pub fn with_m_j(mut self, m_j: Half) -> Result<Self> {
        let j = self.j()?;
        if m_j.abs() > j || !(j - m_j).is_integer() {
            return Err(Error::InvalidQuantumNumbers(format!("m_j = {m_j} invalid for j = {j}")));
        }
        self.m_j = Some(m_j);
        Ok(self)
    }

    /// Decoupled (strong-field) magnetic quantum numbers.
    pub fn with_decoupled(mut self, m_l: i32, m_s: Half) -> Result<Self> {
        let l = self.l()?;
        if m_l.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers(format!("m_l = {m_l} invalid for l = {l}")));
        }
        if m_s.abs() != Half::HALF {
            return Err(Error::InvalidQuantumNumbers(format!("m_s = {m_s} must be ±1/2")));
        }
        self.m_l = Some(m_l);
        self.m_s = Some(m_s);
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        ((self.n_r + self.n_phi).twice() / 2) as u32
    }

    pub fn n_r(&self) -> Half {
        self.n_r
    }

    pub fn n_phi(&self) -> Half {
        self.n_phi
    }

    pub fn n_psi(&self) -> Option<Half> {
        self.n_psi
    }

    pub fn s(&self) -> Half {
        Half::HALF
    }

    pub fn l(&self) -> Result<u32> {
        self.l.ok_or(Error::MissingQuantumNumber("l"))
    }

    pub fn j(&self) -> Result<Half> {
        self.j.ok_or(Error::MissingQuantumNumber("j"))
    }

    pub fn m_j(&self) -> Result<Half> {
        self.m_j.ok_or(Error::MissingQuantumNumber("m_j"))
    }

    pub fn m_l(&self) -> Result<i32> {
        self.m_l.ok_or(Error::MissingQuantumNumber("m_l"))
    }

    pub fn m_s(&self) -> Result<Half> {
        self.m_s.ok_or(Error::MissingQuantumNumber("m_s"))
    }

    pub fn level(&self) -> Result<Level> {
        Level::new(self.n(), self.l()?, self.j()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitGeometry {
    /// Semi-major axis, m.
    pub a: f64,
    /// Semi-minor axis, m.
    pub b: f64,
    /// Focal parameter (semi-latus rectum) `b²/a`, m.
    pub p: f64,
    pub eps: f64,
    /// `π a b`, m².
    pub area: f64,
}

impl OrbitGeometry {
    pub fn from_axes(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite("semi-axes"));
        }
        if b <= 0.0 || b > a {
            return Err(Error::DegenerateOrbit(format!("need 0 < b ≤ a, got a = {a:e}, b = {b:e}")));
        }
        let ratio = b / a;
        Ok(Self {
            a,
            b,
            p: b * b / a,
            eps: (1.0 - ratio * ratio).max(0.0).sqrt(),
            area: PI * a * b,
        })
    }

    /// Ellipse with focal parameter `p` and eccentricity `eps`.
    pub fn from_focal(p: f64, eps: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::DegenerateOrbit(format!("eccentricity {eps} outside [0, 1)")));
        }
        let one_minus = 1.0 - eps * eps;
        Self::from_axes(p / one_minus, p / one_minus.sqrt())
    }

    /// Distance from the occupied focus, `r(φ) = p / (1 - ε cos φ)`.
    pub fn focal_radius(&self, phi: f64) -> f64 {
        self.p / (1.0 - self.eps * phi.cos())
    }
}

fn check_z(z: u32) -> Result<()> {
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be at least 1".into()));
    }
    Ok(())
}

/// Geometry for real-valued `n` and `n_φ`: `a = n² a0/Z`, `b = n n_φ a0/Z`.
pub fn geometry_from(n: f64, n_phi: f64, z: u32, consts: &PhysicalConstants) -> Result<OrbitGeometry> {
    check_z(z)?;
    if n_phi > n {
        return Err(Error::DegenerateOrbit(format!("n_phi = {n_phi} exceeds n = {n}")));
    }
    let zf = f64::from(z);
    OrbitGeometry::from_axes(n * n * consts.a0 / zf, n * n_phi * consts.a0 / zf)
}

pub fn geometry(qn: &QuantumNumbers, z: u32, consts: &PhysicalConstants) -> Result<OrbitGeometry> {
    geometry_from(f64::from(qn.n()), qn.n_phi().value(), z, consts)
}

/// Geometry after an initial flux `phi_total` (of which `phi_phi` is
/// associated with the azimuthal quantum number) has replaced
/// `n → n - eΦ/h` and `n_φ → n_φ - eΦ_φ/h`.
pub fn geometry_with_flux(
    qn: &QuantumNumbers,
    z: u32,
    phi_total: f64,
    phi_phi: f64,
    consts: &PhysicalConstants,
) -> Result<OrbitGeometry> {
    check_z(z)?;
    let n = f64::from(qn.n());
    let shift = phi_total / consts.flux_quantum;
    let shift_phi = phi_phi / consts.flux_quantum;
    if !(shift.is_finite() && shift_phi.is_finite()) {
        return Err(Error::NonFinite("flux"));
    }
    if shift.abs() >= n {
        return Err(Error::FluxTooLarge { ratio: shift, n });
    }
    let n_eff = n - shift;
    let n_phi_eff = qn.n_phi().value() - shift_phi;
    let zf = f64::from(z);
    OrbitGeometry::from_axes(n_eff * n_eff * consts.a0 / zf, n_eff * n_phi_eff * consts.a0 / zf)
}

/// `π n³ √(n_φ(n_φ+1)) a0²/Z²` for a real-valued `n_φ ≥ 0`.
pub fn vector_area_for(n: f64, n_phi: f64, z: u32, consts: &PhysicalConstants) -> f64 {
    let zf = f64::from(z);
    PI * n.powi(3) * (n_phi * (n_phi + 1.0)).sqrt() * consts.a0 * consts.a0 / (zf * zf)
}

pub fn vector_area_magnitude(qn: &QuantumNumbers, z: u32, consts: &PhysicalConstants) -> Result<f64> {
    check_z(z)?;
    Ok(vector_area_for(f64::from(qn.n()), qn.n_phi().value(), z, consts))
}

/// `∮ p·ds` along the unperturbed Kepler ellipse of `qn`, J s.
///
/// The speed is taken from energy conservation with the orbit energy of
/// [`energy::energy_exact`] at zero flux, and the path is parametrized by the
/// eccentric anomaly `E` (`r = a(1 - ε cos E)`), which keeps the integrand
/// smooth through perihelion.
pub fn action_integral(
    qn: &QuantumNumbers,
    z: u32,
    consts: &PhysicalConstants,
    rel_tol: f64,
) -> Result<f64> {
    let geom = geometry(qn, z, consts)?;
    let w = energy::energy_exact(qn, z, 0.0, consts)?;
    let coulomb = f64::from(z) * consts.e * consts.e / (4.0 * PI * consts.eps0);
    let OrbitGeometry { a, eps, .. } = geom;
    let integrand = |ecc_anomaly: f64| {
        let cos_e = ecc_anomaly.cos();
        let r = a * (1.0 - eps * cos_e);
        let kinetic = (w + coulomb / r).max(0.0);
        let speed = (2.0 * kinetic / consts.m_e).sqrt();
        let ds = a * (1.0 - eps * eps * cos_e * cos_e).sqrt();
        consts.m_e * speed * ds
    };
    let integral = quadrature::integrate(integrand, 0.0, 2.0 * PI, Tolerance::relative(rel_tol))?;
    Ok(integral.value)
}
