//! Standard quantum-mechanical baselines and reference data.
//!
//! The model's predictions are always reported next to these textbook
//! expressions and the experimental registry; nothing here feeds back into
//! the flux calculations.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::{EnergyUnit, PhysicalConstants};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::orbits::QuantumNumbers;

const BUILTIN_SPECIES: &str = include_str!("../data/species.csv");
const BUILTIN_EXPERIMENTAL: &str = include_str!("../data/experimental.csv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuclearSpecies {
    pub name: String,
    pub z: u32,
    pub mass_number: u32,
    /// Nuclear spin `I`.
    pub spin: Half,
    /// Nuclear g-factor, `μ = g_I μ_K I`.
    pub g_i: f64,
}

impl NuclearSpecies {
    pub fn new(name: &str, z: u32, mass_number: u32, spin: Half, g_i: f64) -> Result<Self> {
        let invalid = |m: String| Error::InvalidQuantumNumbers(format!("species `{name}`: {m}"));
        if name.is_empty() {
            return Err(invalid("empty name".into()));
        }
        if z == 0 || mass_number == 0 {
            return Err(invalid(format!("Z = {z} and A = {mass_number} must be positive")));
        }
        if spin < Half::ZERO {
            return Err(invalid(format!("I = {spin} must be non-negative")));
        }
        if !g_i.is_finite() {
            return Err(invalid("g_I must be finite".into()));
        }
        Ok(Self { name: name.to_string(), z, mass_number, spin, g_i })
    }

    /// Nuclear magnetic moment `g_I μ_K I`, J/T.
    pub fn moment(&self, consts: &PhysicalConstants) -> f64 {
        self.g_i * consts.mu_k * self.spin.value()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalValue {
    pub observable: String,
    pub value: f64,
    pub unit: EnergyUnit,
    pub source: String,
}

/// Splits one data line into trimmed fields; `None` for blank or comment lines.
fn fields(raw: &str, max: usize) -> Option<Vec<&str>> {
    let line = raw.trim();
    if line.is_empty() || line.starts_with('#') {
        return None;
    }
    Some(line.splitn(max, ',').map(str::trim).collect())
}

fn field<'a>(cols: &[&'a str], idx: usize, name: &str, line: usize) -> Result<&'a str> {
    match cols.get(idx) {
        Some(v) if !v.is_empty() => Ok(v),
        _ => Err(Error::Parse { line, message: format!("missing field `{name}`") }),
    }
}

fn number<T: std::str::FromStr>(text: &str, name: &str, line: usize) -> Result<T> {
    text.parse()
        .map_err(|_| Error::Parse { line, message: format!("field `{name}`: cannot parse `{text}`") })
}

/// Parses `name,Z,A_mass,I,g_I` records.
pub fn parse_species(text: &str) -> Result<Vec<NuclearSpecies>> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(cols) = fields(raw, 6) else { continue };
        if cols.len() > 5 {
            return Err(Error::Parse { line, message: "expected 5 fields".into() });
        }
        let name = field(&cols, 0, "name", line)?;
        let z = number(field(&cols, 1, "Z", line)?, "Z", line)?;
        let a = number(field(&cols, 2, "A_mass", line)?, "A_mass", line)?;
        let spin: Half = number(field(&cols, 3, "I", line)?, "I", line)?;
        let g_i: f64 = number(field(&cols, 4, "g_I", line)?, "g_I", line)?;
        let species = NuclearSpecies::new(name, z, a, spin, g_i)
            .map_err(|e| Error::Parse { line, message: e.to_string() })?;
        if !names.insert(name.to_string()) {
            return Err(Error::Duplicate(name.to_string()));
        }
        out.push(species);
    }
    Ok(out)
}

pub fn load_species(path: impl AsRef<Path>) -> Result<Vec<NuclearSpecies>> {
    parse_species(&std::fs::read_to_string(path)?)
}

/// Parses `key,value,unit,source` records.
pub fn parse_experimental(text: &str) -> Result<Vec<ExperimentalValue>> {
    let mut out = Vec::new();
    let mut keys = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(cols) = fields(raw, 4) else { continue };
        let key = field(&cols, 0, "key", line)?;
        let value: f64 = number(field(&cols, 1, "value", line)?, "value", line)?;
        if !value.is_finite() {
            return Err(Error::Parse { line, message: "value must be finite".into() });
        }
        let unit_text = field(&cols, 2, "unit", line)?;
        let unit = EnergyUnit::from_symbol(unit_text).ok_or_else(|| Error::Parse {
            line,
            message: format!("unsupported unit `{unit_text}`"),
        })?;
        let source = field(&cols, 3, "source", line)?;
        if !keys.insert(key.to_string()) {
            return Err(Error::Duplicate(key.to_string()));
        }
        out.push(ExperimentalValue {
            observable: key.to_string(),
            value,
            unit,
            source: source.to_string(),
        });
    }
    Ok(out)
}

pub fn load_experimental(path: impl AsRef<Path>) -> Result<Vec<ExperimentalValue>> {
    parse_experimental(&std::fs::read_to_string(path)?)
}

/// Species and experimental values available to a computation.
#[derive(Debug, Clone, PartialEq)]
pub struct Registry {
    species: Vec<NuclearSpecies>,
    experimental: Vec<ExperimentalValue>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self {
            species: parse_species(BUILTIN_SPECIES).expect("bundled species table parses"),
            experimental: parse_experimental(BUILTIN_EXPERIMENTAL).expect("bundled reference table parses"),
        }
    }

    pub fn new(species: Vec<NuclearSpecies>, experimental: Vec<ExperimentalValue>) -> Self {
        Self { species, experimental }
    }

    pub fn with_species(mut self, species: Vec<NuclearSpecies>) -> Self {
        self.species = species;
        self
    }

    pub fn with_experimental(mut self, values: Vec<ExperimentalValue>) -> Self {
        self.experimental = values;
        self
    }

    pub fn species(&self, name: &str) -> Result<&NuclearSpecies> {
        self.species
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownKey(name.to_string()))
    }

    pub fn all_species(&self) -> &[NuclearSpecies] {
        &self.species
    }

    pub fn lookup_experimental(&self, key: &str) -> Result<&ExperimentalValue> {
        self.experimental
            .iter()
            .find(|v| v.observable == key)
            .ok_or_else(|| Error::UnknownKey(key.to_string()))
    }
}

/// Textbook Landé factor `1 + [j(j+1) + s(s+1) - l(l+1)] / (2 j(j+1))`.
pub fn standard_lande(l: u32, s: Half, j: Half) -> Result<f64> {
    let l_h = Half::integer(l as i32);
    let lo = (l_h - s).abs();
    let hi = l_h + s;
    if s < Half::ZERO || j <= Half::ZERO || j < lo || j > hi || !(j - lo).is_integer() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j = {j} cannot couple l = {l} and s = {s}"
        )));
    }
    let jj = j.casimir();
    Ok(1.0 + (jj + s.casimir() - l_h.casimir()) / (2.0 * jj))
}

/// Magnetic-dipole hyperfine constant with the `(2l+1)` denominator, J.
pub fn standard_hyperfine_a(qn: &QuantumNumbers, species: &NuclearSpecies, consts: &PhysicalConstants) -> Result<f64> {
    if species.spin == Half::ZERO {
        return Err(Error::NoHyperfineStructure);
    }
    let l = qn.l()?;
    let j = qn.j()?;
    Ok(hyperfine_a_with_denominator(qn.n(), j, f64::from(2 * l + 1), species, consts))
}

/// `2 α² Z³ R∞ h c μ_e μ_nuc / (μ_B² n³ j(j+1) D I)` for an orbital factor `D`.
pub(crate) fn hyperfine_a_with_denominator(
    n: u32,
    j: Half,
    orbital_factor: f64,
    species: &NuclearSpecies,
    consts: &PhysicalConstants,
) -> f64 {
    let z = f64::from(species.z);
    2.0 * consts.alpha * consts.alpha * z.powi(3) * consts.r_inf * consts.h * consts.c * consts.mu_e()
        * species.moment(consts)
        / (consts.mu_b * consts.mu_b * f64::from(n).powi(3) * j.casimir() * orbital_factor * species.spin.value())
}

/// Hydrogenic first-order spin-orbit shift,
/// `Z (μ0/4π) g_s μ_B² ⟨1/r³⟩ [j(j+1) - l(l+1) - s(s+1)] / 2` with
/// `⟨1/r³⟩ = Z³ / (a0³ n³ l(l+½)(l+1))`, J.
pub fn standard_spin_orbit(qn: &QuantumNumbers, z: u32, consts: &PhysicalConstants) -> Result<f64> {
    let l = qn.l()?;
    if l == 0 {
        return Err(Error::InvalidQuantumNumbers("spin-orbit shift needs l ≥ 1".into()));
    }
    let j = qn.j()?;
    let lf = f64::from(l);
    let zf = f64::from(z);
    let bracket = j.casimir() - lf * (lf + 1.0) - qn.s().casimir();
    let inv_r3 = zf.powi(3)
        / (consts.a0.powi(3) * f64::from(qn.n()).powi(3) * lf * (lf + 0.5) * (lf + 1.0));
    Ok(zf * consts.mu0 / (4.0 * PI) * consts.g_s * consts.mu_b * consts.mu_b * inv_r3 * bracket / 2.0)
}
