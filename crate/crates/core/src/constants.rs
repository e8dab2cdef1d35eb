//! Physical constants and energy-unit conversion.
//!
//! Base constants are CODATA-2018. Every derived constant is recomputed from
//! the bases so that algebraic identities between them (for instance
//! `μ_B = 2π R∞ c e a0²`) hold to rounding. The published CODATA values of
//! the derived constants are kept in [`CODATA_2018`] and compared against
//! the recomputed ones whenever the default bases are in use.
//!
//! | symbol | value | source |
//! |---|---|---|
//! | h | 6.626 070 15e-34 J s | exact (SI 2019) |
//! | e | 1.602 176 634e-19 C | exact (SI 2019) |
//! | c | 299 792 458 m/s | exact |
//! | m_e | 9.109 383 7015e-31 kg | CODATA-2018 |
//! | m_p | 1.672 621 923 69e-27 kg | CODATA-2018 |
//! | ε0 | 8.854 187 8128e-12 F/m | CODATA-2018 |
//! | g_s | 2 (model) or 2.002 319 304 36 | model value / CODATA-2018 |

use std::collections::HashSet;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for consistency between stored and recomputed values.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Electron spin g-factor, CODATA-2018 magnitude.
pub const G_S_CODATA: f64 = 2.00231930436;

/// Published CODATA-2018 values of the derived constants.
pub const CODATA_2018: &[(&str, f64)] = &[
    ("hbar", 1.054571817e-34),
    ("mu0", 1.25663706212e-6),
    ("a0", 5.29177210903e-11),
    ("R_inf", 10973731.568160),
    ("mu_B", 9.2740100783e-24),
    ("mu_K", 5.0507837461e-27),
    ("alpha", 7.2973525693e-3),
    ("flux_quantum", 4.135667696e-15),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Planck constant, J s.
    pub h: f64,
    pub hbar: f64,
    /// Elementary charge, C.
    pub e: f64,
    pub m_e: f64,
    pub m_p: f64,
    pub eps0: f64,
    pub mu0: f64,
    pub c: f64,
    /// Bohr radius, m.
    pub a0: f64,
    /// Rydberg constant, 1/m.
    pub r_inf: f64,
    pub mu_b: f64,
    /// Nuclear magneton, J/T.
    pub mu_k: f64,
    pub alpha: f64,
    pub g_s: f64,
    /// `h/e`, Wb.
    pub flux_quantum: f64,
}

const BASE_KEYS: [&str; 7] = ["h", "e", "m_e", "m_p", "eps0", "c", "g_s"];
const DERIVED_KEYS: [&str; 8] = [
    "hbar",
    "mu0",
    "a0",
    "R_inf",
    "mu_B",
    "mu_K",
    "alpha",
    "flux_quantum",
];

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

impl PhysicalConstants {
    pub fn codata2018() -> Self {
        Self::from_bases(
            6.62607015e-34,
            1.602176634e-19,
            9.1093837015e-31,
            1.67262192369e-27,
            8.8541878128e-12,
            299_792_458.0,
            2.0,
        )
    }

    pub fn from_bases(h: f64, e: f64, m_e: f64, m_p: f64, eps0: f64, c: f64, g_s: f64) -> Self {
        let hbar = h / (2.0 * PI);
        Self {
            h,
            hbar,
            e,
            m_e,
            m_p,
            eps0,
            mu0: 1.0 / (eps0 * c * c),
            c,
            a0: eps0 * h * h / (PI * m_e * e * e),
            r_inf: m_e * e.powi(4) / (8.0 * eps0 * eps0 * h.powi(3) * c),
            mu_b: e * hbar / (2.0 * m_e),
            mu_k: e * hbar / (2.0 * m_p),
            alpha: e * e / (2.0 * eps0 * h * c),
            g_s,
            flux_quantum: h / e,
        }
    }

    pub fn with_g_s(mut self, g_s: f64) -> Self {
        self.g_s = g_s;
        self
    }

    /// Magnetic moment of the electron used by the model, `(g_s/2) μ_B`.
    pub fn mu_e(&self) -> f64 {
        self.g_s / 2.0 * self.mu_b
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        Some(match key {
            "h" => self.h,
            "hbar" => self.hbar,
            "e" => self.e,
            "m_e" => self.m_e,
            "m_p" => self.m_p,
            "eps0" => self.eps0,
            "mu0" => self.mu0,
            "c" => self.c,
            "a0" => self.a0,
            "R_inf" => self.r_inf,
            "mu_B" => self.mu_b,
            "mu_K" => self.mu_k,
            "alpha" => self.alpha,
            "g_s" => self.g_s,
            "flux_quantum" => self.flux_quantum,
            _ => return None,
        })
    }

    pub fn keys() -> impl Iterator<Item = &'static str> {
        BASE_KEYS.iter().chain(DERIVED_KEYS.iter()).copied()
    }

    /// Recomputes every derived constant from the bases and compares it with
    /// the stored field.
    pub fn check_consistency(&self) -> Result<()> {
        for key in Self::keys() {
            let v = self.get(key).unwrap_or(f64::NAN);
            if !(v.is_finite() && (v > 0.0 || key == "g_s" && v >= 0.0)) {
                return Err(Error::ConstantsInconsistent(format!(
                    "`{key}` must be finite and positive, got {v}"
                )));
            }
        }
        let fresh = Self::from_bases(self.h, self.e, self.m_e, self.m_p, self.eps0, self.c, self.g_s);
        for key in DERIVED_KEYS {
            let stored = self.get(key).unwrap_or(f64::NAN);
            let implied = fresh.get(key).unwrap_or(f64::NAN);
            if rel_diff(stored, implied) > CONSISTENCY_TOL {
                return Err(Error::ConstantsInconsistent(format!(
                    "`{key}` = {stored} but bases imply {implied}"
                )));
            }
        }
        Ok(())
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// A value in a constants configuration source.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigValue {
    Number(f64),
    /// `g_s=codata`
    Codata,
}

/// Parses a `key=value` configuration text. `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Vec<(String, ConfigValue)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: idx + 1,
            message: format!("expected `key=value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parsed = if value.eq_ignore_ascii_case("codata") {
            ConfigValue::Codata
        } else {
            ConfigValue::Number(value.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("`{value}` is not a number"),
            })?)
        };
        out.push((key.to_string(), parsed));
    }
    Ok(out)
}

/// Builds the constants from CODATA-2018 defaults plus `overrides`.
///
/// Base overrides (`h, e, m_e, m_p, eps0, c, g_s`) cause every derived
/// constant to be recomputed. A derived key may be given only if it agrees
/// with the value implied by the bases.
pub fn apply_overrides<'a, I>(overrides: I) -> Result<PhysicalConstants>
where
    I: IntoIterator<Item = (&'a str, ConfigValue)>,
{
    let defaults = PhysicalConstants::codata2018();
    let mut bases = [0.0; 7];
    for (slot, key) in bases.iter_mut().zip(BASE_KEYS) {
        *slot = defaults.get(key).unwrap_or_default();
    }
    let mut derived_given = Vec::new();
    let mut seen = HashSet::new();
    for (key, value) in overrides {
        if PhysicalConstants::keys().all(|k| k != key) {
            return Err(Error::UnknownConstant(key.to_string()));
        }
        if !seen.insert(key) {
            return Err(Error::Duplicate(key.to_string()));
        }
        let v = match value {
            ConfigValue::Codata if key == "g_s" => G_S_CODATA,
            ConfigValue::Codata => {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("`codata` is only accepted for g_s, not `{key}`"),
                })
            }
            ConfigValue::Number(v) => v,
        };
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::NonPositive { key: key.to_string(), value: v });
        }
        match BASE_KEYS.iter().position(|k| *k == key) {
            Some(i) => bases[i] = v,
            None => derived_given.push((key, v)),
        }
    }
    let [h, e, m_e, m_p, eps0, c, g_s] = bases;
    let consts = PhysicalConstants::from_bases(h, e, m_e, m_p, eps0, c, g_s);
    for (key, given) in derived_given {
        let implied = consts.get(key).unwrap_or(f64::NAN);
        if rel_diff(given, implied) > CONSISTENCY_TOL {
            return Err(Error::InconsistentOverride { key: key.to_string(), given, implied });
        }
    }
    consts.check_consistency()?;
    let defaults_in_use = BASE_KEYS[..6]
        .iter()
        .zip(bases)
        .all(|(k, v)| defaults.get(k) == Some(v));
    if defaults_in_use {
        for (key, published) in CODATA_2018 {
            let v = consts.get(key).unwrap_or(f64::NAN);
            if rel_diff(v, *published) > CONSISTENCY_TOL {
                return Err(Error::ConstantsInconsistent(format!(
                    "`{key}` recomputed as {v}, CODATA lists {published}"
                )));
            }
        }
    }
    Ok(consts)
}

/// Loads constants from an optional `key=value` configuration text.
pub fn load_constants(config: Option<&str>) -> Result<PhysicalConstants> {
    let pairs = match config {
        Some(text) => parse_config(text)?,
        None => Vec::new(),
    };
    apply_overrides(pairs.iter().map(|(k, v)| (k.as_str(), *v)))
}

pub fn load_constants_file(path: impl AsRef<Path>) -> Result<PhysicalConstants> {
    let text = std::fs::read_to_string(path)?;
    load_constants(Some(&text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyUnit {
    #[serde(rename = "J")]
    Joule,
    #[serde(rename = "eV")]
    ElectronVolt,
    #[serde(rename = "MHz")]
    Megahertz,
    #[serde(rename = "1/cm")]
    Wavenumber,
}

impl EnergyUnit {
    pub const ALL: [EnergyUnit; 4] = [
        EnergyUnit::Joule,
        EnergyUnit::ElectronVolt,
        EnergyUnit::Megahertz,
        EnergyUnit::Wavenumber,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            EnergyUnit::Joule => "J",
            EnergyUnit::ElectronVolt => "eV",
            EnergyUnit::Megahertz => "MHz",
            EnergyUnit::Wavenumber => "1/cm",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|u| u.symbol() == s)
    }

    /// Joules per unit.
    fn joules(self, consts: &PhysicalConstants) -> f64 {
        match self {
            EnergyUnit::Joule => 1.0,
            EnergyUnit::ElectronVolt => consts.e,
            EnergyUnit::Megahertz => consts.h * 1e6,
            EnergyUnit::Wavenumber => consts.h * consts.c * 100.0,
        }
    }
}

/// Converts an energy in joules to `target`.
pub fn convert_energy(joules: f64, target: EnergyUnit, consts: &PhysicalConstants) -> Result<f64> {
    if !joules.is_finite() {
        return Err(Error::NonFinite("energy"));
    }
    Ok(joules / target.joules(consts))
}

/// Converts an energy given in `unit` back to joules.
pub fn to_joules(value: f64, unit: EnergyUnit, consts: &PhysicalConstants) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite("energy"));
    }
    Ok(value * unit.joules(consts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn default_flux_quantum_is_h_over_e() {
        let k = load_constants(None).unwrap();
        assert_relative_eq!(k.flux_quantum, 6.62607015e-34 / 1.602176634e-19, max_relative = 1e-15);
        assert_relative_eq!(k.flux_quantum, 4.135667e-15, max_relative = 1e-6);
        assert_eq!(k.g_s, 2.0);
    }

    #[test]
    fn recomputed_derived_match_codata_table() {
        let k = PhysicalConstants::codata2018();
        for (key, published) in CODATA_2018 {
            assert!(rel_diff(k.get(key).unwrap(), *published) < CONSISTENCY_TOL, "{key}");
        }
        k.check_consistency().unwrap();
    }

    #[test]
    fn g_s_codata_option() {
        let k = load_constants(Some("g_s = codata\n")).unwrap();
        assert_eq!(k.g_s, 2.00231930436);
    }

    #[test]
    fn rejects_bad_overrides() {
        assert!(matches!(
            load_constants(Some("e=-1")),
            Err(Error::NonPositive { .. })
        ));
        assert!(matches!(
            load_constants(Some("planck=1")),
            Err(Error::UnknownConstant(_))
        ));
        // a0 inconsistent with an overridden m_e
        assert!(matches!(
            load_constants(Some("m_e=1e-30\na0=5.29177210903e-11")),
            Err(Error::InconsistentOverride { .. })
        ));
        assert!(matches!(load_constants(Some("c")), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_constants(Some("h=1\nh=2")), Err(Error::Duplicate(_))));
    }

    #[test]
    fn base_override_recomputes_derived() {
        let k = load_constants(Some("# heavier electron\nm_e = 1.8218767403e-30")).unwrap();
        let d = PhysicalConstants::codata2018();
        assert_relative_eq!(k.a0, d.a0 / 2.0, max_relative = 1e-12);
        assert_relative_eq!(k.mu_b, d.mu_b / 2.0, max_relative = 1e-12);
        // consistent derived override accepted
        assert!(load_constants(Some(&format!("a0={:e}", d.a0))).is_ok());
    }

    #[test]
    fn convert_examples() {
        let k = PhysicalConstants::codata2018();
        assert_relative_eq!(
            to_joules(1.0, EnergyUnit::ElectronVolt, &k).unwrap(),
            1.602177e-19,
            max_relative = 1e-6
        );
        for u in EnergyUnit::ALL {
            assert_eq!(convert_energy(0.0, u, &k).unwrap(), 0.0);
        }
        assert_relative_eq!(
            convert_energy(k.h * 1e6, EnergyUnit::Megahertz, &k).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(convert_energy(f64::NAN, EnergyUnit::Joule, &k).is_err());
    }

    proptest! {
        #[test]
        fn conversion_roundtrips(x in -1e-15f64..1e-15, ui in 0usize..4) {
            let k = PhysicalConstants::codata2018();
            let u = EnergyUnit::ALL[ui];
            let back = to_joules(convert_energy(x, u, &k).unwrap(), u, &k).unwrap();
            prop_assert!((back - x).abs() <= 1e-12 * x.abs());
        }
    }
}
