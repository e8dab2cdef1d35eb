//! One function per subcommand. Each returns a [`Report`]; hard input errors
//! are returned as `Err`.

use fluxatom::constants::{convert_energy, to_joules};
use fluxatom::coupling::{allowed_f, hyperfine_full, lande_g, paschen_back, zeeman_anomalous};
use fluxatom::effects_simple::{hyperfine_simplified, spin_orbit_simplified};
use fluxatom::energy::{energy_exact, energy_shift_linear, linear_coefficient, linear_coefficient_from_bases};
use fluxatom::flux::{dipole_flux_oracle, dipole_focus_flux, FluxSource};
use fluxatom::orbits::{action_integral, OrbitGeometry};
use fluxatom::reference::{standard_hyperfine_a, standard_spin_orbit, Registry};
use fluxatom::spectroscopy::MAX_N;
use fluxatom::{EnergyUnit, Error, FluxValue, Half, Level, PhysicalConstants, QuantumNumbers, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Comparison, Diagnostic, RatioOf, Report};

pub const DEFAULT_ACTION_TOL: f64 = 1e-9;
pub const DEFAULT_DIPOLE_TOL: f64 = 1e-6;
/// Allowed deviation of the fitted remainder exponent from 2.
pub const DEFAULT_EXPONENT_TOL: f64 = 0.05;
pub const COEFFICIENT_TOL: f64 = 1e-9;
pub const DEFAULT_SIMPLE_COS_BETA: f64 = 2.0 / 3.0;

const ECCENTRICITIES: [f64; 5] = [0.0, 0.3, 0.6, 0.9, 0.95];
const RANDOM_GEOMETRIES: usize = 100;
const RANDOM_SEED: u64 = 0x5eed_f10c;

/// Shared command settings: constants, reference data and output unit.
#[derive(Debug, Clone)]
pub struct Context {
    pub consts: PhysicalConstants,
    pub registry: Registry,
    /// Overrides each command's natural energy unit.
    pub unit: Option<EnergyUnit>,
    pub constants_source: String,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            consts: PhysicalConstants::codata2018(),
            registry: Registry::builtin(),
            unit: None,
            constants_source: "CODATA-2018".into(),
        }
    }
}

impl Context {
    fn unit_or(&self, natural: EnergyUnit) -> EnergyUnit {
        self.unit.unwrap_or(natural)
    }

    fn convert(&self, joules: f64, unit: EnergyUnit) -> Result<f64> {
        convert_energy(joules, unit, &self.consts)
    }

    fn echo(&self, report: &mut Report) {
        report.input("constants", &self.constants_source);
        report.input("g_s", self.consts.g_s);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Regime {
    Weak,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Model {
    Simple,
    Full,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Action,
    DipoleFlux,
    Linearization,
    All,
}

fn check_z(z: u32) -> Result<()> {
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be at least 1".into()));
    }
    Ok(())
}

fn finite(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(name))
    }
}

/// Gross-structure levels `W(n)` for `n = 1..=n_max`.
pub fn cmd_levels(ctx: &Context, z: u32, n_max: u32) -> Result<Report> {
    check_z(z)?;
    if n_max == 0 || n_max > MAX_N {
        return Err(Error::InvalidQuantumNumbers(format!("n_max must be in 1..={MAX_N}, got {n_max}")));
    }
    let unit = ctx.unit_or(EnergyUnit::ElectronVolt);
    let mut report = Report::new(format!("levels --z {z} --n-max {n_max}"));
    ctx.echo(&mut report);
    report.input("Z", z);
    report.input("n_max", n_max);
    for n in 1..=n_max {
        let qn = QuantumNumbers::sommerfeld(n, n)?;
        let w = energy_exact(&qn, z, 0.0, &ctx.consts)?;
        report.row(format!("W(n={n})"), ctx.convert(w, unit)?, unit.symbol());
    }
    Ok(report)
}

/// Magnetic sublevels of `level` in field `b_field`.
pub fn cmd_zeeman(ctx: &Context, level: Level, b_field: f64, regime: Regime, z: u32) -> Result<Report> {
    check_z(z)?;
    finite("B", b_field)?;
    let unit = ctx.unit_or(EnergyUnit::ElectronVolt);
    let regime_name = match regime {
        Regime::Weak => "weak",
        Regime::Strong => "strong",
    };
    let mut report = Report::new(format!("zeeman {level} --B {b_field} --regime {regime_name} --z {z}"));
    ctx.echo(&mut report);
    report.input("state", level);
    report.input("B [T]", b_field);
    report.input("regime", regime_name);
    report.input("Z", z);
    let qn = QuantumNumbers::from_level(level)?;
    match regime {
        Regime::Weak => {
            report.row("g_j", lande_g(level.l, qn.s(), level.j)?, "1");
            for m_j in (-level.j).range_to(level.j) {
                let shift = zeeman_anomalous(&qn.with_m_j(m_j)?, z, b_field, &ctx.consts)?;
                report.row(format!("m_j={}", signed(m_j)), ctx.convert(shift.value, unit)?, unit.symbol());
            }
        }
        Regime::Strong => {
            let l = level.l as i32;
            for m_l in -l..=l {
                for m_s in [-Half::HALF, Half::HALF] {
                    let shift = paschen_back(&qn.with_decoupled(m_l, m_s)?, z, b_field, &ctx.consts)?;
                    report.row(
                        format!("m_l={} m_s={}", signed(Half::integer(m_l)), signed(m_s)),
                        ctx.convert(shift.value, unit)?,
                        unit.symbol(),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn signed(h: Half) -> String {
    if h <= Half::ZERO {
        h.to_string()
    } else {
        format!("+{h}")
    }
}

/// Conventional key of the measured hyperfine interval, e.g.
/// `H_1s_hfs_interval_MHz` for species `H-1` and level `1s1/2`.
pub fn experimental_key(species: &str, level: Level) -> String {
    let element = species.split('-').next().unwrap_or(species);
    format!("{element}_{}{}_hfs_interval_MHz", level.n, level.letter())
}

/// Hyperfine structure of `level` for nucleus `species`.
pub fn cmd_hyperfine(
    ctx: &Context,
    level: Level,
    species: &str,
    model: Model,
    cos_beta: Option<f64>,
    experimental: Option<&str>,
) -> Result<Report> {
    let model_name = match model {
        Model::Simple => "simple",
        Model::Full => "full",
        Model::Standard => "standard",
    };
    if cos_beta.is_some() && model != Model::Simple {
        return Err(Error::InvalidQuantumNumbers("--cos-beta applies only to the simple model".into()));
    }
    let mut command = format!("hyperfine {level} {species} --model {model_name}");
    if let Some(c) = cos_beta {
        command += &format!(" --cos-beta {c}");
    }
    if let Some(k) = experimental {
        command += &format!(" --experimental-key {k}");
    }
    let nucleus = ctx.registry.species(species)?.clone();
    let unit = ctx.unit_or(EnergyUnit::Megahertz);
    let mut report = Report::new(command);
    ctx.echo(&mut report);
    report.input("state", level);
    report.input("species", &nucleus.name);
    report.input("Z", nucleus.z);
    report.input("I", nucleus.spin);
    report.input("g_I", nucleus.g_i);
    report.input("model", model_name);
    if nucleus.spin == Half::ZERO {
        report.error(format!("no hyperfine structure: {} has I = 0", nucleus.name));
        return Ok(report);
    }
    let qn = QuantumNumbers::from_level(level)?;
    let interval = match model {
        Model::Simple => {
            let cos_beta = finite("cos β", cos_beta.unwrap_or(DEFAULT_SIMPLE_COS_BETA))?;
            report.input("cos β", cos_beta);
            report.input("n_φ", qn.n_phi());
            let shift = hyperfine_simplified(&qn, &nucleus, cos_beta, &ctx.consts)?;
            report.row("shift (moment along normal)", ctx.convert(shift.value, unit)?, unit.symbol());
            report.row("shift (moment reversed)", ctx.convert(-shift.value, unit)?, unit.symbol());
            2.0 * shift.magnitude()
        }
        Model::Full | Model::Standard => {
            let standard = standard_hyperfine_a(&qn, &nucleus, &ctx.consts)?;
            let fs = allowed_f(level.j, nucleus.spin);
            let mut shifts = Vec::with_capacity(fs.len());
            if model == Model::Full {
                let mut a = 0.0;
                for &f in &fs {
                    let hf = hyperfine_full(&qn, &nucleus, f, &ctx.consts)?;
                    a = hf.a_constant;
                    shifts.push((f, hf.shift.value));
                }
                report.row("A", ctx.convert(a, unit)?, unit.symbol());
                report.compare(Comparison::new(
                    "A vs standard",
                    Some(ctx.convert(a, unit)?),
                    Some(ctx.convert(standard, unit)?),
                    RatioOf::ModelOverReference,
                    unit.symbol(),
                ));
            } else {
                let j = level.j.casimir();
                let i = nucleus.spin.casimir();
                for &f in &fs {
                    shifts.push((f, standard / 2.0 * (f.casimir() - i - j)));
                }
                report.row("A", ctx.convert(standard, unit)?, unit.symbol());
            }
            for (f, w) in &shifts {
                report.row(format!("F={f}"), ctx.convert(*w, unit)?, unit.symbol());
            }
            let (first, last) = (shifts[0].1, shifts[shifts.len() - 1].1);
            last - first
        }
    };
    report.row("interval", ctx.convert(interval, unit)?, unit.symbol());
    let key = experimental.map(str::to_string).unwrap_or_else(|| experimental_key(&nucleus.name, level));
    match ctx.registry.lookup_experimental(&key) {
        Ok(measured) => {
            let joules = to_joules(measured.value, measured.unit, &ctx.consts)?;
            report.input("experimental", format!("{key} ({})", measured.source));
            report.compare(Comparison::new(
                "interval vs experiment",
                Some(ctx.convert(interval, unit)?),
                Some(ctx.convert(joules, unit)?),
                RatioOf::ModelOverReference,
                unit.symbol(),
            ));
        }
        Err(e) if experimental.is_some() => return Err(e),
        Err(_) => {}
    }
    Ok(report)
}

/// Focal-moment spin-orbit shift against the hydrogenic formula.
pub fn cmd_spin_orbit(
    ctx: &Context,
    level: Level,
    cos_beta: Option<f64>,
    n_phi: Option<Half>,
    z: u32,
) -> Result<Report> {
    check_z(z)?;
    let cos_beta = finite("cos β", cos_beta.unwrap_or(1.0))?;
    let n_phi = n_phi.unwrap_or(Half::integer(level.l as i32));
    let unit = ctx.unit_or(EnergyUnit::ElectronVolt);
    let mut report = Report::new(format!("spin-orbit {level} --cos-beta {cos_beta} --n-phi {n_phi} --z {z}"));
    ctx.echo(&mut report);
    report.input("state", level);
    report.input("cos β", cos_beta);
    report.input("n_φ", n_phi);
    report.input("Z", z);
    let orbit = QuantumNumbers::orbit(Half::integer(level.n as i32) - n_phi, n_phi)?;
    let model = ctx.convert(spin_orbit_simplified(&orbit, z, cos_beta, &ctx.consts)?.magnitude(), unit)?;
    let standard = ctx.convert(standard_spin_orbit(&QuantumNumbers::from_level(level)?, z, &ctx.consts)?, unit)?;
    report.row("model shift", model, unit.symbol());
    report.row("standard shift", standard, unit.symbol());
    let predicted = f64::from(z) * n_phi.value().powi(2) / (12.0 * cos_beta);
    if predicted.is_finite() {
        report.row("expected ratio Z n_φ²/(12 cos β)", predicted, "1");
    }
    report.compare(Comparison::new("spin-orbit", Some(model), Some(standard), RatioOf::ReferenceOverModel, unit.symbol()));
    Ok(report)
}

/// Runs oracle checks. `tol` replaces each suite's default tolerance.
pub fn cmd_verify(ctx: &Context, suite: Suite, tol: Option<f64>) -> Result<Report> {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::NonPositive { key: "tol".into(), value: t });
        }
    }
    let name = match suite {
        Suite::Action => "action",
        Suite::DipoleFlux => "dipole-flux",
        Suite::Linearization => "linearization",
        Suite::All => "all",
    };
    let mut command = format!("verify {name}");
    if let Some(t) = tol {
        command += &format!(" --tol {t:e}");
    }
    let mut report = Report::new(command);
    ctx.echo(&mut report);
    if matches!(suite, Suite::Action | Suite::All) {
        verify_action(ctx, tol.unwrap_or(DEFAULT_ACTION_TOL), &mut report);
    }
    if matches!(suite, Suite::DipoleFlux | Suite::All) {
        verify_dipole(ctx, tol.unwrap_or(DEFAULT_DIPOLE_TOL), &mut report);
    }
    if matches!(suite, Suite::Linearization | Suite::All) {
        verify_linearization(ctx, tol.unwrap_or(DEFAULT_EXPONENT_TOL), &mut report)?;
    }
    Ok(report)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// All orbits with `n = n_r + n_φ ≤ n_max` in both the integer and the
/// half-step conventions.
pub fn action_states(n_max: u32) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for p in 1..=n {
            out.push(QuantumNumbers::sommerfeld(n, p).expect("1 ≤ n_φ ≤ n"));
        }
        for twice in (1..2 * n as i32).step_by(2) {
            let n_phi = Half::from_twice(twice);
            out.push(QuantumNumbers::orbit(Half::integer(n as i32) - n_phi, n_phi).expect("half-step orbit"));
        }
    }
    out
}

fn verify_action(ctx: &Context, tol: f64, report: &mut Report) {
    report.input("action tolerance", tol);
    let mut worst: Option<f64> = Some(0.0);
    for z in [1u32, 2] {
        for qn in action_states(6) {
            let target = f64::from(qn.n()) * ctx.consts.h;
            let residual = action_integral(&qn, z, &ctx.consts, tol / 100.0)
                .ok()
                .map(|j| rel_diff(j, target));
            worst = match (worst, residual) {
                (Some(w), Some(r)) => Some(w.max(r)),
                _ => None,
            };
            let label = format!("action Z={z} n={} n_r={} n_φ={}", qn.n(), qn.n_r(), qn.n_phi());
            report.diagnose(Diagnostic::new(label, residual, tol));
        }
    }
    match worst {
        Some(w) => report.row("action max residual", w, "1"),
        None => report.error("action: quadrature did not converge"),
    }
}

/// Geometries used by the dipole-flux suite: focal parameter `a0` at the
/// fixed eccentricities, then seeded random focal parameters, eccentricities
/// and moments.
pub fn dipole_geometries(consts: &PhysicalConstants) -> Vec<(OrbitGeometry, f64)> {
    let mu_p = 1.410_606_797_36e-26;
    let mut out: Vec<_> = ECCENTRICITIES
        .iter()
        .map(|&e| (OrbitGeometry::from_focal(consts.a0, e).expect("valid eccentricity"), mu_p))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for _ in 0..RANDOM_GEOMETRIES {
        let p = consts.a0 * 10f64.powf(rng.gen_range(-1.0..2.0));
        let eps = rng.gen_range(0.0..0.95);
        let mu = 10f64.powf(rng.gen_range(-28.0..-22.0));
        out.push((OrbitGeometry::from_focal(p, eps).expect("valid random geometry"), mu));
    }
    out
}

fn verify_dipole(ctx: &Context, tol: f64, report: &mut Report) {
    report.input("dipole-flux tolerance", tol);
    let geoms = dipole_geometries(&ctx.consts);
    let mut random_worst: Option<f64> = Some(0.0);
    for (i, (g, mu)) in geoms.iter().enumerate() {
        let closed = dipole_focus_flux(g, *mu, &ctx.consts).map(|f| f.total);
        let oracle = dipole_flux_oracle(g, *mu, &ctx.consts, tol / 100.0);
        let residual = match (&closed, &oracle) {
            (Ok(c), Ok(o)) => Some(rel_diff(*c, *o)),
            _ => None,
        };
        if i < ECCENTRICITIES.len() {
            let label = format!("dipole flux ε={}", ECCENTRICITIES[i]);
            report.compare(Comparison::new(
                label.clone(),
                closed.ok(),
                oracle.ok(),
                RatioOf::ModelOverReference,
                "Wb",
            ));
            report.diagnose(Diagnostic::new(label, residual, tol));
        } else {
            random_worst = match (random_worst, residual) {
                (Some(w), Some(r)) => Some(w.max(r)),
                _ => None,
            };
        }
    }
    report.diagnose(Diagnostic::new(
        format!("dipole flux, {RANDOM_GEOMETRIES} random geometries (worst)"),
        random_worst,
        tol,
    ));
}

/// Least-squares slope of `log|W(Φ) - W(0) - ΔW_lin(Φ)|` against `log Φ`
/// over `Φ ∈ [1e-6, 1e-3] Φ0`.
pub fn remainder_exponent(qn: &QuantumNumbers, z: u32, consts: &PhysicalConstants) -> Result<f64> {
    let w0 = energy_exact(qn, z, 0.0, consts)?;
    let points = 13;
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for k in 0..points {
        let phi = consts.flux_quantum * 10f64.powf(-6.0 + 3.0 * k as f64 / (points - 1) as f64);
        let exact = energy_exact(qn, z, phi, consts)?;
        let linear = energy_shift_linear(qn, z, FluxValue::azimuthal(phi, FluxSource::Uniform), consts).value;
        let remainder = (exact - w0 - linear).abs();
        if remainder == 0.0 {
            return Err(Error::NonFinite("remainder vanished"));
        }
        xs.push(phi.ln());
        ys.push(remainder.ln());
    }
    let n = points as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

fn verify_linearization(ctx: &Context, tol: f64, report: &mut Report) -> Result<()> {
    report.input("exponent tolerance", tol);
    for (n, z) in [(1u32, 1u32), (2, 1), (3, 2)] {
        let qn = QuantumNumbers::sommerfeld(n, 1)?;
        let exponent = remainder_exponent(&qn, z, &ctx.consts);
        if let Ok(p) = exponent {
            report.row(format!("remainder exponent n={n} Z={z}"), p, "1");
        }
        report.diagnose(Diagnostic::new(
            format!("remainder exponent n={n} Z={z}"),
            exponent.ok().map(|p| (p - 2.0).abs()),
            tol,
        ));
        let a = linear_coefficient(n, z, &ctx.consts);
        let b = linear_coefficient_from_bases(n, z, &ctx.consts);
        report.diagnose(Diagnostic::new(
            format!("coefficient forms n={n} Z={z}"),
            Some(rel_diff(a, b)),
            COEFFICIENT_TOL,
        ));
    }
    Ok(())
}
