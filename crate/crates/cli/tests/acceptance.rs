//! Acceptance run: one pass/fail line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fluxatom::coupling::{allowed_f, hyperfine_a, hyperfine_full, lande_g, paschen_back, zeeman_anomalous, Branch};
use fluxatom::effects_simple::{ground_state_preset, hyperfine_simplified_interval, spin_orbit_simplified};
use fluxatom::energy::{energy_exact, energy_shift_linear, linear_coefficient, linear_coefficient_from_bases};
use fluxatom::flux::{dipole_flux_oracle, dipole_focus_flux, FluxSource};
use fluxatom::orbits::{action_integral, OrbitGeometry};
use fluxatom::reference::{standard_hyperfine_a, standard_spin_orbit, Registry};
use fluxatom::{FluxValue, Half, Level, PhysicalConstants, QuantumNumbers};
use fluxatom_cli::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H_HFS_MHZ: f64 = 1_420.405_751_766_7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn k() -> PhysicalConstants {
    PhysicalConstants::codata2018()
}

fn qn(s: &str) -> QuantumNumbers {
    QuantumNumbers::from_level(s.parse().unwrap()).unwrap()
}

fn e<T: std::fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

fn within(what: &str, value: f64, limit: f64) -> Result<(), String> {
    if value <= limit {
        Ok(())
    } else {
        Err(format!("{what} = {value:.3e} exceeds {limit:.1e}"))
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            return Err(format!("{detail}; took {elapsed:.2?}, limit {limit:.0?}"));
        }
    }
    Ok(format!("{detail} ({elapsed:.2?})"))
}

fn lande() -> Outcome {
    let mut worst = 0.0f64;
    for l in 0..=10u32 {
        for twice_j in [2 * l as i32 - 1, 2 * l as i32 + 1] {
            if twice_j <= 0 {
                continue;
            }
            let j = Half::from_twice(twice_j);
            let jj = j.value() * (j.value() + 1.0);
            let lf = f64::from(l);
            let closed = 1.0 + (jj + 0.75 - lf * (lf + 1.0)) / (2.0 * jj);
            worst = worst.max(rel(lande_g(l, Half::HALF, j).map_err(e)?, closed));
        }
    }
    within("max relative deviation", worst, 1e-12)?;
    for (l, twice_j, g) in [(0, 1, 2.0), (1, 3, 4.0 / 3.0), (1, 1, 2.0 / 3.0)] {
        let got = lande_g(l, Half::HALF, Half::from_twice(twice_j)).map_err(e)?;
        within(&format!("g(l={l}, 2j={twice_j})"), rel(got, g), 1e-12)?;
    }
    Ok(format!("max rel {worst:.1e}, spot values 2, 4/3, 2/3"))
}

fn dipole() -> Outcome {
    let k = k();
    let mut cases: Vec<(OrbitGeometry, f64)> = [0.0, 0.3, 0.6, 0.9, 0.95]
        .iter()
        .map(|&eps| (OrbitGeometry::from_focal(k.a0, eps).unwrap(), 1.41e-26))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20_180_520);
    for _ in 0..100 {
        let a = k.a0 * 10f64.powf(rng.gen_range(-1.0..2.0));
        let b = a * rng.gen_range(0.05..=1.0);
        let mu = rng.gen_range(-1e-23..1e-23);
        cases.push((OrbitGeometry::from_axes(a, b).unwrap(), mu));
    }
    let mut worst = 0.0f64;
    for (g, mu) in &cases {
        // μ0 μ / (2p), interior sign
        let closed = -k.mu0 * mu / (2.0 * g.b * g.b / g.a);
        let lib = dipole_focus_flux(g, *mu, &k).map_err(e)?.total;
        let oracle = dipole_flux_oracle(g, *mu, &k, 1e-9).map_err(e)?;
        worst = worst.max(rel(lib, closed)).max(rel(closed, oracle));
    }
    within("max relative deviation", worst, 1e-6)?;
    Ok(format!("{} geometries, max rel {worst:.1e}", cases.len()))
}

fn action() -> Outcome {
    let k = k();
    let mut worst = 0.0f64;
    let mut count = 0;
    for z in [1u32, 2] {
        for n in 1..=6u32 {
            let mut states: Vec<QuantumNumbers> = (1..=n).map(|p| QuantumNumbers::sommerfeld(n, p).unwrap()).collect();
            for twice in (1..2 * n as i32).step_by(2) {
                let n_phi = Half::from_twice(twice);
                states.push(QuantumNumbers::orbit(Half::integer(n as i32) - n_phi, n_phi).unwrap());
            }
            for s in states {
                let j = action_integral(&s, z, &k, 1e-12).map_err(e)?;
                worst = worst.max(rel(j, f64::from(n) * k.h));
                count += 1;
            }
        }
    }
    within("max relative deviation", worst, 1e-9)?;
    Ok(format!("{count} orbits, max rel {worst:.1e}"))
}

fn hydrogen_hfs() -> Outcome {
    let k = k();
    let reg = Registry::builtin();
    let h1 = reg.species("H-1").map_err(e)?;
    let (ground, cos_beta) = ground_state_preset();
    if ground.n_phi() != Half::HALF || cos_beta != 2.0 / 3.0 {
        return Err("ground-state preset is not n_φ = 1/2, cos β = 2/3".into());
    }
    let simple = hyperfine_simplified_interval(&ground, h1, cos_beta, &k).map_err(e)? / k.h / 1e6;
    let s = qn("1s1/2");
    let (_, branch) = hyperfine_a(&s, h1, &k).map_err(e)?;
    if branch != Branch::Plus {
        return Err("1s1/2 did not select the + branch".into());
    }
    let fs = allowed_f(s.j().unwrap(), h1.spin);
    let lo = hyperfine_full(&s, h1, fs[0], &k).map_err(e)?.shift.value;
    let hi = hyperfine_full(&s, h1, fs[fs.len() - 1], &k).map_err(e)?.shift.value;
    let full = (hi - lo) / k.h / 1e6;
    within("simple model relative error", rel(simple, H_HFS_MHZ), 0.01)?;
    within("full model relative error", rel(full, H_HFS_MHZ), 0.01)?;
    Ok(format!("simple {simple:.3} MHz, full {full:.3} MHz vs {H_HFS_MHZ} MHz"))
}

fn zeeman() -> Outcome {
    let k = k();
    let s = qn("1s1/2");
    let up = zeeman_anomalous(&s.with_m_j(Half::HALF).unwrap(), 1, 1.0, &k).map_err(e)?.value / k.e;
    let down = zeeman_anomalous(&s.with_m_j(-Half::HALF).unwrap(), 1, 1.0, &k).map_err(e)?.value / k.e;
    within("+1/2 deviation", rel(up, 5.7884e-5), 1e-4)?;
    within("-1/2 deviation", rel(down, -5.7884e-5), 1e-4)?;

    let mut pb_worst = 0.0f64;
    let mut cog_worst = 0.0f64;
    for l in 0..=6u32 {
        for twice_j in [2 * l as i32 - 1, 2 * l as i32 + 1] {
            if twice_j <= 0 {
                continue;
            }
            let j = Half::from_twice(twice_j);
            let state = QuantumNumbers::from_level(Level::new(l + 1, l, j).unwrap()).unwrap();
            for b in [0.1, 1.0, 12.5] {
                let weak: Vec<f64> = (-j)
                    .range_to(j)
                    .map(|m| zeeman_anomalous(&state.with_m_j(m).unwrap(), 1, b, &k).unwrap().value)
                    .collect();
                let mut strong = Vec::new();
                for m_l in -(l as i32)..=l as i32 {
                    for m_s in [-Half::HALF, Half::HALF] {
                        let v = paschen_back(&state.with_decoupled(m_l, m_s).unwrap(), 1, b, &k).map_err(e)?.value;
                        let expected = k.mu_b * (2.0 * m_s.value() + f64::from(m_l)) * b;
                        if expected == 0.0 {
                            if v != 0.0 {
                                return Err(format!("Paschen-Back m_l={m_l} m_s={m_s} gave {v:e}, expected 0"));
                            }
                        } else {
                            pb_worst = pb_worst.max(rel(v, expected));
                        }
                        strong.push(v);
                    }
                }
                for set in [&weak, &strong] {
                    let largest = set.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                    cog_worst = cog_worst.max(set.iter().sum::<f64>().abs() / largest);
                }
            }
        }
    }
    within("Paschen-Back deviation", pb_worst, 4.0 * f64::EPSILON)?;
    within("centre of gravity", cog_worst, 1e-15)?;
    Ok(format!(
        "±{:.5e} eV, Paschen-Back max rel {pb_worst:.1e}, centre of gravity {cog_worst:.1e}",
        up
    ))
}

fn linearization() -> Outcome {
    let k = k();
    let mut report = Vec::new();
    for (n, z) in [(1u32, 1u32), (2, 1), (4, 3)] {
        let s = QuantumNumbers::sommerfeld(n, 1).unwrap();
        let w0 = energy_exact(&s, z, 0.0, &k).map_err(e)?;
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for i in 0..=30 {
            let phi = k.flux_quantum * 10f64.powf(-6.0 + 0.1 * f64::from(i));
            let exact = energy_exact(&s, z, phi, &k).map_err(e)?;
            let lin = energy_shift_linear(&s, z, FluxValue::azimuthal(phi, FluxSource::Uniform), &k).value;
            xs.push(phi.ln());
            ys.push((exact - w0 - lin).abs().ln());
        }
        let m = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        within(&format!("|exponent - 2| for n={n} Z={z}"), (slope - 2.0).abs(), 0.05)?;
        within(
            "coefficient forms",
            rel(linear_coefficient(n, z, &k), linear_coefficient_from_bases(n, z, &k)),
            1e-9,
        )?;
        report.push(format!("{slope:.4}"));
    }
    Ok(format!("exponents {}", report.join(", ")))
}

fn deviations() -> Outcome {
    let k = k();
    let reg = Registry::builtin();
    let h1 = reg.species("H-1").map_err(e)?;
    for l in 1..=5u32 {
        for (twice_j, num, den) in [(2 * l as i32 + 1, 1, 1), (2 * l as i32 - 1, 2 * l + 1, 2 * l - 1)] {
            let s = QuantumNumbers::from_level(Level::new(l + 1, l, Half::from_twice(twice_j)).unwrap()).unwrap();
            let (model, _) = hyperfine_a(&s, h1, &k).map_err(e)?;
            let standard = standard_hyperfine_a(&s, h1, &k).map_err(e)?;
            // exact rational ratio: model · den == standard · num up to rounding
            within(
                &format!("hyperfine ratio l={l} 2j={twice_j}"),
                rel(model * f64::from(den), standard * f64::from(num)),
                4.0 * f64::EPSILON,
            )?;
        }
    }
    let p32 = qn("2p3/2");
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let z = rng.gen_range(1..=10u32);
        let n_phi = Half::from_twice(rng.gen_range(1..=3));
        let cos_beta: f64 = rng.gen_range(0.05..=1.0);
        let orbit = QuantumNumbers::orbit(Half::integer(2) - n_phi, n_phi).unwrap();
        let model = spin_orbit_simplified(&orbit, z, cos_beta, &k).map_err(e)?.magnitude();
        let standard = standard_spin_orbit(&p32, z, &k).map_err(e)?;
        let predicted = f64::from(z) * n_phi.value().powi(2) / (12.0 * cos_beta);
        worst = worst.max(rel(standard / model, predicted));
    }
    within("spin-orbit ratio deviation", worst, 1e-12)?;
    Ok(format!("hyperfine ratios exact for l = 1..5, spin-orbit max rel {worst:.1e}"))
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fluxatom");
    for suite in ["action", "dipole-flux", "linearization", "all"] {
        let out = Command::new(bin).args(["verify", suite, "--format", "json"]).output().map_err(e)?;
        if out.status.code() != Some(0) {
            return Err(format!("verify {suite} exited with {:?}", out.status.code()));
        }
        let text = String::from_utf8(out.stdout).map_err(e)?;
        let report = Report::from_json(&text).map_err(e)?;
        if report.diagnostics.is_empty() || !report.passed() {
            return Err(format!("verify {suite} reported failures"));
        }
    }
    let commands: [&[&str]; 5] = [
        &["levels", "--z", "2", "--n-max", "5"],
        &["zeeman", "3d5/2", "--B", "0.7", "--regime", "strong"],
        &["hyperfine", "1s1/2", "H-1", "--model", "full"],
        &["spin-orbit", "2p3/2", "--cos-beta", "0.5"],
        &["verify", "all"],
    ];
    for args in commands {
        let run = || Command::new(bin).args(args).args(["--format", "json"]).output();
        let first = String::from_utf8(run().map_err(e)?.stdout).map_err(e)?;
        let second = String::from_utf8(run().map_err(e)?.stdout).map_err(e)?;
        if first != second {
            return Err(format!("{args:?} is not deterministic"));
        }
        if !Report::roundtrips(&first) {
            return Err(format!("{args:?} does not round-trip"));
        }
    }
    let fail = Command::new(bin).args(["verify", "action", "--tol", "1e-300"]).output().map_err(e)?;
    if fail.status.code() != Some(2) {
        return Err(format!("impossible tolerance exited with {:?}", fail.status.code()));
    }
    Ok("verify suites exit 0, five reports round-trip bit-for-bit".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Landé equivalence", Some(Duration::from_secs(1)), lande),
        ("dipole-flux oracle", Some(Duration::from_secs(10)), dipole),
        ("action quantization", None, action),
        ("hydrogen hyperfine interval", None, hydrogen_hfs),
        ("Zeeman / Paschen-Back numerics", None, zeeman),
        ("linearization", None, linearization),
        ("documented deviations", None, deviations),
        ("CLI contract", None, cli_contract),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        match timed(limit, check) {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
