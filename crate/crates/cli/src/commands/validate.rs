//! Numerical self-checks: exact identities and the Monte-Carlo oracle.
//!
//! Five checks run in a fixed order; the report is machine-readable JSON
//! and the exit code is 0 only if every check passes. The checks are the
//! same identities the unit suite pins, run at production sizes:
//!
//! 1. normalization - the constructed pair amplitude has unit L2 norm;
//! 2. zero-delay-antisymmetric-weight - P(0) equals the antisymmetric
//!    weight for seeded random amplitudes;
//! 3. pump-phase-invariance - a random pump spectral phase moves no point
//!    of the coincidence curve;
//! 4. shg-energy-bookkeeping - incoherent SHG conserves squared pump
//!    power;
//! 5. monte-carlo-convergence - the random-phase ensemble mean approaches
//!    the intensity convolution, error shrinking along the schedule.

use crate::config::{usage, CliError, CliResult, ScenarioConfig};
use crate::output::Output;
use biphoton::grid::FrequencyGrid;
use biphoton::hom::{coincidence_probability, default_delay_half_span, hom_curve};
use biphoton::jsa::{
    build_jsa, build_jsa_with_phase, decompose, random_mode_mixture, PhaseMatchingModel, PumpPhase,
};
use biphoton::lineshape::gaussian_profile;
use biphoton::metrics::area_normalize;
use biphoton::shg::{incoherent_shg, monte_carlo_incoherent_shg};
use std::path::PathBuf;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn pm(kappa_i: f64) -> PhaseMatchingModel {
    PhaseMatchingModel {
        kappa_s: 1.0,
        kappa_i,
        length_scale: 1.0,
        center_s: 0.0,
        center_i: 0.0,
    }
}

fn check_normalization(corrupt: bool) -> CliResult<Check> {
    let joint = FrequencyGrid::new(0.0, 16.0, 257).map_err(CliError::from)?;
    let pump_grid = FrequencyGrid::new(0.0, 32.0, 4097).map_err(CliError::from)?;
    let pump = gaussian_profile(pump_grid, 0.0, 1.0)?;
    let mut pair = build_jsa(&pump, &pm(-1.0), joint, joint)?;
    if corrupt {
        for v in &mut pair.values {
            *v *= 1.5;
        }
    }
    let deviation = (pair.norm_sqr() - 1.0).abs();
    Ok(Check {
        name: "normalization",
        passed: deviation < 1e-10,
        detail: format!("unit-norm deviation {deviation:.3e}"),
    })
}

fn check_zero_delay_weight(seed: u64) -> CliResult<Check> {
    let joint = FrequencyGrid::new(0.0, 16.0, 257).map_err(CliError::from)?;
    let mut worst = 0.0_f64;
    for k in 0..5 {
        let pair = random_mode_mixture(joint, 4, seed.wrapping_add(k))?;
        let gamma = decompose(&pair)?.gamma;
        let p0 = coincidence_probability(&pair, 0.0)?;
        worst = worst.max((p0 - gamma).abs());
    }
    Ok(Check {
        name: "zero-delay-antisymmetric-weight",
        passed: worst < 1e-8,
        detail: format!("max |P(0) - gamma| {worst:.3e} over 5 seeded amplitudes"),
    })
}

fn check_phase_invariance(seed: u64) -> CliResult<Check> {
    let joint = FrequencyGrid::new(0.0, 16.0, 257).map_err(CliError::from)?;
    let pump_grid = FrequencyGrid::new(0.0, 32.0, 4097).map_err(CliError::from)?;
    let pump = gaussian_profile(pump_grid, 0.0, 1.0)?;
    let model = pm(-0.3);
    let plain = build_jsa(&pump, &model, joint, joint)?;
    let half = default_delay_half_span(&plain)?;
    let reference = hom_curve(&plain, -half, half, 101)?;
    let mut worst = 0.0_f64;
    for k in 0..3 {
        let phase = PumpPhase::random(pump_grid, seed.wrapping_add(100 + k));
        let phased = build_jsa_with_phase(&pump, &model, joint, joint, &phase)?;
        let curve = hom_curve(&phased, -half, half, 101)?;
        for (a, b) in reference.probabilities.iter().zip(&curve.probabilities) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(Check {
        name: "pump-phase-invariance",
        passed: worst < 1e-12,
        detail: format!("max curve shift {worst:.3e} over 3 random phases"),
    })
}

fn check_energy_bookkeeping() -> CliResult<Check> {
    let grid = FrequencyGrid::new(0.0, 16.0, 1025).map_err(CliError::from)?;
    let pump = gaussian_profile(grid, 0.0, 1.0)?;
    let power = pump.intensity().total();
    let total = incoherent_shg(&pump).intensity.total();
    let deviation = (total / (power * power) - 1.0).abs();
    Ok(Check {
        name: "shg-energy-bookkeeping",
        passed: deviation < 1e-8,
        detail: format!("squared-power deviation {deviation:.3e}"),
    })
}

fn check_monte_carlo(seed: u64, realizations: u64) -> CliResult<Check> {
    let grid = FrequencyGrid::new(0.0, 16.0, 257).map_err(CliError::from)?;
    let pump = gaussian_profile(grid, 0.0, 1.0)?;
    let reference = area_normalize(&incoherent_shg(&pump).intensity)?;
    let reference_norm: f64 = reference.values.iter().map(|v| v * v).sum::<f64>().sqrt();

    let mut schedule = vec![100, 1000, realizations as usize];
    schedule.retain(|&m| m <= realizations as usize);
    schedule.sort_unstable();
    schedule.dedup();

    let mut errors = Vec::new();
    for &m in &schedule {
        let mc = monte_carlo_incoherent_shg(&pump, m, seed)?;
        let shape = area_normalize(&mc.intensity)?;
        let distance: f64 = shape
            .values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        errors.push(distance / reference_norm);
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let final_error = *errors.last().expect("schedule never empty");
    // 5% is the budget at ten thousand realizations; shorter runs get a
    // proportionally looser bound since the ensemble error shrinks as 1/sqrt(M)
    let budget = 0.05 * (10_000.0 / realizations as f64).sqrt();
    let detail = format!(
        "rel L2 error {} at M {}",
        errors
            .iter()
            .map(|e| format!("{e:.4}"))
            .collect::<Vec<_>>()
            .join(" -> "),
        schedule
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(" -> ")
    );
    Ok(Check {
        name: "monte-carlo-convergence",
        passed: monotone && final_error < budget,
        detail,
    })
}

pub fn run(
    cfg: &ScenarioConfig,
    out: Option<PathBuf>,
    corrupt_normalization: bool,
) -> CliResult<()> {
    let started = std::time::Instant::now();
    let seed = cfg.u64_or("seed", 42)?;
    let realizations = cfg.u64_or("realizations", 10_000)?;
    if realizations < 100 {
        return Err(usage(format!(
            "realizations {realizations} is below the minimum of 100"
        )));
    }
    if corrupt_normalization {
        cfg.note("corrupt_normalization", "true");
    }

    let checks = [
        check_normalization(corrupt_normalization)?,
        check_zero_delay_weight(seed)?,
        check_phase_invariance(seed)?,
        check_energy_bookkeeping()?,
        check_monte_carlo(seed, realizations)?,
    ];
    let all_passed = checks.iter().all(|c| c.passed);

    let report_value = serde_json::json!({
        "checks": checks
            .iter()
            .map(|c| serde_json::json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            }))
            .collect::<Vec<_>>(),
        "passed": all_passed,
        "realizations": realizations,
        "seed": seed,
    });
    let mut report = report_value.to_string();
    report.push('\n');

    let mut output = Output::new(out, "validate", cfg.used_parameters())?;
    output.emit_primary("validate.json", &report)?;
    output.finalize()?;

    for c in &checks {
        eprintln!(
            "{} {}: {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    eprintln!("validation finished in {:.2?}", started.elapsed());
    if !all_passed {
        let failing = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect::<Vec<_>>()
            .join(", ");
        return Err(CliError::Run(format!("validation failed: {failing}")));
    }
    Ok(())
}
