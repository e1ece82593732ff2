//! Perturbation-strength sweep of SHG spectral asymmetry.
//!
//! For each scheduled perturbation the pump, its coherent SHG, and its
//! incoherent SHG are scored by mirror asymmetry (TVD); spotlighted
//! settings additionally get their full spectra emitted for plotting.

use crate::config::{config_error, usage, CliResult, ScenarioConfig};
use crate::output::Output;
use biphoton::grid::FrequencyGrid;
use biphoton::lineshape::{
    apply_perturbation, gaussian_profile, PerturbationKind, PerturbationSpec,
};
use biphoton::shg::{asymmetry_sweep, coherent_shg, incoherent_shg};
use std::path::PathBuf;

pub fn run(cfg: &ScenarioConfig, out: Option<PathBuf>) -> CliResult<()> {
    let started = std::time::Instant::now();
    let sigma = cfg.f64_or("pump_sigma", 1.0)?;
    let span = cfg.f64_or("pump_span", 16.0)?;
    let count = cfg.usize_or("grid_count", 1025)?;
    let kind = match cfg.str_or("kind", "tilt").as_str() {
        "tilt" => PerturbationKind::LinearTilt,
        "offset" => PerturbationKind::OffsetGaussian,
        other => {
            return Err(usage(format!(
                "unknown perturbation kind '{other}' (expected 'tilt' or 'offset')"
            )))
        }
    };
    let epsilons = cfg.f64_list_or("epsilon_schedule", &[0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3])?;
    let offsets = match kind {
        PerturbationKind::LinearTilt => vec![0.0],
        PerturbationKind::OffsetGaussian => {
            cfg.f64_list_or("offset_schedule", &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0])?
        }
    };
    let spotlight = cfg.pair_list_or("spotlight", &[(0.3, 0.0)])?;
    for &e in epsilons.iter().chain(spotlight.iter().map(|(e, _)| e)) {
        if !(e.is_finite() && e >= 0.0) {
            return Err(usage(format!("perturbation strength {e} must be >= 0")));
        }
    }

    let grid = FrequencyGrid::new(0.0, span, count).map_err(config_error)?;
    let base = gaussian_profile(grid, 0.0, sigma).map_err(config_error)?;

    let schedule: Vec<(f64, f64)> = epsilons
        .iter()
        .flat_map(|&e| offsets.iter().map(move |&b| (e, b)))
        .collect();
    let records = asymmetry_sweep(&base, 0.0, sigma, kind, &schedule)?;

    let eps_col: Vec<f64> = records.iter().map(|r| r.epsilon).collect();
    let b_col: Vec<f64> = records.iter().map(|r| r.offset_b).collect();
    let pump_col: Vec<f64> = records.iter().map(|r| r.tvd_pump).collect();
    let coh_col: Vec<f64> = records.iter().map(|r| r.tvd_coherent).collect();
    let inc_col: Vec<f64> = records.iter().map(|r| r.tvd_incoherent).collect();
    let csv = biphoton::io::curve_csv_string(
        &[
            "epsilon",
            "offset_b",
            "tvd_pump",
            "tvd_coherent",
            "tvd_incoherent",
        ],
        &[&eps_col, &b_col, &pump_col, &coh_col, &inc_col],
    )?;

    let mut output = Output::new(out, "shg-sweep", cfg.used_parameters())?;
    output.emit_primary("sweep.csv", &csv)?;

    for (k, &(epsilon, offset_b)) in spotlight.iter().enumerate() {
        let spec = match kind {
            PerturbationKind::LinearTilt => PerturbationSpec::tilt(epsilon),
            PerturbationKind::OffsetGaussian => PerturbationSpec::offset(epsilon, offset_b),
        };
        let pump = apply_perturbation(&base, spec, 0.0, sigma)?;
        let coherent = coherent_shg(&pump);
        let incoherent = incoherent_shg(&pump);

        let pump_freq: Vec<f64> = grid.samples();
        let pump_intensity = pump.intensity().values;
        let pump_csv = biphoton::io::curve_csv_string(
            &["frequency", "intensity"],
            &[&pump_freq, &pump_intensity],
        )?;
        output.emit(&format!("spotlight_{k}_pump.csv"), &pump_csv)?;

        let shg_grid = coherent.intensity.grid;
        let shg_freq: Vec<f64> = shg_grid.samples();
        let shg_csv = biphoton::io::curve_csv_string(
            &["frequency", "coherent_intensity", "incoherent_intensity"],
            &[
                &shg_freq,
                &coherent.intensity.values,
                &incoherent.intensity.values,
            ],
        )?;
        output.emit(&format!("spotlight_{k}_shg.csv"), &shg_csv)?;
    }

    output.finalize()?;
    eprintln!(
        "{} sweep rows, {} spotlight spectra in {:.2?}",
        records.len(),
        spotlight.len(),
        started.elapsed()
    );
    Ok(())
}
