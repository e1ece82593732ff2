//! Shared construction of the photon-pair amplitude from resolved
//! parameters, used by the jsa and hom commands.

use crate::config::{config_error, usage, CliResult, ScenarioConfig};
use biphoton::grid::FrequencyGrid;
use biphoton::jsa::{build_jsa, JointSpectralAmplitude, PhaseMatchingModel};
use biphoton::lineshape::gaussian_profile;
use num_complex::Complex64;

pub fn joint_grid(cfg: &ScenarioConfig) -> CliResult<FrequencyGrid> {
    let span = cfg.f64_or("joint_span", 16.0)?;
    let count = cfg.usize_or("grid_count", 257)?;
    FrequencyGrid::new(0.0, span, count).map_err(config_error)
}

pub fn pump_grid(cfg: &ScenarioConfig) -> CliResult<FrequencyGrid> {
    let span = cfg.f64_or("pump_span", 32.0)?;
    let count = cfg.usize_or("pump_count", 4097)?;
    FrequencyGrid::new(0.0, span, count).map_err(config_error)
}

pub fn phase_matching(cfg: &ScenarioConfig) -> CliResult<PhaseMatchingModel> {
    let pm = PhaseMatchingModel {
        kappa_s: cfg.f64_or("kappa_s", 1.0)?,
        kappa_i: cfg.f64_or("kappa_i", -1.0)?,
        length_scale: cfg.f64_or("length_scale", 1.0)?,
        center_s: cfg.f64_or("center_s", 0.0)?,
        center_i: cfg.f64_or("center_i", 0.0)?,
    };
    pm.validate().map_err(config_error)?;
    Ok(pm)
}

/// Builds the pair amplitude the configuration describes: either a pump
/// spectrum filtered by sinc phase matching, or a two-mode construction
/// with a pinned antisymmetric weight.
pub fn build_pair(cfg: &ScenarioConfig) -> CliResult<JointSpectralAmplitude> {
    let grid = joint_grid(cfg)?;
    match cfg.str_or("construction", "pump-pm").as_str() {
        "pump-pm" => {
            let sigma = cfg.f64_or("pump_sigma", 1.0)?;
            let pump = gaussian_profile(pump_grid(cfg)?, 0.0, sigma).map_err(config_error)?;
            let pm = phase_matching(cfg)?;
            build_jsa(&pump, &pm, grid, grid).map_err(config_error)
        }
        "two-mode" => {
            let weight = cfg.f64_or("antisymmetric_weight", 0.1)?;
            if !(0.0..=1.0).contains(&weight) {
                return Err(usage(format!(
                    "antisymmetric_weight {weight} must lie in [0, 1]"
                )));
            }
            two_mode_pair(grid, weight)
        }
        other => Err(usage(format!(
            "unknown construction '{other}' (expected 'pump-pm' or 'two-mode')"
        ))),
    }
}

/// Orthonormal-mode superposition
/// `sqrt(1 - w) phi0 phi0 + sqrt(w/2) (phi0 phi1 - phi1 phi0)`
/// whose antisymmetric weight is exactly `w`, so the zero-delay
/// coincidence probability is pinned by construction.
fn two_mode_pair(grid: FrequencyGrid, weight: f64) -> CliResult<JointSpectralAmplitude> {
    let norm = std::f64::consts::PI.powf(-0.25);
    let mode0 = move |w: f64| norm * (-0.5 * w * w).exp();
    let mode1 = move |w: f64| std::f64::consts::SQRT_2 * w * mode0(w);
    let sym = (1.0 - weight).sqrt();
    let anti = (weight / 2.0).sqrt();
    JointSpectralAmplitude::from_fn(grid, grid, move |a, b| {
        Complex64::new(
            sym * mode0(a) * mode0(b) + anti * (mode0(a) * mode1(b) - mode1(a) * mode0(b)),
            0.0,
        )
    })
    .map_err(config_error)
}
