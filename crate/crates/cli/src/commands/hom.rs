//! Hong-Ou-Mandel dip with visibility, Fisher information, and the
//! single-event Cramer-Rao bound.

use crate::config::{CliError, CliResult, ScenarioConfig};
use crate::output::Output;
use crate::scenario;
use biphoton::hom::{
    default_delay_half_span, fisher_information, hom_curve, visibility, DEFAULT_DELAY_POINTS,
};
use biphoton::jsa::decompose;
use std::path::PathBuf;

pub fn run(cfg: &ScenarioConfig, out: Option<PathBuf>) -> CliResult<()> {
    let started = std::time::Instant::now();
    let pair = scenario::build_pair(cfg)?;
    // 0 means auto: ten inverse marginal bandwidths
    let mut half_span = cfg.f64_or("delay_half_span", 0.0)?;
    if half_span <= 0.0 {
        half_span = default_delay_half_span(&pair)?;
    }
    let points = cfg.usize_or("delay_points", DEFAULT_DELAY_POINTS)?;

    let curve = hom_curve(&pair, -half_span, half_span, points)?;
    let vis = visibility(&curve).map_err(|e| match e {
        biphoton::Error::DipAtWindowEdge => CliError::Run(format!(
            "{e}; raise delay_half_span above {half_span} and rerun"
        )),
        other => other.into(),
    })?;
    let fisher = fisher_information(&curve)?;
    let gamma = decompose(&pair)?.gamma;

    let csv = biphoton::io::curve_csv_string(
        &["delay", "probability", "fisher_information", "crb_single"],
        &[
            &curve.delays,
            &curve.probabilities,
            &fisher.information,
            &fisher.crb_single,
        ],
    )?;
    let summary = serde_json::json!({
        "visibility": vis,
        "gamma": gamma,
        "delay_half_span": half_span,
        "delay_points": points,
        "baseline": curve.baseline,
        "degenerate_fisher": fisher.degenerate,
    });
    let mut summary_text = serde_json::to_string(&summary).expect("summary is always serializable");
    summary_text.push('\n');

    let mut output = Output::new(out, "hom", cfg.used_parameters())?;
    output.emit_primary("hom.csv", &csv)?;
    output.emit("summary.json", &summary_text)?;
    output.finalize()?;

    eprintln!(
        "visibility {vis:.6}  gamma {gamma:.6e}  window +/-{half_span:.4} x {points} ({:.2?})",
        started.elapsed()
    );
    Ok(())
}
