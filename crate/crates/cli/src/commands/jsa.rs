//! Joint spectral amplitude construction, decomposition, and purity.

use crate::config::{CliResult, ScenarioConfig};
use crate::output::Output;
use crate::scenario;
use biphoton::hom::marginal_bandwidth;
use biphoton::jsa::{decompose, jsi, schmidt_purity};
use std::path::PathBuf;

pub fn run(cfg: &ScenarioConfig, out: Option<PathBuf>) -> CliResult<()> {
    let started = std::time::Instant::now();
    let pair = scenario::build_pair(cfg)?;
    let parts = decompose(&pair)?;
    let purity = schmidt_purity(&pair)?;
    let bandwidth = marginal_bandwidth(&pair)?;
    let intensity = jsi(&pair);

    let matrix_csv = biphoton::io::matrix_csv_string(&intensity.values, pair.grid_i.count())?;
    let axis: Vec<f64> = pair.grid_s.samples();
    let axis_csv = biphoton::io::curve_csv_string(&["frequency"], &[&axis])?;
    let summary = serde_json::json!({
        "gamma": parts.gamma,
        "symmetric_weight": parts.symmetric_weight,
        "purity": purity,
        "marginal_bandwidth": bandwidth,
        "norm_sqr": pair.norm_sqr(),
    });
    let mut summary_text = serde_json::to_string(&summary).expect("summary is always serializable");
    summary_text.push('\n');

    let mut output = Output::new(out, "jsa", cfg.used_parameters())?;
    output.emit_primary("jsi.csv", &matrix_csv)?;
    output.emit("axis.csv", &axis_csv)?;
    output.emit("summary.json", &summary_text)?;
    output.finalize()?;

    eprintln!(
        "gamma {:.6e}  symmetric weight {:.6}  purity {:.6}  marginal bandwidth {:.4} ({:.2?})",
        parts.gamma,
        parts.symmetric_weight,
        purity,
        bandwidth,
        started.elapsed()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn cfg(pairs: &[(&str, &str)]) -> ScenarioConfig {
        ScenarioConfig::from_layers(vec![pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_string()))
            .collect::<BTreeMap<_, _>>()])
    }

    #[test]
    fn emits_matrix_axis_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let c = cfg(&[("grid_count", "65")]);
        run(&c, Some(dir.path().to_path_buf())).unwrap();

        let matrix = std::fs::read_to_string(dir.path().join("jsi.csv")).unwrap();
        assert_eq!(matrix.lines().count(), 65);
        assert_eq!(matrix.lines().next().unwrap().split(',').count(), 65);

        let summary: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("summary.json")).unwrap(),
        )
        .unwrap();
        assert!(summary["gamma"].as_f64().unwrap() < 1e-10);
        assert!((summary["norm_sqr"].as_f64().unwrap() - 1.0).abs() < 1e-10);

        let manifest = biphoton::io::read_manifest(&dir.path().join("manifest.json")).unwrap();
        assert!(manifest.complete);
        for key in ["kappa_s", "kappa_i", "length_scale", "center_s", "center_i"] {
            assert!(manifest.parameters.contains_key(key), "{key}");
        }
    }
}
