//! Second-harmonic spectral transfer for coherent and incoherent pumps.
//!
//! A coherent pump upconverts through the field self-convolution
//! `E(W) = integral A(w) A(W - w) dw`, so spectral amplitudes interfere,
//! signs included. A temporally incoherent pump scrambles spectral phases
//! faster than the nonlinear medium can track, leaving the intensity
//! self-convolution `I(W) = integral |A(w)|^2 |A(W - w)|^2 dw`. The
//! Monte-Carlo estimator below draws independent uniform phases per sample
//! and realization and averages coherent upconversions; its ensemble mean
//! reproduces the intensity-convolution line shape. The absolute scale is
//! `2h` times the deterministic convolution (bunching factor of two times
//! the per-sample phase-coherence cell measure `h`), so comparisons between
//! the two are made on area-normalized spectra.

use crate::error::{Error, Result};
use crate::grid::{AmplitudeSpectrum, FrequencyGrid, IntensitySpectrum};
use crate::lineshape::{apply_perturbation, PerturbationKind, PerturbationSpec};
use crate::metrics::{lineshape_coefficients, tvd_asymmetry};
use crate::parallel;
use crate::sinc;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An upconverted spectrum on the doubled frequency axis. The intensity is
/// always the squared modulus of the amplitude.
#[derive(Debug, Clone)]
pub struct ShgResult {
    pub amplitude: AmplitudeSpectrum,
    pub intensity: IntensitySpectrum,
}

impl ShgResult {
    fn from_amplitude(amplitude: AmplitudeSpectrum) -> Self {
        let intensity = amplitude.intensity();
        Self {
            amplitude,
            intensity,
        }
    }

    fn from_intensity(intensity: IntensitySpectrum) -> Self {
        let amplitude = AmplitudeSpectrum {
            grid: intensity.grid,
            // zero-phase amplitude: an incoherent source defines no stable
            // output phase, only a spectral density
            values: intensity
                .values
                .iter()
                .map(|&v| Complex64::new(v.sqrt(), 0.0))
                .collect(),
        };
        Self {
            amplitude,
            intensity,
        }
    }
}

/// Discrete linear self-convolution scaled by the grid step: output sample
/// `k` on the doubled axis is `h * sum_j v[j] v[k - j]`.
fn self_convolve(grid: FrequencyGrid, values: &[Complex64]) -> Vec<Complex64> {
    let n = grid.count();
    let h = grid.step();
    parallel::map_indexed(2 * n - 1, |k| {
        let lo = k.saturating_sub(n - 1);
        let hi = k.min(n - 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in lo..=hi {
            acc += values[j] * values[k - j];
        }
        acc * h
    })
}

fn self_convolve_real(grid: FrequencyGrid, values: &[f64]) -> Vec<f64> {
    let n = grid.count();
    let h = grid.step();
    parallel::map_indexed(2 * n - 1, |k| {
        let lo = k.saturating_sub(n - 1);
        let hi = k.min(n - 1);
        let mut acc = 0.0;
        for j in lo..=hi {
            acc += values[j] * values[k - j];
        }
        acc * h
    })
}

/// Upconverts a coherent pump: the field self-convolution on the doubled
/// grid. Spectral phase and sign structure of the pump interfere here.
pub fn coherent_shg(pump: &AmplitudeSpectrum) -> ShgResult {
    let out = AmplitudeSpectrum {
        grid: pump.grid.doubled(),
        values: self_convolve(pump.grid, &pump.values),
    };
    ShgResult::from_amplitude(out)
}

/// Upconverts a temporally incoherent pump: the intensity self-convolution
/// on the doubled grid. Only `|A|^2` enters, so pump phase and sign
/// structure are erased.
pub fn incoherent_shg(pump: &AmplitudeSpectrum) -> ShgResult {
    let intensity: Vec<f64> = pump.values.iter().map(|v| v.norm_sqr()).collect();
    let out = IntensitySpectrum {
        grid: pump.grid.doubled(),
        values: self_convolve_real(pump.grid, &intensity),
    };
    ShgResult::from_intensity(out)
}

const MC_CHUNK: usize = 16;

/// Random-phase Monte-Carlo model of incoherent upconversion: each
/// realization multiplies every pump sample by an independent uniform
/// phase, upconverts coherently, and the realization intensities are
/// averaged.
///
/// Realization `m` draws from stream `m` of a counter-based generator
/// seeded with `seed`, so results are bit-reproducible for a given
/// `(seed, realizations)` regardless of thread count, and realization
/// subsets are stable when `realizations` grows.
pub fn monte_carlo_incoherent_shg(
    pump: &AmplitudeSpectrum,
    realizations: usize,
    seed: u64,
) -> Result<ShgResult> {
    if realizations < 1 {
        return Err(Error::TooFewRealizations {
            min: 1,
            got: realizations,
        });
    }
    let n = pump.grid.count();
    let out_len = 2 * n - 1;
    let partials = parallel::map_chunks(realizations, MC_CHUNK, |range| {
        let mut acc = vec![0.0f64; out_len];
        let mut phased = vec![Complex64::new(0.0, 0.0); n];
        for m in range {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(m as u64);
            for (dst, src) in phased.iter_mut().zip(&pump.values) {
                let phi = rng.random::<f64>() * std::f64::consts::TAU;
                *dst = src * Complex64::new(phi.cos(), phi.sin());
            }
            let field = self_convolve(pump.grid, &phased);
            for (a, f) in acc.iter_mut().zip(&field) {
                *a += f.norm_sqr();
            }
        }
        acc
    });
    let mut mean = vec![0.0f64; out_len];
    for p in partials {
        for (m, v) in mean.iter_mut().zip(p) {
            *m += v;
        }
    }
    let scale = 1.0 / realizations as f64;
    for v in &mut mean {
        *v *= scale;
    }
    let intensity = IntensitySpectrum {
        grid: pump.grid.doubled(),
        values: mean,
    };
    Ok(ShgResult::from_intensity(intensity))
}

/// Normalized phase-matching acceptance around `center`:
/// `sinc^2((W - center) / bandwidth)`, unit peak, first null at
/// `center + pi * bandwidth`.
pub fn phase_matching_envelope(
    grid: FrequencyGrid,
    center: f64,
    bandwidth: f64,
) -> Result<IntensitySpectrum> {
    if !(bandwidth.is_finite() && bandwidth > 0.0) {
        return Err(Error::InvalidWidth(bandwidth));
    }
    let values = (0..grid.count())
        .map(|i| {
            let s = sinc((grid.sample(i) - center) / bandwidth);
            s * s
        })
        .collect();
    IntensitySpectrum::new(grid, values)
}

/// Leading-order output asymmetry per unit additive pump distortion of
/// height `h0` and strength `epsilon`: `R = 2 epsilon h0 C` with the
/// field-convolution coefficient `C1` for a coherent pump and the
/// intensity-convolution coefficient `C2` for an incoherent one. Their
/// ratio `C2/C1 < 1` for unimodal profiles is the leading-order robustness
/// advantage of incoherent pumping.
pub fn sensitivity_ratios(pump: &AmplitudeSpectrum, epsilon: f64, h0: f64) -> Result<(f64, f64)> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "perturbation strength must be finite and nonnegative, got {epsilon}"
        )));
    }
    if !(h0.is_finite() && h0 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "distortion height must be positive and finite, got {h0}"
        )));
    }
    let (c1, c2) = lineshape_coefficients(pump)?;
    Ok((2.0 * epsilon * h0 * c1, 2.0 * epsilon * h0 * c2))
}

/// One sweep point: mirror-asymmetry of the pump intensity and of both
/// upconverted outputs for a given perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub epsilon: f64,
    pub offset_b: f64,
    pub tvd_pump: f64,
    pub tvd_coherent: f64,
    pub tvd_incoherent: f64,
}

/// Sweeps perturbation strength over `schedule` (pairs of `epsilon` and
/// `offset_b`), comparing pump asymmetry against coherent and incoherent
/// upconversion asymmetry. Points are independent and evaluated in
/// parallel; record order follows the schedule.
pub fn asymmetry_sweep(
    base: &AmplitudeSpectrum,
    center: f64,
    width: f64,
    kind: PerturbationKind,
    schedule: &[(f64, f64)],
) -> Result<Vec<SweepRecord>> {
    let results = parallel::map_indexed(schedule.len(), |i| {
        let (epsilon, offset_b) = schedule[i];
        let spec = PerturbationSpec {
            kind,
            epsilon,
            offset_b,
        };
        let pump = apply_perturbation(base, spec, center, width)?;
        let tvd_pump = tvd_asymmetry(&pump.intensity())?;
        let tvd_coherent = tvd_asymmetry(&coherent_shg(&pump).intensity)?;
        let tvd_incoherent = tvd_asymmetry(&incoherent_shg(&pump).intensity)?;
        Ok(SweepRecord {
            epsilon,
            offset_b,
            tvd_pump,
            tvd_coherent,
            tvd_incoherent,
        })
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineshape::gaussian_profile;

    fn default_grid() -> FrequencyGrid {
        FrequencyGrid::new(0.0, 16.0, 1025).unwrap()
    }

    fn unit_gaussian() -> AmplitudeSpectrum {
        gaussian_profile(default_grid(), 0.0, 1.0).unwrap()
    }

    /// Largest relative deviation from `expected`, over samples where
    /// `expected` is at least `floor` times its own peak. Below the floor
    /// the discrete convolution's truncated tails dominate and relative
    /// comparison is meaningless.
    fn max_rel_err(actual: &[f64], expected: &[f64], floor: f64) -> f64 {
        let peak = expected.iter().cloned().fold(0.0, f64::max);
        actual
            .iter()
            .zip(expected)
            .filter(|(_, &e)| e.abs() >= floor * peak)
            .map(|(&a, &e)| ((a - e) / e).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn coherent_gaussian_matches_field_convolution_closed_form() {
        // (A * A)(W) = sigma sqrt(pi) exp(-W^2 / 4 sigma^2) for sigma = 1
        let out = coherent_shg(&unit_gaussian());
        let g = out.amplitude.grid;
        assert_eq!(g.center(), 0.0);
        assert_eq!(g.span(), 32.0);
        assert_eq!(g.count(), 2049);
        let actual: Vec<f64> = out.amplitude.values.iter().map(|v| v.re).collect();
        let expected: Vec<f64> = g
            .samples()
            .iter()
            .map(|w| std::f64::consts::PI.sqrt() * (-w * w / 4.0).exp())
            .collect();
        let imag_max = out
            .amplitude
            .values
            .iter()
            .map(|v| v.im.abs())
            .fold(0.0, f64::max);
        assert_eq!(imag_max, 0.0);
        let err = max_rel_err(&actual, &expected, 1e-8);
        assert!(err < 1e-6, "max relative error {err}");
    }

    #[test]
    fn incoherent_gaussian_matches_intensity_convolution_closed_form() {
        // (|A|^2 * |A|^2)(W) = sqrt(pi/2) exp(-W^2 / 2) for sigma = 1
        let out = incoherent_shg(&unit_gaussian());
        let g = out.intensity.grid;
        let expected: Vec<f64> = g
            .samples()
            .iter()
            .map(|w| (std::f64::consts::PI / 2.0).sqrt() * (-w * w / 2.0).exp())
            .collect();
        let err = max_rel_err(&out.intensity.values, &expected, 1e-8);
        assert!(err < 1e-6, "max relative error {err}");
    }

    #[test]
    fn incoherent_output_width_equals_pump_amplitude_width() {
        // the intensity convolution of exp(-w^2/sigma^2) kernels has
        // standard deviation exactly sigma
        let out = incoherent_shg(&unit_gaussian());
        let g = out.intensity.grid;
        let total = out.intensity.total();
        let second: Vec<f64> = out
            .intensity
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| g.sample(i) * g.sample(i) * v)
            .collect();
        let std = (g.integrate(&second) / total).sqrt();
        assert!((std - 1.0).abs() < 1e-3, "std {std}");
    }

    #[test]
    fn intensity_is_squared_amplitude() {
        let pump = unit_gaussian();
        for out in [coherent_shg(&pump), incoherent_shg(&pump)] {
            for (a, i) in out.amplitude.values.iter().zip(&out.intensity.values) {
                let q = a.norm_sqr();
                assert!((q - i).abs() <= 1e-14 * i.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn energy_bookkeeping_of_intensity_convolution() {
        // integral of the output intensity equals the squared integral of
        // the pump intensity, for any pump with tails inside the grid
        let pump = unit_gaussian();
        let tilted = apply_perturbation(&pump, PerturbationSpec::tilt(0.25), 0.0, 1.0).unwrap();
        for p in [pump, tilted] {
            let out = incoherent_shg(&p);
            let lhs = out.intensity.total();
            let rhs = p.intensity().total().powi(2);
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-8,
                "energy mismatch {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn coherent_output_scales_quadratically_with_pump_amplitude() {
        let pump = unit_gaussian();
        let doubled =
            AmplitudeSpectrum::new(pump.grid, pump.values.iter().map(|v| v * 2.0).collect())
                .unwrap();
        let a = coherent_shg(&pump);
        let b = coherent_shg(&doubled);
        for (x, y) in a.amplitude.values.iter().zip(&b.amplitude.values) {
            assert!((y - x * 4.0).norm() <= 1e-12 * x.norm().max(1e-300));
        }
    }

    #[test]
    fn monte_carlo_is_bit_reproducible_per_seed() {
        let pump = gaussian_profile(FrequencyGrid::new(0.0, 16.0, 129).unwrap(), 0.0, 1.0).unwrap();
        let a = monte_carlo_incoherent_shg(&pump, 32, 7).unwrap();
        let b = monte_carlo_incoherent_shg(&pump, 32, 7).unwrap();
        assert_eq!(a.intensity.values, b.intensity.values);
        let c = monte_carlo_incoherent_shg(&pump, 32, 8).unwrap();
        assert_ne!(a.intensity.values, c.intensity.values);
    }

    #[test]
    fn monte_carlo_rejects_zero_realizations() {
        let pump = unit_gaussian();
        assert!(matches!(
            monte_carlo_incoherent_shg(&pump, 0, 1),
            Err(Error::TooFewRealizations { .. })
        ));
    }

    #[test]
    fn monte_carlo_mean_scale_is_twice_the_step_times_the_convolution() {
        // pairwise path doubling: <|sum A e^{i phi}|^2> keeps the j <-> k-j
        // exchange partner of every term, so the mean is 2h * (|A|^2 * |A|^2)
        // minus an O(h^2) diagonal term
        let grid = FrequencyGrid::new(0.0, 16.0, 129).unwrap();
        let pump = gaussian_profile(grid, 0.0, 1.0).unwrap();
        let mc = monte_carlo_incoherent_shg(&pump, 400, 42).unwrap();
        let det = incoherent_shg(&pump);
        let mid = mc.intensity.grid.mid();
        let ratio = mc.intensity.values[mid] / det.intensity.values[mid];
        let expected = 2.0 * grid.step();
        assert!(
            (ratio / expected - 1.0).abs() < 0.15,
            "peak ratio {ratio}, expected about {expected}"
        );
    }

    #[test]
    fn monte_carlo_shape_converges_to_intensity_convolution() {
        let grid = FrequencyGrid::new(0.0, 16.0, 129).unwrap();
        let pump = gaussian_profile(grid, 0.0, 1.0).unwrap();
        let det = incoherent_shg(&pump);
        let dist = |m: usize| {
            let mc = monte_carlo_incoherent_shg(&pump, m, 42).unwrap();
            normalized_l2_distance(&mc.intensity, &det.intensity)
        };
        let d100 = dist(100);
        let d1600 = dist(1600);
        assert!(d1600 < d100, "no convergence: {d100} -> {d1600}");
        assert!(d1600 < 0.05, "distance at 1600 realizations: {d1600}");
    }

    /// Relative L2 distance between area-normalized intensities on a shared
    /// grid; test-local oracle helper.
    fn normalized_l2_distance(a: &IntensitySpectrum, b: &IntensitySpectrum) -> f64 {
        let ta = a.total();
        let tb = b.total();
        let num: f64 = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| (x / ta - y / tb).powi(2))
            .sum();
        let den: f64 = b.values.iter().map(|&y| (y / tb).powi(2)).sum();
        (num / den).sqrt()
    }

    #[test]
    fn phase_matching_peak_and_first_null() {
        let g = default_grid();
        // bandwidth 4/pi puts the first null exactly on the sample at 4
        let b = 4.0 / std::f64::consts::PI;
        let env = phase_matching_envelope(g, 0.0, b).unwrap();
        assert_eq!(env.values[g.mid()], 1.0);
        let null_idx = g.mid() + (4.0 / g.step()) as usize;
        assert_eq!(g.sample(null_idx), 4.0);
        assert!(env.values[null_idx] < 1e-30);
        assert!(phase_matching_envelope(g, 0.0, -1.0).is_err());
    }

    #[test]
    fn sensitivity_ratio_is_coefficient_ratio_and_h0_free() {
        let pump = unit_gaussian();
        let (rc, ri) = sensitivity_ratios(&pump, 0.1, 1.0).unwrap();
        assert!((ri / rc - (2.0f64 / 3.0).sqrt()).abs() < 1e-9);
        let (rc2, ri2) = sensitivity_ratios(&pump, 0.1, 5.0).unwrap();
        assert!((rc2 / rc - 5.0).abs() < 1e-12);
        assert!((ri2 / ri2.max(0.0) - 1.0).abs() < 1e-12);
        assert!((ri2 / ri - 5.0).abs() < 1e-12);
        assert!(sensitivity_ratios(&pump, -0.1, 1.0).is_err());
        assert!(sensitivity_ratios(&pump, 0.1, 0.0).is_err());
    }

    #[test]
    fn sweep_orderings_match_the_asymmetry_transfer_picture() {
        let base = unit_gaussian();
        let schedule: Vec<(f64, f64)> = [0.05, 0.3].iter().map(|&e| (e, 0.0)).collect();
        let recs =
            asymmetry_sweep(&base, 0.0, 1.0, PerturbationKind::LinearTilt, &schedule).unwrap();
        // small tilt: both upconverted outputs are more symmetric than the pump
        assert!(recs[0].tvd_coherent < recs[0].tvd_pump);
        assert!(recs[0].tvd_incoherent < recs[0].tvd_pump);
        // large tilt: the signed field convolution amplifies the distortion,
        // the intensity convolution keeps suppressing it
        assert!(recs[1].tvd_incoherent < recs[1].tvd_coherent);
    }
}
