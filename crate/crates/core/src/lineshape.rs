//! Pump lineshape profiles and controlled asymmetry perturbations.
//!
//! Profiles are peak-normalized amplitude envelopes: the Gaussian is
//! `exp(-(w - w0)^2 / 2 sigma^2)`, the Lorentzian is the peak-one form
//! `1 / (1 + ((w - w0)/gamma)^2)`, and the Voigt profile is their numerical
//! convolution renormalized to unit peak. Perturbations model asymmetric
//! pump distortions: a linear spectral tilt and an offset satellite
//! Gaussian. Amplitudes are signed; a tilt that crosses zero keeps its
//! negative lobe (a pi phase flip) rather than being clamped, which is what
//! lets downstream field convolutions interfere destructively.

use crate::error::{Error, Result};
use crate::grid::{AmplitudeSpectrum, FrequencyGrid};
use crate::parallel;
use num_complex::Complex64;

fn check_width(w: f64) -> Result<f64> {
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidWidth(w));
    }
    Ok(w)
}

/// Gaussian amplitude envelope with unit peak at `center`.
pub fn gaussian_profile(grid: FrequencyGrid, center: f64, sigma: f64) -> Result<AmplitudeSpectrum> {
    let sigma = check_width(sigma)?;
    Ok(AmplitudeSpectrum::from_fn(grid, |w| {
        let x = (w - center) / sigma;
        Complex64::new((-0.5 * x * x).exp(), 0.0)
    }))
}

/// Lorentzian amplitude envelope with unit peak at `center`.
pub fn lorentzian_profile(
    grid: FrequencyGrid,
    center: f64,
    gamma: f64,
) -> Result<AmplitudeSpectrum> {
    let gamma = check_width(gamma)?;
    Ok(AmplitudeSpectrum::from_fn(grid, |w| {
        let x = (w - center) / gamma;
        Complex64::new(1.0 / (1.0 + x * x), 0.0)
    }))
}

/// Voigt amplitude envelope: the convolution of a Gaussian of width
/// `sigma_g` and a Lorentzian of width `gamma_l`, evaluated on the grid and
/// renormalized to unit peak at `center`.
///
/// The convolution integral runs over the grid's own offset axis, so the
/// grid must extend well past `8 * sigma_g` on each side of its center for
/// the Gaussian kernel to be fully covered.
pub fn voigt_profile(
    grid: FrequencyGrid,
    center: f64,
    sigma_g: f64,
    gamma_l: f64,
) -> Result<AmplitudeSpectrum> {
    let sigma_g = check_width(sigma_g)?;
    let gamma_l = check_width(gamma_l)?;
    let n = grid.count();
    let step = grid.step();
    let mid = grid.mid() as f64;
    // zero-centered integration offsets u_j reuse the grid geometry
    let offsets: Vec<f64> = (0..n).map(|j| (j as f64 - mid) * step).collect();
    let gauss: Vec<f64> = offsets
        .iter()
        .map(|u| {
            let x = u / sigma_g;
            (-0.5 * x * x).exp()
        })
        .collect();
    let raw = parallel::map_indexed(n, |k| {
        let d = grid.sample(k) - center;
        let mut acc = 0.0;
        for (j, u) in offsets.iter().enumerate() {
            let x = (d - u) / gamma_l;
            acc += gauss[j] / (1.0 + x * x);
        }
        acc * step
    });
    let peak = raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() || peak <= 0.0 {
        return Err(Error::ZeroMass(peak));
    }
    let values = raw
        .into_iter()
        .map(|v| Complex64::new(v / peak, 0.0))
        .collect();
    AmplitudeSpectrum::new(grid, values)
}

/// A named amplitude profile family; widths are in grid frequency units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lineshape {
    Gaussian { sigma: f64 },
    Lorentzian { gamma: f64 },
    Voigt { sigma_g: f64, gamma_l: f64 },
}

impl Lineshape {
    pub fn profile(&self, grid: FrequencyGrid, center: f64) -> Result<AmplitudeSpectrum> {
        match *self {
            Lineshape::Gaussian { sigma } => gaussian_profile(grid, center, sigma),
            Lineshape::Lorentzian { gamma } => lorentzian_profile(grid, center, gamma),
            Lineshape::Voigt { sigma_g, gamma_l } => voigt_profile(grid, center, sigma_g, gamma_l),
        }
    }
}

/// Which asymmetry family perturbs the base profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationKind {
    /// Multiply by `1 + epsilon * (w - w0) / sigma`.
    LinearTilt,
    /// Add `epsilon * exp(-(w - w0 - b sigma)^2 / 2 sigma^2)`.
    OffsetGaussian,
}

/// An asymmetry perturbation of strength `epsilon`; `offset_b` is the
/// satellite displacement in units of the base width and is ignored by
/// [`PerturbationKind::LinearTilt`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    pub kind: PerturbationKind,
    pub epsilon: f64,
    pub offset_b: f64,
}

impl PerturbationSpec {
    pub fn tilt(epsilon: f64) -> Self {
        Self {
            kind: PerturbationKind::LinearTilt,
            epsilon,
            offset_b: 0.0,
        }
    }

    pub fn offset(epsilon: f64, offset_b: f64) -> Self {
        Self {
            kind: PerturbationKind::OffsetGaussian,
            epsilon,
            offset_b,
        }
    }
}

/// Applies `spec` to a base profile centered at `center` with width
/// `width`. `epsilon = 0` returns the input unchanged, bit for bit.
pub fn apply_perturbation(
    base: &AmplitudeSpectrum,
    spec: PerturbationSpec,
    center: f64,
    width: f64,
) -> Result<AmplitudeSpectrum> {
    let width = check_width(width)?;
    if !(spec.epsilon.is_finite() && spec.epsilon >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "perturbation strength must be finite and nonnegative, got {}",
            spec.epsilon
        )));
    }
    if !spec.offset_b.is_finite() {
        return Err(Error::InvalidInput(format!(
            "perturbation offset must be finite, got {}",
            spec.offset_b
        )));
    }
    if spec.epsilon == 0.0 {
        return Ok(base.clone());
    }
    let grid = base.grid;
    let values = (0..grid.count())
        .map(|i| {
            let w = grid.sample(i);
            match spec.kind {
                PerturbationKind::LinearTilt => {
                    base.values[i] * (1.0 + spec.epsilon * (w - center) / width)
                }
                PerturbationKind::OffsetGaussian => {
                    let x = (w - center - spec.offset_b * width) / width;
                    base.values[i] + Complex64::new(spec.epsilon * (-0.5 * x * x).exp(), 0.0)
                }
            }
        })
        .collect();
    AmplitudeSpectrum::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_grid() -> FrequencyGrid {
        FrequencyGrid::new(0.0, 16.0, 1025).unwrap()
    }

    #[test]
    fn gaussian_peaks_at_one_and_is_even() {
        let g = default_grid();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        assert_eq!(a.values[g.mid()].re, 1.0);
        for k in 1..=g.mid() {
            assert_eq!(a.values[g.mid() - k], a.values[g.mid() + k]);
        }
    }

    #[test]
    fn lorentzian_half_width_at_half_maximum() {
        let g = default_grid();
        let a = lorentzian_profile(g, 0.0, 1.0).unwrap();
        assert_eq!(a.values[g.mid()].re, 1.0);
        // gamma = 1 lands exactly on a sample of the default grid
        let k = (1.0 / g.step()).round() as usize;
        assert_eq!(g.sample(g.mid() + k), 1.0);
        assert!((a.values[g.mid() + k].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn profiles_reject_nonpositive_widths() {
        let g = default_grid();
        assert!(gaussian_profile(g, 0.0, 0.0).is_err());
        assert!(lorentzian_profile(g, 0.0, -1.0).is_err());
        assert!(voigt_profile(g, 0.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn voigt_narrow_lorentzian_limit_is_gaussian() {
        let g = default_grid();
        let v = voigt_profile(g, 0.0, 1.0, 1e-4).unwrap();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        for (x, y) in v.values.iter().zip(&a.values) {
            assert!((x.re - y.re).abs() < 1e-3);
        }
    }

    #[test]
    fn voigt_narrow_gaussian_limit_is_lorentzian() {
        let g = default_grid();
        let v = voigt_profile(g, 0.0, 1e-4, 1.0).unwrap();
        let a = lorentzian_profile(g, 0.0, 1.0).unwrap();
        for (x, y) in v.values.iter().zip(&a.values) {
            assert!((x.re - y.re).abs() < 1e-3);
        }
    }

    #[test]
    fn voigt_peak_is_one_at_center() {
        let g = default_grid();
        let v = voigt_profile(g, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(v.values[g.mid()].re, 1.0);
    }

    #[test]
    fn zero_strength_perturbation_is_bitwise_identity() {
        let g = default_grid();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        for spec in [
            PerturbationSpec::tilt(0.0),
            PerturbationSpec::offset(0.0, 3.0),
        ] {
            let p = apply_perturbation(&a, spec, 0.0, 1.0).unwrap();
            assert_eq!(p.values, a.values);
        }
    }

    #[test]
    fn tilt_keeps_signed_negative_lobe() {
        let g = default_grid();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        let p = apply_perturbation(&a, PerturbationSpec::tilt(0.3), 0.0, 1.0).unwrap();
        // 1 + 0.3 w crosses zero at w = -10/3; samples below stay negative
        let below: Vec<usize> = (0..g.count())
            .filter(|&i| g.sample(i) < -10.0 / 3.0)
            .collect();
        assert!(!below.is_empty());
        for i in below {
            assert!(p.values[i].re < 0.0);
        }
        assert!(p.values[g.mid()].re == 1.0);
    }

    #[test]
    fn offset_satellite_adds_epsilon_at_its_center() {
        let g = default_grid();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        let p = apply_perturbation(&a, PerturbationSpec::offset(0.15, 3.0), 0.0, 1.0).unwrap();
        // b * sigma = 3 lands exactly on a sample
        let i = (g.mid() as f64 + 3.0 / g.step()) as usize;
        assert_eq!(g.sample(i), 3.0);
        assert!((p.values[i].re - (a.values[i].re + 0.15)).abs() < 1e-15);
    }

    #[test]
    fn perturbation_rejects_negative_strength() {
        let g = default_grid();
        let a = gaussian_profile(g, 0.0, 1.0).unwrap();
        assert!(apply_perturbation(&a, PerturbationSpec::tilt(-0.1), 0.0, 1.0).is_err());
        assert!(apply_perturbation(&a, PerturbationSpec::offset(0.1, f64::NAN), 0.0, 1.0).is_err());
    }
}
