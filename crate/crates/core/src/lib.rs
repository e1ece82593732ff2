//! Spectral simulation of photon-pair generation under coherent and
//! temporally incoherent pumping.
//!
//! The crate models the pipeline from a pump amplitude spectrum through
//! second-harmonic generation (field self-convolution for a coherent pump,
//! intensity self-convolution for an incoherent one), the construction of a
//! joint spectral amplitude for the downconverted pair, and the
//! Hong-Ou-Mandel coincidence dip with its Fisher-information delay
//! sensitivity. All frequencies are dimensionless offsets in units of the
//! reference pump width.

pub mod error;
pub mod grid;
pub mod hom;
pub mod io;
pub mod jsa;
pub mod lineshape;
pub mod metrics;
pub mod parallel;
pub mod shg;

pub use error::{Error, Result};
pub use grid::{AmplitudeSpectrum, FrequencyGrid, IntensitySpectrum};

/// Normalized `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::sinc;

    #[test]
    fn sinc_limits() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(std::f64::consts::PI).abs() < 1e-15);
        assert!((sinc(1e-9) - 1.0).abs() < 1e-17);
        assert!((sinc(2.0) - 2.0f64.sin() / 2.0).abs() < 1e-16);
    }
}
