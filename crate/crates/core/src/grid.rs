//! Uniform frequency grids and sampled spectra.
//!
//! All frequencies are dimensionless: they are measured in units of the
//! reference pump width and offset from the reference carrier, so a pump of
//! unit width centered at zero is the canonical input. Grids are uniform,
//! hold an odd number of samples, and always contain their center as an
//! exact sample so that symmetric spectra stay symmetric to the last bit.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A uniform frequency axis: `count` samples centered on `center`,
/// spanning `center - span/2 ..= center + span/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    center: f64,
    span: f64,
    count: usize,
}

impl FrequencyGrid {
    /// Builds a grid. `count` must be odd and at least 3 so the center is a
    /// sample; `span` must be positive and finite.
    pub fn new(center: f64, span: f64, count: usize) -> Result<Self> {
        if count < 3 || count.is_multiple_of(2) {
            return Err(Error::InvalidGridCount(count));
        }
        if !span.is_finite() || span <= 0.0 {
            return Err(Error::InvalidGridSpan(span));
        }
        if !center.is_finite() {
            return Err(Error::InvalidGridSpan(center));
        }
        Ok(Self {
            center,
            span,
            count,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Spacing between adjacent samples.
    pub fn step(&self) -> f64 {
        self.span / (self.count - 1) as f64
    }

    /// Index of the center sample.
    pub fn mid(&self) -> usize {
        (self.count - 1) / 2
    }

    /// The `i`-th sample, computed as an exact offset from the center so
    /// that `sample(mid()) == center` and centered grids negate exactly.
    pub fn sample(&self, i: usize) -> f64 {
        debug_assert!(i < self.count);
        self.center + (i as f64 - self.mid() as f64) * self.step()
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.sample(i)).collect()
    }

    pub fn first(&self) -> f64 {
        self.sample(0)
    }

    pub fn last(&self) -> f64 {
        self.sample(self.count - 1)
    }

    /// Output axis of a self-convolution: doubled center and span, same
    /// step, `2n - 1` samples.
    pub fn doubled(&self) -> Self {
        Self {
            center: 2.0 * self.center,
            span: 2.0 * self.span,
            count: 2 * self.count - 1,
        }
    }

    /// Composite trapezoid integral of sampled `values` over this grid.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.count);
        let inner: f64 = values[1..self.count - 1].iter().sum();
        self.step() * (inner + 0.5 * (values[0] + values[self.count - 1]))
    }

    /// Linear interpolation of `values` at position `x`; zero outside the
    /// grid's support.
    pub fn interpolate<T>(&self, values: &[T], x: f64) -> T
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        debug_assert_eq!(values.len(), self.count);
        let first = self.first();
        if x < first || x > self.last() {
            return T::default();
        }
        let u = (x - first) / self.step();
        let j = (u.floor() as usize).min(self.count - 2);
        let t = u - j as f64;
        values[j] * (1.0 - t) + values[j + 1] * t
    }
}

impl fmt::Display for FrequencyGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "center {}, span {}, {} samples",
            self.center, self.span, self.count
        )
    }
}

/// A complex field amplitude sampled on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSpectrum {
    pub grid: FrequencyGrid,
    pub values: Vec<Complex64>,
}

impl AmplitudeSpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                grid: grid.count(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.count()).map(|i| f(grid.sample(i))).collect();
        Self { grid, values }
    }

    /// Squared modulus per sample, as an intensity spectrum.
    pub fn intensity(&self) -> IntensitySpectrum {
        IntensitySpectrum {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    /// Linear interpolation at `x`; zero outside the grid.
    pub fn value_at(&self, x: f64) -> Complex64 {
        self.grid.interpolate(&self.values, x)
    }

    /// Errors unless every sample is real (zero imaginary part) and
    /// nonnegative; returns the real parts.
    pub fn require_real_nonnegative(&self) -> Result<Vec<f64>> {
        for (i, v) in self.values.iter().enumerate() {
            if v.im != 0.0 || v.re < 0.0 || !v.re.is_finite() {
                return Err(Error::NotRealNonnegative {
                    index: i,
                    value: format!("{} + {}i", v.re, v.im),
                });
            }
        }
        Ok(self.values.iter().map(|v| v.re).collect())
    }
}

/// A real, nonnegative intensity sampled on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct IntensitySpectrum {
    pub grid: FrequencyGrid,
    pub values: Vec<f64>,
}

impl IntensitySpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                grid: grid.count(),
            });
        }
        for (i, &v) in values.iter().enumerate() {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::NegativeIntensity { index: i, value: v });
            }
        }
        Ok(Self { grid, values })
    }

    /// Trapezoid integral of the intensity.
    pub fn total(&self) -> f64 {
        self.grid.integrate(&self.values)
    }
}
