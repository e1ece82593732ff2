//! Spectral asymmetry and sensitivity metrics.
//!
//! The central quantity is the mirror asymmetry of a spectrum: the total
//! variation distance between an area-normalized intensity and its
//! reflection about its own centroid. It is zero for any even-symmetric
//! spectrum, bounded by one, and invariant under translation and
//! reflection of the input.

use crate::error::{Error, Result};
use crate::grid::{AmplitudeSpectrum, IntensitySpectrum};
use crate::parallel;

/// Rescales an intensity spectrum to unit area (trapezoid integral = 1).
pub fn area_normalize(s: &IntensitySpectrum) -> Result<IntensitySpectrum> {
    let total = s.total();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::ZeroMass(total));
    }
    IntensitySpectrum::new(s.grid, s.values.iter().map(|v| v / total).collect())
}

/// First moment of the area-normalized spectrum.
pub fn centroid(s: &IntensitySpectrum) -> Result<f64> {
    let total = s.total();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::ZeroMass(total));
    }
    let weighted: Vec<f64> = s
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| s.grid.sample(i) * v)
        .collect();
    Ok(s.grid.integrate(&weighted) / total)
}

/// Root-mean-square width about the centroid of the area-normalized
/// spectrum.
pub fn standard_deviation(s: &IntensitySpectrum) -> Result<f64> {
    let total = s.total();
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::ZeroMass(total));
    }
    let mu = centroid(s)?;
    let weighted: Vec<f64> = s
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d = s.grid.sample(i) - mu;
            d * d * v
        })
        .collect();
    Ok((s.grid.integrate(&weighted) / total).sqrt())
}

/// Total variation distance between the area-normalized spectrum and its
/// mirror image about the spectral centroid:
/// `T = 1/2 * integral |S(w) - S(2 mu - w)| dw`, in `[0, 1]`.
///
/// The mirror is evaluated by linear interpolation and is zero outside the
/// grid, so mass reflected past an edge counts fully toward the distance.
pub fn tvd_asymmetry(s: &IntensitySpectrum) -> Result<f64> {
    let norm = area_normalize(s)?;
    let mu = centroid(&norm)?;
    let diff: Vec<f64> = (0..norm.grid.count())
        .map(|i| {
            let w = norm.grid.sample(i);
            let mirrored = norm.grid.interpolate(&norm.values, 2.0 * mu - w);
            (norm.values[i] - mirrored).abs()
        })
        .collect();
    Ok(0.5 * norm.grid.integrate(&diff))
}

/// Leading-order sensitivity coefficients of a real nonnegative amplitude
/// profile: `C1 = integral A / integral A^2` governs field-convolution
/// response and `C2 = integral A^3 / integral A^4` governs
/// intensity-convolution response to a small additive distortion.
///
/// Tail warning: for slowly decaying profiles (Lorentzian `1/w^2` tails)
/// the `C1` numerator converges like `1/span`, so narrow grids understate
/// it; use [`power_integral_ratios`] with a wide virtual grid when the
/// closed-form value is wanted.
pub fn lineshape_coefficients(a: &AmplitudeSpectrum) -> Result<(f64, f64)> {
    let vals = a.require_real_nonnegative()?;
    let pow = |k: u32| -> Vec<f64> { vals.iter().map(|v| v.powi(k as i32)).collect() };
    let i1 = a.grid.integrate(&pow(1));
    let i2 = a.grid.integrate(&pow(2));
    let i3 = a.grid.integrate(&pow(3));
    let i4 = a.grid.integrate(&pow(4));
    let usable = |v: f64| v.is_finite() && v > 0.0;
    if !usable(i2) || !usable(i4) || !i1.is_finite() || !i3.is_finite() {
        return Err(Error::ZeroMass(i2.min(i4)));
    }
    Ok((i1 / i2, i3 / i4))
}

const QUADRATURE_CHUNK: usize = 1 << 16;

/// Reference virtual-grid half span for profiles with `1/w^2` amplitude
/// tails. The tail past `X` biases `C1` by `-4/(pi X)`, about `3e-7` here.
pub const HEAVY_TAIL_HALF_SPAN: f64 = 4194304.0;

/// Sample count pairing with [`HEAVY_TAIL_HALF_SPAN`] for a step of `1/4`,
/// at which the trapezoid discretization error of every power integral of a
/// unit-width Lorentzian is below `1e-8`.
pub const HEAVY_TAIL_COUNT: usize = 33_554_433;

/// Streaming form of [`lineshape_coefficients`] over a virtual uniform grid
/// of `count` samples spanning `center +- half_span`, for profiles given as
/// a function. Nothing is materialized, so spans wide enough to capture
/// `1/w^2` tails to single-float accuracy stay cheap. Chunked accumulation
/// keeps the reduction order fixed, so results are bit-reproducible.
pub fn power_integral_ratios(
    profile: impl Fn(f64) -> f64 + Sync + Send,
    center: f64,
    half_span: f64,
    count: usize,
) -> Result<(f64, f64)> {
    if count < 3 || count.is_multiple_of(2) {
        return Err(Error::InvalidGridCount(count));
    }
    if !half_span.is_finite() || half_span <= 0.0 {
        return Err(Error::InvalidGridSpan(half_span));
    }
    let step = 2.0 * half_span / (count - 1) as f64;
    let mid = (count - 1) / 2;
    let partials = parallel::map_chunks(count, QUADRATURE_CHUNK, |range| {
        let mut acc = [0.0f64; 4];
        for i in range {
            let w = center + (i as f64 - mid as f64) * step;
            let v = profile(w);
            // trapezoid end weights
            let scale = if i == 0 || i == count - 1 { 0.5 } else { 1.0 };
            let v1 = v * scale;
            let v2 = v * v * scale;
            acc[0] += v1;
            acc[1] += v2;
            acc[2] += v1 * v * v;
            acc[3] += v2 * v * v;
        }
        acc
    });
    let mut sums = [0.0f64; 4];
    for p in partials {
        for (s, v) in sums.iter_mut().zip(p) {
            *s += v;
        }
    }
    // the grid step cancels in both ratios
    let usable = |v: f64| v.is_finite() && v > 0.0;
    if !usable(sums[1]) || !usable(sums[3]) {
        return Err(Error::ZeroMass(sums[1].min(sums[3])));
    }
    Ok((sums[0] / sums[1], sums[2] / sums[3]))
}
