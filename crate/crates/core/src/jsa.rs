//! Joint spectral amplitude of a downconverted photon pair.
//!
//! The pair amplitude on a signal/idler grid is the product of the pump
//! amplitude at the sum frequency and a sinc phase-matching factor from a
//! first-order group-delay expansion:
//!
//! `f(ws, wi) = E_p(ws + wi) * sinc((ks dws + ki dwi) L / 2)`
//!
//! normalized to unit discrete L2 norm. Joint-grid quadrature uses the
//! plain product-measure sum (`sum * hs * hi`), which makes the
//! normalization, the antisymmetric weight gamma, and the zero-delay
//! coincidence probability tie together as exact algebraic identities
//! rather than up-to-edge-term approximations.
//!
//! Any pump spectral phase enters only through the sum frequency, so it
//! multiplies `f` by a unit-modulus factor symmetric under signal/idler
//! exchange; every exchange observable (joint intensity, coincidence dip)
//! is invariant to it. That invariance is exact here because the phase is
//! applied pointwise at `ws + wi` on the joint grid.

use crate::error::{Error, Result};
use crate::grid::{AmplitudeSpectrum, FrequencyGrid, IntensitySpectrum};
use crate::parallel;
use crate::sinc;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// First-order phase-matching expansion: `ks` and `ki` are group-delay
/// mismatch slopes against the pump, `length_scale` the interaction length.
/// The sinc argument is `(ks (ws - center_s) + ki (wi - center_i)) L / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatchingModel {
    pub kappa_s: f64,
    pub kappa_i: f64,
    pub length_scale: f64,
    pub center_s: f64,
    pub center_i: f64,
}

impl PhaseMatchingModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.length_scale.is_finite() && self.length_scale > 0.0) {
            return Err(Error::InvalidLengthScale(self.length_scale));
        }
        for v in [self.kappa_s, self.kappa_i, self.center_s, self.center_i] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "phase-matching parameters must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn argument(&self, ws: f64, wi: f64) -> f64 {
        0.5 * self.length_scale
            * (self.kappa_s * (ws - self.center_s) + self.kappa_i * (wi - self.center_i))
    }
}

/// A pump spectral phase `phi(w)`, stored as samples on a grid and
/// evaluated by linear interpolation (zero outside). Evaluating at the sum
/// frequency makes it a pure function of `ws + wi`, hence exchange-exact.
#[derive(Debug, Clone, PartialEq)]
pub enum PumpPhase {
    /// No spectral phase.
    None,
    /// Piecewise-linear phase through per-sample values.
    Samples { grid: FrequencyGrid, phi: Vec<f64> },
}

impl PumpPhase {
    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> f64) -> Self {
        let phi = (0..grid.count()).map(|i| f(grid.sample(i))).collect();
        PumpPhase::Samples { grid, phi }
    }

    /// Independent uniform `[0, 2 pi)` draws per grid sample.
    pub fn random(grid: FrequencyGrid, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = (0..grid.count())
            .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
            .collect();
        PumpPhase::Samples { grid, phi }
    }

    fn factor(&self, sum_frequency: f64) -> Complex64 {
        match self {
            PumpPhase::None => Complex64::new(1.0, 0.0),
            PumpPhase::Samples { grid, phi } => {
                let p = grid.interpolate(phi, sum_frequency);
                Complex64::new(p.cos(), p.sin())
            }
        }
    }
}

/// A photon-pair amplitude sampled on a signal x idler grid, row-major in
/// the signal index, with unit discrete L2 norm:
/// `sum |f|^2 * hs * hi = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralAmplitude {
    pub grid_s: FrequencyGrid,
    pub grid_i: FrequencyGrid,
    pub values: Vec<Complex64>,
}

impl JointSpectralAmplitude {
    /// Normalizes arbitrary sampled values into a joint amplitude.
    pub fn from_values(
        grid_s: FrequencyGrid,
        grid_i: FrequencyGrid,
        mut values: Vec<Complex64>,
    ) -> Result<Self> {
        if values.len() != grid_s.count() * grid_i.count() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                grid: grid_s.count() * grid_i.count(),
            });
        }
        let norm_sqr: f64 =
            values.iter().map(|v| v.norm_sqr()).sum::<f64>() * grid_s.step() * grid_i.step();
        if !(norm_sqr.is_finite() && norm_sqr > 0.0) {
            return Err(Error::EmptyJointAmplitude);
        }
        let inv = 1.0 / norm_sqr.sqrt();
        for v in &mut values {
            *v *= inv;
        }
        Ok(Self {
            grid_s,
            grid_i,
            values,
        })
    }

    /// Samples `f(ws, wi)` on the joint grid and normalizes.
    pub fn from_fn(
        grid_s: FrequencyGrid,
        grid_i: FrequencyGrid,
        f: impl Fn(f64, f64) -> Complex64 + Sync + Send,
    ) -> Result<Self> {
        let ni = grid_i.count();
        let rows = parallel::map_indexed(grid_s.count(), |i| {
            let ws = grid_s.sample(i);
            (0..ni).map(|j| f(ws, grid_i.sample(j))).collect::<Vec<_>>()
        });
        Self::from_values(grid_s, grid_i, rows.concat())
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid_i.count() + j]
    }

    /// Discrete L2 norm under the product measure; 1 by construction.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()
            * self.grid_s.step()
            * self.grid_i.step()
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.grid_s != self.grid_i {
            return Err(Error::NonSquareJointGrid);
        }
        Ok(self.grid_s.count())
    }

    /// Marginal signal intensity `S(ws) = sum_i |f|^2 * hi`, area one under
    /// the product measure.
    pub fn signal_marginal(&self) -> IntensitySpectrum {
        let ni = self.grid_i.count();
        let hi = self.grid_i.step();
        let values = (0..self.grid_s.count())
            .map(|i| (0..ni).map(|j| self.value(i, j).norm_sqr()).sum::<f64>() * hi)
            .collect();
        IntensitySpectrum {
            grid: self.grid_s,
            values,
        }
    }
}

/// Builds the pair amplitude from a pump spectrum and a phase-matching
/// model. The pump is sampled at `ws + wi` by linear interpolation and is
/// zero outside its grid; errors if the sum-frequency range misses the pump
/// support entirely, or if nothing survives the weighting.
pub fn build_jsa(
    pump: &AmplitudeSpectrum,
    pm: &PhaseMatchingModel,
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
) -> Result<JointSpectralAmplitude> {
    build_jsa_with_phase(pump, pm, grid_s, grid_i, &PumpPhase::None)
}

/// [`build_jsa`] with an extra pump spectral phase applied at the sum
/// frequency. The joint intensity and every exchange observable are
/// invariant to the phase; only the complex amplitude changes.
pub fn build_jsa_with_phase(
    pump: &AmplitudeSpectrum,
    pm: &PhaseMatchingModel,
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
    phase: &PumpPhase,
) -> Result<JointSpectralAmplitude> {
    pm.validate()?;
    let sum_lo = grid_s.first() + grid_i.first();
    let sum_hi = grid_s.last() + grid_i.last();
    if sum_hi < pump.grid.first() || sum_lo > pump.grid.last() {
        return Err(Error::PumpOutOfRange {
            lo: sum_lo,
            hi: sum_hi,
        });
    }
    let ni = grid_i.count();
    let rows = parallel::map_indexed(grid_s.count(), |i| {
        let ws = grid_s.sample(i);
        (0..ni)
            .map(|j| {
                let wi = grid_i.sample(j);
                let s = ws + wi;
                pump.value_at(s) * phase.factor(s) * sinc(pm.argument(ws, wi))
            })
            .collect::<Vec<_>>()
    });
    JointSpectralAmplitude::from_values(grid_s, grid_i, rows.concat())
}

/// Seeded random smooth amplitude: a complex mixture of the first `modes`
/// Hermite-Gaussian mode products with coefficients drawn uniformly from
/// the unit square. Generic mixtures carry both exchange-symmetric and
/// antisymmetric weight, which makes them useful fixtures for identity
/// checks that must hold for arbitrary normalized amplitudes.
pub fn random_mode_mixture(
    grid: FrequencyGrid,
    modes: usize,
    seed: u64,
) -> Result<JointSpectralAmplitude> {
    if modes == 0 {
        return Err(Error::InvalidInput("need at least one mode".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeff: Vec<Complex64> = (0..modes * modes)
        .map(|_| {
            Complex64::new(
                2.0 * rng.random::<f64>() - 1.0,
                2.0 * rng.random::<f64>() - 1.0,
            )
        })
        .collect();
    let n = grid.count();
    // orthonormal ladder phi_k(w) = H_k(w) e^{-w^2/2} / sqrt(2^k k! sqrt(pi)),
    // evaluated by the Hermite recurrence H_{k+1} = 2w H_k - 2k H_{k-1}
    let mut norms = Vec::with_capacity(modes);
    let mut norm_sq = std::f64::consts::PI.sqrt();
    for k in 0..modes {
        norms.push(norm_sq.sqrt());
        norm_sq *= 2.0 * (k + 1) as f64;
    }
    let mut mode_values = vec![vec![0.0_f64; n]; modes];
    for (i, &w) in grid.samples().iter().enumerate() {
        let g = (-0.5 * w * w).exp();
        let mut h_prev = 0.0;
        let mut h = 1.0;
        for k in 0..modes {
            mode_values[k][i] = h * g / norms[k];
            let h_next = 2.0 * w * h - 2.0 * k as f64 * h_prev;
            h_prev = h;
            h = h_next;
        }
    }
    let rows = parallel::map_indexed(n, |i| {
        (0..n)
            .map(|j| {
                let mut v = Complex64::new(0.0, 0.0);
                for p in 0..modes {
                    for q in 0..modes {
                        v += coeff[p * modes + q] * (mode_values[p][i] * mode_values[q][j]);
                    }
                }
                v
            })
            .collect::<Vec<_>>()
    });
    JointSpectralAmplitude::from_values(grid, grid, rows.concat())
}

/// Joint spectral intensity `|f|^2`; integrates to one under the product
/// measure.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectralIntensity {
    pub grid_s: FrequencyGrid,
    pub grid_i: FrequencyGrid,
    pub values: Vec<f64>,
}

impl JointSpectralIntensity {
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid_s.step() * self.grid_i.step()
    }
}

pub fn jsi(jsa: &JointSpectralAmplitude) -> JointSpectralIntensity {
    JointSpectralIntensity {
        grid_s: jsa.grid_s,
        grid_i: jsa.grid_i,
        values: jsa.values.iter().map(|v| v.norm_sqr()).collect(),
    }
}

/// Exchange decomposition `f = fs + fa` into symmetric and antisymmetric
/// parts, with their product-measure weights. `gamma` (the antisymmetric
/// weight) is the zero-delay coincidence probability.
#[derive(Debug, Clone)]
pub struct JsaDecomposition {
    pub symmetric: Vec<Complex64>,
    pub antisymmetric: Vec<Complex64>,
    pub symmetric_weight: f64,
    pub gamma: f64,
}

/// Splits a square-grid amplitude into exchange-symmetric and
/// antisymmetric parts.
pub fn decompose(jsa: &JointSpectralAmplitude) -> Result<JsaDecomposition> {
    let n = jsa.require_square()?;
    let h2 = jsa.grid_s.step() * jsa.grid_i.step();
    let mut symmetric = vec![Complex64::new(0.0, 0.0); n * n];
    let mut antisymmetric = vec![Complex64::new(0.0, 0.0); n * n];
    let mut ws = 0.0;
    let mut wa = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = jsa.values[i * n + j];
            let b = jsa.values[j * n + i];
            let s = 0.5 * (a + b);
            let t = 0.5 * (a - b);
            symmetric[i * n + j] = s;
            antisymmetric[i * n + j] = t;
            ws += s.norm_sqr();
            wa += t.norm_sqr();
        }
    }
    Ok(JsaDecomposition {
        symmetric,
        antisymmetric,
        symmetric_weight: ws * h2,
        gamma: wa * h2,
    })
}

/// Spectral purity `sum lambda_k^2` of the reduced single-photon state,
/// from the singular values of the grid-step-weighted kernel
/// `M = f * sqrt(hs hi)`: `lambda_k = s_k^2 / sum s^2`.
///
/// Lies in `[1 / min(Ns, Ni), 1]`; 1 exactly for separable amplitudes.
pub fn schmidt_purity(jsa: &JointSpectralAmplitude) -> Result<f64> {
    let ns = jsa.grid_s.count();
    let ni = jsa.grid_i.count();
    let w = (jsa.grid_s.step() * jsa.grid_i.step()).sqrt();
    let m = DMatrix::from_fn(ns, ni, |i, j| jsa.values[i * ni + j] * w);
    let svd = m.svd(false, false);
    let mut sum2 = 0.0;
    let mut sum4 = 0.0;
    for s in svd.singular_values.iter() {
        let q = s * s;
        sum2 += q;
        sum4 += q * q;
    }
    if !sum2.is_finite() || sum2 <= 0.0 {
        return Err(Error::EmptyJointAmplitude);
    }
    Ok(sum4 / (sum2 * sum2))
}
