//! Hong-Ou-Mandel interference of a photon pair from its joint amplitude.
//!
//! After a balanced beamsplitter with a relative delay `tau` in one arm,
//! the coincidence probability is
//!
//! `P(tau) = 1/4 * sum |f(w1, w2) - f(w2, w1) e^{-i (w1 - w2) tau}|^2`
//!
//! under the product quadrature measure. At zero delay this reduces
//! algebraically to the antisymmetric weight gamma of the amplitude, and
//! for large delays the oscillatory cross term averages out toward the
//! distinguishable baseline 1/2.
//!
//! The delay resolution of the dip is quantified by the per-event Fisher
//! information `I(tau) = (dP/dtau)^2 / (P (1 - P))`, estimated here from
//! the sampled curve by finite differences; `1 / (n I)` bounds the
//! variance of any unbiased delay estimator over `n` detected events.

use crate::error::{Error, Result};
use crate::jsa::JointSpectralAmplitude;
use crate::metrics;
use crate::parallel;
use num_complex::Complex64;

/// Distinguishable-pair coincidence probability at large delay.
pub const BASELINE: f64 = 0.5;

/// Default number of samples in a delay window.
pub const DEFAULT_DELAY_POINTS: usize = 401;

/// Quadrature-noise margin: probabilities beyond [0, 1] by more than this
/// indicate a broken normalization and raise an error instead of clamping.
const CLAMP_MARGIN: f64 = 1e-10;

/// Probability threshold below which (or above 1 minus which) the Fisher
/// ratio is an indeterminate 0/0 and the local quadratic limit is used.
const FISHER_DEGENERATE_P: f64 = 1e-12;

/// A sampled coincidence-versus-delay curve.
#[derive(Debug, Clone, PartialEq)]
pub struct HomCurve {
    pub delays: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub baseline: f64,
}

impl HomCurve {
    /// Validates lengths, strictly increasing delays, and the probability
    /// range.
    pub fn new(delays: Vec<f64>, probabilities: Vec<f64>) -> Result<Self> {
        let unordered = |w: &[f64]| w[0].is_nan() || w[1].is_nan() || w[0] >= w[1];
        if delays.len() < 2 || delays.windows(2).any(unordered) {
            return Err(Error::BadDelayGrid { min: 2 });
        }
        if probabilities.len() != delays.len() {
            return Err(Error::LengthMismatch {
                values: probabilities.len(),
                grid: delays.len(),
            });
        }
        for (&p, &tau) in probabilities.iter().zip(&delays) {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityOutOfRange {
                    value: p,
                    delay: tau,
                });
            }
        }
        Ok(Self {
            delays,
            probabilities,
            baseline: BASELINE,
        })
    }
}

fn clamp_probability(raw: f64, tau: f64) -> Result<f64> {
    if !raw.is_finite() || !(-CLAMP_MARGIN..=1.0 + CLAMP_MARGIN).contains(&raw) {
        return Err(Error::ProbabilityOutOfRange {
            value: raw,
            delay: tau,
        });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Coincidence probability at a single delay, by direct quadrature of the
/// exchange-interference integrand. The delay phase factors across the
/// double sum as a per-frequency vector, so the cost is one transposed
/// pass over the joint grid.
pub fn coincidence_probability(jsa: &JointSpectralAmplitude, tau: f64) -> Result<f64> {
    let n = jsa.require_square()?;
    let phase: Vec<Complex64> = (0..n)
        .map(|k| {
            let w = jsa.grid_s.sample(k);
            Complex64::new((w * tau).cos(), -(w * tau).sin())
        })
        .collect();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let direct = jsa.values[i * n + j];
            let swapped = jsa.values[j * n + i];
            // e^{-i (w1 - w2) tau} = phase[i] * conj(phase[j])
            let term = direct - swapped * phase[i] * phase[j].conj();
            sum += term.norm_sqr();
        }
    }
    let raw = 0.25 * sum * jsa.grid_s.step() * jsa.grid_i.step();
    clamp_probability(raw, tau)
}

/// Samples the coincidence probability over a uniform delay window,
/// evaluating delays in parallel. The schedule is affine about the window
/// center, so a symmetric window yields exactly mirrored delays with an
/// exact zero at the middle of an odd-count schedule.
pub fn hom_curve(
    jsa: &JointSpectralAmplitude,
    tau_min: f64,
    tau_max: f64,
    n_points: usize,
) -> Result<HomCurve> {
    if n_points < 2 || tau_min.is_nan() || tau_max.is_nan() || tau_min >= tau_max {
        return Err(Error::BadDelayGrid { min: 2 });
    }
    jsa.require_square()?;
    let step = (tau_max - tau_min) / (n_points - 1) as f64;
    let center = 0.5 * (tau_min + tau_max);
    let mid = 0.5 * (n_points - 1) as f64;
    let delays: Vec<f64> = (0..n_points)
        .map(|k| center + (k as f64 - mid) * step)
        .collect();
    let probabilities =
        parallel::map_indexed(n_points, |k| coincidence_probability(jsa, delays[k]))
            .into_iter()
            .collect::<Result<Vec<f64>>>()?;
    HomCurve::new(delays, probabilities)
}

/// Half-width of the default delay window: ten inverse marginal
/// bandwidths, where the bandwidth is the rms width of the signal
/// marginal intensity.
pub fn default_delay_half_span(jsa: &JointSpectralAmplitude) -> Result<f64> {
    let sd = metrics::standard_deviation(&jsa.signal_marginal())?;
    if !(sd.is_finite() && sd > 0.0) {
        return Err(Error::InvalidInput(format!(
            "marginal bandwidth {sd} does not define a delay scale"
        )));
    }
    Ok(10.0 / sd)
}

/// Dip visibility `V = 1 - P_min / baseline = 1 - 2 min P`.
///
/// Errors if the sampled minimum sits at a window endpoint strictly below
/// every interior sample, since the true dip then lies outside the window.
/// A curve that is flat across the window (distinguishable pair) is fine.
pub fn visibility(curve: &HomCurve) -> Result<f64> {
    let p = &curve.probabilities;
    let global_min = p.iter().copied().fold(f64::INFINITY, f64::min);
    let interior_attains = p.len() > 2 && p[1..p.len() - 1].contains(&global_min);
    if !interior_attains {
        return Err(Error::DipAtWindowEdge);
    }
    Ok(1.0 - 2.0 * global_min)
}

/// Per-event Fisher information for delay estimation along a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherCurve {
    pub delays: Vec<f64>,
    pub information: Vec<f64>,
    /// Single-event variance bound `1 / I(tau)`; infinite where the curve
    /// carries no information.
    pub crb_single: Vec<f64>,
    /// Set when the curve is constant at 0 or 1, so no delay information
    /// exists anywhere in the window.
    pub degenerate: bool,
}

/// Estimates `I(tau) = (dP/dtau)^2 / (P (1 - P))` from a uniformly sampled
/// curve. The derivative uses central differences (one-sided at the
/// endpoints). Where `P` is within 1e-12 of 0 or 1 the ratio is an
/// indeterminate 0/0; there the curve is locally a parabola
/// `P ~ P0 + a (tau - tau0)^2` and the limit of the ratio is `4 |a|`,
/// evaluated from the nearest second difference.
pub fn fisher_information(curve: &HomCurve) -> Result<FisherCurve> {
    let n = curve.delays.len();
    if n < 3 {
        return Err(Error::BadDelayGrid { min: 3 });
    }
    let h = curve.delays[1] - curve.delays[0];
    for w in curve.delays.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h {
            return Err(Error::InvalidInput(
                "Fisher information requires a uniform delay step".into(),
            ));
        }
    }
    let p = &curve.probabilities;
    let information: Vec<f64> = (0..n)
        .map(|k| {
            let pk = p[k];
            if !(FISHER_DEGENERATE_P..=1.0 - FISHER_DEGENERATE_P).contains(&pk) {
                // nearest interior triple for the second difference
                let m = k.clamp(1, n - 2);
                let a = (p[m - 1] - 2.0 * p[m] + p[m + 1]) / (2.0 * h * h);
                return 4.0 * a.abs();
            }
            let dp = if k == 0 {
                (p[1] - p[0]) / h
            } else if k == n - 1 {
                (p[n - 1] - p[n - 2]) / h
            } else {
                (p[k + 1] - p[k - 1]) / (2.0 * h)
            };
            dp * dp / (pk * (1.0 - pk))
        })
        .collect();
    let crb_single = information
        .iter()
        .map(|&i| if i > 0.0 { 1.0 / i } else { f64::INFINITY })
        .collect();
    let first = p[0];
    let degenerate = !(FISHER_DEGENERATE_P..=1.0 - FISHER_DEGENERATE_P).contains(&first)
        && p.iter().all(|&v| v == first);
    Ok(FisherCurve {
        delays: curve.delays.clone(),
        information,
        crb_single,
        degenerate,
    })
}

/// Cramer-Rao variance bound `1 / (n I(tau))` for an unbiased delay
/// estimator over `n_events` detected pairs; infinite where the curve
/// carries no information.
pub fn cramer_rao_bound(fisher: &FisherCurve, n_events: u64) -> Result<Vec<f64>> {
    if n_events < 1 {
        return Err(Error::InvalidInput(
            "Cramer-Rao bound needs at least one event".into(),
        ));
    }
    Ok(fisher
        .information
        .iter()
        .map(|&i| {
            if i > 0.0 {
                1.0 / (n_events as f64 * i)
            } else {
                f64::INFINITY
            }
        })
        .collect())
}

/// Signal marginal rms width, the natural inverse-delay unit for a curve.
pub fn marginal_bandwidth(jsa: &JointSpectralAmplitude) -> Result<f64> {
    metrics::standard_deviation(&jsa.signal_marginal())
}
