//! Closed-form variance analytics for the five processes, with and without
//! segmented linear interpolation.
//!
//! Throughout, the *short variance* is `var(Y_T - Y_{T-1})`, the *long
//! variance* is `var(Y_T - Y_{T-k})`, and the persistence measure is
//! Cochrane's variance ratio `V = sigma_k^2 / (k sigma_1^2)`. The displacement
//! `k` is tied to the segment length `s`: one segment of sub-periods is one
//! "long" step. `V = 1` for a pure random walk, `V < 1` signals mean
//! reversion, `V > 1` super-persistence.
//!
//! For interpolated series the long variance depends on the phase `i` within
//! the segment (interpolation makes the variance periodic); the scalar long
//! variance reported here is its expectation over phases, and
//! [`long_var_phase`] exposes the per-phase values.
//!
//! All results scale linearly in the innovation variance, so every variance
//! ratio is `sigma2`-free.

use serde::{Deserialize, Serialize};

use crate::dgp::{DgpSpec, Model};
use crate::error::{Error, Result};

/// Original (fully observed) series, or the segmented linear interpolation of
/// its benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Original,
    Interpolated,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Interpolated => "interpolated",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "original" => Ok(Variant::Original),
            "interpolated" => Ok(Variant::Interpolated),
            other => Err(format!("unknown variant `{other}` (expected original|interpolated)")),
        }
    }
}

/// Second moments of a stationary ARMA(1,1) process
/// `z_T = alpha z_{T-1} + e_T + theta e_{T-1}`.
///
/// For the stationary model families these are the moments of the series
/// itself; for the random walk with ARMA(1,1) errors they are the moments of
/// the error process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArmaMoments {
    /// Process variance `gamma_0 = (1 + theta^2 + 2 alpha theta) / (1 - alpha^2) * sigma2`.
    pub gamma0: f64,
    /// Lag-1 autocovariance `gamma_1 = (1 + alpha theta)(alpha + theta) / (1 - alpha^2) * sigma2`.
    pub gamma1: f64,
    /// First-order autocorrelation `gamma_1 / gamma_0`.
    pub rho1: f64,
    /// Alias of `gamma0`, kept under the name used when the ARMA(1,1) is the
    /// level process rather than the error process.
    pub process_variance: f64,
    alpha: f64,
}

impl ArmaMoments {
    /// Autocovariance at `lag >= 0`; beyond lag one it decays geometrically,
    /// `gamma_j = alpha gamma_{j-1}`.
    pub fn autocov(&self, lag: u32) -> f64 {
        match lag {
            0 => self.gamma0,
            j => self.alpha.powi(j as i32 - 1) * self.gamma1,
        }
    }
}

fn check_coeff(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v.abs() >= 1.0 {
        return Err(Error::invalid(name, format!("must satisfy |{name}| < 1, got {v}")));
    }
    Ok(())
}

fn check_sigma2(sigma2: f64) -> Result<()> {
    if !(sigma2 > 0.0) || !sigma2.is_finite() {
        return Err(Error::invalid("sigma2", format!("must be > 0, got {sigma2}")));
    }
    Ok(())
}

fn check_s(s: u32) -> Result<()> {
    if s < 2 {
        return Err(Error::invalid("s", format!("analytic results need s >= 2, got {s}")));
    }
    Ok(())
}

/// Second moments of a stationary ARMA(1,1) with innovation variance `sigma2`.
pub fn arma_moments(alpha: f64, theta: f64, sigma2: f64) -> Result<ArmaMoments> {
    check_coeff("alpha", alpha)?;
    check_coeff("theta", theta)?;
    check_sigma2(sigma2)?;
    let one_minus_a2 = 1.0 - alpha * alpha;
    let gamma0 = (1.0 + theta * theta + 2.0 * alpha * theta) / one_minus_a2 * sigma2;
    let gamma1 = (1.0 + alpha * theta) * (alpha + theta) / one_minus_a2 * sigma2;
    Ok(ArmaMoments {
        gamma0,
        gamma1,
        rho1: gamma1 / gamma0,
        process_variance: gamma0,
        alpha,
    })
}

/// The three arithmetic-geometric sums that appear in the random-walk-with-
/// ARMA(1,1)-errors variances:
///
/// ```text
/// d = sum_{j=1}^{s-1} (s - j) alpha^{j-1}   = [s(1-a) - (1-a^s)] / (1-a)^2
/// b = sum_{j=0}^{s-1} (s - j) alpha^{s+j-1} = [s a^{s-1}(1-a) - a^s + a^{2s}] / (1-a)^2
/// c = sum_{j=1}^{s-1} (s - j) alpha^{s-j-1} = [1 - a^{s-1} - a^{s-1}(1-a)(s-1)] / (1-a)^2
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgSums {
    pub d: f64,
    pub b: f64,
    pub c: f64,
}

/// Evaluate [`AgSums`] for `|alpha| < 1`, `s >= 2`.
///
/// The rational closed forms above lose up to five digits to cancellation as
/// `alpha` approaches 1, so the evaluation is restructured into division-free
/// equivalents: `d` as a sum of partial geometric sums (all terms positive),
/// `c` by Horner's rule on `sum k alpha^{k-1}`, and `b = alpha^{s-1}(s +
/// alpha d)`. These agree with exact rational arithmetic to a few ulps over
/// the whole domain, including `alpha = 0`.
pub fn ag_sums(alpha: f64, s: u32) -> Result<AgSums> {
    check_coeff("alpha", alpha)?;
    check_s(s)?;
    let mut partial = 1.0; // geometric partial sum 1 + a + ... of growing length
    let mut d = 0.0;
    for _ in 1..s {
        d += partial;
        partial = 1.0 + alpha * partial;
    }
    let mut c = 0.0;
    for k in (1..s).rev() {
        c = c * alpha + k as f64;
    }
    let b = alpha.powi(s as i32 - 1) * (s as f64 + alpha * d);
    Ok(AgSums { d, b, c })
}

/// Short variance, long variance, displacement, and their ratio for one
/// model/variant pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceSummary {
    pub model: DgpSpec,
    pub variant: Variant,
    pub s: u32,
    /// Displacement lag of the long variance; the analytics fix `k = s`.
    pub k: u32,
    pub short_var: f64,
    pub long_var: f64,
    /// `long_var / (k * short_var)`.
    pub vr: f64,
}

fn validated(spec: &DgpSpec, s: u32) -> Result<()> {
    spec.validate()?;
    check_sigma2(spec.sigma2)?;
    check_s(s)
}

// Eq.-level building blocks shared by the ARMA(1,1) formulas. `cov_term` is
// cov(y_t - y_{t-1}, y_{t-1} - y_{t-2}) of benchmark differences,
// (2 a^{s-1} - a^{2s-1}) gamma1 - gamma0.
fn arma_cov_term(m: &ArmaMoments, alpha: f64, s: u32) -> f64 {
    (2.0 * alpha.powi(s as i32 - 1) - alpha.powi(2 * s as i32 - 1)) * m.gamma1 - m.gamma0
}

// The bracket of the interpolated ARMA(1,1) short variance:
// (1 - a^s)(1 + a t + t^2) + a t (1 - a^{s-2}).
fn arma_short_bracket(alpha: f64, theta: f64, s: u32) -> f64 {
    (1.0 - alpha.powi(s as i32)) * (1.0 + alpha * theta + theta * theta)
        + alpha * theta * (1.0 - alpha.powi(s as i32 - 2))
}

/// Variance of one-period differences, `var(Y_T - Y_{T-1})`.
pub fn short_var(spec: &DgpSpec, variant: Variant, s: u32) -> Result<f64> {
    validated(spec, s)?;
    let (a, t, s2) = (spec.alpha, spec.theta, spec.sigma2);
    let sf = s as f64;
    Ok(match (spec.model, variant) {
        (Model::Ar1, Variant::Original) => 2.0 * s2 / (1.0 + a),
        (Model::Ar1, Variant::Interpolated) => {
            2.0 * (1.0 - a.powi(s as i32)) * s2 / (sf * sf * (1.0 - a * a))
        }
        (Model::Ma1, Variant::Original) => 2.0 * (1.0 + t * t - t) * s2,
        (Model::Ma1, Variant::Interpolated) => 2.0 * (1.0 + t * t) * s2 / (sf * sf),
        (Model::Arma11, Variant::Original) => {
            let m = arma_moments(a, t, s2)?;
            2.0 * (m.gamma0 - m.gamma1)
        }
        (Model::Arma11, Variant::Interpolated) => {
            2.0 * s2 * arma_short_bracket(a, t, s) / (sf * sf * (1.0 - a * a))
        }
        (Model::Rw, Variant::Original) => s2,
        (Model::Rw, Variant::Interpolated) => s2 / sf,
        (Model::RwArma11, Variant::Original) => arma_moments(a, t, s2)?.gamma0,
        (Model::RwArma11, Variant::Interpolated) => {
            let m = arma_moments(a, t, s2)?;
            let sums = ag_sums(a, s)?;
            (sf * m.gamma0 + 2.0 * m.gamma1 * sums.d) / (sf * sf)
        }
    })
}

/// Variance of `s`-period differences, `var(Y_T - Y_{T-s})`; for the
/// interpolated variant, its expectation over the phase within the segment.
pub fn long_var(spec: &DgpSpec, variant: Variant, s: u32) -> Result<f64> {
    validated(spec, s)?;
    let (a, t, s2) = (spec.alpha, spec.theta, spec.sigma2);
    let sf = s as f64;
    Ok(match (spec.model, variant) {
        (Model::Ar1, Variant::Original) => 2.0 * (1.0 - a.powi(s as i32)) * s2 / (1.0 - a * a),
        (Model::Ar1, Variant::Interpolated) => {
            let a_s = a.powi(s as i32);
            s2 * (1.0 - a_s) * (3.0 * sf * sf + a_s * sf * sf - a_s + 3.0)
                / (3.0 * sf * sf * (1.0 - a * a))
        }
        (Model::Ma1, Variant::Original) => 2.0 * (1.0 + t * t) * s2,
        (Model::Ma1, Variant::Interpolated) => (sf * sf + 1.0) * (1.0 + t * t) * s2 / (sf * sf),
        (Model::Arma11, Variant::Original) => {
            let m = arma_moments(a, t, s2)?;
            2.0 * (m.gamma0 - a.powi(s as i32 - 1) * m.gamma1)
        }
        (Model::Arma11, Variant::Interpolated) => {
            let m = arma_moments(a, t, s2)?;
            let short = short_var(spec, Variant::Interpolated, s)?;
            (2.0 * sf * sf + 1.0) / 3.0 * short
                + (sf * sf - 1.0) / (3.0 * sf * sf) * arma_cov_term(&m, a, s)
        }
        (Model::Rw, Variant::Original) => sf * s2,
        (Model::Rw, Variant::Interpolated) => (2.0 * sf * sf + 1.0) / (3.0 * sf) * s2,
        (Model::RwArma11, Variant::Original) => {
            let m = arma_moments(a, t, s2)?;
            sf * m.gamma0 + 2.0 * m.gamma1 * ag_sums(a, s)?.d
        }
        (Model::RwArma11, Variant::Interpolated) => {
            let m = arma_moments(a, t, s2)?;
            let sums = ag_sums(a, s)?;
            let segment_var = sf * m.gamma0 + 2.0 * m.gamma1 * sums.d;
            let cross = m.gamma1 * (sums.c + sums.b);
            (2.0 * sf * sf + 1.0) / (3.0 * sf * sf) * segment_var
                + (sf * sf - 1.0) / (3.0 * sf * sf) * cross
        }
    })
}

/// Phase-`i` long variance of the interpolated series, before averaging over
/// phases. At the benchmark phase `i = s` it coincides with the original
/// series' long variance; interpolation leaves that phase untouched.
pub fn long_var_phase(spec: &DgpSpec, s: u32, phase: u32) -> Result<f64> {
    validated(spec, s)?;
    if phase < 1 || phase > s {
        return Err(Error::invalid("phase", format!("must lie in 1..={s}, got {phase}")));
    }
    let (a, t, s2) = (spec.alpha, spec.theta, spec.sigma2);
    let sf = s as f64;
    let (i, j) = (phase as u64, (s - phase) as u64);
    // i^2 + (s-i)^2 weights the two independent segment increments; 2i(s-i)
    // weights their covariance.
    let own = (i * i + j * j) as f64;
    let cross_w = (2 * i * j) as f64;
    Ok(match spec.model {
        Model::Ar1 => {
            let short = short_var(spec, Variant::Interpolated, s)?;
            let a_s = a.powi(s as i32);
            let cov = (2.0 * a_s - a.powi(2 * s as i32) - 1.0) * s2 / (1.0 - a * a);
            own * short + cross_w / (sf * sf) * cov
        }
        Model::Ma1 => {
            let short = short_var(spec, Variant::Interpolated, s)?;
            own * short - cross_w / (sf * sf) * (1.0 + t * t) * s2
        }
        Model::Arma11 => {
            let m = arma_moments(a, t, s2)?;
            let short = short_var(spec, Variant::Interpolated, s)?;
            own * short + cross_w / (sf * sf) * arma_cov_term(&m, a, s)
        }
        Model::Rw => own / sf * s2,
        Model::RwArma11 => {
            let m = arma_moments(a, t, s2)?;
            let sums = ag_sums(a, s)?;
            let segment_var = sf * m.gamma0 + 2.0 * m.gamma1 * sums.d;
            let cross = m.gamma1 * (sums.c + sums.b);
            own / (sf * sf) * segment_var + cross_w / (sf * sf) * cross
        }
    })
}

/// Variance ratio `V = long_var / (s * short_var)` with `k = s`.
pub fn variance_ratio(spec: &DgpSpec, variant: Variant, s: u32) -> Result<VarianceSummary> {
    let short = short_var(spec, variant, s)?;
    let long = long_var(spec, variant, s)?;
    Ok(VarianceSummary {
        model: *spec,
        variant,
        s,
        k: s,
        short_var: short,
        long_var: long,
        vr: long / (s as f64 * short),
    })
}

/// Direct closed-form expression for the variance ratio, bypassing the
/// long/short quotient. Useful as an independent algebraic route; it agrees
/// with [`variance_ratio`] to floating-point accuracy.
pub fn closed_form_vr(spec: &DgpSpec, variant: Variant, s: u32) -> Result<f64> {
    validated(spec, s)?;
    let (a, t) = (spec.alpha, spec.theta);
    let sf = s as f64;
    Ok(match (spec.model, variant) {
        (Model::Ar1, Variant::Original) => (1.0 - a.powi(s as i32)) / (sf * (1.0 - a)),
        (Model::Ar1, Variant::Interpolated) => {
            let a_s = a.powi(s as i32);
            (sf * sf * (3.0 + a_s) + (3.0 - a_s)) / (6.0 * sf)
        }
        (Model::Ma1, Variant::Original) => (1.0 + t * t) / (sf * (1.0 + t * t - t)),
        (Model::Ma1, Variant::Interpolated) => (sf * sf + 1.0) / (2.0 * sf),
        (Model::Arma11, Variant::Original) => {
            let big_a = 1.0 + t * t + 2.0 * a * t;
            let big_b = (1.0 + a * t) * (a + t);
            (big_a - a.powi(s as i32 - 1) * big_b) / (sf * (big_a - big_b))
        }
        (Model::Arma11, Variant::Interpolated) => arma11_interp_vr_closed(a, t, s)?,
        (Model::Rw, Variant::Original) => 1.0,
        (Model::Rw, Variant::Interpolated) => (2.0 * sf * sf + 1.0) / (3.0 * sf),
        (Model::RwArma11, Variant::Original) => {
            let rho1 = arma_moments(a, t, 1.0)?.rho1;
            let d = (sf * (1.0 - a) - (1.0 - a.powi(s as i32))) / ((1.0 - a) * (1.0 - a));
            1.0 + 2.0 * rho1 / sf * d
        }
        (Model::RwArma11, Variant::Interpolated) => {
            let b = (1.0 + a * t) * (a + t);
            let one_minus_as = 1.0 - a.powi(s as i32);
            let num = b * (sf * sf - 1.0) * one_minus_as * one_minus_as;
            let den = 3.0 * sf * sf * (1.0 - a) * (1.0 - a) * (1.0 + t * t + 2.0 * a * t)
                + 6.0 * sf * b * (sf * (1.0 - a) - one_minus_as);
            (2.0 * sf * sf + 1.0) / (3.0 * sf) + num / den
        }
    })
}

/// Closed form for the interpolated ARMA(1,1) variance ratio, written so that
/// it equals `long_var / (s * short_var)`:
///
/// ```text
/// V = (2s^2+1)/(3s) + (s^2-1)/(6s) *
///     [a^{s-1}(2 - a^s)(1 + at)(a + t) - (1 + 2at + t^2)]
///     / [(1 - a^s)(1 + at + t^2) + at(1 - a^{s-2})]
/// ```
pub fn arma11_interp_vr_closed(alpha: f64, theta: f64, s: u32) -> Result<f64> {
    check_coeff("alpha", alpha)?;
    check_coeff("theta", theta)?;
    check_s(s)?;
    let sf = s as f64;
    let num = alpha.powi(s as i32 - 1)
        * (2.0 - alpha.powi(s as i32))
        * (1.0 + alpha * theta)
        * (alpha + theta)
        - (1.0 + 2.0 * alpha * theta + theta * theta);
    Ok((2.0 * sf * sf + 1.0) / (3.0 * sf)
        + (sf * sf - 1.0) / (6.0 * sf) * num / arma_short_bracket(alpha, theta, s))
}

/// Variant of [`arma11_interp_vr_closed`] whose denominator bracket carries
/// `(1 + 2 alpha theta + theta^2)` in place of `(1 + alpha theta + theta^2)`.
///
/// The substitution looks innocuous but is wrong: this expression does not
/// equal `long_var / (s * short_var)` whenever both coefficients are nonzero
/// (at `alpha = theta = 0.5`, `s = 4` it gives 2.2552 where the consistent
/// form gives 2.1824, the value the reference tables carry). It is kept only
/// so tests can pin the discrepancy; nothing else uses it.
pub fn arma11_interp_vr_alt(alpha: f64, theta: f64, s: u32) -> Result<f64> {
    check_coeff("alpha", alpha)?;
    check_coeff("theta", theta)?;
    check_s(s)?;
    let sf = s as f64;
    let num = alpha.powi(s as i32 - 1)
        * (2.0 - alpha.powi(s as i32))
        * (1.0 + alpha * theta)
        * (alpha + theta)
        - (1.0 + 2.0 * alpha * theta + theta * theta);
    let den = (1.0 - alpha.powi(s as i32)) * (1.0 + 2.0 * alpha * theta + theta * theta)
        + alpha * theta * (1.0 - alpha.powi(s as i32 - 2));
    Ok((2.0 * sf * sf + 1.0) / (3.0 * sf) + (sf * sf - 1.0) / (6.0 * sf) * num / den)
}

/// The autocorrelation threshold `(s - 1) / (s - alpha^{s-1})` below which the
/// original ARMA(1,1) variance ratio stays under 1. Negative `rho_1` always
/// gives `V_y < 1`; positive `rho_1` does so only under this bound.
pub fn arma_vy_threshold(alpha: f64, s: u32) -> Result<f64> {
    check_coeff("alpha", alpha)?;
    check_s(s)?;
    let sf = s as f64;
    Ok((sf - 1.0) / (sf - alpha.powi(s as i32 - 1)))
}

/// How much interpolation shrinks the two variances: both ratios are
/// strictly below one for `s >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Shrinkage {
    /// `short_var(interpolated) / short_var(original)`; vanishes like `1/s^2`
    /// (`1/s` for the random walk).
    pub short_ratio: f64,
    /// `long_var(interpolated) / long_var(original)`; tends to 1/2 for the
    /// stationary models and 2/3 for the random walk as `s` grows.
    pub long_ratio: f64,
}

/// Ratios of interpolated to original short and long variances.
///
/// The AR(1), MA(1), and random-walk cases use their closed forms; the two
/// ARMA(1,1) families, which admit no simple simplification, divide the
/// variance formulas directly.
pub fn variance_shrinkage(spec: &DgpSpec, s: u32) -> Result<Shrinkage> {
    validated(spec, s)?;
    let (a, t) = (spec.alpha, spec.theta);
    let sf = s as f64;
    Ok(match spec.model {
        Model::Ar1 => {
            let a_s = a.powi(s as i32);
            Shrinkage {
                short_ratio: (1.0 - a_s) / (sf * sf * (1.0 - a)),
                long_ratio: (sf * sf * (3.0 + a_s) + 3.0 - a_s) / (6.0 * sf * sf),
            }
        }
        Model::Ma1 => Shrinkage {
            short_ratio: (1.0 + t * t) / (sf * sf * (1.0 + t * t - t)),
            long_ratio: (sf * sf + 1.0) / (2.0 * sf * sf),
        },
        Model::Rw => Shrinkage {
            short_ratio: 1.0 / sf,
            long_ratio: (2.0 * sf * sf + 1.0) / (3.0 * sf * sf),
        },
        Model::Arma11 | Model::RwArma11 => Shrinkage {
            short_ratio: short_var(spec, Variant::Interpolated, s)?
                / short_var(spec, Variant::Original, s)?,
            long_ratio: long_var(spec, Variant::Interpolated, s)?
                / long_var(spec, Variant::Original, s)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgp::DgpSpec;
    use approx::assert_relative_eq;

    #[test]
    fn white_noise_moments() {
        let m = arma_moments(0.0, 0.0, 1.0).unwrap();
        assert_eq!(m.gamma0, 1.0);
        assert_eq!(m.gamma1, 0.0);
        assert_eq!(m.rho1, 0.0);
        assert_eq!(m.process_variance, 1.0);
    }

    #[test]
    fn arma_moments_half_half() {
        let m = arma_moments(0.5, 0.5, 1.0).unwrap();
        assert_relative_eq!(m.gamma0, 7.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(m.gamma1, 5.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(m.rho1, 5.0 / 7.0, max_relative = 1e-12);
    }

    #[test]
    fn autocovariances_decay_geometrically() {
        let m = arma_moments(0.6, -0.2, 2.0).unwrap();
        for j in 2..8 {
            assert_relative_eq!(m.autocov(j), 0.6 * m.autocov(j - 1), max_relative = 1e-12);
        }
    }

    #[test]
    fn pure_ma_autocorrelation() {
        for theta in [-0.9, -0.3, 0.2, 0.7] {
            let m = arma_moments(0.0, theta, 1.0).unwrap();
            assert_relative_eq!(m.rho1, theta / (1.0 + theta * theta), max_relative = 1e-12);
        }
    }

    #[test]
    fn ag_sum_examples() {
        // s = 2 collapses d and c to a single unit term.
        for a in [-0.9, -0.3, 0.0, 0.55, 0.99] {
            let sums = ag_sums(a, 2).unwrap();
            assert_eq!(sums.d, 1.0);
            assert_eq!(sums.c, 1.0);
        }
        assert_relative_eq!(ag_sums(0.5, 4).unwrap().d, 4.25, max_relative = 1e-14);
        assert_relative_eq!(ag_sums(0.5, 2).unwrap().b, 1.25, max_relative = 1e-14);
    }

    #[test]
    fn ag_sums_at_zero_alpha_are_exact() {
        for s in [2u32, 3, 7, 50] {
            let sums = ag_sums(0.0, s).unwrap();
            assert_eq!(sums.d, (s - 1) as f64);
            assert_eq!(sums.b, 0.0);
            assert_eq!(sums.c, 1.0);
        }
    }

    #[test]
    fn short_var_examples() {
        let wn = DgpSpec::ar1(0.0, 1.0);
        for s in [2, 4, 10] {
            assert_eq!(short_var(&wn, Variant::Original, s).unwrap(), 2.0);
        }
        let rw = DgpSpec::rw(0.0, 1.0);
        assert_eq!(short_var(&rw, Variant::Interpolated, 4).unwrap(), 0.25);
        let arma = DgpSpec::arma11(0.5, 0.5, 1.0);
        assert_relative_eq!(
            short_var(&arma, Variant::Interpolated, 4).unwrap(),
            0.265625,
            max_relative = 1e-12
        );
    }

    #[test]
    fn long_var_examples() {
        let rw = DgpSpec::rw(0.0, 1.0);
        assert_eq!(long_var(&rw, Variant::Original, 4).unwrap(), 4.0);
        assert_relative_eq!(
            long_var(&rw, Variant::Interpolated, 4).unwrap(),
            2.75,
            max_relative = 1e-14
        );
        let arma = DgpSpec::arma11(0.5, 0.5, 1.0);
        assert_relative_eq!(
            long_var(&arma, Variant::Interpolated, 4).unwrap(),
            2.31884765625,
            max_relative = 1e-12
        );
    }

    #[test]
    fn phase_variance_examples() {
        let rw = DgpSpec::rw(0.0, 1.0);
        assert_eq!(long_var_phase(&rw, 2, 1).unwrap(), 1.0);
        assert_eq!(long_var_phase(&rw, 2, 2).unwrap(), 2.0);

        // Benchmark phase equals the original long variance.
        let ar = DgpSpec::ar1(0.5, 1.0);
        assert_relative_eq!(
            long_var_phase(&ar, 4, 4).unwrap(),
            long_var(&ar, Variant::Original, 4).unwrap(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            long_var_phase(&ar, 4, 4).unwrap(),
            2.0 * (1.0 - 0.5f64.powi(4)) / (1.0 - 0.25),
            max_relative = 1e-13
        );

        assert!(long_var_phase(&rw, 4, 0).is_err());
        assert!(long_var_phase(&rw, 4, 5).is_err());
    }

    #[test]
    fn variance_ratio_spot_values() {
        let rw = DgpSpec::rw(0.0, 1.0);
        assert_eq!(variance_ratio(&rw, Variant::Original, 4).unwrap().vr, 1.0);
        assert_relative_eq!(
            variance_ratio(&rw, Variant::Interpolated, 10).unwrap().vr,
            6.7,
            max_relative = 1e-13
        );

        let arma = DgpSpec::arma11(0.5, 0.5, 1.0);
        assert_relative_eq!(
            variance_ratio(&arma, Variant::Original, 4).unwrap().vr,
            0.796875,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            variance_ratio(&arma, Variant::Interpolated, 4).unwrap().vr,
            4749.0 / 2176.0, // = 2.18244485...
            max_relative = 1e-12
        );

        let ar = DgpSpec::ar1(0.5, 1.0);
        assert_relative_eq!(
            variance_ratio(&ar, Variant::Interpolated, 4).unwrap().vr,
            2.1640625,
            max_relative = 1e-12
        );

        for theta in [-0.7, 0.0, 0.3, 0.9] {
            let ma = DgpSpec::ma1(theta, 1.0);
            assert_relative_eq!(
                variance_ratio(&ma, Variant::Interpolated, 4).unwrap().vr,
                2.125,
                max_relative = 1e-14
            );
        }

        let rwa = DgpSpec::rw_arma11(0.5, 0.5, 0.0, 1.0);
        assert_relative_eq!(
            variance_ratio(&rwa, Variant::Original, 4).unwrap().vr,
            141.0 / 56.0, // = 2.517857...
            max_relative = 1e-12
        );
        assert_relative_eq!(
            variance_ratio(&rwa, Variant::Interpolated, 4).unwrap().vr,
            3.0616688829787235,
            max_relative = 1e-10
        );
    }

    #[test]
    fn vr_is_independent_of_sigma2() {
        let base = DgpSpec::arma11(0.4, -0.6, 1.0);
        let scaled = DgpSpec::arma11(0.4, -0.6, 7.25);
        for variant in [Variant::Original, Variant::Interpolated] {
            let v1 = variance_ratio(&base, variant, 5).unwrap().vr;
            let v2 = variance_ratio(&scaled, variant, 5).unwrap().vr;
            assert_relative_eq!(v1, v2, max_relative = 1e-12);
        }
    }

    #[test]
    fn threshold_examples() {
        assert_relative_eq!(arma_vy_threshold(0.0, 10).unwrap(), 0.9, max_relative = 1e-14);
        assert_relative_eq!(
            arma_vy_threshold(-0.999999, 10).unwrap(),
            9.0 / 11.0,
            max_relative = 1e-4
        );
        for a in [-0.8, 0.0, 0.6] {
            assert_relative_eq!(
                arma_vy_threshold(a, 2).unwrap(),
                1.0 / (2.0 - a),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn shrinkage_examples() {
        let rw = variance_shrinkage(&DgpSpec::rw(0.0, 1.0), 4).unwrap();
        assert_eq!(rw.short_ratio, 0.25);
        assert_relative_eq!(rw.long_ratio, 33.0 / 48.0, max_relative = 1e-14);

        let ar = variance_shrinkage(&DgpSpec::ar1(0.0, 1.0), 2).unwrap();
        assert_relative_eq!(ar.short_ratio, 0.25, max_relative = 1e-14);

        let ma = variance_shrinkage(&DgpSpec::ma1(0.5, 1.0), 4).unwrap();
        assert_relative_eq!(ma.short_ratio, 1.25 / 12.0, max_relative = 1e-12);
    }

    #[test]
    fn alt_closed_form_disagrees_when_both_coefficients_are_nonzero() {
        let consistent = arma11_interp_vr_closed(0.5, 0.5, 4).unwrap();
        let alt = arma11_interp_vr_alt(0.5, 0.5, 4).unwrap();
        assert_relative_eq!(consistent, 4749.0 / 2176.0, max_relative = 1e-12);
        assert!((alt - 2.2552).abs() < 5e-5);
        assert!((alt - consistent).abs() > 0.07);

        // With one coefficient zero the two brackets coincide.
        for a in [-0.6, 0.0, 0.8] {
            assert_relative_eq!(
                arma11_interp_vr_alt(a, 0.0, 6).unwrap(),
                arma11_interp_vr_closed(a, 0.0, 6).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn quotient_and_direct_closed_forms_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);
        for _ in 0..2000 {
            let alpha: f64 = rng.random_range(-0.99..=0.99);
            let theta: f64 = rng.random_range(-0.99..=0.99);
            let sigma2: f64 = rng.random_range(0.01..=10.0);
            let s: u32 = rng.random_range(2..=25);
            let specs = [
                DgpSpec::ar1(alpha, sigma2),
                DgpSpec::ma1(theta, sigma2),
                DgpSpec::arma11(alpha, theta, sigma2),
                DgpSpec::rw(0.0, sigma2),
                DgpSpec::rw_arma11(alpha, theta, 0.0, sigma2),
            ];
            for spec in &specs {
                for variant in [Variant::Original, Variant::Interpolated] {
                    let quotient = variance_ratio(spec, variant, s).unwrap().vr;
                    let direct = closed_form_vr(spec, variant, s).unwrap();
                    assert_relative_eq!(quotient, direct, max_relative = 1e-10);
                    // The summary's defining identity.
                    let summary = variance_ratio(spec, variant, s).unwrap();
                    assert_relative_eq!(
                        summary.vr * summary.k as f64 * summary.short_var,
                        summary.long_var,
                        max_relative = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn domain_violations_error_out() {
        assert!(arma_moments(1.0, 0.0, 1.0).is_err());
        assert!(arma_moments(0.0, 0.0, 0.0).is_err());
        assert!(ag_sums(0.5, 1).is_err());
        let zero_noise = DgpSpec::rw(1.0, 0.0);
        assert!(short_var(&zero_noise, Variant::Original, 4).is_err());
        assert!(variance_ratio(&DgpSpec::ar1(0.5, 1.0), Variant::Original, 1).is_err());
    }
}
