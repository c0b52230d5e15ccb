//! Seedable simulators for the five data-generating processes, stored in
//! segmented form.
//!
//! A series `Y_1, Y_2, ...` is split into segments of `s` consecutive
//! sub-periods. The linear index and the (segment, phase) pair interconvert
//! through `T = s(t - 1) + i` with `1 <= i <= s`; phase `i = s` is the
//! benchmark phase, the one observation per segment that survives when the
//! rest are missing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The five supported process families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Stationary AR(1): `Y_T = alpha Y_{T-1} + e_T`.
    Ar1,
    /// Stationary MA(1): `Y_T = e_T + theta e_{T-1}`.
    Ma1,
    /// Stationary ARMA(1,1): `Y_T = alpha Y_{T-1} + e_T + theta e_{T-1}`.
    Arma11,
    /// Random walk with drift: `Y_T = mu + Y_{T-1} + e_T`.
    Rw,
    /// Random walk with drift and ARMA(1,1) errors:
    /// `Y_T = mu + Y_{T-1} + u_T`, `u_T = alpha u_{T-1} + e_T + theta e_{T-1}`.
    RwArma11,
}

impl Model {
    /// The kebab-case name used by the CLI and the serialized reports.
    pub fn name(self) -> &'static str {
        match self {
            Model::Ar1 => "ar1",
            Model::Ma1 => "ma1",
            Model::Arma11 => "arma11",
            Model::Rw => "rw",
            Model::RwArma11 => "rw-arma11",
        }
    }

    /// Whether the AR coefficient enters the recursion.
    pub fn uses_alpha(self) -> bool {
        matches!(self, Model::Ar1 | Model::Arma11 | Model::RwArma11)
    }

    /// Whether the MA coefficient enters the recursion.
    pub fn uses_theta(self) -> bool {
        matches!(self, Model::Ma1 | Model::Arma11 | Model::RwArma11)
    }

    /// Difference-stationary (random-walk) families.
    pub fn is_nonstationary(self) -> bool {
        matches!(self, Model::Rw | Model::RwArma11)
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ar1" => Ok(Model::Ar1),
            "ma1" => Ok(Model::Ma1),
            "arma11" => Ok(Model::Arma11),
            "rw" => Ok(Model::Rw),
            "rw-arma11" => Ok(Model::RwArma11),
            other => Err(format!("unknown model `{other}` (expected ar1|ma1|arma11|rw|rw-arma11)")),
        }
    }
}

/// A fully parameterized data-generating process.
///
/// Coefficients that a model does not use must be zero; `mu` is meaningful
/// only for the nonstationary families. `sigma2` is the innovation variance;
/// zero is accepted by the simulator (a deterministic drift line) but the
/// analytic ratios in [`crate::analytic`] require it to be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgpSpec {
    pub model: Model,
    pub alpha: f64,
    pub theta: f64,
    pub mu: f64,
    pub sigma2: f64,
}

impl DgpSpec {
    pub fn ar1(alpha: f64, sigma2: f64) -> Self {
        DgpSpec { model: Model::Ar1, alpha, theta: 0.0, mu: 0.0, sigma2 }
    }

    pub fn ma1(theta: f64, sigma2: f64) -> Self {
        DgpSpec { model: Model::Ma1, alpha: 0.0, theta, mu: 0.0, sigma2 }
    }

    pub fn arma11(alpha: f64, theta: f64, sigma2: f64) -> Self {
        DgpSpec { model: Model::Arma11, alpha, theta, mu: 0.0, sigma2 }
    }

    pub fn rw(mu: f64, sigma2: f64) -> Self {
        DgpSpec { model: Model::Rw, alpha: 0.0, theta: 0.0, mu, sigma2 }
    }

    pub fn rw_arma11(alpha: f64, theta: f64, mu: f64, sigma2: f64) -> Self {
        DgpSpec { model: Model::RwArma11, alpha, theta, mu, sigma2 }
    }

    /// Check stationarity/invertibility bounds and the per-model zero
    /// constraints on unused coefficients.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("theta", self.theta),
            ("mu", self.mu),
            ("sigma2", self.sigma2),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if self.sigma2 < 0.0 {
            return Err(Error::invalid("sigma2", format!("must be >= 0, got {}", self.sigma2)));
        }
        if self.model.uses_alpha() {
            if self.alpha.abs() >= 1.0 {
                return Err(Error::invalid("alpha", format!("|alpha| < 1 required, got {}", self.alpha)));
            }
        } else if self.alpha != 0.0 {
            return Err(Error::invalid("alpha", format!("must be 0 for {:?}, got {}", self.model, self.alpha)));
        }
        if self.model.uses_theta() {
            if self.theta.abs() >= 1.0 {
                return Err(Error::invalid("theta", format!("|theta| < 1 required, got {}", self.theta)));
            }
        } else if self.theta != 0.0 {
            return Err(Error::invalid("theta", format!("must be 0 for {:?}, got {}", self.model, self.theta)));
        }
        if !self.model.is_nonstationary() && self.mu != 0.0 {
            return Err(Error::invalid("mu", format!("must be 0 for stationary models, got {}", self.mu)));
        }
        Ok(())
    }
}

/// A time series stored segment by segment.
///
/// `values[s*(t - origin_segment) + (i - 1)]` holds phase `i` of segment `t`.
/// The length is always a whole number of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentedSeries {
    values: Vec<f64>,
    s: usize,
    origin_segment: usize,
}

impl SegmentedSeries {
    /// Wrap a value vector. Fails unless `s >= 1`, `origin_segment >= 1` and
    /// the length is a positive multiple of `s`.
    pub fn new(values: Vec<f64>, s: usize, origin_segment: usize) -> Result<Self> {
        if s < 1 {
            return Err(Error::invalid("s", "segment length must be >= 1"));
        }
        if origin_segment < 1 {
            return Err(Error::invalid("origin_segment", "segments are counted from 1"));
        }
        if values.is_empty() || values.len() % s != 0 {
            return Err(Error::invalid(
                "values",
                format!("length {} is not a positive multiple of s = {s}", values.len()),
            ));
        }
        Ok(SegmentedSeries { values, s, origin_segment })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Segment index of the first stored observation.
    pub fn origin_segment(&self) -> usize {
        self.origin_segment
    }

    pub fn n_segments(&self) -> usize {
        self.values.len() / self.s
    }

    /// The phase-`s` (benchmark) observation of every stored segment.
    ///
    /// For `s = 1` this is the series itself.
    pub fn benchmarks(&self) -> Vec<f64> {
        self.values.iter().skip(self.s - 1).step_by(self.s).copied().collect()
    }
}

/// Burn-in length used by the command-line tools and the Monte Carlo harness
/// when none is given: `max(200, ceil(20 / (1 - |alpha|)))` transient steps
/// for models with serially dependent errors, none for the pure random walk.
pub fn default_burn_in(spec: &DgpSpec) -> usize {
    match spec.model {
        Model::Rw => 0,
        _ => {
            let tail = (20.0 / (1.0 - spec.alpha.abs())).ceil() as usize;
            tail.max(200)
        }
    }
}

/// Deterministic per-replication seed, derived from a master seed with a
/// SplitMix64 finalizer so that replication streams are decorrelated.
pub fn replicate_seed(master: u64, replication: u64) -> u64 {
    let mut z = master.wrapping_add(replication.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Simulate `n_segments` segments of `s` sub-periods each.
///
/// Innovations are i.i.d. Gaussian with variance `sigma2`, drawn from a
/// ChaCha8 stream seeded by `seed`; output is bit-reproducible for equal
/// inputs. `burn_in` innovations drive the recursion (for the random-walk
/// families: the error process only) before the first retained observation;
/// the random-walk level itself starts from zero, so the first retained value
/// already contains one increment. Models with an MA part draw their
/// pre-sample innovation from the same stream, even when `burn_in` is zero.
pub fn simulate(
    spec: &DgpSpec,
    s: usize,
    n_segments: usize,
    seed: u64,
    burn_in: usize,
) -> Result<SegmentedSeries> {
    spec.validate()?;
    if s < 1 {
        return Err(Error::invalid("s", "segment length must be >= 1"));
    }
    if n_segments < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 segments, got {n_segments}"
        )));
    }

    let n = s * n_segments;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd = spec.sigma2.sqrt();
    let mut innovation = move || -> f64 { sd * rng.sample::<f64, _>(StandardNormal) };

    let (alpha, theta, mu) = (spec.alpha, spec.theta, spec.mu);
    let mut values = Vec::with_capacity(n);
    match spec.model {
        Model::Ar1 => {
            let mut y = 0.0;
            for _ in 0..burn_in {
                y = alpha * y + innovation();
            }
            for _ in 0..n {
                y = alpha * y + innovation();
                values.push(y);
            }
        }
        Model::Ma1 | Model::Arma11 => {
            let mut e_prev = innovation();
            let mut y = 0.0;
            for _ in 0..burn_in {
                let e = innovation();
                y = alpha * y + e + theta * e_prev;
                e_prev = e;
            }
            for _ in 0..n {
                let e = innovation();
                y = alpha * y + e + theta * e_prev;
                e_prev = e;
                values.push(y);
            }
        }
        Model::Rw => {
            for _ in 0..burn_in {
                let _ = innovation();
            }
            let mut y = 0.0;
            for _ in 0..n {
                y += mu + innovation();
                values.push(y);
            }
        }
        Model::RwArma11 => {
            let mut e_prev = innovation();
            let mut u = 0.0;
            for _ in 0..burn_in {
                let e = innovation();
                u = alpha * u + e + theta * e_prev;
                e_prev = e;
            }
            let mut y = 0.0;
            for _ in 0..n {
                let e = innovation();
                u = alpha * u + e + theta * e_prev;
                e_prev = e;
                y += mu + u;
                values.push(y);
            }
        }
    }

    SegmentedSeries::new(values, s, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn zero_noise_rw_is_a_drift_line() {
        let spec = DgpSpec::rw(1.0, 0.0);
        let series = simulate(&spec, 4, 2, 7, 0).unwrap();
        assert_eq!(series.values(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        // Seed must not matter when sigma2 = 0.
        let other = simulate(&spec, 4, 2, 12345, 0).unwrap();
        assert_eq!(series.values(), other.values());
    }

    #[test]
    fn ar1_with_zero_alpha_is_the_innovation_stream() {
        let seed = 99;
        let spec = DgpSpec::ar1(0.0, 1.0);
        let series = simulate(&spec, 4, 3, seed, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &v in series.values() {
            let e: f64 = rng.sample(StandardNormal);
            assert_eq!(v, e);
        }
    }

    #[test]
    fn simulate_is_deterministic() {
        let spec = DgpSpec::rw_arma11(0.5, -0.3, 0.2, 2.0);
        let a = simulate(&spec, 4, 50, 11, 300).unwrap();
        let b = simulate(&spec, 4, 50, 11, 300).unwrap();
        assert_eq!(a.values(), b.values());
        let c = simulate(&spec, 4, 50, 12, 300).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn ar1_path_variance_matches_stationary_variance() {
        for alpha in [0.0, 0.5, 0.9, -0.9] {
            let spec = DgpSpec::ar1(alpha, 1.0);
            let series = simulate(&spec, 1, 1_000_000, 42, default_burn_in(&spec)).unwrap();
            let v = series.values();
            let mean = v.iter().sum::<f64>() / v.len() as f64;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64;
            let expected = 1.0 / (1.0 - alpha * alpha);
            assert!(
                (var - expected).abs() / expected < 0.02,
                "alpha={alpha}: sample var {var} vs {expected}"
            );
        }
    }

    #[test]
    fn arma_path_reproduces_lag_one_autocorrelation() {
        // For alpha = theta = 0.5 the first-order autocorrelation is
        // (1 + at)(a + t) / (1 + t^2 + 2at) = 1.25 / 1.75 = 5/7.
        let spec = DgpSpec::arma11(0.5, 0.5, 1.0);
        let series = simulate(&spec, 1, 100_000, 2024, default_burn_in(&spec)).unwrap();
        let v = series.values();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var: f64 = v.iter().map(|x| (x - mean).powi(2)).sum();
        let cov: f64 = v.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
        let r1 = cov / var;
        assert!((r1 - 0.714286).abs() < 0.01, "sample lag-1 autocorrelation {r1}");
    }

    #[test]
    fn rw_zero_noise_first_differences_equal_mu() {
        // Dyadic drift: the accumulation is exact in binary floating point.
        let series = simulate(&DgpSpec::rw(0.75, 0.0), 3, 5, 0, 0).unwrap();
        for w in series.values().windows(2) {
            assert_eq!(w[1] - w[0], 0.75);
        }
        // Non-dyadic drift rounds, but only at the last ulp.
        let series = simulate(&DgpSpec::rw(0.7, 0.0), 3, 5, 0, 0).unwrap();
        for w in series.values().windows(2) {
            assert!((w[1] - w[0] - 0.7).abs() < 1e-14);
        }
    }

    #[test]
    fn benchmarks_read_the_phase_s_values() {
        let series = SegmentedSeries::new((1..=8).map(f64::from).collect(), 4, 1).unwrap();
        assert_eq!(series.benchmarks(), vec![4.0, 8.0]);

        let s1 = SegmentedSeries::new(vec![2.0, 4.0, 8.0], 1, 1).unwrap();
        assert_eq!(s1.benchmarks(), vec![2.0, 4.0, 8.0]);

        let drift = simulate(&DgpSpec::rw(1.0, 0.0), 2, 3, 0, 0).unwrap();
        assert_eq!(drift.benchmarks(), vec![2.0, 4.0, 6.0]);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(DgpSpec::ar1(1.0, 1.0).validate().is_err());
        assert!(DgpSpec::ma1(-1.0, 1.0).validate().is_err());
        assert!(DgpSpec::arma11(0.5, 0.5, -1.0).validate().is_err());
        // Unused coefficients must be zero.
        assert!(DgpSpec { model: Model::Rw, alpha: 0.1, theta: 0.0, mu: 0.0, sigma2: 1.0 }
            .validate()
            .is_err());
        assert!(DgpSpec { model: Model::Ar1, alpha: 0.5, theta: 0.0, mu: 1.0, sigma2: 1.0 }
            .validate()
            .is_err());
        // Too short.
        assert!(matches!(
            simulate(&DgpSpec::rw(0.0, 1.0), 4, 1, 0, 0),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn replicate_seed_is_stable_and_spread_out() {
        assert_eq!(replicate_seed(1, 0), replicate_seed(1, 0));
        let seeds: Vec<u64> = (0..100).map(|r| replicate_seed(7, r)).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
    }
}
