//! Variance-ratio tables over the reference parameter axes and surface grids
//! over the open (alpha, theta) square.

use serde::{Deserialize, Serialize};

use crate::analytic::{variance_ratio, Variant};
use crate::dgp::DgpSpec;
use crate::error::{Error, Result};

/// The eleven coefficient values used by the reference tables, in the
/// tables' own (descending) order.
pub const TABLE_AXIS: [f64; 11] =
    [0.99, 0.90, 0.75, 0.50, 0.10, 0.00, -0.10, -0.50, -0.75, -0.90, -0.99];

/// The two tabulated model families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Stationary ARMA(1,1) level process.
    #[serde(rename = "stationary")]
    StationaryArma,
    /// Random walk with ARMA(1,1) errors.
    #[serde(rename = "nonstationary")]
    NonstationaryArma,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::StationaryArma => "stationary",
            Family::NonstationaryArma => "nonstationary",
        }
    }

    /// The process at a given coefficient pair, with unit innovation variance
    /// (the ratio does not depend on it).
    pub fn spec(self, alpha: f64, theta: f64) -> DgpSpec {
        match self {
            Family::StationaryArma => DgpSpec::arma11(alpha, theta, 1.0),
            Family::NonstationaryArma => DgpSpec::rw_arma11(alpha, theta, 0.0, 1.0),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stationary" => Ok(Family::StationaryArma),
            "nonstationary" => Ok(Family::NonstationaryArma),
            other => Err(format!("unknown family `{other}` (expected stationary|nonstationary)")),
        }
    }
}

/// A grid of variance-ratio values over an (alpha, theta) rectangle.
///
/// Rows index `alphas`, columns index `thetas`. `na` cells hold a computable
/// value that the reference tables nevertheless leave blank; they are flagged
/// rather than erased.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub family: Family,
    pub variant: Variant,
    pub s: u32,
    pub alphas: Vec<f64>,
    pub thetas: Vec<f64>,
    cells: Vec<f64>,
    na: Vec<bool>,
}

impl ParamGrid {
    fn build(
        family: Family,
        variant: Variant,
        s: u32,
        alphas: Vec<f64>,
        thetas: Vec<f64>,
        mark_na: impl Fn(f64, f64) -> bool,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(alphas.len() * thetas.len());
        let mut na = Vec::with_capacity(cells.capacity());
        for &alpha in &alphas {
            for &theta in &thetas {
                cells.push(variance_ratio(&family.spec(alpha, theta), variant, s)?.vr);
                na.push(mark_na(alpha, theta));
            }
        }
        Ok(ParamGrid { family, variant, s, alphas, thetas, cells, na })
    }

    pub fn n_rows(&self) -> usize {
        self.alphas.len()
    }

    pub fn n_cols(&self) -> usize {
        self.thetas.len()
    }

    /// Cell value at row `i` (alpha index) and column `j` (theta index).
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.thetas.len() + j]
    }

    /// Whether the reference tables leave this cell blank.
    pub fn is_na(&self, i: usize, j: usize) -> bool {
        self.na[i * self.thetas.len() + j]
    }
}

/// The `(V_y, V_x)` table pair over [`TABLE_AXIS`] for `s` in `{4, 10}`.
///
/// The stationary family marks the white-noise cell `(0, 0)` as NA, matching
/// the reference tables; for the nonstationary family that cell is a plain
/// random walk and carries its value.
pub fn table(family: Family, s: u32) -> Result<(ParamGrid, ParamGrid)> {
    if s != 4 && s != 10 {
        return Err(Error::invalid("s", format!("tables exist for s in {{4, 10}}, got {s}")));
    }
    let mark_na = move |alpha: f64, theta: f64| {
        family == Family::StationaryArma && alpha == 0.0 && theta == 0.0
    };
    let vy = ParamGrid::build(
        family,
        Variant::Original,
        s,
        TABLE_AXIS.to_vec(),
        TABLE_AXIS.to_vec(),
        mark_na,
    )?;
    let vx = ParamGrid::build(
        family,
        Variant::Interpolated,
        s,
        TABLE_AXIS.to_vec(),
        TABLE_AXIS.to_vec(),
        mark_na,
    )?;
    Ok((vy, vx))
}

// Ascending axis over [-1+margin, 1-margin], built mirror-symmetric so that
// axis[i] == -axis[n-1-i] holds exactly; anti-diagonal grid cells then have
// alpha + theta == 0 in floating point, not just in real arithmetic.
fn symmetric_axis(n: usize, margin: f64) -> Vec<f64> {
    let lo = margin - 1.0;
    let step = -2.0 * lo / (n - 1) as f64;
    let mut axis = vec![0.0; n];
    for i in 0..n / 2 {
        let v = lo + i as f64 * step;
        axis[i] = v;
        axis[n - 1 - i] = -v;
    }
    axis
}

/// An `n x n` variance-ratio surface over the open square
/// `[-1+margin, 1-margin]^2`, axes ascending.
pub fn surface(family: Family, variant: Variant, s: u32, n: usize, margin: f64) -> Result<ParamGrid> {
    if n < 3 {
        return Err(Error::invalid("grid-n", format!("need at least a 3x3 grid, got {n}")));
    }
    if !(margin > 0.0 && margin < 0.5) {
        return Err(Error::invalid("margin", format!("must lie in (0, 0.5), got {margin}")));
    }
    let axis = symmetric_axis(n, margin);
    ParamGrid::build(family, variant, s, axis.clone(), axis, |_, _| false)
}

/// Round to two decimals, ties away from zero (the convention used when
/// emitting table CSVs).
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}
